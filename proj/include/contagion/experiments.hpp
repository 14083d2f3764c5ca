#ifndef CONTAGION_EXPERIMENTS_HPP
#define CONTAGION_EXPERIMENTS_HPP

// Seeded Monte Carlo sweeps over random graph models. Every trial derives its own seed from
// (root seed, experiment id, model text, k, trial), so rows do not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "contagion/decomposition.hpp"
#include "contagion/error.hpp"
#include "contagion/graph.hpp"
#include "contagion/percolation.hpp"
#include "contagion/random_models.hpp"

namespace contagion {

// ---------------------------------------------------------------------------
// Model specs: "family:key=value,key=value"

struct ModelSpec {
    std::string family;
    std::map<std::string, double> params;
    std::string text;

    static ModelSpec parse(const std::string& text) {
        static const std::map<std::string, std::vector<std::string>> families{
            {"gnp", {"n", "d"}},   {"regular", {"n", "d"}}, {"noisytree", {"n", "delta", "eps"}},
            {"grid", {"side"}},    {"path", {"n"}},         {"star", {"n"}}};
        ModelSpec spec;
        spec.text = text;
        auto colon = text.find(':');
        spec.family = text.substr(0, colon);
        auto fam = families.find(spec.family);
        if (fam == families.end()) throw Error(ErrorKind::BadSpec, "unknown model family in '" + text + "'");
        if (colon == std::string::npos) throw Error(ErrorKind::BadSpec, "missing parameters in '" + text + "'");
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::BadSpec, "expected key=value, got '" + item + "'");
            std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            if (std::find(fam->second.begin(), fam->second.end(), key) == fam->second.end())
                throw Error(ErrorKind::BadSpec, "unknown parameter '" + key + "' for " + spec.family);
            if (spec.params.count(key)) throw Error(ErrorKind::BadSpec, "duplicate parameter '" + key + "'");
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size() || !std::isfinite(v) || v < 0)
                throw Error(ErrorKind::BadSpec, "bad value '" + value + "' for " + key);
            spec.params[key] = v;
        }
        for (const auto& key : fam->second)
            if (!spec.params.count(key)) throw Error(ErrorKind::BadSpec, "missing parameter '" + key + "' for " + spec.family);
        for (const char* key : {"n", "side", "delta"})
            if (spec.params.count(key)) {
                double v = spec.params[key];
                if (v < 1 || v != std::floor(v)) throw Error(ErrorKind::BadSpec, std::string(key) + " must be a positive integer");
            }
        if (spec.family == "regular" && spec.params["d"] != std::floor(spec.params["d"]))
            throw Error(ErrorKind::BadSpec, "d must be an integer for regular graphs");
        if (spec.family == "gnp" && spec.params["d"] > spec.params["n"])
            throw Error(ErrorKind::BadSpec, "d must not exceed n");
        return spec;
    }

    std::size_t integer(const std::string& key) const { return static_cast<std::size_t>(params.at(key)); }

    std::size_t vertices() const {
        if (family == "grid") return integer("side") * integer("side");
        return integer("n");
    }

    /// Degree parameter used by the trend fits: d, or delta for noisy trees.
    double degree_parameter() const {
        if (params.count("d")) return params.at("d");
        if (params.count("delta")) return params.at("delta");
        if (family == "grid") return 4;
        if (family == "path") return 2;
        return static_cast<double>(vertices() > 1 ? vertices() - 1 : 1);
    }

    Graph generate(RngSeed seed) const {
        const RngSeed s = derive_seed(seed, "model:" + text);
        if (family == "gnp") {
            double n = params.at("n");
            return gnp(integer("n"), params.at("d") / n, s);
        }
        if (family == "regular") return random_regular(integer("n"), integer("d"), s);
        if (family == "noisytree") {
            auto base = random_tree(integer("n"), integer("delta"), derive_seed(s, "base"));
            return noisy_tree({std::move(base), params.at("eps")}, derive_seed(s, "noise"));
        }
        if (family == "grid") return grid(integer("side"));
        if (family == "path") return path(integer("n"));
        return star(integer("n"));
    }
};

// ---------------------------------------------------------------------------
// Work pool: fn(i) for i in [0, count); results land at index i.

template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << x;
    return ss.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void check_sweep(const std::vector<std::string>& models, std::size_t trials) {
    if (models.empty()) throw Error(ErrorKind::BadSpec, "at least one model is required");
    if (trials == 0) throw Error(ErrorKind::BadSpec, "trials must be >= 1");
}

inline std::vector<ModelSpec> parse_models(const std::vector<std::string>& models) {
    std::vector<ModelSpec> out;
    for (const auto& m : models) out.push_back(ModelSpec::parse(m));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Local treewidth sweep

struct LocalTwConfig {
    std::vector<std::string> models;
    std::vector<std::size_t> ks;
    std::size_t trials = 200;
    RngSeed seed = 1;
    unsigned threads = 1;
};

struct LocalTwRow {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trial = 0;
    RngSeed seed = 0;
    int width = 0;
    bool exact = false;
    std::size_t excess = 0;
};

struct LocalTwCell {
    std::string model;
    std::size_t n = 0;
    double d = 0;
    std::size_t k = 0;
    double mean_width = 0;
    int max_width = 0;
    double exact_fraction = 0;
    double x = 0;     // k log d / log n
    double c_fit = 0; // max(0, max_width - 3) / x
};

struct LocalTwResult {
    std::vector<LocalTwRow> rows;
    std::vector<LocalTwCell> cells;
    double fitted_c = 0; // max over cells
};

inline double localtw_scale(std::size_t k, double d, std::size_t n) {
    return static_cast<double>(k) * std::log(std::max(d, 2.0)) / std::log(std::max<double>(static_cast<double>(n), 2.0));
}

inline LocalTwResult experiment_local_tw(const LocalTwConfig& cfg) {
    detail::check_sweep(cfg.models, cfg.trials);
    auto specs = detail::parse_models(cfg.models);
    std::vector<Graph> graphs;
    for (const auto& s : specs) graphs.push_back(s.generate(cfg.seed));
    struct Job {
        std::size_t model, k;
    };
    std::vector<Job> jobs;
    for (std::size_t m = 0; m < specs.size(); ++m)
        for (auto k : cfg.ks) jobs.push_back({m, k});
    LocalTwResult result;
    std::vector<std::vector<LocalTwRow>> per_job(jobs.size());
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto& spec = specs[jobs[j].model];
        const Graph& g = graphs[jobs[j].model];
        const std::size_t k = jobs[j].k;
        ConnectedSubgraphSampler sampler(g, k);
        per_job[j] = parallel_map(cfg.trials, cfg.threads, [&](std::size_t trial) {
            LocalTwRow row;
            row.model = spec.text;
            row.n = g.num_vertices();
            row.k = k;
            row.trial = trial;
            row.seed = derive_seed(cfg.seed, "localtw:" + spec.text, {k, trial});
            Rng rng(row.seed);
            Graph sub = induced_subgraph(g, sampler.sample(rng)).graph;
            auto tw = treewidth_estimate(sub);
            row.width = tw.value;
            row.exact = tw.exact;
            row.excess = excess_bound(sub).overall;
            return row;
        });
        LocalTwCell cell;
        cell.model = spec.text;
        cell.n = g.num_vertices();
        cell.d = spec.degree_parameter();
        cell.k = k;
        double sum = 0, exact = 0;
        for (const auto& r : per_job[j]) {
            sum += r.width;
            exact += r.exact;
            cell.max_width = std::max(cell.max_width, r.width);
        }
        cell.mean_width = sum / static_cast<double>(cfg.trials);
        cell.exact_fraction = exact / static_cast<double>(cfg.trials);
        cell.x = localtw_scale(k, cell.d, cell.n);
        cell.c_fit = std::max(0, cell.max_width - 3) / cell.x;
        result.fitted_c = std::max(result.fitted_c, cell.c_fit);
        result.cells.push_back(cell);
        result.rows.insert(result.rows.end(), per_job[j].begin(), per_job[j].end());
    }
    return result;
}

inline void write_csv(std::ostream& out, const std::vector<LocalTwRow>& rows) {
    out << "experiment,model,n,k,trial,seed,width,exact,excess\n";
    for (const auto& r : rows)
        out << "localtw," << detail::csv_field(r.model) << ',' << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed << ','
            << r.width << ',' << (r.exact ? 1 : 0) << ',' << r.excess << '\n';
}

// ---------------------------------------------------------------------------
// Spread sweep

struct SpreadConfig {
    std::vector<std::string> models;
    std::vector<std::size_t> ks;
    std::size_t trials = 1000;
    std::uint32_t r = 2;
    double ceiling = 10.0; // flag trials with spread / k above this
    RngSeed seed = 1;
    unsigned threads = 1;
};

struct SpreadRow {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trial = 0;
    RngSeed seed = 0;
    std::size_t spread = 0;
    double ratio = 0;
    bool flagged = false;
};

struct SpreadCell {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    double mean_spread = 0;
    std::size_t max_spread = 0;
    double max_ratio = 0;
    double c_quadratic = 0; // max_spread / k^2
    std::size_t flagged = 0;
};

struct SpreadResult {
    std::vector<SpreadRow> rows;
    std::vector<SpreadCell> cells;
    std::size_t flagged = 0;
};

inline SpreadResult experiment_spread(const SpreadConfig& cfg) {
    detail::check_sweep(cfg.models, cfg.trials);
    auto specs = detail::parse_models(cfg.models);
    SpreadResult result;
    for (const auto& spec : specs) {
        const Graph g = spec.generate(cfg.seed);
        const std::size_t n = g.num_vertices();
        for (auto k : cfg.ks) {
            if (k > n) throw Error(ErrorKind::KOutOfRange, "k=" + std::to_string(k) + " exceeds n for " + spec.text);
            auto rows = parallel_map(cfg.trials, cfg.threads, [&](std::size_t trial) {
                SpreadRow row;
                row.model = spec.text;
                row.n = n;
                row.k = k;
                row.trial = trial;
                row.seed = derive_seed(cfg.seed, "spread:" + spec.text, {k, trial});
                Rng rng(row.seed);
                auto seeds = VertexSet::of(n, random_subset(n, k, rng));
                row.spread = spread(g, ThresholdMap::uniform(n, cfg.r), seeds);
                row.ratio = k == 0 ? 0.0 : static_cast<double>(row.spread) / static_cast<double>(k);
                row.flagged = row.ratio > cfg.ceiling;
                return row;
            });
            SpreadCell cell;
            cell.model = spec.text;
            cell.n = n;
            cell.k = k;
            double sum = 0;
            for (const auto& r : rows) {
                sum += static_cast<double>(r.spread);
                cell.max_spread = std::max(cell.max_spread, r.spread);
                cell.max_ratio = std::max(cell.max_ratio, r.ratio);
                cell.flagged += r.flagged;
            }
            cell.mean_spread = sum / static_cast<double>(cfg.trials);
            cell.c_quadratic = k == 0 ? 0.0 : static_cast<double>(cell.max_spread) / static_cast<double>(k * k);
            result.flagged += cell.flagged;
            result.cells.push_back(cell);
            result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        }
    }
    return result;
}

inline void write_csv(std::ostream& out, const std::vector<SpreadRow>& rows) {
    out << "experiment,model,n,k,trial,seed,spread,ratio,flagged\n";
    for (const auto& r : rows)
        out << "spread," << detail::csv_field(r.model) << ',' << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed << ','
            << r.spread << ',' << detail::fmt(r.ratio) << ',' << (r.flagged ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// Edge span of connected subgraphs

struct EdgeSpanConfig {
    std::vector<std::string> models;
    std::vector<std::size_t> ks;
    std::size_t trials = 1000;
    RngSeed seed = 1;
    unsigned threads = 1;
};

struct EdgeSpanRow {
    std::string model;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trial = 0;
    RngSeed seed = 0;
    std::size_t edges = 0;
    std::size_t excess = 0; // edges - (k - 1)
};

struct EdgeSpanCell {
    std::string model;
    std::size_t n = 0;
    double delta = 0;
    std::size_t k = 0;
    double mean_excess = 0;
    std::size_t max_excess = 0;
    double x = 0;     // k (log k + log delta) / log n
    double c_fit = 0; // max(0, max_excess - 1) / x
};

struct EdgeSpanResult {
    std::vector<EdgeSpanRow> rows;
    std::vector<EdgeSpanCell> cells;
    double fitted_c = 0; // smallest C with max_excess <= 1 + C x in every cell
};

inline double edgespan_scale(std::size_t k, double delta, std::size_t n) {
    const double kk = static_cast<double>(k);
    return kk * (std::log(kk) + std::log(std::max(delta, 1.0))) / std::log(std::max<double>(static_cast<double>(n), 2.0));
}

inline EdgeSpanResult experiment_edgespan(const EdgeSpanConfig& cfg) {
    detail::check_sweep(cfg.models, cfg.trials);
    auto specs = detail::parse_models(cfg.models);
    EdgeSpanResult result;
    for (const auto& spec : specs) {
        const Graph g = spec.generate(cfg.seed);
        for (auto k : cfg.ks) {
            ConnectedSubgraphSampler sampler(g, k);
            auto rows = parallel_map(cfg.trials, cfg.threads, [&](std::size_t trial) {
                EdgeSpanRow row;
                row.model = spec.text;
                row.n = g.num_vertices();
                row.k = k;
                row.trial = trial;
                row.seed = derive_seed(cfg.seed, "edgespan:" + spec.text, {k, trial});
                Rng rng(row.seed);
                row.edges = induced_subgraph(g, sampler.sample(rng)).graph.num_edges();
                row.excess = row.edges + 1 - k;
                return row;
            });
            EdgeSpanCell cell;
            cell.model = spec.text;
            cell.n = g.num_vertices();
            cell.delta = spec.degree_parameter();
            cell.k = k;
            double sum = 0;
            for (const auto& r : rows) {
                sum += static_cast<double>(r.excess);
                cell.max_excess = std::max(cell.max_excess, r.excess);
            }
            cell.mean_excess = sum / static_cast<double>(cfg.trials);
            cell.x = edgespan_scale(k, cell.delta, cell.n);
            cell.c_fit = cell.x > 0 ? std::max(0.0, static_cast<double>(cell.max_excess) - 1.0) / cell.x : 0.0;
            result.fitted_c = std::max(result.fitted_c, cell.c_fit);
            result.cells.push_back(cell);
            result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        }
    }
    return result;
}

inline void write_csv(std::ostream& out, const std::vector<EdgeSpanRow>& rows) {
    out << "experiment,model,n,k,trial,seed,edges,excess\n";
    for (const auto& r : rows)
        out << "edgespan," << detail::csv_field(r.model) << ',' << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed
            << ',' << r.edges << ',' << r.excess << '\n';
}

} // namespace contagion

#endif
