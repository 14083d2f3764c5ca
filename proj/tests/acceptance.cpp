// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers to run a subset.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "contagion/contagion.hpp"
#include "contagion/experiments.hpp"
#include "contagion/oracle.hpp"

using namespace contagion;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x, int digits = 3) {
    std::ostringstream s;
    s << std::fixed;
    s.precision(digits);
    s << x;
    return s.str();
}

// 1 ---------------------------------------------------------------------------

Verdict gidm_equivalence() {
    auto start = std::chrono::steady_clock::now();
    auto report = oracle_compare(OracleSuite::Gidm, 500, 101);
    double secs = seconds_since(start);
    Verdict v;
    v.pass = report.passed() && report.checked == 500 && secs < 300;
    v.detail = std::to_string(report.checked) + " instances, " + std::to_string(report.failures.size()) + " mismatches, " +
               fixed(secs, 1) + " s";
    return v;
}

// 2 ---------------------------------------------------------------------------

Verdict deletion_equivalence() {
    auto min = oracle_compare(OracleSuite::Min, 200, 202);
    auto stop = oracle_compare(OracleSuite::Stop, 200, 203);
    Verdict v;
    v.pass = min.passed() && stop.passed();
    v.detail = "min " + std::to_string(min.failures.size()) + "/200 mismatches, stop " +
               std::to_string(stop.failures.size()) + "/200 mismatches (solutions re-percolated on return)";
    return v;
}

// 3 ---------------------------------------------------------------------------

// P(X <= x) for X ~ Binomial(n, p).
double binomial_cdf(std::size_t x, std::size_t n, double p) {
    double total = 0;
    for (std::size_t i = 0; i <= x; ++i)
        total += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
                          (n - i) * std::log1p(-p));
    return total;
}

Verdict fpt_frequency() {
    const std::size_t instances = 50, batches = 50;
    std::size_t used = 0, rejected = 0, worst = batches;
    double pooled = 0;
    for (std::uint64_t s = 0; used < instances; ++s) {
        auto inst = random_min_instance(derive_seed(303, "fpt-instance", {s}));
        auto opt = bruteforce_edge_deletion(inst).deleted_edges.size();
        if (inst.slack + opt > 6) continue;
        std::size_t hits = 0;
        for (std::size_t b = 0; b < batches; ++b) {
            auto sol = run_fpt_batch(inst, inst.slack, opt, derive_seed(304, "fpt-batch", {s, b}));
            if (sol && sol->deleted_edges.size() == opt) ++hits;
        }
        // One-sided test of H0: success probability >= 2/3.
        if (binomial_cdf(hits, batches, 2.0 / 3.0) < 0.05) ++rejected;
        worst = std::min(worst, hits);
        pooled += static_cast<double>(hits);
        ++used;
    }
    Verdict v;
    v.pass = rejected == 0;
    v.detail = std::to_string(used) + " instances x " + std::to_string(batches) + " batches, " + std::to_string(rejected) +
               " rejected at 95%, worst " + std::to_string(worst) + "/" + std::to_string(batches) + ", pooled frequency " +
               fixed(pooled / static_cast<double>(used * batches));
    return v;
}

// 4 ---------------------------------------------------------------------------

Verdict excess_check() {
    std::size_t checked = 0, violations = 0;
    for (std::uint64_t s = 0; checked < 2000; ++s) {
        Rng rng(derive_seed(404, "excess", {s}));
        std::size_t n = 1 + rng.below(8);
        auto g = gnp(n, 0.2 + 0.8 * rng.uniform(), rng.next());
        if (!is_connected(g)) continue;
        ++checked;
        long bound = static_cast<long>(g.num_edges()) - static_cast<long>(n) + 2;
        if (exact_treewidth_small(g).treewidth > bound) ++violations;
    }
    return {violations == 0, std::to_string(checked) + " connected graphs, " + std::to_string(violations) + " violations"};
}

// 5 ---------------------------------------------------------------------------

Verdict forest_spread() {
    std::size_t violations = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Rng rng(derive_seed(505, "forest", {s}));
        std::vector<Edge> edges;
        std::size_t n = 0;
        for (std::size_t parts = 1 + rng.below(4); parts > 0; --parts) {
            auto tree = random_tree(1 + rng.below(40), 2 + rng.below(4), rng.next());
            for (const Edge& e : tree.edges()) edges.push_back({e.u + static_cast<Vertex>(n), e.v + static_cast<Vertex>(n)});
            n += tree.num_vertices();
        }
        auto forest = Graph::from_edge_list(n, edges);
        ThresholdMap t(n, 2);
        for (std::size_t v = 0; v < n; ++v) t.set(static_cast<Vertex>(v), static_cast<std::uint32_t>(2 + rng.below(3)));
        std::size_t k = 1 + rng.below(n);
        auto seeds = VertexSet::of(n, random_subset(n, k, rng));
        if (spread(forest, t, seeds) >= k) ++violations;
    }
    return {violations == 0, "1000 forests, " + std::to_string(violations) + " trials with spread >= |A|"};
}

// 6 ---------------------------------------------------------------------------

Verdict grid_perimeter_check() {
    const std::size_t side = 20, cells = side * side;
    auto g = grid(side);
    std::size_t increases = 0;
    double c_fit = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(606, "grid", {s}));
        std::size_t k = 1 + rng.below(60);
        auto seeds = VertexSet::of(cells, random_subset(cells, k, rng));
        auto tr = percolate(g, 2, seeds);
        VertexSet active = seeds;
        std::size_t last = grid_perimeter(side, active);
        for (std::size_t i = 1; i < tr.rounds.size(); ++i) {
            for (Vertex v : tr.rounds[i]) active.insert(v);
            auto now = grid_perimeter(side, active);
            if (now > last) ++increases;
            last = now;
        }
        c_fit = std::max(c_fit, static_cast<double>(tr.spread()) / static_cast<double>(k * k));
    }
    // Area within perimeter 4k is at most k^2, so spread <= k^2 - k.
    return {increases == 0 && c_fit <= 1.0,
            "100 seed sets, " + std::to_string(increases) + " perimeter increases, fitted spread/k^2 = " + fixed(c_fit)};
}

// 7 ---------------------------------------------------------------------------

Verdict reduction_counts() {
    std::size_t count_errors = 0, closure_errors = 0, generated = 0;
    auto check_counts = [&](const Graph& g, const ReductionOutput& red) {
        ++generated;
        const auto& h = red.subdivision.graph;
        if (h.num_vertices() != g.num_vertices() + g.num_edges() || h.num_edges() != 2 * g.num_edges()) ++count_errors;
    };
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(derive_seed(707, "reduction", {s}));
        std::size_t n = 2 + rng.below(8);
        auto g = gnp(n, 0.2 + 0.6 * rng.uniform(), rng.next());
        auto seeds = VertexSet::of(n, random_subset(n, 1 + rng.below(n - 1), rng));
        auto r = static_cast<std::uint32_t>(2 + rng.below(2));
        auto inst = MinContagionInstance::uniform(g, seeds, r, 0);
        auto red = reduce_min_contagion(inst);
        check_counts(g, red);
        VertexSet seeds_prime(red.subdivision.graph.num_vertices());
        for (Vertex v : seeds.members()) seeds_prime.insert(v);
        auto big = closure(red.subdivision.graph, red.gidm.thresholds, seeds_prime);
        auto small = closure(g, ThresholdMap::uniform(n, r), seeds);
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
            if (big.contains(v) != small.contains(v)) {
                ++closure_errors;
                break;
            }
        auto stop = StopContagionInstance::uniform(g, seeds, VertexSet(n), r);
        check_counts(g, reduce_stop_contagion(stop));
    }
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto mi = random_min_instance(s);
        check_counts(mi.graph, reduce_min_contagion(mi));
        auto si = random_stop_instance(s);
        check_counts(si.graph, reduce_stop_contagion(si));
    }
    return {count_errors == 0 && closure_errors == 0,
            std::to_string(generated) + " reductions, " + std::to_string(count_errors) + " count errors; 300 closures, " +
                std::to_string(closure_errors) + " mismatches"};
}

// 8 ---------------------------------------------------------------------------

// Canonical code of a graph on n <= 8 vertices: the smallest upper-triangle bit string over
// vertex orders that sort vertices by a refinement invariant.
std::uint64_t canonical_code(std::size_t n, const std::vector<std::uint8_t>& adj) {
    std::vector<std::uint64_t> colour(n);
    for (std::size_t v = 0; v < n; ++v) colour[v] = static_cast<std::uint64_t>(std::popcount(adj[v]));
    for (int round = 0; round < 3; ++round) {
        std::vector<std::uint64_t> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::uint64_t> nb;
            for (std::size_t w = 0; w < n; ++w)
                if (adj[v] >> w & 1u) nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            std::uint64_t h = splitmix64(colour[v]);
            for (auto c : nb) h = splitmix64(h ^ c);
            next[v] = h;
        }
        colour = next;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return colour[a] < colour[b]; });
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && colour[order[j]] == colour[order[i]]) ++j;
        blocks.push_back({i, j});
        i = j;
    }
    std::uint64_t best = ~std::uint64_t{0};
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == blocks.size()) {
            std::uint64_t code = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) code = code << 1 | (adj[order[i]] >> order[j] & 1u);
            best = std::min(best, code);
            return;
        }
        auto [lo, hi] = blocks[b];
        std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));
        do {
            rec(b + 1);
        } while (std::next_permutation(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi)));
    };
    rec(0);
    return best;
}

std::vector<std::uint8_t> decode(std::size_t n, std::uint64_t code) {
    std::vector<std::uint8_t> adj(n, 0);
    std::size_t bit = n * (n - 1) / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (code >> --bit & 1u) {
                adj[i] |= static_cast<std::uint8_t>(1u << j);
                adj[j] |= static_cast<std::uint8_t>(1u << i);
            }
    return adj;
}

// All isomorphism classes on exactly n vertices, n <= 8.
std::vector<std::vector<std::uint64_t>> graph_classes(std::size_t max_n) {
    std::vector<std::vector<std::uint64_t>> by_n(max_n + 1);
    by_n[0] = {0};
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::unordered_set<std::uint64_t> seen;
        for (auto code : by_n[n - 1]) {
            auto base = decode(n - 1, code);
            for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
                auto adj = base;
                adj.push_back(static_cast<std::uint8_t>(mask));
                for (std::size_t v = 0; v + 1 < n; ++v)
                    if (mask >> v & 1u) adj[v] |= static_cast<std::uint8_t>(1u << (n - 1));
                seen.insert(canonical_code(n, adj));
            }
        }
        by_n[n].assign(seen.begin(), seen.end());
        std::sort(by_n[n].begin(), by_n[n].end());
    }
    return by_n;
}

Verdict hard_instances() {
    auto start = std::chrono::steady_clock::now();
    auto classes = graph_classes(8);
    // Known counts of unlabeled graphs on 0..8 vertices.
    const std::vector<std::size_t> expected{1, 1, 2, 4, 11, 34, 156, 1044, 12346};
    bool counts_ok = true;
    for (std::size_t n = 0; n <= 8; ++n) counts_ok = counts_ok && classes[n].size() == expected[n];
    std::size_t total = 0, mismatches = 0;
    for (std::size_t n = 0; n <= 8; ++n)
        for (auto code : classes[n]) {
            auto adj = decode(n, code);
            std::vector<Edge> edges;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (adj[i] >> j & 1u) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
            auto g = Graph::from_edge_list(n, edges);
            ++total;
            if (n == 0) continue;
            auto sol = solve_stop_contagion_tw(gen_hard_stop_instance(g));
            if (sol.deleted_edges.size() != min_vertex_cover_bruteforce(g)) ++mismatches;
        }
    return {counts_ok && mismatches == 0,
            std::to_string(total) + " isomorphism classes on <= 8 vertices" + (counts_ok ? "" : " (class count WRONG)") + ", " +
                std::to_string(mismatches) + " mismatches, " + fixed(seconds_since(start), 1) + " s"};
}

// 9 ---------------------------------------------------------------------------

Verdict noisy_tree_trend() {
    std::vector<double> fits;
    std::ostringstream per_seed;
    for (RngSeed seed : {901, 902, 903, 904, 905}) {
        EdgeSpanConfig cfg{{"noisytree:n=100000,delta=3,eps=1"}, {16, 32, 64}, 1000, seed, 1};
        auto res = experiment_edgespan(cfg);
        fits.push_back(res.fitted_c);
        per_seed << " C=" << fixed(res.fitted_c, 4) << " (max excess";
        for (const auto& c : res.cells) per_seed << ' ' << c.max_excess;
        per_seed << ')';
    }
    double mean = std::accumulate(fits.begin(), fits.end(), 0.0) / static_cast<double>(fits.size());
    bool stable = std::all_of(fits.begin(), fits.end(), [&](double c) { return std::abs(c - mean) <= 0.25 * mean; });
    if (mean == 0) stable = true;
    return {stable, "5 seeds, mean C=" + fixed(mean, 4) + ";" + per_seed.str()};
}

// 10 --------------------------------------------------------------------------

Verdict local_tw_trend() {
    const std::vector<int> ds{2, 4, 8};
    const std::vector<std::size_t> ks{32, 64, 128};
    std::vector<std::string> models;
    for (int d : ds) models.push_back("gnp:n=16384,d=" + std::to_string(d));
    LocalTwConfig cfg{models, ks, 200, 1001, 1};
    auto res = experiment_local_tw(cfg);
    auto cell = [&](std::size_t di, std::size_t ki) -> const LocalTwCell& { return res.cells[di * ks.size() + ki]; };

    // The per-cell estimate of t_k is the largest sampled width.
    std::size_t monotone_breaks = 0;
    for (std::size_t di = 0; di < ds.size(); ++di)
        for (std::size_t ki = 0; ki + 1 < ks.size(); ++ki)
            if (cell(di, ki + 1).max_width < cell(di, ki).max_width) ++monotone_breaks;
    for (std::size_t ki = 0; ki < ks.size(); ++ki)
        for (std::size_t di = 0; di + 1 < ds.size(); ++di)
            if (cell(di + 1, ki).max_width < cell(di, ki).max_width) ++monotone_breaks;

    // Linear growth: a constant fitted on the smallest k must cover every larger k.
    double c_small = 0;
    for (std::size_t di = 0; di < ds.size(); ++di) c_small = std::max(c_small, cell(di, 0).c_fit);
    std::size_t above_line = 0;
    for (const auto& c : res.cells)
        if (c.max_width > 3 + c_small * c.x + 1e-9) ++above_line;

    std::size_t tiny_errors = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(derive_seed(1002, "tiny", {s}));
        std::size_t n = 4 + rng.below(7);
        auto g = gnp(n, 0.3 + 0.5 * rng.uniform(), rng.next());
        std::size_t biggest = 0;
        for (const auto& p : connected_components(g)) biggest = std::max(biggest, p.size());
        int last = -1;
        for (std::size_t k = 1; k <= n; ++k) {
            int exact = exact_local_treewidth_tiny(g, k).value;
            if (exact < last) ++tiny_errors;
            last = exact;
            if (k > biggest) continue;
            auto est = local_treewidth_sample(g, k, 20, derive_seed(1003, "tiny", {s, k}));
            int witness = exact_treewidth_small(induced_subgraph(g, est.witness).graph).treewidth;
            if (witness != est.lower || est.lower > exact) ++tiny_errors;
        }
    }

    std::ostringstream d;
    d << "9 cells, fitted C=" << fixed(res.fitted_c) << ", k=32 constant " << fixed(c_small) << ", " << above_line
      << " cells above the line, " << monotone_breaks << " monotonicity breaks, " << tiny_errors << " tiny-graph errors; max widths";
    for (const auto& c : res.cells) d << ' ' << c.max_width;
    d << "; mean widths";
    for (const auto& c : res.cells) d << ' ' << fixed(c.mean_width, 2);
    return {monotone_breaks == 0 && above_line == 0 && tiny_errors == 0, d.str()};
}

// 11 --------------------------------------------------------------------------

int run_cli(const std::string& args) {
    std::string cmd = std::string(CONTAGION_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Verdict cli_determinism() {
    auto dir = fs::temp_directory_path() / ("contagion-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    auto g = put("g.txt", "6 8\n0 1\n0 2\n1 2\n1 3\n2 3\n3 4\n2 4\n4 5\n");
    auto s = put("s.txt", "0 1\n");
    auto p = put("p.txt", "4\n");
    auto big = (dir / "big.txt").string();
    run_cli("--seed 7 --out " + big + " generate gnp:n=60,d=3");

    const std::vector<std::string> commands{
        "generate gnp:n=300,d=3",
        "generate regular:n=100,d=4",
        "generate noisytree:n=500,delta=3,eps=1",
        "generate grid:side=5",
        "solve min " + g + " " + s + " --method tw",
        "solve min " + g + " " + s + " --method brute --format csv",
        "solve min " + g + " " + s + " --method random --batches 3",
        "solve min " + g + " " + s + " --method random --slack 1 --budget-hint 1 --batches 2",
        "solve stop " + g + " " + s + " --protected " + p,
        "solve stop " + g + " " + s + " --protected " + p + " --method brute",
        "treewidth " + big,
        "treewidth " + g + " --strategy exact --format csv",
        "experiment-localtw --model gnp:n=2000,d=4 --model noisytree:n=2000,delta=3,eps=1 --k 8,16 --trials 30",
        "experiment-spread --model regular:n=500,d=4 --k 5,20 --trials 40",
        "experiment-spread --model grid:side=12 --k 10 --trials 20 --format json",
        "experiment-edgespan --model gnp:n=3000,d=3 --k 10,30 --trials 50",
        "oracle-compare gidm --count 20",
        "oracle-compare min --count 10 --format csv",
        "oracle-compare stop --count 10",
    };
    std::size_t differing = 0, failed = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            auto out = dir / ("out-" + std::to_string(i) + "-" + std::to_string(rep));
            std::string extra = commands[i].rfind("treewidth", 0) == 0
                                    ? " --decomposition " + (dir / ("td-" + std::to_string(rep))).string()
                                    : "";
            // Globals must precede the subcommand name.
            if (run_cli("--seed 11 --threads 1 --out " + out.string() + " " + commands[i] + extra) != 0) {
                ++failed;
                if (first_bad.empty()) first_bad = commands[i];
            }
            outputs[rep] = slurp(out);
            if (!extra.empty()) outputs[rep] += slurp(dir / ("td-" + std::to_string(rep)));
        }
        if (outputs[0] != outputs[1] || outputs[0].empty()) {
            ++differing;
            if (first_bad.empty()) first_bad = commands[i];
        }
    }
    fs::remove_all(dir);
    return {differing == 0 && failed == 0,
            std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) + " differing, " +
                std::to_string(failed) + " failed" + (first_bad.empty() ? "" : " (first: " + first_bad + ")")};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"gidm oracle equivalence", gidm_equivalence},
        {"edge-deletion solver equivalence", deletion_equivalence},
        {"randomized fpt success frequency", fpt_frequency},
        {"edge excess bounds treewidth", excess_check},
        {"forest spread below seed count", forest_spread},
        {"grid perimeter never increases", grid_perimeter_check},
        {"subdivision reduction counts and closures", reduction_counts},
        {"hard instances match vertex cover", hard_instances},
        {"noisy tree sparsity fit stability", noisy_tree_trend},
        {"local treewidth trend", local_tw_trend},
        {"cli determinism", cli_determinism},
    };
    std::set<std::size_t> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) continue;
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first << "): " << v.detail
                  << " [" << fixed(seconds_since(start), 1) << " s]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
