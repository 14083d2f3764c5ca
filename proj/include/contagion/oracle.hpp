#ifndef CONTAGION_ORACLE_HPP
#define CONTAGION_ORACLE_HPP

// Random small instances and the solver-vs-oracle comparison runs.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contagion/contagion.hpp"
#include "contagion/decomposition.hpp"
#include "contagion/experiments.hpp"
#include "contagion/gidm.hpp"
#include "contagion/random_models.hpp"

namespace contagion {

// ---------------------------------------------------------------------------
// Generators

/// n <= 10 before an optional full subdivision (then at most 25 vertices), thresholds <= 3,
/// budget <= 3.
inline GidmInstance random_gidm_instance(RngSeed seed) {
    Rng rng(derive_seed(seed, "gidm-instance"));
    const std::size_t n = 2 + rng.below(9);
    Graph g = gnp(n, 0.2 + 0.5 * rng.uniform(), rng.next());
    bool subdivided = false;
    if (rng.bernoulli(0.5) && n + g.num_edges() <= 25) {
        g = subdivide_all_edges(g).graph;
        subdivided = true;
    }
    const std::size_t total = g.num_vertices();
    ThresholdMap t(total, 1);
    VertexSet a(total), b(total);
    for (std::size_t v = 0; v < total; ++v) {
        auto vv = static_cast<Vertex>(v);
        const bool w = subdivided && v >= n;
        if (w) {
            t.set(vv, 1);
            if (rng.bernoulli(0.8)) a.insert(vv);
        } else {
            auto roll = rng.below(20);
            if (roll < 4)
                t.set(vv, 0);
            else if (roll == 19)
                t.immunize(vv);
            else
                t.set(vv, static_cast<std::uint32_t>(1 + rng.below(3)));
            if (rng.bernoulli(0.3)) a.insert(vv);
            if (rng.bernoulli(0.6)) b.insert(vv);
        }
    }
    while (a.size() > 16) a.erase(a.members()[rng.below(a.size())]);
    return GidmInstance{std::move(g), std::move(t), std::move(a), std::move(b), rng.below(4)};
}

namespace detail {

struct SmallContagionDraw {
    Graph graph;
    VertexSet seeds;
    ThresholdMap thresholds;
    VertexSet reach;
};

// Retries until G[<A>] has at most 22 edges.
inline SmallContagionDraw draw_small_contagion(RngSeed seed, std::string_view tag) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, tag, {attempt}));
        const std::size_t n = 3 + rng.below(8);
        Graph g = gnp(n, 0.3 + 0.4 * rng.uniform(), rng.next());
        ThresholdMap t(n, 2);
        for (std::size_t v = 0; v < n; ++v) {
            auto roll = rng.below(10);
            if (roll < 3) t.set(static_cast<Vertex>(v), 3);
            if (roll == 9) t.immunize(static_cast<Vertex>(v));
        }
        auto seeds = VertexSet::of(n, random_subset(n, 1 + rng.below(std::min<std::size_t>(4, n - 1)), rng));
        for (Vertex v : seeds.members())
            if (t.immunized(v)) t.set(v, 2);
        auto reach = closure(g, with_seed_zero(t, seeds), seeds);
        if (induced_subgraph(g, reach).graph.num_edges() > 22) continue;
        return {std::move(g), std::move(seeds), std::move(t), std::move(reach)};
    }
}

} // namespace detail

inline MinContagionInstance random_min_instance(RngSeed seed) {
    auto d = detail::draw_small_contagion(seed, "min-instance");
    Rng rng(derive_seed(seed, "min-slack"));
    std::size_t spread = d.reach.size() - d.seeds.size();
    return MinContagionInstance{std::move(d.graph), std::move(d.seeds), std::move(d.thresholds), rng.below(spread + 1)};
}

inline StopContagionInstance random_stop_instance(RngSeed seed) {
    auto d = detail::draw_small_contagion(seed, "stop-instance");
    Rng rng(derive_seed(seed, "stop-protected"));
    const std::size_t n = d.graph.num_vertices();
    VertexSet prot(n);
    for (std::size_t v = 0; v < n; ++v)
        if (!d.seeds.contains(static_cast<Vertex>(v)) && rng.bernoulli(0.4)) prot.insert(static_cast<Vertex>(v));
    return StopContagionInstance{std::move(d.graph), std::move(d.seeds), std::move(prot), std::move(d.thresholds)};
}

// ---------------------------------------------------------------------------
// Text dumps of instances (for regression files)

namespace detail {

inline void dump_graph(std::ostream& out, const Graph& g) {
    out << "graph\n";
    write_edge_list(out, g);
}

inline void dump_thresholds(std::ostream& out, const ThresholdMap& t) {
    out << "thresholds\n";
    for (std::size_t v = 0; v < t.size(); ++v) {
        auto vv = static_cast<Vertex>(v);
        out << v << ' ';
        if (t.immunized(vv))
            out << "inf\n";
        else
            out << t.value(vv) << '\n';
    }
}

inline void dump_set(std::ostream& out, const char* name, const VertexSet& s) {
    out << name << ':';
    for (Vertex v : s.members()) out << ' ' << v;
    out << '\n';
}

} // namespace detail

inline std::string describe(const GidmInstance& inst) {
    std::ostringstream out;
    detail::dump_graph(out, inst.graph);
    detail::dump_thresholds(out, inst.thresholds);
    detail::dump_set(out, "A", inst.immunizable);
    detail::dump_set(out, "B", inst.counted);
    out << "budget " << inst.budget << '\n';
    return out.str();
}

inline std::string describe(const MinContagionInstance& inst) {
    std::ostringstream out;
    detail::dump_graph(out, inst.graph);
    detail::dump_thresholds(out, inst.thresholds);
    detail::dump_set(out, "seeds", inst.seeds);
    out << "slack " << inst.slack << '\n';
    return out.str();
}

inline std::string describe(const StopContagionInstance& inst) {
    std::ostringstream out;
    detail::dump_graph(out, inst.graph);
    detail::dump_thresholds(out, inst.thresholds);
    detail::dump_set(out, "seeds", inst.seeds);
    detail::dump_set(out, "protected", inst.protected_set);
    return out.str();
}

// ---------------------------------------------------------------------------
// Comparison runs

enum class OracleSuite { Gidm, Min, Stop };

inline OracleSuite parse_suite(const std::string& s) {
    if (s == "gidm") return OracleSuite::Gidm;
    if (s == "min") return OracleSuite::Min;
    if (s == "stop") return OracleSuite::Stop;
    throw Error(ErrorKind::BadSpec, "unknown oracle suite '" + s + "'");
}

inline const char* to_string(OracleSuite s) {
    switch (s) {
    case OracleSuite::Gidm: return "gidm";
    case OracleSuite::Min: return "min";
    default: return "stop";
    }
}

/// Solver replacements, used to plant faults in tests. Each returns an optimum value.
struct OracleOverrides {
    std::function<std::size_t(const GidmInstance&, const NiceDecomposition&)> gidm;
    std::function<std::size_t(const MinContagionInstance&)> min;
    std::function<std::size_t(const StopContagionInstance&)> stop;
};

struct OracleCase {
    std::size_t index = 0;
    RngSeed seed = 0;
    bool agree = true;
    std::size_t solver = 0;
    std::size_t oracle = 0;
    std::string error;    // exception text when the solver or oracle threw
    std::string instance; // describe() output, kept for failures only
};

struct OracleReport {
    OracleSuite suite = OracleSuite::Gidm;
    std::size_t checked = 0;
    std::vector<OracleCase> failures;
    bool passed() const noexcept { return failures.empty(); }
};

namespace detail {

// The decomposition source rotates with the instance index: min-fill, min-degree, exact.
inline NiceDecomposition rotating_decomposition(const Graph& g, std::size_t index) {
    switch (index % 3) {
    case 0: return make_nice(g, heuristic_decomposition(g, EliminationStrategy::MinFill));
    case 1: return make_nice(g, heuristic_decomposition(g, EliminationStrategy::MinDegree));
    default:
        if (g.num_vertices() <= 16) return make_nice(g, exact_treewidth_small(g, 16).decomposition);
        return make_nice(g, heuristic_decomposition(g, EliminationStrategy::MinFill));
    }
}

template <class Solve, class Oracle, class Instance>
OracleCase compare_one(std::size_t index, RngSeed seed, const Instance& inst, Solve solve, Oracle oracle) {
    OracleCase c;
    c.index = index;
    c.seed = seed;
    try {
        c.solver = solve();
        c.oracle = oracle();
        c.agree = c.solver == c.oracle;
    } catch (const std::exception& e) {
        c.agree = false;
        c.error = e.what();
    }
    if (!c.agree) c.instance = describe(inst);
    return c;
}

} // namespace detail

inline OracleReport oracle_compare(OracleSuite suite, std::size_t count, RngSeed seed, unsigned threads = 1,
                                   const OracleOverrides& overrides = {}) {
    auto cases = parallel_map(count, threads, [&](std::size_t i) {
        const RngSeed s = derive_seed(seed, std::string("oracle:") + to_string(suite), {i});
        switch (suite) {
        case OracleSuite::Gidm: {
            auto inst = random_gidm_instance(s);
            return detail::compare_one(
                i, s, inst,
                [&] {
                    auto nd = detail::rotating_decomposition(inst.graph, i);
                    return overrides.gidm ? overrides.gidm(inst, nd) : solve_gidm(inst, nd).infected;
                },
                [&] { return gidm_bruteforce(inst).infected; });
        }
        case OracleSuite::Min: {
            auto inst = random_min_instance(s);
            return detail::compare_one(
                i, s, inst,
                [&] { return overrides.min ? overrides.min(inst) : solve_min_contagion_tw(inst).deleted_edges.size(); },
                [&] { return bruteforce_edge_deletion(inst).deleted_edges.size(); });
        }
        default: {
            auto inst = random_stop_instance(s);
            return detail::compare_one(
                i, s, inst,
                [&] { return overrides.stop ? overrides.stop(inst) : solve_stop_contagion_tw(inst).deleted_edges.size(); },
                [&] { return bruteforce_edge_deletion(inst).deleted_edges.size(); });
        }
        }
    });
    OracleReport report;
    report.suite = suite;
    report.checked = count;
    for (auto& c : cases)
        if (!c.agree) report.failures.push_back(std::move(c));
    return report;
}

} // namespace contagion

#endif
