#ifndef CONTAGION_CONTAGION_HPP
#define CONTAGION_CONTAGION_HPP

// Edge-deletion problems for threshold bootstrap percolation.
//   Minimizing Contagion: fewest deleted edges so at most `slack` non-seed vertices get infected.
//   Stopping Contagion:   fewest deleted edges so no protected vertex gets infected.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contagion/decomposition.hpp"
#include "contagion/error.hpp"
#include "contagion/gidm.hpp"
#include "contagion/graph.hpp"
#include "contagion/percolation.hpp"
#include "contagion/random_models.hpp"

namespace contagion {

enum class Problem { Min, Stop };

inline const char* to_string(Problem p) { return p == Problem::Min ? "min" : "stop"; }

namespace detail {

// Non-seed thresholds must be at least 2 (or immunized); seed thresholds are ignored.
inline void check_thresholds(const Graph& g, const VertexSet& seeds, const ThresholdMap& t) {
    const std::size_t n = g.num_vertices();
    if (t.size() != n || seeds.universe() != n)
        throw Error(ErrorKind::InvalidInstance, "instance components disagree on vertex count");
    for (std::size_t v = 0; v < n; ++v) {
        auto vv = static_cast<Vertex>(v);
        if (seeds.contains(vv)) {
            if (t.immunized(vv)) throw Error(ErrorKind::InvalidInstance, "seed " + std::to_string(v) + " is immunized");
            continue;
        }
        if (!t.immunized(vv) && t.value(vv) < 2)
            throw Error(ErrorKind::InvalidInstance, "vertex " + std::to_string(v) + " has threshold below 2");
    }
}

inline ThresholdMap with_seed_zero(ThresholdMap t, const VertexSet& seeds) {
    for (Vertex v : seeds.members()) t.set(v, 0);
    return t;
}

} // namespace detail

struct MinContagionInstance {
    Graph graph;
    VertexSet seeds;
    ThresholdMap thresholds;
    std::size_t slack = 0;

    static MinContagionInstance uniform(Graph g, VertexSet seeds, std::uint32_t r, std::size_t slack) {
        auto n = g.num_vertices();
        MinContagionInstance inst{std::move(g), std::move(seeds), ThresholdMap(n, r), slack};
        inst.validate();
        return inst;
    }

    void validate() const {
        detail::check_thresholds(graph, seeds, thresholds);
        if (seeds.empty()) throw Error(ErrorKind::InvalidInstance, "seed set is empty");
    }
};

struct StopContagionInstance {
    Graph graph;
    VertexSet seeds;
    VertexSet protected_set;
    ThresholdMap thresholds;

    static StopContagionInstance uniform(Graph g, VertexSet seeds, VertexSet protected_set, std::uint32_t r) {
        auto n = g.num_vertices();
        StopContagionInstance inst{std::move(g), std::move(seeds), std::move(protected_set), ThresholdMap(n, r)};
        inst.validate();
        return inst;
    }

    void validate() const {
        detail::check_thresholds(graph, seeds, thresholds);
        if (protected_set.universe() != graph.num_vertices())
            throw Error(ErrorKind::InvalidInstance, "protected set universe mismatch");
        for (Vertex v : protected_set.members())
            if (seeds.contains(v)) throw Error(ErrorKind::InvalidInstance, "vertex " + std::to_string(v) + " is both seed and protected");
    }
};

struct DeletionSolution {
    std::vector<Edge> deleted_edges;      // sorted, original vertex ids
    std::size_t additional_infected = 0; // |<A> \ A| after deletion
    std::size_t protected_infected = 0;  // |<A> ∩ B| after deletion (0 for the min problem)
    bool optimal = false;
};

// ---------------------------------------------------------------------------
// Evaluation

struct DeletionOutcome {
    std::size_t additional_infected = 0;
    std::size_t protected_infected = 0;
};

inline DeletionOutcome evaluate_deletion(const Graph& g, const VertexSet& seeds, const ThresholdMap& t,
                                         const VertexSet* protected_set, std::span<const Edge> deleted) {
    auto h = g.without_edges(deleted);
    auto infected = closure(h, detail::with_seed_zero(t, seeds), seeds);
    DeletionOutcome out;
    out.additional_infected = infected.size() - seeds.size();
    if (protected_set)
        for (Vertex v : protected_set->members())
            if (infected.contains(v)) ++out.protected_infected;
    return out;
}

inline DeletionOutcome evaluate(const MinContagionInstance& inst, std::span<const Edge> deleted) {
    return evaluate_deletion(inst.graph, inst.seeds, inst.thresholds, nullptr, deleted);
}

inline DeletionOutcome evaluate(const StopContagionInstance& inst, std::span<const Edge> deleted) {
    return evaluate_deletion(inst.graph, inst.seeds, inst.thresholds, &inst.protected_set, deleted);
}

namespace detail {

inline DeletionSolution verified(const MinContagionInstance& inst, std::vector<Edge> deleted, bool optimal) {
    std::sort(deleted.begin(), deleted.end());
    auto o = evaluate(inst, deleted);
    if (o.additional_infected > inst.slack)
        throw Error(ErrorKind::VerificationFailed, "deletion set leaves " + std::to_string(o.additional_infected) +
                                                       " infections, slack is " + std::to_string(inst.slack));
    return {std::move(deleted), o.additional_infected, 0, optimal};
}

inline DeletionSolution verified(const StopContagionInstance& inst, std::vector<Edge> deleted, bool optimal) {
    std::sort(deleted.begin(), deleted.end());
    auto o = evaluate(inst, deleted);
    if (o.protected_infected != 0)
        throw Error(ErrorKind::VerificationFailed,
                    "deletion set leaves " + std::to_string(o.protected_infected) + " protected vertices infected");
    return {std::move(deleted), o.additional_infected, 0, optimal};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Closure restriction

struct ClosureRestriction {
    Graph graph;              // G[<A>]
    VertexSet seeds;          // A in new ids
    ThresholdMap thresholds;  // restricted thresholds, seeds unchanged
    SubgraphMap map;
};

/// Vertices outside <A> are never infected, so edges leaving <A> never need deleting.
inline ClosureRestriction restrict_to_closure(const Graph& g, const VertexSet& seeds, const ThresholdMap& t) {
    auto reach = closure(g, detail::with_seed_zero(t, seeds), seeds);
    auto sub = induced_subgraph(g, reach);
    const std::size_t k = sub.graph.num_vertices();
    ClosureRestriction out{std::move(sub.graph), VertexSet(k), ThresholdMap(k, 0), std::move(sub.map)};
    for (std::size_t i = 0; i < k; ++i) {
        auto old = out.map.inverse(static_cast<Vertex>(i));
        if (seeds.contains(old)) out.seeds.insert(static_cast<Vertex>(i));
        if (t.immunized(old))
            out.thresholds.immunize(static_cast<Vertex>(i));
        else
            out.thresholds.set(static_cast<Vertex>(i), t.value(old));
    }
    return out;
}

inline std::pair<MinContagionInstance, SubgraphMap> restrict_to_closure(const MinContagionInstance& inst) {
    auto r = restrict_to_closure(inst.graph, inst.seeds, inst.thresholds);
    return {MinContagionInstance{std::move(r.graph), std::move(r.seeds), std::move(r.thresholds), inst.slack},
            std::move(r.map)};
}

inline std::pair<StopContagionInstance, SubgraphMap> restrict_to_closure(const StopContagionInstance& inst) {
    auto r = restrict_to_closure(inst.graph, inst.seeds, inst.thresholds);
    VertexSet prot(r.graph.num_vertices());
    for (Vertex b : inst.protected_set.members())
        if (r.map.selected(b)) prot.insert(r.map.forward(b));
    return {StopContagionInstance{std::move(r.graph), std::move(r.seeds), std::move(prot), std::move(r.thresholds)},
            std::move(r.map)};
}

// ---------------------------------------------------------------------------
// Subdivision reductions

struct ReductionOutput {
    Subdivision subdivision; // G', W = vertices n..n+m-1
    GidmInstance gidm;       // thresholds: seeds 0, others t(v), W 1; A' = W

    Edge edge_for(Vertex w) const { return subdivision.edge_for(w); }
    Vertex vertex_for(Edge e) const { return subdivision.vertex_for(e); }
};

namespace detail {

inline ReductionOutput reduce(const Graph& g, const VertexSet& seeds, const ThresholdMap& t, const VertexSet& counted) {
    ReductionOutput out;
    out.subdivision = subdivide_all_edges(g);
    const Graph& h = out.subdivision.graph;
    const std::size_t n = g.num_vertices(), total = h.num_vertices();
    ThresholdMap th(total, 1);
    VertexSet a_prime(total), b_prime(total);
    for (std::size_t v = 0; v < n; ++v) {
        auto vv = static_cast<Vertex>(v);
        if (seeds.contains(vv))
            th.set(vv, 0);
        else if (t.immunized(vv))
            th.immunize(vv);
        else
            th.set(vv, t.value(vv));
        if (counted.contains(vv)) b_prime.insert(vv);
    }
    for (std::size_t w = n; w < total; ++w) a_prime.insert(static_cast<Vertex>(w));
    out.gidm = GidmInstance{h, std::move(th), std::move(a_prime), std::move(b_prime), 0};
    return out;
}

} // namespace detail

/// B' = V \ A: the GIDM optimum at budget l is the fewest additional infections with l deletions.
inline ReductionOutput reduce_min_contagion(const MinContagionInstance& inst) {
    inst.validate();
    VertexSet rest(inst.graph.num_vertices());
    for (std::size_t v = 0; v < inst.graph.num_vertices(); ++v)
        if (!inst.seeds.contains(static_cast<Vertex>(v))) rest.insert(static_cast<Vertex>(v));
    return detail::reduce(inst.graph, inst.seeds, inst.thresholds, rest);
}

/// B' = B.
inline ReductionOutput reduce_stop_contagion(const StopContagionInstance& inst) {
    inst.validate();
    return detail::reduce(inst.graph, inst.seeds, inst.thresholds, inst.protected_set);
}

// ---------------------------------------------------------------------------
// Treewidth solvers

namespace detail {

inline NiceDecomposition narrow_nice(const Graph& g) {
    auto a = heuristic_decomposition(g, EliminationStrategy::MinFill);
    auto b = heuristic_decomposition(g, EliminationStrategy::MinDegree);
    return make_nice(g, b.width() < a.width() ? b : a);
}

// Smallest budget whose GIDM optimum is at most `target`. Budgets are probed in doubling
// windows [0, cap]; one DP pass answers every budget inside a window.
inline std::vector<Edge> smallest_budget(const ReductionOutput& red, std::size_t target) {
    const std::size_t m = red.subdivision.edge_of.size();
    auto nd = narrow_nice(red.subdivision.graph);
    std::size_t cap = std::min<std::size_t>(1, m);
    while (true) {
        GidmSolver solver(red.gidm, nd, cap);
        for (std::size_t p = 0; p <= cap; ++p) {
            if (solver.optimum(p) > target) continue;
            auto cert = solver.solve(p);
            std::vector<Edge> edges;
            for (Vertex w : cert.immunized) edges.push_back(red.edge_for(w));
            return edges;
        }
        if (cap >= m) throw Error(ErrorKind::IllegalState, "no budget reaches the target, not even deleting every edge");
        cap = std::min(2 * cap, m);
    }
}

inline std::vector<Edge> to_original(const std::vector<Edge>& edges, const SubgraphMap& map) {
    std::vector<Edge> out;
    for (const Edge& e : edges) out.push_back(Edge::make(map.inverse(e.u), map.inverse(e.v)));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline DeletionSolution solve_min_contagion_tw(const MinContagionInstance& inst) {
    inst.validate();
    auto [local, map] = restrict_to_closure(inst);
    auto edges = detail::smallest_budget(reduce_min_contagion(local), inst.slack);
    return detail::verified(inst, detail::to_original(edges, map), true);
}

inline DeletionSolution solve_stop_contagion_tw(const StopContagionInstance& inst) {
    inst.validate();
    auto [local, map] = restrict_to_closure(inst);
    auto edges = detail::smallest_budget(reduce_stop_contagion(local), 0);
    return detail::verified(inst, detail::to_original(edges, map), true);
}

// ---------------------------------------------------------------------------
// Bitmask percolation for small restricted instances

namespace detail {

struct SmallGraph {
    std::size_t n = 0;
    std::vector<std::uint64_t> nbr;
    std::vector<std::uint32_t> thr; // UINT32_MAX for immunized
    std::uint64_t seeds = 0;

    static std::optional<SmallGraph> build(const Graph& g, const VertexSet& seeds, const ThresholdMap& t) {
        if (g.num_vertices() > 64) return std::nullopt;
        SmallGraph s;
        s.n = g.num_vertices();
        s.nbr.assign(s.n, 0);
        s.thr.assign(s.n, UINT32_MAX);
        for (std::size_t v = 0; v < s.n; ++v) {
            auto vv = static_cast<Vertex>(v);
            for (Vertex w : g.neighbors(vv)) s.nbr[v] |= std::uint64_t{1} << w;
            if (seeds.contains(vv)) {
                s.seeds |= std::uint64_t{1} << v;
                s.thr[v] = 0;
            } else if (!t.immunized(vv)) {
                s.thr[v] = t.value(vv);
            }
        }
        return s;
    }

    // Closure of the seeds; vertices in `blocked` never activate.
    std::uint64_t closure(const std::vector<std::uint64_t>& adj, std::uint64_t blocked) const {
        std::uint64_t active = seeds;
        while (true) {
            std::uint64_t next = active;
            for (std::size_t v = 0; v < n; ++v) {
                const std::uint64_t bit = std::uint64_t{1} << v;
                if ((active | blocked) & bit) continue;
                if (static_cast<std::uint32_t>(std::popcount(adj[v] & active)) >= thr[v]) next |= bit;
            }
            if (next == active) return active;
            active = next;
        }
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Brute force

namespace detail {

template <class Instance, class Feasible>
DeletionSolution bruteforce(const Instance& inst, const Instance& local, const SubgraphMap& map, Feasible feasible) {
    auto edges = local.graph.edges();
    if (edges.size() > 22)
        throw Error(ErrorKind::TooLarge, "closure subgraph has " + std::to_string(edges.size()) + " edges, limit is 22");
    auto small = SmallGraph::build(local.graph, local.seeds, local.thresholds);
    std::vector<std::size_t> idx;
    std::vector<Edge> pick;
    for (std::size_t size = 0; size <= edges.size(); ++size) {
        idx.resize(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            pick.clear();
            for (auto i : idx) pick.push_back(edges[i]);
            std::uint64_t infected = 0;
            VertexSet infected_set;
            if (small) {
                auto adj = small->nbr;
                for (const Edge& e : pick) {
                    adj[static_cast<std::size_t>(e.u)] &= ~(std::uint64_t{1} << e.v);
                    adj[static_cast<std::size_t>(e.v)] &= ~(std::uint64_t{1} << e.u);
                }
                infected = small->closure(adj, 0);
            } else {
                infected_set = closure(local.graph.without_edges(pick),
                                       with_seed_zero(local.thresholds, local.seeds), local.seeds);
            }
            auto is_infected = [&](Vertex v) {
                return small ? ((infected >> v) & 1u) != 0 : infected_set.contains(v);
            };
            if (feasible(is_infected)) return verified(inst, to_original(pick, map), true);
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == edges.size() - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw Error(ErrorKind::IllegalState, "no edge subset is feasible");
}

} // namespace detail

/// Exhaustive search over edge subsets of G[<A>] by increasing size; the first feasible
/// subset in lexicographic edge order wins.
inline DeletionSolution bruteforce_edge_deletion(const MinContagionInstance& inst) {
    inst.validate();
    auto [local, map] = restrict_to_closure(inst);
    const std::size_t n = local.graph.num_vertices();
    return detail::bruteforce(inst, local, map, [&](auto&& is_infected) {
        std::size_t extra = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (!local.seeds.contains(static_cast<Vertex>(v)) && is_infected(static_cast<Vertex>(v))) ++extra;
        return extra <= inst.slack;
    });
}

inline DeletionSolution bruteforce_edge_deletion(const StopContagionInstance& inst) {
    inst.validate();
    auto [local, map] = restrict_to_closure(inst);
    auto prot = local.protected_set.members();
    return detail::bruteforce(inst, local, map, [&](auto&& is_infected) {
        return std::none_of(prot.begin(), prot.end(), [&](Vertex b) { return is_infected(b); });
    });
}

// ---------------------------------------------------------------------------
// Randomized color-coding algorithm for Minimizing Contagion

namespace detail {

// Deletions that freeze the infected set at exactly C: every outside vertex with d >= t(v)
// neighbours in C loses d - t(v) + 1 of those edges, lowest-indexed neighbours first.
inline std::vector<Edge> freeze_deletions(const Graph& g, const ThresholdMap& t, const std::vector<char>& in_c) {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        auto vv = static_cast<Vertex>(v);
        if (in_c[v] || t.immunized(vv)) continue;
        std::vector<Vertex> inside;
        for (Vertex w : g.neighbors(vv))
            if (in_c[static_cast<std::size_t>(w)]) inside.push_back(w);
        const std::size_t need = t.value(vv);
        if (inside.size() < need) continue;
        for (std::size_t i = 0; i < inside.size() - need + 1; ++i) out.push_back(Edge::make(vv, inside[i]));
    }
    return out;
}

inline std::size_t freeze_cost(const Graph& g, const ThresholdMap& t, const std::vector<char>& in_c) {
    std::size_t cost = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        auto vv = static_cast<Vertex>(v);
        if (in_c[v] || t.immunized(vv)) continue;
        std::size_t inside = 0;
        for (Vertex w : g.neighbors(vv))
            if (in_c[static_cast<std::size_t>(w)]) ++inside;
        const std::size_t need = t.value(vv);
        if (inside >= need) cost += inside - need + 1;
    }
    return cost;
}

} // namespace detail

inline std::uint64_t fpt_trials(std::size_t r_max, std::size_t t) {
    if (r_max + t + 10 > 40) throw Error(ErrorKind::TooLarge, "r_max + t too large for the trial count");
    return std::uint64_t{1} << (r_max + t + 10);
}

/// One batch of 2^(r_max+t+10) colourings. Returns the cheapest verified solution with at
/// most t deletions and at most min(r_max, slack) additional infections, if any trial found one.
inline std::optional<DeletionSolution> run_fpt_batch(const MinContagionInstance& inst, std::size_t r_max,
                                                     std::size_t t, RngSeed seed) {
    inst.validate();
    const std::uint64_t trials = fpt_trials(r_max, t);
    auto [local, map] = restrict_to_closure(inst);
    const Graph& g = local.graph;
    const std::size_t n = g.num_vertices();
    const std::size_t spread_cap = std::min(r_max, inst.slack);
    const ThresholdMap zeroed = detail::with_seed_zero(local.thresholds, local.seeds);

    std::vector<Vertex> free; // colourable vertices
    for (std::size_t v = 0; v < n; ++v)
        if (!local.seeds.contains(static_cast<Vertex>(v))) free.push_back(static_cast<Vertex>(v));
    const std::size_t k = free.size();
    auto small = detail::SmallGraph::build(g, local.seeds, local.thresholds);

    // Outcome per red-infected set: deletion cost, or nullopt when the candidate is invalid.
    std::map<std::vector<Vertex>, std::optional<std::size_t>> cost_of;
    std::vector<std::int32_t> by_mask; // cache keyed by the colouring itself when it is small
    constexpr std::int32_t kUnknown = -2, kInvalid = -1;
    if (k <= 20) by_mask.assign(std::size_t{1} << k, kUnknown);

    Rng rng(seed);
    std::optional<std::size_t> best_cost;
    std::vector<Vertex> best_set;
    std::vector<char> red(k);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::uint64_t word = 0, mask = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (i % 64 == 0) word = rng.next();
            red[i] = static_cast<char>((word >> (i % 64)) & 1u);
            if (i < 20 && red[i]) mask |= std::uint64_t{1} << i;
        }
        std::int32_t cached = by_mask.empty() ? kUnknown : by_mask[mask];
        if (cached == kInvalid) continue;
        std::vector<Vertex> infected_red;
        std::optional<std::size_t> cost;
        if (cached != kUnknown && best_cost && static_cast<std::size_t>(cached) >= *best_cost) continue;

        std::vector<char> in_c(n, 0);
        if (small) {
            std::uint64_t blocked = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (!red[i]) blocked |= std::uint64_t{1} << free[i];
            auto c = small->closure(small->nbr, blocked);
            for (std::size_t v = 0; v < n; ++v) in_c[v] = static_cast<char>((c >> v) & 1u);
        } else {
            ThresholdMap tm = zeroed;
            for (std::size_t i = 0; i < k; ++i)
                if (!red[i]) tm.immunize(free[i]);
            auto c = closure(g, tm, local.seeds);
            for (std::size_t v = 0; v < n; ++v) in_c[v] = static_cast<char>(c.contains(static_cast<Vertex>(v)));
        }
        for (Vertex v : free)
            if (in_c[static_cast<std::size_t>(v)]) infected_red.push_back(v);

        auto it = cost_of.find(infected_red);
        if (it == cost_of.end()) {
            std::optional<std::size_t> c;
            if (infected_red.size() <= spread_cap) {
                auto d = detail::freeze_cost(g, zeroed, in_c);
                if (d <= t) c = d;
            }
            it = cost_of.emplace(infected_red, c).first;
        }
        cost = it->second;
        if (!by_mask.empty()) by_mask[mask] = cost ? static_cast<std::int32_t>(*cost) : kInvalid;
        if (!cost) continue;
        if (!best_cost || *cost < *best_cost) {
            best_cost = cost;
            best_set = infected_red;
        }
    }
    if (!best_cost) return std::nullopt;

    std::vector<char> in_c(n, 0);
    for (Vertex v : local.seeds.members()) in_c[static_cast<std::size_t>(v)] = 1;
    for (Vertex v : best_set) in_c[static_cast<std::size_t>(v)] = 1;
    auto deleted = detail::to_original(detail::freeze_deletions(g, zeroed, in_c), map);
    return detail::verified(inst, std::move(deleted), false);
}

/// Best result over independent batches; batch b uses the substream derive_seed(seed, "fpt-batch", {b}).
inline DeletionSolution solve_randomized_fpt(const MinContagionInstance& inst, std::size_t r_max, std::size_t t,
                                             std::size_t batches, RngSeed seed) {
    std::optional<DeletionSolution> best;
    for (std::size_t b = 0; b < batches; ++b) {
        auto sol = run_fpt_batch(inst, r_max, t, derive_seed(seed, "fpt-batch", {b}));
        if (sol && (!best || sol->deleted_edges.size() < best->deleted_edges.size())) best = std::move(sol);
    }
    if (!best) throw Error(ErrorKind::NoSolutionFound, "no batch found a solution within the given parameters");
    return *best;
}

// ---------------------------------------------------------------------------
// Hard instances from vertex cover

/// Stopping-contagion instance whose optimum equals the minimum vertex cover of g_vc.
/// Layout: vertex i of g_vc keeps id i; edge e (lexicographic index) becomes the protected
/// vertex n + e adjacent to both endpoints; vertex i gets two private seeds
/// n + m + 2i and n + m + 2i + 1. Every non-seed threshold is 2.
inline StopContagionInstance gen_hard_stop_instance(const Graph& g_vc) {
    const std::size_t n = g_vc.num_vertices();
    const auto base = g_vc.edges();
    const std::size_t m = base.size();
    const std::size_t total = n + m + 2 * n;
    std::vector<Edge> edges;
    VertexSet seeds(total), prot(total);
    for (std::size_t e = 0; e < m; ++e) {
        auto w = static_cast<Vertex>(n + e);
        edges.push_back({base[e].u, w});
        edges.push_back({base[e].v, w});
        prot.insert(w);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            auto z = static_cast<Vertex>(n + m + 2 * i + j);
            edges.push_back({static_cast<Vertex>(i), z});
            seeds.insert(z);
        }
    return StopContagionInstance::uniform(Graph::from_edge_list(total, edges), std::move(seeds), std::move(prot), 2);
}

/// Exhaustive minimum vertex cover, n <= 30.
inline std::size_t min_vertex_cover_bruteforce(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n > 30) throw Error(ErrorKind::TooLarge, "vertex cover oracle limited to 30 vertices");
    auto edges = g.edges();
    std::size_t best = n;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) continue;
        bool ok = std::all_of(edges.begin(), edges.end(),
                              [&](const Edge& e) { return ((mask >> e.u) | (mask >> e.v)) & 1u; });
        if (ok) best = size;
    }
    return best;
}

} // namespace contagion

#endif
