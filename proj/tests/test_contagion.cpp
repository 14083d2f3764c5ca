#include <gtest/gtest.h>

#include "contagion/contagion.hpp"
#include "contagion/oracle.hpp"

using namespace contagion;

namespace {

Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return Graph::from_edge_list(n, e);
}

// Seeds 0 and 1, vertex 2 adjacent to both.
MinContagionInstance diamond(std::size_t slack = 0) {
    return MinContagionInstance::uniform(Graph::from_edge_list(3, {{0, 1}, {0, 2}, {1, 2}}), VertexSet::of(3, {0, 1}), 2,
                                         slack);
}

MinContagionInstance k4_min() { return MinContagionInstance::uniform(complete(4), VertexSet::of(4, {0, 1}), 2, 0); }

StopContagionInstance k4_stop() {
    return StopContagionInstance::uniform(complete(4), VertexSet::of(4, {0, 1}), VertexSet::of(4, {3}), 2);
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no exception";
    return ErrorKind::IllegalState;
}

} // namespace

TEST(MinContagion, Diamond) {
    auto tw = solve_min_contagion_tw(diamond());
    EXPECT_EQ(tw.deleted_edges.size(), 1u);
    EXPECT_EQ(tw.additional_infected, 0u);
    EXPECT_TRUE(tw.optimal);
    auto brute = bruteforce_edge_deletion(diamond());
    EXPECT_EQ(brute.deleted_edges, (std::vector<Edge>{{0, 2}}));
}

TEST(MinContagion, K4) {
    EXPECT_EQ(solve_min_contagion_tw(k4_min()).deleted_edges.size(), 2u);
    EXPECT_EQ(bruteforce_edge_deletion(k4_min()).deleted_edges.size(), 2u);
}

TEST(MinContagion, SlackCoversSpread) {
    auto inst = k4_min();
    inst.slack = 2;
    EXPECT_TRUE(solve_min_contagion_tw(inst).deleted_edges.empty());
    EXPECT_TRUE(bruteforce_edge_deletion(inst).deleted_edges.empty());
    inst.slack = 1;
    EXPECT_EQ(solve_min_contagion_tw(inst).deleted_edges.size(), 2u);
}

TEST(MinContagion, NothingToSpread) {
    auto inst = MinContagionInstance::uniform(Graph::from_edge_list(4, {{0, 2}, {1, 3}}), VertexSet::of(4, {0, 1}), 2, 0);
    EXPECT_TRUE(solve_min_contagion_tw(inst).deleted_edges.empty());
    EXPECT_TRUE(bruteforce_edge_deletion(inst).deleted_edges.empty());
}

TEST(StopContagion, K4) {
    auto tw = solve_stop_contagion_tw(k4_stop());
    EXPECT_EQ(tw.deleted_edges.size(), 2u);
    EXPECT_EQ(tw.protected_infected, 0u);
    EXPECT_EQ(bruteforce_edge_deletion(k4_stop()).deleted_edges.size(), 2u);
}

TEST(StopContagion, Star) {
    auto inst = StopContagionInstance::uniform(star(3), VertexSet::of(3, {1, 2}), VertexSet::of(3, {0}), 2);
    EXPECT_EQ(solve_stop_contagion_tw(inst).deleted_edges.size(), 1u);
    EXPECT_EQ(bruteforce_edge_deletion(inst).deleted_edges.size(), 1u);
}

TEST(StopContagion, EmptyProtectedSet) {
    auto inst = k4_stop();
    inst.protected_set = VertexSet(4);
    EXPECT_TRUE(solve_stop_contagion_tw(inst).deleted_edges.empty());
}

TEST(Instances, Validation) {
    EXPECT_EQ(kind_of([] { MinContagionInstance::uniform(path(3), VertexSet(3), 2, 0); }), ErrorKind::InvalidInstance);
    EXPECT_EQ(kind_of([] { MinContagionInstance::uniform(path(3), VertexSet::of(3, {0}), 1, 0); }),
              ErrorKind::InvalidInstance);
    EXPECT_EQ(kind_of([] { StopContagionInstance::uniform(path(3), VertexSet::of(3, {0}), VertexSet::of(3, {0}), 2); }),
              ErrorKind::InvalidInstance);
}

TEST(Restrict, Examples) {
    auto path_inst = MinContagionInstance::uniform(path(5), VertexSet::of(5, {0, 2}), 2, 0);
    auto [local, map] = restrict_to_closure(path_inst);
    EXPECT_EQ(local.graph.num_vertices(), 3u);
    EXPECT_EQ(map.inverse(1), 1);
    EXPECT_EQ(local.seeds.members(), (std::vector<Vertex>{0, 2}));

    auto closed = MinContagionInstance::uniform(path(5), VertexSet::of(5, {0, 1}), 2, 0);
    EXPECT_EQ(restrict_to_closure(closed).first.graph, path(2));

    auto everything = k4_min();
    EXPECT_EQ(restrict_to_closure(everything).first.graph, everything.graph);
}

TEST(Restrict, PreservesOptima) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        auto inst = random_min_instance(s);
        auto [local, map] = restrict_to_closure(inst);
        EXPECT_EQ(bruteforce_edge_deletion(inst).deleted_edges.size(),
                  bruteforce_edge_deletion(local).deleted_edges.size());
    }
}

TEST(Reduction, TriangleCounts) {
    auto inst = MinContagionInstance::uniform(complete(3), VertexSet::of(3, {0, 1}), 2, 0);
    auto red = reduce_min_contagion(inst);
    EXPECT_EQ(red.subdivision.graph.num_vertices(), 6u);
    EXPECT_EQ(red.subdivision.graph.num_edges(), 6u);
    for (Vertex w = 3; w < 6; ++w) {
        EXPECT_EQ(red.gidm.thresholds.value(w), 1u);
        EXPECT_TRUE(red.gidm.immunizable.contains(w));
        EXPECT_EQ(red.vertex_for(red.edge_for(w)), w);
    }
    EXPECT_EQ(red.gidm.thresholds.value(0), 0u);
    EXPECT_EQ(red.gidm.counted.members(), (std::vector<Vertex>{2}));
}

TEST(Reduction, EdgelessAndK4) {
    auto edgeless = MinContagionInstance::uniform(Graph::from_edge_list(3, {}), VertexSet::of(3, {0}), 2, 0);
    auto red = reduce_min_contagion(edgeless);
    EXPECT_TRUE(red.gidm.immunizable.empty());
    EXPECT_EQ(gidm_bruteforce(red.gidm).infected, 0u);

    auto k4 = reduce_min_contagion(k4_min());
    EXPECT_EQ(gidm_bruteforce(k4.gidm).infected, spread(complete(4), ThresholdMap::uniform(4, 2), VertexSet::of(4, {0, 1})));
    auto stop = reduce_stop_contagion(k4_stop());
    stop.gidm.budget = 2;
    EXPECT_EQ(gidm_bruteforce(stop.gidm).infected, 0u);
}

TEST(Reduction, ClosureCorrespondence) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        std::size_t n = 2 + rng.below(8);
        auto g = gnp(n, 0.5, s);
        auto seeds = VertexSet::of(n, random_subset(n, 1 + rng.below(n - 1), rng));
        auto r = static_cast<std::uint32_t>(2 + rng.below(2));
        auto inst = MinContagionInstance::uniform(g, seeds, r, 0);
        auto red = reduce_min_contagion(inst);
        VertexSet seeds_prime(red.subdivision.graph.num_vertices());
        for (Vertex v : seeds.members()) seeds_prime.insert(v);
        auto big = closure(red.subdivision.graph, red.gidm.thresholds, seeds_prime);
        auto small = closure(g, ThresholdMap::uniform(n, r), seeds);
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) EXPECT_EQ(big.contains(v), small.contains(v));
        for (Vertex w = static_cast<Vertex>(n); w < static_cast<Vertex>(big.universe()); ++w) {
            auto e = red.edge_for(w);
            EXPECT_EQ(big.contains(w), small.contains(e.u) || small.contains(e.v));
        }
    }
}

TEST(Solvers, MatchBruteforce) {
    for (std::uint64_t s = 0; s < 80; ++s) {
        auto mi = random_min_instance(s);
        auto tw = solve_min_contagion_tw(mi);
        EXPECT_EQ(tw.deleted_edges.size(), bruteforce_edge_deletion(mi).deleted_edges.size()) << describe(mi);
        EXPECT_LE(evaluate(mi, tw.deleted_edges).additional_infected, mi.slack);
        auto si = random_stop_instance(s);
        auto st = solve_stop_contagion_tw(si);
        EXPECT_EQ(st.deleted_edges.size(), bruteforce_edge_deletion(si).deleted_edges.size()) << describe(si);
        EXPECT_EQ(evaluate(si, st.deleted_edges).protected_infected, 0u);
    }
}

TEST(Bruteforce, GuardsLargeClosures) {
    auto inst = MinContagionInstance::uniform(complete(8), VertexSet::of(8, {0, 1}), 2, 0);
    EXPECT_EQ(kind_of([&] { bruteforce_edge_deletion(inst); }), ErrorKind::TooLarge);
}

TEST(Fpt, Trials) {
    EXPECT_EQ(fpt_trials(0, 1), 2048u);
    EXPECT_EQ(kind_of([] { fpt_trials(20, 20); }), ErrorKind::TooLarge);
}

TEST(Fpt, DiamondAndK4Frequency) {
    std::size_t diamond_hits = 0, k4_hits = 0;
    for (std::size_t b = 0; b < 20; ++b) {
        auto d = run_fpt_batch(diamond(), 0, 1, derive_seed(1, "test", {b}));
        if (d && d->deleted_edges.size() == 1) ++diamond_hits;
        auto k = run_fpt_batch(k4_min(), 0, 2, derive_seed(2, "test", {b}));
        if (k && k->deleted_edges.size() == 2) ++k4_hits;
    }
    EXPECT_GE(diamond_hits * 3, 20u * 2);
    EXPECT_GE(k4_hits * 3, 20u * 2);
}

TEST(Fpt, ZeroDeletionInstance) {
    auto inst = MinContagionInstance::uniform(path(4), VertexSet::of(4, {0}), 2, 0);
    auto sol = solve_randomized_fpt(inst, 0, 0, 1, 5);
    EXPECT_TRUE(sol.deleted_edges.empty());
}

TEST(Fpt, NoSolution) {
    EXPECT_EQ(kind_of([] { solve_randomized_fpt(k4_min(), 0, 1, 2, 9); }), ErrorKind::NoSolutionFound);
}

TEST(Fpt, NeverBeatsOptimum) {
    for (std::uint64_t s = 0; s < 15; ++s) {
        auto inst = random_min_instance(s + 400);
        auto opt = bruteforce_edge_deletion(inst).deleted_edges.size();
        if (opt + inst.slack > 6) continue;
        auto sol = run_fpt_batch(inst, inst.slack, opt, s);
        if (sol) {
            EXPECT_EQ(sol->deleted_edges.size(), opt);
        }
    }
}

TEST(HardInstance, VertexCoverExamples) {
    auto edge = gen_hard_stop_instance(path(2));
    EXPECT_EQ(solve_stop_contagion_tw(edge).deleted_edges.size(), 1u);
    auto k3 = gen_hard_stop_instance(complete(3));
    EXPECT_EQ(solve_stop_contagion_tw(k3).deleted_edges.size(), 2u);
    EXPECT_EQ(bruteforce_edge_deletion(k3).deleted_edges.size(), 2u);
    auto empty = gen_hard_stop_instance(Graph::from_edge_list(3, {}));
    EXPECT_TRUE(solve_stop_contagion_tw(empty).deleted_edges.empty());
}

TEST(HardInstance, MatchesVertexCover) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(s);
        auto g = gnp(2 + rng.below(6), 0.5, s);
        EXPECT_EQ(solve_stop_contagion_tw(gen_hard_stop_instance(g)).deleted_edges.size(), min_vertex_cover_bruteforce(g));
    }
}

TEST(GridSpread, QuadraticInSeeds) {
    const std::size_t side = 30;
    auto g = grid(side);
    for (std::uint64_t s = 0; s < 500; ++s) {
        Rng rng(s);
        std::size_t k = 1 + rng.below(40);
        auto seeds = VertexSet::of(side * side, random_subset(side * side, k, rng));
        auto c = closure(g, ThresholdMap::uniform(side * side, 2), seeds);
        EXPECT_LE(grid_perimeter(side, c), 4 * k);
        EXPECT_LE(c.size(), k * k);
    }
}
