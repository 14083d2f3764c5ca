#include <gtest/gtest.h>

#include <sstream>

#include "contagion/percolation.hpp"
#include "contagion/random_models.hpp"

using namespace contagion;

namespace {

Graph triangle() { return Graph::from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}}); }

} // namespace

TEST(Percolate, PathExample) {
    auto tr = percolate(path(5), 2, VertexSet::of(5, {0, 2}));
    EXPECT_EQ(tr.closure.members(), (std::vector<Vertex>{0, 1, 2}));
    ASSERT_EQ(tr.rounds.size(), 2u);
    EXPECT_EQ(tr.rounds[1], (std::vector<Vertex>{1}));
    EXPECT_EQ(tr.spread(), 1u);
    EXPECT_EQ(spread(path(5), ThresholdMap::uniform(5, 2), VertexSet::of(5, {0, 2})), 1u);
}

TEST(Percolate, EmptySeeds) {
    auto tr = percolate(path(5), 2, VertexSet(5));
    EXPECT_TRUE(tr.closure.empty());
}

TEST(Percolate, GridDiagonal) {
    auto tr = percolate(grid(2), 2, VertexSet::of(4, {0, 3}));
    EXPECT_EQ(tr.closure.size(), 4u);
}

TEST(Percolate, SeedImmunized) {
    ThresholdMap t(3, 2);
    t.immunize(1);
    try {
        percolate(triangle(), t, VertexSet::of(3, {1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SeedImmunized);
    }
}

TEST(Percolate, ImmunizedNeverActivates) {
    ThresholdMap t(3, 1);
    t.immunize(2);
    auto c = closure(triangle(), t, VertexSet::of(3, {0}));
    EXPECT_EQ(c.members(), (std::vector<Vertex>{0, 1}));
}

TEST(Percolate, ThresholdZeroActivatesImmediately) {
    ThresholdMap t(3, 2);
    t.set(2, 0);
    auto tr = percolate(path(3), t, VertexSet(3));
    EXPECT_EQ(tr.closure.members(), (std::vector<Vertex>{2}));
}

TEST(Percolate, TraceInvariants) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        std::size_t n = 1 + rng.below(30);
        auto g = gnp(n, rng.uniform() * 0.4, s);
        ThresholdMap t(n, 2);
        for (std::size_t v = 0; v < n; ++v) t.set(static_cast<Vertex>(v), static_cast<std::uint32_t>(1 + rng.below(3)));
        auto seeds = VertexSet::of(n, random_subset(n, rng.below(n + 1), rng));
        auto tr = percolate(g, t, seeds);
        VertexSet seen(n);
        for (std::size_t i = 0; i < tr.rounds.size(); ++i) {
            if (i > 0) {
                EXPECT_FALSE(tr.rounds[i].empty());
            }
            for (Vertex v : tr.rounds[i]) {
                EXPECT_FALSE(seen.contains(v));
                seen.insert(v);
            }
        }
        EXPECT_EQ(seen, tr.closure);
        EXPECT_TRUE(seeds.is_subset_of(tr.closure));
        EXPECT_TRUE(is_closed(g, t, tr.closure));
        EXPECT_LE(tr.rounds.size(), n + 1);
    }
}

TEST(Percolate, SynchronousRoundsMatchDefinition) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s + 1000);
        std::size_t n = 2 + rng.below(15);
        auto g = gnp(n, 0.3, s);
        auto seeds = VertexSet::of(n, random_subset(n, 1 + rng.below(n - 1), rng));
        auto tr = percolate(g, 2, seeds);
        VertexSet active = seeds;
        for (std::size_t i = 1; i < tr.rounds.size(); ++i) {
            std::vector<Vertex> fresh;
            for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
                if (active.contains(v)) continue;
                std::size_t hits = 0;
                for (Vertex w : g.neighbors(v)) hits += active.contains(w);
                if (hits >= 2) fresh.push_back(v);
            }
            EXPECT_EQ(tr.rounds[i], fresh);
            for (Vertex v : fresh) active.insert(v);
        }
    }
}

TEST(Spread, ForestBound) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        auto g = random_tree(1 + rng.below(60), 3, s);
        std::size_t n = g.num_vertices();
        std::size_t k = 1 + rng.below(n);
        auto seeds = VertexSet::of(n, random_subset(n, k, rng));
        EXPECT_LT(spread(g, ThresholdMap::uniform(n, 2), seeds), k);
    }
}

TEST(Spread, AllSeeds) { EXPECT_EQ(spread(triangle(), ThresholdMap::uniform(3, 2), VertexSet::full(3)), 0u); }

TEST(Percolate, Monotone) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Rng rng(s);
        std::size_t n = 2 + rng.below(20);
        auto g = gnp(n, 0.25, s);
        auto small = VertexSet::of(n, random_subset(n, rng.below(n), rng));
        auto big = small;
        for (std::size_t v = 0; v < n; ++v)
            if (rng.bernoulli(0.3)) big.insert(static_cast<Vertex>(v));
        EXPECT_TRUE(closure(g, ThresholdMap::uniform(n, 2), small).is_subset_of(closure(g, ThresholdMap::uniform(n, 2), big)));
    }
}

TEST(Percolate, Idempotent) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        auto g = gnp(20, 0.2, s);
        auto c = closure(g, ThresholdMap::uniform(20, 2), VertexSet::of(20, random_subset(20, 4, rng)));
        auto again = percolate(g, 2, c);
        EXPECT_EQ(again.closure, c);
        EXPECT_EQ(again.rounds.size(), 1u);
    }
}

TEST(Percolate, EdgeDeletionNeverEnlarges) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        auto g = gnp(15, 0.3, s);
        if (g.num_edges() == 0) continue;
        auto seeds = VertexSet::of(15, random_subset(15, 3, rng));
        auto edges = g.edges();
        std::vector<Edge> drop{edges[rng.below(edges.size())]};
        auto before = closure(g, ThresholdMap::uniform(15, 2), seeds);
        auto after = closure(g.without_edges(drop), ThresholdMap::uniform(15, 2), seeds);
        EXPECT_TRUE(after.is_subset_of(before));
    }
}

TEST(MinContagiousSet, Examples) {
    EXPECT_EQ(min_contagious_set_bruteforce(triangle(), 2), 2u);
    EXPECT_EQ(min_contagious_set_bruteforce(Graph::from_edge_list(1, {}), 2), 1u);
    EXPECT_EQ(min_contagious_set_bruteforce(path(4), 2), 3u);
    try {
        min_contagious_set_bruteforce(path(20), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
    }
}

TEST(MinContagiousSet, EdgeAdditionLowersByAtMostK) {
    for (std::uint64_t s = 0; s < 150; ++s) {
        Rng rng(s);
        std::size_t n = 2 + rng.below(6);
        auto g = gnp(n, 0.4, s);
        std::vector<Edge> missing;
        for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
            for (Vertex b = a + 1; b < static_cast<Vertex>(n); ++b)
                if (!g.has_edge(a, b)) missing.push_back({a, b});
        std::size_t k = missing.empty() ? 0 : 1 + rng.below(std::min<std::size_t>(3, missing.size()));
        std::vector<Edge> added;
        for (auto idx : random_subset(missing.size(), k, rng)) added.push_back(missing[static_cast<std::size_t>(idx)]);
        auto before = min_contagious_set_bruteforce(g, 2);
        auto after = min_contagious_set_bruteforce(g.with_edges(added), 2);
        EXPECT_LE(after, before);
        EXPECT_GE(after + k, before);
    }
}

TEST(IsClosed, Examples) {
    EXPECT_TRUE(is_closed(triangle(), ThresholdMap::uniform(3, 2), VertexSet::of(3, {0})));
    EXPECT_FALSE(is_closed(triangle(), ThresholdMap::uniform(3, 2), VertexSet::of(3, {0, 1})));
}

TEST(ThresholdFile, Parse) {
    std::istringstream in("# thresholds\n0 0\n2 inf\n3 5\n");
    auto t = read_threshold_file(in, 4, 2);
    EXPECT_EQ(t.value(0), 0u);
    EXPECT_EQ(t.value(1), 2u);
    EXPECT_TRUE(t.immunized(2));
    EXPECT_EQ(t.get(2), std::nullopt);
    EXPECT_EQ(t.value(3), 5u);
    std::istringstream bad("1 -3\n");
    EXPECT_THROW(read_threshold_file(bad, 4, 2), Error);
    std::istringstream range("9 1\n");
    EXPECT_THROW(read_threshold_file(range, 4, 2), Error);
}

TEST(ThresholdMap, ImmunizedValueIsAnError) {
    ThresholdMap t(2, 2);
    t.immunize(0);
    EXPECT_THROW(t.value(0), Error);
    EXPECT_EQ(t.max_finite(), 2u);
}
