#ifndef CONTAGION_RANDOM_MODELS_HPP
#define CONTAGION_RANDOM_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "contagion/error.hpp"
#include "contagion/graph.hpp"

namespace contagion {

using RngSeed = std::uint64_t;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for an independent substream, keyed by a purpose tag and integer coordinates.
inline RngSeed derive_seed(RngSeed root, std::string_view tag, std::initializer_list<std::uint64_t> coords = {}) {
    std::uint64_t h = splitmix64(root);
    for (unsigned char c : tag) h = splitmix64(h ^ c);
    for (std::uint64_t c : coords) h = splitmix64(h ^ splitmix64(c));
    return h;
}

/// Seeded generator with platform-independent integer and real draws.
class Rng {
public:
    explicit Rng(RngSeed seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

/// Visits each index of [0, total) independently with probability p, via geometric skips.
template <typename F>
void bernoulli_indices(std::uint64_t total, double p, Rng& rng, F&& visit) {
    if (p <= 0.0 || total == 0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < total; ++i) visit(i);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t i = 0;
    while (true) {
        double u = 1.0 - rng.uniform(); // (0, 1]
        double skip = std::floor(std::log(u) / log_q);
        if (skip >= static_cast<double>(total - i)) return;
        i += static_cast<std::uint64_t>(skip);
        visit(i);
        ++i;
        if (i >= total) return;
    }
}

/// Maps a lexicographic pair index to (u, v), u < v, by walking rows. Callers feed
/// indices in increasing order, so the walk state is carried in `row` / `row_start`.
struct PairCursor {
    std::uint64_t n;
    std::uint64_t row = 0;
    std::uint64_t row_start = 0;

    Edge at(std::uint64_t index) {
        while (index >= row_start + (n - 1 - row)) {
            row_start += n - 1 - row;
            ++row;
        }
        return {static_cast<Vertex>(row), static_cast<Vertex>(row + 1 + (index - row_start))};
    }
};

} // namespace detail

/// G(n, p): every pair independently with probability p.
inline Graph gnp(std::size_t n, double p, RngSeed seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadProbability, "p=" + std::to_string(p));
    Rng rng(derive_seed(seed, "gnp"));
    std::vector<Edge> edges;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) / 2;
    detail::PairCursor cursor{n};
    detail::bernoulli_indices(total, p, rng, [&](std::uint64_t idx) { edges.push_back(cursor.at(idx)); });
    return Graph::from_edge_list(n, edges);
}

/// Uniform-ish random d-regular simple graph: random pairing of stubs, avoiding loops and
/// multi-edges pair by pair, restarting whenever the remaining stubs cannot be matched.
inline Graph random_regular(std::size_t n, std::size_t d, RngSeed seed) {
    if (d >= n && !(n == 0 && d == 0)) throw Error(ErrorKind::DegreeTooLarge, "d must be < n");
    if ((n * d) % 2 != 0) throw Error(ErrorKind::ParityViolation, "n*d must be even");
    Rng rng(derive_seed(seed, "regular"));
    for (std::size_t attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Vertex> stubs;
        stubs.reserve(n * d);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < d; ++i) stubs.push_back(static_cast<Vertex>(v));
        std::vector<std::vector<Vertex>> adj(n);
        std::vector<Edge> edges;
        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            bool placed = false;
            for (int tries = 0; tries < 100 && !placed; ++tries) {
                std::size_t i = rng.below(stubs.size());
                std::size_t j = rng.below(stubs.size());
                Vertex a = stubs[i], b = stubs[j];
                if (i == j || a == b) continue;
                auto& na = adj[static_cast<std::size_t>(a)];
                if (std::find(na.begin(), na.end(), b) != na.end()) continue;
                na.push_back(b);
                adj[static_cast<std::size_t>(b)].push_back(a);
                edges.push_back(Edge::make(a, b));
                if (i < j) std::swap(i, j);
                stubs[i] = stubs.back();
                stubs.pop_back();
                stubs[j] = stubs.back();
                stubs.pop_back();
                placed = true;
            }
            stuck = !placed;
        }
        if (!stuck) {
            std::sort(edges.begin(), edges.end());
            return Graph::from_edge_list(n, edges);
        }
    }
    throw Error(ErrorKind::IllegalState, "random_regular failed to converge");
}

/// Random tree by sequential attachment: vertex i joins a uniformly chosen earlier vertex
/// that still has spare degree. Not uniform over bounded-degree trees.
inline Graph random_tree(std::size_t n, std::size_t max_degree, RngSeed seed) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
    if (max_degree < 2 && n > 2) throw Error(ErrorKind::InfeasibleDegree, "max_degree < 2 with n > 2");
    if (max_degree == 0 && n == 2) throw Error(ErrorKind::InfeasibleDegree, "max_degree 0 with an edge");
    Rng rng(derive_seed(seed, "tree"));
    std::vector<Vertex> open{0};
    std::vector<std::size_t> deg(n, 0);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        std::size_t k = rng.below(open.size());
        Vertex parent = open[k];
        edges.push_back({parent, static_cast<Vertex>(v)});
        auto pi = static_cast<std::size_t>(parent);
        if (++deg[pi] == max_degree) {
            open[k] = open.back();
            open.pop_back();
        }
        deg[v] = 1;
        if (deg[v] < max_degree) open.push_back(static_cast<Vertex>(v));
    }
    return Graph::from_edge_list(n, edges);
}

struct NoisyTreeParams {
    Graph base;
    double epsilon = 1.0;
};

/// Adds every non-edge of the base tree independently with probability epsilon / n.
inline Graph noisy_tree(const NoisyTreeParams& params, RngSeed seed) {
    const Graph& base = params.base;
    if (!is_tree(base)) throw Error(ErrorKind::NotATree, "base graph is not a tree");
    const std::size_t n = base.num_vertices();
    const double p = params.epsilon / static_cast<double>(n);
    if (!(params.epsilon >= 0.0) || p > 1.0) throw Error(ErrorKind::BadProbability, "epsilon/n must lie in [0,1]");
    Rng rng(derive_seed(seed, "noise"));
    std::vector<Edge> edges = base.edges();
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    detail::PairCursor cursor{n};
    detail::bernoulli_indices(total, p, rng, [&](std::uint64_t idx) {
        Edge e = cursor.at(idx);
        if (!base.has_edge(e.u, e.v)) edges.push_back(e);
    });
    return Graph::from_edge_list(n, edges);
}

/// side x side grid with 4-neighbour adjacency; vertex (r, c) has id r * side + c.
inline Graph grid(std::size_t side) {
    if (side == 0) throw Error(ErrorKind::InvalidInput, "side must be >= 1");
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            auto id = static_cast<Vertex>(r * side + c);
            if (c + 1 < side) edges.push_back({id, id + 1});
            if (r + 1 < side) edges.push_back({id, static_cast<Vertex>(id + static_cast<Vertex>(side))});
        }
    return Graph::from_edge_list(side * side, edges);
}

inline Graph path(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
    std::vector<Edge> edges;
    for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1)});
    return Graph::from_edge_list(n, edges);
}

/// Star with centre 0 and n - 1 leaves.
inline Graph star(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.push_back({0, static_cast<Vertex>(v)});
    return Graph::from_edge_list(n, edges);
}

/// Edge perimeter of S inside the side x side grid padded by one ring of cells: the number
/// of grid-cell sides separating a member of S from a non-member (padding included).
/// Equals 4k for an interior k x k block and never increases under threshold-2 percolation.
inline std::size_t grid_perimeter(std::size_t side, const VertexSet& s) {
    if (s.universe() != side * side) throw Error(ErrorKind::VertexOutOfRange, "set universe must be side*side");
    std::size_t perimeter = 0;
    for (Vertex v : s.members()) {
        auto r = static_cast<std::size_t>(v) / side;
        auto c = static_cast<std::size_t>(v) % side;
        std::size_t inside = 0;
        if (c > 0 && s.contains(v - 1)) ++inside;
        if (c + 1 < side && s.contains(v + 1)) ++inside;
        if (r > 0 && s.contains(v - static_cast<Vertex>(side))) ++inside;
        if (r + 1 < side && s.contains(v + static_cast<Vertex>(side))) ++inside;
        perimeter += 4 - inside;
    }
    return perimeter;
}

/// Vertex boundary of S in the padded grid: cells outside S with a neighbour in S.
inline std::size_t grid_vertex_boundary(std::size_t side, const VertexSet& s) {
    if (s.universe() != side * side) throw Error(ErrorKind::VertexOutOfRange, "set universe must be side*side");
    auto in_s = [&](long r, long c) {
        if (r < 0 || c < 0 || r >= static_cast<long>(side) || c >= static_cast<long>(side)) return false;
        return s.contains(static_cast<Vertex>(static_cast<std::size_t>(r) * side + static_cast<std::size_t>(c)));
    };
    std::size_t count = 0;
    for (long r = -1; r <= static_cast<long>(side); ++r)
        for (long c = -1; c <= static_cast<long>(side); ++c) {
            if (in_s(r, c)) continue;
            if (in_s(r - 1, c) || in_s(r + 1, c) || in_s(r, c - 1) || in_s(r, c + 1)) ++count;
        }
    return count;
}

/// k distinct vertices chosen uniformly (partial Fisher-Yates), sorted.
inline std::vector<Vertex> random_subset(std::size_t n, std::size_t k, Rng& rng) {
    if (k > n) throw Error(ErrorKind::KOutOfRange, "k > n");
    std::vector<Vertex> picked;
    std::unordered_map<std::size_t, std::size_t> moved; // sparse Fisher-Yates
    auto value_at = [&](std::size_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.below(n - i);
        std::size_t vi = value_at(i), vj = value_at(j);
        moved[j] = vi;
        moved[i] = vj;
        picked.push_back(static_cast<Vertex>(vj));
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

} // namespace contagion

#endif
