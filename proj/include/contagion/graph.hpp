#ifndef CONTAGION_GRAPH_HPP
#define CONTAGION_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contagion/error.hpp"

namespace contagion {

using Vertex = std::int32_t;

/// Undirected edge, normalised so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    static Edge make(Vertex a, Vertex b) noexcept { return a < b ? Edge{a, b} : Edge{b, a}; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Membership bitmap over {0..n-1} with a cached cardinality.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : bits_(n, 0) {}

    static VertexSet of(std::size_t n, std::span<const Vertex> members) {
        VertexSet s(n);
        for (Vertex v : members) s.insert(v);
        return s;
    }
    static VertexSet of(std::size_t n, std::initializer_list<Vertex> members) {
        return of(n, std::span<const Vertex>(members.begin(), members.size()));
    }
    static VertexSet full(std::size_t n) {
        VertexSet s(n);
        std::fill(s.bits_.begin(), s.bits_.end(), 1);
        s.count_ = n;
        return s;
    }

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(Vertex v) const noexcept {
        return v >= 0 && static_cast<std::size_t>(v) < bits_.size() && bits_[static_cast<std::size_t>(v)] != 0;
    }

    void insert(Vertex v) {
        check(v);
        auto& b = bits_[static_cast<std::size_t>(v)];
        if (!b) {
            b = 1;
            ++count_;
        }
    }

    void erase(Vertex v) {
        check(v);
        auto& b = bits_[static_cast<std::size_t>(v)];
        if (b) {
            b = 0;
            --count_;
        }
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) out.push_back(static_cast<Vertex>(i));
        return out;
    }

    bool is_subset_of(const VertexSet& other) const {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !other.contains(static_cast<Vertex>(i))) return false;
        return true;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.count_ == b.count_ && a.bits_ == b.bits_;
    }

private:
    void check(Vertex v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= bits_.size())
            throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " outside universe of size " +
                                                         std::to_string(bits_.size()));
    }

    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

/// Immutable simple undirected graph over dense ids 0..n-1 with sorted adjacency.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    /// Builds a graph from an edge list. Rejects self-loops, duplicates and out-of-range endpoints.
    static Graph from_edge_list(std::size_t n, std::span<const Edge> edges) {
        Graph g(n);
        for (const Edge& e : edges) {
            if (e.u < 0 || static_cast<std::size_t>(e.u) >= n)
                throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(e.u));
            if (e.v < 0 || static_cast<std::size_t>(e.v) >= n)
                throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(e.v));
            if (e.u == e.v) throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(e.u));
            g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
            g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto& nb = g.adj_[v];
            std::sort(nb.begin(), nb.end());
            auto dup = std::adjacent_find(nb.begin(), nb.end());
            if (dup != nb.end()) {
                auto e = Edge::make(static_cast<Vertex>(v), *dup);
                throw Error(ErrorKind::DuplicateEdge,
                            "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
            }
        }
        g.m_ = edges.size();
        return g;
    }
    static Graph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
        return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    std::size_t num_vertices() const noexcept { return adj_.size(); }
    std::size_t num_edges() const noexcept { return m_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)).size(); }

    std::size_t max_degree() const noexcept {
        std::size_t d = 0;
        for (const auto& nb : adj_) d = std::max(d, nb.size());
        return d;
    }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= adj_.size()) return false;
        const auto& nb = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// All edges with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (static_cast<Vertex>(u) < v) out.push_back({static_cast<Vertex>(u), v});
        return out;
    }

    /// New graph without the listed edges (edges absent from the graph are ignored).
    Graph without_edges(std::span<const Edge> removed) const {
        std::vector<Edge> drop(removed.begin(), removed.end());
        for (auto& e : drop) e = Edge::make(e.u, e.v);
        std::sort(drop.begin(), drop.end());
        std::vector<Edge> kept;
        for (const Edge& e : edges())
            if (!std::binary_search(drop.begin(), drop.end(), e)) kept.push_back(e);
        return from_edge_list(num_vertices(), kept);
    }

    Graph with_edges(std::span<const Edge> added) const {
        auto all = edges();
        all.insert(all.end(), added.begin(), added.end());
        return from_edge_list(num_vertices(), all);
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.m_ == b.m_ && a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
};

/// Relabelling between a host graph and one of its induced subgraphs.
struct SubgraphMap {
    std::vector<Vertex> to_new; // host id -> sub id, -1 when not selected
    std::vector<Vertex> to_old; // sub id -> host id

    Vertex forward(Vertex old_id) const { return to_new.at(static_cast<std::size_t>(old_id)); }
    Vertex inverse(Vertex new_id) const { return to_old.at(static_cast<std::size_t>(new_id)); }
    bool selected(Vertex old_id) const { return forward(old_id) >= 0; }
};

struct InducedSubgraph {
    Graph graph;
    SubgraphMap map;
};

/// Subgraph spanned by `selection`, relabelled densely in increasing host-id order.
inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& selection) {
    const std::size_t n = g.num_vertices();
    if (selection.universe() != n)
        throw Error(ErrorKind::VertexOutOfRange, "vertex set universe does not match graph order");
    SubgraphMap map;
    map.to_new.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        if (selection.contains(static_cast<Vertex>(v))) {
            map.to_new[v] = static_cast<Vertex>(map.to_old.size());
            map.to_old.push_back(static_cast<Vertex>(v));
        }
    }
    std::vector<Edge> edges;
    for (Vertex old_u : map.to_old)
        for (Vertex old_v : g.neighbors(old_u))
            if (old_u < old_v && map.to_new[static_cast<std::size_t>(old_v)] >= 0)
                edges.push_back({map.to_new[static_cast<std::size_t>(old_u)],
                                 map.to_new[static_cast<std::size_t>(old_v)]});
    return {Graph::from_edge_list(map.to_old.size(), edges), std::move(map)};
}

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> members) {
    return induced_subgraph(g, VertexSet::of(g.num_vertices(), members));
}

/// Components in order of their smallest vertex; members sorted.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> parts;
    std::vector<Vertex> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> part;
        seen[s] = 1;
        stack.push_back(static_cast<Vertex>(s));
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            part.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    return parts;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

inline bool is_tree(const Graph& g) {
    return g.num_vertices() >= 1 && g.num_edges() + 1 == g.num_vertices() && is_connected(g);
}

/// Result of replacing every edge (u,v) by a path u - w_uv - v. Subdivision vertices
/// are numbered n, n+1, ... following the lexicographic order of the original edges.
struct Subdivision {
    Graph graph;
    std::size_t original_vertices = 0;
    std::vector<Edge> edge_of; // index w - n -> original edge

    bool is_subdivision_vertex(Vertex w) const {
        return w >= static_cast<Vertex>(original_vertices) && w < static_cast<Vertex>(graph.num_vertices());
    }
    Edge edge_for(Vertex w) const {
        if (!is_subdivision_vertex(w)) throw Error(ErrorKind::VertexOutOfRange, "not a subdivision vertex");
        return edge_of[static_cast<std::size_t>(w) - original_vertices];
    }
    Vertex vertex_for(Edge e) const {
        e = Edge::make(e.u, e.v);
        auto it = std::lower_bound(edge_of.begin(), edge_of.end(), e);
        if (it == edge_of.end() || *it != e) throw Error(ErrorKind::InvalidInput, "edge not in original graph");
        return static_cast<Vertex>(original_vertices + static_cast<std::size_t>(it - edge_of.begin()));
    }
};

inline Subdivision subdivide_all_edges(const Graph& g) {
    Subdivision out;
    out.original_vertices = g.num_vertices();
    out.edge_of = g.edges();
    std::vector<Edge> edges;
    edges.reserve(2 * out.edge_of.size());
    Vertex w = static_cast<Vertex>(g.num_vertices());
    for (const Edge& e : out.edge_of) {
        edges.push_back({e.u, w});
        edges.push_back({e.v, w});
        ++w;
    }
    out.graph = Graph::from_edge_list(g.num_vertices() + out.edge_of.size(), edges);
    return out;
}

struct Degeneracy {
    std::size_t value = 0;
    std::vector<Vertex> order; // removal order
};

/// Smallest-last peeling; among minimum-degree vertices the lowest id goes first.
inline Degeneracy degeneracy(const Graph& g) {
    const std::size_t n = g.num_vertices();
    Degeneracy out;
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = g.degree(static_cast<Vertex>(v));
        queue.emplace(deg[v], static_cast<Vertex>(v));
    }
    std::vector<char> removed(n, 0);
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        out.value = std::max(out.value, d);
        removed[static_cast<std::size_t>(v)] = 1;
        out.order.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            auto wi = static_cast<std::size_t>(w);
            if (removed[wi]) continue;
            queue.erase({deg[wi], w});
            queue.emplace(--deg[wi], w);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" header, then m lines "u v" (0-based, u < v).
// Blank lines and '#' comments are ignored.

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline Graph read_edge_list(std::istream& in) {
    std::string line;
    long long n = -1, m = -1;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        long long a = 0, b = 0;
        if (!(ss >> a)) continue;
        if (!(ss >> b))
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected two integers");
        std::string rest;
        if (ss >> rest) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": trailing tokens");
        if (n < 0) {
            if (a < 0 || b < 0) throw Error(ErrorKind::ParseError, "negative header values");
            n = a;
            m = b;
            continue;
        }
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw Error(ErrorKind::VertexOutOfRange, "line " + std::to_string(line_no));
        edges.push_back(Edge::make(static_cast<Vertex>(a), static_cast<Vertex>(b)));
    }
    if (n < 0) throw Error(ErrorKind::ParseError, "missing 'n m' header");
    if (static_cast<long long>(edges.size()) != m)
        throw Error(ErrorKind::ParseError,
                    "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph::from_edge_list(static_cast<std::size_t>(n), edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

/// One vertex id per line; blank lines and comments ignored.
inline std::vector<Vertex> read_vertex_list(std::istream& in, std::size_t n) {
    std::vector<Vertex> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        long long v = 0;
        while (ss >> v) {
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw Error(ErrorKind::VertexOutOfRange, "line " + std::to_string(line_no));
            out.push_back(static_cast<Vertex>(v));
        }
        if (!ss.eof()) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": not an integer");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace contagion

#endif
