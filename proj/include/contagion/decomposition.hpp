#ifndef CONTAGION_DECOMPOSITION_HPP
#define CONTAGION_DECOMPOSITION_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "contagion/error.hpp"
#include "contagion/graph.hpp"
#include "contagion/random_models.hpp"

namespace contagion {

struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;                  // each sorted, duplicate-free
    std::vector<std::pair<std::size_t, std::size_t>> edges; // tree over bag indices

    /// Largest bag size minus one (-1 when every bag is empty).
    int width() const {
        std::size_t widest = 0;
        for (const auto& b : bags) widest = std::max(widest, b.size());
        return static_cast<int>(widest) - 1;
    }
};

struct ValidationReport {
    enum class Problem { None, Structure, Coverage, Edge, Connectivity };

    Problem problem = Problem::None;
    Vertex u = -1; // witness vertex (Coverage, Connectivity) or first edge endpoint
    Vertex v = -1; // second edge endpoint (Edge)
    std::string message;

    bool ok() const noexcept { return problem == Problem::None; }
};

namespace detail {

inline bool is_tree_over(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (nodes == 0 || edges.size() + 1 != nodes) return false;
    std::vector<std::size_t> parent(nodes);
    for (std::size_t i = 0; i < nodes; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges) {
        if (a >= nodes || b >= nodes) return false;
        auto ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[ra] = rb;
    }
    return true;
}

} // namespace detail

/// Checks the three tree-decomposition properties (vertex coverage, edge coverage,
/// connected occurrence) plus the tree shape; reports the first violation with a witness.
inline ValidationReport validate(const Graph& g, const TreeDecomposition& td) {
    ValidationReport report;
    const std::size_t n = g.num_vertices();
    const std::size_t nodes = td.bags.size();
    auto fail = [&](ValidationReport::Problem p, Vertex a, Vertex b, std::string msg) {
        report.problem = p;
        report.u = a;
        report.v = b;
        report.message = std::move(msg);
        return report;
    };
    if (!detail::is_tree_over(nodes, td.edges))
        return fail(ValidationReport::Problem::Structure, -1, -1, "bags are not connected as a tree");

    std::vector<std::vector<std::size_t>> occurs(n);
    for (std::size_t i = 0; i < nodes; ++i) {
        const auto& bag = td.bags[i];
        for (std::size_t j = 0; j < bag.size(); ++j) {
            Vertex v = bag[j];
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                return fail(ValidationReport::Problem::Structure, v, -1, "bag " + std::to_string(i) + " holds unknown vertex");
            if (j > 0 && bag[j - 1] >= v)
                return fail(ValidationReport::Problem::Structure, v, -1, "bag " + std::to_string(i) + " not sorted/unique");
            occurs[static_cast<std::size_t>(v)].push_back(i);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (occurs[v].empty())
            return fail(ValidationReport::Problem::Coverage, static_cast<Vertex>(v), -1,
                        "vertex " + std::to_string(v) + " in no bag");
    for (const Edge& e : g.edges()) {
        const auto& a = occurs[static_cast<std::size_t>(e.u)];
        const auto& b = occurs[static_cast<std::size_t>(e.v)];
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.empty())
            return fail(ValidationReport::Problem::Edge, e.u, e.v,
                        "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") in no bag");
    }
    // In a tree, the nodes holding v are connected iff they span |nodes| - 1 tree edges.
    std::vector<std::size_t> spanned(n, 0);
    for (auto [a, b] : td.edges) {
        const auto& x = td.bags[a];
        const auto& y = td.bags[b];
        std::vector<Vertex> common;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
        for (Vertex v : common) ++spanned[static_cast<std::size_t>(v)];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (spanned[v] + 1 != occurs[v].size())
            return fail(ValidationReport::Problem::Connectivity, static_cast<Vertex>(v), -1,
                        "bags containing vertex " + std::to_string(v) + " are disconnected");
    return report;
}

// ---------------------------------------------------------------------------
// Elimination orderings

/// Decomposition induced by eliminating vertices in `order`: bag(v) = {v} plus the
/// neighbours of v in the filled graph that are eliminated later; bag(v) hangs below the
/// bag of the earliest such neighbour. Forest roots are chained into one tree.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
    const std::size_t n = g.num_vertices();
    if (order.size() != n) throw Error(ErrorKind::InvalidInput, "elimination order must list every vertex once");
    TreeDecomposition td;
    if (n == 0) {
        td.bags.emplace_back();
        return td;
    }
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::size_t>(order[i]);
        if (v >= n || pos[v] != n) throw Error(ErrorKind::InvalidInput, "elimination order is not a permutation");
        pos[v] = i;
    }
    std::vector<std::set<Vertex>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        adj[v].insert(nb.begin(), nb.end());
    }
    td.bags.resize(n);
    std::size_t previous_root = n;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = order[i];
        auto& nb = adj[static_cast<std::size_t>(v)];
        std::vector<Vertex> later(nb.begin(), nb.end());
        for (Vertex a : later) {
            auto& na = adj[static_cast<std::size_t>(a)];
            na.erase(v);
            for (Vertex b : later)
                if (b != a) na.insert(b);
        }
        auto& bag = td.bags[i];
        bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        if (later.empty()) {
            if (previous_root != n) td.edges.emplace_back(previous_root, i);
            previous_root = i;
        } else {
            std::size_t parent = n;
            for (Vertex a : later) parent = std::min(parent, pos[static_cast<std::size_t>(a)]);
            td.edges.emplace_back(i, parent);
        }
        nb.clear();
    }
    return td;
}

enum class EliminationStrategy { MinDegree, MinFill };

inline std::vector<Vertex> elimination_order(const Graph& g, EliminationStrategy strategy) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        adj[v].insert(nb.begin(), nb.end());
    }
    auto score = [&](Vertex v) -> std::size_t {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        if (strategy == EliminationStrategy::MinDegree) return nb.size();
        std::size_t missing = 0;
        for (auto a = nb.begin(); a != nb.end(); ++a)
            for (auto b = std::next(a); b != nb.end(); ++b)
                if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++missing;
        return missing;
    };
    std::vector<std::size_t> key(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        key[v] = score(static_cast<Vertex>(v));
        queue.emplace(key[v], static_cast<Vertex>(v));
    }
    std::vector<char> gone(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);
    while (!queue.empty()) {
        Vertex v = queue.begin()->second;
        queue.erase(queue.begin());
        gone[static_cast<std::size_t>(v)] = 1;
        order.push_back(v);
        std::vector<Vertex> nb(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
        for (Vertex a : nb) {
            auto& na = adj[static_cast<std::size_t>(a)];
            na.erase(v);
            for (Vertex b : nb)
                if (b != a) na.insert(b);
        }
        adj[static_cast<std::size_t>(v)].clear();
        // Scores can only change within distance two of the eliminated vertex.
        std::set<Vertex> touched(nb.begin(), nb.end());
        if (strategy == EliminationStrategy::MinFill)
            for (Vertex a : nb)
                for (Vertex b : adj[static_cast<std::size_t>(a)]) touched.insert(b);
        for (Vertex x : touched) {
            auto xi = static_cast<std::size_t>(x);
            if (gone[xi]) continue;
            auto fresh = score(x);
            if (fresh != key[xi]) {
                queue.erase({key[xi], x});
                key[xi] = fresh;
                queue.emplace(fresh, x);
            }
        }
    }
    return order;
}

inline TreeDecomposition heuristic_decomposition(const Graph& g,
                                                 EliminationStrategy strategy = EliminationStrategy::MinFill) {
    return decomposition_from_order(g, elimination_order(g, strategy));
}

struct ExactTreewidth {
    int treewidth = -1;
    TreeDecomposition decomposition;
};

/// Exact treewidth by dynamic programming over vertex subsets:
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) are the vertices
/// outside S + v reachable from v through S. Exponential; refuses n > hard_limit.
inline ExactTreewidth exact_treewidth_small(const Graph& g, std::size_t hard_limit = 12) {
    const std::size_t n = g.num_vertices();
    if (n > hard_limit || n > 24)
        throw Error(ErrorKind::TooLarge, "exact treewidth limited to " + std::to_string(hard_limit) + " vertices");
    ExactTreewidth out;
    if (n == 0) {
        out.decomposition.bags.emplace_back();
        return out;
    }
    using Mask = std::uint32_t;
    std::vector<Mask> nbr(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(static_cast<Vertex>(v))) nbr[v] |= Mask{1} << w;
    auto neighbourhood = [&](Mask set) {
        Mask out_mask = 0;
        while (set) {
            int b = __builtin_ctz(set);
            out_mask |= nbr[static_cast<std::size_t>(b)];
            set &= set - 1;
        }
        return out_mask;
    };
    auto q_size = [&](Mask s, std::size_t v) {
        Mask reach = nbr[v] & s;
        while (true) {
            Mask next = reach | (neighbourhood(reach) & s);
            if (next == reach) break;
            reach = next;
        }
        Mask q = (nbr[v] | neighbourhood(reach)) & ~s & ~(Mask{1} << v);
        return static_cast<int>(__builtin_popcount(q));
    };
    const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
    std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, std::numeric_limits<std::int8_t>::max());
    std::vector<std::int8_t> last(static_cast<std::size_t>(full) + 1, -1);
    tw[0] = -1;
    for (Mask s = 1; s <= full && s != 0; ++s) {
        int best = std::numeric_limits<int>::max();
        int pick = -1;
        Mask rest = s;
        while (rest) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            Mask without = s & ~(Mask{1} << v);
            int cand = std::max<int>(tw[without], q_size(without, static_cast<std::size_t>(v)));
            if (cand < best) {
                best = cand;
                pick = v;
            }
        }
        tw[s] = static_cast<std::int8_t>(best);
        last[s] = static_cast<std::int8_t>(pick);
        if (s == full) break;
    }
    std::vector<Vertex> order(n);
    Mask s = full;
    for (std::size_t i = n; i-- > 0;) {
        int v = last[s];
        order[i] = static_cast<Vertex>(v);
        s &= ~(Mask{1} << v);
    }
    out.treewidth = tw[full];
    out.decomposition = decomposition_from_order(g, order);
    return out;
}

/// Lower bound by minor-min-width: repeatedly contract a minimum-degree vertex into its
/// minimum-degree neighbour, recording the largest minimum degree seen.
inline int minor_min_width(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return -1;
    std::vector<std::set<Vertex>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        adj[v].insert(nb.begin(), nb.end());
    }
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (std::size_t v = 0; v < n; ++v) queue.emplace(adj[v].size(), static_cast<Vertex>(v));
    int lb = 0;
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        lb = std::max(lb, static_cast<int>(d));
        auto& nv = adj[static_cast<std::size_t>(v)];
        if (nv.empty()) continue;
        Vertex target = *nv.begin();
        for (Vertex w : nv)
            if (adj[static_cast<std::size_t>(w)].size() < adj[static_cast<std::size_t>(target)].size()) target = w;
        std::vector<Vertex> touched(nv.begin(), nv.end());
        for (Vertex w : touched) queue.erase({adj[static_cast<std::size_t>(w)].size(), w});
        for (Vertex w : touched) {
            adj[static_cast<std::size_t>(w)].erase(v);
            if (w != target) {
                adj[static_cast<std::size_t>(w)].insert(target);
                adj[static_cast<std::size_t>(target)].insert(w);
            }
        }
        for (Vertex w : touched) queue.emplace(adj[static_cast<std::size_t>(w)].size(), w);
        nv.clear();
    }
    return lb;
}

struct TreewidthEstimate {
    int value = -1;    // exact treewidth when `exact`, otherwise a heuristic upper bound
    int lower = -1;    // certified lower bound
    bool exact = false;
};

/// Treewidth of moderately sized sparse graphs: strips simplicial vertices and suppresses
/// degree-2 vertices (both preserve treewidth), then solves the kernel exactly when it has
/// at most `exact_limit` vertices per component, falling back to min-fill otherwise.
inline TreewidthEstimate treewidth_estimate(const Graph& g, std::size_t exact_limit = 16) {
    const std::size_t n = g.num_vertices();
    TreewidthEstimate est;
    if (n == 0) {
        est.exact = true;
        return est;
    }
    std::vector<std::set<Vertex>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        adj[v].insert(nb.begin(), nb.end());
    }
    std::vector<char> alive(n, 1);
    int low = 0;
    std::vector<Vertex> work;
    for (std::size_t v = n; v-- > 0;) work.push_back(static_cast<Vertex>(v));
    auto simplicial = [&](Vertex v) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        for (auto a = nb.begin(); a != nb.end(); ++a)
            for (auto b = std::next(a); b != nb.end(); ++b)
                if (!adj[static_cast<std::size_t>(*a)].count(*b)) return false;
        return true;
    };
    while (!work.empty()) {
        Vertex v = work.back();
        work.pop_back();
        auto vi = static_cast<std::size_t>(v);
        if (!alive[vi]) continue;
        auto& nb = adj[vi];
        if (nb.size() <= 1 || simplicial(v)) {
            low = std::max(low, static_cast<int>(nb.size()));
        } else if (nb.size() == 2) {
            Vertex a = *nb.begin(), b = *std::next(nb.begin());
            adj[static_cast<std::size_t>(a)].insert(b);
            adj[static_cast<std::size_t>(b)].insert(a);
        } else {
            continue;
        }
        for (Vertex w : nb) {
            adj[static_cast<std::size_t>(w)].erase(v);
            work.push_back(w);
        }
        nb.clear();
        alive[vi] = 0;
    }
    std::vector<Vertex> kernel;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) kernel.push_back(static_cast<Vertex>(v));
    std::vector<Vertex> index(n, -1);
    for (std::size_t i = 0; i < kernel.size(); ++i) index[static_cast<std::size_t>(kernel[i])] = static_cast<Vertex>(i);
    std::vector<Edge> kedges;
    for (Vertex v : kernel)
        for (Vertex w : adj[static_cast<std::size_t>(v)])
            if (v < w) kedges.push_back({index[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]});
    Graph k = Graph::from_edge_list(kernel.size(), kedges);

    est.exact = true;
    est.value = low;
    est.lower = low;
    for (const auto& part : connected_components(k)) {
        if (part.size() <= 1) continue;
        Graph piece = induced_subgraph(k, part).graph;
        if (piece.num_vertices() <= exact_limit) {
            int tw = exact_treewidth_small(piece, exact_limit).treewidth;
            est.value = std::max(est.value, tw);
            est.lower = std::max(est.lower, tw);
        } else {
            int ub = heuristic_decomposition(piece, EliminationStrategy::MinFill).width();
            int lb = std::max(minor_min_width(piece), static_cast<int>(degeneracy(piece).value));
            est.value = std::max(est.value, ub);
            est.lower = std::max(est.lower, lb);
            if (lb < ub) est.exact = false;
        }
    }
    if (!est.exact && est.lower >= est.value) est.exact = true;
    return est;
}

// ---------------------------------------------------------------------------
// Nice decompositions

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    Vertex vertex = -1;                // introduced / forgotten vertex
    std::vector<Vertex> bag;           // sorted
    std::vector<std::size_t> children; // 0, 1 or 2 entries
};

/// Rooted nice decomposition; nodes are stored children-first, the root is the last node.
struct NiceDecomposition {
    std::vector<NiceNode> nodes;

    std::size_t root() const { return nodes.size() - 1; }

    int width() const {
        std::size_t widest = 0;
        for (const auto& node : nodes) widest = std::max(widest, node.bag.size());
        return static_cast<int>(widest) - 1;
    }

    TreeDecomposition as_tree_decomposition() const {
        TreeDecomposition td;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            td.bags.push_back(nodes[i].bag);
            for (std::size_t c : nodes[i].children) td.edges.emplace_back(c, i);
        }
        return td;
    }
};

/// Checks the node-kind rules, empty root and leaves, and the underlying decomposition.
inline ValidationReport validate_nice(const Graph& g, const NiceDecomposition& nd) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.problem = ValidationReport::Problem::Structure;
        report.message = std::move(msg);
        return report;
    };
    if (nd.nodes.empty()) return fail("no nodes");
    if (!nd.nodes.back().bag.empty()) return fail("root bag not empty");
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
        const auto& node = nd.nodes[i];
        for (std::size_t c : node.children)
            if (c >= i) return fail("node " + std::to_string(i) + " precedes its child");
        auto with = [](std::vector<Vertex> bag, Vertex v) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            return bag;
        };
        switch (node.kind) {
        case NiceKind::Leaf:
            if (!node.children.empty() || !node.bag.empty()) return fail("leaf " + std::to_string(i) + " malformed");
            break;
        case NiceKind::Introduce: {
            if (node.children.size() != 1) return fail("introduce " + std::to_string(i) + " needs one child");
            const auto& child = nd.nodes[node.children[0]].bag;
            if (std::binary_search(child.begin(), child.end(), node.vertex) || with(child, node.vertex) != node.bag)
                return fail("introduce " + std::to_string(i) + " bag mismatch");
            break;
        }
        case NiceKind::Forget: {
            if (node.children.size() != 1) return fail("forget " + std::to_string(i) + " needs one child");
            const auto& child = nd.nodes[node.children[0]].bag;
            if (std::binary_search(node.bag.begin(), node.bag.end(), node.vertex) || with(node.bag, node.vertex) != child)
                return fail("forget " + std::to_string(i) + " bag mismatch");
            break;
        }
        case NiceKind::Join:
            if (node.children.size() != 2) return fail("join " + std::to_string(i) + " needs two children");
            if (nd.nodes[node.children[0]].bag != node.bag || nd.nodes[node.children[1]].bag != node.bag)
                return fail("join " + std::to_string(i) + " bag mismatch");
            break;
        }
    }
    // Every non-root node must be some node's child exactly once.
    std::vector<int> parents(nd.nodes.size(), 0);
    for (const auto& node : nd.nodes)
        for (std::size_t c : node.children) ++parents[c];
    for (std::size_t i = 0; i + 1 < nd.nodes.size(); ++i)
        if (parents[i] != 1) return fail("node " + std::to_string(i) + " is not attached exactly once");
    return validate(g, nd.as_tree_decomposition());
}

/// Converts a valid decomposition into nice form of the same width. Bag 0 is the root;
/// children are attached through forget-then-introduce chains (ascending vertex order) and
/// combined by binary joins; an empty root is reached by forgetting the root bag.
inline NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
    auto report = validate(g, td);
    if (!report.ok()) throw Error(ErrorKind::InvalidInput, "decomposition invalid: " + report.message);

    NiceDecomposition nd;
    const std::size_t count = td.bags.size();
    std::vector<std::vector<std::size_t>> tree(count);
    for (auto [a, b] : td.edges) {
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    for (auto& nb : tree) std::sort(nb.begin(), nb.end());
    std::vector<std::size_t> bfs{0}, parent(count, count);
    parent[0] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (std::size_t c : tree[bfs[i]])
            if (parent[c] == count) {
                parent[c] = bfs[i];
                bfs.push_back(c);
            }

    auto add = [&](NiceKind kind, Vertex v, std::vector<Vertex> bag, std::vector<std::size_t> children) {
        nd.nodes.push_back({kind, v, std::move(bag), std::move(children)});
        return nd.nodes.size() - 1;
    };
    // Walks from node `from` (bag `have`) to bag `want` by forgets then introduces.
    auto transition = [&](std::size_t from, std::vector<Vertex> have, const std::vector<Vertex>& want) {
        std::vector<Vertex> drop, gain;
        std::set_difference(have.begin(), have.end(), want.begin(), want.end(), std::back_inserter(drop));
        std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            have.erase(std::lower_bound(have.begin(), have.end(), v));
            from = add(NiceKind::Forget, v, have, {from});
        }
        for (Vertex v : gain) {
            have.insert(std::upper_bound(have.begin(), have.end(), v), v);
            from = add(NiceKind::Introduce, v, have, {from});
        }
        return from;
    };

    std::vector<std::size_t> top(count, 0);
    for (std::size_t idx = bfs.size(); idx-- > 0;) {
        std::size_t x = bfs[idx];
        std::vector<std::size_t> tops;
        for (std::size_t c : tree[x]) {
            if (c == parent[x] && x != 0) continue;
            tops.push_back(transition(top[c], td.bags[c], td.bags[x]));
        }
        if (tops.empty()) {
            std::size_t leaf = add(NiceKind::Leaf, -1, {}, {});
            tops.push_back(transition(leaf, {}, td.bags[x]));
        }
        std::size_t current = tops[0];
        for (std::size_t i = 1; i < tops.size(); ++i) current = add(NiceKind::Join, -1, td.bags[x], {current, tops[i]});
        top[x] = current;
    }
    transition(top[0], td.bags[0], {});
    return nd;
}

// ---------------------------------------------------------------------------
// Edge excess and local treewidth

struct ExcessBound {
    std::vector<std::size_t> per_component; // in connected_components order
    std::size_t overall = 0;
};

/// Treewidth bound from edge excess: a connected component with n_C vertices and m_C edges
/// has treewidth at most max(1, m_C - n_C + 2); a single vertex has treewidth 0.
inline ExcessBound excess_bound(const Graph& g) {
    ExcessBound out;
    for (const auto& part : connected_components(g)) {
        std::size_t edges = 0;
        for (Vertex v : part) edges += g.degree(v);
        edges /= 2;
        std::size_t bound = 0;
        if (part.size() > 1) bound = std::max<std::size_t>(1, edges + 2 - part.size());
        out.per_component.push_back(bound);
        out.overall = std::max(out.overall, bound);
    }
    return out;
}

/// Grows random connected vertex sets: uniform start inside a component with at least k
/// vertices, then repeatedly a uniformly chosen boundary vertex.
class ConnectedSubgraphSampler {
public:
    ConnectedSubgraphSampler(const Graph& g, std::size_t k) : g_(g), k_(k) {
        if (k == 0 || k > g.num_vertices())
            throw Error(ErrorKind::KOutOfRange, "k=" + std::to_string(k) + " with n=" + std::to_string(g.num_vertices()));
        for (const auto& part : connected_components(g))
            if (part.size() >= k) starts_.insert(starts_.end(), part.begin(), part.end());
        if (starts_.empty()) throw Error(ErrorKind::NoConnectedSubgraph, "no component has " + std::to_string(k) + " vertices");
        std::sort(starts_.begin(), starts_.end());
    }

    std::vector<Vertex> sample(Rng& rng) const {
        std::vector<Vertex> members{starts_[rng.below(starts_.size())]};
        std::unordered_map<Vertex, std::size_t> in_boundary;
        std::vector<Vertex> boundary;
        std::unordered_map<Vertex, char> chosen{{members[0], 1}};
        auto extend = [&](Vertex v) {
            for (Vertex w : g_.neighbors(v))
                if (!chosen.count(w) && !in_boundary.count(w)) {
                    in_boundary[w] = boundary.size();
                    boundary.push_back(w);
                }
        };
        extend(members[0]);
        while (members.size() < k_) {
            std::size_t i = rng.below(boundary.size());
            Vertex v = boundary[i];
            in_boundary.erase(v);
            if (i + 1 != boundary.size()) {
                boundary[i] = boundary.back();
                in_boundary[boundary[i]] = i;
            }
            boundary.pop_back();
            chosen[v] = 1;
            members.push_back(v);
            extend(v);
        }
        std::sort(members.begin(), members.end());
        return members;
    }

private:
    const Graph& g_;
    std::size_t k_;
    std::vector<Vertex> starts_;
};

struct LocalTreewidthEstimate {
    std::size_t k = 0;
    int lower = -1;               // max per-sample treewidth value
    std::size_t trials = 0;
    std::size_t upper_excess = 0; // max excess bound over samples
    bool certified = false;       // every per-sample value was exact
    std::vector<Vertex> witness;  // sample attaining `lower`
    std::vector<int> widths;      // per-sample values
};

/// Estimator for the largest treewidth of a k-vertex subgraph. Induced subgraphs suffice:
/// dropping edges never raises treewidth. Not a certified bound on the true maximum.
inline LocalTreewidthEstimate local_treewidth_sample(const Graph& g, std::size_t k, std::size_t trials, RngSeed seed) {
    ConnectedSubgraphSampler sampler(g, k);
    LocalTreewidthEstimate est;
    est.k = k;
    est.trials = trials;
    est.certified = true;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "localtw-sample", {t}));
        auto members = sampler.sample(rng);
        Graph sub = induced_subgraph(g, members).graph;
        auto tw = treewidth_estimate(sub);
        est.certified = est.certified && tw.exact;
        est.widths.push_back(tw.value);
        est.upper_excess = std::max(est.upper_excess, excess_bound(sub).overall);
        if (tw.value > est.lower) {
            est.lower = tw.value;
            est.witness = members;
        }
    }
    return est;
}

struct LocalTreewidth {
    int value = -1;
    std::vector<Vertex> witness;
};

/// t_k(G) by exhaustion over all k-subsets (n <= 12).
inline LocalTreewidth exact_local_treewidth_tiny(const Graph& g, std::size_t k) {
    const std::size_t n = g.num_vertices();
    if (n > 12) throw Error(ErrorKind::TooLarge, "exhaustive local treewidth limited to 12 vertices");
    if (k == 0 || k > n) throw Error(ErrorKind::KOutOfRange, "k=" + std::to_string(k));
    LocalTreewidth out;
    std::uint32_t mask = (1u << k) - 1u;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
        std::vector<Vertex> members;
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1u) members.push_back(static_cast<Vertex>(v));
        int tw = exact_treewidth_small(induced_subgraph(g, members).graph).treewidth;
        if (tw > out.value) {
            out.value = tw;
            out.witness = members;
            if (tw == static_cast<int>(k) - 1) break;
        }
        std::uint32_t c = mask & -mask;
        std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text serialisation: "bags b", then "i: v1 v2 ...", then "edges", then "i j" lines.

inline void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
    out << "bags " << td.bags.size() << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << i << ':';
        for (Vertex v : td.bags[i]) out << ' ' << v;
        out << '\n';
    }
    out << "edges\n";
    for (auto [a, b] : td.edges) out << a << ' ' << b << '\n';
}

inline TreeDecomposition read_decomposition(std::istream& in) {
    TreeDecomposition td;
    std::string word;
    std::size_t count = 0;
    if (!(in >> word >> count) || word != "bags") throw Error(ErrorKind::ParseError, "expected 'bags <count>'");
    std::string line;
    std::getline(in, line);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing bag line");
        auto colon = line.find(':');
        if (colon == std::string::npos || std::stoul(line.substr(0, colon)) != i)
            throw Error(ErrorKind::ParseError, "bad bag line '" + line + "'");
        std::istringstream ss(line.substr(colon + 1));
        std::vector<Vertex> bag;
        Vertex v = 0;
        while (ss >> v) bag.push_back(v);
        td.bags.push_back(std::move(bag));
    }
    if (!(in >> word) || word != "edges") throw Error(ErrorKind::ParseError, "expected 'edges'");
    std::size_t a = 0, b = 0;
    while (in >> a >> b) td.edges.emplace_back(a, b);
    return td;
}

} // namespace contagion

#endif
