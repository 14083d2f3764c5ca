#ifndef CONTAGION_GIDM_HPP
#define CONTAGION_GIDM_HPP

// Generalized influence diffusion minimization: immunize at most `budget` vertices of A
// (threshold set to +inf) so that as few vertices of B as possible end up infected, where
// the infection starts from the threshold-0 vertices.
//
// The dynamic program runs over a nice tree decomposition. Each bag vertex carries a state
//   N  infected, S  safe (not infected, not immunized), M  immunized,
// and a safe vertex also carries the number of its infected neighbours that were already
// forgotten below the current node. A labelling is consistent when every safe vertex ends
// with fewer than t(v) infected neighbours, i.e. the infected set is closed. Any closed set
// containing the seeds contains their closure, and the closure itself is closed, so the
// minimum of |infected ∩ B| over consistent labellings is exactly the percolation outcome.
// Infected vertices therefore need no support bookkeeping.
//
// Bookkeeping: a B-vertex labelled N and an M label are charged at the vertex's Introduce
// node; Join nodes subtract the copies charged on both sides. An edge is examined once, at
// the Forget node of whichever endpoint is forgotten first.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "contagion/decomposition.hpp"
#include "contagion/error.hpp"
#include "contagion/graph.hpp"
#include "contagion/percolation.hpp"

namespace contagion {

struct GidmInstance {
    Graph graph;
    ThresholdMap thresholds; // seeds are the threshold-0 vertices
    VertexSet immunizable;   // A
    VertexSet counted;       // B
    std::size_t budget = 0;  // at most this many immunizations
};

struct GidmSolution {
    std::size_t infected = 0;      // |closure ∩ B| under the certificate
    std::vector<Vertex> immunized; // sorted certificate, size <= budget
};

namespace detail {

inline void check_instance(const GidmInstance& inst) {
    const std::size_t n = inst.graph.num_vertices();
    if (inst.thresholds.size() != n || inst.immunizable.universe() != n || inst.counted.universe() != n)
        throw Error(ErrorKind::InvalidInstance, "GIDM instance components disagree on vertex count");
}

/// Infected B-vertices after immunizing `immunized` (seeds: finite threshold 0).
inline std::size_t gidm_outcome(const GidmInstance& inst, const std::vector<Vertex>& immunized) {
    ThresholdMap t = inst.thresholds;
    for (Vertex v : immunized) t.immunize(v);
    const std::size_t n = inst.graph.num_vertices();
    VertexSet seeds(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto vv = static_cast<Vertex>(v);
        if (!t.immunized(vv) && t.value(vv) == 0) seeds.insert(vv);
    }
    VertexSet infected = closure(inst.graph, t, seeds);
    std::size_t count = 0;
    for (Vertex v : inst.counted.members())
        if (infected.contains(v)) ++count;
    return count;
}

} // namespace detail

/// Exhaustive oracle: every I ⊆ A with |I| <= budget. Ties go to the lexicographically
/// smallest sorted immunization set.
inline GidmSolution gidm_bruteforce(const GidmInstance& inst) {
    detail::check_instance(inst);
    auto pool = inst.immunizable.members();
    if (pool.size() > 20 || inst.budget > 6)
        throw Error(ErrorKind::TooLarge, "brute force limited to |A| <= 20 and budget <= 6");
    GidmSolution best;
    best.infected = detail::gidm_outcome(inst, {});
    const std::size_t max_size = std::min(inst.budget, pool.size());
    std::vector<Vertex> pick;
    std::vector<std::size_t> idx;
    for (std::size_t size = 1; size <= max_size; ++size) {
        idx.resize(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            pick.clear();
            for (auto i : idx) pick.push_back(pool[i]);
            auto value = detail::gidm_outcome(inst, pick);
            if (value < best.infected || (value == best.infected && pick < best.immunized)) {
                best.infected = value;
                best.immunized = pick;
            }
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return best;
}

/// Dynamic program over a nice decomposition. Tables are kept for every node;
/// optimal certificates can be read back top-down for any budget up to `budget_cap`.
class GidmSolver {
public:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    static constexpr std::size_t kMaxBag = 16;

    GidmSolver(const GidmInstance& inst, const NiceDecomposition& nd, std::size_t budget_cap)
        : inst_(inst), nd_(nd), cap_(budget_cap) {
        detail::check_instance(inst);
        auto report = validate_nice(inst.graph, nd);
        if (!report.ok()) throw Error(ErrorKind::InvalidDecomposition, report.message);
        if (nd.width() + 1 > static_cast<int>(kMaxBag))
            throw Error(ErrorKind::TooLarge, "bags larger than " + std::to_string(kMaxBag) + " are not supported");
        prepare_vertices();
        run();
    }

    std::size_t budget_cap() const noexcept { return cap_; }

    /// Minimum infected B-count with at most p immunizations.
    std::size_t optimum(std::size_t p) const {
        if (p > cap_) p = cap_;
        const auto& root = tables_[nd_.root()];
        auto it = root.find(Key{});
        if (it == root.end() || it->second[p] == kInf) throw Error(ErrorKind::IllegalState, "root cell is infinite");
        return it->second[p];
    }

    /// Optimum with a certificate, re-checked by forward percolation.
    GidmSolution solve(std::size_t p) const {
        if (p > cap_) p = cap_;
        GidmSolution sol;
        sol.infected = optimum(p);
        sol.immunized = extract(p, sol.infected);
        if (sol.immunized.size() > p) throw Error(ErrorKind::IllegalState, "certificate exceeds budget");
        if (detail::gidm_outcome(inst_, sol.immunized) != sol.infected)
            throw Error(ErrorKind::IllegalState, "certificate does not reproduce the optimum");
        return sol;
    }

    /// Number of (state, count) cells stored at each node.
    std::vector<std::size_t> table_sizes() const {
        std::vector<std::size_t> out;
        for (const auto& t : tables_) out.push_back(t.size());
        return out;
    }

private:
    enum Label : std::uint8_t { kInfected = 0, kSafe = 1, kImmune = 2 };

    using Key = std::array<std::uint8_t, kMaxBag>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = 1469598103934665603ULL;
            for (auto b : k) h = (h ^ b) * 1099511628211ULL;
            return static_cast<std::size_t>(h);
        }
    };
    using Values = std::vector<std::uint32_t>;
    using Table = std::unordered_map<Key, Values, KeyHash>;

    static std::uint8_t label(std::uint8_t cell) { return cell & 3u; }
    static std::uint8_t count(std::uint8_t cell) { return cell >> 2; }
    static std::uint8_t cell(std::uint8_t lab, std::uint8_t cnt) { return static_cast<std::uint8_t>(lab | (cnt << 2)); }

    static Key insert_at(Key k, std::size_t pos, std::size_t len, std::uint8_t c) {
        for (std::size_t i = len; i > pos; --i) k[i] = k[i - 1];
        k[pos] = c;
        return k;
    }
    static Key erase_at(Key k, std::size_t pos, std::size_t len) {
        for (std::size_t i = pos; i + 1 < len; ++i) k[i] = k[i + 1];
        k[len - 1] = 0;
        return k;
    }
    static std::size_t position(const std::vector<Vertex>& bag, Vertex v) {
        return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    void prepare_vertices() {
        const std::size_t n = inst_.graph.num_vertices();
        tracked_.assign(n, 0);
        limit_.assign(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            auto vv = static_cast<Vertex>(v);
            if (inst_.thresholds.immunized(vv)) continue;
            auto t = inst_.thresholds.value(vv);
            if (t == 0) continue; // never safe
            // A safe vertex tolerates t - 1 infected neighbours; if its degree is below t
            // the constraint can never bind.
            if (inst_.graph.degree(vv) >= t) {
                if (t - 1 > 63) throw Error(ErrorKind::TooLarge, "threshold too large for the DP state encoding");
                tracked_[v] = 1;
                limit_[v] = static_cast<std::uint8_t>(t - 1);
            }
        }
    }

    bool allows(Vertex u, std::uint8_t lab) const {
        const bool immune_input = inst_.thresholds.immunized(u);
        switch (lab) {
        case kInfected: return !immune_input;
        case kSafe: return immune_input || inst_.thresholds.value(u) > 0;
        default: return !immune_input && inst_.immunizable.contains(u);
        }
    }

    static void merge(Table& table, const Key& key, const Values& values) {
        auto [it, fresh] = table.try_emplace(key, values);
        if (!fresh)
            for (std::size_t p = 0; p < values.size(); ++p) it->second[p] = std::min(it->second[p], values[p]);
    }

    // Neighbour positions of `u` inside `bag` (u itself excluded).
    std::vector<std::size_t> neighbour_positions(Vertex u, const std::vector<Vertex>& bag) const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < bag.size(); ++q)
            if (bag[q] != u && inst_.graph.has_edge(u, bag[q])) out.push_back(q);
        return out;
    }

    // Forget transition for one child cell vector; returns false when the labelling breaks a
    // safe vertex's tolerance.
    bool forget_key(const NiceNode& node, const std::vector<Vertex>& child_bag, const std::vector<std::size_t>& nbpos,
                    Key key, Key& out) const {
        const Vertex u = node.vertex;
        const std::size_t pos = position(child_bag, u);
        const auto cu = key[pos];
        std::size_t infected_nbrs = 0;
        for (auto q : nbpos)
            if (label(key[q]) == kInfected) ++infected_nbrs;
        if (label(cu) == kSafe && tracked_[static_cast<std::size_t>(u)] &&
            count(cu) + infected_nbrs > limit_[static_cast<std::size_t>(u)])
            return false;
        if (label(cu) == kInfected) {
            for (auto q : nbpos) {
                auto w = static_cast<std::size_t>(child_bag[q]);
                if (label(key[q]) != kSafe || !tracked_[w]) continue;
                auto c = static_cast<std::uint8_t>(count(key[q]) + 1);
                if (c > limit_[w]) return false;
                key[q] = cell(kSafe, c);
            }
        }
        out = erase_at(key, pos, child_bag.size());
        return true;
    }

    static Key labels_only(const Key& k) {
        Key out{};
        for (std::size_t i = 0; i < kMaxBag; ++i) out[i] = label(k[i]);
        return out;
    }

    // Join combination of two child keys with identical labels; false on tolerance overflow.
    bool join_key(const std::vector<Vertex>& bag, const Key& a, const Key& b, Key& out) const {
        out = a;
        for (std::size_t q = 0; q < bag.size(); ++q) {
            if (label(a[q]) != kSafe) continue;
            auto w = static_cast<std::size_t>(bag[q]);
            if (!tracked_[w]) continue;
            auto c = count(a[q]) + count(b[q]);
            if (c > limit_[w]) return false;
            out[q] = cell(kSafe, static_cast<std::uint8_t>(c));
        }
        return true;
    }

    std::pair<std::size_t, std::size_t> join_charges(const std::vector<Vertex>& bag, const Key& k) const {
        std::size_t immune = 0, counted = 0;
        for (std::size_t q = 0; q < bag.size(); ++q) {
            if (label(k[q]) == kImmune) ++immune;
            if (label(k[q]) == kInfected && inst_.counted.contains(bag[q])) ++counted;
        }
        return {immune, counted};
    }

    void run() {
        tables_.resize(nd_.nodes.size());
        for (std::size_t i = 0; i < nd_.nodes.size(); ++i) {
            const auto& node = nd_.nodes[i];
            Table& out = tables_[i];
            switch (node.kind) {
            case NiceKind::Leaf: out.emplace(Key{}, Values(cap_ + 1, 0)); break;
            case NiceKind::Introduce: {
                const auto& child = tables_[node.children[0]];
                const std::size_t pos = position(node.bag, node.vertex);
                const std::size_t child_len = node.bag.size() - 1;
                const bool in_b = inst_.counted.contains(node.vertex);
                for (const auto& [ck, cv] : child) {
                    for (std::uint8_t lab : {kInfected, kSafe, kImmune}) {
                        if (!allows(node.vertex, lab)) continue;
                        Values v(cap_ + 1, kInf);
                        for (std::size_t p = 0; p <= cap_; ++p) {
                            std::uint32_t base = kInf;
                            if (lab == kImmune) {
                                if (p > 0) base = cv[p - 1];
                            } else {
                                base = cv[p];
                            }
                            if (base != kInf && lab == kInfected && in_b) ++base;
                            v[p] = base;
                        }
                        merge(out, insert_at(ck, pos, child_len, cell(lab, 0)), v);
                    }
                }
                break;
            }
            case NiceKind::Forget: {
                const auto& child_bag = nd_.nodes[node.children[0]].bag;
                const auto nbpos = neighbour_positions(node.vertex, child_bag);
                for (const auto& [ck, cv] : tables_[node.children[0]]) {
                    Key k;
                    if (forget_key(node, child_bag, nbpos, ck, k)) merge(out, k, cv);
                }
                break;
            }
            case NiceKind::Join: {
                const auto& left = tables_[node.children[0]];
                const auto& right = tables_[node.children[1]];
                std::unordered_map<Key, std::vector<const Table::value_type*>, KeyHash> by_labels;
                for (const auto& entry : right) by_labels[labels_only(entry.first)].push_back(&entry);
                for (const auto& [lk, lv] : left) {
                    auto group = by_labels.find(labels_only(lk));
                    if (group == by_labels.end()) continue;
                    auto [immune, counted] = join_charges(node.bag, lk);
                    for (const auto* entry : group->second) {
                        Key k;
                        if (!join_key(node.bag, lk, entry->first, k)) continue;
                        const auto& rv = entry->second;
                        Values v(cap_ + 1, kInf);
                        for (std::size_t p = immune; p <= cap_; ++p) {
                            for (std::size_t pl = immune; pl <= p; ++pl) {
                                std::size_t pr = p + immune - pl;
                                if (lv[pl] == kInf || rv[pr] == kInf) continue;
                                auto total = lv[pl] + rv[pr] - static_cast<std::uint32_t>(counted);
                                v[p] = std::min(v[p], total);
                            }
                        }
                        merge(out, k, v);
                    }
                }
                break;
            }
            }
        }
    }

    struct Frame {
        std::size_t node;
        Key key;
        std::size_t p;
        std::uint32_t value;
    };

    std::vector<Vertex> extract(std::size_t p, std::size_t value) const {
        std::vector<Vertex> immunized;
        std::vector<Frame> stack{{nd_.root(), Key{}, p, static_cast<std::uint32_t>(value)}};
        while (!stack.empty()) {
            Frame f = stack.back();
            stack.pop_back();
            const auto& node = nd_.nodes[f.node];
            switch (node.kind) {
            case NiceKind::Leaf:
                if (f.value != 0) throw Error(ErrorKind::IllegalState, "leaf reached with nonzero value");
                break;
            case NiceKind::Introduce: {
                const std::size_t pos = position(node.bag, node.vertex);
                const auto lab = label(f.key[pos]);
                Frame next{node.children[0], erase_at(f.key, pos, node.bag.size()), f.p, f.value};
                if (lab == kImmune) {
                    immunized.push_back(node.vertex);
                    --next.p;
                }
                if (lab == kInfected && inst_.counted.contains(node.vertex)) --next.value;
                const auto& child = tables_[next.node];
                auto it = child.find(next.key);
                if (it == child.end() || it->second[next.p] != next.value)
                    throw Error(ErrorKind::IllegalState, "introduce back-trace mismatch");
                stack.push_back(next);
                break;
            }
            case NiceKind::Forget: {
                const auto& child_bag = nd_.nodes[node.children[0]].bag;
                const auto nbpos = neighbour_positions(node.vertex, child_bag);
                const Key* found = nullptr;
                for (const auto& [ck, cv] : tables_[node.children[0]]) {
                    Key k;
                    if (cv[f.p] != f.value || !forget_key(node, child_bag, nbpos, ck, k) || k != f.key) continue;
                    if (!found || ck < *found) found = &ck;
                }
                if (!found) throw Error(ErrorKind::IllegalState, "forget back-trace mismatch");
                stack.push_back({node.children[0], *found, f.p, f.value});
                break;
            }
            case NiceKind::Join: {
                const auto& left = tables_[node.children[0]];
                const auto& right = tables_[node.children[1]];
                auto [immune, counted] = join_charges(node.bag, f.key);
                std::map<Key, const Values*> candidates(
                    [&] {
                        std::map<Key, const Values*> m;
                        for (const auto& [lk, lv] : left)
                            if (labels_only(lk) == labels_only(f.key)) m.emplace(lk, &lv);
                        return m;
                    }());
                bool done = false;
                for (const auto& [lk, lv] : candidates) {
                    Key rk = f.key;
                    bool ok = true;
                    for (std::size_t q = 0; q < node.bag.size() && ok; ++q) {
                        if (count(lk[q]) > count(f.key[q])) ok = false;
                        else rk[q] = cell(label(f.key[q]), static_cast<std::uint8_t>(count(f.key[q]) - count(lk[q])));
                    }
                    if (!ok) continue;
                    auto rit = right.find(rk);
                    if (rit == right.end()) continue;
                    Key check;
                    if (!join_key(node.bag, lk, rk, check) || check != f.key) continue;
                    for (std::size_t pl = immune; pl <= f.p && !done; ++pl) {
                        std::size_t pr = f.p + immune - pl;
                        if ((*lv)[pl] == kInf || rit->second[pr] == kInf) continue;
                        if ((*lv)[pl] + rit->second[pr] - counted != f.value) continue;
                        stack.push_back({node.children[0], lk, pl, (*lv)[pl]});
                        stack.push_back({node.children[1], rk, pr, rit->second[pr]});
                        done = true;
                    }
                    if (done) break;
                }
                if (!done) throw Error(ErrorKind::IllegalState, "join back-trace mismatch");
                break;
            }
            }
        }
        std::sort(immunized.begin(), immunized.end());
        immunized.erase(std::unique(immunized.begin(), immunized.end()), immunized.end());
        return immunized;
    }

    const GidmInstance& inst_;
    const NiceDecomposition& nd_;
    std::size_t cap_;
    std::vector<std::uint8_t> tracked_;
    std::vector<std::uint8_t> limit_;
    std::vector<Table> tables_;
};

/// Exact GIDM optimum for `inst.budget` on the given nice decomposition, with a verified
/// immunization certificate.
inline GidmSolution solve_gidm(const GidmInstance& inst, const NiceDecomposition& nd) {
    GidmSolver solver(inst, nd, inst.budget);
    return solver.solve(inst.budget);
}

/// Convenience overload: min-fill decomposition of the instance graph.
inline GidmSolution solve_gidm(const GidmInstance& inst) {
    auto nd = make_nice(inst.graph, heuristic_decomposition(inst.graph, EliminationStrategy::MinFill));
    return solve_gidm(inst, nd);
}

} // namespace contagion

#endif
