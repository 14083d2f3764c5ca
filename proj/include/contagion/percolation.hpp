#ifndef CONTAGION_PERCOLATION_HPP
#define CONTAGION_PERCOLATION_HPP

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contagion/error.hpp"
#include "contagion/graph.hpp"

namespace contagion {

/// Per-vertex activation threshold. Immunized vertices are marked explicitly and
/// never activate, whatever their neighbourhood looks like.
class ThresholdMap {
public:
    ThresholdMap() = default;
    ThresholdMap(std::size_t n, std::uint32_t uniform) : values_(n, uniform) {}

    static ThresholdMap uniform(std::size_t n, std::uint32_t r) { return ThresholdMap(n, r); }

    std::size_t size() const noexcept { return values_.size(); }

    bool immunized(Vertex v) const { return values_.at(static_cast<std::size_t>(v)) == kImmune; }

    /// Threshold of a non-immunized vertex.
    std::uint32_t value(Vertex v) const {
        auto t = values_.at(static_cast<std::size_t>(v));
        if (t == kImmune) throw Error(ErrorKind::IllegalState, "threshold of immunized vertex requested");
        return t;
    }

    std::optional<std::uint32_t> get(Vertex v) const {
        auto t = values_.at(static_cast<std::size_t>(v));
        if (t == kImmune) return std::nullopt;
        return t;
    }

    void set(Vertex v, std::uint32_t t) {
        if (t == kImmune) throw Error(ErrorKind::InvalidInput, "threshold value too large");
        values_.at(static_cast<std::size_t>(v)) = t;
    }
    void immunize(Vertex v) { values_.at(static_cast<std::size_t>(v)) = kImmune; }

    /// Largest finite threshold (0 when every vertex is immunized or the map is empty).
    std::uint32_t max_finite() const noexcept {
        std::uint32_t r = 0;
        for (auto t : values_)
            if (t != kImmune) r = std::max(r, t);
        return r;
    }

    friend bool operator==(const ThresholdMap&, const ThresholdMap&) = default;

private:
    static constexpr std::uint32_t kImmune = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> values_;
};

struct PercolationTrace {
    std::vector<std::vector<Vertex>> rounds; // rounds[0] = seeds, rounds[i] = newly infected at step i
    VertexSet closure;

    std::size_t spread() const { return closure.size() - (rounds.empty() ? 0 : rounds.front().size()); }
};

namespace detail {

inline void require_compatible(const Graph& g, const ThresholdMap& t) {
    if (t.size() != g.num_vertices())
        throw Error(ErrorKind::InvalidInput, "threshold map size does not match graph order");
}

} // namespace detail

/// Synchronous bootstrap percolation: at each step every inactive, non-immunized
/// vertex with at least t(v) active neighbours becomes active.
inline PercolationTrace percolate(const Graph& g, const ThresholdMap& t, const VertexSet& seeds) {
    detail::require_compatible(g, t);
    const std::size_t n = g.num_vertices();
    if (seeds.universe() != n) throw Error(ErrorKind::VertexOutOfRange, "seed set universe mismatch");

    PercolationTrace trace;
    trace.closure = VertexSet(n);
    std::vector<std::uint32_t> hits(n, 0);
    std::vector<Vertex> frontier = seeds.members();
    for (Vertex v : frontier) {
        if (t.immunized(v)) throw Error(ErrorKind::SeedImmunized, "vertex " + std::to_string(v));
        trace.closure.insert(v);
    }
    trace.rounds.push_back(frontier);

    // Threshold-0 vertices need no active neighbour, so they are candidates from the start.
    std::vector<Vertex> candidates;
    std::vector<char> queued(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        auto vv = static_cast<Vertex>(v);
        if (!trace.closure.contains(vv) && !t.immunized(vv) && t.value(vv) == 0) {
            candidates.push_back(vv);
            queued[v] = 1;
        }
    }
    for (Vertex u : frontier)
        for (Vertex w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            ++hits[wi];
            if (!queued[wi] && !trace.closure.contains(w) && !t.immunized(w)) {
                candidates.push_back(w);
                queued[wi] = 1;
            }
        }

    while (!candidates.empty()) {
        std::vector<Vertex> fresh;
        for (Vertex v : candidates) {
            queued[static_cast<std::size_t>(v)] = 0;
            if (hits[static_cast<std::size_t>(v)] >= t.value(v)) fresh.push_back(v);
        }
        candidates.clear();
        if (fresh.empty()) break;
        std::sort(fresh.begin(), fresh.end());
        for (Vertex v : fresh) trace.closure.insert(v);
        for (Vertex u : fresh)
            for (Vertex w : g.neighbors(u)) {
                auto wi = static_cast<std::size_t>(w);
                ++hits[wi];
                if (!queued[wi] && !trace.closure.contains(w) && !t.immunized(w)) {
                    candidates.push_back(w);
                    queued[wi] = 1;
                }
            }
        trace.rounds.push_back(std::move(fresh));
    }
    return trace;
}

inline PercolationTrace percolate(const Graph& g, std::uint32_t r, const VertexSet& seeds) {
    return percolate(g, ThresholdMap::uniform(g.num_vertices(), r), seeds);
}

inline VertexSet closure(const Graph& g, const ThresholdMap& t, const VertexSet& seeds) {
    return percolate(g, t, seeds).closure;
}

/// |<seeds>| - |seeds|.
inline std::size_t spread(const Graph& g, const ThresholdMap& t, const VertexSet& seeds) {
    return percolate(g, t, seeds).closure.size() - seeds.size();
}

/// True iff no vertex outside `s` with a finite threshold has at least t(v) neighbours in `s`.
inline bool is_closed(const Graph& g, const ThresholdMap& t, const VertexSet& s) {
    detail::require_compatible(g, t);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        auto vv = static_cast<Vertex>(v);
        if (s.contains(vv) || t.immunized(vv)) continue;
        std::uint32_t inside = 0;
        for (Vertex w : g.neighbors(vv))
            if (s.contains(w)) ++inside;
        if (inside >= t.value(vv)) return false;
    }
    return true;
}

/// Smallest seed set whose closure under uniform threshold r is all of V. Exhaustive,
/// so it refuses graphs with more than `size_limit` vertices.
inline std::size_t min_contagious_set_bruteforce(const Graph& g, std::uint32_t r, std::size_t size_limit = 16) {
    const std::size_t n = g.num_vertices();
    if (n > size_limit || n > 30)
        throw Error(ErrorKind::TooLarge, "n=" + std::to_string(n) + " exceeds limit " + std::to_string(size_limit));
    if (n == 0) return 0;
    std::vector<std::uint32_t> nbr(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(static_cast<Vertex>(v))) nbr[v] |= 1u << w;
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
    auto spans = [&](std::uint32_t active) {
        while (true) {
            std::uint32_t next = active;
            for (std::size_t v = 0; v < n; ++v) {
                if (active >> v & 1u) continue;
                if (static_cast<std::uint32_t>(__builtin_popcount(nbr[v] & active)) >= r) next |= 1u << v;
            }
            if (next == active) return active == all;
            active = next;
        }
    };
    for (std::size_t size = 0; size <= n; ++size) {
        // Gosper's hack over all masks of the current size.
        if (size == 0) {
            if (spans(0)) return 0;
            continue;
        }
        std::uint32_t mask = (1u << size) - 1u;
        while (mask <= all) {
            if (spans(mask)) return size;
            std::uint32_t c = mask & -mask;
            std::uint32_t rr = mask + c;
            if (rr == 0) break;
            mask = (((rr ^ mask) >> 2) / c) | rr;
        }
    }
    return n;
}

/// Threshold file: lines "v t" where t is a non-negative integer or "inf". Vertices not
/// mentioned keep `default_r`.
inline ThresholdMap read_threshold_file(std::istream& in, std::size_t n, std::uint32_t default_r) {
    ThresholdMap t(n, default_r);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        long long v = 0;
        std::string value;
        if (!(ss >> v)) {
            std::string junk;
            std::istringstream again(strip_comment(line));
            if (again >> junk) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no));
            continue;
        }
        if (!(ss >> value)) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing threshold");
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw Error(ErrorKind::VertexOutOfRange, "line " + std::to_string(line_no));
        if (value == "inf") {
            t.immunize(static_cast<Vertex>(v));
            continue;
        }
        std::size_t used = 0;
        unsigned long parsed = 0;
        try {
            parsed = std::stoul(value, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad threshold '" + value + "'");
        }
        if (used != value.size() || value.front() == '-')
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad threshold '" + value + "'");
        t.set(static_cast<Vertex>(v), static_cast<std::uint32_t>(parsed));
    }
    return t;
}

} // namespace contagion

#endif
