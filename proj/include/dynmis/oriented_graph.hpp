#pragma once

#include "dynmis/common.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_set>
#include <vector>

namespace dynmis {

/// Reorientations performed by one graph update, in execution order.
/// Each (u, v) pair means: the edge previously oriented u->v now points v->u.
/// For an insertion, `inserted` carries the orientation given to the new edge
/// before any rebalancing.
struct FlipLog {
    std::vector<std::pair<Vertex, Vertex>> flips;
    std::optional<std::pair<Vertex, Vertex>> inserted;
};

/**
 * Dynamic undirected graph holding one orientation per edge, with every
 * out-degree capped at `out_cap`. New edges are oriented first-argument
 * outward; whenever a vertex exceeds the cap, all of its out-edges are
 * flipped to point into it, cascading until every vertex is within the
 * cap again. Deletions never flip. All tie-breaking is by ascending
 * vertex id, so identical call sequences produce identical orientations.
 */
class OrientedGraph {
public:
    OrientedGraph(Vertex n, std::uint32_t out_cap)
        : n_(n), cap_(out_cap), out_(n), in_(n)
    {
        if (n == 0)
            throw std::invalid_argument("vertex count must be positive");
        if (cap_ == 0)
            throw std::invalid_argument("out-degree cap must be positive");
    }

    FlipLog insert_oriented(Vertex u, Vertex v);
    FlipLog delete_oriented(Vertex u, Vertex v);

    Vertex n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    std::uint32_t out_cap() const { return cap_; }

    bool has_edge(Vertex u, Vertex v) const
    {
        return edges_.count(key(u, v)) != 0;
    }

    /// Current orientation of a present edge, as (tail, head).
    std::optional<std::pair<Vertex, Vertex>> orientation_of(Vertex u, Vertex v) const
    {
        if (!has_edge(u, v))
            return std::nullopt;
        if (out_[u].count(v))
            return std::make_pair(u, v);
        return std::make_pair(v, u);
    }

    const std::set<Vertex>& out_set(Vertex v) const { return check(v), out_[v]; }
    const std::set<Vertex>& in_set(Vertex v) const { return check(v), in_[v]; }

    std::vector<Vertex> out_neighbors(Vertex v) const
    {
        check(v);
        return {out_[v].begin(), out_[v].end()};
    }
    std::size_t out_degree(Vertex v) const { return check(v), out_[v].size(); }
    std::size_t in_degree(Vertex v) const { return check(v), in_[v].size(); }

    std::uint64_t total_flips() const { return total_flips_; }

    /// Vertices currently above the cap. Empty whenever the stream's true
    /// arboricity stays within half the cap; rebalancing cannot converge on
    /// denser graphs, so it backs off instead of spinning and retries on
    /// later insertions.
    const std::set<Vertex>& over_cap() const { return over_cap_; }

    /// All present edges as oriented (tail, head) pairs, ascending.
    std::vector<std::pair<Vertex, Vertex>> oriented_edges() const;

    /// One line per edge, "u -> v", ascending (u, v).
    void dump(std::ostream& os) const;

private:
    void check(Vertex v) const
    {
        if (v >= n_)
            throw std::invalid_argument("vertex id out of range");
    }
    std::uint64_t key(Vertex u, Vertex v) const
    {
        Vertex a = std::min(u, v), b = std::max(u, v);
        return (std::uint64_t{a} << 32) | b;
    }

    Vertex n_;
    std::uint32_t cap_;
    std::vector<std::set<Vertex>> out_;
    std::vector<std::set<Vertex>> in_;
    std::unordered_set<std::uint64_t> edges_;
    std::set<Vertex> over_cap_;
    std::uint64_t total_flips_ = 0;
};

} // namespace dynmis
