#include "dynmis/oriented_graph.hpp"

#include <cassert>

namespace dynmis {

FlipLog OrientedGraph::insert_oriented(Vertex u, Vertex v)
{
    check(u);
    check(v);
    if (u == v)
        throw std::invalid_argument("self-loop rejected");
    if (has_edge(u, v))
        throw std::invalid_argument("edge exists");

    FlipLog log;
    log.inserted = std::make_pair(u, v);
    edges_.insert(key(u, v));
    out_[u].insert(v);
    in_[v].insert(u);

    // Rebalance: flip every out-edge of any vertex over the cap, lowest id
    // first. Converges whenever the graph admits an orientation with
    // out-degrees at most cap/2. Denser inputs would cascade forever, so a
    // budget backs off instead, leaving the survivors in over_cap_ to be
    // retried by later insertions.
    std::set<Vertex> over = over_cap_;
    over_cap_.clear();
    if (out_[u].size() > cap_)
        over.insert(u);
    const std::uint64_t budget = 4 * (static_cast<std::uint64_t>(m()) + n_) + 64;
    std::uint64_t flipped = 0;
    while (!over.empty()) {
        Vertex w = *over.begin();
        over.erase(over.begin());
        if (out_[w].size() <= cap_)
            continue;
        if (flipped > budget) {
            over_cap_.insert(w);
            continue;
        }
        std::vector<Vertex> targets(out_[w].begin(), out_[w].end());
        out_[w].clear();
        for (Vertex x : targets) {
            in_[x].erase(w);
            out_[x].insert(w);
            in_[w].insert(x);
            log.flips.emplace_back(w, x);
            ++total_flips_;
            ++flipped;
            if (out_[x].size() > cap_)
                over.insert(x);
        }
    }
    return log;
}

FlipLog OrientedGraph::delete_oriented(Vertex u, Vertex v)
{
    check(u);
    check(v);
    if (!has_edge(u, v))
        throw std::invalid_argument("edge absent");
    auto [a, b] = *orientation_of(u, v);
    out_[a].erase(b);
    in_[b].erase(a);
    edges_.erase(key(u, v));
    if (out_[a].size() <= cap_)
        over_cap_.erase(a);
    return FlipLog{};
}

std::vector<std::pair<Vertex, Vertex>> OrientedGraph::oriented_edges() const
{
    std::vector<std::pair<Vertex, Vertex>> es;
    es.reserve(m());
    for (Vertex v = 0; v < n_; ++v)
        for (Vertex w : out_[v])
            es.emplace_back(v, w);
    // per-vertex out-sets are ascending, so es is already sorted by (u, v)
    return es;
}

void OrientedGraph::dump(std::ostream& os) const
{
    for (auto [a, b] : oriented_edges())
        os << a << " -> " << b << "\n";
}

} // namespace dynmis
