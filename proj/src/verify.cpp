#include "dynmis/verify.hpp"

#include <set>
#include <sstream>

namespace dynmis {

namespace {

std::string vstr(Vertex v)
{
    return std::to_string(v);
}

std::string estr(Vertex u, Vertex v)
{
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

} // namespace

void AuditReport::render(std::ostream& os) const
{
    for (const auto& v : violations)
        os << v.invariant << "\t" << v.witness << "\t" << v.detail << "\n";
}

AuditReport check_mis(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges,
    const std::vector<Vertex>& mis)
{
    AuditReport rep;
    std::vector<bool> in(n, false);
    for (Vertex v : mis) {
        if (v >= n) {
            rep.add("membership", vstr(v), "vertex id out of range");
            continue;
        }
        in[v] = true;
    }
    std::vector<bool> covered = in;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            rep.add("edge_range", estr(u, v), "endpoint out of range");
            continue;
        }
        if (in[u] && in[v])
            rep.add("independence", estr(u, v), "edge joins two MIS members");
        if (in[u])
            covered[v] = true;
        if (in[v])
            covered[u] = true;
    }
    for (Vertex v = 0; v < n; ++v)
        if (!covered[v])
            rep.add("maximality", vstr(v), "vertex has no neighbor in the MIS");
    return rep;
}

AuditReport check_mis(const MisEngine& e)
{
    std::vector<std::pair<Vertex, Vertex>> edges = e.graph().oriented_edges();
    return check_mis(e.params().n, edges, e.mis());
}

bool brute_force_maximality_oracle(Vertex n,
    const std::vector<std::pair<Vertex, Vertex>>& edges,
    const std::vector<Vertex>& mis)
{
    return check_mis(n, edges, mis).ok();
}

AuditReport check_invariants(const MisEngine& e)
{
    AuditReport rep;
    const Params& p = e.params();
    const OrientedGraph& g = e.graph();
    const Vertex n = p.n;

    // MIS validity against the real graph
    {
        AuditReport mis_rep = check_mis(e);
        for (auto& v : mis_rep.violations)
            rep.violations.push_back(v);
    }

    // out-degree cap
    for (Vertex v = 0; v < n; ++v)
        if (g.out_degree(v) > g.out_cap())
            rep.add("out_degree_cap", vstr(v),
                "out-degree " + std::to_string(g.out_degree(v)) + " exceeds "
                    + std::to_string(g.out_cap()));

    // resolved status from first principles
    std::vector<bool> is_resolved(n, false);
    for (Vertex v = 0; v < n; ++v) {
        if (e.is_in_mis(v)) {
            is_resolved[v] = true;
            continue;
        }
        for (Vertex u : g.in_set(v))
            if (e.is_in_mis(u)) {
                is_resolved[v] = true;
                break;
            }
    }

    // locate every vertex's entry in every out-neighbor's partition
    for (Vertex v = 0; v < n; ++v) {
        // m_minus mirror
        {
            std::set<Vertex> expect;
            for (Vertex u : g.in_set(v))
                if (e.is_in_mis(u))
                    expect.insert(u);
            if (expect != e.m_minus(v))
                rep.add("m_minus_sync", vstr(v),
                    "stored MIS in-neighbor set diverges from the orientation");
        }

        // engine's out-view mirrors the orientation
        {
            const auto& view = e.out_view(v);
            std::vector<Vertex> truth(g.out_set(v).begin(), g.out_set(v).end());
            if (view != truth)
                rep.add("out_view_sync", vstr(v),
                    "engine out-neighborhood view diverges from the orientation");
        }

        // partition covers the in-neighborhood exactly once
        {
            std::set<Vertex> seen;
            std::size_t total = 0;
            auto take = [&](const std::set<Vertex>& s, const char* name) {
                for (Vertex x : s) {
                    ++total;
                    if (!seen.insert(x).second)
                        rep.add("partition_cover", vstr(v),
                            "in-neighbor " + vstr(x) + " appears twice ("
                                + name + ")");
                    if (!g.in_set(v).count(x))
                        rep.add("partition_cover", vstr(v),
                            "entry " + vstr(x) + " in " + name
                                + " is not an in-neighbor");
                }
            };
            take(e.z_set(v), "z");
            take(e.r_set(v), "r");
            for (std::uint32_t i = 1; i <= p.b; ++i) {
                take(e.a_bucket(v, i), "a");
                take(e.p_bucket(v, i), "p");
            }
            if (total != g.in_degree(v))
                rep.add("partition_cover", vstr(v),
                    "partition holds " + std::to_string(total) + " entries, "
                        + std::to_string(g.in_degree(v)) + " in-neighbors");
        }

        // empty active set for non-members
        if (!e.is_in_mis(v) && e.active_size(v) != 0)
            rep.add("empty_active", vstr(v),
                "non-member owns a nonempty active set");

        // bucket fill: prefix of full buckets, residuals only when full
        {
            bool saw_nonfull = false;
            std::size_t atot = 0;
            for (std::uint32_t i = 1; i <= p.b; ++i) {
                std::size_t sz = e.a_bucket(v, i).size();
                atot += sz;
                if (sz > p.s)
                    rep.add("bucket_fill", vstr(v),
                        "bucket " + std::to_string(i) + " over capacity");
                if (saw_nonfull && sz > 0)
                    rep.add("bucket_fill", vstr(v),
                        "bucket " + std::to_string(i)
                            + " occupied above a non-full bucket");
                if (sz < p.s)
                    saw_nonfull = true;
            }
            if (atot != e.active_size(v))
                rep.add("owner_sync", vstr(v), "active-set size counter mismatch");
            // the residual clause binds MIS members; a non-member's active
            // set is forcibly empty while vertices it cannot host may still
            // be residual everywhere
            if (e.is_in_mis(v) && atot < std::size_t{p.s} * p.b
                && !e.r_set(v).empty())
                rep.add("bucket_fill", vstr(v),
                    "residual set nonempty while the active set is not full");
        }
    }

    // per-vertex placement, resolved filing and hosting consistency
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::pair<Vertex, std::uint32_t>> hosts; // (host, bucket)
        for (Vertex u : g.out_set(v))
            for (std::uint32_t i = 1; i <= p.b; ++i)
                if (e.a_bucket(u, i).count(v))
                    hosts.emplace_back(u, i);

        if (is_resolved[v]) {
            for (Vertex u : g.out_set(v))
                if (!e.z_set(u).count(v))
                    rep.add("resolved_in_z", vstr(v),
                        "resolved vertex missing from z of " + vstr(u));
            if (!hosts.empty())
                rep.add("consistency", vstr(v),
                    "resolved vertex sits in an active set");
            continue;
        }

        if (hosts.size() > 1)
            rep.add("consistency", vstr(v), "hosted in more than one active set");
        auto ow = e.owner(v);
        if (hosts.size() == 1) {
            auto [h, i] = hosts[0];
            if (!ow || *ow != h || !e.bucket_of(v) || *e.bucket_of(v) != i)
                rep.add("owner_sync", vstr(v),
                    "owner/bucket back-pointers disagree with the active sets");
            for (Vertex w : g.out_set(v)) {
                if (w == h)
                    continue;
                if (!e.p_bucket(w, i).count(v))
                    rep.add("consistency", vstr(v),
                        "hosted vertex missing from p(" + std::to_string(i)
                            + ") of " + vstr(w));
            }
            // placement depth: buckets below the hosting bucket are full at
            // every MIS out-neighbor
            if (i > 1) {
                for (Vertex w : g.out_set(v)) {
                    if (!e.is_in_mis(w))
                        continue;
                    if (e.a_bucket(w, i - 1).size() != p.s)
                        rep.add("bucket_depth", vstr(v),
                            "hosted at bucket " + std::to_string(i) + " but "
                                + vstr(w) + " has a non-full bucket "
                                + std::to_string(i - 1));
                }
            }
        } else {
            if (ow)
                rep.add("owner_sync", vstr(v),
                    "owner back-pointer set but no active set holds the vertex");
            for (Vertex w : g.out_set(v))
                if (!e.r_set(w).count(v))
                    rep.add("consistency", vstr(v),
                        "unhosted vertex missing from r of " + vstr(w));
        }
    }
    return rep;
}

} // namespace dynmis
