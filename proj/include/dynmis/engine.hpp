#pragma once

#include "dynmis/common.hpp"
#include "dynmis/oriented_graph.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace dynmis {

/// Structure parameters, fixed for the engine's lifetime.
struct Params {
    Vertex n;              // vertex count
    std::uint32_t alpha;   // arboricity bound, >= 1
    std::uint32_t s;       // bucket capacity, 8 * alpha
    std::uint32_t b;       // bucket count, ceil(log2 n) + 1

    Params(Vertex n_, std::uint32_t alpha_) : n(n_), alpha(alpha_)
    {
        if (n == 0)
            throw std::invalid_argument("vertex count must be positive");
        if (alpha == 0)
            throw std::invalid_argument("arboricity bound must be positive");
        s = 8 * alpha;
        b = ceil_log2(n) + 1;
    }

    std::uint32_t out_cap() const { return 4 * alpha; }
    std::uint32_t active_capacity() const { return s * b; }
};

/// Transient state of the two candidate sets grown by a chain reaction:
/// vertices we intend to add to the MIS and vertices we intend to remove.
struct SwapPlan {
    std::set<Vertex> add_cand;      // tentative additions (unresolved vertices)
    std::set<Vertex> remove_cand;   // tentative removals (current MIS members)
    std::set<Vertex> processed;     // remove_cand members already drained
    std::set<Vertex> unprocessed_full; // unprocessed members with full active set
    std::deque<Vertex> queue;
    std::uint32_t epochs = 1;       // batches enqueued so far + 1
};

struct TraceEvent {
    enum Kind : std::uint8_t {
        UpdateStart,
        MisAdd,
        MisRemove,
        StagePour,     // a = vertex drained, b = vertices poured
        StageBatch,    // a = epoch index, b = batch size
        StageDone,     // a = |add_cand|, b = |remove_cand|
        EdgeAttach,    // new edge a -> b integrated
        FlipRepair,    // edge now oriented a -> b
        UpdateDone
    };
    Kind kind;
    Vertex a;
    Vertex b;
};

/// Monotone operation counters, the measurable proxy for update cost.
/// elem_ops counts every partition-set mutation, every out-neighborhood
/// element scanned, and every reorientation repair.
struct Counters {
    std::uint64_t elem_ops = 0;
    std::uint64_t additions = 0;
    std::uint64_t removals = 0;
    std::uint64_t sum_add_cand = 0;    // sum of |add_cand| over insertions
    std::uint64_t sum_remove_cand = 0; // sum of |remove_cand| over insertions
    std::uint32_t max_epoch = 0;
};

/// Per-insertion sizes of the last swap plan, for accounting checks.
struct StageStats {
    std::size_t add_cand = 0;
    std::size_t remove_cand = 0;
    std::size_t processed = 0;
    std::uint32_t epochs = 0;
    bool ran = false; // false when the update took a trivial path
};

/**
 * Maintains a maximal independent set of a dynamic graph under edge
 * insertions and deletions, in amortized time polylogarithmic in n for
 * bounded-arboricity update streams.
 *
 * Every vertex partitions its in-neighborhood into four sets: resolved
 * vertices (z), a bucketed active set it owns exclusively (a, nonempty
 * only for MIS members), passive vertices hosted in someone else's
 * active set (p, bucketed by host bucket), and residual vertices hosted
 * nowhere (r). Updates run in four phases: adjust the MIS, repair the
 * partition for those membership changes, reorient edges, then repair
 * the partition for the reorientations.
 *
 * Single-writer: all mutating calls must be serialized by the caller.
 */
class MisEngine {
public:
    enum class Placement : std::uint8_t { Z, Hosted, Residual };

    explicit MisEngine(Params params);
    MisEngine(Vertex n, std::uint32_t alpha) : MisEngine(Params(n, alpha)) {}

    ChangeLog apply_update(const EdgeOp& op);
    ChangeLog insert_edge(Vertex u, Vertex v)
    {
        return apply_update({EdgeOp::Insert, u, v});
    }
    ChangeLog delete_edge(Vertex u, Vertex v)
    {
        return apply_update({EdgeOp::Delete, u, v});
    }

    // queries
    bool is_in_mis(Vertex v) const { return st_[at(v)].in_mis; }
    std::vector<Vertex> mis() const;
    std::size_t mis_size() const { return mis_size_; }
    const Params& params() const { return params_; }
    const OrientedGraph& graph() const { return graph_; }
    const Counters& counters() const { return counters_; }
    const StageStats& last_stage_stats() const { return stage_stats_; }

    /// Turns the internal growth-factor, full-bucket and epoch checks into
    /// hard errors (StrictModeError) instead of degrading gracefully when
    /// the stream exceeds the arboricity bound. A strict failure aborts an
    /// update midway; treat the engine as unusable afterwards.
    void set_strict(bool on) { strict_ = on; }
    bool strict() const { return strict_; }

    void set_trace(std::function<void(const TraceEvent&)> hook)
    {
        trace_ = std::move(hook);
    }

    // per-vertex state, read-only (used by the auditor and tests)
    const std::set<Vertex>& m_minus(Vertex v) const { return st_[at(v)].m_minus; }
    const std::set<Vertex>& z_set(Vertex v) const { return st_[at(v)].z; }
    const std::set<Vertex>& r_set(Vertex v) const { return st_[at(v)].r; }
    const std::set<Vertex>& a_bucket(Vertex v, std::uint32_t i) const;
    const std::set<Vertex>& p_bucket(Vertex v, std::uint32_t i) const;
    std::size_t active_size(Vertex v) const { return st_[at(v)].a_total; }
    std::optional<Vertex> owner(Vertex v) const
    {
        if (st_[at(v)].owner == kNoVertex)
            return std::nullopt;
        return st_[v].owner;
    }
    std::optional<std::uint32_t> bucket_of(Vertex v) const
    {
        if (st_[at(v)].owner == kNoVertex)
            return std::nullopt;
        return st_[v].bucket;
    }
    Placement placement(Vertex v) const { return st_[at(v)].kind; }
    const std::vector<Vertex>& out_view(Vertex v) const { return outs_[at(v)]; }

    // ------------------------------------------------------------------
    // Update internals. Exposed so tests can drive single steps against
    // crafted states; apply_update composes them. Preconditions are the
    // caller's responsibility.
    // ------------------------------------------------------------------

    /// Phase-1 decision for a deletion whose edge is already detached.
    /// Roles are normalized internally (the MIS endpoint, if any, is "u").
    ChangeLog handle_delete(Vertex u, Vertex v);

    /// Phase-1 chain reaction + commit for an insertion with both
    /// endpoints in the MIS.
    ChangeLog handle_insert(Vertex u, Vertex v);

    /// Grows the swap plan from v (whose active set must be full) until the
    /// candidate-addition set is large enough relative to the removals.
    void build_swap_plan(Vertex v, SwapPlan& plan);

    /// Drains w's topmost full bucket (plus residuals when full) into the
    /// plan and recruits the MIS out-neighbors of everything poured.
    void process_candidate(Vertex w, SwapPlan& plan);

    /// Applies a built plan: greedy MIS over the induced candidate graph,
    /// conflict removals, removal of v if needed, then rescue additions.
    ChangeLog commit_swap_plan(Vertex u, Vertex v, SwapPlan& plan);

    /// Places x (unresolved, hosted nowhere, no stale passive/residual
    /// entries) into bucket i of host's active set; i must be the lowest
    /// non-full bucket.
    void add_to_active_set(Vertex x, Vertex host, std::uint32_t i);

    /// Removes x from its host's active set and refills the hole from the
    /// residual set or higher buckets (replacement chain). Does not touch
    /// x's passive entries; callers re-place x afterwards.
    void remove_from_active_set(Vertex x);

    /// Hosts x with the MIS out-neighbor owning the smallest active set,
    /// or files it as residual everywhere when all candidates are full.
    void assign_unresolved(Vertex x);

    /// Phase-2 repair after v left the MIS.
    void repair_after_removal(Vertex v);

    /// Phase-2 repair after v joined the MIS, including the repopulation
    /// of its active set.
    void repair_after_addition(Vertex v);

    /// Phase-4 repair for one edge now oriented u -> v. `flipped` is false
    /// for the newly inserted edge.
    void handle_flip(Vertex u, Vertex v, bool flipped);

    // test-only seam for planting partition faults
    friend struct EngineTestAccess;

private:
    struct VertexState {
        bool in_mis = true;
        std::set<Vertex> m_minus;
        std::set<Vertex> z;
        std::set<Vertex> r;
        std::vector<std::set<Vertex>> a; // 1-based, lazily sized b+1
        std::vector<std::set<Vertex>> p; // 1-based, lazily sized b+1
        std::size_t a_total = 0;
        Vertex owner = kNoVertex;
        std::uint32_t bucket = 0;
        Placement kind = Placement::Z;
    };

    Vertex at(Vertex v) const
    {
        if (v >= params_.n)
            throw std::invalid_argument("vertex id out of range");
        return v;
    }

    bool resolved(Vertex v) const
    {
        return st_[v].in_mis || !st_[v].m_minus.empty();
    }
    bool hosted(Vertex v) const { return st_[v].owner != kNoVertex; }
    bool active_full(Vertex v) const
    {
        return st_[v].a_total == params_.active_capacity();
    }
    void ensure_buckets(VertexState& s)
    {
        if (s.a.empty()) {
            s.a.resize(params_.b + 1);
            s.p.resize(params_.b + 1);
        }
    }
    std::uint32_t lowest_nonfull_bucket(Vertex v) const;
    std::vector<Vertex> active_members(Vertex v) const;

    void bump(std::uint64_t c = 1) { counters_.elem_ops += c; }
    void emit(TraceEvent::Kind k, Vertex a = 0, Vertex b = 0)
    {
        if (trace_)
            trace_({k, a, b});
    }
    void strict_fail(const char* what) const;

    // phase-1 primitives: flags, m_minus mirrors and the log only
    void mis_add(Vertex x, ChangeLog& log);
    void mis_remove(Vertex x, ChangeLog& log);
    bool has_mis_out(Vertex x);
    bool pending_edge_blocks(Vertex x) const;

    // partition primitives
    void erase_passive_entries(Vertex x, std::uint32_t i, Vertex except);
    void erase_residual_entries(Vertex x);
    void make_resolved(Vertex x);   // clears any placement, files x in z-sets
    void make_unresolved(Vertex x); // clears z entries, then assign_unresolved
    void detach_in_entry(Vertex tail, Vertex head); // edge tail->head removed
    void replay(const ChangeLog& log);
    void populate_active(Vertex v);

    std::vector<Vertex> greedy_induced_mis_ids(const std::set<Vertex>& verts);

    Params params_;
    OrientedGraph graph_;
    std::vector<VertexState> st_;
    std::vector<std::vector<Vertex>> outs_; // engine view of out-neighborhoods
    std::size_t mis_size_;
    bool strict_ = false;
    std::optional<std::pair<Vertex, Vertex>> pending_edge_;
    Counters counters_;
    StageStats stage_stats_;
    std::function<void(const TraceEvent&)> trace_;
    std::set<Vertex> empty_set_;
};

/// Greedy peeling MIS over an explicit small graph: repeatedly take the
/// vertex of minimum (degree, id) and delete its closed neighborhood.
/// For inputs of arboricity at most alpha the result has size at least
/// ceil(n' / (2 * alpha)).
std::vector<Vertex> greedy_induced_mis(const std::vector<Vertex>& vertices,
    const std::vector<std::pair<Vertex, Vertex>>& induced_edges);

} // namespace dynmis
