#pragma once

// Builders that steer the engine into deep states (full active sets,
// residual overflow, multi-epoch plans) through its public update API.

#include "dynmis/engine.hpp"
#include "dynmis/verify.hpp"

#include <doctest.h>

#include <set>
#include <sstream>
#include <vector>

namespace dynmis::testing {

inline void require_sound(const MisEngine& e)
{
    AuditReport rep = check_invariants(e);
    if (!rep.ok()) {
        std::ostringstream os;
        rep.render(os);
        FAIL("invariant audit failed:\n" << os.str());
    }
}

/// Turns `x` into an unresolved non-member with out-edges to `targets`,
/// using a reusable auxiliary MIS vertex:
///   1. aux-x edge knocks x out of the MIS (x stays resolved via aux),
///   2. x gains its out-edges while resolved,
///   3. deleting the aux edge leaves x unresolved, so the engine hosts it
///      in the smallest candidate active set or files it residual.
/// Requires x fresh (still in the MIS, no edges) and at least one target
/// in the MIS, else x would simply rejoin.
inline void make_unresolved_member(MisEngine& e, Vertex aux, Vertex x,
    const std::vector<Vertex>& targets)
{
    REQUIRE(e.is_in_mis(aux));
    REQUIRE(e.is_in_mis(x));
    e.insert_edge(aux, x);
    for (Vertex t : targets)
        e.insert_edge(x, t);
    e.delete_edge(aux, x);
    REQUIRE(!e.is_in_mis(x));
}

/// Fills host's active set with `count` fresh single-edge in-neighbors
/// drawn from `next_id` upward; returns the first unused id.
inline Vertex fill_active(MisEngine& e, Vertex aux, Vertex host, Vertex next_id,
    std::size_t count)
{
    for (std::size_t i = 0; i < count; ++i, ++next_id)
        make_unresolved_member(e, aux, next_id, {host});
    return next_id;
}

} // namespace dynmis::testing
