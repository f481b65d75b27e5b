#pragma once

#include "dynmis/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dynmis {

/// A replayable edge-update sequence with its declared arboricity bound.
/// Every insert targets an absent edge and every delete a present one.
struct UpdateStream {
    Vertex n = 0;
    std::uint32_t alpha_hint = 1;
    std::vector<EdgeOp> ops;
};

/// Churn stream over k edge-disjoint forests (arboricity stays <= k).
/// Each op deletes a random present edge with probability `churn`, else
/// inserts an edge that keeps every forest acyclic; when no insertion is
/// feasible a deletion is emitted instead. Deterministic under `seed`.
UpdateStream gen_forest_union(Vertex n, std::uint32_t k, std::size_t updates,
    double churn, std::uint64_t seed);

/// Insertion-only preferential-attachment stream: vertices activate in id
/// order and attach to `m_per_vertex` distinct predecessors sampled by
/// degree. The result is m-degenerate, so alpha_hint = m_per_vertex.
UpdateStream gen_preferential(Vertex n, std::uint32_t m_per_vertex,
    std::uint64_t seed);

/// Cheap density sanity bound: ceil(max running |E| / (n - 1)).
std::uint32_t density_hint(const UpdateStream& s);

/// Text format, bit-exact:
///   line 1:  "n=<int> alpha=<int>"
///   op line: "+ <u> <v>" or "- <u> <v>"
/// 0-based ids, single spaces, newline-terminated.
std::string serialize(const UpdateStream& s);
void serialize(const UpdateStream& s, std::ostream& os);

/// Rejects malformed input with the offending line number in the message.
UpdateStream parse(const std::string& text);
UpdateStream parse_file(const std::string& path);
void write_file(const UpdateStream& s, const std::string& path);

} // namespace dynmis
