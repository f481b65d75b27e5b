#pragma once

#include "dynmis/common.hpp"
#include "dynmis/engine.hpp"
#include "dynmis/streams.hpp"
#include "dynmis/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dynmis {

/// Whole-run measurements for one replayed stream.
struct StatsRecord {
    std::uint64_t updates = 0;
    std::uint64_t additions = 0;      // total MIS additions
    std::uint64_t removals = 0;       // total MIS removals
    std::uint64_t sum_add_cand = 0;   // summed tentative-addition set sizes
    std::uint64_t sum_remove_cand = 0;
    std::uint64_t flips = 0;
    std::uint64_t elem_ops = 0;
    std::uint64_t wall_ns = 0;
    std::size_t final_mis = 0;
};

struct RunOptions {
    std::uint32_t alpha = 0;       // 0: take the stream's hint
    std::size_t audit_every = 0;   // 0: no audits
    bool strict = false;
    bool zero_timing = false;      // deterministic CSV output
    std::ostream* csv = nullptr;   // per-window rows when set
};

struct RunResult {
    StatsRecord stats;
    bool audit_failed = false;
    std::size_t failed_at = 0;     // 1-based update index of the failure
    AuditReport report;            // first failing report
    std::vector<Vertex> final_mis;
};

/// Replays a stream through a fresh engine. With audits enabled, runs the
/// full invariant check plus the MIS oracle every `audit_every` updates and
/// stops at the first violation. CSV windows coincide with the audit period
/// (one whole-run window when audits are off).
RunResult run_stream(const UpdateStream& s, const RunOptions& opt);

const char* csv_header(); // column names, no newline

} // namespace dynmis
