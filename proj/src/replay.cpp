#include "dynmis/replay.hpp"

#include <chrono>
#include <ostream>

namespace dynmis {

const char* csv_header()
{
    return "window_start,window_end,additions,removals,sum_splus,sum_sminus,"
           "flips,elem_ops,wall_ns";
}

RunResult run_stream(const UpdateStream& s, const RunOptions& opt)
{
    using clock = std::chrono::steady_clock;
    RunResult res;
    std::uint32_t alpha = opt.alpha ? opt.alpha : s.alpha_hint;
    MisEngine engine(s.n, alpha);
    engine.set_strict(opt.strict);

    if (opt.csv)
        *opt.csv << csv_header() << "\n";

    const std::size_t window =
        opt.audit_every ? opt.audit_every : (s.ops.empty() ? 1 : s.ops.size());

    Counters before{};
    std::uint64_t flips_before = 0;
    std::size_t win_start = 1;
    std::uint64_t win_ns = 0;

    auto flush_window = [&](std::size_t win_end) {
        if (!opt.csv)
            return;
        const Counters& c = engine.counters();
        *opt.csv << win_start << ',' << win_end << ','
                 << (c.additions - before.additions) << ','
                 << (c.removals - before.removals) << ','
                 << (c.sum_add_cand - before.sum_add_cand) << ','
                 << (c.sum_remove_cand - before.sum_remove_cand) << ','
                 << (engine.graph().total_flips() - flips_before) << ','
                 << (c.elem_ops - before.elem_ops) << ','
                 << (opt.zero_timing ? 0 : win_ns) << "\n";
        before = c;
        flips_before = engine.graph().total_flips();
        win_start = win_end + 1;
        win_ns = 0;
    };

    std::size_t i = 0;
    std::uint64_t total_ns = 0;
    for (; i < s.ops.size(); ++i) {
        auto t0 = clock::now();
        engine.apply_update(s.ops[i]);
        auto dt = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0)
                .count());
        win_ns += dt;
        total_ns += dt;

        bool window_end = ((i + 1) % window == 0) || (i + 1 == s.ops.size());
        if (opt.audit_every && (i + 1) % opt.audit_every == 0) {
            AuditReport rep = check_invariants(engine);
            if (!rep.ok()) {
                res.audit_failed = true;
                res.failed_at = i + 1;
                res.report = std::move(rep);
                flush_window(i + 1);
                break;
            }
        }
        if (window_end)
            flush_window(i + 1);
    }
    // tail audit when the stream length is not a multiple of the period
    if (!res.audit_failed && opt.audit_every && s.ops.size() % opt.audit_every) {
        AuditReport rep = check_invariants(engine);
        if (!rep.ok()) {
            res.audit_failed = true;
            res.failed_at = s.ops.size();
            res.report = std::move(rep);
        }
    }

    const Counters& c = engine.counters();
    res.stats.updates = res.audit_failed ? res.failed_at : s.ops.size();
    res.stats.additions = c.additions;
    res.stats.removals = c.removals;
    res.stats.sum_add_cand = c.sum_add_cand;
    res.stats.sum_remove_cand = c.sum_remove_cand;
    res.stats.flips = engine.graph().total_flips();
    res.stats.elem_ops = c.elem_ops;
    res.stats.wall_ns = opt.zero_timing ? 0 : total_ns;
    res.stats.final_mis = engine.mis_size();
    res.final_mis = engine.mis();
    return res;
}

} // namespace dynmis
