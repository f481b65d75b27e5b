#include "dynmis/replay.hpp"
#include "dynmis/streams.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAudit = 2;
constexpr int kExitIo = 3;

void print_stats(const dynmis::StatsRecord& st)
{
    double u = st.updates ? static_cast<double>(st.updates) : 1.0;
    std::cout << "updates            " << st.updates << "\n"
              << "mis additions      " << st.additions << "\n"
              << "mis removals       " << st.removals << "\n"
              << "sum |S+|           " << st.sum_add_cand << "\n"
              << "sum |S-|           " << st.sum_remove_cand << "\n"
              << "orientation flips  " << st.flips << "\n"
              << "elementary ops     " << st.elem_ops << "\n"
              << "wall time (ns)     " << st.wall_ns << "\n"
              << "final |MIS|        " << st.final_mis << "\n"
              << std::fixed << std::setprecision(3)
              << "amortized ops      " << st.elem_ops / u << "\n"
              << "amortized ns       " << st.wall_ns / u << "\n";
}

int do_run(const std::string& stream_path, std::uint32_t alpha,
    std::size_t audit_every, const std::string& csv_path, bool strict,
    bool zero_timing)
{
    dynmis::UpdateStream s;
    try {
        s = dynmis::parse_file(stream_path);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    }

    std::ofstream csv;
    dynmis::RunOptions opt;
    opt.alpha = alpha;
    opt.audit_every = audit_every;
    opt.strict = strict;
    opt.zero_timing = zero_timing;
    if (!csv_path.empty()) {
        csv.open(csv_path, std::ios::binary);
        if (!csv) {
            std::cerr << "error: cannot write " << csv_path << "\n";
            return kExitIo;
        }
        opt.csv = &csv;
    }

    try {
        dynmis::RunResult res = dynmis::run_stream(s, opt);
        if (res.audit_failed) {
            std::cerr << "audit failed after update " << res.failed_at << ":\n";
            res.report.render(std::cerr);
            return kExitAudit;
        }
        print_stats(res.stats);
        return kExitOk;
    } catch (const dynmis::StrictModeError& ex) {
        std::cerr << "strict-mode violation: " << ex.what() << "\n";
        return kExitAudit;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"maximal independent set maintenance on bounded-arboricity "
                 "dynamic graphs"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an update stream");
    std::string gen_kind = "forest";
    std::uint64_t gen_n = 100;
    std::uint32_t gen_alpha = 1;
    std::size_t gen_updates = 10000;
    double gen_churn = 0.3;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "forest | pref")
        ->check(CLI::IsMember({"forest", "pref"}));
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--alpha,-a", gen_alpha,
        "forest count (forest) or attachments per vertex (pref)");
    gen->add_option("--updates,-u", gen_updates, "operation count (forest)");
    gen->add_option("--churn", gen_churn, "deletion probability (forest)");
    gen->add_option("--seed,-s", gen_seed, "rng seed");
    gen->add_option("--out,-o", gen_out, "output file (default stdout)");

    // run ------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "replay a stream and report stats");
    std::string run_stream_path;
    std::uint32_t run_alpha = 0;
    std::size_t run_audit = 0;
    std::string run_csv;
    bool run_strict = false;
    bool run_zero_timing = false;
    run->add_option("--stream", run_stream_path, "stream file")->required();
    run->add_option("--alpha", run_alpha, "override the stream's alpha hint");
    run->add_option("--audit-every", run_audit,
        "audit invariants and MIS validity every K updates");
    run->add_option("--csv", run_csv, "write per-window counters to FILE");
    run->add_flag("--strict", run_strict, "enable strict algorithm checks");
    run->add_flag("--zero-timing", run_zero_timing,
        "report wall_ns as 0 for byte-reproducible output");

    // check ----------------------------------------------------------------
    auto* check = app.add_subcommand("check",
        "replay a stream auditing after every update");
    std::string check_stream_path;
    std::uint32_t check_alpha = 0;
    bool check_strict = false;
    check->add_option("--stream", check_stream_path, "stream file")->required();
    check->add_option("--alpha", check_alpha, "override the stream's alpha hint");
    check->add_flag("--strict", check_strict, "enable strict algorithm checks");

    // bench ----------------------------------------------------------------
    auto* bench = app.add_subcommand("bench",
        "generated-stream benchmark across sizes");
    std::uint32_t bench_alpha = 1;
    std::vector<std::uint64_t> bench_sizes{1000, 10000, 100000};
    double bench_updates_factor = 2.0;
    double bench_churn = 0.3;
    std::uint64_t bench_seed = 1;
    bench->add_option("--alpha", bench_alpha, "arboricity bound / forest count");
    bench->add_option("--sizes", bench_sizes, "vertex counts to run");
    bench->add_option("--updates-factor", bench_updates_factor,
        "updates per run = factor * n");
    bench->add_option("--churn", bench_churn, "deletion probability");
    bench->add_option("--seed", bench_seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            dynmis::UpdateStream s;
            if (gen_kind == "forest")
                s = dynmis::gen_forest_union(static_cast<dynmis::Vertex>(gen_n),
                    gen_alpha, gen_updates, gen_churn, gen_seed);
            else
                s = dynmis::gen_preferential(static_cast<dynmis::Vertex>(gen_n),
                    gen_alpha, gen_seed);
            std::uint32_t density = dynmis::density_hint(s);
            if (density > s.alpha_hint)
                std::cerr << "warning: density bound " << density
                          << " exceeds alpha hint " << s.alpha_hint << "\n";
            if (gen_out.empty()) {
                dynmis::serialize(s, std::cout);
            } else {
                dynmis::write_file(s, gen_out);
                std::cerr << "wrote " << s.ops.size() << " ops to " << gen_out
                          << " (density hint " << density << ")\n";
            }
            return kExitOk;
        }
        if (*run)
            return do_run(run_stream_path, run_alpha, run_audit, run_csv,
                run_strict, run_zero_timing);
        if (*check)
            return do_run(check_stream_path, check_alpha, 1, "", check_strict,
                false);
        if (*bench) {
            std::cout << std::left << std::setw(10) << "n" << std::setw(10)
                      << "updates" << std::setw(12) << "ns/op" << std::setw(12)
                      << "ops/op" << std::setw(10) << "add/U" << std::setw(10)
                      << "rem/U" << std::setw(12) << "sumS+/(aU)" << "\n";
            for (std::uint64_t n : bench_sizes) {
                std::size_t updates = static_cast<std::size_t>(
                    bench_updates_factor * static_cast<double>(n));
                dynmis::UpdateStream s = dynmis::gen_forest_union(
                    static_cast<dynmis::Vertex>(n), bench_alpha, updates,
                    bench_churn, bench_seed);
                dynmis::RunOptions opt;
                dynmis::RunResult res = dynmis::run_stream(s, opt);
                const auto& st = res.stats;
                double u = st.updates ? static_cast<double>(st.updates) : 1.0;
                std::cout << std::left << std::setw(10) << n << std::setw(10)
                          << st.updates << std::setw(12) << std::fixed
                          << std::setprecision(1) << st.wall_ns / u
                          << std::setw(12) << std::setprecision(1)
                          << st.elem_ops / u << std::setw(10)
                          << std::setprecision(4) << st.additions / u
                          << std::setw(10) << st.removals / u << std::setw(12)
                          << st.sum_add_cand / (bench_alpha * u) << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
