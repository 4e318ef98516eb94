// Implementations behind the CLI subcommands.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nbscma/config.hpp"
#include "nbscma/context.hpp"
#include "nbscma/mc_construct.hpp"
#include "nbscma/metrics.hpp"
#include "nbscma/simulate.hpp"

namespace nbscma {

namespace detail {

inline std::string resolve_codebook(const Config& cfg, const std::string& flag) {
    if (!flag.empty()) return flag;
    if (!cfg.codebook_path.empty()) return cfg.codebook_path;
    throw std::runtime_error(
        "codebook path required: pass --codebook or set the 'codebook' config key");
}

} // namespace detail

inline int cmd_construct(const std::string& config_path, const std::string& codebook_flag,
                         const std::string& out_path, std::uint64_t seed,
                         std::optional<std::uint64_t> trials, std::optional<double> ebn0,
                         std::optional<double> g_th) {
    Config cfg = load_config(config_path);
    const Codebook cb = load_codebook(detail::resolve_codebook(cfg, codebook_flag));
    if (trials) cfg.constr.trials = *trials;
    if (ebn0) cfg.constr.ebn0_db = *ebn0;
    if (g_th) cfg.constr.g_th = *g_th;
    cfg.constr.validate();
    const CodeConstruction c = monte_carlo_construct(cfg.sys, cb, cfg.constr, seed);
    save_construction(c, out_path);
    std::cerr << "construction: N'=" << c.n_sym << " D'=" << c.d_sym
              << " no-split fraction=" << c.beta() << " -> " << out_path << "\n";
    return 0;
}

inline int cmd_sweep(const std::string& config_path, const std::string& construction_path,
                     const std::string& codebook_flag, const std::vector<double>& ebn0_list,
                     std::uint64_t frames, std::uint64_t seed, int workers,
                     std::uint64_t target_errors, bool zero_noise,
                     const std::string& out_path) {
    Config cfg = load_config(config_path);
    const Codebook cb = load_codebook(detail::resolve_codebook(cfg, codebook_flag));
    const CodeConstruction constr = load_construction(construction_path);
    const LinkContext ctx(cfg.sys, cb, constr);

    std::ostringstream rows;
    rows << csv_header() << "\n";
    for (double ebn0 : ebn0_list) {
        SimOptions opt;
        opt.ebn0_db = ebn0;
        opt.frames = frames;
        opt.seed = seed;
        opt.workers = workers;
        opt.target_frame_errors = target_errors;
        opt.zero_noise = zero_noise;
        const PointResult pr = simulate_point(ctx, cfg.rx, opt);
        write_csv_row(rows, make_row(ctx, cfg.rx, pr));
    }
    if (out_path.empty()) {
        std::cout << rows.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << rows.str();
    }
    return 0;
}

inline int cmd_report(const std::string& in_path, const std::string& config_path,
                      const std::string& construction_path,
                      const std::string& codebook_flag) {
    std::ifstream f(in_path);
    if (!f) throw std::runtime_error("cannot open " + in_path);
    const std::vector<CsvRow> rows = parse_csv(f);

    std::printf("%8s %9s %12s %12s %9s %14s %9s\n", "ebn0_db", "frames", "ber", "fer",
                "avg_iters", "latency_cycles", "gain");
    for (const auto& r : rows)
        std::printf("%8.3f %9llu %12.4e %12.4e %9.3f %14.1f %8.2f%%\n", r.ebn0_db,
                    static_cast<unsigned long long>(r.frames), r.ber, r.fer, r.avg_iters,
                    r.latency_cycles, 100.0 * r.latency_gain);

    if (config_path.empty()) return 0;

    // complexity cross-check against the closed forms
    Config cfg = load_config(config_path);
    if (construction_path.empty())
        throw std::runtime_error("report: --construction is required with --config");
    const Codebook cb = load_codebook(detail::resolve_codebook(cfg, codebook_flag));
    const CodeConstruction constr = load_construction(construction_path);
    const LinkContext ctx(cfg.sys, cb, constr);

    const bool isd = cfg.rx.algorithm == ReceiverKind::isd;
    ComplexityParams cp;
    cp.E = ctx.cfg.n_cw; cp.K = ctx.cfg.K; cp.J = ctx.cfg.J; cp.M = ctx.cfg.M;
    cp.d_r = cb.d_r; cp.d_u = cb.d_u; cp.q = ctx.cfg.q;
    cp.list_size = cfg.rx.list_size; cp.n_sym = ctx.cfg.n_sym; cp.n_bits = ctx.cfg.n_bits;
    cp.paths = path_count_schedule(constr.is_info, constr.is_direct, ctx.cfg.q,
                                   cfg.rx.list_size, isd);
    const OpCounters want = closed_form_counts(isd ? Scheme::isd : Scheme::nsd, cp);

    bool ok = true;
    std::printf("\nper-round operation counts (%s, path candidates per decode = %llu)\n",
                isd ? "isd" : "nsd", static_cast<unsigned long long>(cp.paths));
    std::printf("%6s %16s %16s %s\n", "op", "measured", "closed form", "match");
    const auto check = [&](const char* name, std::uint64_t got, std::uint64_t exp) {
        const bool m = got == exp;
        ok = ok && m;
        std::printf("%6s %16llu %16llu %s\n", name, static_cast<unsigned long long>(got),
                    static_cast<unsigned long long>(exp), m ? "yes" : "MISMATCH");
    };
    if (!rows.empty()) {
        const CsvRow& r = rows.front();
        check("add", r.add, want.add);
        check("mul", r.mul, want.mul);
        check("cmp", r.cmp, want.cmp);
        check("xor", r.xr, want.xr);
        check("exp", r.ex, want.ex);
        for (const auto& other : rows)
            if (other.add != r.add || other.mul != r.mul || other.cmp != r.cmp ||
                other.xr != r.xr || other.ex != r.ex) {
                ok = false;
                std::printf("row at %.3f dB has differing per-round counts\n",
                            other.ebn0_db);
            }
    }

    std::printf("\nlatency model per frame (N=%d, D=%d, T=%d, no-split fraction=%.3f)\n",
                ctx.cfg.n_bits, ctx.cfg.d_bits, cfg.rx.iterations,
                isd ? constr.beta() : 0.0);
    std::printf("standalone list decode: %.1f cycles, %d rounds: %.1f cycles\n",
                latency_list_decode(ctx.cfg.n_bits, ctx.cfg.d_bits),
                cfg.rx.iterations,
                cfg.rx.iterations * latency_list_decode(ctx.cfg.n_bits, ctx.cfg.d_bits));
    for (const auto& r : rows) {
        const double cyc = latency_symbol_clocked(r.avg_iters, ctx.cfg.n_bits, ctx.cfg.p,
                                                  isd ? constr.beta() : 0.0,
                                                  ctx.cfg.d_bits);
        const double gain =
            latency_gain(cfg.rx.iterations, ctx.cfg.n_bits, ctx.cfg.d_bits, cyc);
        std::printf("%8.3f dB: %10.1f cycles, gain %6.2f%%\n", r.ebn0_db, cyc,
                    100.0 * gain);
        if (std::fabs(gain - r.latency_gain) > 1e-4) {
            ok = false;
            std::printf("  latency gain disagrees with the stored row value %.6f\n",
                        r.latency_gain);
        }
    }
    if (!ok) std::printf("\nresult: MISMATCH\n");
    else std::printf("\nresult: all checks passed\n");
    return ok ? 0 : 1;
}

} // namespace nbscma
