// Command-line front end: construct | simulate | sweep | report.
// Kept in a header as plain functions so the test suite can drive the
// exact code paths the binary runs.
#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbscma/cli_support.hpp"

namespace nbscma {

inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"non-binary polar-coded sparse multiple access link simulator"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- construct ----
    auto* c = app.add_subcommand(
        "construct", "Monte-Carlo code construction; writes a construction file");
    struct {
        std::string config, codebook, out;
        std::uint64_t seed = 1;
        std::optional<std::uint64_t> trials;
        std::optional<double> ebn0, g_th;
    } ca;
    c->add_option("--config", ca.config, "config file")->required();
    c->add_option("--out", ca.out, "output construction file")->required();
    c->add_option("--seed", ca.seed, "construction RNG seed");
    c->add_option("--codebook", ca.codebook, "codebook file (overrides config key)");
    c->add_option("--trials", ca.trials, "override construction_trials");
    c->add_option("--ebn0", ca.ebn0, "override construction Eb/N0 in dB");
    c->add_option("--g-th", ca.g_th, "override the no-split error-rate threshold");
    c->callback([&] {
        rc = cmd_construct(ca.config, ca.codebook, ca.out, ca.seed, ca.trials, ca.ebn0,
                           ca.g_th);
    });

    // ---- simulate / sweep ----
    struct SweepArgs {
        std::string config, construction, codebook, out;
        std::vector<double> ebn0;
        std::uint64_t frames = 1000, seed = 1, target_errors = 100;
        int workers = 1;
        bool zero_noise = false;
    };
    SweepArgs sa, wa;
    auto add_common = [](CLI::App* cmd, SweepArgs& a) {
        cmd->add_option("--config", a.config, "config file")->required();
        cmd->add_option("--construction", a.construction, "construction file")->required();
        cmd->add_option("--codebook", a.codebook, "codebook file (overrides config key)");
        cmd->add_option("--frames", a.frames, "frame budget per point");
        cmd->add_option("--seed", a.seed, "simulation RNG seed");
        cmd->add_option("--workers", a.workers, "worker threads inside a batch");
        cmd->add_option("--target-errors", a.target_errors,
                        "stop a point early after this many frame errors (0 = never)");
        cmd->add_flag("--zero-noise", a.zero_noise, "disable channel noise");
        cmd->add_option("--out", a.out, "output CSV path (default stdout)");
    };
    auto* s = app.add_subcommand("simulate", "simulate one Eb/N0 point");
    add_common(s, sa);
    s->add_option("--ebn0", sa.ebn0, "Eb/N0 in dB")->expected(1)->required();
    s->callback([&] { rc = cmd_sweep(sa.config, sa.construction, sa.codebook, sa.ebn0,
                                     sa.frames, sa.seed, sa.workers, sa.target_errors,
                                     sa.zero_noise, sa.out); });

    auto* w = app.add_subcommand("sweep", "simulate a list of Eb/N0 points");
    add_common(w, wa);
    w->add_option("--ebn0-list", wa.ebn0, "comma separated Eb/N0 values in dB")
        ->delimiter(',');
    w->callback([&] { rc = cmd_sweep(wa.config, wa.construction, wa.codebook, wa.ebn0,
                                     wa.frames, wa.seed, wa.workers, wa.target_errors,
                                     wa.zero_noise, wa.out); });

    // ---- report ----
    auto* r = app.add_subcommand("report", "summarize a results CSV");
    struct {
        std::string in, config, construction, codebook;
    } ra;
    r->add_option("--in", ra.in, "results CSV")->required();
    r->add_option("--config", ra.config, "config file enables the complexity cross-check");
    r->add_option("--construction", ra.construction, "construction file for the cross-check");
    r->add_option("--codebook", ra.codebook, "codebook file (overrides config key)");
    r->callback([&] { rc = cmd_report(ra.in, ra.config, ra.construction, ra.codebook); });

    try {
        std::vector<const char*> argv;
        argv.push_back("nbscma");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace nbscma
