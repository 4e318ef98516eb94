// Monte-Carlo code construction: random symbol frames from every user run
// through the full transmit chain, a detection pass fed the true transmit
// labels as priors (perfect-feedback detection, matching the converged
// receiver the code actually serves), and a genie-aided successive decode
// that counts per-position decision errors. Each trial contributes exactly
// one decode sample (users take turns across trials), so a trial count of
// 10^4 means 10^4 decisions per position — the sample size the error-rate
// thresholds are calibrated against; pooling all users per frame would
// scale the sample count by J and silently tighten the zero-error statistic.
// The D' most reliable positions carry information; those at or below the
// error-rate threshold are additionally decided without path splitting.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nbscma/channel.hpp"
#include "nbscma/codebook.hpp"
#include "nbscma/config.hpp"
#include "nbscma/construction.hpp"
#include "nbscma/detector.hpp"
#include "nbscma/llr_bridge.hpp"
#include "nbscma/nb_polar.hpp"
#include "nbscma/txchain.hpp"

namespace nbscma {

inline CodeConstruction monte_carlo_construct(const SystemConfig& cfg_in, const Codebook& cb,
                                              const ConstructionParams& cp,
                                              std::uint64_t seed) {
    SystemConfig cfg = cfg_in;
    cfg.derive();
    cp.validate();
    const GaloisField gf(cfg.p);
    const Symbol gamma = cfg.effective_gamma(gf);
    const int J = cfg.J, M = cfg.M, E = cfg.n_cw, R = cfg.bits_per_cw;
    const int np = cfg.n_sym, p = cfg.p, q = cfg.q;
    const double n0 = ebn0_to_n0(cp.ebn0_db, cb.codeword_energy, R, cfg.code_rate);
    const double clamp = cfg.llr_clamp;

    std::vector<Permutation> perms;
    for (int j = 0; j < J; ++j)
        perms.push_back(make_interleaver(cfg.interleaver_seed, j,
                                         static_cast<std::size_t>(cfg.n_bits)));

    std::vector<std::uint32_t> errors(static_cast<std::size_t>(np), 0);
    std::vector<double> prior(static_cast<std::size_t>(J) * M);
    DetectorState state;
    std::vector<double> marginals(static_cast<std::size_t>(E) * J * M);
    std::vector<double> tx_llr(static_cast<std::size_t>(cfg.n_bits));
    std::vector<double> sym_llr(static_cast<std::size_t>(np) * q);

    for (std::uint64_t trial = 0; trial < cp.trials; ++trial) {
        Rng rng = Rng::stream(seed, 0xC0DEu, trial);

        // every position carries a random symbol; the genie pass corrects
        // each decision, so no info placement is needed yet
        std::vector<SymVec> messages(static_cast<std::size_t>(J));
        std::vector<std::vector<int>> labels(static_cast<std::size_t>(J));
        for (int j = 0; j < J; ++j) {
            SymVec a(static_cast<std::size_t>(np));
            for (auto& s : a) s = static_cast<Symbol>(rng.next_below(static_cast<std::uint64_t>(q)));
            messages[static_cast<std::size_t>(j)] = a;
            const SymVec cw = polar_encode(a, gamma, gf);
            const BitVec bits =
                interleave(symbols_to_bits(cw, gf), perms[static_cast<std::size_t>(j)]);
            labels[static_cast<std::size_t>(j)] = scma_labels(bits, R);
        }

        ChannelDraw chan = draw_channel(cfg.channel, J, E, cb.K, rng);
        const std::vector<cplx> y = transmit(labels, cb, chan, n0, rng);

        state.reset(E, cb);
        for (int e = 0; e < E; ++e) {
            // correct-prior feedback: every interferer is pinned to its true
            // label, so each user's marginal is its interference-free evidence
            for (int j = 0; j < J; ++j)
                for (int m = 0; m < M; ++m)
                    prior[static_cast<std::size_t>(j) * M + m] =
                        m == labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)]
                            ? 0.0
                            : -clamp;
            update_resource_messages_from_priors(state.slot_r2u(e), prior.data(), cb,
                                                 &y[static_cast<std::size_t>(e) * cb.K],
                                                 chan.slot(e), n0, clamp, nullptr);
            user_marginals(&marginals[static_cast<std::size_t>(e) * J * M],
                           state.slot_r2u(e), cb, nullptr);
        }

        const int j = static_cast<int>(trial % static_cast<std::uint64_t>(J));
        for (int e = 0; e < E; ++e)
            bit_llr_from_marginals(
                &marginals[(static_cast<std::size_t>(e) * J + j) * M], M, R,
                &tx_llr[static_cast<std::size_t>(e) * R]);
        const std::vector<double> code_llr =
            deinterleave(tx_llr, perms[static_cast<std::size_t>(j)]);
        for (int s = 0; s < np; ++s)
            symbol_llr_from_bits(&code_llr[static_cast<std::size_t>(s) * p], p,
                                 &sym_llr[static_cast<std::size_t>(s) * q]);
        genie_decode_errors(gf, gamma, clamp, sym_llr,
                            messages[static_cast<std::size_t>(j)], errors);
    }

    CodeConstruction c;
    c.q = q;
    c.n_sym = np;
    c.d_sym = cfg.d_sym;
    c.ebn0_db = cp.ebn0_db;
    c.channel = cfg.channel == ChannelModel::awgn ? "awgn" : "rayleigh";
    c.trials = cp.trials;
    c.seed = seed;
    c.g_th = cp.g_th;
    c.g.resize(static_cast<std::size_t>(np));
    const double denom = static_cast<double>(cp.trials); // one decision per trial
    for (int i = 0; i < np; ++i)
        c.g[static_cast<std::size_t>(i)] = errors[static_cast<std::size_t>(i)] / denom;
    select_info_set(c);
    return c;
}

} // namespace nbscma
