// Iterative multiuser receiver: detector and per-user list decoders
// exchange extrinsic information for up to T rounds. Two variants share
// the loop: "nsd" keeps user-node messages inside the detector, "isd"
// feeds decoder priors straight into the resource update and lets the
// decoder skip path splitting on reliable positions.
//
// Early termination fires after the decoding stage of a round when every
// user's selected path passes CRC; the final round never feeds back.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nbscma/context.hpp"
#include "nbscma/detector.hpp"
#include "nbscma/llr_bridge.hpp"
#include "nbscma/metrics.hpp"
#include "nbscma/nb_polar.hpp"

namespace nbscma {

struct IterationTrace {
    int iterations_used = 0;
    std::vector<std::uint8_t> all_crc_pass;  // per executed round
    std::vector<OpCounters> ops;             // per executed round
    std::uint64_t paths_per_decode = 0;      // identical for every decode
};

struct FrameResult {
    std::vector<BitVec> info_bits; // per user, A bits from the selected path
    IterationTrace trace;
};

class Receiver {
public:
    Receiver(const LinkContext& ctx, const ReceiverConfig& rcfg)
        : ctx_(ctx), rcfg_(rcfg),
          decoder_(ctx.field, ctx.constr, ctx.gamma, rcfg.list_size, ctx.crc,
                   rcfg.algorithm == ReceiverKind::isd, ctx.cfg.llr_clamp) {
        rcfg_.validate();
    }

    FrameResult run_frame(const std::vector<cplx>& y, const ChannelDraw& chan,
                          double n0) const {
        return run(y, chan, n0, rcfg_.iterations);
    }

    // single detect + decode round, no feedback
    FrameResult run_noniterative(const std::vector<cplx>& y, const ChannelDraw& chan,
                                 double n0) const {
        return run(y, chan, n0, 1);
    }

private:
    FrameResult run(const std::vector<cplx>& y, const ChannelDraw& chan, double n0,
                    int max_rounds) const {
        const SystemConfig& cfg = ctx_.cfg;
        const Codebook& cb = ctx_.cb;
        const int E = cfg.n_cw, J = cfg.J, M = cfg.M;
        const int R = cfg.bits_per_cw, N = cfg.n_bits, p = cfg.p, q = cfg.q;
        const int np = cfg.n_sym;
        const bool isd = rcfg_.algorithm == ReceiverKind::isd;
        const double clamp = cfg.llr_clamp;

        DetectorState state;
        state.reset(E, cb);
        // label priors, slot-major: mu[(e*J + j)*M + m], start uniform
        std::vector<double> mu(static_cast<std::size_t>(E) * J * M,
                               std::log(1.0 / M));
        std::vector<double> marginals(static_cast<std::size_t>(E) * J * M);
        std::vector<double> tx_llr(static_cast<std::size_t>(N));
        std::vector<double> code_llr(static_cast<std::size_t>(N));
        std::vector<double> sym_llr(static_cast<std::size_t>(np) * q);

        std::vector<ListDecoder::Result> decodes(static_cast<std::size_t>(J));
        FrameResult out;
        out.info_bits.assign(static_cast<std::size_t>(J), {});

        for (int round = 1; round <= max_rounds; ++round) {
            OpCounters ops;
            for (int e = 0; e < E; ++e) {
                const double* mu_e = &mu[static_cast<std::size_t>(e) * J * M];
                const cplx* y_e = &y[static_cast<std::size_t>(e) * cb.K];
                const cplx* h_e = chan.slot(e);
                if (isd) {
                    update_resource_messages_from_priors(state.slot_r2u(e), mu_e, cb, y_e,
                                                         h_e, n0, clamp, &ops);
                } else {
                    update_user_messages(state.slot_u2r(e), state.slot_r2u(e), mu_e, cb,
                                         &ops);
                    update_resource_messages(state.slot_r2u(e), state.slot_u2r(e), cb, y_e,
                                             h_e, n0, clamp, &ops);
                }
                user_marginals(&marginals[static_cast<std::size_t>(e) * J * M],
                               state.slot_r2u(e), cb, &ops);
            }

            bool all_pass = true;
            for (int j = 0; j < J; ++j) {
                for (int e = 0; e < E; ++e)
                    bit_llr_from_marginals(
                        &marginals[(static_cast<std::size_t>(e) * J + j) * M], M, R,
                        &tx_llr[static_cast<std::size_t>(e) * R]);
                code_llr = deinterleave(tx_llr, ctx_.perms[static_cast<std::size_t>(j)]);
                for (int s = 0; s < np; ++s)
                    symbol_llr_from_bits(&code_llr[static_cast<std::size_t>(s) * p], p,
                                         &sym_llr[static_cast<std::size_t>(s) * q]);
                decodes[static_cast<std::size_t>(j)] = decoder_.decode(sym_llr, &ops);
                const auto& d = decodes[static_cast<std::size_t>(j)];
                all_pass = all_pass && d.crc_ok[static_cast<std::size_t>(d.selected)];
            }

            out.trace.iterations_used = round;
            out.trace.all_crc_pass.push_back(all_pass ? 1 : 0);
            out.trace.ops.push_back(ops);
            out.trace.paths_per_decode = decodes[0].paths_examined;

            const bool stop = (round == max_rounds) ||
                              (rcfg_.early_term && all_pass);
            if (stop) break;

            for (int j = 0; j < J; ++j) {
                const auto& d = decodes[static_cast<std::size_t>(j)];
                std::vector<double> ex =
                    list_extrinsic_bit_llr(d.codeword_bits, d.metrics, d.selected, clamp);
                damp_llr(ex, rcfg_.epsilon);
                tx_llr = interleave(ex, ctx_.perms[static_cast<std::size_t>(j)]);
                for (int e = 0; e < E; ++e)
                    label_priors_from_bit_llr(&tx_llr[static_cast<std::size_t>(e) * R], R,
                                              &mu[(static_cast<std::size_t>(e) * J + j) * M]);
            }
        }

        for (int j = 0; j < J; ++j) {
            const auto& d = decodes[static_cast<std::size_t>(j)];
            const BitVec& msg = d.messages[static_cast<std::size_t>(d.selected)];
            out.info_bits[static_cast<std::size_t>(j)] =
                BitVec(msg.begin(), msg.begin() + ctx_.cfg.a_bits);
        }
        return out;
    }

    const LinkContext& ctx_;
    ReceiverConfig rcfg_;
    ListDecoder decoder_;
};

// true when every user's selected path passed its CRC in the given round
inline bool early_termination_check(const std::vector<ListDecoder::Result>& decodes) {
    for (const auto& d : decodes)
        if (!d.crc_ok[static_cast<std::size_t>(d.selected)]) return false;
    return true;
}

} // namespace nbscma
