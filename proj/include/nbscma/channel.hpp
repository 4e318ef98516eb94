// Uplink channel: per-user fading coefficients and complex AWGN.
// Rayleigh coefficients change independently per user, codeword slot, and
// resource, and are known at the receiver.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "nbscma/codebook.hpp"
#include "nbscma/config.hpp"
#include "nbscma/rng.hpp"

namespace nbscma {

// Eb = E_cw / (bits per codeword * code rate); N0 = Eb / 10^(dB/10)
inline double ebn0_to_n0(double ebn0_db, double codeword_energy, int bits_per_cw,
                         double code_rate) {
    if (bits_per_cw < 1 || !(code_rate > 0.0))
        throw std::invalid_argument("ebn0_to_n0: bad rate parameters");
    const double eb = codeword_energy / (bits_per_cw * code_rate);
    return eb / std::pow(10.0, ebn0_db / 10.0);
}

struct ChannelDraw {
    int J = 0, E = 0, K = 0;
    std::vector<cplx> h; // slot-major: h[((e*J) + j)*K + k]

    // J x K coefficient block for one codeword slot
    const cplx* slot(int e) const {
        return &h[static_cast<std::size_t>(e) * J * K];
    }
    const cplx* at(int j, int e) const {
        return &h[(static_cast<std::size_t>(e) * J + j) * K];
    }
};

inline ChannelDraw draw_channel(ChannelModel model, int J, int E, int K, Rng& rng) {
    ChannelDraw d;
    d.J = J; d.E = E; d.K = K;
    d.h.resize(static_cast<std::size_t>(J) * E * K);
    if (model == ChannelModel::awgn) {
        for (auto& v : d.h) v = {1.0, 0.0};
    } else {
        const double s = std::sqrt(0.5); // unit-mean |h|^2
        for (auto& v : d.h) v = {s * rng.next_gaussian(), s * rng.next_gaussian()};
    }
    return d;
}

// Superimposes all users' faded codewords per slot and adds CN(0, N0) noise
// (variance N0/2 per real dimension). labels[j][e] selects user j's codeword.
inline std::vector<cplx> transmit(const std::vector<std::vector<int>>& labels,
                                  const Codebook& cb, const ChannelDraw& chan,
                                  double n0, Rng& rng, bool zero_noise = false) {
    const int J = cb.J, K = cb.K;
    const int E = chan.E;
    if (static_cast<int>(labels.size()) != J)
        throw std::invalid_argument("transmit: need one label stream per user");
    std::vector<cplx> y(static_cast<std::size_t>(E) * K, {0.0, 0.0});
    for (int e = 0; e < E; ++e)
        for (int j = 0; j < J; ++j) {
            const cplx* wv = cb.codeword(j, labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)]);
            const cplx* hv = chan.at(j, e);
            for (int k = 0; k < K; ++k)
                y[static_cast<std::size_t>(e) * K + k] += hv[k] * wv[k];
        }
    if (!zero_noise) {
        const double s = std::sqrt(n0 / 2.0);
        for (auto& v : y)
            v += cplx{s * rng.next_gaussian(), s * rng.next_gaussian()};
    }
    return y;
}

} // namespace nbscma
