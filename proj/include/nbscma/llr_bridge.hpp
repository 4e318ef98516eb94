// Conversions between detector label scores, bit LLRs, and q-ary symbol
// scores, plus the decoder-to-detector feedback path.
//
// Conventions: a bit LLR is ln P(bit=0)/P(bit=1), so positive means 0.
// A symbol score vector L has L[0] = 0 and L[theta] = ln P(0)/P(theta),
// so the hard decision is the argmin. Detector label scores mu/Q are
// log-likelihoods where larger is better.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nbscma/crc.hpp"

namespace nbscma {

// max-log bit LLRs from one slot's label marginals; labels carry their
// bit pattern MSB-first
inline void bit_llr_from_marginals(const double* Q, int M, int bits_per_cw, double* out) {
    for (int r = 0; r < bits_per_cw; ++r) {
        double best0 = -std::numeric_limits<double>::infinity();
        double best1 = best0;
        for (int m = 0; m < M; ++m) {
            const int bit = (m >> (bits_per_cw - 1 - r)) & 1;
            if (bit == 0) best0 = std::max(best0, Q[m]);
            else best1 = std::max(best1, Q[m]);
        }
        out[r] = best0 - best1;
    }
}

// p bit LLRs -> q = 2^p symbol scores; the score of theta adds the LLRs of
// the bit positions where theta (MSB-first) has a one. L[0] = 0 exactly.
inline void symbol_llr_from_bits(const double* bit_llr, int p, double* out) {
    const int q = 1 << p;
    out[0] = 0.0;
    for (int theta = 1; theta < q; ++theta) {
        double v = 0.0;
        for (int i = 0; i < p; ++i)
            if ((theta >> (p - 1 - i)) & 1) v += bit_llr[i];
        out[theta] = v;
    }
}

// Extrinsic bit LLRs from a decoded list: softmax weights over path
// metrics, bitwise aggregation, and the sign forced to the selected path's
// bit. Certainty (all paths agree) saturates at +-clamp.
inline std::vector<double> list_extrinsic_bit_llr(const std::vector<BitVec>& path_bits,
                                                  const std::vector<double>& metrics,
                                                  int selected, double clamp) {
    const std::size_t L = path_bits.size();
    if (L == 0 || metrics.size() != L)
        throw std::invalid_argument("list_extrinsic_bit_llr: empty or mismatched list");
    const std::size_t n = path_bits[0].size();
    const double rho_min = *std::min_element(metrics.begin(), metrics.end());
    std::vector<double> delta(L);
    for (std::size_t l = 0; l < L; ++l)
        delta[l] = std::exp(-(metrics[l] - rho_min));

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t l = 0; l < L; ++l)
            (path_bits[l][i] ? s1 : s0) += delta[l];
        double llr;
        if (s1 == 0.0) llr = clamp;
        else if (s0 == 0.0) llr = -clamp;
        else llr = std::clamp(std::log(s0 / s1), -clamp, clamp);
        const double mag = std::fabs(llr);
        out[i] = path_bits[static_cast<std::size_t>(selected)][i] ? -mag : mag;
    }
    return out;
}

inline void damp_llr(std::vector<double>& llr, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("damp_llr: epsilon must be in (0, 1]");
    for (double& v : llr) v *= epsilon;
}

// Label priors from the slot's bit LLRs: mu(m) = sum_r log P(bit_r = s_r)
// in max-log form, i.e. (1 - s_r) L_r - max(0, L_r) summed over the
// label's bits s_r. Always <= 0, and 0 only for the dominant label.
inline void label_priors_from_bit_llr(const double* bit_llr, int bits_per_cw, double* mu) {
    const int M = 1 << bits_per_cw;
    double base = 0.0;
    for (int r = 0; r < bits_per_cw; ++r) base -= std::max(0.0, bit_llr[r]);
    for (int m = 0; m < M; ++m) {
        double v = base;
        for (int r = 0; r < bits_per_cw; ++r)
            if (((m >> (bits_per_cw - 1 - r)) & 1) == 0) v += bit_llr[r];
        mu[m] = v;
    }
}

} // namespace nbscma
