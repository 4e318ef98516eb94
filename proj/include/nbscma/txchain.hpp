// Per-user transmit chain: CRC attach, info placement, polar transform,
// bit mapping, interleaving, and codebook labeling.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nbscma/construction.hpp"
#include "nbscma/crc.hpp"
#include "nbscma/gf.hpp"
#include "nbscma/rng.hpp"

namespace nbscma {

using SymVec = std::vector<Symbol>;
using Permutation = std::vector<std::uint32_t>;

// payload symbols (D') scattered into the info positions, zeros elsewhere
inline SymVec place_symbols(const SymVec& payload, const CodeConstruction& c) {
    if (static_cast<int>(payload.size()) != c.d_sym)
        throw std::invalid_argument("place_symbols: payload must have D' symbols");
    SymVec frame(static_cast<std::size_t>(c.n_sym), 0);
    std::size_t next = 0;
    for (int i = 0; i < c.n_sym; ++i)
        if (c.is_info[static_cast<std::size_t>(i)])
            frame[static_cast<std::size_t>(i)] = payload[next++];
    return frame;
}

// In-place butterfly for the Kronecker power of the 2x2 kernel
// [[1, 0], [gamma, 1]]: at every block size the upper half absorbs
// gamma times the lower half. O(N' log N') multiplies.
inline SymVec polar_encode(SymVec a, Symbol gamma, const GaloisField& gf) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("polar_encode: length must be a power of two");
    for (std::size_t len = 2; len <= n; len <<= 1)
        for (std::size_t blk = 0; blk < n; blk += len)
            for (std::size_t i = 0; i < len / 2; ++i)
                a[blk + i] = GaloisField::add(
                    a[blk + i], gf.mul(gamma, a[blk + i + len / 2]));
    return a;
}

inline BitVec symbols_to_bits(const SymVec& syms, const GaloisField& gf) {
    BitVec bits(syms.size() * static_cast<std::size_t>(gf.p()));
    for (std::size_t i = 0; i < syms.size(); ++i)
        gf.symbol_to_bits(syms[i], &bits[i * static_cast<std::size_t>(gf.p())]);
    return bits;
}

inline SymVec bits_to_symbols(const BitVec& bits, const GaloisField& gf) {
    const auto p = static_cast<std::size_t>(gf.p());
    if (bits.size() % p != 0)
        throw std::invalid_argument("bits_to_symbols: length must be a multiple of p");
    SymVec syms(bits.size() / p);
    for (std::size_t i = 0; i < syms.size(); ++i)
        syms[i] = gf.bits_to_symbol(&bits[i * p]);
    return syms;
}

// Fisher-Yates permutation keyed by (seed, user); users get distinct
// interleavers from the same seed.
inline Permutation make_interleaver(std::uint64_t seed, int user, std::size_t n) {
    Permutation perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    Rng rng = Rng::stream(seed, 0x17eau, static_cast<std::uint64_t>(user));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t k = rng.next_below(i);
        std::swap(perm[i - 1], perm[k]);
    }
    return perm;
}

template <typename T>
std::vector<T> interleave(const std::vector<T>& x, const Permutation& perm) {
    if (x.size() != perm.size()) throw std::invalid_argument("interleave: size mismatch");
    std::vector<T> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[perm[i]];
    return y;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<T>& y, const Permutation& perm) {
    if (y.size() != perm.size()) throw std::invalid_argument("deinterleave: size mismatch");
    std::vector<T> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[perm[i]] = y[i];
    return x;
}

// Groups of log2(M) interleaved bits, MSB first, become codebook labels.
inline std::vector<int> scma_labels(const BitVec& bits, int bits_per_cw) {
    if (bits.size() % static_cast<std::size_t>(bits_per_cw) != 0)
        throw std::invalid_argument("scma_labels: length must be a multiple of log2(M)");
    std::vector<int> labels(bits.size() / static_cast<std::size_t>(bits_per_cw));
    for (std::size_t e = 0; e < labels.size(); ++e) {
        int v = 0;
        for (int r = 0; r < bits_per_cw; ++r)
            v = (v << 1) | bits[e * static_cast<std::size_t>(bits_per_cw) + static_cast<std::size_t>(r)];
        labels[e] = v;
    }
    return labels;
}

inline BitVec bits_from_labels(const std::vector<int>& labels, int bits_per_cw) {
    BitVec bits(labels.size() * static_cast<std::size_t>(bits_per_cw));
    for (std::size_t e = 0; e < labels.size(); ++e)
        for (int r = 0; r < bits_per_cw; ++r)
            bits[e * static_cast<std::size_t>(bits_per_cw) + static_cast<std::size_t>(r)] =
                static_cast<std::uint8_t>((labels[e] >> (bits_per_cw - 1 - r)) & 1);
    return bits;
}

} // namespace nbscma
