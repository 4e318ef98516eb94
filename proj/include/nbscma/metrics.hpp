// Operation accounting, closed-form complexity per outer iteration,
// decoder clock-cycle latency model, and error-rate bookkeeping.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nbscma {

struct OpCounters {
    std::uint64_t add = 0;
    std::uint64_t mul = 0;
    std::uint64_t cmp = 0;
    std::uint64_t xr = 0;   // field additions during re-encoding
    std::uint64_t ex = 0;   // exponentials
    std::uint64_t paths = 0; // path-metric candidates examined

    OpCounters& operator+=(const OpCounters& o) {
        add += o.add; mul += o.mul; cmp += o.cmp;
        xr += o.xr; ex += o.ex; paths += o.paths;
        return *this;
    }
    friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
    friend bool operator==(const OpCounters& a, const OpCounters& b) {
        return a.add == b.add && a.mul == b.mul && a.cmp == b.cmp &&
               a.xr == b.xr && a.ex == b.ex;
    }
};

enum class Scheme { nsd, isd, jidd, cajids };

struct ComplexityParams {
    int E = 0;       // codeword slots per user frame
    int K = 0;
    int J = 0;
    int M = 0;
    int d_r = 0;
    int d_u = 0;
    int q = 0;
    int list_size = 0;
    int n_sym = 0;   // N'
    int n_bits = 0;  // N
    std::uint64_t paths = 0; // measured path-metric candidates per decode
};

namespace detail {
inline std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
inline std::uint64_t ilog2u(int v) {
    std::uint64_t r = 0;
    while ((1 << r) < v) ++r;
    return r;
}
} // namespace detail

// Per-outer-iteration operation counts. Log-domain detection plus list
// decoding (nsd/isd) is exact against the instrumented counters; the
// probability-domain references (jidd/cajids) are reporting-only.
inline OpCounters closed_form_counts(Scheme s, const ComplexityParams& cp) {
    using detail::ipow;
    using detail::ilog2u;
    const std::uint64_t E = static_cast<std::uint64_t>(cp.E);
    const std::uint64_t K = static_cast<std::uint64_t>(cp.K);
    const std::uint64_t J = static_cast<std::uint64_t>(cp.J);
    const std::uint64_t M = static_cast<std::uint64_t>(cp.M);
    const std::uint64_t dr = static_cast<std::uint64_t>(cp.d_r);
    const std::uint64_t du = static_cast<std::uint64_t>(cp.d_u);
    const std::uint64_t q = static_cast<std::uint64_t>(cp.q);
    const std::uint64_t l = static_cast<std::uint64_t>(cp.list_size);
    const std::uint64_t Np = static_cast<std::uint64_t>(cp.n_sym);
    const std::uint64_t N = static_cast<std::uint64_t>(cp.n_bits);
    const std::uint64_t Mdr = ipow(M, cp.d_r);
    const std::uint64_t Mdr1 = ipow(M, cp.d_r - 1);
    const std::uint64_t logNp = ilog2u(cp.n_sym);
    const std::uint64_t logN = ilog2u(cp.n_bits);
    const std::uint64_t tp = cp.paths;

    OpCounters c;
    switch (s) {
        case Scheme::nsd:
            c.add = E * (2 * K * dr * dr * Mdr + J * M * (du * du + du - 1)) +
                    J * ((2 * q + 1) * l * Np * logNp + 2 * tp);
            c.mul = E * K * dr * Mdr * (dr + 3);
            c.cmp = E * K * dr * M * (Mdr1 + M - 2) +
                    J * (2 * (q - 1) * l * Np * logNp + (q - 1) * tp);
            c.xr = J * l * Np * logNp / 2;
            c.ex = 0;
            break;
        case Scheme::isd:
            c.add = E * (2 * K * dr * dr * Mdr + J * M * (du - 1)) +
                    J * ((2 * q + 1) * l * Np * logNp + 2 * tp);
            c.mul = E * K * dr * Mdr * (dr + 3);
            c.cmp = E * K * dr * M * (Mdr1 - 1) +
                    J * (2 * (q - 1) * l * Np * logNp + (q - 1) * tp);
            c.xr = J * l * Np * logNp / 2;
            c.ex = 0;
            break;
        case Scheme::jidd:
            c.add = E * K * dr * (Mdr * (dr + 2) - 1) + 2 * J * N * logN;
            c.mul = E * (K * dr * (M * (du - 1) + Mdr * (2 * dr + 4)) + J * M * (du - 1)) +
                    4 * J * N * logN;
            c.cmp = 6 * J * N * logN;
            c.xr = 0;
            c.ex = E * K * dr * Mdr;
            break;
        case Scheme::cajids:
            c.add = E * K * dr * (Mdr * (dr + 2) - 1) + J * (l * N * logN / 2 + tp);
            c.mul = E * (K * dr * (M * (du - 1) + Mdr * (2 * dr + 4)) + J * M * (du - 1)) +
                    J * l * N * logN;
            c.cmp = J * (2 * l * N * logN + tp);
            c.xr = J * l * Np * logNp / 2;
            c.ex = E * K * dr * Mdr;
            break;
    }
    return c;
}

// Path-metric candidates per decode. The schedule only depends on the
// frozen/info/no-split pattern and the list cap, never on the data.
inline std::uint64_t path_count_schedule(const std::vector<std::uint8_t>& is_info,
                                         const std::vector<std::uint8_t>& is_direct,
                                         int q, int list_size, bool direct_enabled) {
    std::uint64_t npaths = 1, total = 0;
    const std::uint64_t cap = static_cast<std::uint64_t>(list_size);
    for (std::size_t i = 0; i < is_info.size(); ++i) {
        if (!is_info[i]) {
            total += npaths; // frozen burden is evaluated per surviving path
        } else if (direct_enabled && is_direct[i]) {
            // decided by argmin, no metric candidates
        } else {
            total += npaths * static_cast<std::uint64_t>(q);
            npaths = std::min(cap, npaths * static_cast<std::uint64_t>(q));
        }
    }
    return total;
}

// ---- decoder latency in clock cycles ----

// one list decode: 2N - 2 node cycles plus one sort cycle per info symbol
inline double latency_list_decode(int n_bits, int d_bits) {
    return 2.0 * n_bits - 2.0 + d_bits;
}

// T full rounds with the decoder folded into the detector schedule
inline double latency_joint(int iterations, int n_bits) {
    return static_cast<double>(iterations) * (2.0 * n_bits - 2.0);
}

// multistage schedule: each stage t decodes N_t with D_t sorted decisions
inline double latency_multistage(const std::vector<int>& n_bits_t,
                                 const std::vector<int>& d_bits_t) {
    if (n_bits_t.size() != d_bits_t.size())
        throw std::invalid_argument("latency: stage vectors must match");
    double g = 0.0;
    for (std::size_t t = 0; t < n_bits_t.size(); ++t)
        g += 2.0 * n_bits_t[t] - 2.0 + d_bits_t[t];
    return g;
}

// symbol-clocked decode with a fraction beta of info decisions taken
// without sorting; T_a is the measured average number of rounds
inline double latency_symbol_clocked(double avg_iterations, int n_bits, int p,
                                     double beta, int d_bits) {
    return (avg_iterations / p) * (2.0 * n_bits - 2.0 * p + (1.0 - beta) * d_bits);
}

// relative saving vs running T standalone list decodes
inline double latency_gain(int iterations, int n_bits, int d_bits, double cycles) {
    const double base = iterations * latency_list_decode(n_bits, d_bits);
    return (base - cycles) / base;
}

// ---- error-rate bookkeeping ----

struct ErrorStats {
    std::uint64_t frames = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t iterations = 0; // executed outer rounds, summed over frames

    ErrorStats& operator+=(const ErrorStats& o) {
        frames += o.frames; bits += o.bits; bit_errors += o.bit_errors;
        frame_errors += o.frame_errors; iterations += o.iterations;
        return *this;
    }
    double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
    double fer() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }
    double avg_iterations() const {
        return frames ? static_cast<double>(iterations) / frames : 0.0;
    }
};

// Wilson score interval for an observed error ratio; usable as a stopping
// criterion when a target confidence is wanted.
inline std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t n,
                                                 double z = 1.96) {
    if (n == 0) return {0.0, 1.0};
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

} // namespace nbscma
