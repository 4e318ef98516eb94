// Max-log message-passing multiuser detector on the sparse access graph.
// All quantities are log-likelihood scores per codebook label; larger is
// more likely. One codeword slot at a time.
//
// Edge message layout: msg[k*J*M + j*M + m], defined where F(k, j) = 1.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nbscma/channel.hpp"
#include "nbscma/codebook.hpp"
#include "nbscma/metrics.hpp"

namespace nbscma {

struct DetectorState {
    int E = 0, K = 0, J = 0, M = 0;
    std::vector<double> r2u; // resource-to-user messages, all slots
    std::vector<double> u2r; // user-to-resource messages, all slots

    void reset(int E_, const Codebook& cb) {
        E = E_; K = cb.K; J = cb.J; M = cb.M;
        r2u.assign(static_cast<std::size_t>(E) * K * J * M, 0.0);
        u2r.assign(static_cast<std::size_t>(E) * K * J * M, 0.0);
    }
    double* slot_r2u(int e) { return &r2u[static_cast<std::size_t>(e) * K * J * M]; }
    double* slot_u2r(int e) { return &u2r[static_cast<std::size_t>(e) * K * J * M]; }
    const double* slot_r2u(int e) const { return &r2u[static_cast<std::size_t>(e) * K * J * M]; }
    const double* slot_u2r(int e) const { return &u2r[static_cast<std::size_t>(e) * K * J * M]; }
};

namespace detail {

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Shared kernel for both resource updates: every joint hypothesis over the
// colliding users is scored with the channel term plus the weights of the
// other users on the edge. Summing the others directly (instead of total
// minus own) keeps the channel term intact when weights sit at the
// impossibility sentinel, where the subtraction would cancel it away.
template <typename WeightAt>
inline void resource_pass(double* r2u, const Codebook& cb, const cplx* y, const cplx* h,
                          double n0, double clamp, WeightAt weight_at, OpCounters* ops) {
    const int J = cb.J, M = cb.M, d_r = cb.d_r;
    const double inv_n0 = 1.0 / n0;
    std::vector<cplx> faded(static_cast<std::size_t>(d_r) * M);
    std::vector<double> wt(static_cast<std::size_t>(d_r) * M);
    std::vector<int> label(static_cast<std::size_t>(d_r));

    for (int k = 0; k < cb.K; ++k) {
        const auto& members = cb.users_on_resource[static_cast<std::size_t>(k)];
        for (int i = 0; i < d_r; ++i) {
            const int j = members[static_cast<std::size_t>(i)];
            for (int m = 0; m < M; ++m) {
                faded[static_cast<std::size_t>(i) * M + m] =
                    h[static_cast<std::size_t>(j) * cb.K + k] * cb.codeword(j, m)[k];
                wt[static_cast<std::size_t>(i) * M + m] = weight_at(k, j, m);
            }
            for (int m = 0; m < M; ++m)
                r2u[(static_cast<std::size_t>(k) * J + j) * M + m] =
                    -std::numeric_limits<double>::infinity();
        }

        std::fill(label.begin(), label.end(), 0);
        const cplx yk = y[k];
        for (;;) {
            cplx s{0.0, 0.0};
            for (int i = 0; i < d_r; ++i)
                s += faded[static_cast<std::size_t>(i) * M + label[static_cast<std::size_t>(i)]];
            double psi = -std::norm(yk - s) * inv_n0;
            if (psi < -clamp) psi = -clamp;
            for (int i = 0; i < d_r; ++i) {
                const int j = members[static_cast<std::size_t>(i)];
                double cand = psi;
                for (int i2 = 0; i2 < d_r; ++i2)
                    if (i2 != i)
                        cand += wt[static_cast<std::size_t>(i2) * M +
                                   label[static_cast<std::size_t>(i2)]];
                double& out = r2u[(static_cast<std::size_t>(k) * J + j) * M +
                                  label[static_cast<std::size_t>(i)]];
                if (cand > out) out = cand;
            }
            int i = 0;
            while (i < d_r && ++label[static_cast<std::size_t>(i)] == M) {
                label[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == d_r) break;
        }

        if (ops) {
            const std::uint64_t Mdr = pow_u64(static_cast<std::uint64_t>(M), d_r);
            const std::uint64_t Mdr1 = pow_u64(static_cast<std::uint64_t>(M), d_r - 1);
            const std::uint64_t drv = static_cast<std::uint64_t>(d_r);
            const std::uint64_t Mv = static_cast<std::uint64_t>(M);
            ops->add += 2 * drv * drv * Mdr;
            ops->mul += drv * Mdr * (drv + 3);
            ops->cmp += drv * Mv * (Mdr1 - 1);
        }
    }
}

} // namespace detail

// Hypothesis weights are the current user-to-resource edge messages.
inline void update_resource_messages(double* r2u, const double* u2r, const Codebook& cb,
                                     const cplx* y, const cplx* h, double n0, double clamp,
                                     OpCounters* ops = nullptr) {
    const int J = cb.J, M = cb.M;
    detail::resource_pass(
        r2u, cb, y, h, n0, clamp,
        [&](int k, int j, int m) { return u2r[(static_cast<std::size_t>(k) * J + j) * M + m]; },
        ops);
}

// Hypothesis weights are the decoder-fed label priors (no user-node memory).
inline void update_resource_messages_from_priors(double* r2u, const double* mu,
                                                 const Codebook& cb, const cplx* y,
                                                 const cplx* h, double n0, double clamp,
                                                 OpCounters* ops = nullptr) {
    const int M = cb.M;
    detail::resource_pass(
        r2u, cb, y, h, n0, clamp,
        [&](int, int j, int m) { return mu[static_cast<std::size_t>(j) * M + m]; },
        ops);
}

// User update: prior plus all incoming messages except the target edge,
// then shifted so the best label scores zero on every edge.
inline void update_user_messages(double* u2r, const double* r2u, const double* mu,
                                 const Codebook& cb, OpCounters* ops = nullptr) {
    const int J = cb.J, M = cb.M;
    for (int j = 0; j < J; ++j) {
        const auto& res = cb.resources_of_user[static_cast<std::size_t>(j)];
        for (int k : res) {
            double best = -std::numeric_limits<double>::infinity();
            double* out = &u2r[(static_cast<std::size_t>(k) * J + j) * M];
            for (int m = 0; m < M; ++m) {
                double v = mu[static_cast<std::size_t>(j) * M + m];
                for (int other : res)
                    if (other != k)
                        v += r2u[(static_cast<std::size_t>(other) * J + j) * M + m];
                out[m] = v;
                if (v > best) best = v;
            }
            for (int m = 0; m < M; ++m) out[m] -= best;
        }
        if (ops) {
            const std::uint64_t du = static_cast<std::uint64_t>(cb.d_u);
            const std::uint64_t Mv = static_cast<std::uint64_t>(M);
            ops->add += Mv * du * du;
            ops->cmp += du * Mv * (Mv - 1);
        }
    }
}

// Detector output per user: sum of incoming messages over its resources.
inline void user_marginals(double* Q, const double* r2u, const Codebook& cb,
                           OpCounters* ops = nullptr) {
    const int J = cb.J, M = cb.M;
    for (int j = 0; j < J; ++j) {
        for (int m = 0; m < M; ++m) {
            double v = 0.0;
            for (int k : cb.resources_of_user[static_cast<std::size_t>(j)])
                v += r2u[(static_cast<std::size_t>(k) * J + j) * M + m];
            Q[static_cast<std::size_t>(j) * M + m] = v;
        }
        if (ops)
            ops->add += static_cast<std::uint64_t>(M) * (static_cast<std::uint64_t>(cb.d_u) - 1);
    }
}

} // namespace nbscma
