// Non-binary polar list decoder over GF(q) with the 2x2 kernel
// [[1, 0], [gamma, 1]].
//
// Symbol score vectors follow the bridge convention: L[0] = 0,
// L[theta] = ln P(0)/P(theta), hard decision = argmin. The decoder keeps
// per-path intermediate scores for every tree depth and recomputes only
// the depths entered at each leaf, so a full pass costs O(N' log N')
// vector updates per path.
//
// Positions marked "direct" in the construction are decided by argmin on
// every path without splitting or touching the path metric; frozen
// positions force symbol 0 and pay the metric burden.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nbscma/construction.hpp"
#include "nbscma/crc.hpp"
#include "nbscma/gf.hpp"
#include "nbscma/metrics.hpp"
#include "nbscma/txchain.hpp"

namespace nbscma {

inline std::vector<Symbol> scaled_table(const GaloisField& gf, Symbol gamma) {
    std::vector<Symbol> t(static_cast<std::size_t>(gf.q()));
    for (int v = 0; v < gf.q(); ++v)
        t[static_cast<std::size_t>(v)] = gf.mul(gamma, static_cast<Symbol>(v));
    return t;
}

// Upper-branch combine: score of theta is the best joint explanation over
// the unknown lower symbol phi, with the pair mapped through
// (theta + gamma*phi, phi); normalized so out[0] = 0.
inline void polar_f(const double* La, const double* Lb, double* out, int q,
                    const Symbol* gamma_times, double clamp) {
    double min0 = std::numeric_limits<double>::infinity();
    for (int phi = 0; phi < q; ++phi) {
        const double v = La[gamma_times[phi]] + Lb[phi];
        if (v < min0) min0 = v;
    }
    out[0] = 0.0;
    for (int theta = 1; theta < q; ++theta) {
        double mt = std::numeric_limits<double>::infinity();
        for (int phi = 0; phi < q; ++phi) {
            const double v = La[theta ^ gamma_times[phi]] + Lb[phi];
            if (v < mt) mt = v;
        }
        out[theta] = std::clamp(mt - min0, -clamp, clamp);
    }
}

// Lower-branch combine once the upper symbol decision r is fixed.
inline void polar_g(const double* La, const double* Lb, Symbol r, double* out, int q,
                    const Symbol* gamma_times, double clamp) {
    const double base = La[r];
    out[0] = std::clamp(La[r ^ gamma_times[0]] + Lb[0] - base, -clamp, clamp);
    for (int theta = 1; theta < q; ++theta)
        out[theta] = std::clamp(La[r ^ gamma_times[theta]] + Lb[theta] - base, -clamp, clamp);
}

// re-encoding step: completed sibling blocks (upper u, lower v) merge into
// the parent block (u + gamma*v, v)
inline void partial_sum_merge(const Symbol* upper, const Symbol* lower, Symbol* out_upper,
                              Symbol* out_lower, std::size_t n, const Symbol* gamma_times) {
    for (std::size_t i = 0; i < n; ++i) {
        out_upper[i] = static_cast<Symbol>(upper[i] ^ gamma_times[lower[i]]);
        out_lower[i] = lower[i];
    }
}

inline double path_metric_update(double rho, const double* L, Symbol eta, int q) {
    double mn = L[0];
    for (int t = 1; t < q; ++t) mn = std::min(mn, L[t]);
    return rho + L[eta] - mn;
}

inline Symbol hard_decision(const double* L, int q) {
    int best = 0;
    for (int t = 1; t < q; ++t)
        if (L[t] < L[best]) best = t;
    return static_cast<Symbol>(best);
}

namespace detail {

// Per-path working memory for one decode: score vectors and completed
// partial-sum blocks for every depth, decisions, and the re-encoded root.
struct PathMemory {
    std::vector<double> score;   // depth-major: [l_off(d) + pos*q + theta]
    std::vector<Symbol> blocks;  // [b_off(d) + lane*bs(d) + pos]
    SymVec decisions;            // N'
    SymVec root;                 // codeword after the final merge
    double metric = 0.0;
};

struct TreeShape {
    int n = 0, omega = 0, q = 0;
    std::vector<std::size_t> l_off; // depth 1..omega
    std::vector<std::size_t> b_off;

    void init(int n_sym, int q_) {
        n = n_sym;
        q = q_;
        omega = std::countr_zero(static_cast<unsigned>(n_sym));
        l_off.assign(static_cast<std::size_t>(omega) + 1, 0);
        b_off.assign(static_cast<std::size_t>(omega) + 1, 0);
        std::size_t lo = 0, bo = 0;
        for (int d = 1; d <= omega; ++d) {
            l_off[static_cast<std::size_t>(d)] = lo;
            b_off[static_cast<std::size_t>(d)] = bo;
            lo += static_cast<std::size_t>(bs(d)) * static_cast<std::size_t>(q);
            bo += 2 * static_cast<std::size_t>(bs(d));
        }
        score_size = lo;
        block_size = bo;
    }
    int bs(int d) const { return n >> d; }
    std::size_t score_size = 0, block_size = 0;

    void reset(PathMemory& p) const {
        p.score.assign(score_size, 0.0);
        p.blocks.assign(block_size, 0);
        p.decisions.assign(static_cast<std::size_t>(n), 0);
        p.root.assign(static_cast<std::size_t>(n), 0);
        p.metric = 0.0;
    }

    // depths whose score vectors must be recomputed before deciding leaf phi
    int chain_start(int phi) const {
        return phi == 0 ? 1 : omega - std::countr_zero(static_cast<unsigned>(phi));
    }

    void compute_scores(PathMemory& p, int phi, const double* channel,
                        const Symbol* gamma_times, double clamp) const {
        for (int d = chain_start(phi); d <= omega; ++d) {
            const int psi = phi >> (omega - d);
            const int b = bs(d);
            const double* parent =
                d == 1 ? channel : &p.score[l_off[static_cast<std::size_t>(d - 1)]];
            double* cur = &p.score[l_off[static_cast<std::size_t>(d)]];
            const Symbol* left = &p.blocks[b_off[static_cast<std::size_t>(d)]];
            for (int j = 0; j < b; ++j) {
                const double* la = parent + static_cast<std::size_t>(j) * q;
                const double* lb = parent + static_cast<std::size_t>(j + b) * q;
                double* out = cur + static_cast<std::size_t>(j) * q;
                if (psi & 1) polar_g(la, lb, left[j], out, q, gamma_times, clamp);
                else polar_f(la, lb, out, q, gamma_times, clamp);
            }
        }
    }

    const double* leaf_scores(const PathMemory& p) const {
        return &p.score[l_off[static_cast<std::size_t>(omega)]];
    }

    void push_decision(PathMemory& p, int phi, Symbol eta, const Symbol* gamma_times) const {
        p.decisions[static_cast<std::size_t>(phi)] = eta;
        p.blocks[b_off[static_cast<std::size_t>(omega)] + static_cast<std::size_t>(phi & 1)] = eta;
        int node = phi;
        for (int d = omega; d >= 1 && (node & 1); --d, node >>= 1) {
            const int b = bs(d);
            const Symbol* lane0 = &p.blocks[b_off[static_cast<std::size_t>(d)]];
            const Symbol* lane1 = lane0 + b;
            Symbol* dst;
            if (d == 1) dst = p.root.data();
            else {
                const int parent_lane = (node >> 1) & 1;
                dst = &p.blocks[b_off[static_cast<std::size_t>(d - 1)] +
                                static_cast<std::size_t>(parent_lane) * bs(d - 1)];
            }
            partial_sum_merge(lane0, lane1, dst, dst + b, static_cast<std::size_t>(b),
                              gamma_times);
        }
    }
};

} // namespace detail

class ListDecoder {
public:
    struct Result {
        std::vector<BitVec> messages;      // per path: D bits (payload + crc)
        std::vector<BitVec> codeword_bits; // per path: N re-encoded bits
        std::vector<double> metrics;
        std::vector<std::uint8_t> crc_ok;
        int selected = 0;
        std::uint64_t paths_examined = 0;
    };

    ListDecoder(const GaloisField& gf, const CodeConstruction& constr, Symbol gamma,
                int list_size, const CrcSpec& crc, bool direct_enabled, double clamp)
        : gf_(gf), constr_(constr), crc_(crc), list_size_(list_size),
          direct_enabled_(direct_enabled), clamp_(clamp),
          gamma_times_(scaled_table(gf, gamma)) {
        if (constr.q != gf.q())
            throw std::invalid_argument("decoder: construction field order mismatch");
        if (list_size < 1) throw std::invalid_argument("decoder: list size must be >= 1");
        shape_.init(constr.n_sym, gf.q());
        info_positions_ = constr.info_positions();
    }

    // llr: N' x q, position-major, each vector normalized with L[0] = 0
    Result decode(const std::vector<double>& llr, OpCounters* ops = nullptr) const {
        const int q = gf_.q();
        const int np = constr_.n_sym;
        if (llr.size() != static_cast<std::size_t>(np) * q)
            throw std::invalid_argument("decoder: score matrix must be N' x q");

        std::vector<detail::PathMemory> paths(1);
        shape_.reset(paths[0]);
        paths.reserve(static_cast<std::size_t>(list_size_));
        std::uint64_t examined = 0;

        struct Candidate {
            double metric;
            int src;
            Symbol eta;
        };
        std::vector<Candidate> cands;
        std::vector<int> first_of_src;

        for (int phi = 0; phi < np; ++phi) {
            for (auto& p : paths)
                shape_.compute_scores(p, phi, llr.data(), gamma_times_.data(), clamp_);
            if (ops) hook_stage_ops(phi, ops);

            const bool frozen = !constr_.is_info[static_cast<std::size_t>(phi)];
            const bool direct = direct_enabled_ &&
                                constr_.is_direct[static_cast<std::size_t>(phi)] != 0;
            const std::uint64_t npaths = paths.size();

            if (frozen) {
                for (auto& p : paths) {
                    const double* L = shape_.leaf_scores(p);
                    p.metric = path_metric_update(p.metric, L, 0, q);
                    shape_.push_decision(p, phi, 0, gamma_times_.data());
                }
                examined += npaths;
                if (ops) {
                    ops->paths += npaths;
                    ops->add += 2 * npaths;
                    ops->cmp += static_cast<std::uint64_t>(q - 1) * npaths;
                }
            } else if (direct) {
                for (auto& p : paths)
                    shape_.push_decision(p, phi, hard_decision(shape_.leaf_scores(p), q),
                                         gamma_times_.data());
            } else {
                cands.clear();
                for (int src = 0; src < static_cast<int>(npaths); ++src) {
                    const double* L = shape_.leaf_scores(paths[static_cast<std::size_t>(src)]);
                    double mn = L[0];
                    for (int t = 1; t < q; ++t) mn = std::min(mn, L[t]);
                    const double base = paths[static_cast<std::size_t>(src)].metric - mn;
                    for (int eta = 0; eta < q; ++eta)
                        cands.push_back({base + L[eta], src, static_cast<Symbol>(eta)});
                }
                examined += npaths * static_cast<std::uint64_t>(q);
                if (ops) {
                    const std::uint64_t c = npaths * static_cast<std::uint64_t>(q);
                    ops->paths += c;
                    ops->add += 2 * c;
                    ops->cmp += static_cast<std::uint64_t>(q - 1) * c;
                }

                const std::size_t keep =
                    std::min<std::size_t>(static_cast<std::size_t>(list_size_), cands.size());
                std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
                    if (a.metric != b.metric) return a.metric < b.metric;
                    if (a.src != b.src) return a.src < b.src;
                    return a.eta < b.eta;
                });
                cands.resize(keep);
                // survivors grouped by source path, selection order preserved
                std::stable_sort(cands.begin(), cands.end(),
                                 [](const Candidate& a, const Candidate& b) { return a.src < b.src; });

                std::vector<detail::PathMemory> next;
                next.reserve(keep);
                first_of_src.assign(npaths, -1);
                for (const auto& c : cands) {
                    if (first_of_src[static_cast<std::size_t>(c.src)] < 0) {
                        first_of_src[static_cast<std::size_t>(c.src)] =
                            static_cast<int>(next.size());
                        next.push_back(std::move(paths[static_cast<std::size_t>(c.src)]));
                    } else {
                        next.push_back(next[static_cast<std::size_t>(
                            first_of_src[static_cast<std::size_t>(c.src)])]);
                    }
                    next.back().metric = c.metric;
                }
                paths = std::move(next);
                for (std::size_t i = 0; i < paths.size(); ++i)
                    shape_.push_decision(paths[i], phi, cands[i].eta, gamma_times_.data());
            }
            if (ops) hook_merge_ops(phi, ops);
        }

        return finish(paths, examined);
    }

private:
    Result finish(std::vector<detail::PathMemory>& paths, std::uint64_t examined) const {
        Result r;
        r.paths_examined = examined;
        const std::size_t L = paths.size();
        r.messages.resize(L);
        r.codeword_bits.resize(L);
        r.metrics.resize(L);
        r.crc_ok.resize(L);
        for (std::size_t l = 0; l < L; ++l) {
            SymVec payload(info_positions_.size());
            for (std::size_t i = 0; i < info_positions_.size(); ++i)
                payload[i] =
                    paths[l].decisions[static_cast<std::size_t>(info_positions_[i])];
            r.messages[l] = symbols_to_bits(payload, gf_);
            r.codeword_bits[l] = symbols_to_bits(paths[l].root, gf_);
            r.metrics[l] = paths[l].metric;
            r.crc_ok[l] = crc_check(r.messages[l], crc_) ? 1 : 0;
        }
        r.selected = select_path(r);
        return r;
    }

    static int select_path(const Result& r) {
        int best = -1;
        for (std::size_t l = 0; l < r.metrics.size(); ++l) {
            if (!r.crc_ok[l]) continue;
            if (best < 0 || r.metrics[l] < r.metrics[static_cast<std::size_t>(best)])
                best = static_cast<int>(l);
        }
        if (best >= 0) return best;
        best = 0;
        for (std::size_t l = 1; l < r.metrics.size(); ++l)
            if (r.metrics[l] < r.metrics[static_cast<std::size_t>(best)])
                best = static_cast<int>(l);
        return best;
    }

    // fixed-lane accounting: every depth entered at this leaf costs one
    // vector update per position per configured lane
    void hook_stage_ops(int phi, OpCounters* ops) const {
        const std::uint64_t q = static_cast<std::uint64_t>(gf_.q());
        const std::uint64_t lanes = static_cast<std::uint64_t>(list_size_);
        for (int d = shape_.chain_start(phi); d <= shape_.omega; ++d) {
            const std::uint64_t b = static_cast<std::uint64_t>(shape_.bs(d));
            ops->add += (2 * q + 1) * lanes * b;
            ops->cmp += 2 * (q - 1) * lanes * b;
        }
    }

    void hook_merge_ops(int phi, OpCounters* ops) const {
        const std::uint64_t lanes = static_cast<std::uint64_t>(list_size_);
        int node = phi;
        for (int d = shape_.omega; d >= 1 && (node & 1); --d, node >>= 1)
            ops->xr += lanes * static_cast<std::uint64_t>(shape_.bs(d));
    }

    const GaloisField& gf_;
    CodeConstruction constr_;
    CrcSpec crc_;
    int list_size_;
    bool direct_enabled_;
    double clamp_;
    std::vector<Symbol> gamma_times_;
    detail::TreeShape shape_;
    std::vector<int> info_positions_;
};

// Genie-aided single-pass decode for code construction: at every position
// the tentative argmin is compared against the transmitted symbol, the
// mismatch is recorded, and the true symbol is pushed so later positions
// see a clean prefix.
inline void genie_decode_errors(const GaloisField& gf, Symbol gamma, double clamp,
                                const std::vector<double>& llr, const SymVec& truth,
                                std::vector<std::uint32_t>& errors) {
    const int q = gf.q();
    const int np = static_cast<int>(truth.size());
    if (llr.size() != static_cast<std::size_t>(np) * q)
        throw std::invalid_argument("genie: score matrix must be N' x q");
    if (errors.size() != truth.size())
        throw std::invalid_argument("genie: error accumulator size mismatch");
    const auto gt = scaled_table(gf, gamma);
    detail::TreeShape shape;
    shape.init(np, q);
    detail::PathMemory p;
    shape.reset(p);
    for (int phi = 0; phi < np; ++phi) {
        shape.compute_scores(p, phi, llr.data(), gt.data(), clamp);
        if (hard_decision(shape.leaf_scores(p), q) != truth[static_cast<std::size_t>(phi)])
            ++errors[static_cast<std::size_t>(phi)];
        shape.push_decision(p, phi, truth[static_cast<std::size_t>(phi)], gt.data());
    }
}

} // namespace nbscma
