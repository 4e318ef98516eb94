// Sparse multiuser codebook: K x J indicator matrix F plus one K-dim complex
// codeword per (user, label). The loader checks sparsity/regularity and
// rescales every user to average codeword energy d_u.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbscma {

using cplx = std::complex<double>;

struct Codebook {
    int K = 0, J = 0, M = 0;
    int d_u = 0; // resources per user (column weight of F)
    int d_r = 0; // users per resource (row weight of F)
    std::vector<std::uint8_t> F;         // K*J, row-major
    std::vector<cplx> w;                 // J*M*K, w[(j*M + m)*K + k]
    std::vector<std::vector<int>> users_on_resource; // per k, ascending
    std::vector<std::vector<int>> resources_of_user; // per j, ascending
    double codeword_energy = 0.0;        // average ||w_jm||^2 after scaling

    std::uint8_t indicator(int k, int j) const { return F[static_cast<std::size_t>(k) * J + j]; }
    const cplx* codeword(int j, int m) const {
        return &w[(static_cast<std::size_t>(j) * M + m) * K];
    }
};

namespace detail {

inline double next_number(std::istream& in, const char* what) {
    for (;;) {
        int ch = in.peek();
        if (ch == EOF) throw std::runtime_error(std::string("codebook: truncated, expected ") + what);
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        if (std::isspace(ch)) { in.get(); continue; }
        break;
    }
    double v;
    if (!(in >> v)) throw std::runtime_error(std::string("codebook: bad number, expected ") + what);
    return v;
}

} // namespace detail

// Text format: K J M, then F row-major as 0/1, then for each user M rows of
// K (re, im) pairs. '#' starts a comment.
inline Codebook parse_codebook(std::istream& in) {
    using detail::next_number;
    Codebook cb;
    cb.K = static_cast<int>(next_number(in, "K"));
    cb.J = static_cast<int>(next_number(in, "J"));
    cb.M = static_cast<int>(next_number(in, "M"));
    if (cb.K < 1 || cb.J < 1 || cb.M < 2)
        throw std::runtime_error("codebook: header K J M out of range");

    cb.F.resize(static_cast<std::size_t>(cb.K) * cb.J);
    for (auto& f : cb.F) {
        const double v = next_number(in, "indicator entry");
        if (v != 0.0 && v != 1.0) throw std::runtime_error("codebook: indicator entries must be 0/1");
        f = static_cast<std::uint8_t>(v);
    }

    cb.w.resize(static_cast<std::size_t>(cb.J) * cb.M * cb.K);
    for (auto& e : cb.w) {
        const double re = next_number(in, "codeword re");
        const double im = next_number(in, "codeword im");
        e = {re, im};
    }

    // regularity: constant column and row weights
    cb.resources_of_user.assign(static_cast<std::size_t>(cb.J), {});
    cb.users_on_resource.assign(static_cast<std::size_t>(cb.K), {});
    for (int k = 0; k < cb.K; ++k)
        for (int j = 0; j < cb.J; ++j)
            if (cb.indicator(k, j)) {
                cb.users_on_resource[static_cast<std::size_t>(k)].push_back(j);
                cb.resources_of_user[static_cast<std::size_t>(j)].push_back(k);
            }
    cb.d_u = static_cast<int>(cb.resources_of_user[0].size());
    cb.d_r = static_cast<int>(cb.users_on_resource[0].size());
    for (const auto& u : cb.resources_of_user)
        if (static_cast<int>(u.size()) != cb.d_u)
            throw std::runtime_error("codebook: users must occupy the same number of resources");
    for (const auto& r : cb.users_on_resource)
        if (static_cast<int>(r.size()) != cb.d_r)
            throw std::runtime_error("codebook: resources must carry the same number of users");
    if (cb.d_u < 1 || cb.d_r < 1)
        throw std::runtime_error("codebook: indicator matrix has an empty row or column");

    // sparsity: codeword entries live exactly on the indicated resources
    for (int j = 0; j < cb.J; ++j)
        for (int m = 0; m < cb.M; ++m)
            for (int k = 0; k < cb.K; ++k) {
                const double mag = std::abs(cb.codeword(j, m)[k]);
                if (!cb.indicator(k, j) && mag > 1e-12)
                    throw std::runtime_error("codebook: nonzero entry off the user's resources (user " +
                                             std::to_string(j + 1) + ")");
            }
    for (int j = 0; j < cb.J; ++j)
        for (int k : cb.resources_of_user[static_cast<std::size_t>(j)]) {
            bool any = false;
            for (int m = 0; m < cb.M; ++m)
                any = any || std::abs(cb.codeword(j, m)[k]) > 1e-12;
            if (!any)
                throw std::runtime_error("codebook: user " + std::to_string(j + 1) +
                                         " is silent on an indicated resource");
        }

    // scale each user to average codeword energy d_u
    for (int j = 0; j < cb.J; ++j) {
        double e = 0.0;
        for (int m = 0; m < cb.M; ++m)
            for (int k = 0; k < cb.K; ++k)
                e += std::norm(cb.codeword(j, m)[k]);
        e /= cb.M;
        if (e <= 0.0) throw std::runtime_error("codebook: user with zero energy");
        const double s = std::sqrt(cb.d_u / e);
        for (int m = 0; m < cb.M; ++m)
            for (int k = 0; k < cb.K; ++k)
                cb.w[(static_cast<std::size_t>(j) * cb.M + m) * cb.K + k] *= s;
    }
    cb.codeword_energy = cb.d_u;
    return cb;
}

inline Codebook load_codebook(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("codebook: cannot open " + path);
    return parse_codebook(f);
}

} // namespace nbscma
