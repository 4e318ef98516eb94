// Code construction result: per-position genie error rates, the selected
// info set, and the subset of info positions reliable enough to decide
// without path splitting. Text round-trips byte-identically.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbscma {

struct CodeConstruction {
    int q = 0;
    int n_sym = 0;  // N'
    int d_sym = 0;  // D', info symbols
    double ebn0_db = 0.0;
    std::string channel = "awgn";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double g_th = 0.0;

    std::vector<double> g;            // per-position genie symbol error rate
    std::vector<std::uint8_t> is_info;   // info-set mask, size N'
    std::vector<std::uint8_t> is_direct; // no-split mask (subset of info), size N'

    double beta() const {
        const auto nb = std::count(is_direct.begin(), is_direct.end(), std::uint8_t{1});
        return d_sym > 0 ? static_cast<double>(nb) / d_sym : 0.0;
    }

    std::vector<int> info_positions() const {
        std::vector<int> v;
        for (int i = 0; i < n_sym; ++i)
            if (is_info[static_cast<std::size_t>(i)]) v.push_back(i);
        return v;
    }

    // no-split mask the same g vector would give at a different threshold
    std::vector<std::uint8_t> direct_mask_for(double threshold) const {
        std::vector<std::uint8_t> m(static_cast<std::size_t>(n_sym), 0);
        for (int i = 0; i < n_sym; ++i)
            m[static_cast<std::size_t>(i)] =
                (is_info[static_cast<std::size_t>(i)] && g[static_cast<std::size_t>(i)] <= threshold) ? 1 : 0;
        return m;
    }
};

// Picks the d_sym positions with the smallest error rate; ties go to the
// larger index (later positions polarize better).
inline void select_info_set(CodeConstruction& c) {
    std::vector<int> order(static_cast<std::size_t>(c.n_sym));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ga = c.g[static_cast<std::size_t>(a)];
        const double gb = c.g[static_cast<std::size_t>(b)];
        if (ga != gb) return ga < gb;
        return a > b;
    });
    c.is_info.assign(static_cast<std::size_t>(c.n_sym), 0);
    for (int i = 0; i < c.d_sym; ++i)
        c.is_info[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    c.is_direct = c.direct_mask_for(c.g_th);
}

inline void save_construction(const CodeConstruction& c, std::ostream& out) {
    char buf[64];
    out << "q " << c.q << "\n";
    out << "N_prime " << c.n_sym << "\n";
    out << "D_prime " << c.d_sym << "\n";
    std::snprintf(buf, sizeof buf, "%.6f", c.ebn0_db);
    out << "ebn0_db " << buf << "\n";
    out << "channel " << c.channel << "\n";
    out << "trials " << c.trials << "\n";
    out << "seed " << c.seed << "\n";
    std::snprintf(buf, sizeof buf, "%.6f", c.g_th);
    out << "g_th " << buf << "\n";
    out << "index g info direct\n";
    for (int i = 0; i < c.n_sym; ++i) {
        std::snprintf(buf, sizeof buf, "%.9e", c.g[static_cast<std::size_t>(i)]);
        out << i << " " << buf << " " << int(c.is_info[static_cast<std::size_t>(i)]) << " "
            << int(c.is_direct[static_cast<std::size_t>(i)]) << "\n";
    }
}

inline void save_construction(const CodeConstruction& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("construction: cannot write " + path);
    save_construction(c, f);
}

inline CodeConstruction parse_construction(std::istream& in) {
    CodeConstruction c;
    std::string key;
    auto need = [&](const char* want) {
        if (!(in >> key) || key != want)
            throw std::runtime_error(std::string("construction: expected '") + want + "' header");
    };
    need("q"); in >> c.q;
    need("N_prime"); in >> c.n_sym;
    need("D_prime"); in >> c.d_sym;
    need("ebn0_db"); in >> c.ebn0_db;
    need("channel"); in >> c.channel;
    need("trials"); in >> c.trials;
    need("seed"); in >> c.seed;
    need("g_th"); in >> c.g_th;
    need("index"); in >> key >> key >> key; // column labels
    if (!in) throw std::runtime_error("construction: malformed header");
    if (c.n_sym < 1 || c.d_sym < 1 || c.d_sym > c.n_sym)
        throw std::runtime_error("construction: bad sizes in header");

    c.g.assign(static_cast<std::size_t>(c.n_sym), 0.0);
    c.is_info.assign(static_cast<std::size_t>(c.n_sym), 0);
    c.is_direct.assign(static_cast<std::size_t>(c.n_sym), 0);
    for (int i = 0; i < c.n_sym; ++i) {
        int idx, info, direct;
        double gi;
        if (!(in >> idx >> gi >> info >> direct) || idx != i)
            throw std::runtime_error("construction: bad row " + std::to_string(i));
        c.g[static_cast<std::size_t>(i)] = gi;
        c.is_info[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(info != 0);
        c.is_direct[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(direct != 0);
    }
    int ninfo = 0;
    for (int i = 0; i < c.n_sym; ++i) {
        if (c.is_direct[static_cast<std::size_t>(i)] && !c.is_info[static_cast<std::size_t>(i)])
            throw std::runtime_error("construction: direct position outside the info set");
        ninfo += c.is_info[static_cast<std::size_t>(i)];
    }
    if (ninfo != c.d_sym)
        throw std::runtime_error("construction: info mask does not match D_prime");
    return c;
}

inline CodeConstruction load_construction(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("construction: cannot open " + path);
    return parse_construction(f);
}

} // namespace nbscma
