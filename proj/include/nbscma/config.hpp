// Flat key-value configuration for the uplink simulation.
// See README for the key reference; derive() computes all dependent sizes
// and rejects inconsistent combinations with the offending key named.
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nbscma/gf.hpp"

namespace nbscma {

enum class ChannelModel { awgn, rayleigh };
enum class ReceiverKind { nsd, isd };

struct SystemConfig {
    // primary knobs
    int J = 6;                 // users
    int K = 4;                 // resources
    int M = 4;                 // codebook size
    int q = 16;                // field order
    int n_sym = 64;            // codeword length in symbols (N')
    int rate_num = 1;          // target code rate D/N as a fraction
    int rate_den = 2;
    int crc_len = 16;
    Symbol gamma = 0;          // kernel multiplier; 0 = use alpha of the field
    ChannelModel channel = ChannelModel::awgn;
    std::uint64_t interleaver_seed = 1;
    double llr_clamp = 1e30;

    // derived by derive()
    int p = 0;       // bits per symbol
    int n_bits = 0;  // N = p * N'
    int d_bits = 0;  // D = N * rate
    int d_sym = 0;   // D' = D / p
    int a_bits = 0;  // A = D - crc_len
    int bits_per_cw = 0; // R = log2(M)
    int n_cw = 0;    // E = N / R, SCMA codewords per frame per user
    double code_rate = 0.0;

    void derive() {
        auto ilog2 = [](int v) {
            int r = 0;
            while ((1 << r) < v) ++r;
            return ((1 << r) == v) ? r : -1;
        };
        p = ilog2(q);
        if (p < 1 || p > 8) throw std::invalid_argument("config: q must be 2^p, p in [1, 8]");
        bits_per_cw = ilog2(M);
        if (bits_per_cw < 1) throw std::invalid_argument("config: M must be a power of two >= 2");
        if (J < 1 || K < 1) throw std::invalid_argument("config: J and K must be positive");
        if (n_sym < 2 || ilog2(n_sym) < 0)
            throw std::invalid_argument("config: N_prime must be a power of two >= 2");
        if (rate_num < 1 || rate_den < 1 || rate_num >= rate_den)
            throw std::invalid_argument("config: rate must be a fraction in (0, 1)");
        n_bits = p * n_sym;
        if ((static_cast<long long>(n_bits) * rate_num) % rate_den != 0)
            throw std::invalid_argument("config: rate * N must be an integer bit count");
        d_bits = static_cast<int>(static_cast<long long>(n_bits) * rate_num / rate_den);
        if (d_bits % p != 0)
            throw std::invalid_argument("config: info bits D must be divisible by bits per symbol");
        d_sym = d_bits / p;
        a_bits = d_bits - crc_len;
        if (a_bits < 1)
            throw std::invalid_argument("config: crc_len leaves no payload bits");
        if (n_bits % bits_per_cw != 0)
            throw std::invalid_argument("config: N must be divisible by log2(M)");
        n_cw = n_bits / bits_per_cw;
        code_rate = static_cast<double>(d_bits) / n_bits;
        (void)CrcSpecCheck();
        if (gamma >= q) throw std::invalid_argument("config: gamma must be a field element");
        if (!(llr_clamp > 0)) throw std::invalid_argument("config: llr_clamp must be positive");
    }

    Symbol effective_gamma(const GaloisField& gf) const {
        if (gamma == 0) return gf.alpha();
        return gamma;
    }

private:
    int CrcSpecCheck() const {
        if (crc_len != 16 && crc_len != 24)
            throw std::invalid_argument("config: crc_len must be 16 or 24");
        return 0;
    }
};

struct ReceiverConfig {
    ReceiverKind algorithm = ReceiverKind::nsd;
    int iterations = 5;       // outer detector/decoder rounds (T)
    double epsilon = 0.4;     // damping on decoder extrinsics
    int list_size = 8;
    bool early_term = true;

    void validate() const {
        if (iterations < 1) throw std::invalid_argument("config: T must be >= 1");
        if (!(epsilon > 0.0 && epsilon <= 1.0))
            throw std::invalid_argument("config: epsilon must be in (0, 1]");
        if (list_size < 1) throw std::invalid_argument("config: list_size must be >= 1");
    }
};

struct ConstructionParams {
    double ebn0_db = 2.0;
    std::uint64_t trials = 10000;
    double g_th = 0.5;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("config: construction_trials must be >= 1");
        if (g_th < 0.0) throw std::invalid_argument("config: g_th must be >= 0");
    }
};

struct Config {
    SystemConfig sys;
    ReceiverConfig rx;
    ConstructionParams constr;
    std::string codebook_path; // optional default for the CLI
};

namespace detail {

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (...) {
        throw std::invalid_argument("config: bad integer for key '" + key + "': " + v);
    }
}

inline double parse_f64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (...) {
        throw std::invalid_argument("config: bad number for key '" + key + "': " + v);
    }
}

} // namespace detail

inline Config parse_config(std::istream& in) {
    Config c;
    std::string line;
    int lineno = 0;
    bool construction_ebn0_set = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq, value;
        ls >> eq;
        if (eq == "=") ls >> value; else value = eq;
        if (value.empty())
            throw std::invalid_argument("config: missing value for key '" + key +
                                        "' on line " + std::to_string(lineno));

        using detail::parse_f64;
        using detail::parse_u64;
        if (key == "J") c.sys.J = static_cast<int>(parse_u64(key, value));
        else if (key == "K") c.sys.K = static_cast<int>(parse_u64(key, value));
        else if (key == "M") c.sys.M = static_cast<int>(parse_u64(key, value));
        else if (key == "q") c.sys.q = static_cast<int>(parse_u64(key, value));
        else if (key == "N_prime") c.sys.n_sym = static_cast<int>(parse_u64(key, value));
        else if (key == "rate") {
            const auto slash = value.find('/');
            if (slash == std::string::npos)
                throw std::invalid_argument("config: rate must look like 1/2");
            c.sys.rate_num = static_cast<int>(parse_u64(key, value.substr(0, slash)));
            c.sys.rate_den = static_cast<int>(parse_u64(key, value.substr(slash + 1)));
        }
        else if (key == "crc_len") c.sys.crc_len = static_cast<int>(parse_u64(key, value));
        else if (key == "gamma") c.sys.gamma = static_cast<Symbol>(parse_u64(key, value));
        else if (key == "channel") {
            if (value == "awgn") c.sys.channel = ChannelModel::awgn;
            else if (value == "rayleigh") c.sys.channel = ChannelModel::rayleigh;
            else throw std::invalid_argument("config: channel must be awgn or rayleigh");
        }
        else if (key == "interleaver_seed") c.sys.interleaver_seed = parse_u64(key, value);
        else if (key == "llr_clamp") c.sys.llr_clamp = parse_f64(key, value);
        else if (key == "algorithm") {
            if (value == "nsd") c.rx.algorithm = ReceiverKind::nsd;
            else if (value == "isd") c.rx.algorithm = ReceiverKind::isd;
            else throw std::invalid_argument("config: algorithm must be nsd or isd");
        }
        else if (key == "T") c.rx.iterations = static_cast<int>(parse_u64(key, value));
        else if (key == "epsilon") c.rx.epsilon = parse_f64(key, value);
        else if (key == "list_size") c.rx.list_size = static_cast<int>(parse_u64(key, value));
        else if (key == "early_term") c.rx.early_term = parse_u64(key, value) != 0;
        else if (key == "construction_ebn0_db") {
            c.constr.ebn0_db = parse_f64(key, value);
            construction_ebn0_set = true;
        }
        else if (key == "construction_trials") c.constr.trials = parse_u64(key, value);
        else if (key == "g_th") c.constr.g_th = parse_f64(key, value);
        else if (key == "codebook") c.codebook_path = value;
        else throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                         std::to_string(lineno));
    }
    if (!construction_ebn0_set && c.sys.channel == ChannelModel::rayleigh)
        c.constr.ebn0_db = 4.0;
    c.sys.derive();
    c.rx.validate();
    c.constr.validate();
    return c;
}

inline Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    return parse_config(f);
}

} // namespace nbscma
