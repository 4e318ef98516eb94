// GF(2^p) arithmetic via log/antilog tables, p in [1, 8].
// Symbols are integers in [0, q); addition is XOR, multiplication goes
// through discrete logs of a primitive element.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbscma {

using Symbol = std::uint16_t;

// Default primitive polynomials, index p = 1..8, mask includes the x^p term.
inline std::uint32_t default_primitive_poly(int p) {
    static constexpr std::array<std::uint32_t, 9> polys = {
        0,
        0b11,        // x + 1
        0b111,       // x^2 + x + 1
        0b1011,      // x^3 + x + 1
        0b10011,     // x^4 + x + 1
        0b100101,    // x^5 + x^2 + 1
        0b1000011,   // x^6 + x + 1
        0b10001001,  // x^7 + x^3 + 1
        0b100011101, // x^8 + x^4 + x^3 + x^2 + 1
    };
    if (p < 1 || p > 8) throw std::invalid_argument("field: p must be in [1, 8]");
    return polys[static_cast<std::size_t>(p)];
}

class GaloisField {
public:
    explicit GaloisField(int p, std::uint32_t prim_poly = 0)
        : p_(p), q_(1 << p), poly_(prim_poly ? prim_poly : default_primitive_poly(p)) {
        if (p < 1 || p > 8) throw std::invalid_argument("field: p must be in [1, 8]");
        if ((poly_ >> p) != 1u)
            throw std::invalid_argument("field: primitive polynomial degree must equal p");
        build_tables();
    }

    int p() const { return p_; }
    int q() const { return q_; }
    std::uint32_t primitive_poly() const { return poly_; }

    // alpha = x, the root the tables are built on
    Symbol alpha() const { return antilog_[1]; }

    static Symbol add(Symbol a, Symbol b) { return static_cast<Symbol>(a ^ b); }

    Symbol mul(Symbol a, Symbol b) const {
        if (a == 0 || b == 0) return 0;
        int s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return antilog_[static_cast<std::size_t>(s)];
    }

    Symbol inv(Symbol a) const {
        if (a == 0) throw std::domain_error("field: inverse of zero");
        return antilog_[static_cast<std::size_t>((q_ - 1 - log_[a]) % (q_ - 1))];
    }

    int log(Symbol a) const {
        if (a == 0) throw std::domain_error("field: log of zero");
        return log_[a];
    }
    Symbol antilog(int k) const {
        return antilog_[static_cast<std::size_t>(k % (q_ - 1))];
    }

    // MSB-first bit decomposition: bit i of value theta is (theta >> (p-1-i)) & 1.
    void symbol_to_bits(Symbol theta, std::uint8_t* out) const {
        for (int i = 0; i < p_; ++i)
            out[i] = static_cast<std::uint8_t>((theta >> (p_ - 1 - i)) & 1);
    }
    Symbol bits_to_symbol(const std::uint8_t* bits) const {
        Symbol v = 0;
        for (int i = 0; i < p_; ++i)
            v = static_cast<Symbol>((v << 1) | (bits[i] & 1));
        return v;
    }

private:
    void build_tables() {
        antilog_.assign(static_cast<std::size_t>(q_ - 1), 0);
        log_.assign(static_cast<std::size_t>(q_), -1);
        std::uint32_t v = 1;
        for (int i = 0; i < q_ - 1; ++i) {
            if (log_[v] != -1)
                throw std::invalid_argument("field: polynomial 0x" + to_hex(poly_) +
                                            " is not primitive");
            antilog_[static_cast<std::size_t>(i)] = static_cast<Symbol>(v);
            log_[v] = i;
            v <<= 1;
            if (v & (1u << p_)) v ^= poly_;
        }
        if (q_ > 2 && log_[1] != 0)
            throw std::invalid_argument("field: polynomial is not primitive");
    }

    static std::string to_hex(std::uint32_t x) {
        static const char* digits = "0123456789abcdef";
        std::string s;
        do { s.insert(s.begin(), digits[x & 15]); x >>= 4; } while (x);
        return s;
    }

    int p_, q_;
    std::uint32_t poly_;
    std::vector<Symbol> antilog_; // size q-1, antilog[k] = alpha^k
    std::vector<int> log_;        // size q, log[0] unused (-1)
};

} // namespace nbscma
