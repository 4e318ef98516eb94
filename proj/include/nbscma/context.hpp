// LinkContext bundles everything both ends of the link agree on: system
// parameters, field tables, codebook, code construction, and the per-user
// interleavers. Built once, shared read-only.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "nbscma/channel.hpp"
#include "nbscma/codebook.hpp"
#include "nbscma/config.hpp"
#include "nbscma/construction.hpp"
#include "nbscma/crc.hpp"
#include "nbscma/gf.hpp"
#include "nbscma/txchain.hpp"

namespace nbscma {

struct LinkContext {
    SystemConfig cfg;
    GaloisField field;
    CrcSpec crc;
    Codebook cb;
    CodeConstruction constr;
    Symbol gamma;
    std::vector<Permutation> perms; // one interleaver per user, length N

    LinkContext(SystemConfig cfg_, Codebook cb_, CodeConstruction constr_)
        : cfg(std::move(cfg_)), field(init_field(cfg)), crc(CrcSpec::for_len(cfg.crc_len)),
          cb(std::move(cb_)), constr(std::move(constr_)),
          gamma(cfg.effective_gamma(field)) {
        if (cb.J != cfg.J || cb.K != cfg.K || cb.M != cfg.M)
            throw std::invalid_argument("context: codebook dimensions disagree with config");
        if (constr.q != cfg.q || constr.n_sym != cfg.n_sym || constr.d_sym != cfg.d_sym)
            throw std::invalid_argument("context: construction does not match config sizes");
        if (gamma == 0)
            throw std::invalid_argument("context: gamma must be a nonzero field element");
        perms.reserve(static_cast<std::size_t>(cfg.J));
        for (int j = 0; j < cfg.J; ++j)
            perms.push_back(make_interleaver(cfg.interleaver_seed, j,
                                             static_cast<std::size_t>(cfg.n_bits)));
    }

private:
    static GaloisField init_field(SystemConfig& c) {
        c.derive();
        return GaloisField(c.p);
    }
};

struct UserTx {
    BitVec info;             // A payload bits
    BitVec message;          // D = payload + crc
    SymVec payload_syms;     // D'
    SymVec placed;           // N' with zeros on frozen positions
    SymVec codeword_syms;    // N'
    BitVec codeword_bits;    // N
    BitVec tx_bits;          // N after interleaving
    std::vector<int> labels; // E codebook labels
};

inline UserTx encode_user(const LinkContext& ctx, int user, BitVec info) {
    if (static_cast<int>(info.size()) != ctx.cfg.a_bits)
        throw std::invalid_argument("encode_user: payload must have A bits");
    UserTx tx;
    tx.info = std::move(info);
    tx.message = crc_encode(tx.info, ctx.crc);
    tx.payload_syms = bits_to_symbols(tx.message, ctx.field);
    tx.placed = place_symbols(tx.payload_syms, ctx.constr);
    tx.codeword_syms = polar_encode(tx.placed, ctx.gamma, ctx.field);
    tx.codeword_bits = symbols_to_bits(tx.codeword_syms, ctx.field);
    tx.tx_bits = interleave(tx.codeword_bits, ctx.perms[static_cast<std::size_t>(user)]);
    tx.labels = scma_labels(tx.tx_bits, ctx.cfg.bits_per_cw);
    return tx;
}

struct FrameTx {
    std::vector<UserTx> users;
    std::vector<std::vector<int>> labels; // per user, for transmit()
};

inline FrameTx encode_frame(const LinkContext& ctx, Rng& payload_rng) {
    FrameTx f;
    f.users.reserve(static_cast<std::size_t>(ctx.cfg.J));
    f.labels.reserve(static_cast<std::size_t>(ctx.cfg.J));
    for (int j = 0; j < ctx.cfg.J; ++j) {
        BitVec info(static_cast<std::size_t>(ctx.cfg.a_bits));
        for (auto& b : info) b = static_cast<std::uint8_t>(payload_rng.next_bit());
        f.users.push_back(encode_user(ctx, j, std::move(info)));
        f.labels.push_back(f.users.back().labels);
    }
    return f;
}

inline double frame_n0(const LinkContext& ctx, double ebn0_db) {
    return ebn0_to_n0(ebn0_db, ctx.cb.codeword_energy, ctx.cfg.bits_per_cw,
                      ctx.cfg.code_rate);
}

} // namespace nbscma
