// Monte-Carlo link simulation driver. Frames are deterministic functions
// of (seed, Eb/N0 point, frame index), processed in fixed-size batches;
// workers only parallelize inside a batch and all accumulators are
// integers, so the output is byte-identical for any worker count.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nbscma/context.hpp"
#include "nbscma/jidd.hpp"
#include "nbscma/metrics.hpp"

namespace nbscma {

struct SimOptions {
    double ebn0_db = 0.0;
    std::uint64_t frames = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t target_frame_errors = 100; // 0 = always run the full budget
    bool zero_noise = false;
};

struct PointResult {
    double ebn0_db = 0.0;
    ErrorStats stats;
    OpCounters ops;                     // summed over all executed rounds
    std::uint64_t paths_per_decode = 0; // constant per decode, from traces
};

namespace detail {

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    std::uint64_t iterations = 0;
    bool frame_error = false;
    OpCounters ops;
    std::uint64_t paths_per_decode = 0;
};

inline FrameOutcome run_one_frame(const LinkContext& ctx, const Receiver& rx,
                                  double n0, bool zero_noise, std::uint64_t seed,
                                  std::uint64_t point_key, std::uint64_t frame) {
    Rng rng = Rng::stream(seed, point_key, frame);
    FrameTx tx = encode_frame(ctx, rng);
    ChannelDraw chan = draw_channel(ctx.cfg.channel, ctx.cfg.J, ctx.cfg.n_cw,
                                    ctx.cfg.K, rng);
    const std::vector<cplx> y = transmit(tx.labels, ctx.cb, chan, n0, rng, zero_noise);
    const FrameResult res = rx.run_frame(y, chan, n0);

    FrameOutcome o;
    for (int j = 0; j < ctx.cfg.J; ++j) {
        const BitVec& sent = tx.users[static_cast<std::size_t>(j)].info;
        const BitVec& got = res.info_bits[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < sent.size(); ++i)
            o.bit_errors += sent[i] != got[i];
    }
    o.frame_error = o.bit_errors != 0;
    o.iterations = static_cast<std::uint64_t>(res.trace.iterations_used);
    for (const auto& it : res.trace.ops) o.ops += it;
    o.paths_per_decode = res.trace.paths_per_decode;
    return o;
}

inline std::uint64_t point_stream_key(double ebn0_db, bool zero_noise) {
    const auto milli = static_cast<std::int64_t>(std::llround(ebn0_db * 1000.0));
    std::uint64_t key = static_cast<std::uint64_t>(milli + (1LL << 40));
    if (zero_noise) key |= 1ULL << 63;
    return key;
}

} // namespace detail

inline PointResult simulate_point(const LinkContext& ctx, const ReceiverConfig& rcfg,
                                  const SimOptions& opt) {
    const Receiver rx(ctx, rcfg);
    const double n0 = opt.zero_noise ? 1e-12 : frame_n0(ctx, opt.ebn0_db);
    const std::uint64_t key = detail::point_stream_key(opt.ebn0_db, opt.zero_noise);

    PointResult pr;
    pr.ebn0_db = opt.ebn0_db;
    const std::uint64_t bits_per_frame =
        static_cast<std::uint64_t>(ctx.cfg.J) * static_cast<std::uint64_t>(ctx.cfg.a_bits);

    constexpr std::uint64_t batch = 64; // stopping is checked on batch edges
    const int workers = std::max(1, opt.workers);
    std::uint64_t done = 0;
    while (done < opt.frames) {
        const std::uint64_t n = std::min(batch, opt.frames - done);
        std::vector<detail::FrameOutcome> outcomes(n);
        auto work = [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t i = begin; i < end; ++i)
                outcomes[i] = detail::run_one_frame(ctx, rx, n0, opt.zero_noise,
                                                    opt.seed, key, done + i);
        };
        if (workers == 1 || n == 1) {
            work(0, n);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t step = (n + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t b = std::min<std::uint64_t>(w * step, n);
                const std::uint64_t e = std::min<std::uint64_t>(b + step, n);
                if (b < e) pool.emplace_back(work, b, e);
            }
            for (auto& t : pool) t.join();
        }
        for (const auto& o : outcomes) {
            pr.stats.frames += 1;
            pr.stats.bits += bits_per_frame;
            pr.stats.bit_errors += o.bit_errors;
            pr.stats.frame_errors += o.frame_error;
            pr.stats.iterations += o.iterations;
            pr.ops += o.ops;
            pr.paths_per_decode = o.paths_per_decode;
        }
        done += n;
        if (opt.target_frame_errors > 0 && pr.stats.frame_errors >= opt.target_frame_errors)
            break;
    }
    return pr;
}

// ---- CSV schema ----

struct CsvRow {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_iters = 0.0;
    std::uint64_t add = 0, mul = 0, cmp = 0, xr = 0, ex = 0; // per outer round
    double latency_cycles = 0.0;
    double latency_gain = 0.0;
};

inline const char* csv_header() {
    return "ebn0_db,frames,bit_errors,ber,fer,avg_iters,add,mul,cmp,xor,exp,"
           "latency_cycles,latency_gain";
}

// Per-round operation counts must divide exactly: every executed round of
// a given configuration performs the identical set of counted operations.
inline CsvRow make_row(const LinkContext& ctx, const ReceiverConfig& rcfg,
                       const PointResult& pr) {
    CsvRow row;
    row.ebn0_db = pr.ebn0_db;
    row.frames = pr.stats.frames;
    row.bit_errors = pr.stats.bit_errors;
    row.ber = pr.stats.ber();
    row.fer = pr.stats.fer();
    row.avg_iters = pr.stats.avg_iterations();
    const std::uint64_t rounds = pr.stats.iterations;
    if (rounds > 0) {
        const auto exact_div = [rounds](std::uint64_t v, const char* what) {
            if (v % rounds != 0)
                throw std::logic_error(std::string("csv: ") + what +
                                       " not constant per round");
            return v / rounds;
        };
        row.add = exact_div(pr.ops.add, "add");
        row.mul = exact_div(pr.ops.mul, "mul");
        row.cmp = exact_div(pr.ops.cmp, "cmp");
        row.xr = exact_div(pr.ops.xr, "xor");
        row.ex = exact_div(pr.ops.ex, "exp");
    }
    const double beta =
        rcfg.algorithm == ReceiverKind::isd ? ctx.constr.beta() : 0.0;
    row.latency_cycles = latency_symbol_clocked(row.avg_iters, ctx.cfg.n_bits,
                                                ctx.cfg.p, beta, ctx.cfg.d_bits);
    row.latency_gain = latency_gain(rcfg.iterations, ctx.cfg.n_bits, ctx.cfg.d_bits,
                                    row.latency_cycles);
    return row;
}

inline void write_csv_row(std::ostream& out, const CsvRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%.3f,%llu,%llu,%.9e,%.9e,%.6f,%llu,%llu,%llu,%llu,%llu,%.3f,%.6f",
                  r.ebn0_db, static_cast<unsigned long long>(r.frames),
                  static_cast<unsigned long long>(r.bit_errors), r.ber, r.fer,
                  r.avg_iters, static_cast<unsigned long long>(r.add),
                  static_cast<unsigned long long>(r.mul),
                  static_cast<unsigned long long>(r.cmp),
                  static_cast<unsigned long long>(r.xr),
                  static_cast<unsigned long long>(r.ex), r.latency_cycles,
                  r.latency_gain);
    out << buf << "\n";
}

inline std::vector<CsvRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw std::runtime_error("csv: missing or unexpected header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 13) throw std::runtime_error("csv: bad field count");
        CsvRow r;
        r.ebn0_db = std::stod(f[0]);
        r.frames = std::stoull(f[1]);
        r.bit_errors = std::stoull(f[2]);
        r.ber = std::stod(f[3]);
        r.fer = std::stod(f[4]);
        r.avg_iters = std::stod(f[5]);
        r.add = std::stoull(f[6]);
        r.mul = std::stoull(f[7]);
        r.cmp = std::stoull(f[8]);
        r.xr = std::stoull(f[9]);
        r.ex = std::stoull(f[10]);
        r.latency_cycles = std::stod(f[11]);
        r.latency_gain = std::stod(f[12]);
        rows.push_back(r);
    }
    return rows;
}

} // namespace nbscma
