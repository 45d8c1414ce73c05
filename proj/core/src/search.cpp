#include "twocopy/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace twocopy::wirings {

bool GapValue::better_than(const GapValue& o) const {
    if (!set()) return false;
    if (!o.set()) return true;
    // dens are positive by construction
    const long long lhs = num * o.den, rhs = o.num * den;
    if (lhs != rhs) return lhs > rhs;
    if (witness_a != o.witness_a) return witness_a < o.witness_a;
    return witness_b < o.witness_b;
}

void GapValue::merge(const GapValue& o) {
    if (o.better_than(*this)) *this = o;
}

std::vector<double> default_search_grid(int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(points);
    for (int k = 1; k <= points; ++k) g[k - 1] = 0.75 + 0.25 * (static_cast<double>(k) / points);
    return g;
}

namespace {

// Per-x slice of a behavior table: induced box inputs and final output for
// each outcome pair (o1,o2).
struct XTable {
    std::uint8_t x1[4], x2[4], out[4];
};

XTable xtable_of(const WiringBehavior& b, int x) {
    XTable t;
    for (int idx = 0; idx < 4; ++idx) {
        t.x1[idx] = b.in1[x][idx];
        t.x2[idx] = b.in2[x][idx];
        t.out[idx] = b.out[x][idx];
    }
    return t;
}

int xtable_key(const XTable& t) {
    int k = 0;
    for (int idx = 0; idx < 4; ++idx)
        k |= (t.x1[idx] << 2 | t.x2[idx] << 1 | t.out[idx]) << (3 * idx);
    return k;
}

// Outcome counts for one (Alice x-slice, Bob y-slice) pair, bucketed by which
// PR/anti-PR box types the outcome quadruple is consistent with (c1 for box 1,
// c2 for box 2) and by the final output parity m = a xor b. Byte c1*2+c2 of
// m0/m1 holds the count; m0 byte + m1 byte is always 4 (composition of
// non-signalling boxes is normalized).
struct Kern {
    std::uint32_t m0 = 0, m1 = 0;
};

Kern kernel_of(const XTable& a, const XTable& b) {
    Kern k;
    for (int u = 0; u < 4; ++u) {
        const int a1 = u >> 1, a2 = u & 1;
        for (int v = 0; v < 4; ++v) {
            const int b1 = v >> 1, b2 = v & 1;
            const int c1 = a1 ^ b1 ^ (a.x1[u] & b.x1[v]);
            const int c2 = a2 ^ b2 ^ (a.x2[u] & b.x2[v]);
            const std::uint32_t bit = 1u << (8 * (c1 * 2 + c2));
            if (a.out[u] ^ b.out[v])
                k.m1 += bit;
            else
                k.m0 += bit;
        }
    }
    for (int c = 0; c < 4; ++c)
        if (((k.m0 >> (8 * c)) & 0xff) + ((k.m1 >> (8 * c)) & 0xff) != 4)
            throw std::logic_error("wiring kernel: composition counts not normalized");
    return k;
}

struct ClassData {
    std::uint32_t ntables = 0;
    std::vector<XTable> tables;
    std::vector<std::uint8_t> t0, t1;       // per behavior class
    std::vector<std::uint32_t> rep;         // representative wiring encoding
    std::vector<Kern> kern;                 // ntables * ntables
};

ClassData build_class_data() {
    ClassData cd;
    // distinct per-input-bit tables over the 256 sub-strategies
    std::array<int, 256> tid{};
    std::map<int, int> table_seen;
    for (int se = 0; se < 256; ++se) {
        const WiringBehavior b = behavior_of(decode(static_cast<std::uint32_t>(se)));
        const XTable t = xtable_of(b, 0);  // low byte drives the x=0 slice
        const int key = xtable_key(t);
        auto [it, fresh] = table_seen.emplace(key, static_cast<int>(cd.tables.size()));
        if (fresh) cd.tables.push_back(t);
        tid[se] = it->second;
    }
    cd.ntables = static_cast<std::uint32_t>(cd.tables.size());

    // behavior classes = distinct (t0, t1) pairs, in first-encounter order
    std::unordered_map<std::uint32_t, std::uint32_t> class_seen;
    class_seen.reserve(kWiringCount);
    for (std::uint32_t enc = 0; enc < kWiringCount; ++enc) {
        const std::uint8_t a = static_cast<std::uint8_t>(tid[enc & 0xff]);
        const std::uint8_t b = static_cast<std::uint8_t>(tid[(enc >> 8) & 0xff]);
        const std::uint32_t key = static_cast<std::uint32_t>(a) * cd.ntables + b;
        if (class_seen.emplace(key, static_cast<std::uint32_t>(cd.t0.size())).second) {
            cd.t0.push_back(a);
            cd.t1.push_back(b);
            cd.rep.push_back(enc);
        }
    }

    cd.kern.resize(static_cast<std::size_t>(cd.ntables) * cd.ntables);
    for (std::uint32_t i = 0; i < cd.ntables; ++i)
        for (std::uint32_t j = 0; j < cd.ntables; ++j)
            cd.kern[static_cast<std::size_t>(i) * cd.ntables + j] =
                kernel_of(cd.tables[i], cd.tables[j]);
    return cd;
}

const ClassData& class_data() {
    static const ClassData cd = build_class_data();
    return cd;
}

struct BlockResult {
    GapValue max, boundary, interior;
};

// Exact per-pair analysis. q_ij = n_ij/16 with n_ij integer, so
// 16*(Q(p) - p) = A p^2 + B p + C with integer coefficients.
inline void scan_pair(std::uint32_t q4, std::uint32_t enc_a, std::uint32_t enc_b,
                      BlockResult& r) {
    const long long n00 = q4 & 0xff, n01 = (q4 >> 8) & 0xff;
    const long long n10 = (q4 >> 16) & 0xff, n11 = q4 >> 24;
    const long long s = n01 + n10;
    const long long A = n00 - s + n11;
    const long long B = s - 2 * n11 - 16;
    const long long C = n11;

    auto update = [&](GapValue& g, long long num, long long den) {
        if (!g.set() || num * g.den > g.num * den) g = GapValue{num, den, enc_a, enc_b};
    };

    // limit at the open boundary p -> 3/4
    const long long nb = 9 * A + 12 * B + 16 * C;
    update(r.boundary, nb, 256);
    update(r.max, nb, 256);

    // right endpoint p = 1
    const long long n1 = A + B + C;
    update(r.interior, n1, 16);
    update(r.max, n1, 16);

    // interior vertex of a concave parabola: p* = -B/(2A) in (3/4, 1)
    if (A < 0 && 3 * A + 2 * B > 0 && 2 * A + B < 0) {
        const long long nv = B * B - 4 * A * C;
        const long long dv = -64 * A;
        update(r.interior, nv, dv);
        update(r.max, nv, dv);
    }
}

constexpr std::uint32_t kBlockRows = 64;

BlockResult scan_block(const ClassData& cd, std::uint32_t nclasses, std::uint32_t block) {
    BlockResult r;
    const std::uint32_t T = cd.ntables;
    const std::uint32_t i_lo = block * kBlockRows;
    const std::uint32_t i_hi = std::min(nclasses, i_lo + kBlockRows);
    for (std::uint32_t i = i_lo; i < i_hi; ++i) {
        const Kern* rowA0 = cd.kern.data() + static_cast<std::size_t>(cd.t0[i]) * T;
        const Kern* rowA1 = cd.kern.data() + static_cast<std::size_t>(cd.t1[i]) * T;
        const std::uint32_t enc_a = cd.rep[i];
        for (std::uint32_t j = 0; j < nclasses; ++j) {
            const std::uint8_t b0 = cd.t0[j], b1 = cd.t1[j];
            const std::uint32_t q4 =
                rowA0[b0].m0 + rowA0[b1].m0 + rowA1[b0].m0 + rowA1[b1].m1;
            scan_pair(q4, enc_a, cd.rep[j], r);
        }
    }
    return r;
}

nlohmann::ordered_json gap_to_json(const GapValue& g) {
    char wa[16], wb[16];
    std::snprintf(wa, sizeof wa, "0x%08x", g.witness_a);
    std::snprintf(wb, sizeof wb, "0x%08x", g.witness_b);
    return nlohmann::ordered_json{{"value", g.value()},
                                  {"fraction", {g.num, g.den}},
                                  {"witness", {wa, wb}}};
}

GapValue gap_from_json(const nlohmann::json& j) {
    GapValue g;
    g.num = j.at("fraction").at(0).get<long long>();
    g.den = j.at("fraction").at(1).get<long long>();
    g.witness_a = static_cast<std::uint32_t>(
        std::stoul(j.at("witness").at(0).get<std::string>(), nullptr, 16));
    g.witness_b = static_cast<std::uint32_t>(
        std::stoul(j.at("witness").at(1).get<std::string>(), nullptr, 16));
    if (g.den <= 0) throw std::runtime_error("checkpoint corruption: non-positive denominator");
    return g;
}

struct CheckpointState {
    std::vector<bool> done;
    std::vector<BlockResult> results;
};

void write_checkpoint(const std::string& path, const SearchOptions& opts,
                      std::uint32_t nclasses, std::uint32_t blocks_total,
                      const CheckpointState& st) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "wiring-search-checkpoint";
    j["grid"] = opts.grid;
    j["class_limit"] = opts.class_limit;
    j["n_classes"] = nclasses;
    j["block_rows"] = kBlockRows;
    j["blocks_total"] = blocks_total;
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (std::uint32_t b = 0; b < blocks_total; ++b) {
        if (!st.done[b]) continue;
        blocks.push_back(nlohmann::ordered_json{{"i", b},
                                                {"max", gap_to_json(st.results[b].max)},
                                                {"boundary", gap_to_json(st.results[b].boundary)},
                                                {"interior", gap_to_json(st.results[b].interior)}});
    }
    j["blocks"] = std::move(blocks);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << j.dump(1) << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot replace checkpoint: " + path);
}

void load_checkpoint(const std::string& path, const SearchOptions& opts,
                     std::uint32_t nclasses, std::uint32_t blocks_total, CheckpointState& st) {
    std::ifstream in(path);
    if (!in) return;  // nothing to resume from
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("checkpoint corruption: unparseable JSON: ") +
                                 e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != 1)
            throw std::runtime_error("unsupported schema_version");
        if (j.at("kind").get<std::string>() != "wiring-search-checkpoint")
            throw std::runtime_error("not a wiring-search checkpoint");
        if (j.at("grid").get<std::vector<double>>() != opts.grid)
            throw std::runtime_error("grid differs from the checkpointed run");
        if (j.at("class_limit").get<std::uint32_t>() != opts.class_limit)
            throw std::runtime_error("class_limit differs from the checkpointed run");
        if (j.at("n_classes").get<std::uint32_t>() != nclasses ||
            j.at("block_rows").get<std::uint32_t>() != kBlockRows ||
            j.at("blocks_total").get<std::uint32_t>() != blocks_total)
            throw std::runtime_error("partition differs from the checkpointed run");
        for (const auto& blk : j.at("blocks")) {
            const std::uint32_t b = blk.at("i").get<std::uint32_t>();
            if (b >= blocks_total) throw std::runtime_error("block index out of range");
            st.results[b].max = gap_from_json(blk.at("max"));
            st.results[b].boundary = gap_from_json(blk.at("boundary"));
            st.results[b].interior = gap_from_json(blk.at("interior"));
            st.done[b] = true;
        }
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("checkpoint corruption: ") + e.what());
    }
}

}  // namespace

SearchReport search_all_wirings(const SearchOptions& opts_in) {
    const auto t_start = std::chrono::steady_clock::now();
    SearchOptions opts = opts_in;
    if (opts.grid.empty()) opts.grid = default_search_grid();
    for (double p : opts.grid)
        if (!(p > 0.75 && p <= 1.0))
            throw std::invalid_argument("search grid points must lie in (3/4, 1]");
    if (opts.workers < 1) throw std::invalid_argument("workers must be >= 1");

    const ClassData& cd = class_data();
    const std::uint32_t nall = static_cast<std::uint32_t>(cd.rep.size());
    const std::uint32_t nclasses =
        opts.class_limit == 0 ? nall : std::min(opts.class_limit, nall);
    const std::uint32_t blocks_total = (nclasses + kBlockRows - 1) / kBlockRows;

    CheckpointState st;
    st.done.assign(blocks_total, false);
    st.results.assign(blocks_total, BlockResult{});
    if (!opts.checkpoint_path.empty())
        load_checkpoint(opts.checkpoint_path, opts, nclasses, blocks_total, st);

    std::vector<std::uint32_t> pending;
    for (std::uint32_t b = 0; b < blocks_total; ++b)
        if (!st.done[b]) pending.push_back(b);
    const std::uint32_t quota =
        opts.max_blocks == 0 ? static_cast<std::uint32_t>(pending.size())
                             : std::min<std::uint32_t>(opts.max_blocks,
                                                       static_cast<std::uint32_t>(pending.size()));

    std::atomic<std::uint32_t> cursor{0};
    std::mutex mu;
    std::uint32_t completed_since_checkpoint = 0;
    std::exception_ptr worker_error;

    auto worker = [&] {
        try {
            for (;;) {
                const std::uint32_t idx = cursor.fetch_add(1);
                if (idx >= quota) return;
                const std::uint32_t b = pending[idx];
                BlockResult r = scan_block(cd, nclasses, b);
                std::lock_guard<std::mutex> lock(mu);
                st.results[b] = r;
                st.done[b] = true;
                if (!opts.checkpoint_path.empty() &&
                    ++completed_since_checkpoint >= opts.checkpoint_every) {
                    completed_since_checkpoint = 0;
                    write_checkpoint(opts.checkpoint_path, opts, nclasses, blocks_total, st);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!worker_error) worker_error = std::current_exception();
            cursor.store(quota);  // drain remaining claims
        }
    };

    {
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(opts.workers, std::max<std::uint32_t>(quota, 1));
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    if (!opts.checkpoint_path.empty())
        write_checkpoint(opts.checkpoint_path, opts, nclasses, blocks_total, st);

    SearchReport rep;
    rep.deduped_party_count = nall;
    rep.grid = opts.grid;
    rep.blocks_total = blocks_total;
    rep.total_pairs = static_cast<std::uint64_t>(nclasses) * nclasses;
    for (std::uint32_t b = 0; b < blocks_total; ++b) {
        if (!st.done[b]) continue;
        ++rep.blocks_done;
        const std::uint32_t rows =
            std::min(nclasses, (b + 1) * kBlockRows) - std::min(nclasses, b * kBlockRows);
        rep.pairs_scanned += static_cast<std::uint64_t>(rows) * nclasses;
        rep.max_gap.merge(st.results[b].max);
        rep.boundary_gap.merge(st.results[b].boundary);
        rep.interior_gap.merge(st.results[b].interior);
    }
    rep.complete = (rep.blocks_done == blocks_total);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

std::string report_to_json(const SearchReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["kind"] = "wiring-search-report";
    j["deduped_party_count"] = r.deduped_party_count;
    j["total_pairs"] = r.total_pairs;
    j["pairs_scanned"] = r.pairs_scanned;
    j["complete"] = r.complete;
    j["blocks_total"] = r.blocks_total;
    j["blocks_done"] = r.blocks_done;
    j["max_gap"] = gap_to_json(r.max_gap);
    j["boundary_gap"] = gap_to_json(r.boundary_gap);
    j["interior_gap"] = gap_to_json(r.interior_gap);
    j["grid"] = r.grid;
    return j.dump(1) + "\n";
}

QuadCoeffs kernel_quad_coeffs(const WiringBehavior& wa, const WiringBehavior& wb) {
    const XTable a0 = xtable_of(wa, 0), a1 = xtable_of(wa, 1);
    const XTable b0 = xtable_of(wb, 0), b1 = xtable_of(wb, 1);
    const std::uint32_t q4 = kernel_of(a0, b0).m0 + kernel_of(a0, b1).m0 +
                             kernel_of(a1, b0).m0 + kernel_of(a1, b1).m1;
    return QuadCoeffs{static_cast<double>(q4 & 0xff) / 16.0,
                      static_cast<double>((q4 >> 8) & 0xff) / 16.0,
                      static_cast<double>((q4 >> 16) & 0xff) / 16.0,
                      static_cast<double>(q4 >> 24) / 16.0};
}

}  // namespace twocopy::wirings
