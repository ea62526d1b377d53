#include "tritp/tpcheck.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tritp {

namespace {

// r-subsets of {0..N-1} in colexicographic order.
void colex_subsets(int N, int r, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxexcl) {
        if (rem == 0) {
            std::vector<int> s(cur.rbegin(), cur.rend());
            out.push_back(std::move(s));
            return;
        }
        for (int m = rem - 1; m < maxexcl; ++m) {
            cur.push_back(m);
            rec(rem - 1, m);
            cur.pop_back();
        }
    };
    rec(r, N);
}

}  // namespace

std::vector<MinorSpec> enumerate_minors(int N, int rmin, int rmax) {
    if (rmin < 1 || rmax < rmin || rmax > N)
        throw std::invalid_argument("require 1 <= rmin <= rmax <= N");
    std::vector<MinorSpec> out;
    for (int r = rmin; r <= rmax; ++r) {
        std::vector<std::vector<int>> subsets;
        colex_subsets(N, r, subsets);
        for (auto& rows : subsets)
            for (auto& cols : subsets)
                out.push_back(MinorSpec{rows, cols});
    }
    return out;
}

std::optional<Polynomial> MinorCache::get(std::uint64_t key) const {
    std::shared_lock lk(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
}

void MinorCache::put(std::uint64_t key, Polynomial value) {
    std::unique_lock lk(mu_);
    cache_.emplace(key, std::move(value));
}

namespace {

std::uint64_t mask_of(const std::vector<int>& idx) {
    std::uint64_t m = 0;
    for (int x : idx) m |= (1ull << x);
    return m;
}

Polynomial det_rec(const Triangle& tri, const std::vector<int>& rows,
                   const std::vector<int>& cols, MinorCache* cache) {
    if (rows.size() == 1) return tri.entry(rows[0], cols[0]);
    std::uint64_t key = 0;
    if (cache) {
        key = (mask_of(rows) << 32) | mask_of(cols);
        if (auto hit = cache->get(key)) return *hit;
    }
    Polynomial det(tri.table, 0);
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Polynomial entry = tri.entry(rows[0], cols[c]);
        if (entry.is_zero()) continue;
        std::vector<int> subcols;
        subcols.reserve(cols.size() - 1);
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != c) subcols.push_back(cols[t]);
        Polynomial sub = det_rec(tri, subrows, subcols, cache);
        Polynomial term = entry * sub;
        if (c % 2 == 0) det += term;
        else det -= term;
    }
    if (cache) cache->put(key, det);
    return det;
}

}  // namespace

Polynomial minor_det(const Triangle& tri, const MinorSpec& spec, MinorCache* cache) {
    if (spec.rows.size() != spec.cols.size() || spec.rows.empty())
        throw std::invalid_argument("minor spec must have equal nonempty index lists");
    return det_rec(tri, spec.rows, spec.cols, cache);
}

Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Polynomial rem = num;
    Polynomial quot(num.table() ? num.table() : den.table(), 0);
    const auto& dlead = *den.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        // monomial quotient
        Monomial qm;
        {
            std::size_t a = 0;
            for (auto& [id, e] : rlead.first.exps) {
                int de = 0;
                while (a < dlead.first.exps.size() && dlead.first.exps[a].first < id) ++a;
                if (a < dlead.first.exps.size() && dlead.first.exps[a].first == id)
                    de = dlead.first.exps[a].second;
                int q = e - de;
                if (q < 0) throw std::invalid_argument("inexact polynomial division");
                if (q > 0) qm.exps.emplace_back(id, q);
            }
            // every divisor variable must occur in the dividend's lead
            for (auto& [id, e] : dlead.first.exps) {
                bool found = false;
                for (auto& [rid, re] : rlead.first.exps)
                    if (rid == id && re >= e) { found = true; break; }
                if (!found) throw std::invalid_argument("inexact polynomial division");
            }
        }
        if (rlead.second % dlead.second != 0)
            throw std::invalid_argument("inexact polynomial division");
        Int qc = rlead.second / dlead.second;
        Polynomial qterm;
        {
            Polynomial t(rem.table() ? rem.table() : den.table(), qc);
            Polynomial mono(t.table(), 1);
            // build the monomial as a product of variables
            for (auto& [id, e] : qm.exps) {
                Polynomial v = Polynomial::variable(t.table(), t.table()->desc(id));
                mono *= v.pow(static_cast<unsigned>(e));
            }
            qterm = t * mono;
        }
        quot += qterm;
        rem -= qterm * den;
    }
    return quot;
}

Polynomial minor_det_bareiss(const Triangle& tri, const MinorSpec& spec) {
    std::size_t r = spec.rows.size();
    std::vector<std::vector<Polynomial>> m(r, std::vector<Polynomial>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m[i][j] = tri.entry(spec.rows[i], spec.cols[j]);
    int sign = 1;
    Polynomial prev(tri.table, 1);
    for (std::size_t k = 0; k + 1 < r; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < r && m[s][k].is_zero()) ++s;
            if (s == r) return Polynomial(tri.table, 0);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < r; ++i) {
            for (std::size_t j = k + 1; j < r; ++j)
                m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Polynomial(tri.table, 0);
        }
        prev = m[k][k];
    }
    Polynomial det = m[r - 1][r - 1];
    return sign < 0 ? -det : det;
}

std::uint64_t triangle_digest(const Triangle& tri, int N) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix("N=" + std::to_string(N));
    for (int n = 0; n < N; ++n)
        for (int k = 0; k <= n; ++k)
            mix(";" + tri.entry(n, k).to_json().dump());
    return h;
}

// ----------------------------------------------------------- TPReport

namespace {

json witness_json(const Witness& w) {
    return json{{"rows", w.spec.rows}, {"cols", w.spec.cols},
                {"minor_index", w.minor_index},
                {"offending_monomial", w.offending_monomial},
                {"offending_coefficient", w.offending_coefficient}};
}

const char* status_name(TPStatus s) {
    switch (s) {
        case TPStatus::Certified: return "certified";
        case TPStatus::Refuted: return "refuted";
        case TPStatus::Partial: return "partial";
    }
    return "?";
}

}  // namespace

json TPReport::body() const {
    json j{{"matrix", matrix}, {"N", N}, {"rmax", rmax},
           {"minors_total", minors_total}, {"minors_checked", minors_checked},
           {"minors_per_order", minors_per_order},
           {"status", status_name(status)}};
    j["witness"] = witness ? witness_json(*witness) : json(nullptr);
    return j;
}

json TPReport::full() const {
    json j = body();
    j["timing"] = json{{"wall_seconds", wall_seconds}};
    return j;
}

// ------------------------------------------------------ checkpoint format

namespace {

constexpr char kMagic[4] = {'T', 'P', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

struct CkptHeader {
    std::uint64_t digest = 0;
    std::uint32_t N = 0, rmax = 0, chunk_size = 0;
    std::uint64_t total_minors = 0;
};

struct CkptRecord {
    std::uint64_t chunk_id = 0;
    std::uint8_t has_fail = 0;
    std::uint64_t fail_index = 0;
};

template <typename T>
void put_raw(std::string& buf, const T& v) {
    buf.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get_raw(std::istream& in, T& v) {
    return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

void write_header(std::ostream& out, const CkptHeader& h) {
    std::string buf;
    buf.append(kMagic, 4);
    put_raw(buf, kVersion);
    put_raw(buf, h.digest);
    put_raw(buf, h.N);
    put_raw(buf, h.rmax);
    put_raw(buf, h.chunk_size);
    put_raw(buf, h.total_minors);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
}

CkptHeader read_header(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("corrupt checkpoint: bad magic");
    std::uint32_t version = 0;
    CkptHeader h;
    if (!get_raw(in, version) || version != kVersion)
        throw std::runtime_error("corrupt checkpoint: bad version");
    if (!get_raw(in, h.digest) || !get_raw(in, h.N) || !get_raw(in, h.rmax) ||
        !get_raw(in, h.chunk_size) || !get_raw(in, h.total_minors))
        throw std::runtime_error("corrupt checkpoint: truncated header");
    return h;
}

void append_record(std::ostream& out, const CkptRecord& r) {
    std::string payload;
    put_raw(payload, r.chunk_id);
    put_raw(payload, r.has_fail);
    put_raw(payload, r.fail_index);
    std::uint32_t len = static_cast<std::uint32_t>(payload.size());
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
}

std::vector<CkptRecord> read_records(std::istream& in) {
    std::vector<CkptRecord> out;
    std::uint32_t len = 0;
    while (get_raw(in, len)) {
        if (len != sizeof(std::uint64_t) * 2 + 1)
            throw std::runtime_error("corrupt checkpoint: bad record length");
        CkptRecord r;
        if (!get_raw(in, r.chunk_id) || !get_raw(in, r.has_fail) ||
            !get_raw(in, r.fail_index))
            throw std::runtime_error("corrupt checkpoint: truncated record");
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------ check core

struct RunState {
    std::vector<MinorSpec> specs;
    std::vector<std::uint64_t> per_order;
    std::uint64_t chunks = 0;
    std::vector<char> done;
    std::vector<CkptRecord> results;   // indexed by chunk id, valid iff done
};

TPReport run_check(const Triangle& tri, int N, const CheckOptions& opts,
                   RunState& st, std::ofstream* ckpt) {
    auto start = std::chrono::steady_clock::now();
    int rmax = opts.rmax > 0 ? opts.rmax : N;
    std::uint64_t total = st.specs.size();
    std::uint64_t chunk_size = static_cast<std::uint64_t>(opts.chunk_size);

    MinorCache cache;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> claimed_this_run{0};
    std::atomic<bool> stopped{false};
    std::mutex ckpt_mu;

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start).count();
    };

    auto worker = [&] {
        for (;;) {
            if (stopped.load()) return;
            std::uint64_t c = next.fetch_add(1);
            if (c >= st.chunks) return;
            if (st.done[c]) continue;
            if (opts.budget_seconds > 0 && elapsed() > opts.budget_seconds) {
                stopped.store(true);
                return;
            }
            if (opts.max_chunks > 0 &&
                claimed_this_run.fetch_add(1) >= opts.max_chunks) {
                stopped.store(true);
                return;
            }
            std::uint64_t lo = c * chunk_size;
            std::uint64_t hi = std::min(total, lo + chunk_size);
            CkptRecord rec;
            rec.chunk_id = c;
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                Polynomial det = minor_det(tri, st.specs[idx], &cache);
                if (!det.is_coeffwise_nonneg()) {
                    rec.has_fail = 1;
                    rec.fail_index = idx;
                    break;
                }
            }
            {
                std::lock_guard lk(ckpt_mu);
                st.done[c] = 1;
                st.results[c] = rec;
                if (ckpt) append_record(*ckpt, rec);
            }
        }
    };

    int jobs = std::max(1, opts.jobs);
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    TPReport rep;
    rep.matrix = opts.matrix_name;
    rep.N = N;
    rep.rmax = rmax;
    rep.minors_total = total;
    rep.minors_per_order = st.per_order;

    bool all_done = true;
    std::uint64_t checked = 0;
    std::uint64_t first_fail = UINT64_MAX;
    for (std::uint64_t c = 0; c < st.chunks; ++c) {
        if (!st.done[c]) {
            all_done = false;
            continue;
        }
        std::uint64_t lo = c * chunk_size;
        std::uint64_t hi = std::min(total, lo + chunk_size);
        checked += hi - lo;
        if (st.results[c].has_fail)
            first_fail = std::min(first_fail, st.results[c].fail_index);
    }

    if (!all_done) {
        rep.status = TPStatus::Partial;
        rep.minors_checked = checked;
    } else {
        rep.minors_checked = total;
        if (first_fail == UINT64_MAX) {
            rep.status = TPStatus::Certified;
        } else {
            rep.status = TPStatus::Refuted;
            Witness w;
            w.spec = st.specs[first_fail];
            w.minor_index = first_fail;
            Polynomial det = minor_det(tri, w.spec, &cache);
            for (auto& [m, cf] : det.terms())
                if (cf < 0) {
                    // grlex-smallest negative term, deterministic
                    Polynomial mono;
                    Polynomial mp(tri.table, 1);
                    for (auto& [id, e] : m.exps)
                        mp *= Polynomial::variable(tri.table, tri.table->desc(id))
                                  .pow(static_cast<unsigned>(e));
                    w.offending_monomial = mp.str();
                    w.offending_coefficient = cf.str();
                    break;
                }
            rep.witness = std::move(w);
        }
    }
    rep.wall_seconds = elapsed();
    return rep;
}

RunState prepare_state(int N, int rmax, int chunk_size,
                       const std::vector<MinorSpec>& specs) {
    RunState st;
    st.specs = specs;
    st.per_order.assign(static_cast<std::size_t>(rmax), 0);
    for (auto& s : st.specs) ++st.per_order[static_cast<std::size_t>(s.order() - 1)];
    st.chunks = (st.specs.size() + static_cast<std::size_t>(chunk_size) - 1) /
                static_cast<std::size_t>(chunk_size);
    st.done.assign(st.chunks, 0);
    st.results.assign(st.chunks, {});
    return st;
}

}  // namespace

TPReport check_total_positivity(const Triangle& tri, int N,
                                const CheckOptions& opts) {
    if (N < 1 || N > tri.nmax + 1)
        throw std::invalid_argument("N must satisfy 1 <= N <= nmax+1");
    if (N > 32) throw std::invalid_argument("N > 32 unsupported");
    if (opts.chunk_size < 1) throw std::invalid_argument("chunk size must be positive");
    if (opts.budget_seconds < 0) throw std::invalid_argument("budget must be positive");
    int rmax = opts.rmax > 0 ? opts.rmax : N;
    if (rmax > N) throw std::invalid_argument("rmax must be <= N");

    RunState st = prepare_state(N, rmax, opts.chunk_size,
                                enumerate_minors(N, 1, rmax));

    std::ofstream ckpt;
    if (!opts.checkpoint_path.empty()) {
        ckpt.open(opts.checkpoint_path, std::ios::binary | std::ios::trunc);
        if (!ckpt) throw std::runtime_error("cannot open checkpoint for writing");
        CkptHeader h;
        h.digest = triangle_digest(tri, N);
        h.N = static_cast<std::uint32_t>(N);
        h.rmax = static_cast<std::uint32_t>(rmax);
        h.chunk_size = static_cast<std::uint32_t>(opts.chunk_size);
        h.total_minors = st.specs.size();
        write_header(ckpt, h);
    }
    return run_check(tri, N, opts, st, ckpt.is_open() ? &ckpt : nullptr);
}

TPReport resume(const std::string& checkpoint_path, const Triangle& tri,
                int N, const CheckOptions& opts) {
    std::ifstream in(checkpoint_path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint not found");
    CkptHeader h = read_header(in);
    if (h.N != static_cast<std::uint32_t>(N))
        throw std::runtime_error("checkpoint N mismatch");
    if (h.digest != triangle_digest(tri, N))
        throw std::runtime_error("checkpoint digest mismatch: matrix changed");
    std::vector<CkptRecord> records = read_records(in);
    in.close();

    CheckOptions eff = opts;
    eff.rmax = static_cast<int>(h.rmax);
    eff.chunk_size = static_cast<int>(h.chunk_size);
    RunState st = prepare_state(N, eff.rmax, eff.chunk_size,
                                enumerate_minors(N, 1, eff.rmax));
    if (st.specs.size() != h.total_minors)
        throw std::runtime_error("checkpoint minor count mismatch");
    for (auto& r : records) {
        if (r.chunk_id >= st.chunks)
            throw std::runtime_error("corrupt checkpoint: chunk id out of range");
        st.done[r.chunk_id] = 1;
        st.results[r.chunk_id] = r;
    }

    std::ofstream ckpt(checkpoint_path, std::ios::binary | std::ios::app);
    if (!ckpt) throw std::runtime_error("cannot reopen checkpoint for append");
    return run_check(tri, N, eff, st, &ckpt);
}

}  // namespace tritp
