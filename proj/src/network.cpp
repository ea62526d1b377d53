#include "tritp/network.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tritp {

int triangular(int n) {
    if (n < 0) throw std::invalid_argument("triangular(n) requires n >= 0");
    return n * (n + 1) / 2;
}

bool is_triangular(int t) {
    if (t < 0) return false;
    int n = static_cast<int>((std::sqrt(8.0 * t + 1) - 1) / 2);
    for (int c = std::max(0, n - 1); c <= n + 1; ++c)
        if (triangular(c) == t) return true;
    return false;
}

int tri_inverse(int t) {
    if (t < 0) throw std::invalid_argument("tri_inverse requires t >= 0");
    int n = static_cast<int>((std::sqrt(8.0 * t + 1) - 1) / 2);
    for (int c = std::max(0, n - 1); c <= n + 1; ++c)
        if (triangular(c) == t) return c;
    throw std::invalid_argument("tri_inverse on non-triangular input");
}

int triceil(int k) {
    if (k < 0) throw std::invalid_argument("triceil requires k >= 0");
    int n = 0;
    while (triangular(n) < k) ++n;
    return triangular(n);
}

int tridefect(int k) { return triceil(k) - k; }

// --------------------------------------------------------- PlanarNetwork

PlanarNetwork make_grid(const TablePtr& table, PlanarNetwork::Kind kind, int J) {
    PlanarNetwork net;
    net.table = table;
    net.kind = kind;
    net.J = J;
    net.horiz_.resize(static_cast<std::size_t>(J) + 1);
    net.diag_.resize(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        net.horiz_[j].resize(static_cast<std::size_t>(j) + 1);
        net.diag_[j].resize(static_cast<std::size_t>(j) + 1);
    }
    return net;
}

const std::optional<NetEdge>& PlanarNetwork::horizontal(int i, int j) const {
    return horiz_.at(j).at(i);
}

const std::optional<NetEdge>& PlanarNetwork::diagonal(int i, int j) const {
    return diag_.at(j).at(i);
}

void PlanarNetwork::set_horizontal(int i, int j, NetEdge e) {
    if (i < 1 || i > j || j > J) throw std::out_of_range("horizontal edge index");
    horiz_.at(j).at(i) = std::move(e);
}

void PlanarNetwork::set_diagonal(int i, int j, NetEdge e) {
    if (i < 1 || i > j || j > J) throw std::out_of_range("diagonal edge index");
    diag_.at(j).at(i) = std::move(e);
}

Vertex PlanarNetwork::source(int n) const {
    if (kind == Kind::D) return {n, n};
    return {triangular(n), triangular(n)};
}

Vertex PlanarNetwork::sink(int k) const {
    if (kind == Kind::D) return {0, k};
    return {0, triangular(k)};
}

int PlanarNetwork::max_source_index() const {
    if (kind == Kind::D) return J;
    int n = 0;
    while (triangular(n + 1) <= J) ++n;
    return n;
}

json PlanarNetwork::to_json() const {
    json edges = json::array();
    for (int j = 1; j <= J; ++j)
        for (int i = 1; i <= j; ++i) {
            if (auto& h = horizontal(i, j))
                edges.push_back(json{{"from", {i, j}}, {"to", {i - 1, j}},
                                     {"type", "horizontal"},
                                     {"weight", h->weight.to_json()}});
            if (auto& d = diagonal(i, j))
                edges.push_back(json{{"from", {i, j}}, {"to", {i - 1, j - 1}},
                                     {"type", "diagonal"},
                                     {"weight", d->weight.to_json()}});
        }
    return json{{"kind", kind == Kind::D ? "D" : "Dprime"}, {"jmax", J},
                {"edges", edges}};
}

std::string PlanarNetwork::to_dot() const {
    std::ostringstream os;
    os << "digraph net {\n  rankdir=RL;\n";
    auto name = [](int i, int j) {
        return "v" + std::to_string(i) + "_" + std::to_string(j);
    };
    for (int j = 1; j <= J; ++j)
        for (int i = 1; i <= j; ++i) {
            if (auto& h = horizontal(i, j))
                os << "  " << name(i, j) << " -> " << name(i - 1, j)
                   << " [label=\"" << h->weight.str() << "\"];\n";
            if (auto& d = diagonal(i, j))
                os << "  " << name(i, j) << " -> " << name(i - 1, j - 1)
                   << " [label=\"" << d->weight.str() << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

bool single_variable(const Polynomial& p, VarDesc& out) {
    if (p.terms().size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    if (c != 1 || m.exps.size() != 1 || m.exps[0].second != 1) return false;
    out = p.table()->desc(m.exps[0].first);
    return true;
}

NetEdge make_edge(Polynomial w) {
    NetEdge e;
    VarDesc d;
    if (single_variable(w, d)) e.letter = d;
    e.weight = std::move(w);
    return e;
}

}  // namespace

PlanarNetwork build_D(const TablePtr& table, int jmax,
                      const WeightFn& alpha, const WeightFn& beta) {
    if (jmax < 0) throw std::invalid_argument("jmax must be >= 0");
    PlanarNetwork net = make_grid(table, PlanarNetwork::Kind::D, jmax);
    for (int j = 1; j <= jmax; ++j)
        for (int i = 1; i <= j; ++i) {
            net.set_horizontal(i, j, make_edge(alpha(i, j - i + 1)));
            net.set_diagonal(i, j, make_edge(beta(i, j - i)));
        }
    return net;
}

PlanarNetwork build_D_stirling(const TablePtr& table, int jmax) {
    return build_D(
        table, jmax, [&](int, int) { return Polynomial(table, 1); },
        [&](int, int l) { return Polynomial(table, l); });
}

PlanarNetwork build_D_cde(const TablePtr& table, int jmax, const Polynomial& c,
                          const Polynomial& d, const Polynomial& e) {
    return build_D(
        table, jmax, [&](int, int) { return c; },
        [&](int, int l) { return d.scale(l) + e; });
}

PlanarNetwork build_Dprime(const TablePtr& table, int nmax) {
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    int J = triangular(nmax);
    PlanarNetwork net = make_grid(table, PlanarNetwork::Kind::Dprime, J);
    for (int j = 1; j <= J; ++j)
        for (int i = 1; i <= j; ++i) {
            // Diagonal edge (i,j)->(i-1,j-1): beta_{i,l} with l = j-i.
            {
                int l = j - i;
                int s = i + l - 1;
                if (s >= triangular(l)) {
                    if (is_triangular(s)) {
                        NetEdge e;
                        e.letter = VarDesc::fam_e(tri_inverse(s) - l, l);
                        e.weight = Polynomial::variable(table, *e.letter);
                        net.set_diagonal(i, j, std::move(e));
                    } else {
                        net.set_diagonal(i, j, NetEdge{Polynomial(table, 1), {}});
                    }
                }
            }
            // Horizontal edge (i,j)->(i-1,j): alpha_{i,l} with l = j-i+1 >= 1.
            {
                int l = j - i + 1;
                int s = i + l - 1;
                int ia = tri_inverse(triceil(s)) - l;
                int ja = tridefect(s);
                if (ia >= ja && ia >= 0) {
                    NetEdge e;
                    e.letter = VarDesc::fam_a(ia, ja, l - 1);
                    e.weight = Polynomial::variable(table, *e.letter);
                    net.set_horizontal(i, j, std::move(e));
                } else if (is_triangular(s) && s < triangular(l)) {
                    net.set_horizontal(i, j, NetEdge{Polynomial(table, 1), {}});
                }
            }
        }
    return net;
}

// ------------------------------------------------------ path enumeration

std::vector<Path> enumerate_paths(const PlanarNetwork& net, Vertex from,
                                  Vertex to, std::uint64_t budget) {
    std::vector<Path> out;
    if (from.i < to.i || from.j < to.j) return out;
    Path cur;
    cur.verts.push_back(from);
    cur.weight = Polynomial(net.table, 1);
    std::function<void(Vertex)> dfs = [&](Vertex v) {
        if (v.i == to.i) {
            if (v.j == to.j) {
                if (out.size() >= budget)
                    throw std::runtime_error("path enumeration budget exceeded");
                out.push_back(cur);
            }
            return;
        }
        if (auto& h = net.horizontal(v.i, v.j)) {
            Vertex w{v.i - 1, v.j};
            cur.verts.push_back(w);
            Polynomial saved = cur.weight;
            cur.weight *= h->weight;
            if (h->letter) cur.word.push_back(*h->letter);
            dfs(w);
            if (h->letter) cur.word.pop_back();
            cur.weight = std::move(saved);
            cur.verts.pop_back();
        }
        if (auto& d = net.diagonal(v.i, v.j)) {
            Vertex w{v.i - 1, v.j - 1};
            if (w.j >= to.j) {
                cur.verts.push_back(w);
                Polynomial saved = cur.weight;
                cur.weight *= d->weight;
                if (d->letter) cur.word.push_back(*d->letter);
                dfs(w);
                if (d->letter) cur.word.pop_back();
                cur.weight = std::move(saved);
                cur.verts.pop_back();
            }
        }
    };
    dfs(from);
    return out;
}

std::vector<Path> enumerate_paths(const PlanarNetwork& net, int n, int k,
                                  std::uint64_t budget) {
    return enumerate_paths(net, net.source(n), net.sink(k), budget);
}

std::uint64_t count_paths(const PlanarNetwork& net, Vertex from, Vertex to) {
    std::map<Vertex, std::uint64_t> memo;
    std::function<std::uint64_t(Vertex)> rec = [&](Vertex v) -> std::uint64_t {
        if (v.i == to.i) return v.j == to.j ? 1u : 0u;
        if (v.j < to.j) return 0;
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        std::uint64_t c = 0;
        if (net.horizontal(v.i, v.j)) c += rec({v.i - 1, v.j});
        if (net.diagonal(v.i, v.j)) c += rec({v.i - 1, v.j - 1});
        memo[v] = c;
        return c;
    };
    if (from.i < to.i || from.j < to.j) return 0;
    return rec(from);
}

Triangle path_matrix(const PlanarNetwork& net, int nmax) {
    if (nmax > net.max_source_index())
        throw std::invalid_argument("network too small for requested nmax");
    Triangle t;
    t.table = net.table;
    t.nmax = nmax;
    t.rows.resize(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) {
        t.rows[n].assign(static_cast<std::size_t>(n) + 1, Polynomial(net.table, 0));
        for (int k = 0; k <= n; ++k)
            for (const auto& p : enumerate_paths(net, n, k))
                t.rows[n][k] += p.weight;
    }
    return t;
}

Triangle specialize_ace(const Triangle& tri, const Polynomial& a,
                        const Polynomial& c, const Polynomial& e) {
    const TablePtr& table = tri.table;
    std::map<int, Polynomial> assign;
    for (int id = 0; id < static_cast<int>(table->size()); ++id) {
        const VarDesc& d = table->desc(id);
        if (d.kind == VarDesc::Kind::FamE) assign.emplace(id, e);
        else if (d.kind == VarDesc::Kind::FamA)
            assign.emplace(id, d.j == 0 ? c : a);
    }
    Triangle out;
    out.table = table;
    out.nmax = tri.nmax;
    out.rows.resize(tri.rows.size());
    for (int n = 0; n <= tri.nmax; ++n) {
        out.rows[n].reserve(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
            out.rows[n].push_back(tri.at(n, k).substitute(assign));
    }
    return out;
}

Polynomial shift_family_l(const Polynomial& p, int m) {
    const TablePtr& table = p.table();
    if (!table) return p;
    std::map<int, Polynomial> assign;
    const int known = static_cast<int>(table->size());  // interning below grows it
    for (int id = 0; id < known; ++id) {
        const VarDesc& d = table->desc(id);
        if (d.kind == VarDesc::Kind::FamA)
            assign.emplace(id, Polynomial::variable(
                                   table, VarDesc::fam_a(d.i, d.j, d.l + m)));
        else if (d.kind == VarDesc::Kind::FamE)
            assign.emplace(id, Polynomial::variable(
                                   table, VarDesc::fam_e(d.i, d.l + m)));
    }
    return p.substitute(assign);
}

// ------------------------------------------------ nonintersecting families

namespace {

using Mask = std::vector<std::uint64_t>;

Mask path_mask(const PlanarNetwork& net, const Path& p) {
    Mask m(static_cast<std::size_t>(net.vertex_count() + 63) / 64, 0);
    for (auto& v : p.verts) {
        int id = net.vertex_id(v);
        m[id / 64] |= (1ull << (id % 64));
    }
    return m;
}

bool disjoint(const Mask& a, const Mask& b) {
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & b[w]) return false;
    return true;
}

}  // namespace

std::vector<std::vector<Path>> nonintersecting_families(
    const PlanarNetwork& net, const std::vector<int>& sources,
    const std::vector<int>& sinks) {
    if (sources.size() != sinks.size())
        throw std::invalid_argument("sources and sinks must have equal size");
    if (sources.size() > 4)
        throw std::invalid_argument("nonintersecting family guard: at most 4");
    std::size_t r = sources.size();
    std::vector<std::vector<Path>> pools(r);
    std::vector<std::vector<Mask>> masks(r);
    for (std::size_t t = 0; t < r; ++t) {
        pools[t] = enumerate_paths(net, sources[t], sinks[t]);
        for (auto& p : pools[t]) masks[t].push_back(path_mask(net, p));
    }
    std::vector<std::vector<Path>> out;
    std::vector<std::size_t> pick(r);
    Mask used(static_cast<std::size_t>(net.vertex_count() + 63) / 64, 0);
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t t, Mask acc) {
        if (t == r) {
            std::vector<Path> fam;
            for (std::size_t s = 0; s < r; ++s) fam.push_back(pools[s][pick[s]]);
            out.push_back(std::move(fam));
            return;
        }
        for (std::size_t p = 0; p < pools[t].size(); ++p) {
            if (!disjoint(acc, masks[t][p])) continue;
            pick[t] = p;
            Mask next = acc;
            for (std::size_t w = 0; w < next.size(); ++w) next[w] |= masks[t][p][w];
            rec(t + 1, std::move(next));
        }
    };
    rec(0, used);
    return out;
}

Polynomial lgv_family_sum(const PlanarNetwork& net,
                          const std::vector<int>& sources,
                          const std::vector<int>& sinks) {
    Polynomial sum(net.table, 0);
    for (const auto& fam : nonintersecting_families(net, sources, sinks)) {
        Polynomial w(net.table, 1);
        for (const auto& p : fam) w *= p.weight;
        sum += w;
    }
    return sum;
}

}  // namespace tritp
