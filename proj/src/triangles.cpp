#include "tritp/triangles.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace tritp {

const Polynomial& Triangle::at(int n, int k) const {
    return rows.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k));
}

Polynomial Triangle::entry(int n, int k) const {
    if (n < 0 || n > nmax || k < 0 || k > n) return Polynomial(table, 0);
    return at(n, k);
}

bool Triangle::is_integer() const {
    for (auto& row : rows)
        for (auto& p : row)
            if (!p.is_constant()) return false;
    return true;
}

json Triangle::to_json(const std::string& family, const json& params) const {
    json jrows = json::array();
    for (auto& row : rows) {
        json jr = json::array();
        for (auto& p : row) jr.push_back(p.to_json());
        jrows.push_back(std::move(jr));
    }
    return json{{"family", family}, {"params", params},
                {"nmax", nmax}, {"rows", jrows}};
}

std::string Triangle::to_csv() const {
    if (!is_integer())
        throw std::invalid_argument("CSV export requires an integer triangle");
    std::ostringstream os;
    for (auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ",";
            os << row[k].constant_value().str();
        }
        os << "\n";
    }
    return os.str();
}

std::string Triangle::to_text() const {
    std::ostringstream os;
    for (int n = 0; n <= nmax; ++n) {
        os << "n=" << n << ":";
        for (int k = 0; k <= n; ++k) os << "  " << at(n, k).str();
        os << "\n";
    }
    return os.str();
}

bool same_entries(const Triangle& a, const Triangle& b) {
    if (a.nmax != b.nmax) return false;
    for (int n = 0; n <= a.nmax; ++n)
        for (int k = 0; k <= n; ++k)
            if (!(a.at(n, k) == b.at(n, k))) return false;
    return true;
}

std::vector<std::vector<Int>> pascal_table(int nmax) {
    std::vector<std::vector<Int>> b(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) {
        b[n].resize(static_cast<std::size_t>(n) + 1);
        b[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : Int(0));
    }
    return b;
}

namespace {

Triangle make_triangle(const TablePtr& table, int nmax) {
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    Triangle t;
    t.table = table;
    t.nmax = nmax;
    t.rows.resize(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n)
        t.rows[n].assign(static_cast<std::size_t>(n) + 1, Polynomial(table, 0));
    t.rows[0][0] = Polynomial(table, 1);
    return t;
}

}  // namespace

Triangle gen_general6(const TablePtr& table, int nmax,
                      const Polynomial& a, const Polynomial& c,
                      const Polynomial& d, const Polynomial& e,
                      const Polynomial& f, const Polynomial& g) {
    Triangle t = make_triangle(table, nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k) {
            Polynomial v = (a.scale(n - k) + c) * t.entry(n - 1, k - 1);
            v += (d.scale(k) + e) * t.entry(n - 1, k);
            v += (f.scale(n - 2) + g) * t.entry(n - 2, k - 1);
            t.rows[n][k] = std::move(v);
        }
    return t;
}

Triangle gen_general4(const TablePtr& table, int nmax,
                      const Polynomial& a, const Polynomial& c,
                      const Polynomial& d, const Polynomial& e) {
    Polynomial zero(table, 0);
    return gen_general6(table, nmax, a, c, d, e, zero, zero);
}

Triangle gen_eulerian(const TablePtr& table, int nmax) {
    Triangle t = make_triangle(table, nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            t.rows[n][k] = t.entry(n - 1, k - 1).scale(n - k + 1) +
                           t.entry(n - 1, k).scale(k + 1);
    return t;
}

Triangle gen_rev_stirling(const TablePtr& table, int nmax) {
    Triangle t = make_triangle(table, nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            t.rows[n][k] = t.entry(n - 1, k - 1).scale(n - k) + t.entry(n - 1, k);
    return t;
}

Triangle gen_ace_seq(const TablePtr& table, int nmax, const Polynomial& a,
                     std::span<const Polynomial> c_seq,
                     std::span<const Polynomial> e_seq) {
    if (nmax > 0 && (static_cast<int>(c_seq.size()) < nmax ||
                     static_cast<int>(e_seq.size()) < nmax))
        throw std::invalid_argument("sequences must cover indices 0..nmax-1");
    Triangle t = make_triangle(table, nmax);
    auto binom = pascal_table(nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k) {
            Polynomial v = c_seq[n - 1] * t.entry(n - 1, k - 1);
            for (int m = 0; m <= n - 1; ++m)
                v += (a.pow(static_cast<unsigned>(m)) * e_seq[n - 1 - m] *
                      t.entry(n - 1 - m, k - m)).scale(binom[n - 1][m]);
            t.rows[n][k] = std::move(v);
        }
    return t;
}

Triangle gen_alt_i(const TablePtr& table, int nmax, const Polynomial& c,
                   const Polynomial& d, const Polynomial& e) {
    Triangle t = make_triangle(table, nmax);
    auto binom = pascal_table(nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k) {
            Polynomial v = e * t.entry(n - 1, k);
            for (int m = 0; m <= n - 1; ++m)
                v += (d.pow(static_cast<unsigned>(m)) * c *
                      t.entry(n - 1 - m, k - 1)).scale(binom[n - 1][m]);
            t.rows[n][k] = std::move(v);
        }
    return t;
}

Triangle gen_alt_ii(const TablePtr& table, int nmax, const Polynomial& a,
                    const Polynomial& c, const Polynomial& e) {
    Triangle t = make_triangle(table, nmax);
    auto binom = pascal_table(nmax);
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k) {
            Polynomial v = c * t.entry(n - 1, k - 1);
            for (int m = 0; m <= n - 1; ++m)
                v += (a.pow(static_cast<unsigned>(m)) * e *
                      t.entry(n - 1 - m, k - m)).scale(binom[n - 1][m]);
            t.rows[n][k] = std::move(v);
        }
    return t;
}

Triangle reverse(const Triangle& tri) {
    Triangle t;
    t.table = tri.table;
    t.nmax = tri.nmax;
    t.rows.resize(tri.rows.size());
    for (int n = 0; n <= tri.nmax; ++n) {
        t.rows[n].resize(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) t.rows[n][k] = tri.at(n, n - k);
    }
    return t;
}

}  // namespace tritp
