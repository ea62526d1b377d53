#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include "tritp/triangles.hpp"

#include <map>

using namespace tritp;

namespace {

struct Vars {
    TablePtr table = VariableTable::create();
    Polynomial a, c, d, e, f, g, zero, one;
    Vars() {
        a = Polynomial::variable(table, VarDesc::make_scalar('a'));
        c = Polynomial::variable(table, VarDesc::make_scalar('c'));
        d = Polynomial::variable(table, VarDesc::make_scalar('d'));
        e = Polynomial::variable(table, VarDesc::make_scalar('e'));
        f = Polynomial::variable(table, VarDesc::make_scalar('f'));
        g = Polynomial::variable(table, VarDesc::make_scalar('g'));
        zero = Polynomial(table, 0);
        one = Polynomial(table, 1);
    }
    Polynomial k(long v) { return Polynomial(table, v); }
};

// Independent oracle: top-down memoized evaluation of the six-parameter
// recurrence, structurally different from the row-by-row generator.
class RecursiveOracle {
public:
    RecursiveOracle(Vars& v, Polynomial a, Polynomial c, Polynomial d,
                    Polynomial e, Polynomial f, Polynomial g)
        : v_(v), a_(a), c_(c), d_(d), e_(e), f_(f), g_(g) {}

    Polynomial at(int n, int k) {
        if (n < 0 || k < 0 || k > n) return v_.zero;
        if (n == 0) return k == 0 ? v_.one : v_.zero;
        auto key = std::make_pair(n, k);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Polynomial r = (a_.scale(n - k) + c_) * at(n - 1, k - 1) +
                       (d_.scale(k) + e_) * at(n - 1, k) +
                       (f_.scale(n - 2) + g_) * at(n - 2, k - 1);
        memo_.emplace(key, r);
        return r;
    }

private:
    Vars& v_;
    Polynomial a_, c_, d_, e_, f_, g_;
    std::map<std::pair<int, int>, Polynomial> memo_;
};

std::vector<long> int_row(const Triangle& t, int n) {
    std::vector<long> out;
    for (int k = 0; k <= n; ++k)
        out.push_back(t.at(n, k).constant_value().convert_to<long>());
    return out;
}

}  // namespace

TEST_CASE("general6 small symbolic entries") {
    Vars v;
    Triangle t = gen_general6(v.table, 2, v.a, v.c, v.d, v.e, v.f, v.g);
    CHECK(t.at(0, 0) == v.one);
    CHECK(t.at(1, 0) == v.e);
    CHECK(t.at(1, 1) == v.c);
    CHECK(t.at(2, 1) == (v.a + v.c) * v.e + (v.d + v.e) * v.c + v.g);
}

TEST_CASE("general6 agrees with independent memoized oracle") {
    Vars v;
    Triangle t = gen_general6(v.table, 6, v.a, v.c, v.d, v.e, v.f, v.g);
    RecursiveOracle oracle(v, v.a, v.c, v.d, v.e, v.f, v.g);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(t.at(n, k) == oracle.at(n, k));
}

TEST_CASE("eulerian rows match the classical triangle") {
    Vars v;
    Triangle t = gen_eulerian(v.table, 5);
    CHECK(int_row(t, 3) == std::vector<long>{1, 11, 11, 1});
    CHECK(int_row(t, 4) == std::vector<long>{1, 26, 66, 26, 1});
    CHECK(int_row(t, 5) == std::vector<long>{1, 57, 302, 302, 57, 1});
}

TEST_CASE("reversed Stirling rows") {
    Vars v;
    Triangle t = gen_rev_stirling(v.table, 5);
    CHECK(int_row(t, 4) == std::vector<long>{1, 6, 7, 1, 0});
    CHECK(int_row(t, 5) == std::vector<long>{1, 10, 25, 15, 1, 0});
}

TEST_CASE("specializations of general4") {
    Vars v;
    Triangle eul = gen_eulerian(v.table, 6);
    Triangle g1111 = gen_general4(v.table, 6, v.one, v.one, v.one, v.one);
    CHECK(same_entries(eul, g1111));

    Triangle rst = gen_rev_stirling(v.table, 6);
    Triangle g1001 = gen_general4(v.table, 6, v.one, v.zero, v.zero, v.one);
    CHECK(same_entries(rst, g1001));

    // (0,1,1,1): T(n,k) = Stirling-subset(n+1,k+1)
    Triangle g0111 = gen_general4(v.table, 5, v.zero, v.one, v.one, v.one);
    CHECK(g0111.at(2, 1).constant_value() == 3);
}

TEST_CASE("rev_stirling(n,k) equals Stirling-subset(n, n-k)") {
    Vars v;
    Triangle rst = gen_rev_stirling(v.table, 7);
    Triangle g0110 = gen_general4(v.table, 7, v.zero, v.one, v.one, v.zero);
    // (0,1,1,0) is the plain Stirling subset triangle
    for (int n = 0; n <= 7; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(rst.at(n, k) == g0110.at(n, n - k));
}

TEST_CASE("ace_seq with constant sequences reproduces general4(a,c,0,e)") {
    Vars v;
    std::vector<Polynomial> cs(8, v.c), es(8, v.e);
    Triangle seq = gen_ace_seq(v.table, 8, v.a, cs, es);
    Triangle ref = gen_general4(v.table, 8, v.a, v.c, v.zero, v.e);
    CHECK(same_entries(seq, ref));
}

TEST_CASE("ace_seq first row and binomial degeneration") {
    Vars v;
    std::vector<Polynomial> cs, es;
    for (int i = 0; i < 4; ++i) {
        cs.push_back(Polynomial::variable(v.table, VarDesc::seq_c(i)));
        es.push_back(Polynomial::variable(v.table, VarDesc::seq_e(i)));
    }
    Triangle t = gen_ace_seq(v.table, 4, v.a, cs, es);
    CHECK(t.at(1, 0) == es[0]);
    CHECK(t.at(1, 1) == cs[0]);

    // a = 0 with constant sequences: binomial-type recurrence
    std::vector<Polynomial> cc(5, v.c), ee(5, v.e);
    Triangle bt = gen_ace_seq(v.table, 5, v.zero, cc, ee);
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(bt.at(n, k) == v.c * bt.entry(n - 1, k - 1) + v.e * bt.entry(n - 1, k));
}

TEST_CASE("alternate recurrences equal their general4 specializations") {
    Vars v;
    Triangle ai = gen_alt_i(v.table, 6, v.c, v.d, v.e);
    CHECK(same_entries(ai, gen_general4(v.table, 6, v.zero, v.c, v.d, v.e)));
    CHECK(ai.at(0, 0) == v.one);
    CHECK(ai.at(2, 1) == (v.c * v.e).scale(2) + v.c * v.d);

    Triangle aii = gen_alt_ii(v.table, 6, v.a, v.c, v.e);
    CHECK(same_entries(aii, gen_general4(v.table, 6, v.a, v.c, v.zero, v.e)));
}

TEST_CASE("reversal identity") {
    Vars v;
    Triangle t = gen_general6(v.table, 5, v.a, v.c, v.d, v.e, v.f, v.g);
    Triangle rev = reverse(t);
    Triangle swapped = gen_general6(v.table, 5, v.d, v.e, v.a, v.c, v.f, v.g);
    CHECK(same_entries(rev, swapped));

    Triangle eul = gen_eulerian(v.table, 6);
    CHECK(same_entries(reverse(eul), eul));

    CHECK(same_entries(reverse(reverse(t)), t));
}

TEST_CASE("homogeneity and closed-form borders") {
    Vars v;
    Triangle t4 = gen_general4(v.table, 6, v.a, v.c, v.d, v.e);
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(t4.at(n, k).degrees() == std::set<int>{n});

    Triangle t6 = gen_general6(v.table, 6, v.a, v.c, v.d, v.e, v.f, v.g);
    for (int n = 0; n <= 6; ++n) {
        CHECK(t6.at(n, n) == v.c.pow(static_cast<unsigned>(n)));
        CHECK(t6.at(n, 0) == v.e.pow(static_cast<unsigned>(n)));
    }
}

TEST_CASE("csv and json export") {
    Vars v;
    Triangle t = gen_eulerian(v.table, 3);
    CHECK(t.to_csv() == "1\n1,1\n1,4,1\n1,11,11,1\n");
    auto j = t.to_json("eulerian", json::object());
    CHECK(j["nmax"] == 3);
    CHECK(j["rows"].size() == 4);
    Triangle sym = gen_general4(v.table, 2, v.a, v.c, v.d, v.e);
    CHECK_THROWS_AS((void)sym.to_csv(), std::invalid_argument);
}
