#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include "tritp/tpcheck.hpp"
#include "tritp/triangles.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

using namespace tritp;

namespace {

struct Vars {
    TablePtr table = VariableTable::create();
    Polynomial a, c, d, e, zero, one;
    Vars() {
        a = Polynomial::variable(table, VarDesc::make_scalar('a'));
        c = Polynomial::variable(table, VarDesc::make_scalar('c'));
        d = Polynomial::variable(table, VarDesc::make_scalar('d'));
        e = Polynomial::variable(table, VarDesc::make_scalar('e'));
        zero = Polynomial(table, 0);
        one = Polynomial(table, 1);
    }
};

// Triangle with integer rows, for hand-checkable cases.
Triangle int_triangle(const TablePtr& table, std::vector<std::vector<long>> rows) {
    Triangle t;
    t.table = table;
    t.nmax = static_cast<int>(rows.size()) - 1;
    for (auto& r : rows) {
        std::vector<Polynomial> row;
        for (long v : r) row.emplace_back(table, v);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Independent oracle: Leibniz sum over permutations.
Polynomial leibniz_det(const Triangle& tri, const MinorSpec& spec) {
    std::size_t r = spec.rows.size();
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial det(tri.table, 0);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (perm[i] > perm[j]) ++inv;
        Polynomial term(tri.table, inv % 2 == 0 ? 1 : -1);
        for (std::size_t i = 0; i < r; ++i)
            term *= tri.entry(spec.rows[i], spec.cols[static_cast<int>(perm[i])]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

MinorSpec random_spec(std::mt19937& rng, int N, int rmax) {
    std::uniform_int_distribution<int> order(1, rmax);
    int r = order(rng);
    auto subset = [&] {
        std::vector<int> all(static_cast<std::size_t>(N));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> s(all.begin(), all.begin() + r);
        std::sort(s.begin(), s.end());
        return s;
    };
    return MinorSpec{subset(), subset()};
}

std::string temp_ckpt(const char* tag) {
    return (std::filesystem::temp_directory_path() /
            (std::string("tritp_test_") + tag + ".ckpt")).string();
}

}  // namespace

TEST_CASE("minor enumeration counts and order") {
    CHECK(enumerate_minors(2, 1, 2).size() == 5);
    CHECK(enumerate_minors(3, 1, 3).size() == 19);
    CHECK(enumerate_minors(6, 1, 6).size() == 923);
    CHECK(enumerate_minors(7, 1, 7).size() == 3431);

    auto m3 = enumerate_minors(3, 1, 3);
    // ascending order; within an order, colex row sets then colex col sets
    CHECK(m3[0] == MinorSpec{{0}, {0}});
    CHECK(m3[1] == MinorSpec{{0}, {1}});
    CHECK(m3[3] == MinorSpec{{1}, {0}});
    CHECK(m3[9] == MinorSpec{{0, 1}, {0, 1}});
    CHECK(m3[10] == MinorSpec{{0, 1}, {0, 2}});
    CHECK(m3[12] == MinorSpec{{0, 2}, {0, 1}});
    CHECK(m3[15] == MinorSpec{{1, 2}, {0, 1}});
    CHECK(m3[18] == MinorSpec{{0, 1, 2}, {0, 1, 2}});
    for (std::size_t t = 0; t < m3.size(); ++t) CHECK(m3[t].order() == (t < 9 ? 1 : t < 18 ? 2 : 3));

    // deterministic
    CHECK(enumerate_minors(5, 2, 4) == enumerate_minors(5, 2, 4));
    CHECK_THROWS_AS((void)enumerate_minors(3, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)enumerate_minors(3, 2, 4), std::invalid_argument);
}

TEST_CASE("determinants by hand") {
    Vars v;
    Triangle t = gen_general4(v.table, 3, v.a, v.c, v.d, v.e);
    CHECK(minor_det(t, MinorSpec{{0}, {0}}) == v.one);
    CHECK(minor_det(t, MinorSpec{{0, 1}, {0, 1}}) == v.c);
    CHECK(minor_det(t, MinorSpec{{1, 2}, {0, 1}}) ==
          v.a * v.e * v.e + v.c * v.d * v.e + v.c * v.e * v.e);

    Triangle eul = gen_eulerian(v.table, 3);
    CHECK(minor_det(eul, MinorSpec{{1, 2}, {0, 1}}) == Polynomial(v.table, 3));
    CHECK(minor_det(eul, MinorSpec{{0, 1}, {1, 2}}).is_zero());
}

TEST_CASE("memoized cofactor, Bareiss and Leibniz agree") {
    Vars v;
    Triangle sym = gen_general4(v.table, 5, v.a, v.c, v.d, v.e);
    Triangle eul = gen_eulerian(v.table, 7);
    std::mt19937 rng(2024);
    MinorCache cache;
    for (int trial = 0; trial < 60; ++trial) {
        MinorSpec spec = random_spec(rng, 6, 4);
        Polynomial ref = leibniz_det(sym, spec);
        CHECK(minor_det(sym, spec, &cache) == ref);
        CHECK(minor_det_bareiss(sym, spec) == ref);
    }
    for (int trial = 0; trial < 200; ++trial) {
        MinorSpec spec = random_spec(rng, 8, 4);
        Polynomial ref = leibniz_det(eul, spec);
        CHECK(minor_det(eul, spec) == ref);
        CHECK(minor_det_bareiss(eul, spec) == ref);
    }
}

TEST_CASE("exact division") {
    Vars v;
    std::mt19937 rng(99);
    Polynomial p = (v.a + v.c).pow(3) * (v.d + v.e) + v.e.pow(2);
    Polynomial q = v.a * v.d + v.c.scale(2) + v.one;
    CHECK(divide_exact(p * q, q) == p);
    CHECK(divide_exact(p * q, p) == q);
    CHECK(divide_exact(v.zero, q).is_zero());
    CHECK_THROWS_AS((void)divide_exact(p * q + v.one, q), std::invalid_argument);
    CHECK_THROWS_AS((void)divide_exact(v.a, v.a * v.a), std::invalid_argument);
    CHECK_THROWS_AS((void)divide_exact(p, v.zero), std::invalid_argument);
}

TEST_CASE("triangle digest is content-addressed") {
    Vars v;
    Triangle a = gen_eulerian(v.table, 5);
    Triangle b = gen_eulerian(v.table, 5);
    CHECK(triangle_digest(a, 6) == triangle_digest(b, 6));
    CHECK(triangle_digest(a, 5) != triangle_digest(a, 6));
    Triangle mut = a;
    mut.rows[3][1] += v.one;
    CHECK(triangle_digest(mut, 6) != triangle_digest(a, 6));
    CHECK(triangle_digest(mut, 3) == triangle_digest(a, 3));  // row 3 not covered
}

TEST_CASE("certification of known positive triangles") {
    Vars v;
    CheckOptions opts;
    opts.matrix_name = "eulerian";
    Triangle eul = gen_eulerian(v.table, 5);
    TPReport rep = check_total_positivity(eul, 6, opts);
    CHECK(rep.status == TPStatus::Certified);
    CHECK(rep.minors_total == 923);
    CHECK(rep.minors_checked == 923);
    CHECK(rep.minors_per_order == std::vector<std::uint64_t>{36, 225, 400, 225, 36, 1});
    CHECK(!rep.witness.has_value());
    auto body = rep.body();
    CHECK(body["status"] == "certified");
    CHECK(body["witness"].is_null());
    CHECK(rep.full().contains("timing"));

    Triangle sym = gen_general4(v.table, 3, v.a, v.c, v.d, v.e);
    TPReport srep = check_total_positivity(sym, 4, opts);
    CHECK(srep.status == TPStatus::Certified);
    CHECK(srep.minors_total == 69);
}

TEST_CASE("planted negative entry is refuted with the first witness") {
    auto table = VariableTable::create();
    Triangle bad = int_triangle(table, {{1}, {1, 2}, {3, 1, 1}});
    CheckOptions opts;
    opts.matrix_name = "planted-negative";
    TPReport rep = check_total_positivity(bad, 3, opts);
    REQUIRE(rep.status == TPStatus::Refuted);
    CHECK(rep.minors_total == 19);
    CHECK(rep.minors_checked == 19);  // evaluation continues past the failure
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->spec == MinorSpec{{1, 2}, {0, 1}});
    CHECK(rep.witness->minor_index == 15);
    CHECK(rep.witness->offending_coefficient == "-5");
    CHECK(minor_det(bad, rep.witness->spec) == Polynomial(table, -5));
}

TEST_CASE("parallel execution is deterministic") {
    auto table = VariableTable::create();
    Triangle bad = int_triangle(table, {{1}, {1, 2}, {3, 1, 1}, {1, 5, 1, 1}});
    CheckOptions one;
    one.jobs = 1;
    one.chunk_size = 3;
    CheckOptions four = one;
    four.jobs = 4;
    for (int rep = 0; rep < 5; ++rep)
        CHECK(check_total_positivity(bad, 4, four).body().dump() ==
              check_total_positivity(bad, 4, one).body().dump());

    Vars v;
    Triangle eul = gen_eulerian(v.table, 5);
    CheckOptions e1, e4;
    e4.jobs = 4;
    CHECK(check_total_positivity(eul, 6, e4).body().dump() ==
          check_total_positivity(eul, 6, e1).body().dump());
}

TEST_CASE("interrupted run resumes to a byte-identical report") {
    Vars v;
    Triangle eul = gen_eulerian(v.table, 4);
    const std::string path = temp_ckpt("resume");
    std::remove(path.c_str());

    CheckOptions full;
    full.chunk_size = 7;
    full.matrix_name = "eulerian-5x5";
    json oneshot = check_total_positivity(eul, 5, full).body();

    CheckOptions interrupted = full;
    interrupted.checkpoint_path = path;
    interrupted.max_chunks = 2;
    TPReport part = check_total_positivity(eul, 5, interrupted);
    CHECK(part.status == TPStatus::Partial);
    CHECK(part.minors_checked < part.minors_total);
    CHECK(part.minors_checked == 14);

    CheckOptions cont = full;
    TPReport done = resume(path, eul, 5, cont);
    CHECK(done.status == TPStatus::Certified);
    CHECK(done.body().dump() == oneshot.dump());

    // resuming a finished checkpoint recomputes nothing and matches again
    TPReport again = resume(path, eul, 5, cont);
    CHECK(again.body().dump() == oneshot.dump());
    std::remove(path.c_str());
}

TEST_CASE("resume refuses a changed matrix or a corrupt file") {
    Vars v;
    Triangle eul = gen_eulerian(v.table, 4);
    const std::string path = temp_ckpt("mismatch");
    CheckOptions opts;
    opts.checkpoint_path = path;
    opts.max_chunks = 1;
    opts.chunk_size = 8;
    (void)check_total_positivity(eul, 5, opts);

    Triangle other = gen_rev_stirling(v.table, 4);
    CheckOptions cont;
    CHECK_THROWS_WITH_AS(resume(path, other, 5, cont) /* wrong matrix */,
                         "checkpoint digest mismatch: matrix changed",
                         std::runtime_error);
    CHECK_THROWS_AS(resume(path, eul, 4, cont), std::runtime_error);  // wrong N

    std::ofstream(path, std::ios::binary | std::ios::trunc) << "not a checkpoint";
    CHECK_THROWS_AS(resume(path, eul, 5, cont), std::runtime_error);
    CHECK_THROWS_AS(resume(temp_ckpt("missing"), eul, 5, cont), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("option validation") {
    Vars v;
    Triangle eul = gen_eulerian(v.table, 4);
    CheckOptions opts;
    CHECK_THROWS_AS(check_total_positivity(eul, 0, opts), std::invalid_argument);
    CHECK_THROWS_AS(check_total_positivity(eul, 6, opts), std::invalid_argument);
    opts.rmax = 9;
    CHECK_THROWS_AS(check_total_positivity(eul, 5, opts), std::invalid_argument);
    opts.rmax = 2;
    opts.chunk_size = 0;
    CHECK_THROWS_AS(check_total_positivity(eul, 5, opts), std::invalid_argument);
    opts.chunk_size = 16;
    TPReport rep = check_total_positivity(eul, 5, opts);
    CHECK(rep.rmax == 2);
    CHECK(rep.minors_total == 25 + 100);
}
