#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include "tritp/bijection.hpp"
#include "tritp/network.hpp"
#include "tritp/setpartitions.hpp"

#include <algorithm>
#include <set>

using namespace tritp;

TEST_CASE("total order examples") {
    auto big = SetPartition::from_blocks(9, {{1, 5, 8}, {2, 3, 9}, {4, 7}, {6}});
    CHECK(total_order(big) == std::vector<int>{1, 5, 6, 4, 7, 8, 2, 3, 9});

    CHECK(total_order(SetPartition::from_blocks(1, {{1}})) == std::vector<int>{1});

    // all singletons and the single full block both give the identity order
    CHECK(total_order(SetPartition::from_blocks(4, {{1}, {2}, {3}, {4}})) ==
          std::vector<int>{1, 2, 3, 4});
    CHECK(total_order(SetPartition::from_blocks(4, {{1, 2, 3, 4}})) ==
          std::vector<int>{1, 2, 3, 4});

    // the order always starts at 1 and is a permutation of [n]
    for (int n = 1; n <= 6; ++n)
        for_each_partition(n, [&](const SetPartition& pi) {
            auto p = total_order(pi);
            CHECK(p.size() == static_cast<std::size_t>(n));
            CHECK(p[0] == 1);
            auto sorted = p;
            std::sort(sorted.begin(), sorted.end());
            for (int x = 1; x <= n; ++x) CHECK(sorted[x - 1] == x);
        });
}

TEST_CASE("word map on basic families") {
    // 1|23 in Pi_{3,2} -> (n,k) = (2,1)
    auto pi = SetPartition::from_blocks(3, {{1}, {2, 3}});
    Word w = word_of_partition(pi);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == VarDesc::fam_a(1, 1, 0));
    CHECK(w[1] == VarDesc::fam_e(0, 1));
    CHECK(word_to_string(w) == "a(1,1,0) e(0,1)");

    // all singletons of [n+1]: n e-letters with l = 0, k = 0
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::vector<int>> singles;
        for (int x = 1; x <= n + 1; ++x) singles.push_back({x});
        Word ws = word_of_partition(SetPartition::from_blocks(n + 1, singles));
        REQUIRE(ws.size() == static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) CHECK(ws[t] == VarDesc::fam_e(n - 1 - t, 0));
        CHECK(validate_word(ws, n, 0).ok);
    }

    // the one-block partition of [n+1]: n a-letters with j = 0, k = n
    for (int n = 1; n <= 5; ++n) {
        std::vector<int> all(n + 1);
        for (int x = 1; x <= n + 1; ++x) all[x - 1] = x;
        Word wa = word_of_partition(SetPartition::from_blocks(n + 1, {all}));
        REQUIRE(wa.size() == static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) CHECK(wa[t] == VarDesc::fam_a(n - 1 - t, 0, t));
        CHECK(validate_word(wa, n, n).ok);
    }
}

TEST_CASE("letter counts track the block count") {
    for (int n = 1; n <= 7; ++n)
        for_each_partition(n + 1, [&](const SetPartition& pi) {
            int k = n + 1 - pi.block_count();
            Word w = word_of_partition(pi);
            int as = 0, es = 0;
            for (auto& d : w) (d.kind == VarDesc::Kind::FamA ? as : es)++;
            CHECK(as == k);
            CHECK(es == n - k);
            CHECK(validate_word(w, n, k).ok);
        });
}

TEST_CASE("round trip partition -> word -> partition") {
    for (int n = 0; n <= 8; ++n)
        for_each_partition(n + 1, [&](const SetPartition& pi) {
            int k = n + 1 - pi.block_count();
            Word w = word_of_partition(pi);
            SetPartition back = partition_of_word(w, n, k);
            CHECK(back.blocks == pi.blocks);
        });
}

TEST_CASE("words biject with network paths") {
    auto table = VariableTable::create();
    PlanarNetwork net = build_Dprime(table, 6);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            std::set<std::string> path_words;
            for (auto& p : enumerate_paths(net, n, k))
                path_words.insert(word_to_string(p.word));
            std::set<std::string> partition_words;
            for (auto& pi : enumerate_partitions(n + 1, n + 1 - k))
                partition_words.insert(word_to_string(word_of_partition(pi)));
            CHECK(path_words == partition_words);
        }
}

TEST_CASE("word weight matches the variant (ii) partition weight shape") {
    auto table = VariableTable::create();
    PlanarNetwork net = build_Dprime(table, 5);
    Triangle pm = path_matrix(net, 5);
    for (int n = 0; n <= 5; ++n)
        for (int k = 0; k <= n; ++k) {
            Polynomial sum(table, 0);
            for (auto& pi : enumerate_partitions(n + 1, n + 1 - k))
                sum += word_weight(table, word_of_partition(pi));
            CHECK(sum == pm.at(n, k));
        }
}

TEST_CASE("validation rejects malformed words") {
    // wrong length
    CHECK(!validate_word({}, 2, 1).ok);
    CHECK(validate_word({}, 2, 1).condition == 0);

    // first letter must sit at level n-1 with l = 0
    Word bad1{VarDesc::fam_e(1, 1), VarDesc::fam_e(0, 1)};
    auto v1 = validate_word(bad1, 2, 1);
    CHECK(!v1.ok);
    CHECK(v1.condition == 1);

    Word bad1b{VarDesc::fam_e(0, 0), VarDesc::fam_e(0, 0)};
    CHECK(validate_word(bad1b, 2, 0).condition == 1);

    // last letter must be e(0,k) or a(0,0,k-1)
    Word bad2{VarDesc::fam_e(1, 0), VarDesc::fam_e(0, 0)};
    auto v2 = validate_word(bad2, 2, 1);
    CHECK(!v2.ok);
    CHECK(v2.condition == 2);

    // after a(i,j,l): l must step up and j must not decrease
    Word bad3{VarDesc::fam_a(2, 1, 0), VarDesc::fam_a(1, 0, 1), VarDesc::fam_e(0, 2)};
    auto v3 = validate_word(bad3, 3, 2);
    CHECK(!v3.ok);
    CHECK(v3.condition == 3);
    CHECK(v3.position == 1);

    Word bad3b{VarDesc::fam_a(2, 0, 0), VarDesc::fam_e(1, 0), VarDesc::fam_e(0, 1)};
    CHECK(validate_word(bad3b, 3, 1).condition == 3);

    // after e(i,l): l must stay fixed
    Word bad4{VarDesc::fam_e(2, 0), VarDesc::fam_e(1, 1), VarDesc::fam_e(0, 1)};
    auto v4 = validate_word(bad4, 3, 1);
    CHECK(!v4.ok);
    CHECK(v4.condition == 4);

    // scalar letters are outside the alphabet
    Word bad0{VarDesc::make_scalar('c'), VarDesc::fam_e(0, 0)};
    CHECK(validate_word(bad0, 2, 0).condition == 0);

    CHECK_THROWS_AS((void)partition_of_word(bad3, 3, 2), std::invalid_argument);
    try {
        (void)partition_of_word(bad3, 3, 2);
    } catch (const std::invalid_argument& ex) {
        CHECK(std::string(ex.what()).find("condition 3") != std::string::npos);
    }
}

TEST_CASE("degenerate and boundary cases") {
    CHECK(validate_word({}, 0, 0).ok);
    SetPartition triv = partition_of_word({}, 0, 0);
    CHECK(triv.bar_string() == "1");

    Word w1{VarDesc::fam_e(0, 0)};
    CHECK(validate_word(w1, 1, 0).ok);
    CHECK(partition_of_word(w1, 1, 0).bar_string() == "1|2");

    Word w2{VarDesc::fam_a(0, 0, 0)};
    CHECK(validate_word(w2, 1, 1).ok);
    CHECK(partition_of_word(w2, 1, 1).bar_string() == "1,2");

    // a valid word rejected under mismatched (n,k)
    CHECK(!validate_word(w1, 1, 1).ok);
    CHECK(!validate_word(w2, 1, 0).ok);
}

TEST_CASE("word serialization round trips") {
    Word w{VarDesc::fam_a(3, 2, 0), VarDesc::fam_a(2, 2, 1), VarDesc::fam_e(1, 2),
           VarDesc::fam_e(0, 2)};
    CHECK(word_from_string(word_to_string(w)) == w);
    CHECK(word_from_json(word_to_json(w)) == w);
    CHECK(word_to_json(w).dump() == word_to_json(word_from_json(word_to_json(w))).dump());
    CHECK(word_from_string("").empty());
}
