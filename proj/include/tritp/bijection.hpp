#pragma once

// The partition <-> path-word bijection: total order on [n+1], the word
// map, word validation against the path-word conditions, and the inverse
// insertion algorithm.

#include "tritp/polyring.hpp"
#include "tritp/setpartitions.hpp"

#include <string>
#include <vector>

namespace tritp {

// Letters w_n ... w_1 in traversal order; each letter is a(i,j,l) or e(i,l).
using Word = std::vector<VarDesc>;

// The sequence 1, p_1, ..., p_n: the block of 1 together with the largest
// elements of the other blocks in increasing order, then the remaining
// elements of each non-first block inserted ascending immediately before
// that block's largest element.
std::vector<int> total_order(const SetPartition& pi);

// Word of length n for pi in Pi_{n+1, n-k+1}.
Word word_of_partition(const SetPartition& pi);

struct WordValidation {
    bool ok = true;
    int condition = 0;     // 1..4, first violated condition; 0 when ok
    std::size_t position = 0;
    std::string message;
};

// Checks the four path-word conditions plus length n; a valid word is the
// word of exactly one path from u_n to v_k.
WordValidation validate_word(const Word& w, int n, int k);

// Inverse insertion algorithm; throws std::invalid_argument (citing the
// first violated condition) on invalid words.
SetPartition partition_of_word(const Word& w, int n, int k);

// Commutative product of the word's letters.
Polynomial word_weight(const TablePtr& table, const Word& w);

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);
json word_to_json(const Word& w);
Word word_from_json(const json& j);

}  // namespace tritp
