#pragma once

// Set partitions of [n] in canonical form, restricted-growth enumeration,
// and the weighted generating-polynomial interpretations that serve as an
// independent oracle for the triangle recurrences.

#include "tritp/polyring.hpp"
#include "tritp/triangles.hpp"

#include <functional>
#include <vector>

namespace tritp {

enum class ElementStatus { Opener, Closer, Insider, Singleton };

// Blocks pairwise disjoint, union [n], each sorted ascending, blocks
// ordered by minimum element; the block containing 1 comes first.
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
    // Restricted-growth string rgs[i] = block index of element i+1.
    static SetPartition from_rgs(const std::vector<int>& rgs);

    int block_count() const { return static_cast<int>(blocks.size()); }
    int block_index_of(int i) const;        // 1 <= i <= n
    int smallest_in_block_of(int i) const;  // min of i's block
    ElementStatus status(int i) const;

    std::string bar_string() const;         // "156|47|239"
    json to_json() const;

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

// All of Pi_{n,k} in canonical form; count = Stirling-subset(n,k).
std::vector<SetPartition> enumerate_partitions(int n, int k);

// Visits all of Pi_n (every block count).
void for_each_partition(int n, const std::function<void(const SetPartition&)>& fn);

// Stirling subset numbers by their recurrence, exact.
std::vector<std::vector<Int>> stirling_subset_table(int nmax);

// Weight monomial prod_{i=2}^{n} w(i) where w(i) depends on smallest(pi,i):
//   variant (i):  = 1 -> e,  = i -> c,  otherwise -> d
//   variant (ii): = 1 -> c,  = i -> e,  otherwise -> a
Polynomial weight_i(const SetPartition& pi, const Polynomial& c,
                    const Polynomial& d, const Polynomial& e);
Polynomial weight_ii(const SetPartition& pi, const Polynomial& a,
                     const Polynomial& c, const Polynomial& e);

// Partition-sum triangles:
//   variant (i):  T(n,k) = sum over Pi_{n+1,k+1} of weight_i
//   variant (ii): T(n,k) = sum over Pi_{n+1,n+1-k} of weight_ii
// Refuses nmax > 10 (exhaustive enumeration guard).
Triangle triangle_from_partitions_i(const TablePtr& table, int nmax,
                                    const Polynomial& c, const Polynomial& d,
                                    const Polynomial& e);
Triangle triangle_from_partitions_ii(const TablePtr& table, int nmax,
                                     const Polynomial& a, const Polynomial& c,
                                     const Polynomial& e);

}  // namespace tritp
