#pragma once

// Exhaustive coefficientwise total-positivity certification of the leading
// N x N submatrix of a Triangle: deterministic minor enumeration, exact
// determinants (memoized cofactor expansion, with fraction-free elimination
// as an independent cross-check), parallel chunked execution, and resumable
// checkpoints.

#include "tritp/polyring.hpp"
#include "tritp/triangles.hpp"

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace tritp {

struct MinorSpec {
    std::vector<int> rows;   // strictly increasing
    std::vector<int> cols;   // strictly increasing, same length
    int order() const { return static_cast<int>(rows.size()); }
    friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
};

// Every minor of each order rmin..rmax exactly once, in a fixed order:
// ascending order r, then row sets in colex order, then column sets in
// colex order.
std::vector<MinorSpec> enumerate_minors(int N, int rmin, int rmax);

// Shared cache of subminor determinants keyed by (row set, column set)
// bitmasks; safe for concurrent readers and writers.
class MinorCache {
public:
    std::optional<Polynomial> get(std::uint64_t key) const;
    void put(std::uint64_t key, Polynomial value);

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::uint64_t, Polynomial> cache_;
};

// Exact determinant by cofactor expansion; subminors are shared through
// the cache when one is supplied.
Polynomial minor_det(const Triangle& tri, const MinorSpec& spec,
                     MinorCache* cache = nullptr);

// Fraction-free (Bareiss) elimination; division by earlier pivots is exact
// over the polynomial ring.  Independent cross-check path.
Polynomial minor_det_bareiss(const Triangle& tri, const MinorSpec& spec);

// Exact polynomial division; throws std::invalid_argument when the divisor
// does not divide evenly.
Polynomial divide_exact(const Polynomial& num, const Polynomial& den);

// FNV-1a digest of the leading N x N content, stable across runs.
std::uint64_t triangle_digest(const Triangle& tri, int N);

struct Witness {
    MinorSpec spec;
    std::uint64_t minor_index = 0;     // position in enumeration order
    std::string offending_monomial;
    std::string offending_coefficient;
};

enum class TPStatus { Certified, Refuted, Partial };

struct TPReport {
    std::string matrix;                // descriptor supplied by the caller
    int N = 0;
    int rmax = 0;
    std::uint64_t minors_total = 0;
    std::uint64_t minors_checked = 0;
    std::vector<std::uint64_t> minors_per_order;   // index r-1
    TPStatus status = TPStatus::Partial;
    std::optional<Witness> witness;
    double wall_seconds = 0.0;         // excluded from body()

    json body() const;                 // deterministic report content
    json full() const;                 // body plus timing metadata
};

struct CheckOptions {
    int rmax = 0;                      // 0 = N (full order coverage)
    int jobs = 1;
    std::string checkpoint_path;       // empty = no checkpointing
    double budget_seconds = 0.0;       // 0 = unlimited
    std::uint64_t max_chunks = 0;      // 0 = unlimited (test hook)
    int chunk_size = 32;
    std::string matrix_name = "matrix";
};

// Evaluates every enumerated minor (all of them even after a failure, so
// the witness is the first failure in enumeration order under any
// parallelism); Partial only when the budget runs out, with a checkpoint
// written when a path is configured.
TPReport check_total_positivity(const Triangle& tri, int N,
                                const CheckOptions& opts);

// Continues from a checkpoint; refuses on digest mismatch or corruption.
TPReport resume(const std::string& checkpoint_path, const Triangle& tri,
                int N, const CheckOptions& opts);

}  // namespace tritp
