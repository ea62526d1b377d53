#pragma once

// Weighted acyclic planar grid networks: the standard binomial-like network
// D and the edge-deleted, relabelled network D', path enumeration, path
// matrices, and brute-force nonintersecting path families for LGV checks.

#include "tritp/polyring.hpp"
#include "tritp/triangles.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace tritp {

// Triangular-number arithmetic: tri(n) = C(n+1,2).
int triangular(int n);
bool is_triangular(int t);
int tri_inverse(int t);   // throws unless t is triangular
int triceil(int k);       // smallest triangular number >= k
int tridefect(int k);     // triceil(k) - k

struct Vertex {
    int i = 0, j = 0;     // 0 <= i <= j; i decreases along every edge
    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct NetEdge {
    Polynomial weight;
    std::optional<VarDesc> letter;   // set iff the edge is coloured
};

// Grid on {(i,j) : 0 <= i <= j <= J} with horizontal edges (i,j)->(i-1,j)
// and diagonal edges (i,j)->(i-1,j-1); absent optionals are deleted edges.
class PlanarNetwork {
public:
    enum class Kind { D, Dprime };

    TablePtr table;
    Kind kind = Kind::D;
    int J = 0;

    const std::optional<NetEdge>& horizontal(int i, int j) const;
    const std::optional<NetEdge>& diagonal(int i, int j) const;
    void set_horizontal(int i, int j, NetEdge e);
    void set_diagonal(int i, int j, NetEdge e);

    Vertex source(int n) const;   // D: (n,n); D': (tri(n),tri(n))
    Vertex sink(int k) const;     // D: (0,k); D': (0,tri(k))
    int max_source_index() const;

    int vertex_id(const Vertex& v) const { return v.j * (v.j + 1) / 2 + v.i; }
    int vertex_count() const { return (J + 1) * (J + 2) / 2; }

    json to_json() const;
    std::string to_dot() const;

private:
    friend PlanarNetwork make_grid(const TablePtr&, Kind, int);
    std::vector<std::vector<std::optional<NetEdge>>> horiz_, diag_;  // [j][i]
};

using WeightFn = std::function<Polynomial(int i, int l)>;

// Full grid with horizontal weight alpha(i, j-i+1) and diagonal weight
// beta(i, j-i); every polynomial weight counts as a coloured edge iff it
// is a single variable.
PlanarNetwork build_D(const TablePtr& table, int jmax,
                      const WeightFn& alpha, const WeightFn& beta);

// Convenience D weightings.
PlanarNetwork build_D_stirling(const TablePtr& table, int jmax);  // alpha=1, beta=l
PlanarNetwork build_D_cde(const TablePtr& table, int jmax,
                          const Polynomial& c, const Polynomial& d,
                          const Polynomial& e);                   // alpha=c, beta=ld+e

// D' from the triangular-arithmetic weight formulas, grid up to tri(nmax).
PlanarNetwork build_Dprime(const TablePtr& table, int nmax);

struct Path {
    std::vector<Vertex> verts;       // from source towards sink
    Polynomial weight;
    std::vector<VarDesc> word;       // coloured letters in traversal order
};

// All directed paths between two grid vertices (empty when unreachable).
// Throws if the path count would exceed `budget`.
std::vector<Path> enumerate_paths(const PlanarNetwork& net, Vertex from,
                                  Vertex to, std::uint64_t budget = 1u << 24);
std::vector<Path> enumerate_paths(const PlanarNetwork& net, int n, int k,
                                  std::uint64_t budget = 1u << 24);
std::uint64_t count_paths(const PlanarNetwork& net, Vertex from, Vertex to);

// Entry (n,k) = sum of path weights from u_n to v_k.
Triangle path_matrix(const PlanarNetwork& net, int nmax);

// e_{i,l} -> e, a_{i,0,l} -> c, a_{i,j,l} -> a for j > 0, over the same table.
Triangle specialize_ace(const Triangle& tri, const Polynomial& a,
                        const Polynomial& c, const Polynomial& e);

// Shift the l-index of every family symbol by m (relabeling identity).
Polynomial shift_family_l(const Polynomial& p, int m);

// All vertex-disjoint path families connecting source n_t to sink k_t
// (identity matching; full compatibility makes it the only contributor).
// Guard: at most 4 sources at desk scale.
std::vector<std::vector<Path>> nonintersecting_families(
    const PlanarNetwork& net, const std::vector<int>& sources,
    const std::vector<int>& sinks);

// Sum over nonintersecting families of the product of path weights.
Polynomial lgv_family_sum(const PlanarNetwork& net,
                          const std::vector<int>& sources,
                          const std::vector<int>& sinks);

}  // namespace tritp
