#pragma once

// Generators for the combinatorial triangle families: Eulerian, reversed
// Stirling, the four- and six-parameter polynomial families, the alternate
// recurrences, and the a/(c_i)/(e_i) sequence family.

#include "tritp/polyring.hpp"

#include <span>
#include <vector>

namespace tritp {

// Lower-triangular matrix of polynomials T(n,k), 0 <= k <= n <= nmax.
// Entries outside the triangle are zero.
struct Triangle {
    TablePtr table;
    int nmax = 0;
    std::vector<std::vector<Polynomial>> rows;

    const Polynomial& at(int n, int k) const;      // bounds-checked
    Polynomial entry(int n, int k) const;          // zero outside the triangle

    bool is_integer() const;                       // all entries constant
    json to_json(const std::string& family, const json& params) const;
    std::string to_csv() const;                    // integer triangles only
    std::string to_text() const;
};

bool same_entries(const Triangle& a, const Triangle& b);

// Pascal table binom[n][k] for 0 <= k <= n <= nmax, exact.
std::vector<std::vector<Int>> pascal_table(int nmax);

// T(n,k) = [a(n-k)+c] T(n-1,k-1) + (dk+e) T(n-1,k) + [f(n-2)+g] T(n-2,k-1)
Triangle gen_general6(const TablePtr& table, int nmax,
                      const Polynomial& a, const Polynomial& c,
                      const Polynomial& d, const Polynomial& e,
                      const Polynomial& f, const Polynomial& g);

// The four-parameter family: general6 with f = g = 0.
Triangle gen_general4(const TablePtr& table, int nmax,
                      const Polynomial& a, const Polynomial& c,
                      const Polynomial& d, const Polynomial& e);

// Integer triangles by their own direct recurrences.
Triangle gen_eulerian(const TablePtr& table, int nmax);
Triangle gen_rev_stirling(const TablePtr& table, int nmax);

// T(n,k) = c_{n-1} T(n-1,k-1)
//        + sum_{m=0}^{n-1} C(n-1,m) a^m e_{n-1-m} T(n-1-m,k-m)
Triangle gen_ace_seq(const TablePtr& table, int nmax, const Polynomial& a,
                     std::span<const Polynomial> c_seq,
                     std::span<const Polynomial> e_seq);

// Alternate recurrences; equal to gen_general4(0,c,d,e) and
// gen_general4(a,c,0,e) respectively, as polynomials.
Triangle gen_alt_i(const TablePtr& table, int nmax, const Polynomial& c,
                   const Polynomial& d, const Polynomial& e);
Triangle gen_alt_ii(const TablePtr& table, int nmax, const Polynomial& a,
                    const Polynomial& c, const Polynomial& e);

// Entry (n,k) of the result is entry (n,n-k) of the input.
Triangle reverse(const Triangle& tri);

}  // namespace tritp
