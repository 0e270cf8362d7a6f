#pragma once

// Exact counting sequences (Stirling, Bell, Catalan, Narayana, Riordan,
// Kreweras, ballot-style Catalan triangle) and Bell polynomials over a
// commutative ring. Everything here is exact; no floating point.

#include <string>
#include <vector>

#include "wishart/errors.hpp"
#include "wishart/partitions.hpp"
#include "wishart/rational.hpp"

namespace wishart {

enum class CountKind {
    STIRLING1,        // signed s(n,m), coefficients of falling factorials
    STIRLING2,        // S(n,m), set partitions of [n] into m blocks
    BELL,             // B(n), all set partitions of [n]
    CATALAN,          // C_n, non-crossing partitions of [n]
    NARAYANA,         // N_{n,m}, non-crossing with m blocks
    RIORDAN_NM,       // R_{n,m}, non-crossing, no singleton, m blocks
    RIORDAN_N,        // R_n = sum_m R_{n,m}
    KREWERAS,         // K(mu), non-crossing partitions of a given type
    CATALAN_TRIANGLE, // C_{n,m}, non-crossing partitions whose first block has size m
    POCHHAMMER,       // (n)_m = n! / (n-m)!
    GAUSS_EVEN,       // v_{2n} = (2n)! / (2^n n!), even standard Gaussian moments
};

CountKind count_kind_from_string(const std::string& name);
std::string to_string(CountKind kind);

Int factorial(int n);
Int binomial(int n, int k); // 0 outside the triangle

Int stirling1(int n, int m);
Int stirling2(int n, int m);
Int bell_number(int n);
Int catalan(int n);
Int narayana(int n, int m);
Int riordan_nm(int n, int m);
Int riordan_n(int n);
Int kreweras_count(const PartitionType& type);
Int catalan_triangle(int n, int m);
Int pochhammer(int n, int m);
Int gauss_even(int n);

// Uniform entry point used by the CLI. KREWERAS reads args as the mu vector
// (args[k-1] = number of blocks of size k); everything else takes one or two
// indices.
Int count(CountKind kind, const std::vector<long long>& args);

// Partial Bell polynomial with k parts of total weight n, per the composition
// sum (n!/k!) sum_{m_1+...+m_k=n} prod x_{m_i}/m_i!, computed by the standard
// recursion. x is 1-based conceptually: x[i-1] stands for x_i. The ring only
// needs +, *, and scaling by an exact rational.
template <class Ring>
Ring bell_partial(int k, int n, const std::vector<Ring>& x) {
    if (k < 1 || n < 1 || k > n) throw InputError("bell_partial needs 1 <= k <= n");
    if (static_cast<int>(x.size()) < n) throw InputError("bell_partial: x is too short");
    // dynamic program over part counts, using the one-step recursion
    // B_{j,w} = sum_i binom(w-1, i-1) x_i B_{j-1,w-i}; row[w] holds B_{j,w}
    std::vector<Ring> row(static_cast<size_t>(n) + 1);
    for (int w = 1; w <= n; ++w) row[static_cast<size_t>(w)] = x[static_cast<size_t>(w - 1)];
    for (int j = 2; j <= k; ++j) {
        std::vector<Ring> next(static_cast<size_t>(n) + 1);
        for (int w = j; w <= n; ++w) {
            Ring acc{};
            for (int i = 1; i <= w - (j - 1); ++i)
                acc = acc + x[static_cast<size_t>(i - 1)] * Rat(binomial(w - 1, i - 1)) *
                                row[static_cast<size_t>(w - i)];
            next[static_cast<size_t>(w)] = acc;
        }
        row = std::move(next);
    }
    return row[static_cast<size_t>(n)];
}

// Complete Bell polynomial B_n = sum_k B_{k,n}; B_0 is the ring unit, which
// the caller supplies since the ring type cannot conjure it.
template <class Ring>
Ring bell_complete(int n, const std::vector<Ring>& x, const Ring& one) {
    if (n < 0) throw InputError("bell_complete needs n >= 0");
    if (n == 0) return one;
    if (static_cast<int>(x.size()) < n) throw InputError("bell_complete: x is too short");
    Ring acc{};
    for (int k = 1; k <= n; ++k) acc = acc + bell_partial(k, n, x);
    return acc;
}

// Inverse of the complete Bell transform: recovers x_n from y_1..y_n when the
// series exp(sum t^n x_n / n!) = sum t^n y_n / n! holds with y_0 = 1.
template <class Ring>
Ring bell_inverse(int n, const std::vector<Ring>& y) {
    if (n < 1) throw InputError("bell_inverse needs n >= 1");
    Ring acc{};
    for (int k = 1; k <= n; ++k) {
        Rat c = Rat(factorial(k - 1));
        if (k % 2 == 0) c = -c;
        acc = acc + bell_partial(k, n, y) * c;
    }
    return acc;
}

Rat bell_complete(int n, const std::vector<Rat>& x);

// Checks the two Bell-polynomial tail bounds for a sequence that vanishes
// below order p and grows at most like n! rho beta^n:
//   |B_{pn}(x) - (np)!/n! (x_p/p!)^n|  <=  (np)!/2 (2 beta)^{pn}  sum_{1<=k<n} (rho/2^{p-1})^k / k!
//   |B_{pn+q}(x)|                      <=  (np+q)!/2 (2 beta)^{pn+q} sum_{1<=k<=n} (rho/2^{p-1})^k / k!
// Inputs that violate the decay hypothesis are refused.
bool growth_bound_check(int p, const Rat& rho, const Rat& beta, const std::vector<Rat>& x,
                        int n, int q);

} // namespace wishart
