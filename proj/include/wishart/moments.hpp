#pragma once

// The moment hierarchy built on top of the pairing engine: Catalan-style
// recursions and partition closed forms for the limit objects, exact
// finite-sample assembly in the sample count, isotropic specializations,
// limiting spectral moments, and the first-block coefficient tables.

#include <map>
#include <string>
#include <vector>

#include "wishart/partitions.hpp"
#include "wishart/rational.hpp"
#include "wishart/tracepoly.hpp"

namespace wishart {

// Operations with two independent implementations take a route selector so
// tests (and suspicious users) can cross them.
enum class Route { RECURSION, CLOSED_FORM };
Route route_from_string(const std::string& name);
std::string to_string(Route route);

// Sum of the uncentered pair moments over non-crossing pairings of 2n
// factors, by its quadratic recursion. n <= 8.
TracePolynomial m_plus(int n);

// Gaussian-limit carre du champ iterate Sigma_n, either by the quadratic
// trace recursion or by the closed sum over non-crossing partitions with the
// first-block power pulled out. n <= 8.
TracePolynomial sigma(int n, Route route);

// Tr Sigma_n expanded over trace monomials: whole polynomial plus the table
// of multiplicity vectors with their multinomial weights 2 n! / prod mu_i!.
// mu[i-1] counts trace factors of order i. n <= 10.
struct TraceWeight {
    std::vector<int> mu;
    Int coeff;
};
struct SigmaTrace {
    TracePolynomial poly;
    std::vector<TraceWeight> table;
};
SigmaTrace sigma_trace(int n);

// Refinement of sigma by number of blocks: m-block non-crossing partitions
// only, via the two-index recursion or the Kreweras-complement closed form.
// Conventions: (0,0) gives the identity, (n,0) vanishes for n >= 1. n <= 8.
TracePolynomial sigma_circ(int n, int m, Route route);

// Coefficient of N^{-(n-m)} in the exact expansion of E[(sample mean of n
// factors)^n]: signed-Stirling recombination of the block-count class sums.
// centered selects the fluctuation (no-singleton) hierarchy.
TracePolynomial partial_moment(int n, int m, bool centered, int max_n = 0);

// Exact N dependence of the n-th moment of the rescaled fluctuation
// sqrt(N) (P_N - P), premultiplied by N^{n/2} so everything is polynomial:
//   N^{n/2} E(H_N^n) = sum_m (N)_m M_{n,m} = sum_l N^l D_{n,l}.
struct HnMoment {
    int n = 0;
    std::map<int, TracePolynomial> by_class; // m -> M_{n,m}, weight (N)_m
    std::map<int, TracePolynomial> by_power; // l -> coefficient of N^l

    // N^{n/2} E(H_N^n) at a rational sample count; exact for every n
    TracePolynomial scaled_eval(const Rat& samples) const;
    // E(H_N^n) itself; n must be even so the N^{-n/2} stays rational
    TracePolynomial eval(const Rat& samples) const;
};
HnMoment hn_moment(int n, int max_n = 0);

// E[P_N^n] (or the centered variant) at a rational sample count N. The
// default weights the m-block class sum by the falling factorial (N)_m;
// BINOMIAL divides by m! for the draw-without-order convention.
enum class WeightConvention { FALLING_FACTORIAL, BINOMIAL };
TracePolynomial pn_moment(int n, const Rat& samples, bool centered,
                          WeightConvention conv = WeightConvention::FALLING_FACTORIAL,
                          int max_n = 0);

// Recovers the m-block centered class sum M_{n,m} from the moments of
// partial sums: S_k = E[(sum_{i<=k} (X_i - P))^n] expanded over all label
// assignments, then the order-m forward difference at zero. Independent of
// the class enumeration, so it cross-checks it.
TracePolynomial inversion(int n, int m, int max_n = 0);

// --- isotropic closed forms (P = identity, dimension r symbolic) -----------

enum class IsotropicKind { M_PI_CIRC, M_PI_CENTERED, X_MINUS_I_POWER, M_PLUS_I, RANK1_POWER };
IsotropicKind isotropic_kind_from_string(const std::string& name);
std::string to_string(IsotropicKind kind);

// Uncentered partition moment at the identity for a non-crossing partition
// of the given type: one factor (1/r) prod_{0<=l<k} (r+2l) per block of size
// k. Crossing partitions do not reduce to their type (they pick up an extra
// 1/r); use the pairing engine for those.
RLaurent iso_moment_uncentered(const PartitionType& type);

// Centered partition moment at the identity, again for non-crossing
// partitions only; zero when a singleton block is present, otherwise the
// product of the centered power scalars.
RLaurent iso_moment_centered(const PartitionType& type);

// Scalar coefficient of E[(X - I)^n]: complete Bell polynomial route, or the
// alternating binomial sum over uncentered even-moment products.
enum class IsoRoute { BELL, BINOMIAL };
RLaurent iso_centered_power(int n, IsoRoute route = IsoRoute::BELL); // n <= 12

// Non-crossing pair sum at the identity: Catalan number times (1+r)^n.
RLaurent iso_m_plus(int n); // n <= 12

// E[X^n] for one rank-one factor at general P, by the Bell-polynomial closed
// form in the trace powers. n <= 10.
TracePolynomial rank1_power(int n);

// --- limiting spectral moments --------------------------------------------

enum class LimitKind { MP_MOMENT, MP_MOMENT_ISO, MP_CENTERED_ISO, SEMICIRCLE_SIGMA, MP_INTEGRAL, SC_INTEGRAL };
LimitKind limit_kind_from_string(const std::string& name);
std::string to_string(LimitKind kind);

// n-th limiting moment of the sample spectral distribution at aspect ratio
// rho, for normalized trace data tau[i-1] = limit of Tr(P^i)/r. Sum over
// non-crossing partitions weighted by Kreweras counts. n <= 12.
Rat mp_moment(int n, const Rat& rho, const std::vector<Rat>& tau);

// Same with tau identically one: Narayana-weighted polynomial in rho.
Rat mp_moment_iso(int n, const Rat& rho);

// Centered variant: no-singleton non-crossing counts replace Narayana.
Rat mp_centered_iso(int n, const Rat& rho);

// Normalized limit of Tr Sigma_n: the sigma_trace table evaluated at tau.
Rat semicircle_sigma(int n, const std::vector<Rat>& tau);

// Numeric moments of the limiting spectral densities, by adaptive
// Gauss-Kronrod quadrature after a sine substitution that absorbs the
// square-root edges. Aspect ratios above one add a point mass at zero, which
// only the zeroth moment sees.
double mp_integral(int n, double rho, double abs_tol = 1e-10);
double sc_integral(int n, double abs_tol = 1e-10);

// --- first-block coefficient tables ---------------------------------------

// Weights u(0), u(1), ... one per block size (u(0) doubles as the filler for
// short partitions). Entry [n-1][m-1] of the result is the coefficient
// alpha_n(m) of the first-block power m at level n. PARTITION_SUM walks the
// non-crossing partitions; CONVOLUTION builds everything from the m = 1
// column with partial Bell polynomials. u must reach u(n_max - 1);
// n_max <= 9. With u identically one the table is the ballot triangle.
enum class AlphaRoute { PARTITION_SUM, CONVOLUTION };
AlphaRoute alpha_route_from_string(const std::string& name);
std::vector<std::vector<Rat>> alpha_table(int n_max, const std::vector<Rat>& u,
                                          AlphaRoute route);

// All multiplicity vectors mu (indexed mu[i-1] for part size i, length
// weight) with sum mu_i = count and sum i mu_i = weight.
std::vector<std::vector<int>> multiplicity_vectors(int weight, int count);

} // namespace wishart
