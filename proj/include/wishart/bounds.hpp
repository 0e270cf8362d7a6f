#pragma once
// Certified inequality checks around the fluctuation moments: the scale
// constants, Frobenius norm estimates on the moment expansions, Laplace
// transform evaluators with their cubic envelopes, Legendre duals and the
// concentration thresholds built from them.
//
// Conventions follow the rest of the library: P is the population covariance,
// H_N = sqrt(N)(P_N - P) the sample fluctuation and H its Gaussian limit.
// Check-style ops return BoundReport entries so callers see both sides of
// each inequality. Reports whose small-sample precondition fails are still
// returned, with hypothesis_ok = false and nothing certified. Scalar ops
// (series evaluators, thresholds) throw HypothesisError instead, naming the
// violated condition.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wishart/sampling.hpp"

namespace wishart {

// One checked inequality. value is the quantity being dominated, bound the
// certified dominating side, margin = bound - value (nonnegative when the
// estimate holds and the hypothesis is met).
struct BoundReport {
    std::string name;
    bool hypothesis_ok = true;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    std::string to_json() const;
};

// Scale pair for the moment estimates at order n and N degrees of freedom:
// eps is the degree-of-freedom correction (exactly 1 at n = 2, shrinking
// like 1/sqrt(N) for odd n, 1 + 2n/N + O(1/N^2) for even n), v the pairing
// count n!/(2^floor(n/2) floor(n/2)!). Both are evaluated in exact rational
// arithmetic before the final (for odd n, irrational) rescale.
struct EpsV {
    double eps;
    double v;
};

EpsV eps_v(int n, long samples);

// Frobenius norm estimates for the class sums M_{n,m}(P): the crude bound
// (n!/m!) 2^(3n-(2m+1)) Tr(P)^n for any 1 <= m <= floor(n/2), plus the
// sharper [Tr(P^2) + Tr(P)^2]^m form when n = 2m. The left side is evaluated
// symbolically and then numerically at p.
std::vector<BoundReport> moment_class_norm_check(const SymMatrix& p, int n,
                                                 int m);

// Norm estimates for the fluctuation moments at order n and N = samples
// degrees of freedom. Always contains the Frobenius estimate
// ||E(H_N^n)||_F <= v_n 2^(3n-1-floor(n/2)) Tr(P)^n eps_n(N). For even n it
// adds the trace comparison against the limit ensemble and the 1/N rate
// estimate on ||E(H_N^n) - E(H^n)||_F; those two carry the small-sample
// hypothesis N >= n/2.
std::vector<BoundReport> moment_norm_check(const SymMatrix& p, int n,
                                           long samples);

// E(exp(t X)) for one Wishart draw X = x x' with x ~ N(0, P), by adaptive
// quadrature of the exact integral representation in the eigenbasis of P.
// Needs I - 2sP invertible along the path, i.e. 2 t lambda_1(P) < 1 for
// positive t.
SymMatrix rank1_laplace(const SymMatrix& p, double t, double abs_tol = 1e-12);

// Same transform for P = I in dimension r, in closed form: every eigenvalue
// of the mean equals 1 + ((1-2t)^(-r/2) - 1)/r.
double rank1_laplace_iso(int r, double t);

// E(exp(t H)) for the limit ensemble, summed over even moments with a
// certified tail estimate. remainder bounds the Frobenius distance to the
// full series; terms is the number of even orders actually summed.
struct LaplaceSeries {
    SymMatrix value;
    double remainder;
    int terms;
};

LaplaceSeries h_laplace_series(const SymMatrix& p, double t,
                               double abs_tol = 1e-10);

// log E(exp(t Tr(A H))) for the limit ensemble; exactly t^2 Tr((AP)^2).
double trace_gauss_log_laplace(const SymMatrix& a, const SymMatrix& p,
                               double t);

// log E(exp(t ||H||_F^2)) by its chi-square series; needs the radius
// condition 4|t| lambda_1(P)^2 < 1.
double frob_sq_log_laplace(const SymMatrix& p, double t);

// log E(exp(t Tr(A H_N))) by its exact power series in 1/sqrt(N); needs
// 2|t| ||AP||_F <= sqrt(N).
double trace_fluct_log_laplace(const SymMatrix& a, const SymMatrix& p,
                               long samples, double t);

// Cubic matrix envelopes q (c0 I + c1 q + q^2) appearing on the dominating
// side of the matrix Laplace estimates, ordered by size: INNER sits below
// the log transforms, CENTERED dominates the centered transform and
// UNCENTERED the uncentered one.
enum class EnvelopeLevel { INNER, CENTERED, UNCENTERED };

Eigen::MatrixXd laplace_envelope(const Eigen::MatrixXd& q,
                                 EnvelopeLevel level);

// E(exp(t(x x' - c P))) with x ~ N(0, P) and c = 1 (centered) or 0, by
// tensor Gauss-Hermite quadrature in the eigenbasis of P, where the average
// is diagonal. Deterministic, but the node grid is r-dimensional, so the
// dimension is capped at 4.
SymMatrix rank1_exp_average(const SymMatrix& p, double t, bool centered,
                            int nodes = 32);

// The two-sided matrix Laplace estimates: both the uncentered and the
// centered one-draw transforms are squeezed between the identity and the
// exponential of a cubic envelope of P/Tr(P). Returns four reports, one per
// log-form inequality; all sides commute with P, so each margin is the
// smallest eigenvalue gap. Needs 0 <= 2t Tr(P) < 1 and dimension <= 4 (the
// centered side runs through rank1_exp_average).
std::vector<BoundReport> matrix_laplace_check(const SymMatrix& p, double t,
                                              int nodes = 32);

// Legendre machinery for the Cramer-Chernov arguments: L(x) = x^2/(1-x) on
// [0,1), its dual LSTAR(u) = (sqrt(u+1)-1)^2 on [0,inf), the inverse dual
// LSTAR_INV(d) = d + 2 sqrt(d), and CRAMER_THRESHOLD as an alias for the
// latter (the tail level giving probability at least 1 - e^(-d)).
enum class LegendreKind { L, LSTAR, LSTAR_INV, CRAMER_THRESHOLD };

double legendre(LegendreKind kind, double x);

// Concentration thresholds: each kind maps (A, P, N, delta) to the level
// whose exceedance probability is at most e^(-delta).
//   TRACE_TWO_SIDED  |Tr(A H_N)| level; needs 8 delta <= N
//   TRACE_POS        upper level for Tr(A H_N), A psd; needs 8 delta <= N
//   TRACE_NEG        lower level for Tr(A H_N), A psd (negative value; the
//                    event is Tr >= level); needs
//                    4 delta <= N Tr((AP)^2)/Tr(AP)^2
//   TRACE_LIMIT      upper level for Tr(A H) in the limit ensemble; any
//                    delta >= 0
//   OPNORM           ||H_N||_op level; needs N/8 >= delta + 7r
//   EIGEN_SUP        sup_k |lambda_k(P_N) - lambda_k(P)| level; same need
//   LAMBDA1          lambda_1(P_N) level via the envelope term; any N >= 1
//   MOMENT_TAIL      dimensionless Z/z level for variables with
//                    E(Z^n) <= y^n n! and z = y/e; only delta is read
enum class ThresholdKind {
    TRACE_TWO_SIDED,
    TRACE_POS,
    TRACE_NEG,
    TRACE_LIMIT,
    OPNORM,
    EIGEN_SUP,
    LAMBDA1,
    MOMENT_TAIL,
};

struct ThresholdArgs {
    SymMatrix a;        // test direction, read by the trace kinds
    SymMatrix p;        // covariance, read by everything except MOMENT_TAIL
    long samples = 0;   // degrees of freedom N, ignored by the limit kinds
    double delta = 0.0; // exponential tail level
};

double concentration_threshold(ThresholdKind kind, const ThresholdArgs& args);

// Tr((AP)^n) for the symmetrized rank-one direction A = (x y' + y x')/2, by
// the closed form in u = <x, Py> and v = <x, Px><y, Py> (no matrix powers).
double rank1_trace_power(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const SymMatrix& p, int n);

// Gap estimates between the scaled trace moments of the fluctuation and
// their Gaussian limits: |E((Tr(A H_N)/sqrt(2r))^(2n)) - Gaussian| and the
// odd moment |E((...)^(2n+1))|, both bounded in terms of user-supplied trace
// growth parameters alpha >= 1, beta >= 0 with
// |Tr((AP)^k)|/r <= alpha beta^k for k <= 2n+1 (checked, HypothesisError
// otherwise). The moments are evaluated exactly through the cumulants of the
// trace, not by sampling.
std::vector<BoundReport> trace_moment_check(const SymMatrix& a,
                                            const SymMatrix& p, long samples,
                                            int n, double alpha, double beta);

// Sub-Gaussian domination of the trace log-transform: the series value of
// log E(exp(t Tr(A H_N))) against t^2 [Tr((AP)^2) + 2||AP||_F^2] (general
// symmetric A, needs 4|t| ||AP||_F <= sqrt(N)) or against 3t^2 Tr((AP)^2)
// (psd_variant, needs A psd and 4|t| Tr(AP) < sqrt(N)).
BoundReport sub_gaussian_check(const SymMatrix& a, const SymMatrix& p,
                               long samples, double t, bool psd_variant);

EnvelopeLevel envelope_level_from_string(const std::string& name);
std::string to_string(EnvelopeLevel level);
LegendreKind legendre_kind_from_string(const std::string& name);
std::string to_string(LegendreKind kind);
ThresholdKind threshold_kind_from_string(const std::string& name);
std::string to_string(ThresholdKind kind);

} // namespace wishart
