#pragma once

// Monte Carlo side of the library. Draws sample covariance matrices from a
// Gaussian population, their fluctuation matrices, and the limiting Gaussian
// ensemble, then turns trials into moment estimates, spectral histograms and
// event frequencies. Everything is driven by a small explicit RNG so that a
// (seed, stream) pair reproduces the exact same numbers on every platform
// and with any thread count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wishart {

// Names a deterministic random stream. Equal specs give equal draws; the
// stream id separates independent experiments run from one seed.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// xoshiro256++ with SplitMix64 seeding. The four state words come from a
// SplitMix64 chain keyed by seed, stream and trial index, so every trial of
// an experiment owns its own substream and results never depend on how the
// trial loop is scheduled. Normals come from the paired Box-Muller map; both
// values of a pair are used, which keeps the draw count deterministic.
class Rng {
  public:
    explicit Rng(const RngSpec& spec, std::uint64_t trial = 0);

    std::uint64_t next_u64();
    double uniform(); // open-closed (0,1], safe to take logs
    double normal();  // standard normal, one Box-Muller pair per two calls

  private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Symmetric matrix with validated entries. from_dense enforces symmetry to
// a tolerance and then symmetrizes exactly, so downstream code can rely on
// a[i][j] == a[j][i] bit for bit.
struct SymMatrix {
    Eigen::MatrixXd m;

    int dim() const { return static_cast<int>(m.rows()); }

    static SymMatrix from_dense(const Eigen::MatrixXd& dense,
                                double tol = 1e-12);
    static SymMatrix identity(int r);

    // {"dim": r, "rows": [[...], ...]}
    static SymMatrix parse_json(const std::string& text);
    std::string to_json() const;
};

// Lower Cholesky factor of a symmetric positive definite matrix. Failure of
// the factorization is the SPD test; a non-SPD input is an InputError.
Eigen::MatrixXd cholesky_factor(const SymMatrix& a);

// Symmetric square root, via the Jacobi eigensystem below. Input must be
// positive semi-definite up to roundoff; tiny negative eigenvalues are
// clipped to zero.
Eigen::MatrixXd sqrt_spd(const SymMatrix& a);

// Sample covariance of N Gaussian vectors with covariance P. PLAIN averages
// x_i x_i' over N fresh draws. MEAN_ADJUSTED subtracts the empirical mean
// from N+1 draws and still divides by N, which restores E = P.
enum class WishartVariant { PLAIN, MEAN_ADJUSTED };

WishartVariant wishart_variant_from_string(const std::string& name);
std::string to_string(WishartVariant v);

SymMatrix sample_wishart(const SymMatrix& p, int samples, WishartVariant v,
                         Rng& rng);

// sqrt(N) (P_N - P), the finite-sample fluctuation matrix.
SymMatrix sample_fluctuation(const SymMatrix& p, int samples, Rng& rng);

// One draw of the limiting fluctuation matrix: sqrt(P) G sqrt(P) with G a
// symmetrized matrix of independent standard normals, (W + W')/sqrt(2).
// Pass the square root of P so a trial loop pays for it once.
SymMatrix sample_limit_fluctuation(const Eigen::MatrixXd& sqrt_p, Rng& rng);

// Which matrix power a Monte Carlo moment estimate averages.
enum class MomentTarget {
    PN_POWER,       // P_N^n
    CENTERED_POWER, // (P_N - P)^n
    HN_POWER,       // H_N^n with H_N = sqrt(N) (P_N - P)
    H_POWER,        // H^n for the limit ensemble; the sample count is unused
};

MomentTarget moment_target_from_string(const std::string& name);
std::string to_string(MomentTarget t);

// Trial average plus entrywise standard errors. std_error[i][j] is the
// plain iid estimate sqrt(var / trials) for that entry; entries of one
// matrix are correlated but each is tested on its own.
struct MomentEstimate {
    SymMatrix mean;
    SymMatrix std_error;
    long trials = 0;

    std::string to_json() const;
};

// Averages the target power over independent trials. Needs trials >= 100 so
// the standard errors mean something. Each trial draws from its own
// substream keyed by the trial index.
MomentEstimate empirical_moment(const SymMatrix& p, int samples, int power,
                                MomentTarget target, long trials,
                                const RngSpec& spec);

// Eigenvalues in decreasing order, by cyclic Jacobi sweeps. The iteration
// stops when the off-diagonal Frobenius mass is below 1e-12 times the norm
// of the input; failure to get there within 100 sweeps is a
// ConvergenceError (it does not happen for the sizes this library targets).
std::vector<double> eigenvalues(const SymMatrix& a);

// Same iteration, also accumulating the rotations: a = V diag(values) V'
// with orthonormal columns and values again decreasing.
struct EigenSystem {
    std::vector<double> values;
    Eigen::MatrixXd vectors;
};

EigenSystem eigen_system(const SymMatrix& a);

// Densities overlaid on the histograms: the Marchenko-Pastur law with ratio
// rho = r/N (absolutely continuous part only) and the standard semicircle
// law on [-2, 2].
double mp_density(double x, double rho);
double sc_density(double x);

// Which spectra get pooled: sample covariance eigenvalues against the
// Marchenko-Pastur law, or limit fluctuation eigenvalues scaled by
// 1/sqrt(r) against the semicircle law.
enum class SpectrumKind { SAMPLE_COVARIANCE, FLUCTUATION };

SpectrumKind spectrum_kind_from_string(const std::string& name);
std::string to_string(SpectrumKind k);

// One histogram bin plus both overlay densities at the bin midpoint.
struct HistogramRow {
    double lo = 0;
    double hi = 0;
    double density = 0; // empirical, normalized to integrate to one
    double mp = 0;
    double sc = 0;
};

// Pools eigenvalues over trials and bins them. SAMPLE_COVARIANCE bins over
// [0, (1 + sqrt(rho))^2], FLUCTUATION over [-2, 2]; strays are clamped into
// the edge bins, which is why comparisons should skip the edges. Needs at
// least 10 bins.
std::vector<HistogramRow> spectral_histogram(const SymMatrix& p, int samples,
                                             long trials, int bins,
                                             SpectrumKind kind,
                                             const RngSpec& spec);

std::string histogram_csv(const std::vector<HistogramRow>& rows);

// Empirical probability with a Wilson 95% interval [lo, hi]. The interval
// stays inside [0, 1] and behaves at the boundary, unlike the plain normal
// one.
struct Frequency {
    double freq = 0;
    double lo = 0;
    double hi = 0;
    long trials = 0;
};

// Runs the event once per trial, each trial on its own substream. Needs
// trials >= 1000 so the interval is tight enough to be useful.
Frequency event_frequency(const std::function<bool(Rng&)>& event, long trials,
                          const RngSpec& spec);

// Kolmogorov-Smirnov distance between the sample and a reference CDF.
// Sorts a copy of the samples.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Standard normal CDF, for the KS tests.
double normal_cdf(double x);

} // namespace wishart
