#include "wishart/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "wishart/errors.hpp"
#include "wishart/moments.hpp"
#include "wishart/quadrature.hpp"
#include "wishart/rational.hpp"
#include "wishart/specnum.hpp"
#include "wishart/wick.hpp"

namespace wishart {

namespace {

constexpr int kNormCheckCap = 6;
constexpr int kSeriesOrderCap = 7; // even moments up to order 14
constexpr int kExpAverageDimCap = 4;

Rat rat_pow(const Rat& base, int e) {
    Rat out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

BoundReport make_report(std::string name, bool hyp, double value, double bound) {
    return {std::move(name), hyp, value, bound, bound - value};
}

// Eigenvalues of a covariance, clamped at zero; rejects clearly indefinite
// input.
std::vector<double> psd_eigs(const SymMatrix& p, const char* who) {
    std::vector<double> lam = eigenvalues(p);
    const double top = lam.empty() ? 0.0 : std::max(std::abs(lam.front()), std::abs(lam.back()));
    for (double& l : lam) {
        if (l < -1e-9 * std::max(1.0, top))
            throw InputError(std::string(who) + ": covariance must be positive semidefinite");
        l = std::max(l, 0.0);
    }
    return lam;
}

bool is_psd(const SymMatrix& a) {
    const std::vector<double> lam = eigenvalues(a);
    const double top = lam.empty() ? 0.0 : std::max(std::abs(lam.front()), std::abs(lam.back()));
    for (double l : lam)
        if (l < -1e-9 * std::max(1.0, top)) return false;
    return true;
}

void require_square_pair(const SymMatrix& a, const SymMatrix& p, const char* who) {
    if (a.dim() == 0 || p.dim() == 0)
        throw InputError(std::string(who) + ": both matrices are required");
    if (a.dim() != p.dim())
        throw InputError(std::string(who) + ": dimension mismatch");
}

// Eigenvalues of AP (real because AP is similar to the symmetric
// sqrt(P) A sqrt(P)); the traces Tr((AP)^j) are their power sums.
std::vector<double> product_eigs(const SymMatrix& a, const SymMatrix& p) {
    const Eigen::MatrixXd s = sqrt_spd(p);
    const Eigen::MatrixXd b = s * a.m * s;
    return eigenvalues(SymMatrix::from_dense(0.5 * (b + b.transpose()), 1e-9));
}

// Per-eigenvalue values of the one-draw transform E(exp(t X)): the integral
// representation in the eigenbasis of P, with the determinant prefactor
// evaluated in log space.
std::vector<double> rank1_laplace_eigs(const std::vector<double>& lam, double t,
                                       double abs_tol) {
    if (!lam.empty() && t > 0.0 && 2.0 * t * lam.front() >= 1.0)
        throw HypothesisError("rank1_laplace: needs 2 t lambda_1(P) < 1");
    const auto prefactor = [&lam](double s) {
        double acc = 0.0;
        for (double l : lam) acc += std::log1p(-2.0 * s * l);
        return std::exp(-0.5 * acc);
    };
    std::vector<double> out(lam.size());
    for (size_t i = 0; i < lam.size(); ++i) {
        const double li = lam[i];
        const auto f = [&](double s) { return prefactor(s) / (1.0 - 2.0 * s * li); };
        double integral = 0.0;
        if (t > 0.0)
            integral = integrate(f, 0.0, t, abs_tol);
        else if (t < 0.0)
            integral = -integrate(f, t, 0.0, abs_tol);
        out[i] = 1.0 + li * integral;
    }
    return out;
}

// Gauss-Hermite rule for N(0,1): nodes are the eigenvalues of the tridiagonal
// recurrence matrix, weights the squared first components of its
// eigenvectors.
void gauss_hermite(int nodes, std::vector<double>& x, std::vector<double>& w) {
    if (nodes < 2 || nodes > 128)
        throw InputError("gauss_hermite: nodes must be in [2, 128]");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int k = 1; k < nodes; ++k) {
        j(k - 1, k) = std::sqrt(static_cast<double>(k));
        j(k, k - 1) = j(k - 1, k);
    }
    const EigenSystem es = eigen_system(SymMatrix::from_dense(j));
    x.assign(es.values.begin(), es.values.end());
    w.resize(static_cast<size_t>(nodes));
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        w[static_cast<size_t>(k)] = es.vectors(0, k) * es.vectors(0, k);
        total += w[static_cast<size_t>(k)];
    }
    for (double& wk : w) wk /= total;
}

Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& m) {
    const EigenSystem es = eigen_system(SymMatrix::from_dense(m, 1e-9));
    Eigen::VectorXd d(m.rows());
    for (int i = 0; i < m.rows(); ++i) d(i) = std::exp(es.values[static_cast<size_t>(i)]);
    return es.vectors * d.asDiagonal() * es.vectors.transpose();
}

// E(exp(t(x x' - c diag(lam)))) in the eigenbasis of the covariance, where
// the coordinates of x are independent N(0, lam_i). Sign symmetry makes the
// average diagonal up to quadrature noise.
Eigen::MatrixXd exp_average_eigbasis(const std::vector<double>& lam, double t,
                                     bool centered, int nodes) {
    const int r = static_cast<int>(lam.size());
    if (r > kExpAverageDimCap)
        throw SizeCapError("rank1_exp_average: dimension capped at 4");
    if (t > 0.0 && !lam.empty() && 2.0 * t * lam.front() >= 1.0)
        throw HypothesisError("rank1_exp_average: needs 2 t lambda_1(P) < 1");
    std::vector<double> gx, gw;
    gauss_hermite(nodes, gx, gw);
    // per-axis draw values sqrt(lam_i) * node
    std::vector<std::vector<double>> ax(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        ax[static_cast<size_t>(i)].resize(static_cast<size_t>(nodes));
        for (int k = 0; k < nodes; ++k)
            ax[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                std::sqrt(lam[static_cast<size_t>(i)]) * gx[static_cast<size_t>(k)];
    }
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r, r);
    std::vector<int> idx(static_cast<size_t>(r), 0);
    Eigen::VectorXd y(r);
    while (true) {
        double weight = 1.0;
        for (int i = 0; i < r; ++i) {
            weight *= gw[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            y(i) = ax[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)])];
        }
        Eigen::MatrixXd m = t * (y * y.transpose());
        if (centered)
            for (int i = 0; i < r; ++i) m(i, i) -= t * lam[static_cast<size_t>(i)];
        acc += weight * sym_exp(m);
        int pos = 0;
        while (pos < r && ++idx[static_cast<size_t>(pos)] == nodes) {
            idx[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == r) break;
    }
    return acc;
}

double envelope_scalar(double q, EnvelopeLevel level) {
    switch (level) {
        case EnvelopeLevel::INNER:
            return q * (1.0 / (6.0 * std::sqrt(7.0)) + q / 12.0 + q * q);
        case EnvelopeLevel::CENTERED:
            return q * (0.2 + 5.0 * q / 24.0 + q * q);
        case EnvelopeLevel::UNCENTERED:
            return q * (0.2 + q / 3.0 + q * q);
    }
    throw InputError("unknown envelope level");
}

double dfactorial_odd(int n) {
    // (2n-1)!! for the Gaussian even moments
    double out = 1.0;
    for (int k = 2 * n - 1; k > 1; k -= 2) out *= k;
    return out;
}

} // namespace

std::string BoundReport::to_json() const {
    nlohmann::json j{{"name", name},
                     {"hypothesis_ok", hypothesis_ok},
                     {"value", value},
                     {"bound", bound},
                     {"margin", margin}};
    return j.dump();
}

EpsV eps_v(int n, long samples) {
    if (n < 1) throw InputError("eps_v: need n >= 1");
    if (samples < 1) throw InputError("eps_v: need samples >= 1");
    const int h = n / 2;
    const Rat over_n(4, samples);
    Rat eps_rat(0);
    const long m_top = std::min<long>(h, samples);
    for (long m = 1; m <= m_top; ++m)
        eps_rat += rat_pow(over_n, h - static_cast<int>(m)) *
                   Rat(factorial(h), factorial(static_cast<int>(m)));
    double eps = to_double(eps_rat);
    if (n % 2 == 1) eps /= std::sqrt(static_cast<double>(samples));
    const double v = to_double(Rat(factorial(n), Int(1) << h) / Rat(factorial(h)));
    return {eps, v};
}

std::vector<BoundReport> moment_class_norm_check(const SymMatrix& p, int n, int m) {
    if (p.dim() == 0) throw InputError("moment_class_norm_check: empty matrix");
    if (n < 2) throw InputError("moment_class_norm_check: need n >= 2");
    if (n > kNormCheckCap)
        throw SizeCapError("moment_class_norm_check: order capped at 6");
    if (m < 1 || 2 * m > n)
        throw InputError("moment_class_norm_check: need 1 <= m <= n/2");
    const double value = moment_class(n, m, PartitionClass::ALL, true, n)
                             .eval_numeric(p.m)
                             .norm();
    const double trp = p.m.trace();
    const double crude = to_double(Rat(factorial(n), factorial(m))) *
                         std::pow(2.0, 3 * n - (2 * m + 1)) * std::pow(trp, n);
    std::vector<BoundReport> out;
    out.push_back(make_report("class sum crude estimate", true, value, crude));
    if (n == 2 * m) {
        const double s = (p.m * p.m).trace() + trp * trp;
        const double sharp = eps_v(n, 1).v * std::pow(s, m);
        out.push_back(make_report("pair class sharp estimate", true, value, sharp));
    }
    return out;
}

std::vector<BoundReport> moment_norm_check(const SymMatrix& p, int n, long samples) {
    if (p.dim() == 0) throw InputError("moment_norm_check: empty matrix");
    if (n < 1) throw InputError("moment_norm_check: need n >= 1");
    if (n > kNormCheckCap) throw SizeCapError("moment_norm_check: order capped at 6");
    if (samples < 1) throw InputError("moment_norm_check: need samples >= 1");
    const double nd = static_cast<double>(samples);
    const HnMoment hn = hn_moment(n, n);
    const Eigen::MatrixXd scaled = hn.scaled_eval(Rat(samples)).eval_numeric(p.m);
    const Eigen::MatrixXd moment = scaled / std::pow(nd, n / 2.0);
    const EpsV ev = eps_v(n, samples);
    const double trp = p.m.trace();
    std::vector<BoundReport> out;
    out.push_back(make_report(
        "fluctuation moment frobenius estimate", true, moment.norm(),
        ev.v * std::pow(2.0, 3 * n - 1 - n / 2) * std::pow(trp, n) * ev.eps));
    if (n % 2 == 0) {
        // the sharper comparisons against the limit ensemble ask for
        // N >= n/2 draws
        const bool hyp = samples >= n / 2;
        const Eigen::MatrixXd limit = moment_H(n, n).eval_numeric(p.m);
        const double r = static_cast<double>(p.dim());
        out.push_back(make_report(
            "trace comparison with the limit ensemble", hyp, moment.trace(),
            limit.trace() + std::sqrt(r) * std::pow(2.0, 6 * n - 1) * ev.v *
                                std::pow(trp, n) * (ev.eps - 1.0)));
        const double s = (p.m * p.m).trace() + trp * trp;
        const double half = n / 2 - 1;
        out.push_back(make_report(
            "frobenius rate estimate", hyp, nd * (moment - limit).norm(),
            half * half * ev.v * std::pow(s, n / 2) +
                std::pow(2.0, 3 * n - 1) * ev.v * std::pow(trp, n) * ev.eps));
    }
    return out;
}

SymMatrix rank1_laplace(const SymMatrix& p, double t, double abs_tol) {
    if (p.dim() == 0) throw InputError("rank1_laplace: empty matrix");
    const EigenSystem es = eigen_system(p);
    std::vector<double> lam = es.values;
    const double top = std::abs(lam.front());
    for (double& l : lam) {
        if (l < -1e-9 * std::max(1.0, top))
            throw InputError("rank1_laplace: covariance must be positive semidefinite");
        l = std::max(l, 0.0);
    }
    const std::vector<double> f = rank1_laplace_eigs(lam, t, abs_tol);
    Eigen::VectorXd d(p.dim());
    for (int i = 0; i < p.dim(); ++i) d(i) = f[static_cast<size_t>(i)];
    return SymMatrix::from_dense(es.vectors * d.asDiagonal() * es.vectors.transpose(), 1e-9);
}

double rank1_laplace_iso(int r, double t) {
    if (r < 1) throw InputError("rank1_laplace_iso: need r >= 1");
    if (2.0 * t >= 1.0)
        throw HypothesisError("rank1_laplace_iso: needs 2t < 1");
    return 1.0 + (std::pow(1.0 - 2.0 * t, -0.5 * r) - 1.0) / r;
}

LaplaceSeries h_laplace_series(const SymMatrix& p, double t, double abs_tol) {
    if (p.dim() == 0) throw InputError("h_laplace_series: empty matrix");
    const double trp = p.m.trace();
    const double s = (p.m * p.m).trace() + trp * trp; // E||H||_F^2
    const auto tail = [&](int m) {
        // Stirling tail of the exponential series, in Frobenius norm
        const double head = std::exp(0.5 * t * t * s) / std::sqrt(2.0 * M_PI * (m + 1));
        return head * std::pow(M_E * t * t * s / (2.0 * (m + 1)), m + 1);
    };
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(p.dim(), p.dim());
    double coef = 1.0;
    int terms = 0;
    double remainder = tail(0);
    for (int m = 1; m <= kSeriesOrderCap && remainder > abs_tol; ++m) {
        coef *= t * t / static_cast<double>((2 * m - 1) * (2 * m));
        acc += coef * moment_H(2 * m, 2 * m).eval_numeric(p.m);
        terms = m;
        remainder = tail(m);
    }
    if (!std::isfinite(remainder))
        throw ConvergenceError("h_laplace_series: series tail diverges at this t");
    return {SymMatrix::from_dense(acc, 1e-9), remainder, terms};
}

double trace_gauss_log_laplace(const SymMatrix& a, const SymMatrix& p, double t) {
    require_square_pair(a, p, "trace_gauss_log_laplace");
    const Eigen::MatrixXd ap = a.m * p.m;
    return t * t * (ap * ap).trace();
}

double frob_sq_log_laplace(const SymMatrix& p, double t) {
    if (p.dim() == 0) throw InputError("frob_sq_log_laplace: empty matrix");
    const std::vector<double> lam = psd_eigs(p, "frob_sq_log_laplace");
    const double top = lam.front();
    const double ratio = 4.0 * std::abs(t) * top * top;
    if (ratio >= 1.0)
        throw HypothesisError("frob_sq_log_laplace: needs 4|t| lambda_1(P)^2 < 1");
    std::vector<double> pw(lam), pw2(lam);
    for (size_t i = 0; i < lam.size(); ++i) pw2[i] *= lam[i];
    double sum = 0.0;
    double coef = 1.0; // (4t)^n accumulates here
    for (int n = 1; n < 100000; ++n) {
        coef *= 4.0 * t;
        double trn = 0.0, tr2n = 0.0;
        for (size_t i = 0; i < lam.size(); ++i) {
            trn += pw[i];
            tr2n += pw2[i];
            pw[i] *= lam[i];
            pw2[i] *= lam[i] * lam[i];
        }
        const double term = coef / (4.0 * n) * (trn * trn + tr2n);
        sum += term;
        // geometric tail: successive terms shrink at least like ratio
        if (std::abs(term) * ratio / (1.0 - ratio) <= 1e-16 * (1.0 + std::abs(sum)))
            return sum;
    }
    throw ConvergenceError("frob_sq_log_laplace: series did not converge");
}

double trace_fluct_log_laplace(const SymMatrix& a, const SymMatrix& p,
                               long samples, double t) {
    require_square_pair(a, p, "trace_fluct_log_laplace");
    if (samples < 1) throw InputError("trace_fluct_log_laplace: need samples >= 1");
    const double rootn = std::sqrt(static_cast<double>(samples));
    if (2.0 * std::abs(t) * (a.m * p.m).norm() > rootn * (1.0 + 1e-12))
        throw HypothesisError(
            "trace_fluct_log_laplace: needs 2|t| ||AP||_F <= sqrt(N)");
    const std::vector<double> mu = product_eigs(a, p);
    // z_i = 2 t mu_i / sqrt(N); the j-th term is (N / 2j) sum_i z_i^j
    std::vector<double> z(mu.size()), pw(mu.size());
    double q = 0.0;
    for (size_t i = 0; i < mu.size(); ++i) {
        z[i] = 2.0 * t * mu[i] / rootn;
        pw[i] = z[i];
        q = std::max(q, std::abs(z[i]));
    }
    if (q >= 1.0 - 1e-12)
        throw ConvergenceError("trace_fluct_log_laplace: t sits on the domain boundary");
    const double nd = static_cast<double>(samples);
    const double r = static_cast<double>(mu.size());
    double sum = 0.0;
    for (int j = 2; j < 100000; ++j) {
        double power_sum = 0.0;
        for (size_t i = 0; i < z.size(); ++i) {
            pw[i] *= z[i];
            power_sum += pw[i];
        }
        sum += nd / (2.0 * j) * power_sum;
        const double tail = nd * r / 2.0 * std::pow(q, j + 1) / ((j + 1) * (1.0 - q));
        if (tail <= 1e-16 * (1.0 + std::abs(sum))) return sum;
    }
    throw ConvergenceError("trace_fluct_log_laplace: series did not converge");
}

Eigen::MatrixXd laplace_envelope(const Eigen::MatrixXd& q, EnvelopeLevel level) {
    if (q.rows() != q.cols() || q.rows() == 0)
        throw InputError("laplace_envelope: need a square matrix");
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(q.rows(), q.cols());
    switch (level) {
        case EnvelopeLevel::INNER:
            return q * (id / (6.0 * std::sqrt(7.0)) + q / 12.0 + q * q);
        case EnvelopeLevel::CENTERED:
            return q * (0.2 * id + 5.0 * q / 24.0 + q * q);
        case EnvelopeLevel::UNCENTERED:
            return q * (0.2 * id + q / 3.0 + q * q);
    }
    throw InputError("unknown envelope level");
}

SymMatrix rank1_exp_average(const SymMatrix& p, double t, bool centered, int nodes) {
    if (p.dim() == 0) throw InputError("rank1_exp_average: empty matrix");
    const EigenSystem es = eigen_system(p);
    std::vector<double> lam = es.values;
    for (double& l : lam) {
        if (l < -1e-9 * std::max(1.0, std::abs(lam.front())))
            throw InputError("rank1_exp_average: covariance must be positive semidefinite");
        l = std::max(l, 0.0);
    }
    const Eigen::MatrixXd acc = exp_average_eigbasis(lam, t, centered, nodes);
    return SymMatrix::from_dense(es.vectors * acc * es.vectors.transpose(), 1e-6);
}

std::vector<BoundReport> matrix_laplace_check(const SymMatrix& p, double t, int nodes) {
    if (p.dim() == 0) throw InputError("matrix_laplace_check: empty matrix");
    if (p.dim() > kExpAverageDimCap)
        throw SizeCapError("matrix_laplace_check: dimension capped at 4");
    const std::vector<double> lam = psd_eigs(p, "matrix_laplace_check");
    const double trp = p.m.trace();
    if (!(trp > 0.0)) throw InputError("matrix_laplace_check: covariance must be nonzero");
    if (t < 0.0 || 2.0 * t * trp >= 1.0)
        throw HypothesisError("matrix_laplace_check: needs 0 <= 2 t Tr(P) < 1");
    const double level = legendre(LegendreKind::L, 2.0 * t * trp);
    const std::vector<double> f = rank1_laplace_eigs(lam, t, 1e-12);
    const Eigen::MatrixXd ep = exp_average_eigbasis(lam, t, true, nodes);
    // every side is diagonal in the eigenbasis of P, so each Loewner margin
    // is a plain minimum over eigenvalues
    double gap_lo = std::numeric_limits<double>::infinity();
    double gap_hi = gap_lo, cen_lo = gap_lo, cen_hi = gap_lo;
    for (size_t i = 0; i < lam.size(); ++i) {
        const double q = lam[i] / trp;
        const double gap = std::log(f[i]) - t * lam[i];
        const double cen = std::log(ep(static_cast<int>(i), static_cast<int>(i)));
        gap_lo = std::min(gap_lo, gap);
        gap_hi = std::min(gap_hi, level * envelope_scalar(q, EnvelopeLevel::UNCENTERED) - gap);
        cen_lo = std::min(cen_lo, cen);
        cen_hi = std::min(cen_hi, level * envelope_scalar(q, EnvelopeLevel::CENTERED) - cen);
    }
    std::vector<BoundReport> out;
    out.push_back(make_report("uncentered log transform dominates the linear term",
                              true, -gap_lo, 0.0));
    out.push_back(make_report("uncentered envelope estimate", true, -gap_hi, 0.0));
    out.push_back(make_report("centered log transform is nonnegative", true,
                              -cen_lo, 0.0));
    out.push_back(make_report("centered envelope estimate", true, -cen_hi, 0.0));
    return out;
}

double legendre(LegendreKind kind, double x) {
    switch (kind) {
        case LegendreKind::L:
            if (x < 0.0 || x >= 1.0) throw InputError("legendre: L needs 0 <= x < 1");
            return x * x / (1.0 - x);
        case LegendreKind::LSTAR:
            if (x < 0.0) throw InputError("legendre: LSTAR needs x >= 0");
            return std::pow(std::sqrt(x + 1.0) - 1.0, 2);
        case LegendreKind::LSTAR_INV:
        case LegendreKind::CRAMER_THRESHOLD:
            if (x < 0.0) throw InputError("legendre: LSTAR_INV needs x >= 0");
            return x + 2.0 * std::sqrt(x);
    }
    throw InputError("unknown legendre kind");
}

double concentration_threshold(ThresholdKind kind, const ThresholdArgs& args) {
    const double delta = args.delta;
    if (delta < 0.0) throw InputError("concentration_threshold: need delta >= 0");
    const double nd = static_cast<double>(args.samples);
    switch (kind) {
        case ThresholdKind::TRACE_TWO_SIDED:
        case ThresholdKind::TRACE_POS:
        case ThresholdKind::TRACE_NEG:
        case ThresholdKind::TRACE_LIMIT: {
            require_square_pair(args.a, args.p, "concentration_threshold");
            const Eigen::MatrixXd ap = args.a.m * args.p.m;
            const double t2 = (ap * ap).trace();
            const double f2 = ap.squaredNorm();
            if (kind == ThresholdKind::TRACE_LIMIT)
                return 2.0 * std::sqrt(delta * t2);
            if (args.samples < 1)
                throw InputError("concentration_threshold: need samples >= 1");
            if (kind == ThresholdKind::TRACE_TWO_SIDED) {
                if (8.0 * delta > nd)
                    throw HypothesisError("concentration_threshold: needs 8 delta <= N");
                return 2.0 * std::sqrt((delta + 1.0) * (t2 + 2.0 * f2));
            }
            if (!is_psd(args.a))
                throw HypothesisError("concentration_threshold: needs A psd");
            if (kind == ThresholdKind::TRACE_POS) {
                if (8.0 * delta > nd)
                    throw HypothesisError("concentration_threshold: needs 8 delta <= N");
                return 2.0 * std::sqrt(3.0) * std::sqrt(delta * t2);
            }
            const double tr_ap = ap.trace();
            if (tr_ap * tr_ap > 0.0 && 4.0 * delta > nd * t2 / (tr_ap * tr_ap))
                throw HypothesisError(
                    "concentration_threshold: needs 4 delta <= N Tr((AP)^2)/Tr(AP)^2");
            return -2.0 * std::sqrt(delta * t2);
        }
        case ThresholdKind::OPNORM:
        case ThresholdKind::EIGEN_SUP: {
            if (args.p.dim() == 0)
                throw InputError("concentration_threshold: covariance is required");
            if (args.samples < 1)
                throw InputError("concentration_threshold: need samples >= 1");
            const double r = static_cast<double>(args.p.dim());
            if (nd / 8.0 < delta + 7.0 * r)
                throw HypothesisError("concentration_threshold: needs N/8 >= delta + 7r");
            const double top = psd_eigs(args.p, "concentration_threshold").front();
            const double base = 5.0 * std::sqrt(3.0) * std::sqrt(delta + 7.0 * r) * top;
            return kind == ThresholdKind::OPNORM ? base : base / std::sqrt(nd);
        }
        case ThresholdKind::LAMBDA1: {
            if (args.p.dim() == 0)
                throw InputError("concentration_threshold: covariance is required");
            if (args.samples < 1)
                throw InputError("concentration_threshold: need samples >= 1");
            const std::vector<double> lam = psd_eigs(args.p, "concentration_threshold");
            const double trp = args.p.m.trace();
            if (!(trp > 0.0))
                throw InputError("concentration_threshold: covariance must be nonzero");
            const double g = (delta + std::log(static_cast<double>(args.p.dim()))) / nd;
            double env_top = 0.0;
            for (double l : lam)
                env_top = std::max(env_top, envelope_scalar(l / trp, EnvelopeLevel::CENTERED));
            return lam.front() + 2.0 * trp * (g + 2.0 * std::sqrt(g * env_top));
        }
        case ThresholdKind::MOMENT_TAIL:
            return M_E * M_E / std::sqrt(2.0) * (0.5 + delta + std::sqrt(delta));
    }
    throw InputError("unknown threshold kind");
}

double rank1_trace_power(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const SymMatrix& p, int n) {
    if (p.dim() == 0) throw InputError("rank1_trace_power: empty matrix");
    if (x.size() != p.dim() || y.size() != p.dim())
        throw InputError("rank1_trace_power: vector dimension mismatch");
    if (n < 1 || n > 60) throw InputError("rank1_trace_power: need 1 <= n <= 60");
    const double u = x.dot(p.m * y);
    const double v = x.dot(p.m * x) * y.dot(p.m * y);
    double sum = 0.0;
    for (int l = 0; 2 * l <= n; ++l)
        sum += to_double(Rat(binomial(n, 2 * l))) * std::pow(u, n - 2 * l) *
               std::pow(v, l);
    return sum / std::pow(2.0, n - 1);
}

std::vector<BoundReport> trace_moment_check(const SymMatrix& a, const SymMatrix& p,
                                            long samples, int n, double alpha,
                                            double beta) {
    require_square_pair(a, p, "trace_moment_check");
    if (samples < 1) throw InputError("trace_moment_check: need samples >= 1");
    if (n < 1 || n > 10) throw InputError("trace_moment_check: need 1 <= n <= 10");
    if (alpha < 1.0) throw InputError("trace_moment_check: need alpha >= 1");
    if (beta < 0.0) throw InputError("trace_moment_check: need beta >= 0");
    const double r = static_cast<double>(p.dim());
    const double nd = static_cast<double>(samples);
    const std::vector<double> mu = product_eigs(a, p);
    const int m_top = 2 * n + 1;
    std::vector<double> tr(static_cast<size_t>(m_top) + 1, 0.0);
    std::vector<double> pw(mu.begin(), mu.end());
    for (int k = 1; k <= m_top; ++k) {
        for (size_t i = 0; i < mu.size(); ++i) {
            tr[static_cast<size_t>(k)] += pw[i];
            pw[i] *= mu[i];
        }
        if (std::abs(tr[static_cast<size_t>(k)]) / r >
            alpha * std::pow(beta, k) * (1.0 + 1e-9))
            throw HypothesisError(
                "trace_moment_check: trace growth alpha beta^k fails at k = " +
                std::to_string(k));
    }
    // cumulants of Tr(A H_N), then raw moments by the standard recursion
    std::vector<double> kappa(static_cast<size_t>(m_top) + 1, 0.0);
    for (int j = 2; j <= m_top; ++j)
        kappa[static_cast<size_t>(j)] = to_double(Rat(factorial(j - 1))) *
                                        std::pow(2.0, j - 1) * tr[static_cast<size_t>(j)] /
                                        std::pow(nd, j / 2.0 - 1.0);
    std::vector<double> mom(static_cast<size_t>(m_top) + 1, 0.0);
    mom[0] = 1.0;
    for (int k = 1; k <= m_top; ++k)
        for (int i = 0; i < k; ++i)
            mom[static_cast<size_t>(k)] += to_double(Rat(binomial(k - 1, i))) *
                                           kappa[static_cast<size_t>(i + 1)] *
                                           mom[static_cast<size_t>(k - 1 - i)];
    const double s_even = mom[static_cast<size_t>(2 * n)] / std::pow(2.0 * r, n);
    const double s_odd =
        mom[static_cast<size_t>(2 * n + 1)] / std::pow(2.0 * r, n + 0.5);
    const double gauss = dfactorial_odd(n) * std::pow(tr[2] / r, n);
    const double stretch = std::max(1.0, 8.0 / (r * nd));
    std::vector<BoundReport> out;
    out.push_back(make_report(
        "even trace moment gap", true, std::abs(s_even - gauss),
        to_double(Rat(factorial(2 * n))) * 4.0 * (M_E - 1.0) / (r * nd) *
            std::pow(alpha, n - 1) * std::pow(beta, 2 * n) * std::pow(stretch, n - 1)));
    out.push_back(make_report(
        "odd trace moment size", true, std::abs(s_odd),
        to_double(Rat(factorial(2 * n + 1))) * (M_E - 1.0) * std::sqrt(2.0) /
            std::sqrt(r * nd) * std::pow(alpha, n) * std::pow(beta, 2 * n + 1) *
            std::pow(stretch, n)));
    return out;
}

BoundReport sub_gaussian_check(const SymMatrix& a, const SymMatrix& p, long samples,
                               double t, bool psd_variant) {
    require_square_pair(a, p, "sub_gaussian_check");
    const double value = trace_fluct_log_laplace(a, p, samples, t);
    const Eigen::MatrixXd ap = a.m * p.m;
    const double rootn = std::sqrt(static_cast<double>(samples));
    const double t2 = (ap * ap).trace();
    if (psd_variant) {
        const bool hyp = is_psd(a) && 4.0 * std::abs(t) * ap.trace() < rootn;
        return make_report("psd sub gaussian estimate", hyp, value, 3.0 * t * t * t2);
    }
    const bool hyp = 4.0 * std::abs(t) * ap.norm() <= rootn * (1.0 + 1e-12);
    return make_report("sub gaussian estimate", hyp, value,
                       t * t * (t2 + 2.0 * ap.squaredNorm()));
}

EnvelopeLevel envelope_level_from_string(const std::string& name) {
    if (name == "inner") return EnvelopeLevel::INNER;
    if (name == "centered") return EnvelopeLevel::CENTERED;
    if (name == "uncentered") return EnvelopeLevel::UNCENTERED;
    throw InputError("unknown envelope level: '" + name + "'");
}

std::string to_string(EnvelopeLevel level) {
    switch (level) {
        case EnvelopeLevel::INNER: return "inner";
        case EnvelopeLevel::CENTERED: return "centered";
        case EnvelopeLevel::UNCENTERED: return "uncentered";
    }
    return "?";
}

LegendreKind legendre_kind_from_string(const std::string& name) {
    if (name == "l") return LegendreKind::L;
    if (name == "lstar") return LegendreKind::LSTAR;
    if (name == "lstar-inv") return LegendreKind::LSTAR_INV;
    if (name == "cramer-threshold") return LegendreKind::CRAMER_THRESHOLD;
    throw InputError("unknown legendre kind: '" + name + "'");
}

std::string to_string(LegendreKind kind) {
    switch (kind) {
        case LegendreKind::L: return "l";
        case LegendreKind::LSTAR: return "lstar";
        case LegendreKind::LSTAR_INV: return "lstar-inv";
        case LegendreKind::CRAMER_THRESHOLD: return "cramer-threshold";
    }
    return "?";
}

ThresholdKind threshold_kind_from_string(const std::string& name) {
    if (name == "trace-two-sided") return ThresholdKind::TRACE_TWO_SIDED;
    if (name == "trace-pos") return ThresholdKind::TRACE_POS;
    if (name == "trace-neg") return ThresholdKind::TRACE_NEG;
    if (name == "trace-limit") return ThresholdKind::TRACE_LIMIT;
    if (name == "opnorm") return ThresholdKind::OPNORM;
    if (name == "eigen-sup") return ThresholdKind::EIGEN_SUP;
    if (name == "lambda1") return ThresholdKind::LAMBDA1;
    if (name == "moment-tail") return ThresholdKind::MOMENT_TAIL;
    throw InputError("unknown threshold kind: '" + name + "'");
}

std::string to_string(ThresholdKind kind) {
    switch (kind) {
        case ThresholdKind::TRACE_TWO_SIDED: return "trace-two-sided";
        case ThresholdKind::TRACE_POS: return "trace-pos";
        case ThresholdKind::TRACE_NEG: return "trace-neg";
        case ThresholdKind::TRACE_LIMIT: return "trace-limit";
        case ThresholdKind::OPNORM: return "opnorm";
        case ThresholdKind::EIGEN_SUP: return "eigen-sup";
        case ThresholdKind::LAMBDA1: return "lambda1";
        case ThresholdKind::MOMENT_TAIL: return "moment-tail";
    }
    return "?";
}

} // namespace wishart
