#include "wishart/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <json.hpp>

#include "wishart/errors.hpp"

namespace wishart {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t splitmix_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// Pairwise tree sum of f(lo), ..., f(hi - 1). The reduction order is a
// fixed function of the index range, so floating point results do not
// depend on scheduling; leaves are still evaluated left to right, which
// keeps sequential RNG consumers valid.
template <class T, class F>
T pairwise_sum(long lo, long hi, const F& f) {
    if (hi - lo == 1) return f(lo);
    const long mid = lo + (hi - lo) / 2;
    T left = pairwise_sum<T>(lo, mid, f);
    T right = pairwise_sum<T>(mid, hi, f);
    left += right;
    return left;
}

nlohmann::json matrix_json(const SymMatrix& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < a.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < a.dim(); ++j) row.push_back(a.m(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"dim", a.dim()}, {"rows", std::move(rows)}};
}

// One Gaussian vector with covariance factor L (x = L z).
Eigen::VectorXd gaussian_vector(const Eigen::MatrixXd& chol, Rng& rng) {
    Eigen::VectorXd z(chol.rows());
    for (int i = 0; i < z.size(); ++i) z(i) = rng.normal();
    return chol * z;
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& a, int n) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (int i = 0; i < n; ++i) out = out * a;
    return out;
}

} // namespace

Rng::Rng(const RngSpec& spec, std::uint64_t trial) {
    std::uint64_t state = spec.seed;
    state ^= (spec.stream + 1) * 0x9E3779B97F4A7C15ull;
    state ^= (trial + 1) * 0xBF58476D1CE4E5B9ull;
    for (auto& word : s_) word = splitmix_next(state);
    // all-zero is the one invalid xoshiro state; SplitMix64 essentially
    // never produces it, but a guard is free
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    // 53 uniform bits shifted into (0, 1]; never zero, so logs are safe
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * kPi * uniform();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& dense, double tol) {
    if (dense.rows() != dense.cols() || dense.rows() == 0)
        throw InputError("matrix must be square and non-empty");
    const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
    const double gap = (dense - dense.transpose()).cwiseAbs().maxCoeff();
    if (!(gap <= tol * scale))
        throw InputError("matrix is not symmetric within tolerance");
    SymMatrix out;
    out.m = 0.5 * (dense + dense.transpose());
    return out;
}

SymMatrix SymMatrix::identity(int r) {
    if (r < 1) throw InputError("dimension must be positive");
    SymMatrix out;
    out.m = Eigen::MatrixXd::Identity(r, r);
    return out;
}

SymMatrix SymMatrix::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad matrix json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
        throw InputError("matrix json needs fields 'dim' and 'rows'");
    const int r = j.at("dim").get<int>();
    if (r < 1) throw InputError("matrix dim must be positive");
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != r)
        throw InputError("matrix 'rows' must hold dim rows");
    Eigen::MatrixXd dense(r, r);
    for (int i = 0; i < r; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != r)
            throw InputError("each matrix row must hold dim numbers");
        for (int k = 0; k < r; ++k) dense(i, k) = row.at(k).get<double>();
    }
    return from_dense(dense);
}

std::string SymMatrix::to_json() const {
    return matrix_json(*this).dump();
}

Eigen::MatrixXd cholesky_factor(const SymMatrix& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.m);
    if (llt.info() != Eigen::Success)
        throw InputError("matrix is not positive definite");
    return llt.matrixL();
}

Eigen::MatrixXd sqrt_spd(const SymMatrix& a) {
    EigenSystem es = eigen_system(a);
    Eigen::VectorXd roots(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        roots(i) = std::sqrt(std::max(0.0, es.values[i]));
    return es.vectors * roots.asDiagonal() * es.vectors.transpose();
}

WishartVariant wishart_variant_from_string(const std::string& name) {
    if (name == "plain") return WishartVariant::PLAIN;
    if (name == "mean-adjusted") return WishartVariant::MEAN_ADJUSTED;
    throw InputError("unknown wishart variant: '" + name + "'");
}

std::string to_string(WishartVariant v) {
    return v == WishartVariant::PLAIN ? "plain" : "mean-adjusted";
}

SymMatrix sample_wishart(const SymMatrix& p, int samples, WishartVariant v,
                         Rng& rng) {
    if (samples < 1) throw InputError("sample count must be positive");
    const Eigen::MatrixXd chol = cholesky_factor(p);
    const int draws = samples + (v == WishartVariant::MEAN_ADJUSTED ? 1 : 0);
    std::vector<Eigen::VectorXd> x;
    x.reserve(draws);
    for (int i = 0; i < draws; ++i) x.push_back(gaussian_vector(chol, rng));

    Eigen::VectorXd center = Eigen::VectorXd::Zero(p.dim());
    if (v == WishartVariant::MEAN_ADJUSTED) {
        center = pairwise_sum<Eigen::VectorXd>(
                     0, draws, [&](long i) { return x[i]; }) /
                 draws;
    }
    Eigen::MatrixXd sum = pairwise_sum<Eigen::MatrixXd>(0, draws, [&](long i) {
        const Eigen::VectorXd d = x[i] - center;
        return Eigen::MatrixXd(d * d.transpose());
    });
    // mean adjustment spends one degree of freedom: N + 1 draws over N
    // keeps the expectation at P
    return SymMatrix::from_dense(sum / samples);
}

SymMatrix sample_fluctuation(const SymMatrix& p, int samples, Rng& rng) {
    const SymMatrix pn = sample_wishart(p, samples, WishartVariant::PLAIN, rng);
    return SymMatrix::from_dense(std::sqrt(double(samples)) * (pn.m - p.m));
}

SymMatrix sample_limit_fluctuation(const Eigen::MatrixXd& sqrt_p, Rng& rng) {
    const int r = static_cast<int>(sqrt_p.rows());
    Eigen::MatrixXd w(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) w(i, j) = rng.normal();
    const Eigen::MatrixXd g = (w + w.transpose()) / std::sqrt(2.0);
    return SymMatrix::from_dense(sqrt_p * g * sqrt_p);
}

MomentTarget moment_target_from_string(const std::string& name) {
    if (name == "pn-power") return MomentTarget::PN_POWER;
    if (name == "centered-power") return MomentTarget::CENTERED_POWER;
    if (name == "hn-power") return MomentTarget::HN_POWER;
    if (name == "h-power") return MomentTarget::H_POWER;
    throw InputError("unknown moment target: '" + name + "'");
}

std::string to_string(MomentTarget t) {
    switch (t) {
        case MomentTarget::PN_POWER: return "pn-power";
        case MomentTarget::CENTERED_POWER: return "centered-power";
        case MomentTarget::HN_POWER: return "hn-power";
        default: return "h-power";
    }
}

std::string MomentEstimate::to_json() const {
    nlohmann::json j{{"trials", trials},
                     {"mean", matrix_json(mean)},
                     {"std_error", matrix_json(std_error)}};
    return j.dump();
}

namespace {

// Running sums for the trial mean and the entrywise second moment.
struct MomentAccum {
    Eigen::MatrixXd sum;
    Eigen::MatrixXd sum_sq;

    MomentAccum& operator+=(const MomentAccum& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        return *this;
    }
};

} // namespace

MomentEstimate empirical_moment(const SymMatrix& p, int samples, int power,
                                MomentTarget target, long trials,
                                const RngSpec& spec) {
    if (power < 1) throw InputError("power must be positive");
    if (trials < 100) throw InputError("need at least 100 trials");
    if (target != MomentTarget::H_POWER && samples < 1)
        throw InputError("sample count must be positive");

    Eigen::MatrixXd sqrt_p;
    if (target == MomentTarget::H_POWER) sqrt_p = sqrt_spd(p);

    const auto one_trial = [&](long trial) {
        Rng rng(spec, static_cast<std::uint64_t>(trial));
        Eigen::MatrixXd base;
        switch (target) {
            case MomentTarget::PN_POWER:
                base = sample_wishart(p, samples, WishartVariant::PLAIN, rng).m;
                break;
            case MomentTarget::CENTERED_POWER:
                base = sample_wishart(p, samples, WishartVariant::PLAIN, rng).m -
                       p.m;
                break;
            case MomentTarget::HN_POWER:
                base = sample_fluctuation(p, samples, rng).m;
                break;
            case MomentTarget::H_POWER:
                base = sample_limit_fluctuation(sqrt_p, rng).m;
                break;
        }
        const Eigen::MatrixXd value = matrix_power(base, power);
        return MomentAccum{value, value.cwiseProduct(value)};
    };
    const MomentAccum acc = pairwise_sum<MomentAccum>(0, trials, one_trial);

    const Eigen::MatrixXd mean = acc.sum / double(trials);
    const Eigen::MatrixXd variance =
        (acc.sum_sq - double(trials) * mean.cwiseProduct(mean))
            .cwiseMax(0.0) /
        double(trials - 1);
    MomentEstimate out;
    out.mean = SymMatrix::from_dense(mean, 1e-9);
    out.std_error =
        SymMatrix::from_dense((variance / double(trials)).cwiseSqrt(), 1e-9);
    out.trials = trials;
    return out;
}

namespace {

double offdiag_norm(const Eigen::MatrixXd& a) {
    double s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

EigenSystem eigen_system(const SymMatrix& a) {
    const int r = a.dim();
    Eigen::MatrixXd work = a.m;
    Eigen::MatrixXd vectors = Eigen::MatrixXd::Identity(r, r);
    const double target = 1e-12 * a.m.norm();

    bool converged = (r == 1) || offdiag_norm(work) <= target;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (int i = 0; i < r - 1; ++i) {
            for (int j = i + 1; j < r; ++j) {
                Eigen::JacobiRotation<double> rot;
                if (!rot.makeJacobi(work, i, j)) continue;
                work.applyOnTheLeft(i, j, rot.adjoint());
                work.applyOnTheRight(i, j, rot);
                vectors.applyOnTheRight(i, j, rot);
            }
        }
        converged = offdiag_norm(work) <= target;
    }
    if (!converged)
        throw ConvergenceError("jacobi iteration did not converge");

    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return work(i, i) > work(j, j); });
    EigenSystem out;
    out.values.resize(r);
    out.vectors.resize(r, r);
    for (int k = 0; k < r; ++k) {
        out.values[k] = work(order[k], order[k]);
        out.vectors.col(k) = vectors.col(order[k]);
    }
    return out;
}

std::vector<double> eigenvalues(const SymMatrix& a) {
    return eigen_system(a).values;
}

double mp_density(double x, double rho) {
    if (rho <= 0) throw InputError("aspect ratio must be positive");
    const double root = std::sqrt(rho);
    const double lo = (1 - root) * (1 - root);
    const double hi = (1 + root) * (1 + root);
    if (x <= lo || x >= hi || x <= 0) return 0.0;
    return std::sqrt((hi - x) * (x - lo)) / (2 * kPi * rho * x);
}

double sc_density(double x) {
    if (x <= -2 || x >= 2) return 0.0;
    return std::sqrt(4 - x * x) / (2 * kPi);
}

SpectrumKind spectrum_kind_from_string(const std::string& name) {
    if (name == "sample-covariance") return SpectrumKind::SAMPLE_COVARIANCE;
    if (name == "fluctuation") return SpectrumKind::FLUCTUATION;
    throw InputError("unknown spectrum kind: '" + name + "'");
}

std::string to_string(SpectrumKind k) {
    return k == SpectrumKind::SAMPLE_COVARIANCE ? "sample-covariance"
                                                : "fluctuation";
}

std::vector<HistogramRow> spectral_histogram(const SymMatrix& p, int samples,
                                             long trials, int bins,
                                             SpectrumKind kind,
                                             const RngSpec& spec) {
    if (bins < 10) throw InputError("need at least 10 bins");
    if (trials < 1) throw InputError("need at least one trial");
    const int r = p.dim();

    double lo = 0, hi = 0;
    const double rho = double(r) / double(samples);
    if (kind == SpectrumKind::SAMPLE_COVARIANCE) {
        if (samples < 1) throw InputError("sample count must be positive");
        lo = 0.0;
        hi = (1 + std::sqrt(rho)) * (1 + std::sqrt(rho));
    } else {
        lo = -2.0;
        hi = 2.0;
    }
    const double width = (hi - lo) / bins;

    Eigen::MatrixXd sqrt_p;
    if (kind == SpectrumKind::FLUCTUATION) sqrt_p = sqrt_spd(p);

    std::vector<long> counts(bins, 0);
    for (long t = 0; t < trials; ++t) {
        Rng rng(spec, static_cast<std::uint64_t>(t));
        SymMatrix draw =
            kind == SpectrumKind::SAMPLE_COVARIANCE
                ? sample_wishart(p, samples, WishartVariant::PLAIN, rng)
                : sample_limit_fluctuation(sqrt_p, rng);
        const double scale =
            kind == SpectrumKind::FLUCTUATION ? 1.0 / std::sqrt(double(r)) : 1.0;
        for (double lambda : eigenvalues(draw)) {
            const double x = lambda * scale;
            int idx = static_cast<int>(std::floor((x - lo) / width));
            idx = std::clamp(idx, 0, bins - 1);
            ++counts[idx];
        }
    }

    const double total = double(trials) * double(r);
    std::vector<HistogramRow> rows(bins);
    for (int b = 0; b < bins; ++b) {
        HistogramRow& row = rows[b];
        row.lo = lo + b * width;
        row.hi = lo + (b + 1) * width;
        row.density = double(counts[b]) / (total * width);
        const double mid = 0.5 * (row.lo + row.hi);
        row.mp = mp_density(mid, rho);
        row.sc = sc_density(mid);
    }
    return rows;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
    std::ostringstream out;
    out << "bin_lo,bin_hi,empirical,mp_density,sc_density\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      row.lo, row.hi, row.density, row.mp, row.sc);
        out << buf;
    }
    return out.str();
}

Frequency event_frequency(const std::function<bool(Rng&)>& event, long trials,
                          const RngSpec& spec) {
    if (trials < 1000) throw InputError("need at least 1000 trials");
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        Rng rng(spec, static_cast<std::uint64_t>(t));
        if (event(rng)) ++hits;
    }
    const double n = double(trials);
    const double phat = double(hits) / n;
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double zz = z * z;
    const double denom = 1 + zz / n;
    const double center = (phat + zz / (2 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1 - phat) / n + zz / (4 * n * n)) / denom;
    Frequency out;
    out.freq = phat;
    out.lo = std::max(0.0, center - half);
    out.hi = std::min(1.0, center + half);
    out.trials = trials;
    return out;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
    if (samples.empty()) throw InputError("ks needs at least one sample");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double dist = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        dist = std::max(dist, std::abs(f - double(i) / n));
        dist = std::max(dist, std::abs(double(i + 1) / n - f));
    }
    return dist;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace wishart
