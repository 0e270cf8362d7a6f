#include "wishart/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wishart/bounds.hpp"
#include "wishart/errors.hpp"
#include "wishart/moments.hpp"
#include "wishart/partitions.hpp"
#include "wishart/rational.hpp"
#include "wishart/sampling.hpp"
#include "wishart/specnum.hpp"
#include "wishart/tracepoly.hpp"
#include "wishart/wick.hpp"

namespace wishart {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// accumulates checks for one suite
struct Collector {
    SuiteResult out;
    explicit Collector(std::string suite) { out.suite = std::move(suite); }
    void add(std::string name, bool pass, std::string detail = "") {
        out.checks.push_back({std::move(name), pass, std::move(detail)});
    }
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

Rat rpow(const Rat& x, int e) {
    Rat out(1);
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}

RLaurent rl(std::vector<std::pair<int, Rat>> terms) {
    RLaurent out;
    for (auto& [p, c] : terms) out = out + RLaurent::monomial(c, p);
    return out;
}

RLaurent rl_pow(const RLaurent& x, int e) {
    RLaurent out = RLaurent::monomial(Rat(1), 0);
    for (int i = 0; i < e; ++i) out = out * x;
    return out;
}

SetPartition one_block(int n) {
    std::vector<int> b(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) b[static_cast<size_t>(i - 1)] = i;
    return SetPartition::from_blocks(n, {b});
}

// well-conditioned random SPD matrix: Gram matrix plus a ridge
SymMatrix seeded_spd(int r, Rng& rng) {
    Eigen::MatrixXd g(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = rng.normal();
    Eigen::MatrixXd m = g * g.transpose() / static_cast<double>(r) +
                        0.5 * Eigen::MatrixXd::Identity(r, r);
    return SymMatrix::from_dense(0.5 * (m + m.transpose()), 1e-9);
}

SymMatrix seeded_sym(int r, Rng& rng) {
    Eigen::MatrixXd g(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = rng.normal();
    return SymMatrix::from_dense(0.5 * (g + g.transpose()), 1e-9);
}

// --- golden serializations -------------------------------------------------

std::string poly_payload(const TracePolynomial& poly) { return poly.to_json() + "\n"; }

std::string sigma_weights_payload(int n) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TraceWeight& w : sigma_trace(n).table)
        rows.push_back({{"mu", w.mu}, {"coeff", to_string(Rat(w.coeff))}});
    return nlohmann::json{{"weights", rows}}.dump() + "\n";
}

struct GoldenSpec {
    std::string file;
    std::string (*build)(int);
    int arg;
};

std::string build_limit_moment(int n) { return poly_payload(moment_H(n)); }
std::string build_centered_power(int n) {
    return poly_payload(moment_partition(one_block(n), true));
}
std::string build_crossing_pair(int) {
    return poly_payload(moment_partition(SetPartition::from_blocks(4, {{1, 3}, {2, 4}}), true));
}
std::string build_mplus(int n) { return poly_payload(m_plus(n)); }
std::string build_sigma(int n) { return poly_payload(sigma(n, Route::CLOSED_FORM)); }
std::string build_gap(int) { return poly_payload(hn_moment(4).by_power.at(1)); }
std::string build_sigma_weights(int n) { return sigma_weights_payload(n); }

std::vector<GoldenSpec> golden_table() {
    std::vector<GoldenSpec> table;
    table.push_back({"limit_moment_2.json", build_limit_moment, 2});
    table.push_back({"limit_moment_4.json", build_limit_moment, 4});
    for (int n = 2; n <= 4; ++n)
        table.push_back({"centered_power_" + std::to_string(n) + ".json",
                         build_centered_power, n});
    table.push_back({"crossing_pair_4.json", build_crossing_pair, 0});
    for (int n = 1; n <= 3; ++n)
        table.push_back({"mplus_" + std::to_string(n) + ".json", build_mplus, n});
    for (int n = 1; n <= 5; ++n)
        table.push_back({"sigma_" + std::to_string(n) + ".json", build_sigma, n});
    table.push_back({"fourth_moment_gap.json", build_gap, 0});
    for (int n = 1; n <= 5; ++n)
        table.push_back({"sigma_weights_" + std::to_string(n) + ".json",
                         build_sigma_weights, n});
    return table;
}

// --- suites ----------------------------------------------------------------

SuiteResult goldens_suite(const VerifyConfig& cfg) {
    Collector c("goldens");
    for (const GoldenSpec& spec : golden_table()) {
        Timer t;
        const std::string want = spec.build(spec.arg);
        const double built = t.secs();

        std::ifstream in(cfg.golden_dir + "/" + spec.file, std::ios::binary);
        if (!in) {
            c.add(spec.file, false, "reference file missing in " + cfg.golden_dir);
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string got = buf.str();

        const bool match = got == want;
        const bool fast = built < 1.0;
        std::string detail = "built in " + num(built * 1e3) + " ms";
        if (!match) detail += ", serialization drifted from the reference";
        c.add(spec.file, match && fast, detail);
    }
    return c.out;
}

SuiteResult sigma_routes_suite(const VerifyConfig& cfg) {
    Collector c("sigma-routes");
    const int cap = cfg.n_cap > 0 ? std::min(cfg.n_cap, 8) : 7;
    for (int n = 1; n <= cap; ++n) {
        const bool same = sigma(n, Route::RECURSION) == sigma(n, Route::CLOSED_FORM);
        c.add("sigma_" + std::to_string(n) + " recursion equals closed form", same);
    }
    return c.out;
}

SuiteResult routes_suite(const VerifyConfig& cfg) {
    Collector c("routes");
    Timer t;
    const int cap = cfg.n_cap > 0 ? std::min(cfg.n_cap, 8) : 7;

    {
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= cap; ++n)
            if (sigma(n, Route::RECURSION) != sigma(n, Route::CLOSED_FORM)) {
                ok = false;
                detail = "first mismatch at n=" + std::to_string(n);
                break;
            }
        c.add("sigma recursion equals closed form, n <= " + std::to_string(cap), ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        for (int n = 0; n <= cap && ok; ++n)
            for (int m = 0; m <= n; ++m)
                if (sigma_circ(n, m, Route::RECURSION) !=
                    sigma_circ(n, m, Route::CLOSED_FORM)) {
                    ok = false;
                    detail = "first mismatch at (n,m)=(" + std::to_string(n) + "," +
                             std::to_string(m) + ")";
                    break;
                }
        c.add("block-refined sigma recursion equals closed form, n <= " +
                  std::to_string(cap),
              ok, detail);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 3; ++n)
            ok = ok && m_plus(n) == moment_class(2 * n, n, PartitionClass::NOSING_NC,
                                                 true, 2 * n);
        c.add("pair sum recursion equals the pairing engine, n <= 3", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 3; ++n)
            ok = ok && moment_H(2 * n) ==
                           moment_class(2 * n, n, PartitionClass::ALL, true, 2 * n);
        c.add("limit fluctuation moments by two independent engines, n <= 3", ok);
    }
    {
        bool ok = true;
        for (int n = 2; n <= 4 && ok; ++n)
            for (int m = 1; m <= n / 2; ++m)
                ok = ok && inversion(n, m) ==
                               moment_class(n, m, PartitionClass::NOSING, true);
        ok = ok && inversion(2, 2).is_zero() && inversion(3, 2).is_zero() &&
             inversion(4, 3).is_zero();
        c.add("difference inversion recovers the class sums, n <= 4", ok);
    }
    {
        // three routes to the first-block coefficient table: partition sum,
        // Bell convolution, and reading the powers off the sigma iterates
        std::vector<Rat> u = {Rat(2),    Rat(1, 2), Rat(3),    Rat(-1),
                              Rat(5, 3), Rat(7),    Rat(1, 4), Rat(9),
                              Rat(11, 5), Rat(1),   Rat(-2),   Rat(3, 7),
                              Rat(5),    Rat(1, 3), Rat(2, 9), Rat(4)};
        const auto ta = alpha_table(8, u, AlphaRoute::PARTITION_SUM);
        const auto tb = alpha_table(8, u, AlphaRoute::CONVOLUTION);
        bool ok = ta == tb;
        for (int n = 1; n <= 8 && ok; ++n) {
            std::map<int, Rat> by_power;
            for (const auto& term : sigma(n, Route::RECURSION).terms()) {
                Rat val = term.coeff;
                for (const auto& [i, e] : term.v)
                    val *= rpow(u[static_cast<size_t>(i - 1)], e);
                by_power[term.w] += val;
            }
            for (int m = 1; m <= n; ++m) {
                const Rat want = by_power.count(m) ? by_power[m] : Rat(0);
                ok = ok && ta[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)] == want;
            }
        }
        c.add("first-block coefficients by three routes, n <= 8", ok);
    }

    const double elapsed = t.secs();
    c.add("route suite runtime within budget", elapsed <= 60.0,
          num(elapsed) + " s of 60 s");
    c.out.seconds = elapsed;
    return c.out;
}

SuiteResult counting_suite(const VerifyConfig&) {
    Collector c("counting");
    const int cap = 9;

    bool bell_ok = true, stirling_ok = true, catalan_ok = true, narayana_ok = true,
         riordan_ok = true, kreweras_ok = true, triangle_ok = true;
    std::string detail;

    for (int n = 1; n <= cap; ++n) {
        bell_ok = bell_ok && count_partitions(n, std::nullopt, PartitionClass::ALL) ==
                                 bell_number(n);
        catalan_ok = catalan_ok &&
                     count_partitions(n, std::nullopt, PartitionClass::NC) == catalan(n);
        riordan_ok = riordan_ok &&
                     count_partitions(n, std::nullopt, PartitionClass::NOSING_NC) ==
                         riordan_n(n);
        for (int m = 1; m <= n; ++m) {
            stirling_ok = stirling_ok &&
                          count_partitions(n, m, PartitionClass::ALL) == stirling2(n, m);
            narayana_ok = narayana_ok &&
                          count_partitions(n, m, PartitionClass::NC) == narayana(n, m);
            riordan_ok = riordan_ok &&
                         count_partitions(n, m, PartitionClass::NOSING_NC) ==
                             riordan_nm(n, m);
        }

        // one pass over the non-crossing family for the finer statistics
        std::map<std::vector<int>, Int> by_type;
        std::map<int, Int> by_first;
        enumerate(n, std::nullopt, PartitionClass::NC, [&](const SetPartition& p) {
            by_type[partition_type(p).mu] += 1;
            by_first[static_cast<int>(p.blocks.front().size())] += 1;
            return true;
        });
        for (const auto& [mu, cnt] : by_type)
            kreweras_ok = kreweras_ok && cnt == kreweras_count(PartitionType{mu});
        for (int m = 1; m <= n; ++m) {
            const Int want = catalan_triangle(n, m);
            const Int got = by_first.count(m) ? by_first[m] : Int(0);
            triangle_ok = triangle_ok && got == want;
        }
    }

    c.add("all partitions count to bell numbers, n <= 9", bell_ok);
    c.add("block counts follow the stirling triangle, n <= 9", stirling_ok);
    c.add("non-crossing totals are catalan numbers, n <= 9", catalan_ok);
    c.add("non-crossing block counts are narayana, n <= 9", narayana_ok);
    c.add("singleton-free non-crossing counts are riordan, n <= 9", riordan_ok);
    c.add("per-type counts match the kreweras closed form, n <= 9", kreweras_ok);
    c.add("first-block sizes follow the ballot triangle, n <= 9", triangle_ok);
    return c.out;
}

SuiteResult isotropic_suite(const VerifyConfig&) {
    Collector c("isotropic");
    const RLaurent one_plus_r = rl({{0, Rat(1)}, {1, Rat(1)}});

    {
        bool ok = true;
        for (int n = 1; n <= 6; ++n) {
            const RLaurent want = rl_pow(one_plus_r, n) * Rat(catalan(n));
            ok = ok && m_plus(n).eval_isotropic() == want &&
                 iso_m_plus(n) == want;
        }
        c.add("pair sums at the identity equal catalan times (1+r)^n, n <= 6", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 7 && ok; ++n)
            for (int m = 1; m <= n; ++m)
                ok = ok && sigma_circ(n, m, Route::CLOSED_FORM).trace().eval_isotropic() ==
                               RLaurent::monomial(Rat(narayana(n, m)), n - m + 1);
        c.add("block-refined sigma traces at the identity are narayana, n <= 7", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 7; ++n)
            ok = ok && sigma(n, Route::CLOSED_FORM).trace().eval_isotropic() ==
                           RLaurent::monomial(Rat(catalan(n)), n + 1);
        c.add("sigma traces at the identity are catalan, n <= 7", ok);
    }
    {
        // normalized second and fourth fluctuation traces at the identity
        const bool ok2 = moment_H(2).trace().eval_isotropic() ==
                         rl({{2, Rat(1)}, {1, Rat(1)}});
        const bool ok4 = moment_H(4).trace().eval_isotropic() ==
                         rl({{3, Rat(2)}, {2, Rat(5)}, {1, Rat(5)}});
        c.add("fluctuation trace moments at the identity match their closed form",
              ok2 && ok4);
    }
    return c.out;
}

SuiteResult limits_suite(const VerifyConfig& cfg) {
    Collector c("limits");
    Timer t;

    {
        bool ok = true;
        double worst = 0.0;
        for (const Rat& rho : {Rat(1, 2), Rat(1), Rat(2)})
            for (int n = 0; n <= 6; ++n) {
                const double gap = std::abs(mp_integral(n, to_double(rho)) -
                                            to_double(mp_moment_iso(n, rho)));
                worst = std::max(worst, gap);
                ok = ok && gap <= 1e-6;
            }
        c.add("spectral moment sums match quadrature to 1e-6, n <= 6",
              ok, "worst gap " + num(worst));
    }
    {
        bool ok = true;
        for (int n = 0; n <= 6; ++n)
            ok = ok && mp_moment_iso(n, Rat(1)) == Rat(catalan(n));
        c.add("square-ratio spectral moments are exactly catalan", ok);
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (int n = 0; n <= 8; ++n) {
            const double want = n % 2 == 0 ? to_double(Rat(catalan(n / 2))) : 0.0;
            const double gap = std::abs(sc_integral(n) - want);
            worst = std::max(worst, gap);
            ok = ok && gap <= 1e-8;
        }
        c.add("semicircle quadrature moments are catalan to 1e-8, n <= 8",
              ok, "worst gap " + num(worst));
    }

    // desk-scale histograms against the limit densities, edges skipped
    const int r = 200;
    const long trials = cfg.trials > 0 ? cfg.trials : 60;
    const int bins = 25;
    const SymMatrix eye = SymMatrix::identity(r);
    {
        const auto rows = spectral_histogram(eye, r, trials, bins,
                                             SpectrumKind::SAMPLE_COVARIANCE,
                                             RngSpec{cfg.seed, 51});
        double sup = 0.0;
        for (std::size_t b = 3; b + 3 < rows.size(); ++b)
            sup = std::max(sup, std::abs(rows[b].density - rows[b].mp));
        c.add("covariance spectrum histogram tracks its limit law at r = N = 200",
              sup <= 0.05, "sup gap " + num(sup) + " over interior bins");
    }
    {
        const auto rows = spectral_histogram(eye, r, trials, bins,
                                             SpectrumKind::FLUCTUATION,
                                             RngSpec{cfg.seed, 52});
        double sup = 0.0;
        for (std::size_t b = 3; b + 3 < rows.size(); ++b)
            sup = std::max(sup, std::abs(rows[b].density - rows[b].sc));
        c.add("fluctuation spectrum histogram tracks the semicircle at r = N = 200",
              sup <= 0.05, "sup gap " + num(sup) + " over interior bins");
    }

    const double elapsed = t.secs();
    c.add("limit suite runtime within budget", elapsed <= 120.0,
          num(elapsed) + " s of 120 s");
    c.out.seconds = elapsed;
    return c.out;
}

SuiteResult montecarlo_suite(const VerifyConfig& cfg) {
    Collector c("montecarlo");
    Timer t;
    const long trials = cfg.trials > 0 ? cfg.trials : 10000;

    Rng setup(RngSpec{cfg.seed, 21});
    const SymMatrix p = seeded_spd(3, setup);
    const int n_draws = 50;

    for (int n = 1; n <= 3; ++n) {
        const MomentEstimate est =
            empirical_moment(p, n_draws, n, MomentTarget::PN_POWER, trials,
                             RngSpec{cfg.seed, 22 + static_cast<std::uint64_t>(n)});
        const Eigen::MatrixXd want =
            pn_moment(n, Rat(n_draws), false).eval_numeric(p.m);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(est.mean.m(i, j) - want(i, j)) /
                                            est.std_error.m(i, j));
        c.add("sampled covariance power " + std::to_string(n) +
                  " matches the exact expansion",
              worst <= 4.0, "worst z " + num(worst) + " over " +
                                std::to_string(trials) + " trials");
    }

    for (int n = 1; n <= 2; ++n) {
        const MomentEstimate est =
            empirical_moment(p, n_draws, 2 * n, MomentTarget::H_POWER, trials,
                             RngSpec{cfg.seed, 26 + static_cast<std::uint64_t>(n)});
        const Eigen::MatrixXd want = moment_H(2 * n).eval_numeric(p.m);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(est.mean.m(i, j) - want(i, j)) /
                                            est.std_error.m(i, j));
        c.add("limit ensemble moment " + std::to_string(2 * n) +
                  " matches the pairing engine",
              worst <= 4.0, "worst z " + num(worst) + " over " +
                                std::to_string(trials) + " trials");
    }

    const double elapsed = t.secs();
    c.add("monte carlo suite runtime within budget", elapsed <= 120.0,
          num(elapsed) + " s of 120 s");
    c.out.seconds = elapsed;
    return c.out;
}

// tallies randomized inequality instances; a violation is a met hypothesis
// with a negative slack-adjusted margin
struct Sweep {
    int instances = 0;
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string note;

    void take(const BoundReport& rep, double slack_scale) {
        const double slack = slack_scale * std::max(1.0, std::abs(rep.bound));
        worst = std::min(worst, rep.margin);
        if (!rep.hypothesis_ok || rep.margin + slack < 0) {
            ++violations;
            if (note.empty()) note = rep.name;
        }
    }
    std::string detail() const {
        std::string out = std::to_string(instances) + " instances, " +
                          std::to_string(violations) + " violations, worst margin " +
                          num(worst);
        if (!note.empty()) out += " (first: " + note + ")";
        return out;
    }
    bool pass() const { return violations == 0; }
};

SuiteResult bounds_suite(const VerifyConfig& cfg) {
    Collector c("bounds");
    Timer t;
    const int instances = 100;

    {
        // Frobenius estimates for the class sums and the fluctuation moments
        Sweep sweep;
        for (int inst = 0; inst < instances; ++inst) {
            Rng rng(RngSpec{cfg.seed, 31}, static_cast<std::uint64_t>(inst));
            const int r = 2 + static_cast<int>(rng.next_u64() % 3);
            const SymMatrix p = seeded_spd(r, rng);
            const int n = 2 + static_cast<int>(rng.next_u64() % 5);
            const int m = 1 + static_cast<int>(rng.next_u64() %
                                               static_cast<std::uint64_t>(n / 2));
            const long n_draws =
                n / 2 + 1 + static_cast<long>(rng.next_u64() % 50);
            ++sweep.instances;
            for (const BoundReport& rep : moment_class_norm_check(p, n, m))
                sweep.take(rep, 1e-9);
            for (const BoundReport& rep : moment_norm_check(p, n, n_draws))
                sweep.take(rep, 1e-9);
        }
        c.add("class sum and moment norm estimates hold on random input",
              sweep.pass(), sweep.detail());
    }
    {
        // squeeze of the one-draw Laplace transform between its cubic envelopes
        Sweep sweep;
        for (int inst = 0; inst < instances; ++inst) {
            Rng rng(RngSpec{cfg.seed, 32}, static_cast<std::uint64_t>(inst));
            const int r = 2 + static_cast<int>(rng.next_u64() % 2);
            const SymMatrix p = seeded_spd(r, rng);
            const double frac = 0.05 + 0.75 * rng.uniform();
            const double t_val = frac / (2.0 * p.m.trace());
            ++sweep.instances;
            for (const BoundReport& rep : matrix_laplace_check(p, t_val, 24))
                sweep.take(rep, 1e-8);
        }
        c.add("log transform envelope estimates hold on random input",
              sweep.pass(), sweep.detail());
    }
    {
        // sub-gaussian domination of the exact trace log-Laplace series
        Sweep sweep;
        for (int inst = 0; inst < instances; ++inst) {
            Rng rng(RngSpec{cfg.seed, 33}, static_cast<std::uint64_t>(inst));
            const int r = 2 + static_cast<int>(rng.next_u64() % 3);
            const SymMatrix p = seeded_spd(r, rng);
            const long n_draws = 8 + static_cast<long>(rng.next_u64() % 193);
            ++sweep.instances;

            const SymMatrix a = seeded_sym(r, rng);
            const double f_norm = (a.m * p.m).norm();
            const double t_gen = (2.0 * rng.uniform() - 1.0) * 0.95 *
                                 std::sqrt(static_cast<double>(n_draws)) /
                                 (4.0 * f_norm);
            sweep.take(sub_gaussian_check(a, p, n_draws, t_gen, false), 1e-9);

            const SymMatrix apos = seeded_spd(r, rng);
            const double t_psd = rng.uniform() * 0.95 *
                                 std::sqrt(static_cast<double>(n_draws)) /
                                 (4.0 * (apos.m * p.m).trace());
            sweep.take(sub_gaussian_check(apos, p, n_draws, t_psd, true), 1e-9);
        }
        c.add("sub-gaussian trace estimates hold on random input", sweep.pass(),
              sweep.detail());
    }
    {
        // scaled trace moment gaps against the gaussian limit, both parities
        Sweep sweep;
        for (int inst = 0; inst < instances; ++inst) {
            Rng rng(RngSpec{cfg.seed, 34}, static_cast<std::uint64_t>(inst));
            const SymMatrix p = seeded_spd(3, rng);
            const SymMatrix a = seeded_spd(3, rng);
            const long n_draws = 50 + static_cast<long>(rng.next_u64() % 351);
            const int n = 1 + inst % 3;

            // valid envelope: the product spectrum radius, padded a little
            const Eigen::MatrixXd root = sqrt_spd(p);
            const Eigen::MatrixXd prod = root * a.m * root;
            const std::vector<double> mu =
                eigenvalues(SymMatrix::from_dense(0.5 * (prod + prod.transpose()), 1e-9));
            const double beta = 1.01 * std::max(std::abs(mu.front()), std::abs(mu.back()));

            ++sweep.instances;
            for (const BoundReport& rep : trace_moment_check(a, p, n_draws, n, 1.0, beta))
                sweep.take(rep, 1e-9);
        }
        c.add("trace moment gap estimates hold on random input", sweep.pass(),
              sweep.detail());
    }
    {
        // rank-one trace power closed form against direct matrix arithmetic
        int bad = 0;
        double worst = 0.0;
        for (int inst = 0; inst < instances; ++inst) {
            Rng rng(RngSpec{cfg.seed, 35}, static_cast<std::uint64_t>(inst));
            const int r = 4;
            const SymMatrix p = seeded_spd(r, rng);
            Eigen::VectorXd x(r), y(r);
            for (int i = 0; i < r; ++i) x(i) = rng.normal();
            for (int i = 0; i < r; ++i) y(i) = rng.normal();
            const int n = 1 + inst % 8;

            const Eigen::MatrixXd ap =
                0.5 * (x * y.transpose() + y * x.transpose()) * p.m;
            Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(r, r);
            for (int k = 0; k < n; ++k) pw = pw * ap;
            const double direct = pw.trace();
            const double closed = rank1_trace_power(x, y, p, n);
            const double gap = std::abs(closed - direct) /
                               std::max(1.0, std::abs(direct));
            worst = std::max(worst, gap);
            if (gap > 1e-10) ++bad;
        }
        c.add("rank-one trace power closed form matches direct traces", bad == 0,
              std::to_string(instances) + " instances, worst relative gap " +
                  num(worst));
    }

    c.out.seconds = t.secs();
    return c.out;
}

SuiteResult coverage_suite(const VerifyConfig& cfg) {
    Collector c("coverage");
    Timer t;
    const long trials = cfg.trials > 0 ? cfg.trials : 10000;
    const int n_draws = 400;

    Rng setup(RngSpec{cfg.seed, 41});
    const SymMatrix p = seeded_spd(3, setup);
    const SymMatrix id3 = SymMatrix::identity(3);
    const Eigen::MatrixXd sqrt_p = sqrt_spd(p);
    const std::vector<double> lam_p = eigenvalues(p);

    std::uint64_t stream = 42;
    for (double delta : {0.5, 1.0, 2.0}) {
        const double target = 1.0 - std::exp(-delta);
        const std::string at = " at delta " + num(delta);
        auto covered = [&](const std::string& name, const Frequency& f) {
            const double reach = f.freq + 0.5 * (f.hi - f.lo);
            c.add(name + at, reach >= target,
                  "freq " + num(f.freq) + " + half-width " +
                      num(reach - f.freq) + " vs " + num(target));
        };

        const double two_sided = concentration_threshold(
            ThresholdKind::TRACE_TWO_SIDED, {id3, p, n_draws, delta});
        covered("two-sided trace fluctuation event",
                event_frequency(
                    [&](Rng& rng) {
                        return std::abs(sample_fluctuation(p, n_draws, rng).m.trace()) <=
                               two_sided;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double upper = concentration_threshold(ThresholdKind::TRACE_POS,
                                                     {id3, p, n_draws, delta});
        covered("upper trace fluctuation event",
                event_frequency(
                    [&](Rng& rng) {
                        return sample_fluctuation(p, n_draws, rng).m.trace() <= upper;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double lower = concentration_threshold(ThresholdKind::TRACE_NEG,
                                                     {id3, p, n_draws, delta});
        covered("lower trace fluctuation event",
                event_frequency(
                    [&](Rng& rng) {
                        return sample_fluctuation(p, n_draws, rng).m.trace() >= lower;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double limit_level = concentration_threshold(
            ThresholdKind::TRACE_LIMIT, {id3, p, 0, delta});
        covered("limit ensemble trace event",
                event_frequency(
                    [&](Rng& rng) {
                        return sample_limit_fluctuation(sqrt_p, rng).m.trace() <=
                               limit_level;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double opnorm = concentration_threshold(ThresholdKind::OPNORM,
                                                      {{}, p, n_draws, delta});
        covered("fluctuation operator norm event",
                event_frequency(
                    [&](Rng& rng) {
                        const auto lam =
                            eigenvalues(sample_fluctuation(p, n_draws, rng));
                        return std::max(std::abs(lam.front()),
                                        std::abs(lam.back())) <= opnorm;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double sup_gap = concentration_threshold(ThresholdKind::EIGEN_SUP,
                                                       {{}, p, n_draws, delta});
        covered("eigenvalue sup deviation event",
                event_frequency(
                    [&](Rng& rng) {
                        const auto lam = eigenvalues(sample_wishart(
                            p, n_draws, WishartVariant::PLAIN, rng));
                        double worst = 0.0;
                        for (std::size_t k = 0; k < lam.size(); ++k)
                            worst = std::max(worst, std::abs(lam[k] - lam_p[k]));
                        return worst <= sup_gap;
                    },
                    trials, RngSpec{cfg.seed, stream++}));

        const double top_level = concentration_threshold(ThresholdKind::LAMBDA1,
                                                         {{}, p, n_draws, delta});
        covered("top eigenvalue event",
                event_frequency(
                    [&](Rng& rng) {
                        return eigenvalues(sample_wishart(p, n_draws,
                                                          WishartVariant::PLAIN, rng))
                                   .front() <= top_level;
                    },
                    trials, RngSpec{cfg.seed, stream++}));
    }

    c.out.seconds = t.secs();
    return c.out;
}

} // namespace

bool SuiteResult::pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

int SuiteResult::failed() const {
    int n = 0;
    for (const CheckResult& c : checks)
        if (!c.pass) ++n;
    return n;
}

std::vector<std::string> suite_names() {
    return {"goldens", "routes",     "sigma-routes", "counting", "isotropic",
            "limits",  "montecarlo", "bounds",       "coverage"};
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    Timer t;
    SuiteResult out;
    if (name == "goldens")
        out = goldens_suite(cfg);
    else if (name == "routes")
        out = routes_suite(cfg);
    else if (name == "sigma-routes")
        out = sigma_routes_suite(cfg);
    else if (name == "counting")
        out = counting_suite(cfg);
    else if (name == "isotropic")
        out = isotropic_suite(cfg);
    else if (name == "limits")
        out = limits_suite(cfg);
    else if (name == "montecarlo")
        out = montecarlo_suite(cfg);
    else if (name == "bounds")
        out = bounds_suite(cfg);
    else if (name == "coverage")
        out = coverage_suite(cfg);
    else
        throw InputError("unknown verify suite: " + name);
    if (out.seconds == 0.0) out.seconds = t.secs();
    return out;
}

std::vector<SuiteResult> run_all(const VerifyConfig& cfg) {
    std::vector<SuiteResult> out;
    for (const std::string& name : {"goldens", "routes", "counting", "isotropic",
                                    "limits", "montecarlo", "bounds", "coverage"})
        out.push_back(run_suite(name, cfg));
    return out;
}

std::vector<std::pair<std::string, std::string>> golden_payloads() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const GoldenSpec& spec : golden_table())
        out.push_back({spec.file, spec.build(spec.arg)});
    return out;
}

} // namespace wishart
