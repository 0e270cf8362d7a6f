#include "wishart/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "wishart/errors.hpp"
#include "wishart/quadrature.hpp"
#include "wishart/specnum.hpp"
#include "wishart/wick.hpp"

namespace wishart {

namespace {

constexpr int kMPlusCap = 8;
constexpr int kSigmaCap = 8;
constexpr int kSigmaTraceCap = 10;
constexpr int kIsoCap = 12;
constexpr int kRank1Cap = 10;
constexpr int kLimitCap = 12;
constexpr int kAlphaCap = 9;

void check_cap(const char* what, int n, int cap) {
    if (n > cap)
        throw SizeCapError(std::string(what) + ": index " + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
}

Rat rat_pow(const Rat& base, int e) {
    if (e < 0) {
        if (base == 0) throw InputError("rat_pow: negative power of zero");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

// (x)_m = x (x-1) ... (x-m+1) at a rational point
Rat falling(const Rat& x, int m) {
    Rat out(1);
    for (int j = 0; j < m; ++j) out *= x - Rat(j);
    return out;
}

Int int_pow2(int e) { return Int(1) << e; }

// drop zero exponents so the monomial key is canonical
TraceMonomial make_term(Rat coeff, std::map<int, int> v, int w) {
    for (auto it = v.begin(); it != v.end();)
        it = (it->second == 0) ? v.erase(it) : std::next(it);
    return TraceMonomial{std::move(coeff), std::move(v), w};
}

// prod_{0 <= l < k} (r + 2l), the uncentered even-moment product
RLaurent rising_even(int k) {
    RLaurent out = RLaurent::monomial(Rat(1), 0);
    for (int l = 0; l < k; ++l)
        out = out * (RLaurent::monomial(Rat(1), 1) + RLaurent::monomial(Rat(2 * l), 0));
    return out;
}

RLaurent laurent_pow(const RLaurent& base, int e) {
    RLaurent out = RLaurent::monomial(Rat(1), 0);
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
}

} // namespace

Route route_from_string(const std::string& name) {
    if (name == "recursion") return Route::RECURSION;
    if (name == "closed-form") return Route::CLOSED_FORM;
    throw InputError("unknown route: " + name);
}

std::string to_string(Route route) {
    return route == Route::RECURSION ? "recursion" : "closed-form";
}

TracePolynomial m_plus(int n) {
    if (n < 0) throw InputError("m_plus: need n >= 0");
    check_cap("m_plus", n, kMPlusCap);
    std::vector<TracePolynomial> mp(static_cast<size_t>(n) + 1);
    mp[0] = TracePolynomial::identity();
    for (int t = 0; t < n; ++t) {
        TracePolynomial acc;
        for (int k = 0; k <= t; ++k) {
            const TracePolynomial a = mp[static_cast<size_t>(k)].mul_P();
            acc = acc + ((a + a.trace()) * mp[static_cast<size_t>(t - k)]).mul_P();
        }
        mp[static_cast<size_t>(t) + 1] = acc;
    }
    return mp[static_cast<size_t>(n)];
}

TracePolynomial sigma(int n, Route route) {
    if (n < 0) throw InputError("sigma: need n >= 0");
    check_cap("sigma", n, kSigmaCap);
    if (route == Route::RECURSION) {
        std::vector<TracePolynomial> s(static_cast<size_t>(n) + 1);
        s[0] = TracePolynomial::identity();
        for (int t = 0; t < n; ++t) {
            TracePolynomial acc;
            for (int k = 0; k <= t; ++k)
                acc = acc + s[static_cast<size_t>(k)].mul_P().trace() *
                                s[static_cast<size_t>(t - k)].mul_P();
            s[static_cast<size_t>(t) + 1] = acc;
        }
        return s[static_cast<size_t>(n)];
    }
    if (n == 0) return TracePolynomial::identity();
    // one monomial per non-crossing partition: the block of 1 becomes the
    // matrix power, every other block a trace whose order is its size plus
    // one, and a spare trace of P for each non-block element plus one more
    std::vector<TraceMonomial> terms;
    enumerate(n, std::nullopt, PartitionClass::NC, [&](const SetPartition& p) {
        const int m = p.block_count();
        const int head = static_cast<int>(p.blocks.front().size());
        std::map<int, int> v;
        v[1] += 1 + (n - m);
        for (const auto& b : p.blocks) v[1 + static_cast<int>(b.size())] += 1;
        v[1 + head] -= 1;
        terms.push_back(make_term(Rat(1), std::move(v), head));
        return true;
    });
    return TracePolynomial::from_terms(std::move(terms));
}

SigmaTrace sigma_trace(int n) {
    if (n < 1) throw InputError("sigma_trace: need n >= 1");
    check_cap("sigma_trace", n, kSigmaTraceCap);
    SigmaTrace out;
    std::vector<TraceMonomial> terms;
    for (const auto& mu : multiplicity_vectors(2 * n, n + 1)) {
        Rat c = Rat(2 * factorial(n));
        for (int count : mu) c /= Rat(factorial(count));
        if (denominator(c) != 1)
            throw InputError("sigma_trace: non-integer multinomial weight");
        std::map<int, int> v;
        for (int i = 1; i <= static_cast<int>(mu.size()); ++i)
            if (mu[static_cast<size_t>(i - 1)] > 0) v[i] = mu[static_cast<size_t>(i - 1)];
        terms.push_back(make_term(c, std::move(v), 0));
        out.table.push_back(TraceWeight{mu, numerator(c)});
    }
    out.poly = TracePolynomial::from_terms(std::move(terms));
    return out;
}

TracePolynomial sigma_circ(int n, int m, Route route) {
    if (n < 0 || m < 0) throw InputError("sigma_circ: need n, m >= 0");
    if (m > n) throw InputError("sigma_circ: need m <= n");
    check_cap("sigma_circ", n, kSigmaCap);
    if (n == 0) return TracePolynomial::identity();
    if (m == 0) return TracePolynomial::zero();
    if (route == Route::RECURSION) {
        // table[i][j] over 0 <= j <= i <= n
        std::vector<std::vector<TracePolynomial>> s(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) s[static_cast<size_t>(i)].resize(static_cast<size_t>(i) + 1);
        s[0][0] = TracePolynomial::identity();
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= i; ++j) {
                TracePolynomial acc = s[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)].mul_P();
                for (int n1 = 0; n1 <= i - 1; ++n1) {
                    const int n2 = i - 1 - n1;
                    for (int m1 = 0; m1 <= std::min(j, n1); ++m1) {
                        const int m2 = j - m1;
                        if (m2 < 0 || m2 > n2) continue;
                        if (n2 == 0 && m2 == 0) continue; // already the first term
                        acc = acc + (s[static_cast<size_t>(n1)][static_cast<size_t>(m1)] *
                                     s[static_cast<size_t>(n2)][static_cast<size_t>(m2)].trace())
                                        .mul_P();
                    }
                }
                s[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
            }
        }
        return s[static_cast<size_t>(n)][static_cast<size_t>(m)];
    }
    // closed form: complement block sizes as trace orders, the block of the
    // complement holding the last node cancels against the matrix power
    std::vector<TraceMonomial> terms;
    enumerate(n, m, PartitionClass::NC, [&](const SetPartition& p) {
        const SetPartition comp = kreweras(p);
        const int head = iota(p);
        std::map<int, int> v;
        for (const auto& b : comp.blocks) v[static_cast<int>(b.size())] += 1;
        v[head] -= 1;
        terms.push_back(make_term(Rat(1), std::move(v), head));
        return true;
    });
    return TracePolynomial::from_terms(std::move(terms));
}

TracePolynomial partial_moment(int n, int m, bool centered, int max_n) {
    if (n < 0 || m < 0) throw InputError("partial_moment: need n, m >= 0");
    if (n == 0) return m == 0 ? TracePolynomial::identity() : TracePolynomial::zero();
    TracePolynomial acc;
    const int top = centered ? n / 2 : n;
    const PartitionClass cls = centered ? PartitionClass::NOSING : PartitionClass::ALL;
    for (int k = std::max(m, 1); k <= top; ++k) {
        const Int s = stirling1(k, m);
        if (s == 0) continue;
        acc = acc + moment_class(n, k, cls, centered, max_n) * Rat(s);
    }
    return acc;
}

TracePolynomial HnMoment::scaled_eval(const Rat& samples) const {
    TracePolynomial acc;
    for (const auto& [m, poly] : by_class) acc = acc + poly * falling(samples, m);
    return acc;
}

TracePolynomial HnMoment::eval(const Rat& samples) const {
    if (n % 2 != 0) throw InputError("HnMoment::eval: odd order needs a square root; use scaled_eval");
    if (samples == 0) throw InputError("HnMoment::eval: need a nonzero sample count");
    return scaled_eval(samples) * rat_pow(samples, -n / 2);
}

HnMoment hn_moment(int n, int max_n) {
    if (n < 0) throw InputError("hn_moment: need n >= 0");
    HnMoment out;
    out.n = n;
    if (n == 0) {
        out.by_class[0] = TracePolynomial::identity();
        out.by_power[0] = TracePolynomial::identity();
        return out;
    }
    for (int m = 1; m <= n / 2; ++m)
        out.by_class[m] = moment_class(n, m, PartitionClass::NOSING, true, max_n);
    for (int l = 1; l <= n / 2; ++l) {
        TracePolynomial acc;
        for (int m = l; m <= n / 2; ++m) acc = acc + out.by_class[m] * Rat(stirling1(m, l));
        if (!acc.is_zero()) out.by_power[l] = acc;
    }
    return out;
}

TracePolynomial pn_moment(int n, const Rat& samples, bool centered, WeightConvention conv,
                          int max_n) {
    if (n < 0) throw InputError("pn_moment: need n >= 0");
    if (samples == 0) throw InputError("pn_moment: need a nonzero sample count");
    if (n == 0) return TracePolynomial::identity();
    TracePolynomial acc;
    const int top = centered ? n / 2 : n;
    const PartitionClass cls = centered ? PartitionClass::NOSING : PartitionClass::ALL;
    for (int m = 1; m <= top; ++m) {
        Rat w = falling(samples, m);
        if (conv == WeightConvention::BINOMIAL) w /= Rat(factorial(m));
        acc = acc + moment_class(n, m, cls, centered, max_n) * w;
    }
    return acc * rat_pow(samples, -n);
}

TracePolynomial inversion(int n, int m, int max_n) {
    if (n < 1 || m < 1 || m > n) throw InputError("inversion: need 1 <= m <= n");
    // class sums over all block counts, from the raw partition stream
    std::vector<TracePolynomial> by_blocks(static_cast<size_t>(n) + 1);
    enumerate(n, std::nullopt, PartitionClass::ALL, [&](const SetPartition& p) {
        by_blocks[static_cast<size_t>(p.block_count())] =
            by_blocks[static_cast<size_t>(p.block_count())] + moment_partition(p, true, max_n);
        return true;
    });
    TracePolynomial acc;
    for (int k = 1; k <= m; ++k) {
        // S_k = E[(sum of k centered factors)^n]: label assignments grouped
        // by their fiber partition, (k)_p choices for a p-block one
        TracePolynomial s_k;
        for (int p = 1; p <= n; ++p)
            s_k = s_k + by_blocks[static_cast<size_t>(p)] * Rat(pochhammer(k, p));
        Rat w = Rat(1) / Rat(factorial(k) * factorial(m - k));
        if ((m - k) % 2 != 0) w = -w;
        acc = acc + s_k * w;
    }
    return acc;
}

IsotropicKind isotropic_kind_from_string(const std::string& name) {
    if (name == "m-pi-circ") return IsotropicKind::M_PI_CIRC;
    if (name == "m-pi-centered") return IsotropicKind::M_PI_CENTERED;
    if (name == "x-minus-i-power") return IsotropicKind::X_MINUS_I_POWER;
    if (name == "m-plus-i") return IsotropicKind::M_PLUS_I;
    if (name == "rank1-power") return IsotropicKind::RANK1_POWER;
    throw InputError("unknown isotropic kind: " + name);
}

std::string to_string(IsotropicKind kind) {
    switch (kind) {
    case IsotropicKind::M_PI_CIRC: return "m-pi-circ";
    case IsotropicKind::M_PI_CENTERED: return "m-pi-centered";
    case IsotropicKind::X_MINUS_I_POWER: return "x-minus-i-power";
    case IsotropicKind::M_PLUS_I: return "m-plus-i";
    default: return "rank1-power";
    }
}

RLaurent iso_moment_uncentered(const PartitionType& type) {
    check_cap("iso_moment_uncentered", type.size(), kIsoCap);
    RLaurent out = RLaurent::monomial(Rat(1), 0);
    for (int k = 1; k <= static_cast<int>(type.mu.size()); ++k) {
        const int mult = type.mu[static_cast<size_t>(k - 1)];
        if (mult < 0) throw InputError("iso_moment_uncentered: negative multiplicity");
        if (mult == 0) continue;
        out = out * laurent_pow(rising_even(k).shifted(-1), mult);
    }
    return out;
}

RLaurent iso_moment_centered(const PartitionType& type) {
    check_cap("iso_moment_centered", type.size(), kIsoCap);
    if (!type.mu.empty() && type.mu[0] > 0) return RLaurent{}; // singleton factor centers to zero
    RLaurent out = RLaurent::monomial(Rat(1), 0);
    for (int k = 2; k <= static_cast<int>(type.mu.size()); ++k) {
        const int mult = type.mu[static_cast<size_t>(k - 1)];
        if (mult < 0) throw InputError("iso_moment_centered: negative multiplicity");
        if (mult == 0) continue;
        out = out * laurent_pow(iso_centered_power(k), mult);
    }
    return out;
}

RLaurent iso_centered_power(int n, IsoRoute route) {
    if (n < 0) throw InputError("iso_centered_power: need n >= 0");
    check_cap("iso_centered_power", n, kIsoCap);
    RLaurent body;
    if (route == IsoRoute::BELL) {
        // complete Bell polynomial in r - 1, 2r, 8r, ..., 2^{k-1}(k-1)! r
        std::vector<RLaurent> x(static_cast<size_t>(n));
        if (n >= 1) x[0] = RLaurent::monomial(Rat(1), 1) + RLaurent::monomial(Rat(-1), 0);
        for (int k = 2; k <= n; ++k)
            x[static_cast<size_t>(k - 1)] =
                RLaurent::monomial(Rat(int_pow2(k - 1) * factorial(k - 1)), 1);
        body = bell_complete<RLaurent>(n, x, RLaurent::monomial(Rat(1), 0));
    } else {
        // alternating binomial sum over the uncentered even-moment products
        for (int l = 0; l <= n; ++l) {
            Rat c = Rat(binomial(n, l));
            if ((n - l) % 2 != 0) c = -c;
            body = body + rising_even(l) * c;
        }
    }
    RLaurent parity = RLaurent::monomial(Rat(1), 0) + RLaurent::monomial(Rat(-1), -1);
    if (n % 2 != 0) parity = parity * Rat(-1);
    return body.shifted(-1) + parity;
}

RLaurent iso_m_plus(int n) {
    if (n < 0) throw InputError("iso_m_plus: need n >= 0");
    check_cap("iso_m_plus", n, kIsoCap);
    const RLaurent one_plus_r = RLaurent::monomial(Rat(1), 0) + RLaurent::monomial(Rat(1), 1);
    return laurent_pow(one_plus_r, n) * Rat(catalan(n));
}

TracePolynomial rank1_power(int n) {
    if (n < 0) throw InputError("rank1_power: need n >= 0");
    check_cap("rank1_power", n, kRank1Cap);
    if (n == 0) return TracePolynomial::identity();
    // Bell polynomials in the scaled trace powers 2^{j-1}(j-1)! Tr(P^j)
    std::vector<TracePolynomial> x(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j)
        x[static_cast<size_t>(j - 1)] =
            TracePolynomial::trace_power(j) * Rat(int_pow2(j - 1) * factorial(j - 1));
    TracePolynomial acc;
    for (int k = 0; k < n; ++k) {
        const TracePolynomial b =
            k == 0 ? TracePolynomial::constant(Rat(1))
                   : bell_complete<TracePolynomial>(k, x, TracePolynomial::constant(Rat(1)));
        const Rat c = Rat(int_pow2(n - 1 - k) * factorial(n - 1)) / Rat(factorial(k));
        acc = acc + (b * TracePolynomial::p_power(n - k)) * c;
    }
    return acc;
}

LimitKind limit_kind_from_string(const std::string& name) {
    if (name == "mp-moment") return LimitKind::MP_MOMENT;
    if (name == "mp-moment-iso") return LimitKind::MP_MOMENT_ISO;
    if (name == "mp-centered-iso") return LimitKind::MP_CENTERED_ISO;
    if (name == "semicircle-sigma") return LimitKind::SEMICIRCLE_SIGMA;
    if (name == "mp-integral") return LimitKind::MP_INTEGRAL;
    if (name == "sc-integral") return LimitKind::SC_INTEGRAL;
    throw InputError("unknown limit kind: " + name);
}

std::string to_string(LimitKind kind) {
    switch (kind) {
    case LimitKind::MP_MOMENT: return "mp-moment";
    case LimitKind::MP_MOMENT_ISO: return "mp-moment-iso";
    case LimitKind::MP_CENTERED_ISO: return "mp-centered-iso";
    case LimitKind::SEMICIRCLE_SIGMA: return "semicircle-sigma";
    case LimitKind::MP_INTEGRAL: return "mp-integral";
    default: return "sc-integral";
    }
}

Rat mp_moment(int n, const Rat& rho, const std::vector<Rat>& tau) {
    if (n < 0) throw InputError("mp_moment: need n >= 0");
    check_cap("mp_moment", n, kLimitCap);
    if (n == 0) return Rat(1);
    if (static_cast<int>(tau.size()) < n)
        throw InputError("mp_moment: tau must reach order n");
    Rat acc(0);
    for (int m = 1; m <= n; ++m) {
        // partitions with n + 1 - m blocks pick up rho^{n-m}
        Rat inner(0);
        for (const auto& mu : multiplicity_vectors(n, n + 1 - m)) {
            Rat term = Rat(kreweras_count(PartitionType{mu}));
            for (int i = 1; i <= static_cast<int>(mu.size()); ++i)
                if (mu[static_cast<size_t>(i - 1)] > 0)
                    term *= rat_pow(tau[static_cast<size_t>(i - 1)], mu[static_cast<size_t>(i - 1)]);
            inner += term;
        }
        acc += rat_pow(rho, n - m) * inner;
    }
    return acc;
}

Rat mp_moment_iso(int n, const Rat& rho) {
    if (n < 0) throw InputError("mp_moment_iso: need n >= 0");
    check_cap("mp_moment_iso", n, kLimitCap);
    if (n == 0) return Rat(1);
    Rat acc(0);
    for (int m = 1; m <= n; ++m) acc += rat_pow(rho, n - m) * Rat(narayana(n, m));
    return acc;
}

Rat mp_centered_iso(int n, const Rat& rho) {
    if (n < 0) throw InputError("mp_centered_iso: need n >= 0");
    check_cap("mp_centered_iso", n, kLimitCap);
    if (n == 0) return Rat(1);
    Rat acc(0);
    for (int m = 1; m <= n / 2; ++m) acc += rat_pow(rho, n - m) * Rat(riordan_nm(n, m));
    return acc;
}

Rat semicircle_sigma(int n, const std::vector<Rat>& tau) {
    const SigmaTrace st = sigma_trace(n);
    if (static_cast<int>(tau.size()) < n)
        throw InputError("semicircle_sigma: tau must reach order n");
    Rat acc(0);
    for (const auto& tw : st.table) {
        Rat term = Rat(tw.coeff);
        for (int i = 1; i <= static_cast<int>(tw.mu.size()); ++i)
            if (tw.mu[static_cast<size_t>(i - 1)] > 0)
                term *= rat_pow(tau[static_cast<size_t>(i - 1)], tw.mu[static_cast<size_t>(i - 1)]);
        acc += term;
    }
    return acc;
}

double mp_integral(int n, double rho, double abs_tol) {
    if (n < 0) throw InputError("mp_integral: need n >= 0");
    check_cap("mp_integral", n, kLimitCap);
    if (!(rho > 0)) throw InputError("mp_integral: need rho > 0");
    const double pi = std::acos(-1.0);
    const double center = 1.0 + rho;
    const double half = 2.0 * std::sqrt(rho);
    // x = center + half sin t turns the square-root edges into cos^2 t
    const auto f = [&](double t) {
        const double x = center + half * std::sin(t);
        const double ct = std::cos(t);
        return std::pow(x, n - 1) * half * half * ct * ct / (2.0 * pi * rho);
    };
    double out = integrate(f, -pi / 2.0, pi / 2.0, abs_tol);
    if (n == 0 && rho > 1.0) out += 1.0 - 1.0 / rho; // point mass at zero
    return out;
}

double sc_integral(int n, double abs_tol) {
    if (n < 0) throw InputError("sc_integral: need n >= 0");
    check_cap("sc_integral", n, kLimitCap);
    const double pi = std::acos(-1.0);
    const auto f = [&](double t) {
        const double ct = std::cos(t);
        return std::pow(2.0 * std::sin(t), n) * 2.0 / pi * ct * ct;
    };
    return integrate(f, -pi / 2.0, pi / 2.0, abs_tol);
}

AlphaRoute alpha_route_from_string(const std::string& name) {
    if (name == "partition-sum") return AlphaRoute::PARTITION_SUM;
    if (name == "convolution") return AlphaRoute::CONVOLUTION;
    throw InputError("unknown alpha route: " + name);
}

std::vector<std::vector<Rat>> alpha_table(int n_max, const std::vector<Rat>& u,
                                          AlphaRoute route) {
    if (n_max < 1) throw InputError("alpha_table: need n_max >= 1");
    check_cap("alpha_table", n_max, kAlphaCap);
    if (static_cast<int>(u.size()) < n_max)
        throw InputError("alpha_table: u must reach u(n_max - 1)");
    std::vector<std::vector<Rat>> table(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) table[static_cast<size_t>(n - 1)].assign(static_cast<size_t>(n), Rat(0));
    if (route == AlphaRoute::PARTITION_SUM) {
        // one product of block weights per non-crossing partition, filed
        // under the size of the block holding 1; u(0) fills up to n + 1 factors
        for (int n = 1; n <= n_max; ++n) {
            enumerate(n, std::nullopt, PartitionClass::NC, [&](const SetPartition& p) {
                Rat term = rat_pow(u[0], 1 + n - p.block_count());
                for (size_t b = 1; b < p.blocks.size(); ++b)
                    term *= u[p.blocks[b].size()];
                table[static_cast<size_t>(n - 1)][p.blocks.front().size() - 1] += term;
                return true;
            });
        }
        return table;
    }
    // convolution route: rebuild every row from the first column via partial
    // Bell polynomials, growing the first column one level at a time
    std::vector<Rat> col1(static_cast<size_t>(n_max) + 1, Rat(0));
    std::vector<Rat> x(static_cast<size_t>(n_max), Rat(0)); // x[k-1] = k! alpha_k(1)
    col1[1] = u[0];
    x[0] = u[0];
    for (int n = 1; n <= n_max; ++n) {
        auto& row = table[static_cast<size_t>(n - 1)];
        row[0] = col1[static_cast<size_t>(n)];
        for (int m = 2; m <= n; ++m)
            row[static_cast<size_t>(m - 1)] =
                bell_partial<Rat>(m, n, x) * Rat(factorial(m)) / Rat(factorial(n));
        if (n < n_max) {
            Rat next(0);
            for (int m = 1; m <= n; ++m) next += row[static_cast<size_t>(m - 1)] * u[static_cast<size_t>(m)];
            col1[static_cast<size_t>(n) + 1] = next;
            x[static_cast<size_t>(n)] = next * Rat(factorial(n + 1));
        }
    }
    return table;
}

std::vector<std::vector<int>> multiplicity_vectors(int weight, int count) {
    if (weight < 0 || count < 0) throw InputError("multiplicity_vectors: need nonnegative arguments");
    std::vector<std::vector<int>> out;
    if (weight == 0) {
        if (count == 0) out.push_back({});
        return out;
    }
    std::vector<int> mu(static_cast<size_t>(weight), 0);
    // fill from the largest part down; prune when the rest cannot reach
    std::function<void(int, int, int)> rec = [&](int part, int w, int k) {
        if (part == 0) {
            if (w == 0 && k == 0) out.push_back(mu);
            return;
        }
        if (w > part * k) return;
        for (int c = 0; c * part <= w && c <= k; ++c) {
            mu[static_cast<size_t>(part - 1)] = c;
            rec(part - 1, w - c * part, k - c);
        }
        mu[static_cast<size_t>(part - 1)] = 0;
    };
    rec(weight, weight, count);
    return out;
}

} // namespace wishart
