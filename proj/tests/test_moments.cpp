#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "wishart/errors.hpp"
#include "wishart/moments.hpp"
#include "wishart/partitions.hpp"
#include "wishart/specnum.hpp"
#include "wishart/tracepoly.hpp"
#include "wishart/wick.hpp"

using namespace wishart;

namespace {

TracePolynomial P(int w) { return TracePolynomial::p_power(w); }
TracePolynomial Tr(int i) { return TracePolynomial::trace_power(i); }

Rat rpow(const Rat& x, int e) {
    Rat out(1);
    for (int i = 0; i < std::abs(e); ++i) out *= x;
    return e < 0 ? Rat(1) / out : out;
}

// non-crossing pair sums, orders one to three
TracePolynomial mplus21() { return P(2) + Tr(1) * P(1); }
TracePolynomial mplus42() {
    return P(4) * Rat(2) + Tr(1) * P(3) * Rat(3) + Tr(1) * Tr(1) * P(2) +
           (Tr(3) + Tr(1) * Tr(2)) * P(1);
}
TracePolynomial mplus63() {
    TracePolynomial t = Tr(1);
    return P(6) * Rat(5) + t * P(5) * Rat(10) + t * t * P(4) * Rat(6) +
           (Tr(3) * Rat(3) + Tr(2) * t * Rat(3) + t * t * t) * P(3) +
           (t * Tr(3) + Tr(2) * t * t) * P(2) * Rat(2) +
           (Tr(5) * Rat(2) + Tr(4) * t * Rat(3) + Tr(3) * Tr(2) + Tr(3) * t * t +
            Tr(2) * Tr(2) * t) *
               P(1);
}

// the Gaussian-limit iterates, orders one to five
TracePolynomial sig1() { return Tr(1) * P(1); }
TracePolynomial sig2() { return Tr(1) * Tr(1) * P(2) + Tr(2) * Tr(1) * P(1); }
TracePolynomial sig3() {
    TracePolynomial t = Tr(1);
    return t * t * t * P(3) + Tr(2) * t * t * P(2) * Rat(2) +
           (Tr(2) * Tr(2) * t + Tr(3) * t * t) * P(1);
}
TracePolynomial sig4() {
    TracePolynomial t = Tr(1);
    return t * t * t * t * P(4) + Tr(2) * t * t * t * P(3) * Rat(3) +
           (Tr(3) * t * t * t * Rat(2) + Tr(2) * Tr(2) * t * t * Rat(3)) * P(2) +
           (Tr(4) * t * t * t + Tr(3) * Tr(2) * t * t * Rat(3) + Tr(2) * Tr(2) * Tr(2) * t) *
               P(1);
}
TracePolynomial sig5() {
    TracePolynomial t = Tr(1);
    TracePolynomial t4 = t * t * t * t;
    return t4 * t * P(5) + Tr(2) * t4 * P(4) * Rat(4) +
           (t * t * t * Tr(2) * Tr(2) * Rat(6) + Tr(3) * t4 * Rat(3)) * P(3) +
           (Tr(4) * t4 * Rat(2) + Tr(3) * Tr(2) * t * t * t * Rat(8) +
            Tr(2) * Tr(2) * Tr(2) * t * t * Rat(4)) *
               P(2) +
           (Tr(5) * t4 + Tr(4) * Tr(2) * t * t * t * Rat(4) + Tr(3) * Tr(3) * t * t * t * Rat(2) +
            Tr(3) * Tr(2) * Tr(2) * t * t * Rat(6) + Tr(2) * Tr(2) * Tr(2) * Tr(2) * t) *
               P(1);
}

// scalar trace expansions of the same iterates
TracePolynomial str1() { return Tr(1) * Tr(1); }
TracePolynomial str2() { return Tr(1) * Tr(1) * Tr(2) * Rat(2); }
TracePolynomial str3() {
    TracePolynomial t = Tr(1);
    return t * t * t * Tr(3) * Rat(2) + t * t * Tr(2) * Tr(2) * Rat(3);
}
TracePolynomial str4() {
    TracePolynomial t = Tr(1);
    return t * t * t * t * Tr(4) * Rat(2) + t * t * t * Tr(2) * Tr(3) * Rat(8) +
           t * t * Tr(2) * Tr(2) * Tr(2) * Rat(4);
}
TracePolynomial str5() {
    TracePolynomial t = Tr(1);
    TracePolynomial t4 = t * t * t * t;
    return t4 * t * Tr(5) * Rat(2) + t4 * Tr(2) * Tr(4) * Rat(10) + t4 * Tr(3) * Tr(3) * Rat(5) +
           t * t * t * Tr(2) * Tr(2) * Tr(3) * Rat(20) +
           t * t * Tr(2) * Tr(2) * Tr(2) * Tr(2) * Rat(5);
}

// third centered power of one sample
TracePolynomial m31() {
    return P(3) * Rat(4) + Tr(1) * P(2) * Rat(2) + (Tr(1) * Tr(1) + Tr(2)) * P(1);
}

// fourth moment of the limiting fluctuation matrix
TracePolynomial h4() {
    return P(4) * Rat(5) + Tr(1) * P(3) * Rat(3) + (Tr(2) + Tr(1) * Tr(1)) * P(2) +
           (Tr(3) + Tr(1) * Tr(2)) * P(1);
}

// first finite-sample correction of the fourth fluctuation moment
TracePolynomial correction4() {
    TracePolynomial t = Tr(1);
    return P(4) * Rat(20) + t * P(3) * Rat(12) + (t * t * Rat(3) + Tr(2) * Rat(5)) * P(2) +
           (t * t * t + t * Tr(2) * Rat(3) + Tr(3) * Rat(4)) * P(1);
}

RLaurent rl(std::vector<std::pair<int, Rat>> terms) {
    RLaurent out;
    for (auto& [p, c] : terms) out = out + RLaurent::monomial(c, p);
    return out;
}

SetPartition one_block(int n) {
    std::vector<int> b(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) b[static_cast<size_t>(i - 1)] = i;
    return SetPartition::from_blocks(n, {b});
}

// every term homogeneous of the given degree, with a genuine matrix part
bool homogeneous(const TracePolynomial& poly, int degree) {
    for (const auto& t : poly.terms())
        if (t.degree() != degree || t.w < 1) return false;
    return true;
}

} // namespace

TEST_SUITE("moments") {

TEST_CASE("pair sum recursion matches its goldens and the pairing engine") {
    CHECK(m_plus(0) == TracePolynomial::identity());
    CHECK(m_plus(1) == mplus21());
    CHECK(m_plus(2) == mplus42());
    CHECK(m_plus(3) == mplus63());

    // same object from the engine: non-crossing no-singleton partitions of
    // [2n] with n blocks are exactly the non-crossing pairings
    for (int n = 1; n <= 3; ++n)
        CHECK(m_plus(n) == moment_class(2 * n, n, PartitionClass::NOSING_NC, true, 2 * n));

    // quadratic step written with the carre du champ operator instead
    std::vector<TracePolynomial> mp;
    for (int k = 0; k <= 5; ++k) mp.push_back(m_plus(k));
    for (int n = 0; n <= 4; ++n) {
        TracePolynomial acc;
        for (int k = 0; k <= n; ++k)
            acc = acc + mp[static_cast<size_t>(k)] *
                            mp[static_cast<size_t>(n - k)].gamma(GammaOp::GAMMA);
        CHECK(acc == mp[static_cast<size_t>(n) + 1]);
    }

    // crossing pairings fill the gap to the full pair-partition sum
    for (int n = 1; n <= 3; ++n) {
        const TracePolynomial crossing =
            moment_class(2 * n, n, PartitionClass::NOSING_CROSS, true, 2 * n);
        CHECK(m_plus(n) + crossing == moment_H(2 * n));
    }

    CHECK_THROWS_AS(m_plus(9), SizeCapError);
    CHECK_THROWS_AS(m_plus(-1), InputError);
}

TEST_CASE("sigma iterates: goldens, route agreement, trace structure") {
    CHECK(sigma(1, Route::RECURSION) == sig1());
    CHECK(sigma(2, Route::RECURSION) == sig2());
    CHECK(sigma(3, Route::RECURSION) == sig3());
    CHECK(sigma(4, Route::RECURSION) == sig4());
    CHECK(sigma(5, Route::RECURSION) == sig5());

    for (int n = 0; n <= 8; ++n)
        CHECK(sigma(n, Route::RECURSION) == sigma(n, Route::CLOSED_FORM));

    // every term: total degree 2n, matrix part present, exactly n traces
    for (int n = 1; n <= 6; ++n) {
        const TracePolynomial s = sigma(n, Route::RECURSION);
        CHECK(homogeneous(s, 2 * n));
        CHECK(s.class_check(2 * n, n, true));
    }

    CHECK_THROWS_AS(sigma(9, Route::RECURSION), SizeCapError);
    CHECK(route_from_string("recursion") == Route::RECURSION);
    CHECK(route_from_string("closed-form") == Route::CLOSED_FORM);
    CHECK_THROWS_AS(route_from_string("sideways"), InputError);
}

TEST_CASE("sigma trace expansion and its weight table") {
    CHECK(sigma_trace(1).poly == str1());
    CHECK(sigma_trace(2).poly == str2());
    CHECK(sigma_trace(3).poly == str3());
    CHECK(sigma_trace(4).poly == str4());
    CHECK(sigma_trace(5).poly == str5());

    for (int n = 1; n <= 8; ++n)
        CHECK(sigma_trace(n).poly == sigma(n, Route::RECURSION).trace());

    // weights are positive integers summing to the Catalan numbers
    std::vector<Rat> ones(10, Rat(1));
    for (int n = 1; n <= 10; ++n) {
        for (const auto& tw : sigma_trace(n).table) CHECK(tw.coeff > 0);
        CHECK(semicircle_sigma(n, ones) == Rat(catalan(n)));
    }

    std::vector<Rat> tau = {Rat(1), Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(1, 5)};
    CHECK(semicircle_sigma(3, tau) == Rat(17, 12));

    CHECK(multiplicity_vectors(6, 4).size() == 2);
    CHECK(multiplicity_vectors(4, 2).size() == 2);
    CHECK(multiplicity_vectors(0, 0).size() == 1);
    size_t all = 0;
    for (int k = 1; k <= 6; ++k) all += multiplicity_vectors(6, k).size();
    CHECK(all == 11); // partitions of six

    CHECK_THROWS_AS(sigma_trace(11), SizeCapError);
    CHECK_THROWS_AS(sigma_trace(0), InputError);
}

TEST_CASE("block-refined sigma: routes, conventions, isotropic traces") {
    CHECK(sigma_circ(3, 2, Route::RECURSION) == Tr(1) * P(2) * Rat(2) + Tr(2) * P(1));
    CHECK(sigma_circ(0, 0, Route::RECURSION) == TracePolynomial::identity());
    CHECK(sigma_circ(0, 0, Route::CLOSED_FORM) == TracePolynomial::identity());
    CHECK(sigma_circ(3, 0, Route::RECURSION).is_zero());
    CHECK(sigma_circ(3, 0, Route::CLOSED_FORM).is_zero());

    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= n; ++m)
            CHECK(sigma_circ(n, m, Route::RECURSION) == sigma_circ(n, m, Route::CLOSED_FORM));

    // traces at the identity count non-crossing partitions by blocks
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= n; ++m) {
            const RLaurent t = sigma_circ(n, m, Route::RECURSION).trace().eval_isotropic();
            CHECK(t == RLaurent::monomial(Rat(narayana(n, m)), n + 1 - m));
        }
        const RLaurent full = sigma(n, Route::RECURSION).trace().eval_isotropic();
        CHECK(full == RLaurent::monomial(Rat(catalan(n)), n + 1));
    }

    CHECK_THROWS_AS(sigma_circ(3, 4, Route::RECURSION), InputError);
    CHECK_THROWS_AS(sigma_circ(9, 1, Route::RECURSION), SizeCapError);
}

TEST_CASE("sample-count expansions: partial moments, pn, hn") {
    for (int n = 1; n <= 4; ++n) CHECK(partial_moment(n, n, false) == P(n));
    CHECK(partial_moment(2, 1, false) == P(2) + Tr(1) * P(1));

    const Rat big(50);
    CHECK(pn_moment(2, big, false) == P(2) + (P(2) + Tr(1) * P(1)) * Rat(1, 50));
    CHECK(pn_moment(2, Rat(7, 2), false) == P(2) + (P(2) + Tr(1) * P(1)) * Rat(2, 7));
    CHECK(pn_moment(2, big, true) == (P(2) + Tr(1) * P(1)) * Rat(1, 50));
    CHECK(pn_moment(2, Rat(4), false, WeightConvention::BINOMIAL) ==
          P(2) * Rat(7, 8) + Tr(1) * P(1) * Rat(1, 4));

    // the two presentations of the same expansion agree term by term
    for (int n = 1; n <= 3; ++n) {
        for (bool centered : {false, true}) {
            const Rat N(7, 2);
            TracePolynomial acc;
            for (int m = 0; m <= n; ++m)
                acc = acc + partial_moment(n, m, centered) * rpow(N, m - n);
            CHECK(acc == pn_moment(n, N, centered));
        }
    }

    const HnMoment h2 = hn_moment(2);
    CHECK(h2.by_class.at(1) == P(2) + Tr(1) * P(1));
    CHECK(h2.eval(Rat(10)) == P(2) + Tr(1) * P(1)); // no sample-count dependence
    CHECK(hn_moment(3).scaled_eval(Rat(5)) == m31() * Rat(5));

    const HnMoment h4n = hn_moment(4);
    CHECK(h4n.by_power.at(1) == correction4());
    CHECK(h4n.by_power.at(2) == moment_H(4));
    CHECK(h4n.by_power.at(2) == h4());
    CHECK(h4n.eval(Rat(50)) == h4() + correction4() * Rat(1, 50));

    CHECK(hn_moment(1).scaled_eval(Rat(9)).is_zero());
    CHECK(hn_moment(0).eval(Rat(3)) == TracePolynomial::identity());
    CHECK_THROWS_AS(hn_moment(3).eval(Rat(4)), InputError);
    CHECK_THROWS_AS(pn_moment(2, Rat(0), false), InputError);
}

TEST_CASE("difference inversion recovers the block-count class sums") {
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m <= n / 2; ++m)
            CHECK(inversion(n, m) == moment_class(n, m, PartitionClass::NOSING, true));

    // class sums above half the ground set vanish, and the inversion agrees
    CHECK(inversion(2, 2).is_zero());
    CHECK(inversion(3, 2).is_zero());
    CHECK(inversion(4, 3).is_zero());

    CHECK_THROWS_AS(inversion(3, 0), InputError);
    CHECK_THROWS_AS(inversion(3, 4), InputError);
}

TEST_CASE("isotropic closed forms against the pairing engine") {
    CHECK(iso_centered_power(2) == rl({{1, 1}, {0, 1}}));
    CHECK(iso_centered_power(3) == rl({{2, 1}, {1, 3}, {0, 4}}));
    CHECK(iso_centered_power(4) == rl({{3, 1}, {2, 8}, {1, 26}, {0, 25}}));
    for (int n = 0; n <= 12; ++n)
        CHECK(iso_centered_power(n, IsoRoute::BELL) == iso_centered_power(n, IsoRoute::BINOMIAL));
    for (int n = 2; n <= 5; ++n)
        CHECK(iso_centered_power(n) == moment_partition(one_block(n), true).eval_isotropic());

    // uncentered block products, non-crossing representatives
    CHECK(iso_moment_uncentered(PartitionType{{1}}) == rl({{0, 1}}));
    CHECK(iso_moment_uncentered(PartitionType{{0, 1}}) == rl({{1, 1}, {0, 2}}));
    CHECK(iso_moment_uncentered(PartitionType{{0, 0, 1}}) == rl({{2, 1}, {1, 6}, {0, 8}}));
    CHECK(iso_moment_uncentered(PartitionType{{1, 1}}) == rl({{1, 1}, {0, 2}}));
    const SetPartition nc_a = SetPartition::from_blocks(3, {{1}, {2, 3}});
    const SetPartition nc_b = SetPartition::from_blocks(3, {{2}, {1, 3}});
    CHECK(moment_partition(nc_a, false).eval_isotropic() ==
          iso_moment_uncentered(PartitionType{{1, 1}}));
    CHECK(moment_partition(nc_b, false).eval_isotropic() ==
          iso_moment_uncentered(PartitionType{{1, 1}}));
    CHECK(moment_partition(one_block(3), false).eval_isotropic() ==
          iso_moment_uncentered(PartitionType{{0, 0, 1}}));

    // centered products; a singleton kills the whole thing
    CHECK(iso_moment_centered(PartitionType{{1, 1}}).is_zero());
    const SetPartition nested = SetPartition::from_blocks(4, {{1, 4}, {2, 3}});
    const SetPartition split = SetPartition::from_blocks(4, {{1, 2}, {3, 4}});
    CHECK(iso_moment_centered(PartitionType{{0, 2}}) == rl({{2, 1}, {1, 2}, {0, 1}}));
    CHECK(moment_partition(nested, true).eval_isotropic() ==
          iso_moment_centered(PartitionType{{0, 2}}));
    CHECK(moment_partition(split, true).eval_isotropic() ==
          iso_moment_centered(PartitionType{{0, 2}}));

    // crossing partitions do not reduce to their type: one power of r lower
    const SetPartition crossing = SetPartition::from_blocks(4, {{1, 3}, {2, 4}});
    const RLaurent cc = moment_partition(crossing, true).eval_isotropic();
    CHECK(cc == rl({{1, 1}, {0, 3}}));
    CHECK(cc != iso_moment_centered(PartitionType{{0, 2}}));
    const RLaurent cu = moment_partition(crossing, false).eval_isotropic();
    CHECK(cu.c.rbegin()->first == 1);
    CHECK(cu != iso_moment_uncentered(PartitionType{{0, 2}}));

    // Catalan times (1+r)^n, against the symbolic route
    CHECK(iso_m_plus(2) == rl({{2, 2}, {1, 4}, {0, 2}}));
    for (int n = 0; n <= 6; ++n) CHECK(iso_m_plus(n) == m_plus(n).eval_isotropic());

    // rank-one powers
    CHECK(rank1_power(1) == P(1));
    CHECK(rank1_power(2) == P(2) * Rat(2) + Tr(1) * P(1));
    CHECK(rank1_power(3) ==
          P(3) * Rat(8) + Tr(1) * P(2) * Rat(4) + (Tr(1) * Tr(1) + Tr(2) * Rat(2)) * P(1));
    for (int n = 1; n <= 5; ++n)
        CHECK(rank1_power(n) == moment_partition(one_block(n), false));
    CHECK(rank1_power(3).trace() ==
          Tr(1) * Tr(1) * Tr(1) + Tr(1) * Tr(2) * Rat(6) + Tr(3) * Rat(8));
    // scalar case: all even standard Gaussian moments at once
    for (int n = 1; n <= 8; ++n)
        CHECK(rank1_power(n).trace().eval_isotropic().eval(Rat(1)) == Rat(gauss_even(n)));
    for (int n = 1; n <= 8; ++n) {
        std::vector<int> single(static_cast<size_t>(n), 0);
        single.back() = 1;
        CHECK(rank1_power(n).eval_isotropic() == iso_moment_uncentered(PartitionType{single}));
    }

    // normalized fluctuation traces at the identity
    CHECK(moment_H(2).trace().eval_isotropic() == rl({{2, 1}, {1, 1}}));
    CHECK(moment_H(4).trace().eval_isotropic() == rl({{3, 2}, {2, 5}, {1, 5}}));

    CHECK_THROWS_AS(iso_centered_power(13), SizeCapError);
    CHECK_THROWS_AS(rank1_power(11), SizeCapError);
}

TEST_CASE("limiting spectral moments: exact sums and quadrature") {
    // Narayana sum versus the direct binomial expansion
    for (const Rat& rho : {Rat(3, 7), Rat(1), Rat(2)}) {
        for (int n = 1; n <= 12; ++n) {
            Rat direct(0);
            for (int m = 0; m < n; ++m)
                direct += rpow(rho, m) * Rat(binomial(n, m)) * Rat(binomial(n - 1, m)) / Rat(m + 1);
            CHECK(mp_moment_iso(n, rho) == direct);
        }
    }

    std::vector<Rat> ones(12, Rat(1));
    for (int n = 0; n <= 10; ++n)
        CHECK(mp_moment(n, Rat(5, 3), ones) == mp_moment_iso(n, Rat(5, 3)));

    // second moment with general trace data: variance picks up one rho
    CHECK(mp_moment(2, Rat(1, 3), {Rat(2), Rat(5)}) == Rat(5) + Rat(1, 3) * Rat(4));

    CHECK(mp_centered_iso(2, Rat(1, 2)) == Rat(1, 2));
    CHECK(mp_centered_iso(3, Rat(1, 2)) == Rat(1, 4));
    CHECK(mp_centered_iso(4, Rat(1, 2)) == Rat(1, 8) + Rat(2) * Rat(1, 4));
    CHECK(mp_centered_iso(5, Rat(2)) == Rat(16) + Rat(5) * Rat(8));

    for (double rho : {0.5, 1.0, 2.0}) {
        const Rat rr = rho == 0.5 ? Rat(1, 2) : Rat(static_cast<int>(rho));
        for (int n = 0; n <= 6; ++n)
            CHECK(std::abs(mp_integral(n, rho) - to_double(mp_moment_iso(n, rr))) <= 1e-8);
    }
    for (int n = 0; n <= 12; ++n) {
        const double want = n % 2 == 0 ? to_double(Rat(catalan(n / 2))) : 0.0;
        CHECK(std::abs(sc_integral(n) - want) <= 1e-8);
    }

    CHECK_THROWS_AS(mp_moment(3, Rat(1), {Rat(1), Rat(1)}), InputError);
    CHECK_THROWS_AS(mp_integral(13, 1.0), SizeCapError);
    CHECK_THROWS_AS(mp_integral(3, 0.0), InputError);
    CHECK_THROWS_AS(sc_integral(-1), InputError);
}

TEST_CASE("first-block coefficient tables by three routes") {
    // constant weights give the ballot triangle
    std::vector<Rat> ones(9, Rat(1));
    const auto ballot_a = alpha_table(9, ones, AlphaRoute::PARTITION_SUM);
    const auto ballot_b = alpha_table(9, ones, AlphaRoute::CONVOLUTION);
    for (int n = 1; n <= 9; ++n)
        for (int m = 1; m <= n; ++m) {
            CHECK(ballot_a[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)] ==
                  Rat(catalan_triangle(n, m)));
            CHECK(ballot_b[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)] ==
                  Rat(catalan_triangle(n, m)));
        }

    // generic rational weights: the two routes agree entrywise
    std::vector<Rat> u = {Rat(2),    Rat(1, 2), Rat(3), Rat(-1),
                          Rat(5, 3), Rat(7),    Rat(1, 4), Rat(9)};
    const auto ta = alpha_table(8, u, AlphaRoute::PARTITION_SUM);
    const auto tb = alpha_table(8, u, AlphaRoute::CONVOLUTION);
    CHECK(ta == tb);
    CHECK(ta[0][0] == u[0]);
    for (int n = 1; n <= 8; ++n)
        CHECK(ta[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] == rpow(u[0], n));

    // third route: read the coefficients off the sigma iterates by
    // substituting weight values for the shifted trace orders
    std::vector<Rat> sub = {Rat(2), Rat(1, 2), Rat(3), Rat(-1), Rat(5, 3), Rat(7)};
    const auto tc = alpha_table(6, sub, AlphaRoute::PARTITION_SUM);
    for (int n = 1; n <= 6; ++n) {
        std::map<int, Rat> by_power;
        const TracePolynomial sig = sigma(n, Route::RECURSION);
        for (const auto& term : sig.terms()) {
            Rat val = term.coeff;
            for (const auto& [i, e] : term.v) val *= rpow(sub[static_cast<size_t>(i - 1)], e);
            by_power[term.w] += val;
        }
        for (int m = 1; m <= n; ++m) {
            const Rat want = by_power.count(m) ? by_power[m] : Rat(0);
            CHECK(tc[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)] == want);
        }
    }

    CHECK_THROWS_AS(alpha_table(10, std::vector<Rat>(10, Rat(1)), AlphaRoute::PARTITION_SUM),
                    SizeCapError);
    CHECK_THROWS_AS(alpha_table(4, {Rat(1)}, AlphaRoute::CONVOLUTION), InputError);
    CHECK(alpha_route_from_string("partition-sum") == AlphaRoute::PARTITION_SUM);
    CHECK(alpha_route_from_string("convolution") == AlphaRoute::CONVOLUTION);
    CHECK_THROWS_AS(alpha_route_from_string("bogus"), InputError);
}

TEST_CASE("trace-count structure of the half-order moment split") {
    // the non-crossing half is spanned by terms with at most n traces, and
    // subtracting the limit iterate drops that to n - 1
    for (int n = 1; n <= 4; ++n) {
        const TracePolynomial plus = m_plus(n);
        CHECK(homogeneous(plus, 2 * n));
        CHECK(plus.class_check(2 * n, n, false));
        CHECK((plus - sigma(n, Route::RECURSION)).class_check(2 * n, n - 1, false));
    }

    // the crossing half needs n - 1 traces as well; n - 2 is not enough
    for (int n = 2; n <= 3; ++n) {
        const TracePolynomial minus =
            moment_class(2 * n, n, PartitionClass::NOSING_CROSS, true, 2 * n);
        CHECK(homogeneous(minus, 2 * n));
        CHECK(minus.class_check(2 * n, n - 1, false));
        CHECK(!minus.class_check(2 * n, n - 2, false));
    }
}

TEST_CASE("kind names round-trip") {
    for (Route r : {Route::RECURSION, Route::CLOSED_FORM})
        CHECK(route_from_string(to_string(r)) == r);
    for (IsotropicKind k :
         {IsotropicKind::M_PI_CIRC, IsotropicKind::M_PI_CENTERED, IsotropicKind::X_MINUS_I_POWER,
          IsotropicKind::M_PLUS_I, IsotropicKind::RANK1_POWER})
        CHECK(isotropic_kind_from_string(to_string(k)) == k);
    for (LimitKind k : {LimitKind::MP_MOMENT, LimitKind::MP_MOMENT_ISO, LimitKind::MP_CENTERED_ISO,
                        LimitKind::SEMICIRCLE_SIGMA, LimitKind::MP_INTEGRAL, LimitKind::SC_INTEGRAL})
        CHECK(limit_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(isotropic_kind_from_string("nope"), InputError);
    CHECK_THROWS_AS(limit_kind_from_string("nope"), InputError);
}

} // TEST_SUITE
