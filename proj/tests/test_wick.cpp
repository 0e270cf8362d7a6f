#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wishart/errors.hpp"
#include "wishart/partitions.hpp"
#include "wishart/tracepoly.hpp"
#include "wishart/wick.hpp"

using namespace wishart;

namespace {

TracePolynomial P(int w) { return TracePolynomial::p_power(w); }
TracePolynomial Tr(int i) { return TracePolynomial::trace_power(i); }

// fourth moment of the limiting fluctuation matrix
TracePolynomial h4() {
    return P(4) * Rat(5) + Tr(1) * P(3) * Rat(3) + (Tr(2) + Tr(1) * Tr(1)) * P(2) +
           (Tr(3) + Tr(1) * Tr(2)) * P(1);
}

// the non-crossing pair sums of Catalan type: orders one and two ...
TracePolynomial mplus21() { return P(2) + Tr(1) * P(1); }
TracePolynomial mplus42() {
    return P(4) * Rat(2) + Tr(1) * P(3) * Rat(3) + Tr(1) * Tr(1) * P(2) +
           (Tr(3) + Tr(1) * Tr(2)) * P(1);
}
// ... and three
TracePolynomial mplus63() {
    TracePolynomial t = Tr(1);
    return P(6) * Rat(5) + t * P(5) * Rat(10) + t * t * P(4) * Rat(6) +
           (Tr(3) * Rat(3) + Tr(2) * t * Rat(3) + t * t * t) * P(3) +
           (t * Tr(3) + Tr(2) * t * t) * P(2) * Rat(2) +
           (Tr(5) * Rat(2) + Tr(4) * t * Rat(3) + Tr(3) * Tr(2) + Tr(3) * t * t +
            Tr(2) * Tr(2) * t) *
               P(1);
}

// --- exact dense matrices over the rationals, just enough for the oracle ---

using RatMat = std::vector<std::vector<Rat>>;

RatMat rm_zero(int r) { return RatMat(r, std::vector<Rat>(r, Rat(0))); }

RatMat rm_id(int r) {
    RatMat m = rm_zero(r);
    for (int i = 0; i < r; ++i) m[i][i] = 1;
    return m;
}

RatMat rm_mul(const RatMat& a, const RatMat& b) {
    const int r = static_cast<int>(a.size());
    RatMat out = rm_zero(r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < r; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

RatMat rm_pow(const RatMat& a, int e) {
    RatMat out = rm_id(static_cast<int>(a.size()));
    for (int i = 0; i < e; ++i) out = rm_mul(out, a);
    return out;
}

Rat rm_trace(const RatMat& a) {
    Rat t = 0;
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

void rm_axpy(RatMat& dst, const Rat& s, const RatMat& a) {
    for (size_t i = 0; i < dst.size(); ++i)
        for (size_t j = 0; j < dst.size(); ++j) dst[i][j] += s * a[i][j];
}

Eigen::MatrixXd rm_to_eigen(const RatMat& a) {
    const int r = static_cast<int>(a.size());
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = to_double(a[i][j]);
    return m;
}

// exact evaluation of a symbolic moment at a rational P
RatMat tp_eval(const TracePolynomial& t, const RatMat& Pm) {
    const int r = static_cast<int>(Pm.size());
    RatMat out = rm_zero(r);
    for (const auto& mono : t.terms()) {
        Rat s = mono.coeff;
        for (const auto& [i, e] : mono.v) {
            const Rat tr = i == 0 ? Rat(r) : rm_trace(rm_pow(Pm, i));
            for (int j = 0; j < e; ++j) s *= tr;
        }
        rm_axpy(out, s, rm_pow(Pm, mono.w));
    }
    return out;
}

// every perfect matching of {0,...,2k-1} as a pair list
std::vector<std::vector<std::pair<int, int>>> brute_matchings(int two_k) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<char> used(two_k, 0);
    auto rec = [&](auto&& self) -> void {
        int s = -1;
        for (int i = 0; i < two_k; ++i)
            if (!used[i]) {
                s = i;
                break;
            }
        if (s < 0) {
            out.push_back(cur);
            return;
        }
        used[s] = 1;
        for (int t = s + 1; t < two_k; ++t) {
            if (used[t]) continue;
            used[t] = 1;
            cur.emplace_back(s, t);
            self(self);
            cur.pop_back();
            used[t] = 0;
        }
        used[s] = 0;
    };
    rec(rec);
    return out;
}

// Ground truth for E[A0 X_{l1} A1 ... X_{lk} Ak] by brute index sums: for each
// assignment of the 2k Gaussian slots, the slot moment is the sum over all
// matchings of products of covariances, zero across distinct labels. Exact,
// and entirely independent of the path/loop contraction logic.
RatMat oracle_word(const std::vector<int>& labels, const std::vector<RatMat>& A,
                   const RatMat& Pm) {
    const int k = static_cast<int>(labels.size());
    const int r = static_cast<int>(Pm.size());
    if (k == 0) return A[0];
    const auto ms = brute_matchings(2 * k);
    RatMat out = rm_zero(r);
    std::vector<int> idx(2 * k, 0);
    for (;;) {
        Rat g = 0;
        for (const auto& m : ms) {
            Rat term = 1;
            bool alive = true;
            for (const auto& [s, t] : m) {
                if (labels[s / 2] != labels[t / 2]) {
                    alive = false;
                    break;
                }
                term *= Pm[idx[s]][idx[t]];
            }
            if (alive) g += term;
        }
        if (g != 0) {
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    Rat w = A[0][a][idx[0]] * g;
                    for (int j = 1; j < k; ++j) w *= A[j][idx[2 * j - 1]][idx[2 * j]];
                    out[a][b] += w * A[k][idx[2 * k - 1]][b];
                }
        }
        int d = 0;
        while (d < 2 * k && ++idx[d] == r) idx[d++] = 0;
        if (d == 2 * k) break;
    }
    return out;
}

// centered ground truth: expand each factor into X or -P and sum
RatMat oracle_centered(const std::vector<int>& labels, const RatMat& Pm) {
    const int n = static_cast<int>(labels.size());
    const int r = static_cast<int>(Pm.size());
    RatMat out = rm_zero(r);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        std::vector<RatMat> A{rm_id(r)};
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sub.push_back(labels[i]);
                A.push_back(rm_id(r));
            } else {
                A.back() = rm_mul(A.back(), Pm);
            }
        }
        const int sign = (n - static_cast<int>(sub.size())) % 2 ? -1 : 1;
        rm_axpy(out, Rat(sign), oracle_word(sub, A, Pm));
    }
    return out;
}

GaussianWord word_of(const std::vector<int>& labels) {
    GaussianWord w;
    for (int l : labels) w.add_x(l);
    return w;
}

RatMat test_p3() { return {{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(3), Rat(1)}, {Rat(0), Rat(1), Rat(1)}}; }
RatMat test_p2() { return {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}}; }

Eigen::MatrixXd random_mat(std::mt19937& gen, int r) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = u(gen);
    return m;
}

Eigen::MatrixXd random_sym(std::mt19937& gen, int r) {
    Eigen::MatrixXd m = random_mat(gen, r);
    return 0.5 * (m + m.transpose());
}

bool close(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-10) {
    return (a - b).cwiseAbs().maxCoeff() <= tol * (1.0 + b.cwiseAbs().maxCoeff());
}

} // namespace

TEST_SUITE_BEGIN("wick");

TEST_CASE("pairing enumeration is label-local and canonically ordered") {
    // two equal labels: the three matchings, smallest slot first
    const auto ps = all_pairings(word_of({1, 1}));
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].match == std::vector<int>{1, 0, 3, 2});
    CHECK(ps[1].match == std::vector<int>{2, 3, 0, 1});
    CHECK(ps[2].match == std::vector<int>{3, 2, 1, 0});

    // the stream equals the label-respecting subset of all slot matchings
    for (const std::vector<int>& labels :
         {std::vector<int>{1, 2}, {1, 2, 1}, {2, 2, 2}, {1, 2, 2}}) {
        std::set<std::vector<int>> got;
        for (const auto& p : all_pairings(word_of(labels))) got.insert(p.match);
        std::set<std::vector<int>> want;
        for (const auto& m : brute_matchings(2 * static_cast<int>(labels.size()))) {
            bool ok = true;
            std::vector<int> match(2 * labels.size());
            for (const auto& [s, t] : m) {
                ok = ok && labels[s / 2] == labels[t / 2];
                match[s] = t;
                match[t] = s;
            }
            if (ok) want.insert(match);
        }
        CHECK(got == want);
    }
    // same-label slot counts are even, so a word always has a pairing
    CHECK(all_pairings(word_of({1, 2, 1})).size() == 3);
    CHECK(all_pairings(word_of({3, 3, 3})).size() == 15);
}

TEST_CASE("single contractions and their validation") {
    GaussianWord x = word_of({1});
    CHECK(contract(x, Pairing{{1, 0}}) == TraceMonomial{Rat(1), {}, 1});

    // P^2 X P X: a pure power word and a loop-producing pairing
    GaussianWord w;
    w.add_p(2);
    w.add_x(1);
    w.add_p(1);
    w.add_x(1);
    const TraceMonomial far = contract(w, Pairing{{3, 2, 1, 0}});
    CHECK(far == TraceMonomial{Rat(1), {{2, 1}}, 3}); // Tr(P^2) P^3
    CHECK_THROWS_AS(contract(x, Pairing{{0, 1}}), InputError);       // fixed point
    CHECK_THROWS_AS(contract(x, Pairing{{1, 0, 3, 2}}), InputError); // size
    CHECK_THROWS_AS(contract(word_of({1, 2}), Pairing{{2, 3, 0, 1}}),
                    InputError); // joins different labels
    GaussianWord none;
    CHECK(moment_word(none) == TracePolynomial::identity());
    none.add_p(3);
    CHECK(moment_word(none) == P(3));
}

TEST_CASE("uncentered word moments match the entrywise Isserlis oracle") {
    const RatMat Pm = test_p3();

    const auto check_word = [&](const std::vector<int>& labels) {
        std::vector<RatMat> A(labels.size() + 1, rm_id(3));
        CHECK(tp_eval(moment_word(word_of(labels)), Pm) == oracle_word(labels, A, Pm));
    };
    check_word({1});
    check_word({1, 1});
    check_word({1, 2, 1});
    check_word({1, 2, 2});

    // four factors of one sample: 105 matchings, checked at r = 2 to stay quick
    {
        const RatMat P2 = test_p2();
        std::vector<RatMat> A4(5, rm_id(2));
        CHECK(tp_eval(moment_word(word_of({1, 1, 1, 1})), P2) ==
              oracle_word({1, 1, 1, 1}, A4, P2));
    }

    // frozen small values
    CHECK(moment_word(word_of({1})) == P(1));
    CHECK(moment_word(word_of({1, 1})) == P(2) * Rat(2) + Tr(1) * P(1));
    CHECK(moment_word(word_of({1, 2})) == P(2));
    CHECK(moment_word(word_of({1, 2, 1})) == P(3) * Rat(2) + Tr(2) * P(1));

    // a word with interleaved fixed powers: P X P^2 X
    GaussianWord w;
    w.add_p(1);
    w.add_x(1);
    w.add_p(2);
    w.add_x(1);
    const std::vector<RatMat> A{rm_pow(Pm, 1), rm_pow(Pm, 2), rm_id(3)};
    CHECK(tp_eval(moment_word(w), Pm) == oracle_word({1, 1}, A, Pm));
}

TEST_CASE("centered partition moments match the oracle and the known displays") {
    CHECK(moment_partition(SetPartition::from_blocks(2, {{1, 2}}), true) ==
          P(2) + Tr(1) * P(1));
    CHECK(moment_partition(SetPartition::from_blocks(3, {{1, 2, 3}}), true) ==
          P(3) * Rat(4) + Tr(1) * P(2) * Rat(2) + (Tr(1) * Tr(1) + Tr(2)) * P(1));
    CHECK(moment_partition(SetPartition::from_blocks(2, {{1}, {2}}), false) == P(2));

    // the crossing pair of [4], both raw and centered
    const SetPartition cross = SetPartition::from_blocks(4, {{1, 3}, {2, 4}});
    CHECK(moment_partition(cross, true) == P(4) * Rat(3) + Tr(2) * P(2));
    CHECK(moment_partition(cross, false).eval_isotropic() ==
          RLaurent::monomial(Rat(3), 1) + RLaurent::monomial(Rat(6), 0));

    // exact agreement with the brute-force oracle, r = 3 up to three factors
    const RatMat P3 = test_p3();
    for (const std::vector<std::vector<int>>& blocks :
         {std::vector<std::vector<int>>{{1, 2}}, {{1, 2, 3}}, {{1, 3}, {2}}}) {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        const SetPartition p = SetPartition::from_blocks(n, blocks);
        CHECK(tp_eval(moment_partition(p, true), P3) == oracle_centered(p.alpha(), P3));
    }
    // and one four-factor case at r = 2
    const RatMat P2 = test_p2();
    CHECK(tp_eval(moment_partition(cross, true), P2) == oracle_centered(cross.alpha(), P2));
}

TEST_CASE("a singleton block kills the centered moment") {
    for (int n = 1; n <= 4; ++n) {
        enumerate(n, std::nullopt, PartitionClass::ALL, [&](const SetPartition& p) {
            if (has_singleton(p)) CHECK(moment_partition(p, true).is_zero());
            return true;
        });
    }
}

TEST_CASE("class sums: totals, crossing and non-crossing parts") {
    CHECK(moment_class(0, 0, PartitionClass::ALL, true) == TracePolynomial::identity());
    CHECK(moment_class(2, 1, PartitionClass::ALL, true) == P(2) + Tr(1) * P(1));
    CHECK(moment_class(4, 2, PartitionClass::ALL, true) == h4());

    CHECK(moment_class(4, 2, PartitionClass::NOSING_NC, true) == mplus42());
    CHECK(moment_class(4, 2, PartitionClass::NOSING_CROSS, true) ==
          P(4) * Rat(3) + Tr(2) * P(2));
    CHECK(moment_class(6, 3, PartitionClass::NOSING_NC, true, 6) == mplus63());

    // the crossing/non-crossing split is exact, and singletons are free to drop
    for (const auto& [n, m] : {std::pair<int, int>{4, 2}, {6, 3}}) {
        const auto all = moment_class(n, m, PartitionClass::ALL, true, 6);
        CHECK(all == moment_class(n, m, PartitionClass::NOSING_NC, true, 6) +
                         moment_class(n, m, PartitionClass::NOSING_CROSS, true, 6));
        CHECK(all == moment_class(n, m, PartitionClass::NOSING, true, 6));
    }

    // non-crossing pair sums evaluate to Catalan times (1+r)^n at P = I
    RLaurent iso1;
    iso1.c = {{0, Rat(1)}, {1, Rat(1)}};
    CHECK(mplus21().eval_isotropic() == iso1);
    CHECK(moment_class(6, 3, PartitionClass::NOSING_NC, true, 6).eval_isotropic() ==
          iso1 * iso1 * iso1 * Rat(5));
}

TEST_CASE("independent fluctuation engine agrees with the pair-partition sums") {
    CHECK(moment_H(0) == TracePolynomial::identity());
    CHECK(moment_H(1).is_zero());
    CHECK(moment_H(2) == P(2) + Tr(1) * P(1));
    CHECK(moment_H(3).is_zero());
    CHECK(moment_H(4) == h4());

    for (int n = 1; n <= 3; ++n)
        CHECK(moment_H(2 * n) == moment_class(2 * n, n, PartitionClass::ALL, true, 6));

    // degree and trace-count stay within the expected class at order eight
    const auto h8 = moment_H(8);
    CHECK(!h8.is_zero());
    CHECK(h8.class_check(8, 4, false));
    CHECK(!h8.class_check(7, 4, false));
}

TEST_CASE("size caps and their overrides") {
    const SetPartition six = SetPartition::from_blocks(6, {{1, 2}, {3, 4}, {5, 6}});
    CHECK_THROWS_AS(moment_partition(six, true), SizeCapError);
    const auto g = P(2) + Tr(1) * P(1);
    CHECK(moment_partition(six, true, 6) == g * g * g);

    const SetPartition seven = SetPartition::from_blocks(7, {{1, 2, 3, 4, 5, 6, 7}});
    CHECK_THROWS_AS(moment_partition(seven, false), SizeCapError);
    CHECK_THROWS_AS(moment_class(6, 3, PartitionClass::ALL, true), SizeCapError);
    CHECK_THROWS_AS(moment_H(10), SizeCapError);
    CHECK(moment_H(10, 10).class_check(10, 5, false));
    CHECK_THROWS_AS(moment_H(-2), InputError);
    CHECK(moment_H(9).is_zero()); // odd orders vanish without touching the cap
}

TEST_CASE("numeric evaluation is consistent with the symbolic engine") {
    std::mt19937 gen(20240817);
    const Eigen::MatrixXd Pn = random_sym(gen, 3) + 2.0 * Eigen::MatrixXd::Identity(3, 3);

    enumerate(4, std::nullopt, PartitionClass::ALL, [&](const SetPartition& p) {
        const std::vector<Eigen::MatrixXd> Q(p.n, Eigen::MatrixXd::Identity(3, 3));
        for (bool centered : {false, true}) {
            const Eigen::MatrixXd want = moment_partition(p, centered).eval_numeric(Pn);
            CHECK(close(moment_numeric(p, Q, centered, Pn), want));
        }
        return true;
    });

    // n and n+1 insert conventions agree
    const SetPartition cross = SetPartition::from_blocks(4, {{1, 3}, {2, 4}});
    std::vector<Eigen::MatrixXd> Q4;
    for (int i = 0; i < 4; ++i) Q4.push_back(random_mat(gen, 3));
    std::vector<Eigen::MatrixXd> Q5 = Q4;
    Q5.push_back(Eigen::MatrixXd::Identity(3, 3));
    CHECK(close(moment_numeric(cross, Q4, false, Pn), moment_numeric(cross, Q5, false, Pn)));

    // transpose tracking against the exact oracle, non-symmetric inserts
    const RatMat P2 = test_p2();
    const std::vector<int> labels{1, 2, 1};
    std::vector<RatMat> A;
    std::vector<Eigen::MatrixXd> Ad;
    int fill = 1;
    for (int j = 0; j < 4; ++j) {
        RatMat m = rm_zero(2);
        for (auto& row : m)
            for (auto& x : row) x = Rat((fill = (fill * 5) % 11) - 5);
        A.push_back(m);
        Ad.push_back(rm_to_eigen(m));
    }
    const SetPartition p131 = SetPartition::from_blocks(3, {{1, 3}, {2}});
    CHECK(close(moment_numeric(p131, Ad, false, rm_to_eigen(P2)),
                rm_to_eigen(oracle_word(labels, A, P2))));

    // four factors: loops now pass through transposed inserts as well
    A.push_back(A[1]);
    Ad.push_back(Ad[1]);
    const SetPartition p1212 = SetPartition::from_blocks(4, {{1, 3}, {2, 4}});
    CHECK(close(moment_numeric(p1212, Ad, false, rm_to_eigen(P2)),
                rm_to_eigen(oracle_word({1, 2, 1, 2}, A, P2))));

    // input validation
    CHECK_THROWS_AS(moment_numeric(cross, Q4, false, random_mat(gen, 3)), InputError);
    Q4.push_back(Eigen::MatrixXd::Identity(3, 3));
    Q4.push_back(Eigen::MatrixXd::Identity(3, 3));
    CHECK_THROWS_AS(moment_numeric(cross, Q4, false, Pn), InputError);
    const std::vector<Eigen::MatrixXd> bad(4, Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(moment_numeric(cross, bad, false, Pn), InputError);
}

TEST_CASE("crossing pair moment with inserts matches its direct expansion") {
    std::mt19937 gen(911);
    const int r = 3;
    const Eigen::MatrixXd Pn = random_sym(gen, r) + 2.0 * Eigen::MatrixXd::Identity(r, r);
    const SetPartition cross = SetPartition::from_blocks(4, {{1, 3}, {2, 4}});

    // E(Q0 Z1 Q1 Z2 Q2 Z1 Q3 Z2 Q4) for centered factors Z: only the four
    // matchings with no factor closing on itself survive, giving one looped
    // term and three chains. Verified here for inserts with no symmetry.
    std::vector<Eigen::MatrixXd> Q;
    for (int i = 0; i < 5; ++i) Q.push_back(random_mat(gen, r));
    const auto T = [](const Eigen::MatrixXd& m) { return m.transpose(); };
    const Eigen::MatrixXd want =
        (Pn * Q[3] * Pn * T(Q[1])).trace() * Q[0] * Pn * T(Q[2]) * Pn * Q[4] +
        Q[0] * Pn * T(Q[2]) * Pn * T(Q[3]) * Pn * Q[1] * Pn * Q[4] +
        Q[0] * Pn * Q[3] * Pn * T(Q[1]) * Pn * T(Q[2]) * Pn * Q[4] +
        Q[0] * Pn * Q[3] * Pn * Q[2] * Pn * Q[1] * Pn * Q[4];
    CHECK(close(moment_numeric(cross, Q, true, Pn), want));

    // with one homogeneous symmetric insert the expansion collapses to the
    // three-term chain-and-loop form
    const Eigen::MatrixXd S = random_sym(gen, r);
    const std::vector<Eigen::MatrixXd> QS(5, S);
    const Eigen::MatrixXd chain = S * Pn * S * Pn * S * Pn * S * Pn * S;
    const Eigen::MatrixXd homog =
        3.0 * chain + (S * Pn * S * Pn).trace() * S * Pn * S * Pn * S;
    CHECK(close(moment_numeric(cross, QS, true, Pn), homog));

    // all-identity inserts reduce to the symbolic crossing-pair value
    const std::vector<Eigen::MatrixXd> QI(5, Eigen::MatrixXd::Identity(r, r));
    const Eigen::MatrixXd sym =
        (P(4) * Rat(3) + Tr(2) * P(2)).eval_numeric(Pn);
    CHECK(close(moment_numeric(cross, QI, true, Pn), sym));
}

TEST_CASE("single-sample reduction formula with symmetric inserts") {
    std::mt19937 gen(4242);
    const int r = 4;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);

    const auto fact = [](int k) {
        double f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };

    for (int n = 2; n <= 4; ++n) {
        // Q[1] = I by convention; the word is X Q2 X Q3 ... Qn X
        std::vector<Eigen::MatrixXd> Q(static_cast<size_t>(n) + 1, I);
        for (int i = 2; i <= n; ++i) Q[static_cast<size_t>(i)] = random_sym(gen, r);

        std::vector<Eigen::MatrixXd> inserts{I};
        for (int i = 2; i <= n; ++i) inserts.push_back(Q[static_cast<size_t>(i)]);
        inserts.push_back(I);
        std::vector<int> full(n);
        for (int i = 0; i < n; ++i) full[i] = i + 1;
        const SetPartition one = SetPartition::from_blocks(n, {full});
        const Eigen::MatrixXd lhs = moment_numeric(one, inserts, false, I);

        // partition sum: each block of size k carries 2^(k-1) and a sum over
        // the (k-1)! cyclic orders anchored at its least element; the block
        // holding index 1 gives a symmetrized matrix, the others give traces
        const auto ordered_prod = [&](int first, const std::vector<int>& rest) {
            Eigen::MatrixXd prod = Q[static_cast<size_t>(first)];
            for (int e : rest) prod = prod * Q[static_cast<size_t>(e)];
            return prod;
        };
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(r, r);
        for (int m = 1; m <= n; ++m) {
            enumerate(n, m, PartitionClass::ALL, [&](const SetPartition& tau) {
                double coeff = 1;
                double scal = 1;
                Eigen::MatrixXd head = I;
                for (size_t b = 0; b < tau.blocks.size(); ++b) {
                    const auto& blk = tau.blocks[b];
                    const int k = static_cast<int>(blk.size());
                    coeff *= std::pow(2.0, k - 1);
                    std::vector<int> rest(blk.begin() + 1, blk.end());
                    if (b == 0) {
                        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r, r);
                        do {
                            const Eigen::MatrixXd prod = ordered_prod(blk[0], rest);
                            acc += 0.5 * (prod + prod.transpose());
                        } while (std::next_permutation(rest.begin(), rest.end()));
                        head = acc;
                    } else {
                        double acc = 0;
                        do {
                            acc += ordered_prod(blk[0], rest).trace();
                        } while (std::next_permutation(rest.begin(), rest.end()));
                        scal *= acc;
                    }
                }
                rhs += coeff * scal * head;
                return true;
            });
        }
        CHECK(close(lhs, rhs, 1e-9));

        // with no block larger than three, all cyclic orders of a block agree
        // for symmetric inserts and the sum collapses to (k-1)! times the
        // ascending product; spot-check that compact shape where it applies
        if (n <= 3) {
            Eigen::MatrixXd compact = Eigen::MatrixXd::Zero(r, r);
            for (int m = 1; m <= n; ++m) {
                enumerate(n, m, PartitionClass::ALL, [&](const SetPartition& tau) {
                    double coeff = 1;
                    double scal = 1;
                    Eigen::MatrixXd head = I;
                    for (size_t b = 0; b < tau.blocks.size(); ++b) {
                        const auto& blk = tau.blocks[b];
                        const int k = static_cast<int>(blk.size());
                        coeff *= std::pow(2.0, k - 1) * fact(k - 1);
                        Eigen::MatrixXd prod = I;
                        for (int e : blk) prod = prod * Q[static_cast<size_t>(e)];
                        if (b == 0)
                            head = 0.5 * (prod + prod.transpose());
                        else
                            scal *= prod.trace();
                    }
                    compact += coeff * scal * head;
                    return true;
                });
            }
            CHECK(close(lhs, compact, 1e-9));
        }
    }
}

TEST_SUITE_END();
