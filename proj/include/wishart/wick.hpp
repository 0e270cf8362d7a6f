#pragma once

// Gaussian moment engine. A word mixes rank-one factors X_l = x_l x_l'
// (x_l ~ N(0, P), equal labels share the sample) with fixed powers of P.
// Expectations are sums over pairings of the Gaussian slots; each contraction
// collapses to closed loops (trace factors) plus one open matrix path. This
// is the exact oracle the moment recursions are checked against.

#include <vector>

#include <Eigen/Dense>

#include "wishart/partitions.hpp"
#include "wishart/tracepoly.hpp"

namespace wishart {

// P^{e0} X_{l1} P^{e1} X_{l2} ... X_{lk} P^{ek}, built left to right.
// Factor j (0-based) owns slots 2j (ket) and 2j+1 (bra).
struct GaussianWord {
    std::vector<int> labels;    // one positive label per rank-one factor
    std::vector<int> fixed_pow; // k+1 powers of P between and around

    GaussianWord() : fixed_pow{0} {}

    void add_p(int power); // append P^power (merges with the tail)
    void add_x(int label); // append one rank-one factor

    int occs() const { return static_cast<int>(labels.size()); }
    int slots() const { return 2 * occs(); }
};

// Perfect matching on the word's slots: match[s] is the partner of s.
// Valid only when it is a fixed-point-free involution joining equal labels.
struct Pairing {
    std::vector<int> match;
};

// One pairing's contribution: coefficient 1, one Tr(P^c) per closed loop,
// P^w for the open path. Orientation flips are harmless here because every
// fixed part is a power of the same symmetric P.
TraceMonomial contract(const GaussianWord& word, const Pairing& pairing);

// All legal pairings, in the canonical order where the smallest unmatched
// slot is joined first and partners increase.
std::vector<Pairing> all_pairings(const GaussianWord& word);

// E[word]: the contraction summed over all legal pairings. Zero when some
// label appears an odd number of times.
TracePolynomial moment_word(const GaussianWord& word);

// E[(X - P)_pi] (centered) or E[X_pi] via subset expansion of the centering.
// The ground set is capped (default: 5 centered, 6 uncentered); pass max_n
// to override.
TracePolynomial moment_partition(const SetPartition& p, bool centered,
                                 int max_n = 0);

// Sum of moment_partition over every partition of [n] with m blocks in the
// given class.
TracePolynomial moment_class(int n, int m, PartitionClass cls, bool centered,
                             int max_n = 0);

// E(H^power) for the Gaussian limit H = P^{1/2} W P^{1/2} with W a symmetric
// matrix of entrywise rule E[W_ij W_kl] = d_ik d_jl + d_il d_jk. Odd powers
// vanish. Capped at 8 by default; pass max_power to override.
TracePolynomial moment_H(int power, int max_power = 0);

// Numeric moment with arbitrary square inserts: Q has either n entries
// (Q1 X Q2 X ... Qn X, trailing identity) or n+1 (Q0 X Q1 ... X Qn).
// Transposes are tracked, so the Q need not be symmetric; P must be.
Eigen::MatrixXd moment_numeric(const SetPartition& p,
                               const std::vector<Eigen::MatrixXd>& Q,
                               bool centered, const Eigen::MatrixXd& P,
                               int max_n = 0);

} // namespace wishart
