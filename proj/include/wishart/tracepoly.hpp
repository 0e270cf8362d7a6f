#pragma once

// Exact symbolic trace polynomials in one symmetric matrix P: linear
// combinations of terms  c * r^k * prod_i Tr(P^i)^{e_i} * P^w,  where r is
// the dimension symbol (kept as Tr(P^0)). These carry the moment recursions;
// numeric evaluation happens only at the boundary.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wishart/rational.hpp"

namespace wishart {

// One term. v maps the trace order i to its exponent; v[0] holds powers of
// the dimension r = Tr(P^0). The matrix part is P^w with P^0 = I.
struct TraceMonomial {
    Rat coeff;
    std::map<int, int> v;
    int w = 0;

    // degree of P across traces and the matrix part
    int degree() const;
    // number of trace factors, the r-power included
    int trace_count() const;
    bool operator==(const TraceMonomial&) const = default;
};

enum class ArithOp { ADD, SUB, MUL, SCALE };
enum class GammaOp {
    GAMMA,            // Q -> PQP + Tr(PQ) P
    OMEGA,            // Q -> 2 PQP
    GAMMABAR,         // Q -> Tr(PQ) P
    GAMMA_UNCENTERED, // Q -> 2 PQP + Tr(PQ) P
};

GammaOp gamma_op_from_string(const std::string& name);
std::string to_string(GammaOp op);

// Laurent polynomial in the dimension r with exact coefficients; what a
// trace polynomial collapses to at P = I.
struct RLaurent {
    std::map<int, Rat> c; // power -> coefficient, zeros dropped

    static RLaurent monomial(const Rat& coeff, int power);

    RLaurent operator+(const RLaurent& o) const;
    RLaurent operator-(const RLaurent& o) const;
    RLaurent operator*(const RLaurent& o) const;
    RLaurent operator*(const Rat& s) const;
    // multiply by r^k
    RLaurent shifted(int k) const;
    Rat eval(const Rat& r) const;
    bool is_zero() const { return c.empty(); }
    std::string to_string() const;
    bool operator==(const RLaurent&) const = default;
};

class TracePolynomial {
public:
    TracePolynomial() = default; // zero

    static TracePolynomial zero() { return {}; }
    static TracePolynomial identity() { return p_power(0); }
    static TracePolynomial p_power(int w);
    static TracePolynomial constant(const Rat& c);
    static TracePolynomial r_power(int k);
    // Tr(P^i) as a scalar term
    static TracePolynomial trace_power(int i);
    static TracePolynomial from_terms(std::vector<TraceMonomial> terms);
    static TracePolynomial parse_json(const std::string& text);

    const std::vector<TraceMonomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    TracePolynomial operator+(const TracePolynomial& o) const;
    TracePolynomial operator-(const TracePolynomial& o) const;
    TracePolynomial operator*(const TracePolynomial& o) const;
    TracePolynomial operator*(const Rat& s) const;
    bool operator==(const TracePolynomial&) const = default;

    // multiply every term by P on the right (or left; P commutes with itself)
    TracePolynomial mul_P() const;
    // take the trace of each term: move the matrix power into v, so a pure
    // scalar term picks up a factor r
    TracePolynomial trace() const;
    TracePolynomial gamma(GammaOp op) const;

    // substitute a concrete symmetric matrix
    Eigen::MatrixXd eval_numeric(const Eigen::MatrixXd& P) const;
    // substitute P = I_r symbolically: Tr(P^i) -> r, P^w -> I
    RLaurent eval_isotropic() const;

    // membership in the class of polynomials with degree <= p and at most
    // (strict: exactly) q trace factors in every term
    bool class_check(int p, int q, bool strict) const;

    std::string to_json() const;
    std::string pretty() const;

private:
    std::vector<TraceMonomial> terms_; // canonical: w desc, then traces desc
};

TracePolynomial arith(const TracePolynomial& a, const TracePolynomial& b, ArithOp op);

} // namespace wishart
