#include "wishart/quadrature.hpp"

#include <cmath>
#include <vector>

#include "wishart/errors.hpp"

namespace wishart {

namespace {

// 7-15 Gauss-Kronrod pair on [-1, 1]; positive abscissae only, symmetric.
constexpr double kKNode[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKWeight[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights sit on the odd Kronrod abscissae (indices 1, 3, 5, 7)
constexpr double kGWeight[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double gauss = 0.0;
    double kron = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double fs = i == 7 ? f(c) : f(c - h * kKNode[i]) + f(c + h * kKNode[i]);
        kron += kKWeight[i] * fs;
        if (i % 2 == 1) gauss += kGWeight[i / 2] * fs;
    }
    return {kron * h, std::abs(kron - gauss) * h};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    struct Piece {
        double a, b, tol;
        int depth;
    };
    std::vector<Piece> stack{{a, b, abs_tol, 0}};
    double total = 0.0;
    while (!stack.empty()) {
        const Piece p = stack.back();
        stack.pop_back();
        const GkResult r = gk15(f, p.a, p.b);
        if (r.error <= p.tol || p.depth >= 40) {
            if (p.depth >= 40 && r.error > 1e3 * p.tol)
                throw ConvergenceError("adaptive quadrature stalled");
            total += r.value;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid, 0.5 * p.tol, p.depth + 1});
        stack.push_back({mid, p.b, 0.5 * p.tol, p.depth + 1});
    }
    return total;
}

} // namespace wishart
