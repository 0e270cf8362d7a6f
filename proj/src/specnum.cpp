#include "wishart/specnum.hpp"

#include <map>

namespace wishart {

CountKind count_kind_from_string(const std::string& name) {
    static const std::map<std::string, CountKind> table = {
        {"stirling1", CountKind::STIRLING1},
        {"stirling2", CountKind::STIRLING2},
        {"bell", CountKind::BELL},
        {"catalan", CountKind::CATALAN},
        {"narayana", CountKind::NARAYANA},
        {"riordan-nm", CountKind::RIORDAN_NM},
        {"riordan", CountKind::RIORDAN_N},
        {"kreweras", CountKind::KREWERAS},
        {"catalan-triangle", CountKind::CATALAN_TRIANGLE},
        {"pochhammer", CountKind::POCHHAMMER},
        {"gauss-even", CountKind::GAUSS_EVEN},
    };
    auto it = table.find(name);
    if (it == table.end()) throw InputError("unknown count kind: '" + name + "'");
    return it->second;
}

std::string to_string(CountKind kind) {
    switch (kind) {
        case CountKind::STIRLING1: return "stirling1";
        case CountKind::STIRLING2: return "stirling2";
        case CountKind::BELL: return "bell";
        case CountKind::CATALAN: return "catalan";
        case CountKind::NARAYANA: return "narayana";
        case CountKind::RIORDAN_NM: return "riordan-nm";
        case CountKind::RIORDAN_N: return "riordan";
        case CountKind::KREWERAS: return "kreweras";
        case CountKind::CATALAN_TRIANGLE: return "catalan-triangle";
        case CountKind::POCHHAMMER: return "pochhammer";
        case CountKind::GAUSS_EVEN: return "gauss-even";
    }
    throw InputError("bad count kind value");
}

Int factorial(int n) {
    if (n < 0) throw InputError("factorial of a negative number");
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Int binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

namespace {

void check_indices(int n, int m) {
    if (n < 0 || m < 0) throw InputError("count indices must be nonnegative");
}

} // namespace

Int stirling1(int n, int m) {
    check_indices(n, m);
    if (m > n) return 0;
    // row-by-row: s(i+1, j) = s(i, j-1) - i * s(i, j)
    std::vector<Int> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j >= 1; --j) row[static_cast<size_t>(j)] = row[static_cast<size_t>(j - 1)] - i * row[static_cast<size_t>(j)];
        row[0] = 0;
    }
    return row[static_cast<size_t>(m)];
}

Int stirling2(int n, int m) {
    check_indices(n, m);
    if (m > n) return 0;
    std::vector<Int> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j >= 1; --j) row[static_cast<size_t>(j)] = row[static_cast<size_t>(j - 1)] + j * row[static_cast<size_t>(j)];
        row[0] = 0;
    }
    return row[static_cast<size_t>(m)];
}

Int bell_number(int n) {
    if (n < 0) throw InputError("count indices must be nonnegative");
    Int total = 0;
    for (int m = 0; m <= n; ++m) total += stirling2(n, m);
    return total;
}

Int catalan(int n) {
    if (n < 0) throw InputError("count indices must be nonnegative");
    return binomial(2 * n, n) / (n + 1);
}

Int narayana(int n, int m) {
    check_indices(n, m);
    if (n == 0) return m == 0 ? 1 : 0;
    if (m == 0 || m > n) return 0;
    return binomial(n, m - 1) * binomial(n, m) / n;
}

Int riordan_nm(int n, int m) {
    check_indices(n, m);
    if (n == 0) return m == 0 ? 1 : 0;
    if (m == 0) return 0;
    return binomial(n + 1, m) * binomial(n - 1 - m, m - 1) / (n + 1);
}

Int riordan_n(int n) {
    if (n < 0) throw InputError("count indices must be nonnegative");
    Int total = 0;
    for (int m = 0; m <= n; ++m) total += riordan_nm(n, m);
    return total;
}

Int kreweras_count(const PartitionType& type) {
    int n = 0, m = 0;
    for (size_t k = 0; k < type.mu.size(); ++k) {
        if (type.mu[k] < 0) throw InputError("block-size multiplicities must be nonnegative");
        n += static_cast<int>(k + 1) * type.mu[k];
        m += type.mu[k];
    }
    Int denom = factorial(n + 1 - m);
    for (int c : type.mu) denom *= factorial(c);
    return factorial(n) / denom;
}

Int catalan_triangle(int n, int m) {
    check_indices(n, m);
    if (n == 0) return m == 0 ? 1 : 0;
    if (m == 0 || m > n) return 0;
    // ballot form: the count of non-crossing partitions of [n] whose block
    // containing 1 has size m, also the Catalan convolution of order m
    return m * binomial(2 * n - m - 1, n - m) / n;
}

Int pochhammer(int n, int m) {
    check_indices(n, m);
    if (m > n) return 0;
    return factorial(n) / factorial(n - m);
}

Int gauss_even(int n) {
    if (n < 0) throw InputError("count indices must be nonnegative");
    Int p = factorial(2 * n) / factorial(n);
    return p / (Int(1) << n);
}

Int count(CountKind kind, const std::vector<long long>& args) {
    auto need = [&](size_t k) {
        if (args.size() != k)
            throw InputError(to_string(kind) + " takes " + std::to_string(k) +
                             (k == 1 ? " argument" : " arguments"));
        for (long long a : args)
            if (a < 0 || a > 1000) throw InputError("count argument out of range");
    };
    auto a = [&](size_t i) { return static_cast<int>(args[i]); };
    switch (kind) {
        case CountKind::STIRLING1: need(2); return stirling1(a(0), a(1));
        case CountKind::STIRLING2: need(2); return stirling2(a(0), a(1));
        case CountKind::BELL: need(1); return bell_number(a(0));
        case CountKind::CATALAN: need(1); return catalan(a(0));
        case CountKind::NARAYANA: need(2); return narayana(a(0), a(1));
        case CountKind::RIORDAN_NM: need(2); return riordan_nm(a(0), a(1));
        case CountKind::RIORDAN_N: need(1); return riordan_n(a(0));
        case CountKind::CATALAN_TRIANGLE: need(2); return catalan_triangle(a(0), a(1));
        case CountKind::POCHHAMMER: need(2); return pochhammer(a(0), a(1));
        case CountKind::GAUSS_EVEN: need(1); return gauss_even(a(0));
        case CountKind::KREWERAS: {
            PartitionType t;
            for (long long v : args) {
                if (v < 0 || v > 1000) throw InputError("count argument out of range");
                t.mu.push_back(static_cast<int>(v));
            }
            return kreweras_count(t);
        }
    }
    throw InputError("bad count kind value");
}

Rat bell_complete(int n, const std::vector<Rat>& x) { return bell_complete(n, x, Rat(1)); }

bool growth_bound_check(int p, const Rat& rho, const Rat& beta, const std::vector<Rat>& x,
                        int n, int q) {
    if (p < 1 || n < 1) throw InputError("growth bound check needs p >= 1 and n >= 1");
    if (q < 1 || q >= p) throw HypothesisError("growth bound check needs 1 <= q < p");
    if (rho < 0 || beta < 0) throw HypothesisError("rho and beta must be nonnegative");
    int len = p * n + q;
    if (static_cast<int>(x.size()) < len)
        throw InputError("sequence must reach order p*n + q");
    for (int k = 1; k < p; ++k)
        if (x[static_cast<size_t>(k - 1)] != 0)
            throw HypothesisError("sequence must vanish below order p");
    Rat bpow = 1;
    for (int k = 1; k <= len; ++k) {
        bpow *= beta;
        Rat cap = Rat(factorial(k)) * rho * bpow;
        if (abs(x[static_cast<size_t>(k - 1)]) > cap)
            throw HypothesisError("sequence exceeds the n! rho beta^n envelope at order " +
                                  std::to_string(k));
    }

    auto tail = [&](int kmax) {
        Rat s = 0, pw = 1;
        Rat ratio = rho / Rat(Int(1) << (p - 1));
        for (int k = 1; k <= kmax; ++k) {
            pw *= ratio;
            s += pw / Rat(factorial(k));
        }
        return s;
    };
    auto pow_rat = [](Rat base, int e) {
        Rat r = 1;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };

    Rat lead = Rat(factorial(p * n)) / Rat(factorial(n)) * pow_rat(x[static_cast<size_t>(p - 1)] / Rat(factorial(p)), n);
    Rat lhs1 = abs(bell_complete(p * n, x) - lead);
    Rat rhs1 = Rat(factorial(p * n)) / 2 * pow_rat(2 * beta, p * n) * tail(n - 1);

    Rat lhs2 = abs(bell_complete(p * n + q, x));
    Rat rhs2 = Rat(factorial(p * n + q)) / 2 * pow_rat(2 * beta, p * n + q) * tail(n);

    return lhs1 <= rhs1 && lhs2 <= rhs2;
}

} // namespace wishart
