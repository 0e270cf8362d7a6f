#include "wishart/wick.hpp"

#include <utility>

#include "wishart/errors.hpp"

namespace wishart {

namespace {

// Shared walk over one contraction. Slots 0..2k-1; the word edge of bra 2j+1
// carries fixed part j+1 and leads to ket 2j+2 (or RIGHT when j = k-1), the
// word edge of ket 2j carries fixed part j and leads back to bra 2j-1 (or
// LEFT when j = 0). Terminals have degree one, so ket 0 and bra 2k-1 always
// sit on the open path and cycles stay clear of the ends.

// Symbolic mode: fixed parts are P-powers, every pairing edge adds pair_pow.
TraceMonomial contract_powers(const std::vector<int>& fixed_pow,
                              const std::vector<int>& match, int pair_pow) {
    const int k = static_cast<int>(fixed_pow.size()) - 1;
    TraceMonomial mono;
    mono.coeff = 1;
    if (k == 0) { // no Gaussian factor at all: the word is just P^e0
        mono.w = fixed_pow[0];
        return mono;
    }
    std::vector<char> seen(2 * k, 0);
    int w = fixed_pow[0];
    int s = 0; // ket 0, entered from LEFT
    for (;;) {
        seen[s] = 1;
        const int t = match[s];
        seen[t] = 1;
        w += pair_pow;
        if (t % 2 == 1) {
            const int j = t / 2;
            w += fixed_pow[j + 1];
            if (j == k - 1) break; // reached RIGHT
            s = t + 1;
        } else {
            const int j = t / 2;
            w += fixed_pow[j];
            s = t - 1;
        }
    }
    mono.w = w;
    for (int c = 0; c < 2 * k; ++c) {
        if (seen[c]) continue;
        int cyc = 0;
        int s2 = c;
        do {
            seen[s2] = 1;
            const int t = match[s2];
            seen[t] = 1;
            cyc += pair_pow;
            if (t % 2 == 1) {
                cyc += fixed_pow[t / 2 + 1];
                s2 = t + 1;
            } else {
                cyc += fixed_pow[t / 2];
                s2 = t - 1;
            }
        } while (s2 != c);
        mono.v[cyc] += 1;
    }
    return mono;
}

// Numeric mode: fixed parts are concrete matrices. Walking a word edge
// against its writing direction transposes it; pairing edges insert P, which
// is required symmetric so they need no orientation.
Eigen::MatrixXd contract_matrices(const std::vector<Eigen::MatrixXd>& fixed,
                                  const std::vector<int>& match,
                                  const Eigen::MatrixXd& P) {
    const int k = static_cast<int>(fixed.size()) - 1;
    if (k == 0) return fixed[0];
    std::vector<char> seen(2 * k, 0);
    Eigen::MatrixXd path = fixed[0];
    int s = 0;
    for (;;) {
        seen[s] = 1;
        const int t = match[s];
        seen[t] = 1;
        path = path * P;
        if (t % 2 == 1) {
            const int j = t / 2;
            path = path * fixed[j + 1];
            if (j == k - 1) break;
            s = t + 1;
        } else {
            const int j = t / 2;
            path = path * fixed[j].transpose();
            s = t - 1;
        }
    }
    double loops = 1.0;
    for (int c = 0; c < 2 * k; ++c) {
        if (seen[c]) continue;
        Eigen::MatrixXd ring = P;
        int s2 = c;
        for (;;) {
            seen[s2] = 1;
            const int t = match[s2];
            seen[t] = 1;
            int next;
            if (t % 2 == 1) {
                const int j = t / 2;
                ring = ring * fixed[j + 1];
                next = t + 1;
            } else {
                const int j = t / 2;
                ring = ring * fixed[j].transpose();
                next = t - 1;
            }
            if (next == c) break;
            s2 = next;
            ring = ring * P;
        }
        loops *= ring.trace();
    }
    return loops * path;
}

void enumerate_pairings(const std::vector<int>& slot_label,
                        std::vector<int>& match,
                        const std::function<void(const std::vector<int>&)>& f) {
    const int s = [&] {
        for (int i = 0; i < static_cast<int>(match.size()); ++i)
            if (match[i] < 0) return i;
        return -1;
    }();
    if (s < 0) {
        f(match);
        return;
    }
    for (int t = s + 1; t < static_cast<int>(match.size()); ++t) {
        if (match[t] >= 0 || slot_label[t] != slot_label[s]) continue;
        match[s] = t;
        match[t] = s;
        enumerate_pairings(slot_label, match, f);
        match[s] = -1;
        match[t] = -1;
    }
}

std::vector<int> slot_labels(const std::vector<int>& labels) {
    std::vector<int> out;
    out.reserve(2 * labels.size());
    for (int l : labels) {
        out.push_back(l);
        out.push_back(l);
    }
    return out;
}

void check_word(const GaussianWord& word) {
    if (static_cast<int>(word.fixed_pow.size()) != word.occs() + 1)
        throw InputError("word has " + std::to_string(word.fixed_pow.size()) +
                         " fixed parts for " + std::to_string(word.occs()) +
                         " factors");
    for (int e : word.fixed_pow)
        if (e < 0) throw InputError("negative power of P in word");
    for (int l : word.labels)
        if (l <= 0) throw InputError("labels must be positive");
}

int effective_cap(int max_n, bool centered) {
    if (max_n > 0) return max_n;
    return centered ? 5 : 6;
}

// subset expansion of the centering: every factor outside S becomes a fixed
// P, merged into the neighbouring fixed parts, with sign (-1)^(n-|S|)
template <typename Fixed, typename Merge>
void for_each_centering(const std::vector<int>& labels,
                        const std::vector<Fixed>& fixed, const Merge& merge,
                        const std::function<void(const std::vector<int>&,
                                                 const std::vector<Fixed>&,
                                                 int)>& f) {
    const int n = static_cast<int>(labels.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub_labels;
        std::vector<Fixed> sub_fixed;
        sub_fixed.push_back(fixed[0]);
        int kept = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sub_labels.push_back(labels[i]);
                sub_fixed.push_back(fixed[i + 1]);
                ++kept;
            } else {
                sub_fixed.back() = merge(sub_fixed.back(), fixed[i + 1]);
            }
        }
        f(sub_labels, sub_fixed, (n - kept) % 2 ? -1 : 1);
    }
}

void sum_over_pairings(const std::vector<int>& labels,
                       const std::vector<int>& fixed_pow, int sign,
                       std::vector<TraceMonomial>& acc) {
    const auto sl = slot_labels(labels);
    std::vector<int> match(sl.size(), -1);
    enumerate_pairings(sl, match, [&](const std::vector<int>& m) {
        TraceMonomial mono = contract_powers(fixed_pow, m, 1);
        if (sign < 0) mono.coeff = -mono.coeff;
        acc.push_back(std::move(mono));
    });
}

} // namespace

void GaussianWord::add_p(int power) {
    if (power < 0) throw InputError("negative power of P in word");
    fixed_pow.back() += power;
}

void GaussianWord::add_x(int label) {
    if (label <= 0) throw InputError("labels must be positive");
    labels.push_back(label);
    fixed_pow.push_back(0);
}

TraceMonomial contract(const GaussianWord& word, const Pairing& pairing) {
    check_word(word);
    const auto& m = pairing.match;
    if (static_cast<int>(m.size()) != word.slots())
        throw InputError("pairing covers " + std::to_string(m.size()) +
                         " slots, word has " + std::to_string(word.slots()));
    const auto sl = slot_labels(word.labels);
    for (int s = 0; s < static_cast<int>(m.size()); ++s) {
        if (m[s] < 0 || m[s] >= static_cast<int>(m.size()) || m[s] == s ||
            m[m[s]] != s)
            throw InputError("pairing is not a fixed-point-free involution");
        if (sl[m[s]] != sl[s])
            throw InputError("pairing joins slots of different labels");
    }
    return contract_powers(word.fixed_pow, m, 1);
}

std::vector<Pairing> all_pairings(const GaussianWord& word) {
    check_word(word);
    std::vector<Pairing> out;
    const auto sl = slot_labels(word.labels);
    std::vector<int> match(sl.size(), -1);
    enumerate_pairings(sl, match,
                       [&](const std::vector<int>& m) { out.push_back({m}); });
    return out;
}

TracePolynomial moment_word(const GaussianWord& word) {
    check_word(word);
    std::vector<TraceMonomial> acc;
    sum_over_pairings(word.labels, word.fixed_pow, 1, acc);
    return TracePolynomial::from_terms(std::move(acc));
}

TracePolynomial moment_partition(const SetPartition& p, bool centered,
                                 int max_n) {
    const int cap = effective_cap(max_n, centered);
    if (p.n > cap)
        throw SizeCapError("moment on " + std::to_string(p.n) +
                           " factors exceeds the cap " + std::to_string(cap));
    const std::vector<int> labels = p.alpha();
    const std::vector<int> fixed_pow(p.n + 1, 0);
    std::vector<TraceMonomial> acc;
    if (!centered) {
        sum_over_pairings(labels, fixed_pow, 1, acc);
    } else {
        for_each_centering<int>(
            labels, fixed_pow, [](int a, int b) { return a + 1 + b; },
            [&](const std::vector<int>& sub_labels,
                const std::vector<int>& sub_fixed, int sign) {
                sum_over_pairings(sub_labels, sub_fixed, sign, acc);
            });
    }
    return TracePolynomial::from_terms(std::move(acc));
}

TracePolynomial moment_class(int n, int m, PartitionClass cls, bool centered,
                             int max_n) {
    if (n < 0 || m < 0) throw InputError("negative partition size");
    const int cap = effective_cap(max_n, centered);
    if (n > cap)
        throw SizeCapError("moment on " + std::to_string(n) +
                           " factors exceeds the cap " + std::to_string(cap));
    TracePolynomial sum;
    enumerate(n, m, cls, [&](const SetPartition& p) {
        sum = sum + moment_partition(p, centered, cap);
        return true;
    });
    return sum;
}

TracePolynomial moment_H(int power, int max_power) {
    if (power < 0) throw InputError("negative moment order");
    if (power % 2 == 1) return TracePolynomial::zero();
    if (power == 0) return TracePolynomial::identity();
    const int cap = max_power > 0 ? max_power : 8;
    if (power > cap)
        throw SizeCapError("H-moment of order " + std::to_string(power) +
                           " exceeds the cap " + std::to_string(cap));

    // One symmetric Gaussian factor per position; the entrywise rule makes
    // every matched pair of factors connect either straight or swapped. The
    // walk runs on doubled powers (P^{1/2} terminals become P, the inner P
    // parts become P^2, pairing edges carry nothing), halved at the end.
    const int n = power;
    std::vector<int> doubled(n + 1, 2);
    doubled.front() = doubled.back() = 1;

    std::vector<TraceMonomial> acc;
    std::vector<int> factor_match(n, -1);
    const std::vector<int> one_label(n, 1);
    enumerate_pairings(one_label, factor_match, [&](const std::vector<int>& fm) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            if (fm[i] > i) pairs.emplace_back(i, fm[i]);
        const int p = static_cast<int>(pairs.size());
        for (unsigned wiring = 0; wiring < (1u << p); ++wiring) {
            std::vector<int> match(2 * n, -1);
            for (int a = 0; a < p; ++a) {
                const auto [i, j] = pairs[a];
                int ki = 2 * i, bi = 2 * i + 1;
                int kj = 2 * j, bj = 2 * j + 1;
                if (wiring & (1u << a)) std::swap(kj, bj);
                match[ki] = kj;
                match[kj] = ki;
                match[bi] = bj;
                match[bj] = bi;
            }
            TraceMonomial mono = contract_powers(doubled, match, 0);
            TraceMonomial halved;
            halved.coeff = mono.coeff;
            halved.w = mono.w / 2;
            for (const auto& [c, e] : mono.v) halved.v[c / 2] += e;
            acc.push_back(std::move(halved));
        }
    });
    return TracePolynomial::from_terms(std::move(acc));
}

Eigen::MatrixXd moment_numeric(const SetPartition& p,
                               const std::vector<Eigen::MatrixXd>& Q,
                               bool centered, const Eigen::MatrixXd& P,
                               int max_n) {
    const int cap = effective_cap(max_n, centered);
    if (p.n > cap)
        throw SizeCapError("moment on " + std::to_string(p.n) +
                           " factors exceeds the cap " + std::to_string(cap));
    const int qn = static_cast<int>(Q.size());
    if (qn != p.n && qn != p.n + 1)
        throw InputError("need n or n+1 inserts for n factors, got " +
                         std::to_string(qn));
    const long dim = P.rows();
    if (P.cols() != dim) throw InputError("P is not square");
    const double scale = 1.0 + P.cwiseAbs().maxCoeff();
    if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("P must be symmetric");
    for (const auto& q : Q)
        if (q.rows() != dim || q.cols() != dim)
            throw InputError("insert dimensions do not match P");

    std::vector<Eigen::MatrixXd> fixed(Q.begin(), Q.end());
    if (qn == p.n) fixed.push_back(Eigen::MatrixXd::Identity(dim, dim));
    const std::vector<int> labels = p.alpha();

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    const auto add_all = [&](const std::vector<int>& sub_labels,
                             const std::vector<Eigen::MatrixXd>& sub_fixed,
                             int sign) {
        const auto sl = slot_labels(sub_labels);
        std::vector<int> match(sl.size(), -1);
        enumerate_pairings(sl, match, [&](const std::vector<int>& m) {
            out += static_cast<double>(sign) * contract_matrices(sub_fixed, m, P);
        });
    };
    if (!centered) {
        add_all(labels, fixed, 1);
    } else {
        for_each_centering<Eigen::MatrixXd>(
            labels, fixed,
            [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
                return Eigen::MatrixXd(a * P * b);
            },
            add_all);
    }
    return out;
}

} // namespace wishart
