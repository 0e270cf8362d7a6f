#include "wishart/tracepoly.hpp"

#include <algorithm>

#include <json.hpp>

#include "wishart/errors.hpp"

namespace wishart {

int TraceMonomial::degree() const {
    int d = w;
    for (const auto& [i, e] : v) d += i * e;
    return d;
}

int TraceMonomial::trace_count() const {
    int c = 0;
    for (const auto& [i, e] : v) c += e;
    return c;
}

GammaOp gamma_op_from_string(const std::string& name) {
    if (name == "gamma") return GammaOp::GAMMA;
    if (name == "omega") return GammaOp::OMEGA;
    if (name == "gammabar") return GammaOp::GAMMABAR;
    if (name == "gamma-uncentered") return GammaOp::GAMMA_UNCENTERED;
    throw InputError("unknown operator: '" + name + "'");
}

std::string to_string(GammaOp op) {
    switch (op) {
        case GammaOp::GAMMA: return "gamma";
        case GammaOp::OMEGA: return "omega";
        case GammaOp::GAMMABAR: return "gammabar";
        case GammaOp::GAMMA_UNCENTERED: return "gamma-uncentered";
    }
    throw InputError("bad operator value");
}

RLaurent RLaurent::monomial(const Rat& coeff, int power) {
    RLaurent out;
    if (coeff != 0) out.c[power] = coeff;
    return out;
}

RLaurent RLaurent::operator+(const RLaurent& o) const {
    RLaurent out = *this;
    for (const auto& [p, q] : o.c) {
        Rat& slot = out.c[p];
        slot += q;
        if (slot == 0) out.c.erase(p);
    }
    return out;
}

RLaurent RLaurent::operator-(const RLaurent& o) const { return *this + o * Rat(-1); }

RLaurent RLaurent::operator*(const RLaurent& o) const {
    RLaurent out;
    for (const auto& [p1, q1] : c)
        for (const auto& [p2, q2] : o.c) {
            Rat& slot = out.c[p1 + p2];
            slot += q1 * q2;
            if (slot == 0) out.c.erase(p1 + p2);
        }
    return out;
}

RLaurent RLaurent::operator*(const Rat& s) const {
    RLaurent out;
    if (s == 0) return out;
    for (const auto& [p, q] : c) out.c[p] = q * s;
    return out;
}

RLaurent RLaurent::shifted(int k) const {
    RLaurent out;
    for (const auto& [p, q] : c) out.c[p + k] = q;
    return out;
}

Rat RLaurent::eval(const Rat& r) const {
    Rat total = 0;
    for (const auto& [p, q] : c) {
        if (p < 0 && r == 0) throw InputError("negative powers need r != 0");
        int e = p >= 0 ? p : -p;
        Rat pw = 1;
        for (int i = 0; i < e; ++i) pw *= r;
        if (p >= 0)
            total += q * pw;
        else
            total += q / pw;
    }
    return total;
}

std::string RLaurent::to_string() const {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        auto [p, q] = *it;
        std::string mag = wishart::to_string(q < 0 ? -q : q);
        std::string var = p == 0 ? "" : (p == 1 ? "r" : "r^" + std::to_string(p));
        std::string piece;
        if (var.empty())
            piece = mag;
        else
            piece = (mag == "1" ? var : mag + " " + var);
        if (first) {
            out += (q < 0 ? "-" : "") + piece;
            first = false;
        } else {
            out += (q < 0 ? " - " : " + ") + piece;
        }
    }
    return out;
}

namespace {

// descending (index, exponent) pairs; the canonical v comparison key
std::vector<std::pair<int, int>> vkey(const std::map<int, int>& v) {
    return {v.rbegin(), v.rend()};
}

bool term_before(const TraceMonomial& a, const TraceMonomial& b) {
    if (a.w != b.w) return a.w > b.w;
    return vkey(a.v) > vkey(b.v);
}

} // namespace

TracePolynomial TracePolynomial::from_terms(std::vector<TraceMonomial> terms) {
    // combine duplicate keys, drop zeros, sort canonically
    std::map<std::pair<int, std::map<int, int>>, Rat> acc;
    for (auto& t : terms) {
        if (t.coeff == 0) continue;
        if (t.w < 0) throw InputError("matrix power must be nonnegative");
        std::map<int, int> v;
        for (const auto& [i, e] : t.v) {
            if (i < 0 || e < 0) throw InputError("trace indices and exponents must be nonnegative");
            if (e > 0) v[i] = e;
        }
        acc[{t.w, std::move(v)}] += t.coeff;
    }
    TracePolynomial out;
    for (auto& [key, coeff] : acc) {
        if (coeff == 0) continue;
        TraceMonomial t;
        t.coeff = std::move(coeff);
        t.w = key.first;
        t.v = key.second;
        out.terms_.push_back(std::move(t));
    }
    std::sort(out.terms_.begin(), out.terms_.end(), term_before);
    return out;
}

TracePolynomial TracePolynomial::p_power(int w) {
    TraceMonomial t;
    t.coeff = 1;
    t.w = w;
    return from_terms({t});
}

TracePolynomial TracePolynomial::constant(const Rat& c) {
    TraceMonomial t;
    t.coeff = c;
    return from_terms({t});
}

TracePolynomial TracePolynomial::r_power(int k) {
    TraceMonomial t;
    t.coeff = 1;
    if (k > 0) t.v[0] = k;
    return from_terms({t});
}

TracePolynomial TracePolynomial::trace_power(int i) {
    TraceMonomial t;
    t.coeff = 1;
    t.v[i] = 1;
    return from_terms({t});
}

int TracePolynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree());
    return d;
}

TracePolynomial TracePolynomial::operator+(const TracePolynomial& o) const {
    std::vector<TraceMonomial> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(all));
}

TracePolynomial TracePolynomial::operator-(const TracePolynomial& o) const {
    return *this + o * Rat(-1);
}

TracePolynomial TracePolynomial::operator*(const TracePolynomial& o) const {
    std::vector<TraceMonomial> all;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            TraceMonomial t;
            t.coeff = a.coeff * b.coeff;
            t.w = a.w + b.w;
            t.v = a.v;
            for (const auto& [i, e] : b.v) t.v[i] += e;
            all.push_back(std::move(t));
        }
    return from_terms(std::move(all));
}

TracePolynomial TracePolynomial::operator*(const Rat& s) const {
    std::vector<TraceMonomial> all = terms_;
    for (auto& t : all) t.coeff *= s;
    return from_terms(std::move(all));
}

TracePolynomial TracePolynomial::mul_P() const {
    std::vector<TraceMonomial> all = terms_;
    for (auto& t : all) t.w += 1;
    return from_terms(std::move(all));
}

TracePolynomial TracePolynomial::trace() const {
    std::vector<TraceMonomial> all = terms_;
    for (auto& t : all) {
        t.v[t.w] += 1;
        t.w = 0;
    }
    return from_terms(std::move(all));
}

TracePolynomial TracePolynomial::gamma(GammaOp op) const {
    std::vector<TraceMonomial> all;
    for (const auto& t : terms_) {
        TraceMonomial inner = t; // P Q P part
        inner.w = t.w + 2;
        TraceMonomial outer = t; // Tr(P Q) P part
        outer.v[t.w + 1] += 1;
        outer.w = 1;
        switch (op) {
            case GammaOp::GAMMA:
                all.push_back(inner);
                all.push_back(outer);
                break;
            case GammaOp::OMEGA:
                inner.coeff *= 2;
                all.push_back(inner);
                break;
            case GammaOp::GAMMABAR:
                all.push_back(outer);
                break;
            case GammaOp::GAMMA_UNCENTERED:
                inner.coeff *= 2;
                all.push_back(inner);
                all.push_back(outer);
                break;
        }
    }
    return from_terms(std::move(all));
}

Eigen::MatrixXd TracePolynomial::eval_numeric(const Eigen::MatrixXd& P) const {
    if (P.rows() != P.cols() || P.rows() < 1) throw InputError("P must be square");
    const int r = static_cast<int>(P.rows());
    int maxpow = 0;
    for (const auto& t : terms_) {
        maxpow = std::max(maxpow, t.w);
        for (const auto& [i, e] : t.v) maxpow = std::max(maxpow, i);
    }
    std::vector<Eigen::MatrixXd> pw;
    pw.reserve(static_cast<size_t>(maxpow) + 1);
    pw.push_back(Eigen::MatrixXd::Identity(r, r));
    for (int k = 1; k <= maxpow; ++k) pw.push_back(pw.back() * P);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(r, r);
    for (const auto& t : terms_) {
        double scalar = to_double(t.coeff);
        for (const auto& [i, e] : t.v) {
            double tr = pw[static_cast<size_t>(i)].trace();
            for (int rep = 0; rep < e; ++rep) scalar *= tr;
        }
        out += scalar * pw[static_cast<size_t>(t.w)];
    }
    return out;
}

RLaurent TracePolynomial::eval_isotropic() const {
    RLaurent out;
    for (const auto& t : terms_) out = out + RLaurent::monomial(t.coeff, t.trace_count());
    return out;
}

bool TracePolynomial::class_check(int p, int q, bool strict) const {
    for (const auto& t : terms_) {
        if (t.degree() > p) return false;
        int tc = t.trace_count();
        if (strict ? (tc != q) : (tc > q)) return false;
    }
    return true;
}

std::string TracePolynomial::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json v = nlohmann::json::object();
        for (const auto& [i, e] : t.v) v[std::to_string(i)] = e;
        terms.push_back({{"c", to_string(t.coeff)}, {"v", v}, {"w", t.w}});
    }
    return nlohmann::json{{"terms", terms}}.dump();
}

TracePolynomial TracePolynomial::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad polynomial JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw InputError("polynomial JSON must be {\"terms\": [...]}");
    std::vector<TraceMonomial> terms;
    for (const auto& jt : j["terms"]) {
        TraceMonomial t;
        if (!jt.is_object() || !jt.contains("c") || !jt.contains("w"))
            throw InputError("each term needs \"c\" and \"w\"");
        if (!jt["c"].is_string()) throw InputError("coefficients are \"num/den\" strings");
        t.coeff = parse_rational(jt["c"].get<std::string>());
        if (!jt["w"].is_number_integer() || jt["w"].get<int>() < 0)
            throw InputError("\"w\" must be a nonnegative integer");
        t.w = jt["w"].get<int>();
        if (jt.contains("v")) {
            if (!jt["v"].is_object()) throw InputError("\"v\" must be an object");
            for (const auto& [key, val] : jt["v"].items()) {
                int i;
                try {
                    i = std::stoi(key);
                } catch (...) {
                    throw InputError("bad trace index: '" + key + "'");
                }
                if (i < 0 || !val.is_number_integer() || val.get<int>() < 0)
                    throw InputError("trace indices and exponents must be nonnegative");
                if (val.get<int>() > 0) t.v[i] = val.get<int>();
            }
        }
        terms.push_back(std::move(t));
    }
    return from_terms(std::move(terms));
}

std::string TracePolynomial::pretty() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        std::vector<std::string> factors;
        if (auto it = t.v.find(0); it != t.v.end())
            factors.push_back(it->second == 1 ? "r" : "r^" + std::to_string(it->second));
        for (const auto& [i, e] : t.v) {
            if (i == 0) continue;
            std::string f = i == 1 ? "Tr(P)" : "Tr(P^" + std::to_string(i) + ")";
            if (e > 1) f += "^" + std::to_string(e);
            factors.push_back(f);
        }
        if (t.w > 0) factors.push_back(t.w == 1 ? "P" : "P^" + std::to_string(t.w));

        Rat mag = t.coeff < 0 ? -t.coeff : t.coeff;
        std::string body;
        for (const auto& f : factors) {
            if (!body.empty()) body += " ";
            body += f;
        }
        if (body.empty())
            body = to_string(mag);
        else if (mag != 1)
            body = to_string(mag) + " " + body;

        if (first) {
            out += (t.coeff < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (t.coeff < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

TracePolynomial arith(const TracePolynomial& a, const TracePolynomial& b, ArithOp op) {
    switch (op) {
        case ArithOp::ADD: return a + b;
        case ArithOp::SUB: return a - b;
        case ArithOp::MUL: return a * b;
        case ArithOp::SCALE: {
            // b must be a bare constant
            if (b.is_zero()) return TracePolynomial::zero();
            const auto& ts = b.terms();
            if (ts.size() != 1 || ts[0].w != 0 || !ts[0].v.empty())
                throw InputError("scale expects a constant polynomial");
            return a * ts[0].coeff;
        }
    }
    throw InputError("bad arithmetic op");
}

} // namespace wishart
