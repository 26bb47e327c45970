#include "ellgen/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace ellgen {

void SeriesContext::validate() const {
    if (dq < 1 || dy < 1) throw std::invalid_argument("SeriesContext: denominators must be >= 1");
    if (d1 <= 0 || d2 <= 0 || d1 == d2)
        throw std::invalid_argument("SeriesContext: direction requires d1, d2 > 0 and d1 != d2");
    if (pmax < 0 || qmax < 0 || ymin > ymax || tmin > tmax)
        throw std::invalid_argument("SeriesContext: empty window");
    const int lim = 30000;
    if (qmax > lim || ymax > lim || -ymin > lim || tmax > lim || -tmin > lim || pmax > lim)
        throw std::invalid_argument("SeriesContext: window exceeds exponent range");
}

Series Series::constant(std::shared_ptr<const SeriesContext> ctx, const FieldElement& c) {
    Series s(std::move(ctx));
    s.add_term(Expo{}, c);
    return s;
}

Series Series::monomial(std::shared_ptr<const SeriesContext> ctx, const Expo& x,
                        const FieldElement& c) {
    Series s(std::move(ctx));
    s.add_term(x, c);
    return s;
}

FieldElement Series::coeff(const Expo& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? FieldElement() : it->second;
}

void Series::add_term(const Expo& x, const FieldElement& c) {
    if (c.is_zero() || !ctx_->in_window(x)) return;
    auto [it, inserted] = terms_.emplace(x, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {
void check_same_context(const Series& a, const Series& b) {
    if (!(*a.context() == *b.context()))
        throw std::invalid_argument("Series: context mismatch");
}
}  // namespace

Series operator+(const Series& a, const Series& b) {
    check_same_context(a, b);
    Series r = a;
    for (const auto& [x, c] : b.terms()) r.add_term(x, c);
    return r;
}

Series& Series::operator+=(const Series& b) {
    check_same_context(*this, b);
    for (const auto& [x, c] : b.terms()) add_term(x, c);
    return *this;
}

Series operator-(const Series& a, const Series& b) {
    check_same_context(a, b);
    Series r = a;
    for (const auto& [x, c] : b.terms()) r.add_term(x, -c);
    return r;
}

Series Series::operator-() const {
    Series r(ctx_);
    for (const auto& [x, c] : terms_) r.terms_.emplace(x, -c);
    return r;
}

Series Series::scaled(const FieldElement& c) const {
    Series r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [x, v] : terms_) {
        FieldElement w = v * c;
        if (!w.is_zero()) r.terms_.emplace(x, w);
    }
    return r;
}

Series operator*(const Series& a, const Series& b) {
    check_same_context(a, b);
    const Series& outer = (a.size() <= b.size()) ? a : b;
    const Series& inner = (a.size() <= b.size()) ? b : a;
    const SeriesContext& ctx = *a.context();
    Series r(a.context());
    for (const auto& [xa, ca] : outer.terms()) {
        for (const auto& [xb, cb] : inner.terms()) {
            Expo x = xa + xb;
            if (!ctx.in_window(x)) continue;
            r.add_term(x, ca * cb);
        }
    }
    return r;
}

bool Series::operator==(const Series& b) const {
    if (!(*ctx_ == *b.ctx_)) return false;
    if (terms_.size() != b.terms_.size()) return false;
    for (const auto& [x, c] : terms_) {
        auto it = b.terms_.find(x);
        if (it == b.terms_.end() || !(it->second == c)) return false;
    }
    return true;
}

namespace {
// graded comparison key: p, q, delta(t), then y, t1, t2 as tie-break
std::array<long, 6> grade_key(const SeriesContext& ctx, const Expo& x) {
    return {static_cast<long>(x.p()), static_cast<long>(x.q()),
            ctx.delta(x.t1(), x.t2()), static_cast<long>(x.y()),
            static_cast<long>(x.t1()), static_cast<long>(x.t2())};
}
}  // namespace

Expo Series::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("leading_exponent of empty series");
    auto best = terms_.begin();
    auto best_key = grade_key(*ctx_, best->first);
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
        auto key = grade_key(*ctx_, it->first);
        if (key < best_key) {
            best = it;
            best_key = key;
        }
    }
    return best->first;
}

Series Series::at_y1() const {
    Series r(ctx_);
    for (const auto& [x, c] : terms_) {
        Expo z = x;
        z.y() = 0;
        r.add_term(z, c);
    }
    return r;
}

std::string Series::str(size_t max_terms) const {
    std::vector<std::pair<Expo, FieldElement>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
        return grade_key(*ctx_, a.first) < grade_key(*ctx_, b.first);
    });
    std::ostringstream os;
    size_t shown = 0;
    for (const auto& [x, c] : v) {
        if (shown++ >= max_terms) {
            os << " + ...(" << v.size() - max_terms << " more)";
            break;
        }
        if (shown > 1) os << " + ";
        os << "(" << c.str() << ")";
        if (x.p()) os << " p^" << x.p();
        if (x.q()) os << " q^" << x.q() << (ctx_->dq > 1 ? "/" + std::to_string(ctx_->dq) : "");
        if (x.y()) os << " y^" << x.y() << (ctx_->dy > 1 ? "/" + std::to_string(ctx_->dy) : "");
        if (x.t1()) os << " t1^" << x.t1();
        if (x.t2()) os << " t2^" << x.t2();
    }
    if (v.empty()) os << "0";
    return os.str();
}

Series invert_unit(const Series& a) {
    if (a.empty()) throw std::domain_error("invert_unit: zero series");
    const auto ctx = a.context();
    Expo lead = a.leading_exponent();
    FieldElement lc = a.coeff(lead);
    // a = lc * m * (1 + r); the inverse is lc^{-1} m^{-1} sum (-r)^j
    FieldElement lc_inv = lc.inverse();
    Series rest(ctx);
    for (const auto& [x, c] : a.terms()) {
        if (x == lead) continue;
        Expo shifted;
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            int v = x.e[i] - lead.e[i];
            if (v < -30000 || v > 30000) ok = false;
            shifted.e[i] = static_cast<int16_t>(v);
        }
        if (!ok || !ctx->in_window(shifted)) continue;
        rest.add_term(shifted, c * lc_inv);
    }
    Series acc = Series::constant(ctx, FieldElement(1));
    Series pow = Series::constant(ctx, FieldElement(1));
    const size_t max_iter = 4096;
    size_t iter = 0;
    while (!rest.empty()) {
        pow = pow * (-rest);
        if (pow.empty()) break;
        acc += pow;
        if (++iter > max_iter)
            throw std::runtime_error("invert_unit: Neumann series did not truncate; "
                                     "leading term is not a unit for these windows");
    }
    // shift by m^{-1} and scale by lc^{-1}
    Series result(ctx);
    for (const auto& [x, c] : acc.terms()) {
        Expo z;
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            int v = x.e[i] - lead.e[i];
            if (v < -30000 || v > 30000) ok = false;
            z.e[i] = static_cast<int16_t>(v);
        }
        if (!ok) continue;
        result.add_term(z, c * lc_inv);
    }
    return result;
}

namespace {
// first nonzero of (p, q, delta(t), y); 0 for a pure scalar
int leading_sign(const SeriesContext& ctx, const Expo& m) {
    if (m.p() != 0) return m.p() > 0 ? 1 : -1;
    if (m.q() != 0) return m.q() > 0 ? 1 : -1;
    long d = ctx.delta(m.t1(), m.t2());
    if (d != 0) return d > 0 ? 1 : -1;
    if (m.t1() != 0 || m.t2() != 0)
        throw std::domain_error("expansion direction is degenerate (delta = 0) for this monomial");
    if (m.y() != 0) return m.y() > 0 ? 1 : -1;
    return 0;
}

// geometric sum_{j>=j0} c^j m^j, stopping at the window edge (powers of a
// monomial move monotonically, so the first out-of-window power is final)
void accumulate_geometric(Series& out, const Expo& m, const FieldElement& coeff,
                          int j0, const FieldElement& scale) {
    const SeriesContext& ctx = *out.context();
    std::array<long, 5> cur{};
    FieldElement cpow(1);
    for (int i = 0; i < 5; ++i) cur[i] = static_cast<long>(m.e[i]) * j0;
    for (int j = 0; j < j0; ++j) cpow *= coeff;
    for (int j = j0;; ++j) {
        Expo x;
        bool fits = true;
        for (int i = 0; i < 5; ++i) {
            if (cur[i] < -30000 || cur[i] > 30000) fits = false;
            else x.e[i] = static_cast<int16_t>(cur[i]);
        }
        if (!fits || !ctx.in_window(x)) break;
        out.add_term(x, cpow * scale);
        cpow *= coeff;
        for (int i = 0; i < 5; ++i) cur[i] += m.e[i];
    }
}
}  // namespace

Series expand_binomial_inverse(std::shared_ptr<const SeriesContext> ctx, const Expo& m,
                               const FieldElement& coeff) {
    Series out(ctx);
    if (coeff.is_zero()) {
        out.add_term(Expo{}, FieldElement(1));
        return out;
    }
    int sign = leading_sign(*ctx, m);
    if (sign == 0) {
        // scalar binomial: invert 1 - coeff in the field
        FieldElement d = FieldElement(1) - coeff;
        if (d.is_zero()) throw std::domain_error("expand_binomial_inverse: pole at 1 - 1");
        out.add_term(Expo{}, d.inverse());
        return out;
    }
    if (sign > 0) {
        accumulate_geometric(out, m, coeff, 0, FieldElement(1));
    } else {
        // 1/(1-M) = -M^{-1}/(1-M^{-1}) = -sum_{j>=1} M^{-j}
        accumulate_geometric(out, -m, coeff.inverse(), 1, FieldElement(-1));
    }
    return out;
}

void log1m_accumulate(Series& acc, const Expo& m, const FieldElement& coeff,
                      const FieldElement& multiplicity) {
    if (m.p() <= 0)
        throw std::domain_error("log1m_accumulate: monomial must have positive p-exponent");
    const SeriesContext& ctx = *acc.context();
    std::array<long, 5> cur{};
    for (int i = 0; i < 5; ++i) cur[i] = m.e[i];
    FieldElement cpow = coeff;
    for (int j = 1;; ++j) {
        Expo x;
        bool fits = true;
        for (int i = 0; i < 5; ++i) {
            if (cur[i] < -30000 || cur[i] > 30000) fits = false;
            else x.e[i] = static_cast<int16_t>(cur[i]);
        }
        if (!fits || !ctx.in_window(x)) break;
        acc.add_term(x, multiplicity * cpow * FieldElement(Rational(1, j)));
        cpow *= coeff;
        for (int i = 0; i < 5; ++i) cur[i] += m.e[i];
    }
}

Series exp_series(const Series& a) {
    const auto ctx = a.context();
    if (!a.coeff(Expo{}).is_zero())
        throw std::domain_error("exp_series: nonzero constant term");
    for (const auto& [x, c] : a.terms())
        if (x.p() <= 0)
            throw std::domain_error("exp_series: term without positive p-exponent");
    Series result = Series::constant(ctx, FieldElement(1));
    Series pow = Series::constant(ctx, FieldElement(1));
    Rational fact(1);
    for (int j = 1; j <= ctx->pmax; ++j) {
        pow = pow * a;
        if (pow.empty()) break;
        fact *= j;
        result += pow.scaled(FieldElement(Rational(1) / fact));
    }
    return result;
}

Series q_section(const Series& a, int n) {
    if (n <= 0) throw std::invalid_argument("q_section: n must be positive");
    if (a.context()->dq != 1)
        throw std::domain_error("q_section: fractional q-exponents present (dq != 1)");
    Series r(a.context());
    for (const auto& [x, c] : a.terms()) {
        if (x.q() % n != 0) continue;
        Expo z = x;
        z.q() = static_cast<int16_t>(x.q() / n);
        r.add_term(z, c);
    }
    return r;
}

NumericValue evaluate_numeric(const Series& a, const NumericPoint& pt) {
    std::complex<double> acc(0.0, 0.0);
    auto ipow = [](std::complex<double> b, int e) {
        if (e == 0) return std::complex<double>(1.0, 0.0);
        bool inv = e < 0;
        unsigned n = static_cast<unsigned>(inv ? -e : e);
        std::complex<double> r(1.0, 0.0);
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return inv ? 1.0 / r : r;
    };
    for (const auto& [x, c] : a.terms()) {
        std::complex<double> v = c.embed();
        v *= ipow(pt.p, x.p());
        v *= ipow(pt.q, x.q());
        v *= ipow(pt.y, x.y());
        v *= ipow(pt.t1, x.t1());
        v *= ipow(pt.t2, x.t2());
        acc += v;
    }
    const SeriesContext& ctx = *a.context();
    double aq = std::abs(pt.q);
    double tail = 0.0;
    if (aq > 0 && aq < 1) tail += std::pow(aq, ctx.qmax + 1) / (1.0 - aq);
    double ap = std::abs(pt.p);
    if (ap > 0 && ap < 1) tail += std::pow(ap, ctx.pmax + 1) / (1.0 - ap);
    return {acc, tail};
}

std::string series_to_json(const Series& a) {
    using nlohmann::json;
    const SeriesContext& c = *a.context();
    json j;
    j["schema"] = "ellgen-series-v1";
    j["denominators"] = {{"q", c.dq}, {"y", c.dy}};
    j["windows"] = {{"pmax", c.pmax}, {"qmax", c.qmax}, {"ymin", c.ymin},
                    {"ymax", c.ymax}, {"tmin", c.tmin}, {"tmax", c.tmax}};
    j["direction"] = {c.d1, c.d2};
    std::vector<std::pair<Expo, FieldElement>> v(a.terms().begin(), a.terms().end());
    std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.first.e < r.first.e; });
    json recs = json::array();
    for (const auto& [x, fe] : v) {
        recs.push_back({{"e_p", x.p()}, {"e_q_num", x.q()}, {"e_y_num", x.y()},
                        {"e_t1", x.t1()}, {"e_t2", x.t2()}, {"coeff", fe.str()}});
    }
    j["terms"] = std::move(recs);
    return j.dump(1);
}

Series series_from_json(const std::string& json_text) {
    using nlohmann::json;
    json j = json::parse(json_text);
    auto ctx = std::make_shared<SeriesContext>();
    ctx->dq = j["denominators"]["q"].get<int>();
    ctx->dy = j["denominators"]["y"].get<int>();
    ctx->pmax = j["windows"]["pmax"].get<int>();
    ctx->qmax = j["windows"]["qmax"].get<int>();
    ctx->ymin = j["windows"]["ymin"].get<int>();
    ctx->ymax = j["windows"]["ymax"].get<int>();
    ctx->tmin = j["windows"]["tmin"].get<int>();
    ctx->tmax = j["windows"]["tmax"].get<int>();
    ctx->d1 = j["direction"][0].get<int>();
    ctx->d2 = j["direction"][1].get<int>();
    ctx->validate();
    Series s(ctx);
    for (const auto& rec : j["terms"]) {
        Expo x;
        x.p() = rec["e_p"].get<int16_t>();
        x.q() = rec["e_q_num"].get<int16_t>();
        x.y() = rec["e_y_num"].get<int16_t>();
        x.t1() = rec["e_t1"].get<int16_t>();
        x.t2() = rec["e_t2"].get<int16_t>();
        s.add_term(x, FieldElement::from_string(rec["coeff"].get<std::string>()));
    }
    return s;
}

}  // namespace ellgen
