#include "ellgen/identities.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "../../vendor/json.hpp"

namespace ellgen {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Completeness guard: a series whose support touches the y window edge may
// have been truncated in y, which the comparison slack does not cover.
void assert_y_interior(const Series& a, const char* who) {
    const auto& ctx = *a.context();
    for (const auto& [e, c] : a.terms())
        if (e.y() == ctx.ymin || e.y() == ctx.ymax)
            throw std::runtime_error(std::string(who) +
                                     ": y window too narrow (support reaches the edge)");
}

long lcm_up_to(int n) {
    long l = 1;
    for (int i = 2; i <= n; ++i) l = std::lcm(l, static_cast<long>(i));
    return l;
}

}  // namespace

CoefficientTable coefficient_table(const Series& a) {
    CoefficientTable t;
    t.ctx = a.context();
    for (const auto& [e, c] : a.terms()) {
        if (e.p() != 0)
            throw std::invalid_argument("coefficient_table: series must be p-free");
        t.entries.push_back({e.q(), e.y(), e.t1(), e.t2(), c});
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.m, a.l, a.k1, a.k2) < std::tie(b.m, b.l, b.k1, b.k2);
    });
    return t;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "ellgen-report-v1";
    j["identity"] = identity;
    j["success"] = success();
    j["computation_window"] = {
        {"dq", computation_window.dq},   {"dy", computation_window.dy},
        {"pmax", computation_window.pmax}, {"qmax", computation_window.qmax},
        {"ymin", computation_window.ymin}, {"ymax", computation_window.ymax},
        {"tmin", computation_window.tmin}, {"tmax", computation_window.tmax},
        {"d1", computation_window.d1},     {"d2", computation_window.d2}};
    j["verify_qmax"] = verify_qmax;
    j["verify_tspan"] = verify_tspan;
    j["compared"] = compared;
    j["runtime_seconds"] = runtime_seconds;
    j["seed"] = seed;
    auto& mm = j["mismatches"];
    mm = nlohmann::json::array();
    for (const auto& m : mismatches) {
        nlohmann::json e;
        e["exponent"] = {m.where.p(), m.where.q(), m.where.y(), m.where.t1(), m.where.t2()};
        e["lhs"] = m.lhs;
        e["rhs"] = m.rhs;
        mm.push_back(e);
    }
    return j.dump(2);
}

void compare_on_window(const Series& lhs, const Series& rhs, int vq, int vt,
                       VerificationReport& report) {
    auto in_verify = [&](const Expo& e) {
        return e.q() <= vq && std::abs(e.t1()) <= vt && std::abs(e.t2()) <= vt;
    };
    report.compared = 0;
    for (const auto& [e, c] : lhs.terms()) {
        if (!in_verify(e)) continue;
        ++report.compared;
        FieldElement r = rhs.coeff(e);
        if (!(c == r)) report.mismatches.push_back({e, c.str(), r.str()});
    }
    for (const auto& [e, c] : rhs.terms()) {
        if (!in_verify(e) || !lhs.coeff(e).is_zero()) continue;
        ++report.compared;
        report.mismatches.push_back({e, FieldElement().str(), c.str()});
    }
    std::sort(report.mismatches.begin(), report.mismatches.end(),
              [](const Mismatch& a, const Mismatch& b) { return a.where.e < b.where.e; });
}

std::shared_ptr<const SeriesContext> dmvv_context(int pmax, int qmax, int tspan,
                                                  int d1, int d2) {
    SeriesContext c;
    c.dq = 1;
    c.dy = 2;
    c.pmax = pmax;
    c.qmax = qmax;
    c.tmin = -tspan;
    c.tmax = tspan;
    c.d1 = d1;
    c.d2 = d2;
    int yspan = 2 * c.dy * (pmax + qmax + tspan + 2);
    c.ymin = -yspan;
    c.ymax = yspan;
    c.validate();
    return std::make_shared<const SeriesContext>(c);
}

int dmvv_slack(int pmax, int qmax) {
    int maxk = 1;
    for (int n = 1; n <= pmax; ++n)
        for (const auto& lam : partitions(n))
            for (const auto& w : tangent_weights(lam))
                maxk = std::max({maxk, std::abs(w[0]), std::abs(w[1])});
    return pmax * qmax * maxk;
}

Series dmvv_lhs(int pmax, std::shared_ptr<const SeriesContext> ctx) {
    if (pmax < 1) throw std::invalid_argument("dmvv_lhs: pmax must be >= 1");
    Series s = Series::constant(ctx, FieldElement(1));
    for (int n = 1; n <= pmax; ++n) {
        Series h = ell_hilb(n, ctx);
        for (const auto& [e, c] : h.terms()) {
            Expo x = e;
            x.p() = static_cast<int16_t>(n);
            s.add_term(x, c);
        }
    }
    return s;
}

Series dmvv_rhs_from_table(const CoefficientTable& table, int pmax,
                           std::shared_ptr<const SeriesContext> ctx) {
    if (table.ctx->qmax < pmax * ctx->qmax)
        throw std::invalid_argument(
            "dmvv_rhs: coefficient table covers q up to " +
            std::to_string(table.ctx->qmax) + ", need " + std::to_string(pmax * ctx->qmax));
    // Re-materialize the table as a series so the c(nm, l, k) reindexing is
    // a plain q_section.
    Series tser(table.ctx);
    for (const auto& en : table.entries) {
        Expo e;
        e.q() = static_cast<int16_t>(en.m);
        e.y() = static_cast<int16_t>(en.l);
        e.t1() = static_cast<int16_t>(en.k1);
        e.t2() = static_cast<int16_t>(en.k2);
        tser.add_term(e, en.value);
    }

    Series acc = Series::zero(ctx);
    for (int n = 1; n <= pmax; ++n) {
        Series sec = q_section(tser, n);
        for (const auto& [e, c] : sec.terms()) {
            if (e.q() > ctx->qmax) continue;
            Expo m = e;
            m.p() = static_cast<int16_t>(n);
            if (!ctx->in_window(m)) continue;
            log1m_accumulate(acc, m, FieldElement(1), c);
        }
    }
    return exp_series(acc);
}

Series dmvv_rhs(int pmax, std::shared_ptr<const SeriesContext> ctx) {
    SeriesContext tc = *ctx;
    tc.pmax = 0;
    tc.qmax = pmax * ctx->qmax;
    tc.ymin = (pmax + 1) * ctx->ymin;
    tc.ymax = (pmax + 1) * ctx->ymax;
    auto table_ctx = std::make_shared<const SeriesContext>(tc);
    Series c2 = ell_c2(table_ctx);
    assert_y_interior(c2, "dmvv_rhs table");
    return dmvv_rhs_from_table(coefficient_table(c2), pmax, ctx);
}

VerificationReport verify_dmvv(int pmax, int qmax, int tspan, int d1, int d2) {
    auto t0 = std::chrono::steady_clock::now();
    int slack = dmvv_slack(pmax, qmax);
    if (tspan <= slack)
        throw std::invalid_argument("verify_dmvv: tspan " + std::to_string(tspan) +
                                    " must exceed the slack " + std::to_string(slack));
    auto ctx = dmvv_context(pmax, qmax, tspan, d1, d2);

    VerificationReport rep;
    rep.identity = "dmvv";
    rep.computation_window = *ctx;
    rep.verify_qmax = qmax;  // dq == 1
    rep.verify_tspan = tspan - slack;

    Series lhs = dmvv_lhs(pmax, ctx);
    Series rhs = dmvv_rhs(pmax, ctx);
    assert_y_interior(lhs, "dmvv lhs");
    assert_y_interior(rhs, "dmvv rhs");
    compare_on_window(lhs, rhs, rep.verify_qmax, rep.verify_tspan, rep);
    rep.runtime_seconds = seconds_since(t0);
    return rep;
}

VerificationReport verify_mckay_ak(int k, int qmax_num) {
    if (k < 1 || k > 6) throw std::invalid_argument("verify_mckay_ak: need 1 <= k <= 6");
    auto t0 = std::chrono::steady_clock::now();

    SeriesContext c;
    c.dq = 2 * k * k;
    c.dy = 2 * k * k;
    c.pmax = 0;
    c.qmax = qmax_num;
    int qint = qmax_num / c.dq + 1;
    int vt = k * (qint + 2);
    int slack = 2 * k * (qint + 2);
    c.tmin = -(vt + slack);
    c.tmax = vt + slack;
    int yspan = 2 * c.dy * (qint + 3);
    c.ymin = -yspan;
    c.ymax = yspan;
    c.validate();
    auto ctx = std::make_shared<const SeriesContext>(c);

    VerificationReport rep;
    rep.identity = "mckay-ak";
    rep.computation_window = c;
    rep.verify_qmax = qmax_num;
    rep.verify_tspan = vt;

    Series orb = ell_orb_cyclic(k, ctx);
    Series res = ell_ak_resolution(k, ctx);
    assert_y_interior(orb, "mckay orb side");
    assert_y_interior(res, "mckay resolution side");
    compare_on_window(orb, res, rep.verify_qmax, rep.verify_tspan, rep);
    rep.runtime_seconds = seconds_since(t0);
    return rep;
}

VerificationReport verify_orb_hilb(int n, int qmax_int, OrbNormalization norm) {
    if (n < 1 || n > 3) throw std::invalid_argument("verify_orb_hilb: need 1 <= n <= 3");
    auto t0 = std::chrono::steady_clock::now();

    long L = lcm_up_to(n);
    SeriesContext c;
    c.dq = static_cast<int>(2 * L * L);
    c.dy = static_cast<int>(2 * L * L);
    c.pmax = 0;
    c.qmax = qmax_int * c.dq;
    // Fractional q-shifts (beta = s/b) let truncation noise travel much
    // further in t than in the integer-weight case, roughly 3 t-units per
    // integer q-order and factor; the slack reflects that.
    int vt = n * (qmax_int + 1);
    int slack = n * (3 * qmax_int + 8);
    c.tmin = -(vt + slack);
    c.tmax = vt + slack;
    int yspan = 2 * c.dy * (n + qmax_int + 2);
    c.ymin = -yspan;
    c.ymax = yspan;
    c.validate();
    auto ctx = std::make_shared<const SeriesContext>(c);

    VerificationReport rep;
    rep.identity = "orb-hilb";
    rep.computation_window = c;
    rep.verify_qmax = c.qmax;
    rep.verify_tspan = vt;

    Series orb = ell_orb_sym(n, ctx, norm);
    Series hilb = ell_hilb(n, ctx);
    assert_y_interior(hilb, "orb-hilb hilbert side");
    if (norm == OrbNormalization::YShift) assert_y_interior(orb, "orb-hilb orbifold side");
    compare_on_window(orb, hilb, rep.verify_qmax, rep.verify_tspan, rep);
    rep.runtime_seconds = seconds_since(t0);
    return rep;
}

}  // namespace ellgen
