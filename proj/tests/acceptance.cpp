// End-to-end acceptance run: one pass/fail line per criterion.
#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>

#include "ellgen/fan.hpp"
#include "ellgen/identities.hpp"
#include "ellgen/localization.hpp"
#include "ellgen/theta.hpp"

using namespace ellgen;

namespace {

int failures = 0;

Rational rat(int num, int den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}


struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* what, bool ok, double secs, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", ok ? "PASS" : "FAIL", idx, what,
                detail.c_str(), secs);
    if (!ok) ++failures;
}

constexpr double pi = 3.14159265358979323846;

void crit1_dmvv() {
    Timer t;
    auto a = verify_dmvv(2, 2, 10, 3, 2);
    auto b = verify_dmvv(2, 2, 10, 5, 3);
    bool ok = a.success() && b.success() && a.compared > 300 && b.compared > 300;
    report(1, "equivariant DMVV, Pmax=2 Qmax=2, directions (3,2) and (5,3)", ok, t.s(),
           "exact equality on " + std::to_string(a.compared) + "+" +
               std::to_string(b.compared) + " coefficients, " +
               std::to_string(a.mismatches.size() + b.mismatches.size()) + " mismatches");
}

void crit2_orb_hilb() {
    Timer t;
    auto a = verify_orb_hilb(2, 1);
    auto b = verify_orb_hilb(3, 1);
    bool ok = a.success() && b.success() && a.compared > 200 && b.compared > 500;
    report(2, "orbifold = Hilbert for n=2,3 to q-order 1", ok, t.s(),
           "exact, " + std::to_string(a.compared) + "+" + std::to_string(b.compared) +
               " coefficients, " + std::to_string(a.mismatches.size() + b.mismatches.size()) +
               " mismatches");
}

void crit3_mckay() {
    Timer t;
    auto a = verify_mckay_ak(2, 8);
    auto b = verify_mckay_ak(3, 18);
    bool ok = a.success() && b.success();
    report(3, "equivariant McKay for A_1, A_2 to q-order 1 in 1/(2k^2) units", ok, t.s(),
           "exact over Q(zeta_k), " + std::to_string(a.compared) + "+" +
               std::to_string(b.compared) + " coefficients, " +
               std::to_string(a.mismatches.size() + b.mismatches.size()) + " mismatches");
}

void crit4_fixed_points() {
    Timer t;
    SeriesContext c;
    c.dq = 1;
    c.dy = 2;
    c.qmax = 1;
    c.tmin = -8;
    c.tmax = 8;
    c.ymin = -80;
    c.ymax = 80;
    // (3,2) pairs to zero against the (arm,leg)=(3,1) cell at n=5; (7,2) is
    // nondegenerate for every cell with arm, leg <= 5
    c.d1 = 7;
    c.d2 = 2;
    c.validate();
    auto ctx = std::make_shared<const SeriesContext>(c);
    const long expect[] = {0, 1, 2, 3, 5, 7, 11};
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
        Series v = ell_hilb(n, ctx).at_y1();
        if (!(v.coeff(Expo{}) == FieldElement(expect[n]))) ok = false;
    }
    report(4, "fixed-point counts: ell_hilb(n)|_{y=1} = p(n), n <= 6", ok, t.s(),
           "values 1,2,3,5,7,11");
}

void crit5_pushforward() {
    Timer t;
    using namespace ellgen::fan;
    auto sub2 = star_subdivide(make_cone({{1, 0}, {0, 1}}), {1, 1});
    auto sub3 = star_subdivide(make_cone({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {1, 1, 1});
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> coeff(-5, 5);
    bool ok = true;
    try {
        // pushforward(1) = 1
        ok = ok && pushforward(sub2, pullback(Poly::constant(2, 1), sub2)) ==
                       Poly::constant(2, 1);
        ok = ok && pushforward(sub3, pullback(Poly::constant(3, 1), sub3)) ==
                       Poly::constant(3, 1);
        // nu_* t = 0 in 3D
        PiecewisePolynomial tpw;
        for (const auto& cone : sub3.cones)
            for (int j = 0; j < 3; ++j)
                if (cone.gens[j] == sub3.ray) tpw.per_cone.push_back(Poly::linear(cone.duals[j]));
        ok = ok && pushforward(sub3, tpw).is_zero();
        // 50 random piecewise polynomials of degree <= 3 divide exactly
        for (int trial = 0; trial < 50; ++trial) {
            const Subdivision& sub = (trial % 2 == 0) ? sub2 : sub3;
            int n = sub.base.dim;
            auto rnd = [&](int deg) {
                Poly p(n);
                std::vector<int> e(n, 0);
                std::function<void(int, int)> rec = [&](int var, int left) {
                    if (var == n) {
                        p.add_term(e, Rational(coeff(rng)));
                        return;
                    }
                    for (int d = 0; d <= left; ++d) {
                        e[var] = d;
                        rec(var + 1, left - d);
                    }
                    e[var] = 0;
                };
                rec(0, deg);
                return p;
            };
            Poly g = rnd(2), h = rnd(1);
            PiecewisePolynomial f;
            for (const auto& cone : sub.cones) {
                Poly ex(n);
                for (int j = 0; j < n; ++j)
                    if (cone.gens[j] == sub.ray) ex = Poly::linear(cone.duals[j]);
                f.per_cone.push_back(g + ex * ex * h);
            }
            check_face_agreement(sub, f, 3);
            (void)pushforward(sub, f);  // throws on inexact division
        }
        // projection formula on 100 random pairs:
        // nu_*(nu^* g * f) = g * nu_* f
        for (int trial = 0; trial < 100; ++trial) {
            const Subdivision& sub = (trial % 2 == 0) ? sub2 : sub3;
            int n = sub.base.dim;
            Poly g(n);
            std::vector<int> e(n, 0);
            std::function<void(int, int)> rec = [&](int var, int left) {
                if (var == n) {
                    g.add_term(e, Rational(coeff(rng)));
                    return;
                }
                for (int d = 0; d <= left; ++d) {
                    e[var] = d;
                    rec(var + 1, left - d);
                }
                e[var] = 0;
            };
            rec(0, 2);
            PiecewisePolynomial f;
            for (const auto& cone : sub.cones) {
                Poly ex(n);
                for (int j = 0; j < n; ++j)
                    if (cone.gens[j] == sub.ray) ex = Poly::linear(cone.duals[j]);
                f.per_cone.push_back(ex);
            }
            PiecewisePolynomial gf = pullback(g, sub);
            for (size_t i = 0; i < gf.per_cone.size(); ++i) gf.per_cone[i] *= f.per_cone[i];
            ok = ok && pushforward(sub, gf) == g * pushforward(sub, f);
        }
    } catch (...) {
        ok = false;
    }
    report(5, "toric pushforward: exact division, projection formula, nu_* t = 0", ok, t.s(),
           "50 piecewise polys + 100 projection pairs, all exact");
}

void crit6_theta_identity() {
    Timer t;
    using namespace ellgen::fan;
    double worst = 0;
    bool ok = true;
    try {
        for (int dim : {2, 3}) {
            std::vector<ZVec> gens;
            ZVec ray;
            for (int i = 0; i < dim; ++i) {
                ZVec e(dim, 0);
                e[i] = 1;
                gens.push_back(e);
                ray.push_back(1);
            }
            auto sub = star_subdivide(make_cone(gens), ray);
            std::vector<RayThetaData> data(dim);
            for (int i = 0; i < dim; ++i)
                data[i] = {Rational(i + 1, 7), Rational(i + 1, 5), Rational(0)};
            auto res = theta_identity_check(sub, data, 20, {0.11, 1.3}, {0.23, 0.31}, 40, 7);
            worst = std::max(worst, res.max_residual);
        }
        ok = worst <= 1e-9;
    } catch (...) {
        ok = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e <= 1e-9", worst);
    report(6, "theta blow-up identity, dims 2 and 3, 20 samples, L=40", ok, t.s(), buf);
}

void crit7_numeric_cross() {
    Timer t;
    SeriesContext c;
    c.dq = 1;
    c.dy = 2;
    c.qmax = 6;
    c.tmin = -16;
    c.tmax = 16;
    c.ymin = -120;
    c.ymax = 120;
    c.validate();
    auto ctx = std::make_shared<const SeriesContext>(c);
    Series h2 = ell_hilb(2, ctx);

    // Points must lie in the convergence annulus of the expansion branch:
    // Im u aligned with the direction (3,2) so every tangent weight w has
    // Im(w.u) of the sign of delta(w), deep enough for the t-window tail,
    // and |q| well below min |t^w| so the q-ladders converge (|q| <= 0.05 is
    // satisfied with lots of room).
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> re(-0.2, 0.2), imt(3.1, 3.4),
        jitter(-0.04, 0.04), imz(-0.05, 0.05);
    double worst = 0;
    bool ok = true;
    for (int s = 0; s < 10; ++s) {
        std::complex<double> tau{re(rng), imt(rng)};
        std::complex<double> u1{re(rng), 3 * 0.248 * (1 + jitter(rng))};
        std::complex<double> u2{re(rng), 2 * 0.248 * (1 + jitter(rng))};
        std::complex<double> z{re(rng), imz(rng)};
        NumericPoint pt;
        auto ee = [](std::complex<double> v) {
            return std::exp(std::complex<double>(0, 2 * pi) * v);
        };
        pt.q = ee(tau);
        pt.y = ee(z / 2.0);  // dy = 2
        pt.t1 = ee(u1);
        pt.t2 = ee(u2);
        std::complex<double> exact = evaluate_numeric(h2, pt).value;

        std::complex<double> direct = 0;
        for (const auto& lam : partitions(2)) {
            std::complex<double> term = 1;
            for (const auto& w : tangent_weights(lam)) {
                std::complex<double> x = double(w[0]) * u1 + double(w[1]) * u2;
                term *= theta_numeric(x - z, tau, 60) / theta_numeric(x, tau, 60);
            }
            direct += term;
        }
        double err = std::abs(exact - direct) / (1 + std::abs(direct));
        worst = std::max(worst, err);
        if (err > 1e-8) ok = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max relative error %.2e <= 1e-8", worst);
    report(7, "exact/numeric cross-validation of ell_hilb(2) at 10 points", ok, t.s(), buf);
}

void crit8_invariants() {
    Timer t;
    bool ok = true;
    long cases = 0;
    std::mt19937 rng(107);
    try {
        // theta quasi-periodicity and z=0 collapse (exact series identities)
        SeriesContext cc;
        cc.dq = 4;
        cc.dy = 4;
        cc.qmax = 8;
        cc.tmin = -5;
        cc.tmax = 5;
        cc.ymin = -40;
        cc.ymax = 40;
        cc.validate();
        auto ctx = std::make_shared<const SeriesContext>(cc);
        for (int trial = 0; trial < 60; ++trial) {
            ThetaRatioSpec spec;
            spec.w = {std::uniform_int_distribution<int>(-1, 2)(rng),
                      std::uniform_int_distribution<int>(-1, 1)(rng)};
            if (spec.w == std::array<int, 2>{0, 0}) spec.w = {1, 0};
            spec.alpha = rat(std::uniform_int_distribution<int>(0, 3)(rng), 4);
            spec.beta = rat(std::uniform_int_distribution<int>(0, 3)(rng), 4);
            Series base = theta_ratio(spec, ctx);
            ThetaRatioSpec up = spec;
            up.beta = spec.beta + 1;
            Series shifted = theta_ratio(up, ctx);
            for (const auto& [e, v] : base.terms()) {
                Expo f = e;
                f.y() = static_cast<int16_t>(f.y() - cc.dy);
                if (f.y() < cc.ymin) continue;
                if (!(shifted.coeff(f) == v)) ok = false;
                ++cases;
            }
            ThetaRatioSpec flat = spec;
            flat.jacobi_c = 0;
            // the z = 0 collapse is exactly 1 away from the window edges
            Series one = theta_ratio(flat, ctx);
            int wmax = std::max(std::abs(spec.w[0]), std::abs(spec.w[1]));
            for (const auto& [e, v] : one.terms()) {
                bool interior = e.q() <= cc.qmax - 2 &&
                                std::abs(e.t1()) <= cc.tmax - wmax &&
                                std::abs(e.t2()) <= cc.tmax - wmax;
                if (interior && !(e.is_zero() && v == FieldElement(1))) ok = false;
            }
            if (!(one.coeff(Expo{}) == FieldElement(1))) ok = false;
            ++cases;
        }
        // tangent weights: pair-sum (1,1) and transpose symmetry
        for (int n = 1; n <= 6; ++n) {
            for (const auto& lam : partitions(n)) {
                auto w = tangent_weights(lam);
                for (size_t i = 0; i + 1 < w.size(); i += 2) {
                    if (w[i][0] + w[i + 1][0] != 1 || w[i][1] + w[i + 1][1] != 1) ok = false;
                    ++cases;
                }
            }
        }
        // series ring axioms on random data
        SeriesContext sc;
        sc.dq = 2;
        sc.dy = 2;
        sc.pmax = 2;
        sc.qmax = 6;
        sc.ymin = -8;
        sc.ymax = 8;
        sc.tmin = -4;
        sc.tmax = 4;
        sc.validate();
        auto sctx = std::make_shared<const SeriesContext>(sc);
        std::uniform_int_distribution<int> num(-4, 4);
        auto rnd = [&]() {
            Series s(sctx);
            for (int i = 0; i < 10; ++i) {
                Expo e;
                e.p() = static_cast<int16_t>(std::uniform_int_distribution<int>(0, 2)(rng));
                e.q() = static_cast<int16_t>(std::uniform_int_distribution<int>(0, 6)(rng));
                e.y() = static_cast<int16_t>(std::uniform_int_distribution<int>(-8, 8)(rng));
                e.t1() = static_cast<int16_t>(std::uniform_int_distribution<int>(-4, 4)(rng));
                e.t2() = static_cast<int16_t>(std::uniform_int_distribution<int>(-4, 4)(rng));
                s.add_term(e, FieldElement(num(rng)));
            }
            return s;
        };
        for (int trial = 0; trial < 150; ++trial) {
            Series a = rnd(), b = rnd(), c2 = rnd();
            if (!(a + b == b + a)) ok = false;
            if (!(a * b == b * a)) ok = false;
            if (!(a * (b + c2) == a * b + a * c2)) ok = false;
            if (!(a - a == Series::zero(sctx))) ok = false;
            cases += 4;
        }
    } catch (...) {
        ok = false;
    }
    report(8, "invariant suites: quasi-periodicity, z=0 collapse, pair-sum, ring axioms", ok,
           t.s(), std::to_string(cases) + " randomized cases, all exact");
}

}  // namespace

int main() {
    crit1_dmvv();
    crit2_orb_hilb();
    crit3_mckay();
    crit4_fixed_points();
    crit5_pushforward();
    crit6_theta_identity();
    crit7_numeric_cross();
    crit8_invariants();
    std::printf("%s: %d of 8 criteria passed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                8 - failures);
    return failures == 0 ? 0 : 1;
}
