#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "../vendor/doctest.h"

#include <random>

#include "ellgen/series.hpp"

using namespace ellgen;

namespace {

std::shared_ptr<const SeriesContext> small_ctx() {
    SeriesContext c;
    c.dq = 2;
    c.dy = 2;
    c.pmax = 3;
    c.qmax = 8;
    c.ymin = -10;
    c.ymax = 10;
    c.tmin = -6;
    c.tmax = 6;
    c.validate();
    return std::make_shared<const SeriesContext>(c);
}

Series random_series(std::mt19937& rng, std::shared_ptr<const SeriesContext> ctx,
                     int nterms) {
    std::uniform_int_distribution<int> num(-4, 4);
    Series s(ctx);
    for (int i = 0; i < nterms; ++i) {
        Expo e;
        e.p() = static_cast<int16_t>(std::uniform_int_distribution<int>(0, ctx->pmax)(rng));
        e.q() = static_cast<int16_t>(std::uniform_int_distribution<int>(0, ctx->qmax)(rng));
        e.y() = static_cast<int16_t>(std::uniform_int_distribution<int>(ctx->ymin, ctx->ymax)(rng));
        e.t1() = static_cast<int16_t>(std::uniform_int_distribution<int>(ctx->tmin, ctx->tmax)(rng));
        e.t2() = static_cast<int16_t>(std::uniform_int_distribution<int>(ctx->tmin, ctx->tmax)(rng));
        s.add_term(e, FieldElement(num(rng), 1 + (i % 3)));
    }
    return s;
}

// A random invertible "unit": invertible leading monomial plus junk that is
// strictly higher in the graded order.  The junk differs from the lead only
// in the one-sided directions p and q, so truncating the inverse in the
// two-sided windows (y, t) loses nothing and u * 1/u == 1 holds exactly.
Series random_unit(std::mt19937& rng, std::shared_ptr<const SeriesContext> ctx) {
    std::uniform_int_distribution<int> num(-3, 3);
    Expo lead;
    lead.t1() = static_cast<int16_t>(std::uniform_int_distribution<int>(-1, 1)(rng));
    lead.y() = static_cast<int16_t>(std::uniform_int_distribution<int>(-3, 3)(rng));
    int n = num(rng);
    Series s = Series::monomial(ctx, lead, FieldElement(n == 0 ? 1 : n));
    for (int i = 0; i < 4; ++i) {
        Expo e = lead;
        e.p() = static_cast<int16_t>(1 + (i % ctx->pmax));
        e.q() = static_cast<int16_t>(std::uniform_int_distribution<int>(0, 4)(rng));
        s.add_term(e, FieldElement(num(rng)));
    }
    return s;
}

Expo make_expo(int p, int q, int y, int t1, int t2) {
    Expo e;
    e.p() = static_cast<int16_t>(p);
    e.q() = static_cast<int16_t>(q);
    e.y() = static_cast<int16_t>(y);
    e.t1() = static_cast<int16_t>(t1);
    e.t2() = static_cast<int16_t>(t2);
    return e;
}

}  // namespace

TEST_CASE("context validation") {
    SeriesContext c;
    c.d1 = 2;
    c.d2 = 2;
    CHECK_THROWS(c.validate());
    c.d2 = -1;
    CHECK_THROWS(c.validate());
    c.d2 = 3;
    CHECK_NOTHROW(c.validate());
    c.dq = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("ring axioms on random series") {
    auto ctx = small_ctx();
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        Series a = random_series(rng, ctx, 12);
        Series b = random_series(rng, ctx, 12);
        Series c = random_series(rng, ctx, 12);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Series::zero(ctx));
        CHECK(a * Series::constant(ctx, FieldElement(1)) == a);
    }
}

TEST_CASE("associativity of multiplication can fail across windows, so it is "
          "only guaranteed for window-closed supports") {
    // (a*b)*c == a*(b*c) holds when no intermediate product leaves the
    // window; enforce it for non-negative exponent supports.
    SeriesContext cc;
    cc.dq = 1;
    cc.dy = 1;
    cc.pmax = 6;
    cc.qmax = 12;
    cc.ymin = 0;
    cc.ymax = 24;
    cc.tmin = 0;
    cc.tmax = 12;
    cc.validate();
    auto ctx = std::make_shared<const SeriesContext>(cc);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        auto rnd = [&]() {
            Series s(ctx);
            for (int i = 0; i < 8; ++i)
                s.add_term(make_expo(std::uniform_int_distribution<int>(0, 2)(rng),
                                     std::uniform_int_distribution<int>(0, 4)(rng),
                                     std::uniform_int_distribution<int>(0, 8)(rng),
                                     std::uniform_int_distribution<int>(0, 4)(rng),
                                     std::uniform_int_distribution<int>(0, 4)(rng)),
                           FieldElement(num(rng)));
            return s;
        };
        Series a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("invert_unit is a two-sided inverse on random units") {
    auto ctx = small_ctx();
    std::mt19937 rng(9);
    Series one = Series::constant(ctx, FieldElement(1));
    for (int trial = 0; trial < 200; ++trial) {
        Series u = random_unit(rng, ctx);
        Series v = invert_unit(u);
        CHECK(u * v == one);
        CHECK(v * u == one);
    }
}

TEST_CASE("binomial inverse times (1 - M) is 1") {
    auto ctx = small_ctx();
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        Expo m = make_expo(std::uniform_int_distribution<int>(0, 1)(rng),
                           std::uniform_int_distribution<int>(0, 3)(rng),
                           std::uniform_int_distribution<int>(-2, 2)(rng),
                           std::uniform_int_distribution<int>(-2, 2)(rng),
                           std::uniform_int_distribution<int>(-2, 2)(rng));
        int n = num(rng);
        FieldElement c(n == 0 ? 2 : n);
        if (m.is_zero() && c.is_one()) continue;  // a genuine pole of 1/(1-M)
        Series inv = expand_binomial_inverse(ctx, m, c);
        Series one_minus = Series::constant(ctx, FieldElement(1)) - Series::monomial(ctx, m, c);
        // The product may be short of 1 only by terms outside the window;
        // inside the window it must be exactly 1 except at window-boundary
        // artifacts of the truncated geometric tail.
        Series prod = one_minus * inv;
        CHECK(prod.coeff(Expo{}) == FieldElement(1));
        for (const auto& [e, v] : prod.terms()) {
            if (e.is_zero()) continue;
            // any surviving term must touch a window edge in the expansion
            // direction of M
            bool edge = e.p() == ctx->pmax || e.q() == ctx->qmax || e.q() == 0 ||
                        e.y() == ctx->ymin || e.y() == ctx->ymax ||
                        e.t1() == ctx->tmin || e.t1() == ctx->tmax ||
                        e.t2() == ctx->tmin || e.t2() == ctx->tmax;
            CHECK(edge);
        }
    }
}

TEST_CASE("binomial inverse direction policy: mixed-sign t uses delta") {
    auto ctx = small_ctx();  // d1=3, d2=2
    // M = t1 * t2^{-1}: delta = 3 - 2 = 1 > 0, expand geometrically.
    Series g = expand_binomial_inverse(ctx, make_expo(0, 0, 0, 1, -1), FieldElement(1));
    CHECK(g.coeff(Expo{}) == FieldElement(1));
    CHECK(g.coeff(make_expo(0, 0, 0, 1, -1)) == FieldElement(1));
    CHECK(g.coeff(make_expo(0, 0, 0, -1, 1)) == FieldElement(0));
    // M = t1^{-1} * t2: delta = -1 < 0, expand in M^{-1}: -M^{-1}/(1-M^{-1}).
    Series h = expand_binomial_inverse(ctx, make_expo(0, 0, 0, -1, 1), FieldElement(1));
    CHECK(h.coeff(Expo{}) == FieldElement(0));
    CHECK(h.coeff(make_expo(0, 0, 0, 1, -1)) == -FieldElement(1));
}

TEST_CASE("scalar binomial inverse is the field inverse") {
    auto ctx = small_ctx();
    Series s = expand_binomial_inverse(ctx, Expo{}, FieldElement(3));
    // 1/(1-3) = -1/2
    CHECK(s == Series::constant(ctx, FieldElement(-1, 2)));
}

TEST_CASE("exp of log1m accumulation reproduces the product") {
    auto ctx = small_ctx();
    // prod (1 - M_i)^{-c_i} for a couple of monomials with p >= 1.
    Series acc = Series::zero(ctx);
    Expo m1 = make_expo(1, 2, 1, 1, 0);
    Expo m2 = make_expo(2, 0, -1, 0, 1);
    log1m_accumulate(acc, m1, FieldElement(1), FieldElement(2));
    log1m_accumulate(acc, m2, FieldElement(1), FieldElement(1));
    Series lhs = exp_series(acc);
    Series rhs = Series::constant(ctx, FieldElement(1));
    Series inv1 = expand_binomial_inverse(ctx, m1, FieldElement(1));
    rhs = rhs * inv1 * inv1;  // exponent c = 2
    rhs = rhs * expand_binomial_inverse(ctx, m2, FieldElement(1));
    CHECK(lhs == rhs);
}

TEST_CASE("exp_series of zero is one; exp is multiplicative") {
    auto ctx = small_ctx();
    CHECK(exp_series(Series::zero(ctx)) == Series::constant(ctx, FieldElement(1)));
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Series a(ctx), b(ctx);
        for (int i = 0; i < 5; ++i) {
            Expo e = make_expo(1 + (i % 2), std::uniform_int_distribution<int>(0, 3)(rng),
                               std::uniform_int_distribution<int>(-2, 2)(rng),
                               std::uniform_int_distribution<int>(-1, 1)(rng), 0);
            a.add_term(e, FieldElement(std::uniform_int_distribution<int>(-3, 3)(rng)));
            Expo f = e;
            f.p() = 1;
            b.add_term(f, FieldElement(std::uniform_int_distribution<int>(-3, 3)(rng)));
        }
        CHECK(exp_series(a + b) == exp_series(a) * exp_series(b));
    }
}

TEST_CASE("q_section picks and rescales divisible exponents") {
    SeriesContext cc;
    cc.dq = 1;
    cc.dy = 2;
    cc.qmax = 9;
    cc.validate();
    auto ctx = std::make_shared<const SeriesContext>(cc);
    Series s(ctx);
    s.add_term(make_expo(0, 0, 0, 0, 0), FieldElement(5));
    s.add_term(make_expo(0, 3, 2, 0, 0), FieldElement(7));
    s.add_term(make_expo(0, 4, 0, 0, 0), FieldElement(11));
    s.add_term(make_expo(0, 6, 0, 1, 0), FieldElement(13));
    Series sec = q_section(s, 3);
    CHECK(sec.coeff(make_expo(0, 0, 0, 0, 0)) == FieldElement(5));
    CHECK(sec.coeff(make_expo(0, 1, 2, 0, 0)) == FieldElement(7));
    CHECK(sec.coeff(make_expo(0, 2, 0, 1, 0)) == FieldElement(13));
    CHECK(sec.size() == 3);
    CHECK(q_section(s, 1) == s);
}

TEST_CASE("at_y1 sums the y direction") {
    auto ctx = small_ctx();
    Series s(ctx);
    s.add_term(make_expo(0, 2, 3, 1, 0), FieldElement(2));
    s.add_term(make_expo(0, 2, -3, 1, 0), FieldElement(5));
    s.add_term(make_expo(1, 0, 1, 0, 0), FieldElement(-1));
    Series c = s.at_y1();
    CHECK(c.coeff(make_expo(0, 2, 0, 1, 0)) == FieldElement(7));
    CHECK(c.coeff(make_expo(1, 0, 0, 0, 0)) == FieldElement(-1));
}

TEST_CASE("JSON round trip is bit-exact and deterministic") {
    auto ctx = small_ctx();
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Series s = random_series(rng, ctx, 25);
        std::string j = series_to_json(s);
        Series back = series_from_json(j);
        CHECK(back == s);
        CHECK(*back.context() == *s.context());
        CHECK(series_to_json(back) == j);  // byte-identical re-dump
    }
}

TEST_CASE("numeric evaluation is multiplicative within tails") {
    auto ctx = small_ctx();
    std::mt19937 rng(29);
    NumericPoint pt;
    pt.p = {0.02, 0.01};
    pt.q = {0.05, -0.03};
    pt.y = {0.9, 0.1};
    pt.t1 = {0.1, 0.05};
    pt.t2 = {-0.08, 0.1};
    // Non-negative supports: all terms dropped at a window edge then carry
    // a high power of a small value, so the tail bounds genuinely cover the
    // discrepancy.  (With negative t exponents and |t| < 1 the dropped
    // products would be large, which is a property of the window, not a bug.)
    std::uniform_int_distribution<int> num(-4, 4);
    auto rnd = [&]() {
        Series s(ctx);
        for (int i = 0; i < 8; ++i)
            s.add_term(make_expo(std::uniform_int_distribution<int>(0, ctx->pmax)(rng),
                                 std::uniform_int_distribution<int>(0, ctx->qmax)(rng),
                                 std::uniform_int_distribution<int>(0, ctx->ymax)(rng),
                                 std::uniform_int_distribution<int>(0, ctx->tmax)(rng),
                                 std::uniform_int_distribution<int>(0, ctx->tmax)(rng)),
                       FieldElement(num(rng), 1 + (i % 3)));
        return s;
    };
    for (int trial = 0; trial < 20; ++trial) {
        Series a = rnd();
        Series b = rnd();
        auto va = evaluate_numeric(a, pt);
        auto vb = evaluate_numeric(b, pt);
        auto vab = evaluate_numeric(a * b, pt);
        // products dropped at the window edge contribute at most the tails
        double tol = 1e-9 + vab.tail_bound + va.tail_bound + vb.tail_bound +
                     std::abs(va.value) * vb.tail_bound + std::abs(vb.value) * va.tail_bound;
        CHECK(std::abs(vab.value - va.value * vb.value) < tol);
    }
}

TEST_CASE("leading exponent respects the graded order") {
    auto ctx = small_ctx();
    Series s(ctx);
    s.add_term(make_expo(1, 0, 0, 0, 0), FieldElement(1));
    s.add_term(make_expo(0, 1, -5, 0, 0), FieldElement(1));
    s.add_term(make_expo(0, 1, 2, -1, 0), FieldElement(1));  // delta = -3
    CHECK(s.leading_exponent() == make_expo(0, 1, 2, -1, 0));
}
