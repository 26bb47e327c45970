// Sparse truncated multivariate Laurent series in (p, q, y, t1, t2) with
// fractional exponent lattices for q and y, explicit per-variable windows,
// and a declared expansion direction for mixed-sign t-monomials.
#ifndef ELLGEN_SERIES_HPP
#define ELLGEN_SERIES_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>

#include "ellgen/field.hpp"

namespace ellgen {

// Exponent numerators, in the order p, q, y, t1, t2.  q is in units of
// 1/D_q, y in units of 1/D_y, the rest are integers.
struct Expo {
    std::array<int16_t, 5> e{0, 0, 0, 0, 0};

    int16_t& p() { return e[0]; }
    int16_t& q() { return e[1]; }
    int16_t& y() { return e[2]; }
    int16_t& t1() { return e[3]; }
    int16_t& t2() { return e[4]; }
    int16_t p() const { return e[0]; }
    int16_t q() const { return e[1]; }
    int16_t y() const { return e[2]; }
    int16_t t1() const { return e[3]; }
    int16_t t2() const { return e[4]; }

    bool operator==(const Expo& o) const { return e == o.e; }
    Expo operator+(const Expo& o) const {
        Expo r;
        for (int i = 0; i < 5; ++i) r.e[i] = static_cast<int16_t>(e[i] + o.e[i]);
        return r;
    }
    Expo operator-() const {
        Expo r;
        for (int i = 0; i < 5; ++i) r.e[i] = static_cast<int16_t>(-e[i]);
        return r;
    }
    bool is_zero() const { return e == std::array<int16_t, 5>{0, 0, 0, 0, 0}; }
};

struct ExpoHash {
    size_t operator()(const Expo& x) const {
        uint64_t k = 0;
        for (int i = 0; i < 5; ++i)
            k = (k << 13) ^ (static_cast<uint64_t>(static_cast<uint16_t>(x.e[i])) * 0x9e3779b97f4a7c15ULL);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<size_t>(k);
    }
};

struct SeriesContext {
    int dq = 1;   // q exponents are multiples of 1/dq
    int dy = 2;   // y exponents are multiples of 1/dy
    // inclusive windows, in numerator units
    int pmax = 0;
    int qmax = 0;           // q numerator in [0, qmax]
    int ymin = -64, ymax = 64;
    int tmin = -8, tmax = 8;  // shared by t1 and t2
    int d1 = 3, d2 = 2;       // expansion direction; d1,d2 > 0, d1 != d2

    void validate() const;
    long delta(int k1, int k2) const { return static_cast<long>(d1) * k1 + static_cast<long>(d2) * k2; }
    bool in_window(const Expo& x) const {
        return x.p() >= 0 && x.p() <= pmax && x.q() >= 0 && x.q() <= qmax &&
               x.y() >= ymin && x.y() <= ymax && x.t1() >= tmin && x.t1() <= tmax &&
               x.t2() >= tmin && x.t2() <= tmax;
    }
    bool operator==(const SeriesContext&) const = default;
};

class Series {
public:
    using TermMap = std::unordered_map<Expo, FieldElement, ExpoHash>;

    explicit Series(std::shared_ptr<const SeriesContext> ctx) : ctx_(std::move(ctx)) {}

    static Series zero(std::shared_ptr<const SeriesContext> ctx) { return Series(std::move(ctx)); }
    static Series constant(std::shared_ptr<const SeriesContext> ctx, const FieldElement& c);
    static Series monomial(std::shared_ptr<const SeriesContext> ctx, const Expo& x,
                           const FieldElement& c);

    const std::shared_ptr<const SeriesContext>& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Coefficient at an exponent (zero if absent).
    FieldElement coeff(const Expo& x) const;
    /// Adds c at exponent x; silently drops out-of-window terms.
    void add_term(const Expo& x, const FieldElement& c);

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series operator-() const;
    Series scaled(const FieldElement& c) const;
    Series& operator+=(const Series& b);
    Series& operator*=(const Series& b) { return *this = *this * b; }

    bool operator==(const Series& b) const;

    /// Leading (lowest) exponent in the graded order p, q, delta(t), y,
    /// with a lexicographic tie-break.  Throws on the empty series.
    Expo leading_exponent() const;

    /// Substitute y = 1 exactly (sums coefficients over the y direction).
    Series at_y1() const;

    std::string str(size_t max_terms = 50) const;

private:
    std::shared_ptr<const SeriesContext> ctx_;
    TermMap terms_;
};

/// Multiplicative inverse of a series whose lowest term (graded order) is a
/// monomial with invertible coefficient; product a * invert_unit(a) == 1
/// within the windows.
Series invert_unit(const Series& a);

/// The expansion of 1/(1 - M) for a monomial M = coeff * p^? q^? y^? t^k,
/// following the direction policy: M with positive leading grading (p, then
/// q, then delta(k), then y) is expanded geometrically; otherwise as
/// -M^{-1}/(1 - M^{-1}).  A pure-scalar M is inverted in the field.
Series expand_binomial_inverse(std::shared_ptr<const SeriesContext> ctx, const Expo& m,
                               const FieldElement& coeff);

/// acc + c * sum_{j>=1} M^j / j, truncated; M must have positive p-exponent.
void log1m_accumulate(Series& acc, const Expo& m, const FieldElement& coeff,
                      const FieldElement& multiplicity);

/// exp of a series with zero constant term, all terms with positive
/// p-exponent.
Series exp_series(const Series& a);

/// Picks the coefficients whose q-exponent is divisible by n and rescales
/// q^{nm} -> q^m.  Requires integer q-exponents (dq == 1).
Series q_section(const Series& a, int n);

struct NumericPoint {
    std::complex<double> p{0.0, 0.0};
    std::complex<double> q{0.0, 0.0};
    std::complex<double> y{1.0, 0.0};
    std::complex<double> t1{0.0, 0.0};
    std::complex<double> t2{0.0, 0.0};
};

struct NumericValue {
    std::complex<double> value;
    double tail_bound;  // crude geometric estimate of the truncation tail
};

NumericValue evaluate_numeric(const Series& a, const NumericPoint& pt);

/// JSON dump / load with bit-exact round trip.
std::string series_to_json(const Series& a);
Series series_from_json(const std::string& json_text);

}  // namespace ellgen

#endif
