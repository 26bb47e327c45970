// Cones, star subdivisions, piecewise polynomial rings, the localization
// pushforward with exact polynomial-division verification, and the numeric
// theta summation identity over cone subdivisions.
#ifndef ELLGEN_FAN_HPP
#define ELLGEN_FAN_HPP

#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ellgen/field.hpp"

namespace ellgen::fan {

using ZVec = std::vector<long>;
using QVec = std::vector<Rational>;

/// Sparse polynomial over Q in a fixed number of ambient dual coordinates.
class Poly {
public:
    explicit Poly(int nvars) : nvars_(nvars) {}
    static Poly constant(int nvars, const Rational& c);
    /// The linear form sum a_i x_i.
    static Poly linear(const QVec& a);

    int nvars() const { return nvars_; }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add_term(std::vector<int> expo, const Rational& c);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    bool operator==(const Poly& b) const { return nvars_ == b.nvars_ && terms_ == b.terms_; }

    Rational eval(const QVec& point) const;
    std::string str() const;

    /// Exact division by a linear form; returns false if not divisible.
    bool divide_by_linear(const QVec& form, Poly& quotient) const;

private:
    int nvars_;
    std::map<std::vector<int>, Rational> terms_;
};

/// Full-dimensional simplicial cone: columns of `gens` are the primitive
/// ray generators, rows of `duals` the linear forms dual to them.
struct Cone {
    int dim = 0;
    std::vector<ZVec> gens;   // gens[i] is the i-th generator
    std::vector<QVec> duals;  // duals[i](gens[j]) = delta_ij
    bool smooth = false;      // |det gens| == 1
};

/// Builds a cone from generators, computing dual forms and the smooth flag.
/// Throws if the generators are linearly dependent or not primitive.
Cone make_cone(std::vector<ZVec> gens);

struct Subdivision {
    Cone base;
    ZVec ray;                  // the added ray
    std::vector<Cone> cones;   // full-dimensional refining cones
    std::vector<long> d_alpha; // lattice multiplicities (1 for star subdivisions)
};

/// Star subdivision of `base` at a primitive ray in its (relative) interior
/// or the interior of a face.
Subdivision star_subdivide(const Cone& base, const ZVec& ray);

/// Checks that the subdivision covers the base with disjoint interiors by
/// sampling random rational points; throws on violation.
void validate_subdivision(const Subdivision& sub, int samples = 50, unsigned seed = 1);

/// A polynomial per full-dimensional cone of a subdivision.
struct PiecewisePolynomial {
    std::vector<Poly> per_cone;  // aligned with Subdivision::cones
};

/// Verifies that restrictions to shared faces coincide, by evaluating on a
/// spanning set of face lattice points; throws on disagreement.
void check_face_agreement(const Subdivision& sub, const PiecewisePolynomial& f, int degree);

/// The localization pushforward: sum over subdivision cones of
/// f_C * prod(base dual forms) / prod(cone dual forms), verified by exact
/// polynomial division; throws if the sum is not a polynomial.
Poly pushforward(const Subdivision& sub, const PiecewisePolynomial& f);

/// Restriction of a polynomial on the base to every subdivision cone.
PiecewisePolynomial pullback(const Poly& g, const Subdivision& sub);

/// Per-ray data for the theta summation identity: character shifts (a, b)
/// and the divisor coefficient entering the z-argument as (-coef+1) z.
struct RayThetaData {
    Rational shift_a{0}, shift_b{0};
    Rational coef{0};
};

struct ThetaIdentityResult {
    double max_residual;
    int samples;
};

/// Numeric check of the blow-up theta identity: the localization sum of
/// four-theta factors over the subdivision cones against the single product
/// over the base cone.  `base_data` gives per-base-ray data; the exceptional
/// ray coefficient is fixed by the crepancy relation
/// (-coef_E + 1) = sum over the subdivided rays of (-coef_j + 1), and its
/// character shifts follow by linearity.
ThetaIdentityResult theta_identity_check(const Subdivision& sub,
                                         const std::vector<RayThetaData>& base_data,
                                         int samples, std::complex<double> tau,
                                         std::complex<double> z, int L, unsigned seed = 7);

/// JSON (de)serialization of cones/subdivisions: {"generators": [[..],..]}.
std::string cone_to_json(const Cone& c);
Cone cone_from_json(const std::string& text);
std::string subdivision_to_json(const Subdivision& s);

}  // namespace ellgen::fan

#endif
