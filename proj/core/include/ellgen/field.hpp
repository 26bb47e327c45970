// Exact coefficient arithmetic: arbitrary-precision rationals and the
// cyclotomic fields Q(zeta_N), represented modulo the N-th cyclotomic
// polynomial.  All operations are exact; complex embeddings are provided
// for numeric cross-checks.
#ifndef ELLGEN_FIELD_HPP
#define ELLGEN_FIELD_HPP

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ellgen {

using Rational = mpq_class;
using Integer = mpz_class;

/// Euler totient.
unsigned euler_phi(unsigned n);

/// Coefficients of the N-th cyclotomic polynomial Phi_N (monic, degree
/// phi(N)); coeffs[i] is the coefficient of x^i.
std::vector<Integer> cyclotomic_polynomial(unsigned n);

/// An element of Q(zeta_N).  order()==1 means a plain rational.  Elements
/// of different orders may be combined; they are lifted to the lcm order,
/// subject to a global order cap (default 48).
class FieldElement {
public:
    FieldElement() : order_(1), c_(1, Rational(0)) {}
    FieldElement(long num, long den = 1);
    explicit FieldElement(const Rational& r) : order_(1), c_(1, r) { c_[0].canonicalize(); }

    /// zeta_n^power.
    static FieldElement zeta(unsigned n, long power = 1);
    /// e^{2 pi i a} for rational a (a root of unity of order den(a)).
    static FieldElement root_of_unity(const Rational& a);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Value as a rational; requires is_rational().
    Rational rational_value() const;

    FieldElement operator-() const;
    FieldElement inverse() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    /// Lift into Q(zeta_m); m must be a multiple of order().
    FieldElement lifted(unsigned m) const;

    /// Numeric embedding with zeta_N -> exp(2 pi i / N).  Accurate to
    /// roughly double precision (~1e-15 relative for desk-scale orders).
    std::complex<double> embed() const;

    /// "p/q" for rationals, "c0 + c1*z + ...; N=<order>" for cyclotomics.
    std::string str() const;
    static FieldElement from_string(const std::string& s);

    /// Cap on the cyclotomic order reachable by lcm lifting.
    static unsigned order_cap();
    static void set_order_cap(unsigned cap);

private:
    unsigned order_;
    std::vector<Rational> c_;  // size euler_phi(order_), basis 1, z, ..., z^{phi-1}

    FieldElement(unsigned order, std::vector<Rational> c) : order_(order), c_(std::move(c)) {}
    static FieldElement make_reduced(unsigned order, std::vector<Rational> raw);
};

inline FieldElement operator*(const Rational& r, const FieldElement& a) {
    return FieldElement(r) * a;
}

}  // namespace ellgen

#endif
