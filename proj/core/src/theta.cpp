#include "ellgen/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace ellgen {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// floor of a rational
Integer rfloor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// exponent numerator of a rational power for a declared denominator;
// throws if the declared lattice cannot hold it
int scaled_num(const Rational& r, int den, const char* what) {
    Rational s = r * den;
    s.canonicalize();
    if (s.get_den() != 1)
        throw std::invalid_argument(std::string("theta_ratio: context denominator for ") + what +
                                    " does not hold " + r.get_str());
    if (!s.get_num().fits_sint_p())
        throw std::invalid_argument("theta_ratio: exponent numerator overflow");
    long v = s.get_num().get_si();
    if (v < -30000 || v > 30000)
        throw std::invalid_argument("theta_ratio: exponent numerator out of range");
    return static_cast<int>(v);
}

Expo make_expo(int p, int q, int y, int t1, int t2) {
    Expo x;
    x.p() = static_cast<int16_t>(p);
    x.q() = static_cast<int16_t>(q);
    x.y() = static_cast<int16_t>(y);
    x.t1() = static_cast<int16_t>(t1);
    x.t2() = static_cast<int16_t>(t2);
    return x;
}

// 1 - coeff * monomial
Series one_minus(std::shared_ptr<const SeriesContext> ctx, const Expo& m,
                 const FieldElement& coeff) {
    Series s = Series::constant(ctx, FieldElement(1));
    s.add_term(m, -coeff);
    return s;
}

}  // namespace

Series theta_ratio(const ThetaRatioSpec& spec, std::shared_ptr<const SeriesContext> ctx) {
    const Rational c = spec.jacobi_c;

    // reduce beta into [0,1), accumulating the quasi-periodicity factor y^{-c*m}
    Rational beta = spec.beta;
    beta.canonicalize();
    Integer m_shift = rfloor(beta);
    Rational beta_red = beta - Rational(m_shift);
    beta_red.canonicalize();
    if (!m_shift.fits_sint_p()) throw std::invalid_argument("theta_ratio: beta out of range");

    // alpha modulo 1
    Rational alpha = spec.alpha - Rational(rfloor(spec.alpha));
    alpha.canonicalize();

    const int beta_num = scaled_num(beta_red, ctx->dq, "beta");         // q-units of beta
    const int yc = scaled_num(c, ctx->dy, "jacobi_c");                  // y-units of c
    const int yc_half = scaled_num(c / 2, ctx->dy, "jacobi_c/2");

    FieldElement zeta = FieldElement::root_of_unity(alpha);
    FieldElement zeta_inv = zeta.inverse();

    // Z = t^w * zeta * q^{-beta}
    const Expo z_exp = make_expo(0, -beta_num, 0, spec.w[0], spec.w[1]);

    if (beta_red == 0 && spec.w[0] == 0 && spec.w[1] == 0 && alpha == 0)
        throw std::domain_error("theta_ratio: theta pole (argument vanishes mod the lattice)");

    // sin-factor ratio: y^{-c/2} (1 - y^c Z^{-1}) / (1 - Z^{-1})
    Series result = one_minus(ctx, make_expo(0, beta_num, yc, -spec.w[0], -spec.w[1]), zeta_inv);
    result = result * expand_binomial_inverse(ctx, -z_exp, zeta_inv);

    // l-indexed product factors while the q-exponent stays in the window
    for (int l = 1; static_cast<long>(l) * ctx->dq - beta_num <= ctx->qmax; ++l) {
        const int lq = l * ctx->dq;
        // (1 - q^l Z y^{-c}) (1 - q^l Z^{-1} y^{c})
        result = result * one_minus(ctx, make_expo(0, lq - beta_num, -yc, spec.w[0], spec.w[1]), zeta);
        result = result * one_minus(ctx, make_expo(0, lq + beta_num, yc, -spec.w[0], -spec.w[1]), zeta_inv);
        // 1 / [(1 - q^l Z)(1 - q^l Z^{-1})]
        result = result * expand_binomial_inverse(ctx, make_expo(0, lq - beta_num, 0, spec.w[0], spec.w[1]), zeta);
        result = result * expand_binomial_inverse(ctx, make_expo(0, lq + beta_num, 0, -spec.w[0], -spec.w[1]), zeta_inv);
    }

    // y^{-c/2}, the quasi-periodicity factor y^{-c*m}, and optionally y^{c*beta}
    long y_num = -yc_half - m_shift.get_si() * static_cast<long>(yc);
    if (spec.include_y_shift) y_num += scaled_num(c * beta_red, ctx->dy, "c*beta");
    if (y_num < -30000 || y_num > 30000) throw std::invalid_argument("theta_ratio: y shift overflow");
    Series shift = Series::monomial(ctx, make_expo(0, 0, static_cast<int>(y_num), 0, 0), FieldElement(1));
    return result * shift;
}

std::complex<double> theta_numeric(std::complex<double> v, std::complex<double> tau, int L) {
    if (tau.imag() <= 0.0) throw std::domain_error("theta_numeric: Im(tau) must be positive");
    if (L < 1) throw std::invalid_argument("theta_numeric: L must be >= 1");
    const std::complex<double> i2pi(0.0, 2.0 * kPi);
    std::complex<double> q = std::exp(i2pi * tau);
    std::complex<double> val = std::exp(i2pi * tau / 8.0) * 2.0 * std::sin(kPi * v);
    std::complex<double> e = std::exp(i2pi * v);
    std::complex<double> ql(1.0, 0.0);
    for (int l = 1; l <= L; ++l) {
        ql *= q;
        val *= (1.0 - ql) * (1.0 - ql * e) * (1.0 - ql / e);
    }
    return val;
}

std::complex<double> theta_prime0_numeric(std::complex<double> tau, int L) {
    if (tau.imag() <= 0.0) throw std::domain_error("theta_prime0_numeric: Im(tau) must be positive");
    const std::complex<double> i2pi(0.0, 2.0 * kPi);
    std::complex<double> q = std::exp(i2pi * tau);
    std::complex<double> val = 2.0 * kPi * std::exp(i2pi * tau / 8.0);
    std::complex<double> ql(1.0, 0.0);
    for (int l = 1; l <= L; ++l) {
        ql *= q;
        std::complex<double> f = 1.0 - ql;
        val *= f * f * f;
    }
    return val;
}

std::complex<double> relative_factor_numeric(std::complex<double> x, const Rational& alpha,
                                             const Rational& beta, const Rational& a,
                                             std::complex<double> z, std::complex<double> tau,
                                             int L) {
    if (std::abs(z) < 1e-14) return {1.0, 0.0};
    std::complex<double> v = x + alpha.get_d() - beta.get_d() * tau;
    double ca = -a.get_d() + 1.0;
    std::complex<double> num = theta_numeric(v - ca * z, tau, L) * theta_numeric(z, tau, L);
    std::complex<double> den = theta_numeric(v - z, tau, L) * theta_numeric(ca * z, tau, L);
    if (std::abs(den) < 1e-13)
        throw std::domain_error("relative_factor_numeric: pole at sample point; resample");
    return num / den;
}

}  // namespace ellgen
