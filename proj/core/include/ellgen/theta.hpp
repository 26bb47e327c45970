// Exact q-expansions of Jacobi theta ratios with rational characteristic
// shifts, plus high-precision numeric theta evaluation.  The convention is
// the product form
//   theta(v,tau) = q^{1/8} (2 sin pi v) prod_{l>=1} (1-q^l)(1-q^l e^{2pi i v})(1-q^l e^{-2pi i v})
// with q = e^{2 pi i tau}.  Ratios never materialize the q^{1/8} factors
// (they cancel identically).
#ifndef ELLGEN_THETA_HPP
#define ELLGEN_THETA_HPP

#include <array>
#include <complex>

#include "ellgen/series.hpp"

namespace ellgen {

// One factor theta(x + alpha - beta*tau - c z) / theta(x + alpha - beta*tau)
// with e^{2 pi i x} = t1^{w1} t2^{w2}.
struct ThetaRatioSpec {
    std::array<int, 2> w{0, 0};   // weight of the t-monomial standing for e^{2 pi i x}
    Rational alpha{0};            // shift contributing the root of unity e^{2 pi i alpha}
    Rational beta{0};             // the -beta*tau shift, contributing q^{-beta}
    Rational jacobi_c{1};         // multiple of z subtracted in the numerator
    bool include_y_shift = false; // multiply by the normalization y^{c*beta}
};

/// Exact truncated expansion of the ratio.  Requires ctx->dq divisible by
/// den(beta), ctx->dy divisible by 2*den(c) and by den(c*beta).
Series theta_ratio(const ThetaRatioSpec& spec, std::shared_ptr<const SeriesContext> ctx);

/// Truncated product value of theta(v, tau); requires Im(tau) > 0.
std::complex<double> theta_numeric(std::complex<double> v, std::complex<double> tau, int L);

/// theta'(0, tau) = 2 pi q^{1/8} prod (1-q^l)^3.
std::complex<double> theta_prime0_numeric(std::complex<double> tau, int L);

/// The four-theta divisor factor
///   theta(v - (-a+1) z) theta(z) / (theta(v - z) theta((-a+1) z))
/// at v = x + alpha - beta*tau.  Returns 1 when |z| < 1e-14 (removable
/// limit); throws if a denominator vanishes at the sample point.
std::complex<double> relative_factor_numeric(std::complex<double> x, const Rational& alpha,
                                             const Rational& beta, const Rational& a,
                                             std::complex<double> z, std::complex<double> tau,
                                             int L);

}  // namespace ellgen

#endif
