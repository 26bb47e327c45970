// Assembly and verification of the headline identities: the equivariant
// DMVV product formula for Hilbert schemes of points on C^2, the McKay
// correspondence for the A_{k-1} singularities, and the orbifold/Hilbert
// comparison for symmetric products.
#ifndef ELLGEN_IDENTITIES_HPP
#define ELLGEN_IDENTITIES_HPP

#include <memory>
#include <string>
#include <vector>

#include "ellgen/localization.hpp"
#include "ellgen/series.hpp"

namespace ellgen {

/// Expansion coefficients c(m, l, k) of a p-free series: q-exponent
/// numerator m, y-exponent numerator l, t-exponents k1, k2.
struct CoefficientTable {
    struct Entry {
        int m, l, k1, k2;
        FieldElement value;
    };
    std::vector<Entry> entries;
    std::shared_ptr<const SeriesContext> ctx;
};

CoefficientTable coefficient_table(const Series& a);

struct Mismatch {
    Expo where;
    std::string lhs, rhs;
};

struct VerificationReport {
    std::string identity;
    SeriesContext computation_window;
    // verification window: q numerator <= vq, |t| <= vt (inclusive)
    int verify_qmax = 0;
    int verify_tspan = 0;
    long compared = 0;
    std::vector<Mismatch> mismatches;
    double runtime_seconds = 0.0;
    unsigned seed = 0;

    bool success() const { return mismatches.empty(); }
    std::string to_json() const;
};

/// 1 + sum_{n=1}^{Pmax} p^n Ell((C^2)^[n]); the constant term 1 is the
/// n = 0 stratum, matching the product side's unit normalization.
Series dmvv_lhs(int pmax, std::shared_ptr<const SeriesContext> ctx);

/// prod_{m>=0, n>0, l, k} (1 - p^n q^m y^l t^k)^{-c(nm, l, k)} where the
/// c table is the expansion of Ell(C^2).  The table must cover q-exponents
/// up to pmax * ctx->qmax.
Series dmvv_rhs_from_table(const CoefficientTable& table, int pmax,
                           std::shared_ptr<const SeriesContext> ctx);
Series dmvv_rhs(int pmax, std::shared_ptr<const SeriesContext> ctx);

/// Builds the computation context for a DMVV run: integer q-exponents,
/// half-integer y-exponents, t in [-tspan, tspan].
std::shared_ptr<const SeriesContext> dmvv_context(int pmax, int qmax, int tspan,
                                                  int d1 = 3, int d2 = 2);

/// t-window slack for the DMVV comparison: pmax * qmax * max |weight
/// component| over tangent weights at partitions of size <= pmax.
int dmvv_slack(int pmax, int qmax);

VerificationReport verify_dmvv(int pmax, int qmax, int tspan, int d1 = 3, int d2 = 2);

/// Compares Ell_orb(C^2, Z/k) with Ell of the A_{k-1} resolution up to
/// q-exponent numerator qmax_num in units of 1/(2k^2), on the restricted
/// one-parameter subtorus (see localization.hpp).
VerificationReport verify_mckay_ak(int k, int qmax_num);

/// Compares Ell_orb((C^2)^n, S_n) with Ell((C^2)^[n]) up to integer
/// q-exponent qmax_int.  The rejected normalization (norm = None) is
/// expected to produce mismatches; it is exposed to document the choice.
VerificationReport verify_orb_hilb(int n, int qmax_int,
                                   OrbNormalization norm = OrbNormalization::YShift);

/// Coefficient-by-coefficient comparison of two series on the window
/// q <= vq (numerators), |t1|,|t2| <= vt; fills `compared`/`mismatches`.
void compare_on_window(const Series& lhs, const Series& rhs, int vq, int vt,
                       VerificationReport& report);

}  // namespace ellgen

#endif
