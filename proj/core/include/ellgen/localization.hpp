// Fixed-point data and localization sums: partitions and tangent weights
// for the Hilbert scheme of points on C^2, commuting-pair orbifold sums for
// symmetric products, and toric fixed-point data for A_{k-1} resolutions.
#ifndef ELLGEN_LOCALIZATION_HPP
#define ELLGEN_LOCALIZATION_HPP

#include <array>
#include <utility>
#include <vector>

#include "ellgen/series.hpp"
#include "ellgen/theta.hpp"

namespace ellgen {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive
    int n() const;
    std::string str() const;
};

/// All partitions of n, deterministic lexicographically-descending order.
std::vector<Partition> partitions(int n);

using Weight = std::array<int, 2>;

/// Tangent weights of the Hilbert scheme at the monomial ideal of lambda:
/// per cell the pair (leg+1, -arm) and (-leg, arm+1); 2n weights in total.
std::vector<Weight> tangent_weights(const Partition& lambda);

/// One-fixed-point localization of the elliptic genus of C^2 with the
/// standard torus action: theta_ratio((1,0)) * theta_ratio((0,1)).
Series ell_c2(std::shared_ptr<const SeriesContext> ctx);

/// Localization sum over partitions of n.
Series ell_hilb(int n, std::shared_ptr<const SeriesContext> ctx);

/// Character data of the abelian group generated by a commuting pair on one
/// of its orbits: the pairs (lambda(g), lambda(h)) in (Q/Z)^2, one per
/// character (the action is regular, so there are orbit-size many).
struct OrbitCharacters {
    int orbit_size;
    std::vector<std::pair<Rational, Rational>> chars;
};

struct CommutingPair {
    std::vector<int> g, h;  // permutations of {0..n-1}
    std::vector<OrbitCharacters> orbits;
};

/// All ordered commuting pairs in S_n with their orbit-character data.
std::vector<CommutingPair> commuting_pairs(int n);

/// Normalization convention for the orbifold normal-direction factors.
enum class OrbNormalization {
    YShift,  // multiply each factor by y^{c * lambda(h)}
    None,    // omit the factor (the rejected reading)
};

/// Orbifold elliptic genus of ((C^2)^n, S_n) localized at the origin.
Series ell_orb_sym(int n, std::shared_ptr<const SeriesContext> ctx,
                   OrbNormalization norm = OrbNormalization::YShift);

/// Fixed-point data for the minimal resolution of the A_{k-1} singularity:
/// per maximal cone the two dual weights expressed in (u1, u2).
struct ToricFixedPoint {
    std::array<Weight, 2> weights;
};
std::vector<ToricFixedPoint> ak_fixed_data(int k);

/// Both sides of the classical equivariant McKay correspondence for the
/// cyclic A_{k-1} case, restricted to the one-parameter circle inside SU(2)
/// (t acts as (t x, t^{-1} y)); the single surviving parameter lives in the
/// t1 slot of the context.
Series ell_ak_resolution(int k, std::shared_ptr<const SeriesContext> ctx);
Series ell_orb_cyclic(int k, std::shared_ptr<const SeriesContext> ctx,
                      OrbNormalization norm = OrbNormalization::YShift);

}  // namespace ellgen

#endif
