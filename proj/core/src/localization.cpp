#include "ellgen/localization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ellgen {

int Partition::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string Partition::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ")";
    return os.str();
}

namespace {
void partitions_rec(int n, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition{cur});
        return;
    }
    for (int p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions(int n) {
    if (n < 0) throw std::invalid_argument("partitions: n must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(n, n == 0 ? 1 : n, cur, out);
    return out;
}

std::vector<Weight> tangent_weights(const Partition& lambda) {
    if (lambda.parts.empty()) throw std::invalid_argument("tangent_weights: empty partition");
    const auto& parts = lambda.parts;
    int rows = static_cast<int>(parts.size());
    std::vector<Weight> out;
    out.reserve(2 * static_cast<size_t>(lambda.n()));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < parts[i]; ++j) {
            int arm = parts[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < rows; ++r)
                if (parts[r] > j) ++leg;
            out.push_back({leg + 1, -arm});
            out.push_back({-leg, arm + 1});
        }
    }
    return out;
}

Series ell_c2(std::shared_ptr<const SeriesContext> ctx) {
    ThetaRatioSpec a{{1, 0}};
    ThetaRatioSpec b{{0, 1}};
    return theta_ratio(a, ctx) * theta_ratio(b, ctx);
}

Series ell_hilb(int n, std::shared_ptr<const SeriesContext> ctx) {
    if (n <= 0) throw std::invalid_argument("ell_hilb: n must be positive");
    std::map<Weight, Series> ratio_cache;
    auto ratio = [&](const Weight& w) -> const Series& {
        auto it = ratio_cache.find(w);
        if (it == ratio_cache.end()) {
            ThetaRatioSpec spec{{w[0], w[1]}};
            it = ratio_cache.emplace(w, theta_ratio(spec, ctx)).first;
        }
        return it->second;
    };
    Series total(ctx);
    for (const auto& lambda : partitions(n)) {
        Series term = Series::constant(ctx, FieldElement(1));
        for (const auto& w : tangent_weights(lambda)) {
            if (ctx->delta(w[0], w[1]) == 0)
                throw std::runtime_error("ell_hilb: degenerate weight (" + std::to_string(w[0]) +
                                         "," + std::to_string(w[1]) + ") for partition " +
                                         lambda.str() + " under this direction");
            term = term * ratio(w);
        }
        total += term;
    }
    return total;
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

// order of a permutation restricted to an orbit (the orbit is invariant)
int perm_order_on(const std::vector<int>& p, const std::vector<int>& orbit) {
    int ord = 1;
    std::vector<int> cur = p;
    auto is_id = [&]() {
        for (int i : orbit)
            if (cur[i] != i) return false;
        return true;
    };
    while (!is_id()) {
        cur = compose(p, cur);
        ++ord;
        if (ord > 1000) throw std::logic_error("perm_order_on: runaway");
    }
    return ord;
}

OrbitCharacters orbit_characters(const std::vector<int>& g, const std::vector<int>& h,
                                 const std::vector<int>& orbit) {
    int a = perm_order_on(g, orbit);
    int b = perm_order_on(h, orbit);
    // kernel pairs (i,j) with g^i h^j = id on the orbit, within [0,a) x [0,b)
    std::vector<std::pair<int, int>> kernel;
    std::vector<int> gi(g.size());
    std::iota(gi.begin(), gi.end(), 0);
    for (int i = 0; i < a; ++i) {
        std::vector<int> gihj = gi;
        for (int j = 0; j < b; ++j) {
            bool id = true;
            for (int x : orbit)
                if (gihj[x] != x) { id = false; break; }
            if (id) kernel.emplace_back(i, j);
            gihj = compose(h, gihj);
        }
        gi = compose(g, gi);
    }
    OrbitCharacters out;
    out.orbit_size = static_cast<int>(orbit.size());
    // characters (r/a, s/b) that kill the kernel
    for (int r = 0; r < a; ++r) {
        for (int s = 0; s < b; ++s) {
            bool ok = true;
            for (const auto& [i, j] : kernel) {
                // i*r/a + j*s/b must be an integer
                long num = static_cast<long>(i) * r * b + static_cast<long>(j) * s * a;
                if (num % (static_cast<long>(a) * b) != 0) { ok = false; break; }
            }
            if (ok) out.chars.emplace_back(Rational(r, a), Rational(s, b));
        }
    }
    if (static_cast<int>(out.chars.size()) != out.orbit_size)
        throw std::logic_error("orbit_characters: character count != orbit size");
    for (auto& [x, y] : out.chars) { x.canonicalize(); y.canonicalize(); }
    return out;
}

std::vector<std::vector<int>> orbits_of_pair(const std::vector<int>& g, const std::vector<int>& h) {
    int n = static_cast<int>(g.size());
    std::vector<int> seen(n, 0);
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> orbit{s};
        seen[s] = 1;
        for (size_t k = 0; k < orbit.size(); ++k) {
            for (int img : {g[orbit[k]], h[orbit[k]]}) {
                if (!seen[img]) {
                    seen[img] = 1;
                    orbit.push_back(img);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

}  // namespace

std::vector<CommutingPair> commuting_pairs(int n) {
    const int bound = 5;
    if (n < 1 || n > bound)
        throw std::invalid_argument("commuting_pairs: n out of the configured bound");
    auto perms = all_permutations(n);
    std::vector<CommutingPair> out;
    for (const auto& g : perms) {
        for (const auto& h : perms) {
            if (compose(g, h) != compose(h, g)) continue;
            CommutingPair cp{g, h, {}};
            for (const auto& orbit : orbits_of_pair(g, h))
                cp.orbits.push_back(orbit_characters(g, h, orbit));
            out.push_back(std::move(cp));
        }
    }
    return out;
}

Series ell_orb_sym(int n, std::shared_ptr<const SeriesContext> ctx, OrbNormalization norm) {
    if (n < 1) throw std::invalid_argument("ell_orb_sym: n must be positive");
    bool shift = (norm == OrbNormalization::YShift);
    std::map<std::tuple<int, int, Rational, Rational>, Series> cache;
    auto ratio = [&](int w1, int w2, const Rational& lg, const Rational& lh) -> const Series& {
        auto key = std::make_tuple(w1, w2, lg, lh);
        auto it = cache.find(key);
        if (it == cache.end()) {
            ThetaRatioSpec spec{{w1, w2}, lg, lh, Rational(1), shift};
            it = cache.emplace(key, theta_ratio(spec, ctx)).first;
        }
        return it->second;
    };
    Series total(ctx);
    for (const auto& cp : commuting_pairs(n)) {
        Series term = Series::constant(ctx, FieldElement(1));
        for (const auto& orb : cp.orbits) {
            for (const auto& [lg, lh] : orb.chars) {
                term = term * ratio(1, 0, lg, lh);
                term = term * ratio(0, 1, lg, lh);
            }
        }
        total += term;
    }
    Rational nfact(1);
    for (int i = 2; i <= n; ++i) nfact *= i;
    return total.scaled(FieldElement(Rational(1) / nfact));
}

std::vector<ToricFixedPoint> ak_fixed_data(int k) {
    if (k < 2) throw std::invalid_argument("ak_fixed_data: k must be >= 2");
    // Fan of the minimal resolution: rays (1, i), i = 0..k, maximal cones
    // <(1,i),(1,i+1)>.  Dual forms of cone i are (i+1,-1) and (-i,1) in the
    // lattice where the invariant monomials x^k, xy, y^k sit at (0,1),
    // (1,0), (k,-1); the character matching sends (a,b) to
    // (a+bk) u1 + a u2.
    std::vector<ToricFixedPoint> out;
    for (int i = 0; i < k; ++i) {
        auto to_u = [&](int a, int b) -> Weight { return {a + b * k, a}; };
        out.push_back(ToricFixedPoint{{to_u(i + 1, -1), to_u(-i, 1)}});
    }
    return out;
}

namespace {
// restriction of a (u1,u2)-weight to the SU(2) circle u1 = u, u2 = -u
int su2_weight(const Weight& w) { return w[0] - w[1]; }
}  // namespace

Series ell_ak_resolution(int k, std::shared_ptr<const SeriesContext> ctx) {
    Series total(ctx);
    for (const auto& fp : ak_fixed_data(k)) {
        Series term = Series::constant(ctx, FieldElement(1));
        for (const auto& w : fp.weights) {
            int wu = su2_weight(w);
            if (wu == 0)
                throw std::runtime_error("ell_ak_resolution: weight degenerates on the circle");
            ThetaRatioSpec spec{{wu, 0}};
            term = term * theta_ratio(spec, ctx);
        }
        total += term;
    }
    return total;
}

Series ell_orb_cyclic(int k, std::shared_ptr<const SeriesContext> ctx, OrbNormalization norm) {
    if (k < 2) throw std::invalid_argument("ell_orb_cyclic: k must be >= 2");
    bool shift = (norm == OrbNormalization::YShift);
    auto frac = [&](int j) {
        Rational r(((j % k) + k) % k, k);
        r.canonicalize();
        return r;
    };
    Series total(ctx);
    for (int j1 = 0; j1 < k; ++j1) {
        for (int j2 = 0; j2 < k; ++j2) {
            // x-coordinate: weight t, character (j1/k, j2/k);
            // y-coordinate: weight t^{-1}, character (-j1/k, -j2/k)
            ThetaRatioSpec sx{{1, 0}, frac(j1), frac(j2), Rational(1), shift};
            ThetaRatioSpec sy{{-1, 0}, frac(-j1), frac(-j2), Rational(1), shift};
            total += theta_ratio(sx, ctx) * theta_ratio(sy, ctx);
        }
    }
    return total.scaled(FieldElement(Rational(1, k)));
}

}  // namespace ellgen
