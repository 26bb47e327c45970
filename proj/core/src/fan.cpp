#include "ellgen/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ellgen/theta.hpp"
#include "../../vendor/json.hpp"

namespace ellgen::fan {

namespace {

// Solves the square system M x = b over Q by Gaussian elimination.
// columns[j] is the j-th column of M.  Throws if singular.
QVec solve_square(const std::vector<QVec>& columns, QVec b) {
    const int n = static_cast<int>(columns.size());
    std::vector<QVec> m(n, QVec(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = columns[j][i];
        m[i][n] = b[i];
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw std::invalid_argument("singular system");
        std::swap(m[col], m[piv]);
        Rational inv = 1 / m[col][col];
        for (int j = col; j <= n; ++j) m[col][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (int j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    QVec x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

Integer det_int(std::vector<std::vector<Integer>> m) {
    // Fraction-free (Bareiss) determinant of an integer matrix.
    const int n = static_cast<int>(m.size());
    Integer prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int sw = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { sw = r; break; }
            if (sw < 0) return 0;
            std::swap(m[k], m[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

bool is_primitive(const ZVec& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::abs(x));
    return g == 1;
}

QVec to_q(const ZVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const QVec& a, const ZVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Poly ----

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(std::vector<int>(nvars, 0), c);
    return p;
}

Poly Poly::linear(const QVec& a) {
    Poly p(static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i) {
        std::vector<int> e(a.size(), 0);
        e[i] = 1;
        p.add_term(e, a[i]);
    }
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Poly::add_term(std::vector<int> expo, const Rational& c) {
    // callers may hand in mpq values built from a raw num/den pair
    Rational cc = c;
    cc.canonicalize();
    if (cc == 0) return;
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
        terms_.emplace(std::move(expo), cc);
    } else {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<int> e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(std::move(e), ca * cb);
        }
    return r;
}

Rational Poly::eval(const QVec& point) const {
    QVec pt = point;
    for (auto& v : pt) v.canonicalize();  // tolerate raw num/den inputs
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        s += t;
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) {
                os << "*x" << i;
                if (e[i] > 1) os << "^" << e[i];
            }
    }
    return os.str();
}

bool Poly::divide_by_linear(const QVec& form, Poly& quotient) const {
    int piv = -1;
    for (size_t i = 0; i < form.size(); ++i)
        if (form[i] != 0) { piv = static_cast<int>(i); break; }
    if (piv < 0) throw std::invalid_argument("division by zero form");

    Poly f = *this;
    Poly q(nvars_);
    while (!f.terms_.empty()) {
        // Take a term of maximal degree in the pivot variable.
        auto lead = f.terms_.begin();
        for (auto it = f.terms_.begin(); it != f.terms_.end(); ++it)
            if (it->first[piv] > lead->first[piv]) lead = it;
        if (lead->first[piv] == 0) return false;  // nonzero remainder

        std::vector<int> me = lead->first;
        me[piv] -= 1;
        Rational mc = lead->second / form[piv];
        q.add_term(me, mc);
        // f -= monomial * form
        for (size_t i = 0; i < form.size(); ++i) {
            if (form[i] == 0) continue;
            std::vector<int> e = me;
            e[i] += 1;
            f.add_term(std::move(e), -mc * form[i]);
        }
    }
    quotient = std::move(q);
    return true;
}

// ---------------------------------------------------------------- Cone ----

Cone make_cone(std::vector<ZVec> gens) {
    if (gens.empty()) throw std::invalid_argument("empty cone");
    const int n = static_cast<int>(gens.size());
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != n)
            throw std::invalid_argument("cone must be full-dimensional simplicial");
        if (!is_primitive(g))
            throw std::invalid_argument("cone generator is not primitive");
    }
    std::vector<std::vector<Integer>> mi(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mi[i][j] = gens[j][i];
    Integer d = det_int(mi);
    if (d == 0) throw std::invalid_argument("cone generators are dependent");

    Cone c;
    c.dim = n;
    c.gens = std::move(gens);
    c.smooth = (d == 1 || d == -1);
    // duals[i] solves duals[i] . gens[j] = delta_ij: rows of the inverse of
    // the generator-column matrix.
    std::vector<QVec> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = to_q(c.gens[j]);
    for (int i = 0; i < n; ++i) {
        QVec ei(n, Rational(0));
        ei[i] = 1;
        // Solve G^T y = e_i  <=>  y . gens[j] = delta_ij.
        std::vector<QVec> rows(n);
        for (int j = 0; j < n; ++j) {
            rows[j] = QVec(n);
            for (int k = 0; k < n; ++k) rows[j][k] = cols[k][j];
        }
        c.duals.push_back(solve_square(rows, ei));
    }
    return c;
}

Subdivision star_subdivide(const Cone& base, const ZVec& ray) {
    if (static_cast<int>(ray.size()) != base.dim)
        throw std::invalid_argument("ray dimension mismatch");
    if (!is_primitive(ray)) throw std::invalid_argument("ray is not primitive");
    QVec coords(base.dim);
    int inside = 0;
    for (int i = 0; i < base.dim; ++i) {
        coords[i] = dot(base.duals[i], ray);
        if (coords[i] < 0) throw std::invalid_argument("ray is outside the cone");
        if (coords[i] > 0) ++inside;
    }
    if (inside < 2) throw std::invalid_argument("ray lies on an existing ray");

    Subdivision s;
    s.base = base;
    s.ray = ray;
    for (int i = 0; i < base.dim; ++i) {
        if (coords[i] == 0) continue;
        auto gens = base.gens;
        gens[i] = ray;
        s.cones.push_back(make_cone(std::move(gens)));
        s.d_alpha.push_back(1);
    }
    return s;
}

void validate_subdivision(const Subdivision& sub, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 997);
    const int n = sub.base.dim;
    for (int s = 0; s < samples; ++s) {
        // Random rational point in the interior of the base cone.
        QVec v(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            Rational t(num(rng), 1000);
            for (int k = 0; k < n; ++k) v[k] += t * Rational(sub.base.gens[i][k]);
        }
        int containing = 0;
        bool boundary = false;
        for (const auto& c : sub.cones) {
            bool in = true;
            for (const auto& d : c.duals) {
                Rational x = dot(d, v);
                if (x < 0) { in = false; break; }
                if (x == 0) boundary = true;
            }
            if (in) ++containing;
        }
        if (boundary) continue;  // measure-zero wall hit; skip the sample
        if (containing != 1)
            throw std::runtime_error("subdivision does not tile the base cone");
    }
}

void check_face_agreement(const Subdivision& sub, const PiecewisePolynomial& f,
                          int degree) {
    if (f.per_cone.size() != sub.cones.size())
        throw std::invalid_argument("piecewise data does not match subdivision");
    const int n = sub.base.dim;
    for (size_t a = 0; a < sub.cones.size(); ++a) {
        for (size_t b = a + 1; b < sub.cones.size(); ++b) {
            // Shared generators span the common face.
            std::vector<ZVec> shared;
            for (const auto& g : sub.cones[a].gens)
                for (const auto& h : sub.cones[b].gens)
                    if (g == h) shared.push_back(g);
            if (shared.empty()) continue;
            // Evaluate on a grid spanning the face; degree+1 values per
            // coordinate separate polynomials of the given degree.
            const int m = static_cast<int>(shared.size());
            std::vector<int> idx(m, 1);
            while (true) {
                QVec v(n, Rational(0));
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < n; ++k)
                        v[k] += Rational(idx[i]) * Rational(shared[i][k]);
                if (f.per_cone[a].eval(v) != f.per_cone[b].eval(v))
                    throw std::runtime_error("piecewise polynomial disagrees on a shared face");
                int p = 0;
                while (p < m && idx[p] == degree + 1) { idx[p] = 1; ++p; }
                if (p == m) break;
                ++idx[p];
            }
        }
    }
}

Poly pushforward(const Subdivision& sub, const PiecewisePolynomial& f) {
    if (f.per_cone.size() != sub.cones.size())
        throw std::invalid_argument("piecewise data does not match subdivision");
    const int n = sub.base.dim;

    // Common denominator: the product of every dual form of every cone,
    // with each cone's contribution weighted by its index d_alpha.
    // Numerator for cone C: f_C * prod(base duals) * prod(duals of others).
    Poly num(n);
    std::vector<QVec> all_forms;
    for (size_t c = 0; c < sub.cones.size(); ++c)
        for (const auto& d : sub.cones[c].duals) all_forms.push_back(d);

    for (size_t c = 0; c < sub.cones.size(); ++c) {
        Poly term = f.per_cone[c];
        term = term * Poly::constant(n, Rational(1, sub.d_alpha[c]));
        for (const auto& d : sub.base.duals) term *= Poly::linear(d);
        for (size_t c2 = 0; c2 < sub.cones.size(); ++c2) {
            if (c2 == c) continue;
            for (const auto& d : sub.cones[c2].duals) term *= Poly::linear(d);
        }
        num += term;
    }
    for (const auto& form : all_forms) {
        Poly q(n);
        if (!num.divide_by_linear(form, q))
            throw std::runtime_error("pushforward is not a polynomial");
        num = std::move(q);
    }
    return num;
}

PiecewisePolynomial pullback(const Poly& g, const Subdivision& sub) {
    PiecewisePolynomial f;
    f.per_cone.assign(sub.cones.size(), g);
    return f;
}

// ------------------------------------------------------ theta identity ----

ThetaIdentityResult theta_identity_check(const Subdivision& sub,
                                         const std::vector<RayThetaData>& base_data,
                                         int samples, std::complex<double> tau,
                                         std::complex<double> z, int L, unsigned seed) {
    using C = std::complex<double>;
    const int n = sub.base.dim;
    if (static_cast<int>(base_data.size()) != n)
        throw std::invalid_argument("need per-ray data for every base ray");

    // Exceptional ray coefficient from crepancy:
    // (-coef_E + 1) = sum_i c_i (-coef_i + 1), ray = sum_i c_i g_i.
    QVec cc(n);
    for (int i = 0; i < n; ++i) cc[i] = dot(sub.base.duals[i], sub.ray);
    Rational disc_E = 0;
    for (int i = 0; i < n; ++i) disc_E += cc[i] * (1 - base_data[i].coef);
    RayThetaData excep;
    excep.coef = 1 - disc_E;

    auto ray_data = [&](const ZVec& g) -> const RayThetaData& {
        for (int i = 0; i < n; ++i)
            if (g == sub.base.gens[i]) return base_data[i];
        if (g == sub.ray) return excep;
        throw std::logic_error("unknown ray in subdivision");
    };

    const C tp0 = theta_prime0_numeric(tau, L);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.08, 0.92);

    double max_res = 0.0;
    int done = 0, attempts = 0;
    while (done < samples) {
        if (++attempts > 20 * samples + 100)
            throw std::runtime_error("could not find pole-free sample points");
        // Random point in the base cone interior, recorded via its base
        // dual coordinates s_i; x_{K,i}(v) = s_i.
        std::vector<double> s(n);
        std::vector<double> v(n, 0.0);
        for (int i = 0; i < n; ++i) {
            s[i] = unif(rng);
            for (int k = 0; k < n; ++k) v[k] += s[i] * sub.base.gens[i][k];
        }

        bool pole = false;
        auto factor = [&](C x_val, C shift, const Rational& coef) -> C {
            C d = C(1.0 - coef.get_d(), 0.0) * z;
            C arg = x_val + shift;
            C den1 = theta_numeric(arg, tau, L);
            C den2 = theta_numeric(-d, tau, L);
            if (std::abs(den1) < 1e-10 || std::abs(den2) < 1e-10) {
                pole = true;
                return C(0.0);
            }
            return theta_numeric(arg - d, tau, L) * tp0 / (den1 * den2);
        };

        // Right-hand side: the single product over the base cone.
        C rhs(1.0, 0.0);
        for (int j = 0; j < n && !pole; ++j) {
            C shift = C(base_data[j].shift_a.get_d(), 0.0) -
                      C(base_data[j].shift_b.get_d(), 0.0) * tau;
            rhs *= factor(C(s[j], 0.0), shift, base_data[j].coef);
        }

        // Left-hand side: sum over the subdivision cones; each dual form of
        // a sub-cone is a linear combination of the base duals with
        // coefficients ell_m = form(g_{K,m}), which also transports the
        // character shifts.
        C lhs(0.0, 0.0);
        for (const auto& cone : sub.cones) {
            if (pole) break;
            C term(1.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const QVec& form = cone.duals[j];
                double x_val = 0.0;
                C shift(0.0, 0.0);
                for (int m = 0; m < n; ++m) {
                    double ell = dot(form, sub.base.gens[m]).get_d();
                    x_val += ell * s[m];
                    shift += C(ell, 0.0) *
                             (C(base_data[m].shift_a.get_d(), 0.0) -
                              C(base_data[m].shift_b.get_d(), 0.0) * tau);
                }
                term *= factor(C(x_val, 0.0), shift, ray_data(cone.gens[j]).coef);
                if (pole) break;
            }
            lhs += term;
        }
        if (pole) continue;

        double scale = std::max(1.0, std::abs(rhs));
        max_res = std::max(max_res, std::abs(lhs - rhs) / scale);
        ++done;
    }
    return {max_res, samples};
}

// ---------------------------------------------------------------- JSON ----

std::string cone_to_json(const Cone& c) {
    nlohmann::json j;
    j["generators"] = c.gens;
    return j.dump(2);
}

Cone cone_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<ZVec> gens = j.at("generators").get<std::vector<ZVec>>();
    return make_cone(std::move(gens));
}

std::string subdivision_to_json(const Subdivision& s) {
    nlohmann::json j;
    j["base"]["generators"] = s.base.gens;
    j["ray"] = s.ray;
    auto& arr = j["cones"];
    arr = nlohmann::json::array();
    for (const auto& c : s.cones) {
        nlohmann::json jc;
        jc["generators"] = c.gens;
        jc["smooth"] = c.smooth;
        arr.push_back(jc);
    }
    j["d_alpha"] = s.d_alpha;
    return j.dump(2);
}

}  // namespace ellgen::fan
