#include "ellgen/field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ellgen {

namespace {

unsigned g_order_cap = 48;

// Dense integer polynomial helpers (coeffs[i] is the coefficient of x^i).
using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials; throws if not divisible.
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Integer(0));
    while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
        size_t shift = num.size() - den.size();
        Integer lead = num.back() / den.back();
        if (lead * den.back() != num.back())
            throw std::runtime_error("zdiv_exact: non-exact leading division");
        q[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= lead * den[i];
        ztrim(num);
        if (num.size() == 1 && num[0] == 0) break;
    }
    if (!(num.size() == 1 && num[0] == 0))
        throw std::runtime_error("zdiv_exact: nonzero remainder");
    return q;
}

const ZPoly& cyclotomic_cached(unsigned n);

ZPoly cyclotomic_compute(unsigned n) {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    ZPoly num(n + 1, Integer(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = zdiv_exact(std::move(num), cyclotomic_cached(d));
    }
    return num;
}

// recursive_mutex: cyclotomic_compute re-enters for the proper divisors
const ZPoly& cyclotomic_cached(unsigned n) {
    static std::map<unsigned, ZPoly> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, cyclotomic_compute(n)).first;
    return it->second;
}

}  // namespace

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
    return cyclotomic_cached(n);
}

unsigned FieldElement::order_cap() { return g_order_cap; }
void FieldElement::set_order_cap(unsigned cap) { g_order_cap = cap; }

FieldElement::FieldElement(long num, long den) : order_(1), c_(1, Rational(num, den)) {
    if (den == 0) throw std::domain_error("FieldElement: zero denominator");
    c_[0].canonicalize();
}

// Reduce a raw coefficient vector (degree may reach 2*phi-2 after products)
// modulo Phi_N and trim to length phi(N).
FieldElement FieldElement::make_reduced(unsigned order, std::vector<Rational> raw) {
    if (order == 1) {
        Rational v = raw.empty() ? Rational(0) : raw[0];
        return FieldElement(v);
    }
    const ZPoly& phi = cyclotomic_cached(order);
    size_t deg = phi.size() - 1;
    // polynomial remainder mod the monic Phi_N
    for (size_t i = raw.size(); i-- > deg;) {
        if (raw[i] == 0) continue;
        Rational lead = raw[i];
        for (size_t j = 0; j < phi.size(); ++j)
            raw[i - deg + j] -= lead * Rational(phi[j]);
    }
    raw.resize(deg, Rational(0));
    for (auto& r : raw) r.canonicalize();
    return FieldElement(order, std::move(raw));
}

FieldElement FieldElement::zeta(unsigned n, long power) {
    if (n == 0) throw std::invalid_argument("zeta: order must be >= 1");
    long p = power % static_cast<long>(n);
    if (p < 0) p += n;
    if (n == 1 || p == 0) return FieldElement(1);
    if (n == 2) return FieldElement(p == 0 ? 1 : -1);
    if (n > g_order_cap)
        throw std::runtime_error("cyclotomic order " + std::to_string(n) +
                                 " exceeds the configured cap " + std::to_string(g_order_cap));
    std::vector<Rational> raw(static_cast<size_t>(p) + 1, Rational(0));
    raw.back() = 1;
    return make_reduced(n, std::move(raw));
}

FieldElement FieldElement::root_of_unity(const Rational& a) {
    Rational r = a;
    r.canonicalize();
    Integer den = r.get_den();
    Integer num = r.get_num() % den;
    if (num < 0) num += den;
    if (!den.fits_ulong_p())
        throw std::runtime_error("root_of_unity: denominator too large");
    return zeta(static_cast<unsigned>(den.get_ui()), num.get_si());
}

bool FieldElement::is_zero() const {
    for (const auto& r : c_)
        if (r != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("FieldElement: not rational");
    return c_[0];
}

FieldElement FieldElement::lifted(unsigned m) const {
    if (m == order_) return *this;
    if (m % order_ != 0) throw std::invalid_argument("lifted: target order not a multiple");
    if (m > g_order_cap)
        throw std::runtime_error("cyclotomic order-lift beyond configured cap");
    unsigned step = m / order_;
    std::vector<Rational> raw;
    raw.resize(c_.size() * step, Rational(0));
    // zeta_N^i -> zeta_M^{i * M/N}
    for (size_t i = 0; i < c_.size(); ++i)
        raw[i * step] = c_[i];
    return make_reduced(m, std::move(raw));
}

namespace {
unsigned common_order(const FieldElement& a, const FieldElement& b) {
    return static_cast<unsigned>(std::lcm(a.order(), b.order()));
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    unsigned m = common_order(a, b);
    FieldElement la = a.lifted(m), lb = b.lifted(m);
    for (size_t i = 0; i < la.c_.size(); ++i) la.c_[i] += lb.c_[i];
    return la;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    unsigned m = common_order(a, b);
    FieldElement la = a.lifted(m), lb = b.lifted(m);
    for (size_t i = 0; i < la.c_.size(); ++i) la.c_[i] -= lb.c_[i];
    return la;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    unsigned m = common_order(a, b);
    if (m == 1) {
        Rational r = a.c_[0] * b.c_[0];
        return FieldElement(r);
    }
    FieldElement la = a.lifted(m), lb = b.lifted(m);
    std::vector<Rational> raw(la.c_.size() + lb.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < la.c_.size(); ++i) {
        if (la.c_[i] == 0) continue;
        for (size_t j = 0; j < lb.c_.size(); ++j) {
            if (lb.c_[j] == 0) continue;
            raw[i + j] += la.c_[i] * lb.c_[j];
        }
    }
    return FieldElement::make_reduced(m, std::move(raw));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElement: division by zero");
    if (order_ == 1) return FieldElement(Rational(1) / c_[0]);
    // extended Euclid in Q[x] against Phi_N
    using QPoly = std::vector<Rational>;
    auto qtrim = [](QPoly& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
    const ZPoly& phiz = cyclotomic_cached(order_);
    QPoly r0(phiz.size());
    for (size_t i = 0; i < phiz.size(); ++i) r0[i] = Rational(phiz[i]);
    QPoly r1(c_.begin(), c_.end());
    qtrim(r1);
    QPoly s0{Rational(0)}, s1{Rational(1)};  // s tracks the coefficient of *this
    while (true) {
        // r0 = q*r1 + rem
        QPoly rem = r0, q;
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, Rational(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational lead = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = lead;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
            qtrim(rem);
        }
        // s_new = s0 - q*s1
        QPoly snew = s0;
        snew.resize(std::max(snew.size(), q.size() + s1.size() - 1), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j)
                snew[i + j] -= q[i] * s1[j];
        }
        qtrim(snew);
        if (rem.empty()) {
            // r1 is the gcd; must be a nonzero constant since Phi_N is
            // irreducible and *this is nonzero of smaller degree.
            if (r1.size() != 1)
                throw std::runtime_error("FieldElement::inverse: unexpected gcd degree");
            Rational g = r1[0];
            for (auto& x : s1) x /= g;
            std::vector<Rational> raw(s1.begin(), s1.end());
            return make_reduced(order_, std::move(raw));
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    unsigned m = common_order(a, b);
    FieldElement la = a.lifted(m), lb = b.lifted(m);
    return la.c_ == lb.c_;
}

std::complex<double> FieldElement::embed() const {
    if (order_ == 1) return {c_[0].get_d(), 0.0};
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> z = std::polar(1.0, two_pi / order_);
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c_.size(); i-- > 0;)
        acc = acc * z + std::complex<double>(c_[i].get_d(), 0.0);
    return acc;
}

std::string FieldElement::str() const {
    if (order_ == 1) return c_[0].get_str();
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " + ";
        os << c_[i].get_str();
        if (i >= 1) os << "*z";
        if (i >= 2) os << "^" << i;
    }
    os << "; N=" << order_;
    return os.str();
}

FieldElement FieldElement::from_string(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) {
        Rational r(s);
        r.canonicalize();
        return FieldElement(r);
    }
    auto eq = s.find("N=", semi);
    if (eq == std::string::npos) throw std::invalid_argument("FieldElement: bad string: " + s);
    unsigned order = static_cast<unsigned>(std::stoul(s.substr(eq + 2)));
    std::vector<Rational> coeffs;
    size_t pos = 0;
    while (pos < semi) {
        size_t next = s.find(" + ", pos);
        if (next == std::string::npos || next > semi) next = semi;
        std::string term = s.substr(pos, next - pos);
        auto star = term.find('*');
        if (star != std::string::npos) term = term.substr(0, star);
        Rational r(term);
        r.canonicalize();
        coeffs.push_back(r);
        pos = (next == semi) ? semi : next + 3;
    }
    coeffs.resize(euler_phi(order), Rational(0));
    return FieldElement(order, std::move(coeffs));
}

}  // namespace ellgen
