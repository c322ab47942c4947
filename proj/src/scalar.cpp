#include "a2spider/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace a2 {

bool Laurent::is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

long Laurent::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.front().first;
}

long Laurent::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.back().first;
}

Rational Laurent::coeff(long e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const auto& t, long x) { return t.first < x; });
    return it != terms_.end() && it->first == e ? it->second : Rational(0);
}

void Laurent::add_term(long e, const Rational& c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const auto& t, long x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.emplace(it, e, c);
    }
}

Laurent Laurent::merged(const Laurent& o, bool subtract) const {
    Laurent r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    auto b = o.terms_.begin(), be = o.terms_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            r.terms_.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            r.terms_.emplace_back(b->first, subtract ? Rational(-b->second) : b->second);
            ++b;
        } else {
            Rational c = subtract ? Rational(a->second - b->second)
                                  : Rational(a->second + b->second);
            if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const { return merged(o, false); }

Laurent Laurent::operator-(const Laurent& o) const { return merged(o, true); }

Laurent Laurent::operator*(const Laurent& o) const {
    if (terms_.empty() || o.terms_.empty()) return Laurent();
    if (terms_.size() == 1) {
        Laurent r;
        r.terms_.reserve(o.terms_.size());
        for (auto& [e, c] : o.terms_)
            r.terms_.emplace_back(e + terms_[0].first, c * terms_[0].second);
        return r;
    }
    if (o.terms_.size() == 1) return o * *this;
    long lo = min_exp() + o.min_exp();
    long hi = max_exp() + o.max_exp();
    std::vector<Rational> acc(static_cast<size_t>(hi - lo + 1));
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) acc[static_cast<size_t>(e1 + e2 - lo)] += c1 * c2;
    Laurent r;
    for (size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0) r.terms_.emplace_back(lo + static_cast<long>(i), std::move(acc[i]));
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Laurent Laurent::reciprocal_sub() const {
    Laurent r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        r.terms_.emplace_back(-it->first, it->second);
    return r;
}

Rational Laurent::eval_one() const {
    Rational s = 0;
    for (auto& [e, c] : terms_) s += c;
    return s;
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        long e = it->first;
        if (e == 0) {
            os << c;
        } else {
            if (c != 1) {
                bool fractional = c.get_den() != 1;
                if (fractional) os << "(";
                os << c;
                if (fractional) os << ")";
            }
            os << "v";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Plain-polynomial helpers for normalization (dense, exact rational coeffs).

namespace {

using Dense = std::vector<Rational>;   // coefficient of v^i at index i
using ZDense = std::vector<mpz_class>;  // integer polynomials for the gcd core

Dense to_dense(const Laurent& p) {
    Dense d(static_cast<size_t>(p.max_exp()) + 1, Rational(0));
    for (auto& [e, c] : p.terms()) d[static_cast<size_t>(e)] = c;
    return d;
}

Laurent from_dense(const Dense& d) {
    Laurent p;
    for (size_t i = 0; i < d.size(); ++i) p.add_term(static_cast<long>(i), d[i]);
    return p;
}

void trim(Dense& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

void ztrim(ZDense& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

Dense poly_quot(Dense a, const Dense& b) {
    trim(a);
    Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return q;
}

// Clears denominators and strips integer content; sign normalized positive.
ZDense primitive_part(const Dense& a) {
    mpz_class den_lcm = 1;
    for (auto& c : a)
        if (c != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZDense z(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Rational scaled = a[i] * den_lcm;
        z[i] = scaled.get_num();
    }
    ztrim(z);
    mpz_class content = 0;
    for (auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content > 1)
        for (auto& c : z) c /= content;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

void strip_content(ZDense& a) {
    mpz_class content = 0;
    for (auto& c : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content > 1)
        for (auto& c : a) c /= content;
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
}

// Pseudo-remainder of a by b over Z[v]; content stripped every round to
// keep coefficients small.
ZDense pseudo_rem_primitive(ZDense a, const ZDense& b) {
    ztrim(a);
    const mpz_class& lcb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        mpz_class lca = a.back();
        size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lcb;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lca * b[i];
        ztrim(a);
        strip_content(a);
    }
    return a;
}

// Fast certificate of coprimality: a nontrivial common factor survives
// reduction modulo any prime not dividing both leading coefficients, so a
// trivial gcd mod p proves gcd = 1 over Q.
bool coprime_mod_p(const Dense& a, const Dense& b) {
    static const unsigned long primes[] = {2147483629UL, 2147483587UL, 2147483563UL};
    for (unsigned long p : primes) {
        auto reduce = [&](const Dense& src, std::vector<unsigned long>& dst) {
            dst.assign(src.size(), 0);
            for (size_t i = 0; i < src.size(); ++i) {
                if (src[i] == 0) continue;
                unsigned long num = mpz_fdiv_ui(src[i].get_num().get_mpz_t(), p);
                unsigned long den = mpz_fdiv_ui(src[i].get_den().get_mpz_t(), p);
                if (den == 0) return false;
                unsigned long inv;
                {
                    // extended Euclid for den^{-1} mod p
                    long long t = 0, newt = 1;
                    long long r = static_cast<long long>(p), newr = static_cast<long long>(den);
                    while (newr != 0) {
                        long long q = r / newr;
                        long long tmp = t - q * newt;
                        t = newt;
                        newt = tmp;
                        tmp = r - q * newr;
                        r = newr;
                        newr = tmp;
                    }
                    if (r != 1) return false;
                    inv = static_cast<unsigned long>(t < 0 ? t + static_cast<long long>(p) : t);
                }
                dst[i] = static_cast<unsigned long>(
                    (static_cast<unsigned __int128>(num) * inv) % p);
            }
            while (!dst.empty() && dst.back() == 0) dst.pop_back();
            return true;
        };
        std::vector<unsigned long> ra, rb;
        if (!reduce(a, ra) || !reduce(b, rb)) continue;
        if (ra.size() != a.size() || rb.size() != b.size()) continue;  // degree dropped
        if (ra.empty() || rb.empty()) continue;
        while (!rb.empty()) {
            // ra mod rb over GF(p)
            unsigned long inv_lc;
            {
                long long t = 0, newt = 1;
                long long r = static_cast<long long>(p),
                          newr = static_cast<long long>(rb.back());
                while (newr != 0) {
                    long long q = r / newr;
                    long long tmp = t - q * newt;
                    t = newt;
                    newt = tmp;
                    tmp = r - q * newr;
                    r = newr;
                    newr = tmp;
                }
                inv_lc = static_cast<unsigned long>(t < 0 ? t + static_cast<long long>(p) : t);
            }
            while (ra.size() >= rb.size() && !ra.empty()) {
                unsigned long f = static_cast<unsigned long>(
                    (static_cast<unsigned __int128>(ra.back()) * inv_lc) % p);
                size_t shift = ra.size() - rb.size();
                for (size_t i = 0; i < rb.size(); ++i) {
                    unsigned long sub = static_cast<unsigned long>(
                        (static_cast<unsigned __int128>(f) * rb[i]) % p);
                    ra[shift + i] = ra[shift + i] >= sub ? ra[shift + i] - sub
                                                         : ra[shift + i] + p - sub;
                }
                while (!ra.empty() && ra.back() == 0) ra.pop_back();
            }
            std::swap(ra, rb);
        }
        return ra.size() == 1;  // constant gcd mod p certifies coprimality
    }
    return false;
}

// Monic gcd over Q[v] via the primitive remainder sequence over Z[v].
Dense poly_gcd(const Dense& a0, const Dense& b0) {
    if (a0.size() > 1 && b0.size() > 1 && coprime_mod_p(a0, b0)) return Dense{Rational(1)};
    ZDense a = primitive_part(a0), b = primitive_part(b0);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZDense r = pseudo_rem_primitive(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    Dense g(a.size());
    if (!a.empty()) {
        Rational lc(a.back());
        for (size_t i = 0; i < a.size(); ++i) g[i] = Rational(a[i]) / lc;
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const Laurent& n, const Laurent& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw std::domain_error("division by zero scalar");
    normalize();
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Laurent(Rational(1));
        return;
    }
    if (den_.is_one()) return;
    long a = num_.min_exp();
    long b = den_.min_exp();
    Laurent n0, d0;
    for (auto& [e, c] : num_.terms()) n0.add_term(e - a, c);
    for (auto& [e, c] : den_.terms()) d0.add_term(e - b, c);
    Dense dn = to_dense(n0), dd = to_dense(d0);
    // a constant numerator (after the v-shift) is coprime to any
    // denominator with nonzero constant term
    if (dd.size() > 1 && n0.terms().size() > 1) {
        Dense g = poly_gcd(dn, dd);
        if (g.size() > 1) {
            dn = poly_quot(dn, g);
            dd = poly_quot(dd, g);
        }
    }
    Rational lc = dd.back();
    if (lc != 1) {
        for (auto& c : dn) c /= lc;
        for (auto& c : dd) c /= lc;
    }
    n0 = from_dense(dn);
    d0 = from_dense(dd);
    num_ = Laurent();
    for (auto& [e, c] : n0.terms()) num_.add_term(e + a - b, c);
    den_ = d0;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (den_.is_one() && o.den_.is_one())
        return Scalar(num_ + o.num_, den_, RawTag{});
    if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
    // add over the least common multiple of the denominators
    Dense d1 = to_dense(den_), d2 = to_dense(o.den_);
    Dense g = poly_gcd(d1, d2);
    if (g.size() > 1) {
        Dense q2 = poly_quot(d2, g);
        Laurent lq2 = from_dense(q2);
        Laurent lq1 = from_dense(poly_quot(d1, g));
        return Scalar(num_ * lq2 + o.num_ * lq1, den_ * lq2);
    }
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (num_.is_zero() || o.num_.is_zero()) return Scalar();
    if (den_.is_one() && o.den_.is_one())
        return Scalar(num_ * o.num_, den_, RawTag{});
    return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::star() const {
    return Scalar(num_.reciprocal_sub(), den_.reciprocal_sub());
}

Rational Scalar::eval_at_one() const {
    Rational d = den_.eval_one();
    if (d == 0) throw PoleAtOne();
    return num_.eval_one() / d;
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string s = "(" + num_.str() + ")";
    if (!den_.is_one()) s += "/(" + den_.str() + ")";
    return s;
}

Scalar qint(long n) {
    if (n < 0) return -qint(-n);
    Laurent p;
    for (long i = 0; i < n; ++i) p.add_term(3 * (n - 1 - 2 * i), Rational(1));
    return Scalar(p);
}

Scalar qbinom(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("qbinom: need 0 <= k <= n");
    Scalar r(1);
    for (long i = 1; i <= k; ++i) r = r * qint(n - k + i) / qint(i);
    return r;
}

// ---------------------------------------------------------------------------
// Scalar expression parser.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom+                    (juxtaposition is multiplication)
//   atom   := INTEGER | 'v' ['^' ['-'] INTEGER] | '(' expr ')'

namespace {

struct ScalarParser {
    const std::string& s;
    size_t& pos;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("scalar parse error at position " +
                                 std::to_string(pos) + ": " + what);
    }
    bool peek_atom_start() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return c == '(' || c == 'v' || std::isdigit(static_cast<unsigned char>(c));
    }
    long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        long val = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            val = val * 10 + (s[pos] - '0');
            ++pos;
        }
        return neg ? -val : val;
    }
    Scalar parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Scalar e = parse_expr();
            skip_ws();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == 'v') {
            ++pos;
            long e = 1;
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e = parse_int();
            }
            return Scalar::v_pow(e);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(parse_int());
        fail("expected scalar atom");
    }
    Scalar parse_factor() {
        Scalar r = parse_atom();
        while (peek_atom_start()) r = r * parse_atom();
        return r;
    }
    Scalar parse_term() {
        Scalar r = parse_factor();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                r = r * parse_factor();
            } else if (pos < s.size() && s[pos] == '/') {
                ++pos;
                r = r / parse_factor();
            } else {
                return r;
            }
        }
    }
    Scalar parse_expr() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && s[pos] == '-') {
            neg = true;
            ++pos;
        }
        Scalar r = parse_term();
        if (neg) r = -r;
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') {
                ++pos;
                r = r + parse_term();
            } else if (pos < s.size() && s[pos] == '-') {
                ++pos;
                r = r - parse_term();
            } else {
                return r;
            }
        }
    }
};

}  // namespace

Scalar parse_scalar_at(const std::string& src, size_t& pos) {
    ScalarParser p{src, pos};
    return p.parse_expr();
}

Scalar parse_scalar(const std::string& src) {
    size_t pos = 0;
    Scalar r = parse_scalar_at(src, pos);
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos != src.size())
        throw std::runtime_error("scalar parse error at position " +
                                 std::to_string(pos) + ": trailing input");
    return r;
}

}  // namespace a2
