#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a2 {

using Rational = mpq_class;

/// Signals a coefficient whose denominator vanishes at v = 1, i.e. a
/// quantity with no classical specialization.
struct PoleAtOne : std::domain_error {
    PoleAtOne() : std::domain_error("denominator vanishes at v = 1") {}
};

/// Laurent polynomial in the single generator v = q^(1/6) with exact
/// rational coefficients, stored as (exponent, coefficient) pairs sorted by
/// increasing exponent. Zero coefficients are never stored; the zero
/// polynomial is the empty list.
class Laurent {
public:
    using Terms = std::vector<std::pair<long, Rational>>;

    Laurent() = default;
    explicit Laurent(const Rational& c) {
        if (c != 0) terms_.emplace_back(0, c);
    }
    static Laurent v_pow(long e, const Rational& c = 1) {
        Laurent p;
        if (c != 0) p.terms_.emplace_back(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    long min_exp() const;  // requires nonzero
    long max_exp() const;  // requires nonzero
    Rational coeff(long e) const;
    const Terms& terms() const { return terms_; }

    void add_term(long e, const Rational& c);

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator-() const;
    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// v -> v^(-1), exponent-wise.
    Laurent reciprocal_sub() const;
    Rational eval_one() const;

    std::string str() const;

private:
    Terms terms_;
    Laurent merged(const Laurent& o, bool subtract) const;
};

/// Element of the coefficient field Q(v) in normal form:
///   - den is a plain polynomial in v (no negative exponents), monic,
///     with nonzero constant term;
///   - gcd(num, den) = 1 over Q[v] after factoring num = v^a * n0;
///   - the zero element is 0/1.
/// Equality of normal forms is literal map comparison.
class Scalar {
public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(long n) : num_(Rational(n)), den_(Rational(1)) {}
    Scalar(int n) : Scalar(static_cast<long>(n)) {}
    explicit Scalar(const Rational& r) : num_(r), den_(Rational(1)) {}
    explicit Scalar(const Laurent& n) : num_(n), den_(Rational(1)) {}
    Scalar(const Laurent& n, const Laurent& d);

    static Scalar v_pow(long e) { return Scalar(Laurent::v_pow(e)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    bool operator==(const Scalar& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// The bar involution v -> v^(-1), renormalized. An involution and a
    /// field automorphism; quantum integers are fixed points.
    Scalar star() const;

    /// Exact value at q = 1 (v = 1). Throws PoleAtOne if the reduced
    /// denominator vanishes there.
    Rational eval_at_one() const;

    /// Canonical string form, e.g. "(v^3 + v^-3)/(v^6 + 1)".
    std::string str() const;

private:
    Laurent num_, den_;
    void normalize();
    struct RawTag {};
    Scalar(Laurent n, Laurent d, RawTag) : num_(std::move(n)), den_(std::move(d)) {}
};

/// Quantum integer [n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)),
/// i.e. sum of v^(3(n-1-2i)) for 0 <= i < n; [-n] = -[n].
Scalar qint(long n);

/// Quantum binomial [n]! / ([k]! [n-k]!), always a Laurent polynomial.
Scalar qbinom(long n, long k);

/// Parses the canonical scalar string form (also accepts products,
/// quotients and parenthesized subexpressions). Throws std::runtime_error
/// with a character position on malformed input.
Scalar parse_scalar(const std::string& src);

/// Parser entry point shared with the expression DSL: parses a scalar
/// expression starting at `pos`, advancing it past the parsed text.
Scalar parse_scalar_at(const std::string& src, size_t& pos);

}  // namespace a2
