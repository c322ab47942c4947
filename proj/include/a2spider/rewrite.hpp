#pragma once

#include <map>
#include <random>
#include <stdexcept>

#include "a2spider/scalar.hpp"
#include "a2spider/web.hpp"

namespace a2 {

struct TermBudgetExceeded : std::runtime_error {
    TermBudgetExceeded() : std::runtime_error("morphism exceeds the term budget") {}
};

/// Global resource guard; 0 means unlimited.
void set_term_limit(size_t n);
size_t term_limit();

struct Term {
    WebDiagram web;
    Scalar coeff;
};

/// Formal linear combination of basis webs with a common boundary, stored in
/// reduced normal form keyed by canonical web keys. The zero morphism is the
/// empty map. Equality is literal comparison of normal forms.
class Morphism {
public:
    Morphism() = default;
    Morphism(SignSeq dom, SignSeq cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}

    static Morphism zero(SignSeq dom, SignSeq cod) { return Morphism(dom, cod); }
    static Morphism identity(const SignSeq& eps);
    static Morphism generator(Gen g);
    /// Rewrites an arbitrary diagram to normal form with the given weight.
    static Morphism from_web(const WebDiagram& w, const Scalar& c = Scalar(1));

    const SignSeq& dom() const { return dom_; }
    const SignSeq& cod() const { return cod_; }
    const std::map<CanonicalKey, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism scaled(const Scalar& s) const;
    bool operator==(const Morphism& o) const;
    bool operator!=(const Morphism& o) const { return !(*this == o); }

    /// Diagram stacking: *this first (bottom), then g (top).
    Morphism then(const Morphism& g) const;
    Morphism tensor(const Morphism& g) const;
    Morphism star() const;

    Scalar coefficient_of(const WebDiagram& w) const;

    /// Joins each codomain point back to its domain point around the right
    /// side, reduces, and returns the coefficient of the empty diagram.
    Scalar trace_closure() const;

    std::string to_json(int indent = -1) const;
    static Morphism from_json(const std::string& text);
    std::string str() const;

    /// Accumulates c * (w in normal form); w need not be reduced.
    void accumulate(const WebDiagram& w, const Scalar& c);

private:
    SignSeq dom_, cod_;
    std::map<CanonicalKey, Term> terms_;
    void add_basis_term(const WebDiagram& w, const Scalar& c, const CanonicalKey& key);
    friend Morphism reduce_web_random(const WebDiagram&, const Scalar&, std::mt19937&);
};

/// Reduction with the deterministic face policy (memoized).
Morphism reduce_web(const WebDiagram& w, const Scalar& coeff = Scalar(1));

/// Reduction choosing uniformly among reducible faces with the given RNG;
/// bypasses the memo cache. Used by the confluence suite.
Morphism reduce_web_random(const WebDiagram& w, const Scalar& coeff, std::mt19937& rng);

void clear_reduce_cache();

}  // namespace a2
