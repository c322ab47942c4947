#pragma once

#include <vector>

#include "a2spider/rewrite.hpp"

namespace a2 {

/// identity(left) (x) m (x) identity(right).
Morphism layer(const SignSeq& left, const Morphism& m, const SignSeq& right);

/// The two-vertex strand pinch on a same-sign pair (merge then split).
Morphism pinch(char sign);

enum class DoubleOrder { PlusThenMinus, MinusThenPlus };

/// Projector on k like-signed strands, built by the strand-peeling
/// recursion: P_k = (P_{k-1} (x) 1) - ([k-1]/[k]) (P_{k-1} (x) 1) pinch
/// (P_{k-1} (x) 1). Idempotent, killed by every vertex attachment.
Morphism clasp_single(char sign, long k);

/// Projector on the two-block word (k of one sign then l of the other),
/// as the explicit alternating sum of turnback webs sandwiched between
/// single-sign projectors, with coefficients
/// (-1)^i [k;i][l;i]/[k+l+1;i].
Morphism clasp_double(DoubleOrder order, long k, long l);

/// The crossingless shuffle from the sorted word +^k-^l to eps with every
/// straight-line crossing resolved into an H web. Single term, coefficient 1.
Morphism sigma_web(const SignSeq& eps);

/// P^eps : +^k-^l -> eps, the sorted projector followed by the shuffle.
Morphism clasp_into(const SignSeq& eps);

/// P_eps^eps = star(P^eps) then P^eps; the idempotent on an arbitrary word.
Morphism clasp_endo(const SignSeq& eps);

/// P_alpha^beta = star(P^alpha) then P^beta for words with equal sign
/// counts; composes transitively and restricts to clasp_endo on alpha==beta.
Morphism transition(const SignSeq& alpha, const SignSeq& beta);

/// Expansion of clasp_single('+', k) over the (k-1)-strand projector:
/// sum_j (-1)^j ([k-j]/[k]) x (first strand pinched across j outputs).
Morphism single_clasp_expansion(long k);

/// Clasp stack with i turnbacks: nested cups feed the rightmost inputs of a
/// (k+1)-strand projector whose first output is merged with a free strand,
/// capped by the (k, i+l-1) two-block projector. Vanishes for 1 < i < k+1.
Morphism turnback_stack(long k, long i, long l);

/// The closed form the i = 1 stack equals, up to (-1)^k/[k+1].
Morphism turnback_stack_rhs(long k, long l);

/// Right-hand side of the peeling identity for the two-block projector:
/// (1 (x) P_{k,l}) minus the pinch sandwich ([k]/[k+1]) minus the cap-cup
/// sandwich ([l]/([k+1][k+l+2])); equals clasp_double(k+1, l).
Morphism double_clasp_peel_rhs(long k, long l);

/// The two sides of the wrap identity (a cap-cup pair wrapped around a
/// transition projector versus a vertex-attached transition), which differ
/// by clasp_wrap_scalar.
Morphism clasp_wrap_lhs(long k, long l);
Morphism clasp_wrap_rhs(long k, long l);
Scalar clasp_wrap_scalar(long k, long l);

struct ClaspCheck {
    std::string name;
    bool pass;
    Morphism residual;  // zero when pass
};

struct ClaspReport {
    SignSeq eps;
    std::vector<ClaspCheck> checks;
    bool all_pass() const;
    std::string to_json(int indent = -1) const;
};

/// Mechanical verification of the defining clasp properties on the word eps:
/// idempotency, absorption of every contiguous sub-block projector (blocks
/// with at most one sign change), annihilation under every admissible vertex
/// and cup/cap attachment on both sides, and unit identity coefficient.
ClaspReport verify_clasp(const SignSeq& eps);

/// Memo table for fully expanded clasps, shared by all constructions.
size_t clasp_cache_size();
void clear_clasp_cache();
bool load_clasp_cache(const std::string& dir);
bool save_clasp_cache(const std::string& dir);

}  // namespace a2
