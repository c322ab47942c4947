#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace a2 {

/// Ordered sequence over {+,-}; objects of the diagram category.
class SignSeq {
public:
    SignSeq() = default;
    explicit SignSeq(std::string s);
    static SignSeq repeat(char sign, size_t n);

    size_t size() const { return s_.size(); }
    bool empty() const { return s_.empty(); }
    char at(size_t i) const { return s_[i]; }
    bool plus_at(size_t i) const { return s_[i] == '+'; }
    size_t count(char sign) const;

    SignSeq operator+(const SignSeq& o) const { return SignSeq(s_ + o.s_); }
    bool operator==(const SignSeq& o) const { return s_ == o.s_; }
    bool operator!=(const SignSeq& o) const { return s_ != o.s_; }
    bool operator<(const SignSeq& o) const { return s_ < o.s_; }

    SignSeq slice(size_t from, size_t len) const;
    const std::string& str() const { return s_; }

private:
    std::string s_;  // only '+' and '-'
};

enum class VertexKind : uint8_t { Source, Sink, DomBoundary, CodBoundary };

struct Vertex {
    VertexKind kind;
    std::vector<int> rot;  // incident half-edges in counterclockwise order
};

struct HalfEdge {
    int twin = -1;
    int vertex = -1;
    bool out = false;  // directed away from `vertex`
};

/// Planar directed bipartite uni-trivalent graph in a disk, as a half-edge
/// rotation system with ordered signed boundary. Vertexless closed loops
/// carry no half-edges and are tracked by count only.
struct WebDiagram {
    std::vector<Vertex> vertices;
    std::vector<HalfEdge> halves;
    std::vector<int> domain;    // DomBoundary vertex ids, left to right
    std::vector<int> codomain;  // CodBoundary vertex ids, left to right
    long free_loops = 0;

    SignSeq dom_signs() const;
    SignSeq cod_signs() const;
    size_t trivalent_count() const;
    size_t edge_count() const { return halves.size() / 2; }
};

/// The ten elementary webs.
enum class Gen {
    t_m_pp,   // trivalent source:  -  ->  ++
    t_p_mm,   // trivalent sink:    +  ->  --
    t_pp_m,   // trivalent sink:    ++ ->  -
    t_mm_p,   // trivalent source:  -- ->  +
    b_mp,     // cup:  empty -> -+
    b_pm,     // cup:  empty -> +-
    d_pm,     // cap:  +- -> empty
    d_mp,     // cap:  -+ -> empty
    h_pm_mp,  // H web:  +- -> -+
    h_mp_pm,  // H web:  -+ -> +-
};

WebDiagram make_gen(Gen g);
WebDiagram make_identity(const SignSeq& eps);

/// Stacks g on top of f (f's codomain glued to g's domain).
/// Throws std::invalid_argument naming the first mismatched position.
WebDiagram compose_webs(const WebDiagram& f, const WebDiagram& g);

/// Places g to the right of f.
WebDiagram tensor_webs(const WebDiagram& f, const WebDiagram& g);

/// Reflection through the horizontal with all edge directions reversed.
/// Involutive; swaps domain and codomain.
WebDiagram star_web(const WebDiagram& w);

/// Joins codomain point i to domain point i by arcs nested around the right
/// side; the result is a fully closed diagram. Requires dom == cod.
WebDiagram close_web(const WebDiagram& w);

/// Generic surgery used by gluing and the rewrite engine: removes `dead`
/// vertices, reconnecting strands through the half-edge `bonds` (each bond
/// (a,b) says the strand entering dead half a continues out of dead half b).
/// Dead-vertex halves in no bond are dropped with their edges. Strand chains
/// that close up inside the dead region become free loops.
WebDiagram splice(const WebDiagram& w, const std::vector<std::pair<int, int>>& bonds,
                  const std::vector<int>& dead);

using CanonicalKey = std::string;

/// Deterministic encoding from a breadth-first traversal seeded by the
/// boundary order; equal on two diagrams iff they are isomorphic as
/// boundary-fixed rotation systems. Components not reached from the boundary
/// are canonicalized by minimal rotation seed and appended in sorted order.
CanonicalKey canonical_key(const WebDiagram& w);

/// Stored half-edge id -> id under the canonical relabeling; used to pick
/// rewrite positions reproducibly.
std::vector<int> canonical_half_ids(const WebDiagram& w);

/// All face cycles of the rotation system, one vector of half-edge ids per
/// face (walk rule: next = rotation-predecessor of twin).
std::vector<std::vector<int>> face_cycles(const WebDiagram& w);

/// Side counts of bounded faces whose walk touches no boundary vertex;
/// each vertexless free loop contributes a 0.
std::vector<int> internal_faces(const WebDiagram& w);

/// True iff no internal face has fewer than six sides and no closed loops.
bool is_basis_web(const WebDiagram& w);

/// Checks all structural invariants (twin involution, vertex degrees and
/// direction patterns, per-component Euler formula, boundary order via a
/// frame-augmented genus test). Throws std::invalid_argument on violation.
void validate(const WebDiagram& w);

struct BoundaryScan {
    std::optional<std::pair<Gen, int>> top;     // pattern and leftmost position
    std::optional<std::pair<Gen, int>> bottom;
};

/// Reports a cup or trivalent vertex attached to the top boundary and a cap
/// or trivalent vertex attached to the bottom boundary (both exist for every
/// non-identity basis endomorphism web; empty for the identity).
BoundaryScan boundary_scan(const WebDiagram& w);

/// JSON in the documented schema; serialization relabels canonically, so
/// parse -> serialize is byte-stable on canonical forms.
std::string web_to_json(const WebDiagram& w, int indent = -1);
WebDiagram web_from_json(const std::string& json_text);

}  // namespace a2
