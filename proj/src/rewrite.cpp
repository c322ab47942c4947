#include "a2spider/rewrite.hpp"

#include <json.hpp>

#include <atomic>
#include <cassert>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace a2 {

using njson = nlohmann::ordered_json;

namespace {

std::atomic<size_t> g_term_limit{0};

void check_budget(size_t n) {
    size_t lim = g_term_limit.load(std::memory_order_relaxed);
    if (lim != 0 && n > lim) throw TermBudgetExceeded();
}

// ---------------------------------------------------------------------------
// Face surgery

struct Reducible {
    std::vector<int> face;  // 2 or 4 half-edges
};

// Internal faces of side count 2 or 4.
std::vector<Reducible> reducible_faces(const WebDiagram& w) {
    std::vector<Reducible> out;
    for (auto& f : face_cycles(w)) {
        if (f.size() != 2 && f.size() != 4) continue;
        bool internal = true;
        for (int h : f) {
            VertexKind k = w.vertices[w.halves[h].vertex].kind;
            if (k == VertexKind::DomBoundary || k == VertexKind::CodBoundary) {
                internal = false;
                break;
            }
        }
        if (internal) out.push_back({f});
    }
    return out;
}

// The half-edge at the face corner vertex that is not part of the face walk.
int corner_leg(const WebDiagram& w, const std::vector<int>& face, size_t i) {
    int vi = w.halves[face[i]].vertex;
    int used1 = face[i];
    int used2 = w.halves[face[(i + face.size() - 1) % face.size()]].twin;
    for (int h : w.vertices[vi].rot)
        if (h != used1 && h != used2) return h;
    throw std::logic_error("degenerate face corner");
}

// Applies one rewrite; returns the replacement webs with their relation
// coefficients (bigon -> [2], square -> 1 + 1; circles are handled by the
// loop counter before faces are inspected).
std::vector<std::pair<WebDiagram, Scalar>> rewrite_face(const WebDiagram& w,
                                                        const std::vector<int>& face) {
    std::vector<int> dead;
    for (int h : face) dead.push_back(w.halves[h].vertex);
    if (face.size() == 2) {
        int l0 = corner_leg(w, face, 0), l1 = corner_leg(w, face, 1);
        return {{splice(w, {{l0, l1}}, dead), qint(2)}};
    }
    int l0 = corner_leg(w, face, 0), l1 = corner_leg(w, face, 1),
        l2 = corner_leg(w, face, 2), l3 = corner_leg(w, face, 3);
    return {{splice(w, {{l0, l1}, {l2, l3}}, dead), Scalar(1)},
            {splice(w, {{l1, l2}, {l3, l0}}, dead), Scalar(1)}};
}

std::pair<size_t, size_t> termination_metric(const WebDiagram& w) {
    return {w.trivalent_count(), w.edge_count() + static_cast<size_t>(w.free_loops)};
}

// ---------------------------------------------------------------------------
// Memoized deterministic normalization

struct ReduceCache {
    std::mutex mu;
    std::unordered_map<CanonicalKey, std::shared_ptr<const Morphism>> map;
};

ReduceCache& cache() {
    static ReduceCache c;
    return c;
}

Scalar strip_loops(WebDiagram& w) {
    static const Scalar three = qint(3);
    Scalar s(1);
    for (long i = 0; i < w.free_loops; ++i) s = s * three;
    w.free_loops = 0;
    return s;
}

// Deterministic choice: bigons before squares, then the face holding the
// smallest half-edge id in canonical labeling.
const Reducible* pick_face(const WebDiagram& w, const std::vector<Reducible>& faces) {
    if (faces.empty()) return nullptr;
    std::vector<int> cid = canonical_half_ids(w);
    const Reducible* best = nullptr;
    std::pair<size_t, int> best_rank{0, 0};
    for (auto& r : faces) {
        int m = cid[r.face[0]];
        for (int h : r.face) m = std::min(m, cid[h]);
        std::pair<size_t, int> rank{r.face.size(), m};
        if (!best || rank < best_rank) {
            best = &r;
            best_rank = rank;
        }
    }
    return best;
}

// Normal form of a loop-free diagram with coefficient 1, shared via the memo.
std::shared_ptr<const Morphism> normalize(const WebDiagram& w0) {
    CanonicalKey key = canonical_key(w0);
    {
        std::lock_guard<std::mutex> lock(cache().mu);
        auto it = cache().map.find(key);
        if (it != cache().map.end()) return it->second;
    }
    auto result = std::make_shared<Morphism>(w0.dom_signs(), w0.cod_signs());
    auto faces = reducible_faces(w0);
    if (faces.empty()) {
        result->accumulate(w0, Scalar(1));
    } else {
        const Reducible* f = pick_face(w0, faces);
        auto before = termination_metric(w0);
        for (auto& [res0, c] : rewrite_face(w0, f->face)) {
            WebDiagram res = std::move(res0);
            if (!(termination_metric(res) < before))
                throw std::logic_error("termination metric failed to decrease");
            Scalar s = c * strip_loops(res);
            auto part = normalize(res);
            for (auto& [k, t] : part->terms()) result->accumulate(t.web, t.coeff * s);
        }
    }
    {
        std::lock_guard<std::mutex> lock(cache().mu);
        cache().map.emplace(key, result);
    }
    return result;
}

}  // namespace

void set_term_limit(size_t n) { g_term_limit.store(n, std::memory_order_relaxed); }
size_t term_limit() { return g_term_limit.load(std::memory_order_relaxed); }

void clear_reduce_cache() {
    std::lock_guard<std::mutex> lock(cache().mu);
    cache().map.clear();
}

// ---------------------------------------------------------------------------
// Morphism

Morphism Morphism::identity(const SignSeq& eps) {
    Morphism m(eps, eps);
    m.accumulate(make_identity(eps), Scalar(1));
    return m;
}

Morphism Morphism::generator(Gen g) { return from_web(make_gen(g)); }

Morphism Morphism::from_web(const WebDiagram& w, const Scalar& c) {
    return reduce_web(w, c);
}

void Morphism::add_basis_term(const WebDiagram& w, const Scalar& c, const CanonicalKey& key) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, Term{w, c});
        check_budget(terms_.size());
    } else {
        it->second.coeff = it->second.coeff + c;
        if (it->second.coeff.is_zero()) terms_.erase(it);
    }
}

void Morphism::accumulate(const WebDiagram& w, const Scalar& c) {
    if (c.is_zero()) return;
    if (w.dom_signs() != dom_ || w.cod_signs() != cod_)
        throw std::invalid_argument("term boundary does not match the morphism");
    if (w.free_loops == 0 && is_basis_web(w)) {
        add_basis_term(w, c, canonical_key(w));
        return;
    }
    WebDiagram u = w;
    Scalar s = c * strip_loops(u);
    auto nf = normalize(u);
    for (auto& [k, t] : nf->terms()) add_basis_term(t.web, t.coeff * s, k);
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (dom_ != o.dom_ || cod_ != o.cod_)
        throw std::invalid_argument("sum of morphisms with different boundaries");
    Morphism r = *this;
    for (auto& [k, t] : o.terms_) r.add_basis_term(t.web, t.coeff, k);
    return r;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + o.scaled(Scalar(-1)); }

Morphism Morphism::scaled(const Scalar& s) const {
    Morphism r(dom_, cod_);
    if (s.is_zero()) return r;
    for (auto& [k, t] : terms_) r.terms_.emplace(k, Term{t.web, t.coeff * s});
    return r;
}

bool Morphism::operator==(const Morphism& o) const {
    if (dom_ != o.dom_ || cod_ != o.cod_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second.coeff != jt->second.coeff) return false;
    return true;
}

Morphism Morphism::then(const Morphism& g) const {
    if (cod_ != g.dom_)
        throw std::invalid_argument("compose: codomain " + cod_.str() +
                                    " does not match domain " + g.dom_.str());
    Morphism r(dom_, g.cod_);
    for (auto& [k1, t1] : terms_)
        for (auto& [k2, t2] : g.terms_) {
            WebDiagram glued = compose_webs(t1.web, t2.web);
            Scalar c = t1.coeff * t2.coeff * strip_loops(glued);
            auto nf = normalize(glued);
            for (auto& [k, t] : nf->terms()) r.add_basis_term(t.web, t.coeff * c, k);
        }
    return r;
}

Morphism Morphism::tensor(const Morphism& g) const {
    Morphism r(dom_ + g.dom_, cod_ + g.cod_);
    for (auto& [k1, t1] : terms_)
        for (auto& [k2, t2] : g.terms_)
            r.accumulate(tensor_webs(t1.web, t2.web), t1.coeff * t2.coeff);
    return r;
}

Morphism Morphism::star() const {
    Morphism r(cod_, dom_);
    for (auto& [k, t] : terms_) r.accumulate(star_web(t.web), t.coeff.star());
    return r;
}

Scalar Morphism::coefficient_of(const WebDiagram& w) const {
    if (w.dom_signs() != dom_ || w.cod_signs() != cod_)
        throw std::invalid_argument("coefficient_of: boundary mismatch");
    auto it = terms_.find(canonical_key(w));
    return it == terms_.end() ? Scalar(0) : it->second.coeff;
}

Scalar Morphism::trace_closure() const {
    if (dom_ != cod_) throw std::invalid_argument("trace of a non-endomorphism");
    Scalar acc(0);
    WebDiagram empty;
    CanonicalKey empty_key = canonical_key(empty);
    for (auto& [k, t] : terms_) {
        Morphism closed = reduce_web(close_web(t.web), t.coeff);
        auto it = closed.terms().find(empty_key);
        if (it != closed.terms().end()) acc += it->second.coeff;
    }
    return acc;
}

std::string Morphism::to_json(int indent) const {
    njson j;
    j["dom"] = dom_.str();
    j["cod"] = cod_.str();
    njson terms = njson::array();
    for (auto& [k, t] : terms_) {
        njson jt;
        jt["coeff"] = t.coeff.str();
        jt["web"] = njson::parse(web_to_json(t.web));
        terms.push_back(jt);
    }
    j["terms"] = terms;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

Morphism Morphism::from_json(const std::string& text) {
    njson j = njson::parse(text);
    Morphism m(SignSeq(j.at("dom").get<std::string>()),
               SignSeq(j.at("cod").get<std::string>()));
    for (auto& jt : j.at("terms")) {
        WebDiagram w = web_from_json(jt.at("web").dump());
        m.accumulate(w, parse_scalar(jt.at("coeff").get<std::string>()));
    }
    return m;
}

std::string Morphism::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os << terms_.size() << " term(s) " << dom_.str() << " -> " << cod_.str() << ":";
    for (auto& [k, t] : terms_)
        os << "\n  " << t.coeff.str() << " * web[" << t.web.trivalent_count() << "v,"
           << t.web.edge_count() << "e]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Entry points

Morphism reduce_web(const WebDiagram& w, const Scalar& coeff) {
    Morphism out(w.dom_signs(), w.cod_signs());
    if (coeff.is_zero()) return out;
    out.accumulate(w, coeff);
    return out;
}

Morphism reduce_web_random(const WebDiagram& w, const Scalar& coeff, std::mt19937& rng) {
    Morphism out(w.dom_signs(), w.cod_signs());
    // worklist of pending diagrams
    std::vector<std::pair<WebDiagram, Scalar>> stack{{w, coeff}};
    while (!stack.empty()) {
        auto [u, c] = std::move(stack.back());
        stack.pop_back();
        c = c * strip_loops(u);
        auto faces = reducible_faces(u);
        if (faces.empty()) {
            out.add_basis_term(u, c, canonical_key(u));
            continue;
        }
        auto before = termination_metric(u);
        const Reducible& f = faces[rng() % faces.size()];
        for (auto& [res, rc] : rewrite_face(u, f.face)) {
            if (!(termination_metric(res) < before))
                throw std::logic_error("termination metric failed to decrease");
            stack.push_back({res, c * rc});
        }
    }
    return out;
}

}  // namespace a2
