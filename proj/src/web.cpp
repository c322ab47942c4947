#include "a2spider/web.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace a2 {

using njson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// SignSeq

SignSeq::SignSeq(std::string s) : s_(std::move(s)) {
    for (char c : s_)
        if (c != '+' && c != '-')
            throw std::invalid_argument("sign sequence may contain only + and -");
}

SignSeq SignSeq::repeat(char sign, size_t n) {
    return SignSeq(std::string(n, sign));
}

size_t SignSeq::count(char sign) const {
    return static_cast<size_t>(std::count(s_.begin(), s_.end(), sign));
}

SignSeq SignSeq::slice(size_t from, size_t len) const {
    return SignSeq(s_.substr(from, len));
}

// ---------------------------------------------------------------------------
// Diagram basics

SignSeq WebDiagram::dom_signs() const {
    std::string s;
    for (int v : domain) s += halves[vertices[v].rot[0]].out ? '+' : '-';
    return SignSeq(s);
}

SignSeq WebDiagram::cod_signs() const {
    std::string s;
    for (int v : codomain) s += halves[vertices[v].rot[0]].out ? '-' : '+';
    return SignSeq(s);
}

size_t WebDiagram::trivalent_count() const {
    size_t n = 0;
    for (auto& v : vertices)
        if (v.kind == VertexKind::Source || v.kind == VertexKind::Sink) ++n;
    return n;
}

namespace {

struct Builder {
    WebDiagram w;

    int vertex(VertexKind k) {
        w.vertices.push_back({k, {}});
        return static_cast<int>(w.vertices.size()) - 1;
    }
    // Edge directed from -> to; returns (half at from, half at to).
    std::pair<int, int> edge(int from, int to) {
        int a = static_cast<int>(w.halves.size());
        int b = a + 1;
        w.halves.push_back({b, from, true});
        w.halves.push_back({a, to, false});
        w.vertices[from].rot.push_back(a);
        w.vertices[to].rot.push_back(b);
        return {a, b};
    }
    void rot(int v, std::vector<int> order) { w.vertices[v].rot = std::move(order); }
};

}  // namespace

WebDiagram make_identity(const SignSeq& eps) {
    Builder b;
    for (size_t i = 0; i < eps.size(); ++i) {
        int d = b.vertex(VertexKind::DomBoundary);
        int c = b.vertex(VertexKind::CodBoundary);
        if (eps.plus_at(i))
            b.edge(d, c);
        else
            b.edge(c, d);
        b.w.domain.push_back(d);
        b.w.codomain.push_back(c);
    }
    return b.w;
}

WebDiagram make_gen(Gen g) {
    Builder b;
    switch (g) {
        case Gen::t_m_pp: {  // source: - -> ++
            int d1 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            int v = b.vertex(VertexKind::Source);
            auto [vd, x1] = b.edge(v, d1);
            auto [vc1, x2] = b.edge(v, c1);
            auto [vc2, x3] = b.edge(v, c2);
            (void)x1; (void)x2; (void)x3;
            b.rot(v, {vd, vc2, vc1});  // down, up-right, up-left
            b.w.domain = {d1};
            b.w.codomain = {c1, c2};
            break;
        }
        case Gen::t_p_mm: {  // sink: + -> --
            int d1 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            int v = b.vertex(VertexKind::Sink);
            auto [x1, vd] = b.edge(d1, v);
            auto [x2, vc1] = b.edge(c1, v);
            auto [x3, vc2] = b.edge(c2, v);
            (void)x1; (void)x2; (void)x3;
            b.rot(v, {vd, vc2, vc1});
            b.w.domain = {d1};
            b.w.codomain = {c1, c2};
            break;
        }
        case Gen::t_pp_m: {  // sink: ++ -> -
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int v = b.vertex(VertexKind::Sink);
            auto [x1, vd1] = b.edge(d1, v);
            auto [x2, vd2] = b.edge(d2, v);
            auto [x3, vc] = b.edge(c1, v);
            (void)x1; (void)x2; (void)x3;
            b.rot(v, {vc, vd1, vd2});  // up, down-left, down-right
            b.w.domain = {d1, d2};
            b.w.codomain = {c1};
            break;
        }
        case Gen::t_mm_p: {  // source: -- -> +
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int v = b.vertex(VertexKind::Source);
            auto [vd1, x1] = b.edge(v, d1);
            auto [vd2, x2] = b.edge(v, d2);
            auto [vc, x3] = b.edge(v, c1);
            (void)x1; (void)x2; (void)x3;
            b.rot(v, {vc, vd1, vd2});
            b.w.domain = {d1, d2};
            b.w.codomain = {c1};
            break;
        }
        case Gen::b_mp: {
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            b.edge(c1, c2);
            b.w.codomain = {c1, c2};
            break;
        }
        case Gen::b_pm: {
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            b.edge(c2, c1);
            b.w.codomain = {c1, c2};
            break;
        }
        case Gen::d_pm: {
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            b.edge(d1, d2);
            b.w.domain = {d1, d2};
            break;
        }
        case Gen::d_mp: {
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            b.edge(d2, d1);
            b.w.domain = {d1, d2};
            break;
        }
        case Gen::h_pm_mp: {  // +- -> -+ : left sink, right source, mid R->L
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            int L = b.vertex(VertexKind::Sink);
            int R = b.vertex(VertexKind::Source);
            auto [x1, ld] = b.edge(d1, L);
            auto [x2, lc] = b.edge(c1, L);
            auto [rm, lm] = b.edge(R, L);
            auto [rd, x3] = b.edge(R, d2);
            auto [rc, x4] = b.edge(R, c2);
            (void)x1; (void)x2; (void)x3; (void)x4;
            b.rot(L, {ld, lm, lc});  // down, east, up
            b.rot(R, {rd, rc, rm});  // down, up, west
            b.w.domain = {d1, d2};
            b.w.codomain = {c1, c2};
            break;
        }
        case Gen::h_mp_pm: {  // -+ -> +- : left source, right sink, mid L->R
            int d1 = b.vertex(VertexKind::DomBoundary);
            int d2 = b.vertex(VertexKind::DomBoundary);
            int c1 = b.vertex(VertexKind::CodBoundary);
            int c2 = b.vertex(VertexKind::CodBoundary);
            int L = b.vertex(VertexKind::Source);
            int R = b.vertex(VertexKind::Sink);
            auto [ld, x1] = b.edge(L, d1);
            auto [lc, x2] = b.edge(L, c1);
            auto [lm, rm] = b.edge(L, R);
            auto [x3, rd] = b.edge(d2, R);
            auto [x4, rc] = b.edge(c2, R);
            (void)x1; (void)x2; (void)x3; (void)x4;
            b.rot(L, {ld, lm, lc});
            b.rot(R, {rd, rc, rm});
            b.w.domain = {d1, d2};
            b.w.codomain = {c1, c2};
            break;
        }
    }
    return b.w;
}

// ---------------------------------------------------------------------------
// Splice: the shared surgery engine.

WebDiagram splice(const WebDiagram& w, const std::vector<std::pair<int, int>>& bonds,
                  const std::vector<int>& dead) {
    size_t nv = w.vertices.size(), nh = w.halves.size();
    std::vector<char> is_dead(nv, 0);
    for (int v : dead) is_dead[static_cast<size_t>(v)] = 1;
    std::vector<int> bond(nh, -1);
    for (auto& [a, b] : bonds) {
        bond[static_cast<size_t>(a)] = b;
        bond[static_cast<size_t>(b)] = a;
    }

    WebDiagram out;
    out.free_loops = w.free_loops;
    std::vector<int> vmap(nv, -1), hmap(nh, -1);
    for (size_t v = 0; v < nv; ++v) {
        if (is_dead[v]) continue;
        vmap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back({w.vertices[v].kind, {}});
    }
    int hc = 0;
    for (size_t h = 0; h < nh; ++h)
        if (!is_dead[static_cast<size_t>(w.halves[h].vertex)]) hmap[h] = hc++;
    out.halves.resize(static_cast<size_t>(hc));

    std::vector<char> seen(nh, 0);
    for (size_t h = 0; h < nh; ++h) {
        if (hmap[h] < 0) continue;
        const HalfEdge& he = w.halves[h];
        out.halves[static_cast<size_t>(hmap[h])] = {-1, vmap[static_cast<size_t>(he.vertex)],
                                                    he.out};
        int t = he.twin;
        while (hmap[static_cast<size_t>(t)] < 0) {
            seen[static_cast<size_t>(t)] = 1;
            int p = bond[static_cast<size_t>(t)];
            if (p < 0) throw std::logic_error("splice: strand ends at unbonded dead half-edge");
            seen[static_cast<size_t>(p)] = 1;
            t = w.halves[static_cast<size_t>(p)].twin;
        }
        out.halves[static_cast<size_t>(hmap[h])].twin = hmap[static_cast<size_t>(t)];
    }
    // Strand cycles entirely inside the dead region become free loops.
    for (size_t h0 = 0; h0 < nh; ++h0) {
        if (hmap[h0] >= 0 || seen[h0] || bond[h0] < 0) continue;
        int cur = static_cast<int>(h0);
        do {
            seen[static_cast<size_t>(cur)] = 1;
            int p = bond[static_cast<size_t>(cur)];
            seen[static_cast<size_t>(p)] = 1;
            cur = w.halves[static_cast<size_t>(p)].twin;
        } while (cur != static_cast<int>(h0));
        ++out.free_loops;
    }

    for (size_t v = 0; v < nv; ++v) {
        if (is_dead[v]) continue;
        for (int h : w.vertices[v].rot)
            out.vertices[static_cast<size_t>(vmap[v])].rot.push_back(
                hmap[static_cast<size_t>(h)]);
    }
    for (int v : w.domain)
        if (!is_dead[static_cast<size_t>(v)]) out.domain.push_back(vmap[static_cast<size_t>(v)]);
    for (int v : w.codomain)
        if (!is_dead[static_cast<size_t>(v)]) out.codomain.push_back(vmap[static_cast<size_t>(v)]);
    return out;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

// Appends g's tables onto f's; returns (vertex offset, half offset).
std::pair<int, int> append_disjoint(WebDiagram& f, const WebDiagram& g) {
    int vo = static_cast<int>(f.vertices.size());
    int ho = static_cast<int>(f.halves.size());
    for (auto& v : g.vertices) {
        Vertex nv{v.kind, v.rot};
        for (int& h : nv.rot) h += ho;
        f.vertices.push_back(std::move(nv));
    }
    for (auto& h : g.halves) f.halves.push_back({h.twin + ho, h.vertex + vo, h.out});
    f.free_loops += g.free_loops;
    return {vo, ho};
}

}  // namespace

WebDiagram compose_webs(const WebDiagram& f, const WebDiagram& g) {
    SignSeq fc = f.cod_signs(), gd = g.dom_signs();
    if (fc != gd) {
        size_t i = 0;
        while (i < fc.size() && i < gd.size() && fc.at(i) == gd.at(i)) ++i;
        throw std::invalid_argument("compose: boundary mismatch at position " +
                                    std::to_string(i) + " (codomain " + fc.str() +
                                    " vs domain " + gd.str() + ")");
    }
    WebDiagram u = f;
    auto [vo, ho] = append_disjoint(u, g);
    (void)ho;
    std::vector<std::pair<int, int>> bonds;
    std::vector<int> dead;
    for (size_t i = 0; i < f.codomain.size(); ++i) {
        int cf = f.codomain[i];
        int dg = g.domain[i] + vo;
        bonds.push_back({u.vertices[static_cast<size_t>(cf)].rot[0],
                         u.vertices[static_cast<size_t>(dg)].rot[0]});
        dead.push_back(cf);
        dead.push_back(dg);
    }
    u.codomain.clear();
    for (int v : g.codomain) u.codomain.push_back(v + vo);
    return splice(u, bonds, dead);
}

WebDiagram tensor_webs(const WebDiagram& f, const WebDiagram& g) {
    WebDiagram u = f;
    auto [vo, ho] = append_disjoint(u, g);
    (void)ho;
    for (int v : g.domain) u.domain.push_back(v + vo);
    for (int v : g.codomain) u.codomain.push_back(v + vo);
    return u;
}

WebDiagram star_web(const WebDiagram& w) {
    WebDiagram r = w;
    for (auto& v : r.vertices) {
        switch (v.kind) {
            case VertexKind::Source: v.kind = VertexKind::Sink; break;
            case VertexKind::Sink: v.kind = VertexKind::Source; break;
            case VertexKind::DomBoundary: v.kind = VertexKind::CodBoundary; break;
            case VertexKind::CodBoundary: v.kind = VertexKind::DomBoundary; break;
        }
        std::reverse(v.rot.begin(), v.rot.end());
    }
    for (auto& h : r.halves) h.out = !h.out;
    std::swap(r.domain, r.codomain);
    return r;
}

WebDiagram close_web(const WebDiagram& w) {
    if (w.dom_signs() != w.cod_signs())
        throw std::invalid_argument("close_web requires equal domain and codomain");
    std::vector<std::pair<int, int>> bonds;
    std::vector<int> dead;
    for (size_t i = 0; i < w.domain.size(); ++i) {
        bonds.push_back({w.vertices[static_cast<size_t>(w.codomain[i])].rot[0],
                         w.vertices[static_cast<size_t>(w.domain[i])].rot[0]});
        dead.push_back(w.domain[i]);
        dead.push_back(w.codomain[i]);
    }
    return splice(w, bonds, dead);
}

// ---------------------------------------------------------------------------
// Faces

namespace {

// Position of each half-edge in its vertex's rotation list.
std::vector<int> rot_positions(const WebDiagram& w) {
    std::vector<int> pos(w.halves.size(), -1);
    for (auto& v : w.vertices)
        for (size_t i = 0; i < v.rot.size(); ++i)
            pos[static_cast<size_t>(v.rot[i])] = static_cast<int>(i);
    return pos;
}

}  // namespace

std::vector<std::vector<int>> face_cycles(const WebDiagram& w) {
    std::vector<int> pos = rot_positions(w);
    std::vector<char> used(w.halves.size(), 0);
    std::vector<std::vector<int>> faces;
    for (size_t h0 = 0; h0 < w.halves.size(); ++h0) {
        if (used[h0]) continue;
        std::vector<int> cyc;
        int h = static_cast<int>(h0);
        do {
            used[static_cast<size_t>(h)] = 1;
            cyc.push_back(h);
            int t = w.halves[static_cast<size_t>(h)].twin;
            const auto& rot =
                w.vertices[static_cast<size_t>(w.halves[static_cast<size_t>(t)].vertex)].rot;
            int p = pos[static_cast<size_t>(t)];
            h = rot[(static_cast<size_t>(p) + rot.size() - 1) % rot.size()];
        } while (h != static_cast<int>(h0));
        faces.push_back(std::move(cyc));
    }
    return faces;
}

std::vector<int> internal_faces(const WebDiagram& w) {
    std::vector<int> sides;
    for (long i = 0; i < w.free_loops; ++i) sides.push_back(0);
    for (auto& f : face_cycles(w)) {
        bool touches_boundary = false;
        for (int h : f) {
            VertexKind k =
                w.vertices[static_cast<size_t>(w.halves[static_cast<size_t>(h)].vertex)].kind;
            if (k == VertexKind::DomBoundary || k == VertexKind::CodBoundary) {
                touches_boundary = true;
                break;
            }
        }
        if (!touches_boundary) sides.push_back(static_cast<int>(f.size()));
    }
    std::sort(sides.begin(), sides.end());
    return sides;
}

bool is_basis_web(const WebDiagram& w) {
    if (w.free_loops > 0) return false;
    for (int s : internal_faces(w))
        if (s < 6) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

struct CanonOrder {
    std::vector<int> vnew, hnew;  // old id -> new id
    std::vector<int> vorder;      // new id -> old id
    std::vector<int> horder;
    std::vector<std::vector<int>> anchored_rot;  // per new vertex, old half ids
};

// BFS numbering over one region, starting from the given seed half-edges.
void bfs_number(const WebDiagram& w, CanonOrder& c, const std::vector<int>& seed_halves) {
    std::deque<int> queue;
    auto visit = [&](int v, int anchor) {
        c.vnew[static_cast<size_t>(v)] = static_cast<int>(c.vorder.size());
        c.vorder.push_back(v);
        const auto& rot = w.vertices[static_cast<size_t>(v)].rot;
        size_t a = 0;
        while (rot[a] != anchor) ++a;
        std::vector<int> ordered;
        for (size_t i = 0; i < rot.size(); ++i) ordered.push_back(rot[(a + i) % rot.size()]);
        for (int h : ordered) {
            c.hnew[static_cast<size_t>(h)] = static_cast<int>(c.horder.size());
            c.horder.push_back(h);
            queue.push_back(h);
        }
        c.anchored_rot.push_back(std::move(ordered));
    };
    for (int s : seed_halves) {
        int v = w.halves[static_cast<size_t>(s)].vertex;
        if (c.vnew[static_cast<size_t>(v)] < 0) visit(v, s);
    }
    while (!queue.empty()) {
        int h = queue.front();
        queue.pop_front();
        int t = w.halves[static_cast<size_t>(h)].twin;
        int v = w.halves[static_cast<size_t>(t)].vertex;
        if (c.vnew[static_cast<size_t>(v)] < 0) visit(v, t);
    }
}

std::string serialize_tables(const WebDiagram& w, const CanonOrder& c) {
    std::ostringstream os;
    for (int v : c.vorder) {
        switch (w.vertices[static_cast<size_t>(v)].kind) {
            case VertexKind::Source: os << 's'; break;
            case VertexKind::Sink: os << 'k'; break;
            case VertexKind::DomBoundary: os << 'd'; break;
            case VertexKind::CodBoundary: os << 'c'; break;
        }
    }
    os << '|';
    for (int h : c.horder) {
        const HalfEdge& he = w.halves[static_cast<size_t>(h)];
        os << c.hnew[static_cast<size_t>(he.twin)] << (he.out ? '>' : '<') << ':';
    }
    return os.str();
}

CanonOrder canonical_order(const WebDiagram& w) {
    CanonOrder c;
    c.vnew.assign(w.vertices.size(), -1);
    c.hnew.assign(w.halves.size(), -1);

    std::vector<int> seeds;
    for (int v : w.domain) seeds.push_back(w.vertices[static_cast<size_t>(v)].rot[0]);
    for (int v : w.codomain) seeds.push_back(w.vertices[static_cast<size_t>(v)].rot[0]);
    bfs_number(w, c, seeds);

    // Components unreachable from the boundary: canonicalize each by its
    // minimal seed, then append in sorted order.
    std::vector<std::pair<std::string, int>> floating;  // (min encoding, best seed)
    std::vector<char> grouped(w.vertices.size(), 0);
    for (size_t v0 = 0; v0 < w.vertices.size(); ++v0) {
        if (c.vnew[v0] >= 0 || grouped[v0]) continue;
        std::vector<int> comp_halves;
        std::deque<int> q{static_cast<int>(v0)};
        grouped[v0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int h : w.vertices[static_cast<size_t>(v)].rot) {
                comp_halves.push_back(h);
                int u = w.halves[static_cast<size_t>(w.halves[static_cast<size_t>(h)].twin)]
                            .vertex;
                if (!grouped[static_cast<size_t>(u)]) {
                    grouped[static_cast<size_t>(u)] = 1;
                    q.push_back(u);
                }
            }
        }
        std::string best;
        int best_seed = -1;
        for (int s : comp_halves) {
            CanonOrder local;
            local.vnew.assign(w.vertices.size(), -1);
            local.hnew.assign(w.halves.size(), -1);
            bfs_number(w, local, {s});
            std::string enc = serialize_tables(w, local);
            if (best_seed < 0 || enc < best) {
                best = enc;
                best_seed = s;
            }
        }
        floating.push_back({best, best_seed});
    }
    std::sort(floating.begin(), floating.end());
    for (auto& [enc, seed] : floating) bfs_number(w, c, {seed});
    return c;
}

}  // namespace

std::vector<int> canonical_half_ids(const WebDiagram& w) {
    return canonical_order(w).hnew;
}

CanonicalKey canonical_key(const WebDiagram& w) {
    CanonOrder c = canonical_order(w);
    std::ostringstream os;
    os << w.dom_signs().str() << '/' << w.cod_signs().str() << '/' << w.free_loops << '/'
       << serialize_tables(w, c);
    return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Connected components over vertices (edges of the map only).
std::vector<int> components(const WebDiagram& w) {
    std::vector<int> comp(w.vertices.size(), -1);
    int nc = 0;
    for (size_t v0 = 0; v0 < w.vertices.size(); ++v0) {
        if (comp[v0] >= 0) continue;
        std::deque<int> q{static_cast<int>(v0)};
        comp[v0] = nc;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int h : w.vertices[static_cast<size_t>(v)].rot) {
                int u =
                    w.halves[static_cast<size_t>(w.halves[static_cast<size_t>(h)].twin)].vertex;
                if (comp[static_cast<size_t>(u)] < 0) {
                    comp[static_cast<size_t>(u)] = nc;
                    q.push_back(u);
                }
            }
        }
        ++nc;
    }
    return comp;
}

void euler_check(const WebDiagram& w, const std::string& what) {
    std::vector<int> comp = components(w);
    int nc = 0;
    for (int cidx : comp) nc = std::max(nc, cidx + 1);
    std::vector<long> V(static_cast<size_t>(nc), 0), E(static_cast<size_t>(nc), 0),
        F(static_cast<size_t>(nc), 0);
    for (size_t v = 0; v < w.vertices.size(); ++v) ++V[static_cast<size_t>(comp[v])];
    for (auto& h : w.halves) ++E[static_cast<size_t>(comp[static_cast<size_t>(h.vertex)])];
    for (auto& f : face_cycles(w))
        ++F[static_cast<size_t>(
            comp[static_cast<size_t>(w.halves[static_cast<size_t>(f[0])].vertex)])];
    for (int i = 0; i < nc; ++i)
        if (V[static_cast<size_t>(i)] - E[static_cast<size_t>(i)] / 2 +
                F[static_cast<size_t>(i)] !=
            2)
            throw std::invalid_argument("diagram is not planar (" + what + ")");
}

}  // namespace

void validate(const WebDiagram& w) {
    size_t nv = w.vertices.size(), nh = w.halves.size();
    if (nh % 2 != 0) throw std::invalid_argument("odd number of half-edges");
    std::vector<int> owner(nh, -1);
    for (size_t v = 0; v < nv; ++v) {
        const Vertex& vx = w.vertices[v];
        bool boundary =
            vx.kind == VertexKind::DomBoundary || vx.kind == VertexKind::CodBoundary;
        if (vx.rot.size() != (boundary ? 1u : 3u))
            throw std::invalid_argument("vertex degree does not match its kind");
        for (int h : vx.rot) {
            if (h < 0 || static_cast<size_t>(h) >= nh || owner[static_cast<size_t>(h)] != -1)
                throw std::invalid_argument("rotation lists are not a partition of half-edges");
            owner[static_cast<size_t>(h)] = static_cast<int>(v);
            if (w.halves[static_cast<size_t>(h)].vertex != static_cast<int>(v))
                throw std::invalid_argument("half-edge vertex field mismatch");
        }
        for (int h : vx.rot) {
            bool out = w.halves[static_cast<size_t>(h)].out;
            if (vx.kind == VertexKind::Source && !out)
                throw std::invalid_argument("source vertex with incoming edge");
            if (vx.kind == VertexKind::Sink && out)
                throw std::invalid_argument("sink vertex with outgoing edge");
        }
    }
    for (size_t h = 0; h < nh; ++h) {
        if (owner[h] < 0) throw std::invalid_argument("orphan half-edge");
        const HalfEdge& he = w.halves[h];
        if (he.twin < 0 || static_cast<size_t>(he.twin) >= nh ||
            static_cast<size_t>(w.halves[static_cast<size_t>(he.twin)].twin) != h)
            throw std::invalid_argument("twin is not an involution");
        if (he.twin == static_cast<int>(h))
            throw std::invalid_argument("half-edge twinned to itself");
        if (w.halves[static_cast<size_t>(he.twin)].out == he.out)
            throw std::invalid_argument("edge without a coherent direction");
    }
    std::set<int> dset(w.domain.begin(), w.domain.end()),
        cset(w.codomain.begin(), w.codomain.end());
    size_t ndom = 0, ncod = 0;
    for (size_t v = 0; v < nv; ++v) {
        if (w.vertices[v].kind == VertexKind::DomBoundary) {
            ++ndom;
            if (!dset.count(static_cast<int>(v)))
                throw std::invalid_argument("domain vertex missing from domain list");
        }
        if (w.vertices[v].kind == VertexKind::CodBoundary) {
            ++ncod;
            if (!cset.count(static_cast<int>(v)))
                throw std::invalid_argument("codomain vertex missing from codomain list");
        }
    }
    if (ndom != w.domain.size() || ncod != w.codomain.size() ||
        dset.size() != w.domain.size() || cset.size() != w.codomain.size())
        throw std::invalid_argument("boundary lists do not match boundary vertices");
    if (w.free_loops < 0) throw std::invalid_argument("negative loop count");

    euler_check(w, "component Euler formula");

    // Frame test: adding the disk boundary (domain left-to-right, then
    // codomain right-to-left) must keep genus zero. This pins the cyclic
    // boundary order on the outer face.
    std::vector<int> cyc = w.domain;
    for (auto it = w.codomain.rbegin(); it != w.codomain.rend(); ++it) cyc.push_back(*it);
    if (cyc.size() >= 3) {
        WebDiagram aug = w;
        size_t n = cyc.size();
        std::vector<int> east(n, -1), west(n, -1);
        for (size_t i = 0; i < n; ++i) {
            size_t j = (i + 1) % n;
            int a = static_cast<int>(aug.halves.size());
            int bh = a + 1;
            aug.halves.push_back({bh, cyc[i], true});
            aug.halves.push_back({a, cyc[j], false});
            bool i_bottom =
                w.vertices[static_cast<size_t>(cyc[i])].kind == VertexKind::DomBoundary;
            bool j_bottom =
                w.vertices[static_cast<size_t>(cyc[j])].kind == VertexKind::DomBoundary;
            // For bottom vertices the frame successor lies east; on top the
            // walk runs right-to-left, so the successor lies west.
            (i_bottom ? east : west)[i] = a;
            (j_bottom ? west : east)[j] = bh;
        }
        for (size_t i = 0; i < n; ++i) {
            Vertex& vx = aug.vertices[static_cast<size_t>(cyc[i])];
            int strand = vx.rot[0];
            bool bottom = vx.kind == VertexKind::DomBoundary;
            if (bottom)
                vx.rot = {east[i], strand, west[i]};
            else
                vx.rot = {east[i], west[i], strand};
        }
        euler_check(aug, "boundary order");
    }
}

// ---------------------------------------------------------------------------
// Boundary scan

BoundaryScan boundary_scan(const WebDiagram& w) {
    BoundaryScan r;
    SignSeq cod = w.cod_signs(), dom = w.dom_signs();
    for (size_t j = 0; j < w.codomain.size() && !r.top; ++j) {
        int h = w.vertices[static_cast<size_t>(w.codomain[j])].rot[0];
        int t = w.halves[static_cast<size_t>(h)].twin;
        const Vertex& u = w.vertices[static_cast<size_t>(w.halves[static_cast<size_t>(t)].vertex)];
        switch (u.kind) {
            case VertexKind::CodBoundary:
                r.top = {{cod.plus_at(j) ? Gen::b_pm : Gen::b_mp, static_cast<int>(j)}};
                break;
            case VertexKind::Source:
                r.top = {{Gen::t_m_pp, static_cast<int>(j)}};
                break;
            case VertexKind::Sink:
                r.top = {{Gen::t_p_mm, static_cast<int>(j)}};
                break;
            case VertexKind::DomBoundary:
                break;  // through strand
        }
    }
    for (size_t j = 0; j < w.domain.size() && !r.bottom; ++j) {
        int h = w.vertices[static_cast<size_t>(w.domain[j])].rot[0];
        int t = w.halves[static_cast<size_t>(h)].twin;
        const Vertex& u = w.vertices[static_cast<size_t>(w.halves[static_cast<size_t>(t)].vertex)];
        switch (u.kind) {
            case VertexKind::DomBoundary:
                r.bottom = {{dom.plus_at(j) ? Gen::d_pm : Gen::d_mp, static_cast<int>(j)}};
                break;
            case VertexKind::Sink:
                r.bottom = {{Gen::t_pp_m, static_cast<int>(j)}};
                break;
            case VertexKind::Source:
                r.bottom = {{Gen::t_mm_p, static_cast<int>(j)}};
                break;
            case VertexKind::CodBoundary:
                break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Source: return "src";
        case VertexKind::Sink: return "snk";
        case VertexKind::DomBoundary: return "dom";
        case VertexKind::CodBoundary: return "cod";
    }
    return "?";
}

VertexKind kind_from(const std::string& s) {
    if (s == "src") return VertexKind::Source;
    if (s == "snk") return VertexKind::Sink;
    if (s == "dom") return VertexKind::DomBoundary;
    if (s == "cod") return VertexKind::CodBoundary;
    throw std::invalid_argument("unknown vertex kind: " + s);
}

}  // namespace

std::string web_to_json(const WebDiagram& w, int indent) {
    CanonOrder c = canonical_order(w);
    njson j;
    j["domain"] = w.dom_signs().str();
    j["codomain"] = w.cod_signs().str();
    if (w.free_loops > 0) j["loops"] = w.free_loops;
    njson vs = njson::array();
    for (size_t i = 0; i < c.vorder.size(); ++i) {
        int v = c.vorder[i];
        njson jv;
        jv["id"] = i;
        jv["kind"] = kind_name(w.vertices[static_cast<size_t>(v)].kind);
        njson rot = njson::array();
        for (int h : c.anchored_rot[i]) rot.push_back(c.hnew[static_cast<size_t>(h)]);
        jv["rot"] = rot;
        vs.push_back(jv);
    }
    j["vertices"] = vs;
    njson hs = njson::array();
    for (size_t i = 0; i < c.horder.size(); ++i) {
        const HalfEdge& he = w.halves[static_cast<size_t>(c.horder[i])];
        njson jh;
        jh["id"] = i;
        jh["twin"] = c.hnew[static_cast<size_t>(he.twin)];
        jh["vertex"] = c.vnew[static_cast<size_t>(he.vertex)];
        jh["dir"] = he.out ? "out" : "in";
        hs.push_back(jh);
    }
    j["halfedges"] = hs;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

WebDiagram web_from_json(const std::string& text) {
    njson j = njson::parse(text);
    WebDiagram w;
    SignSeq dom(j.at("domain").get<std::string>());
    SignSeq cod(j.at("codomain").get<std::string>());
    if (j.contains("loops")) w.free_loops = j.at("loops").get<long>();
    w.vertices.resize(j.at("vertices").size());
    w.halves.resize(j.at("halfedges").size());
    for (auto& jv : j.at("vertices")) {
        size_t id = jv.at("id").get<size_t>();
        if (id >= w.vertices.size()) throw std::invalid_argument("vertex id out of range");
        w.vertices[id].kind = kind_from(jv.at("kind").get<std::string>());
        for (auto& h : jv.at("rot")) w.vertices[id].rot.push_back(h.get<int>());
    }
    for (auto& jh : j.at("halfedges")) {
        size_t id = jh.at("id").get<size_t>();
        if (id >= w.halves.size()) throw std::invalid_argument("half-edge id out of range");
        w.halves[id].twin = jh.at("twin").get<int>();
        w.halves[id].vertex = jh.at("vertex").get<int>();
        std::string dir = jh.at("dir").get<std::string>();
        if (dir != "out" && dir != "in") throw std::invalid_argument("bad dir field");
        w.halves[id].out = dir == "out";
    }
    // Boundary lists follow first-appearance order of boundary vertices.
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        if (w.vertices[v].kind == VertexKind::DomBoundary)
            w.domain.push_back(static_cast<int>(v));
        if (w.vertices[v].kind == VertexKind::CodBoundary)
            w.codomain.push_back(static_cast<int>(v));
    }
    validate(w);
    if (w.dom_signs() != dom || w.cod_signs() != cod)
        throw std::invalid_argument("declared boundary signs do not match edge directions");
    return w;
}

}  // namespace a2

