#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "a2spider/web.hpp"

using namespace a2;

namespace {

SignSeq ss(const char* s) { return SignSeq(s); }

WebDiagram gen(Gen g) { return make_gen(g); }

// Copy with randomly permuted vertex/half ids and randomly rotated rotation
// lists; represents the same map.
WebDiagram shuffled(const WebDiagram& w, std::mt19937& rng) {
    size_t nv = w.vertices.size(), nh = w.halves.size();
    std::vector<int> pv(nv), ph(nh);
    std::iota(pv.begin(), pv.end(), 0);
    std::iota(ph.begin(), ph.end(), 0);
    std::shuffle(pv.begin(), pv.end(), rng);
    std::shuffle(ph.begin(), ph.end(), rng);
    WebDiagram r;
    r.free_loops = w.free_loops;
    r.vertices.resize(nv);
    r.halves.resize(nh);
    for (size_t v = 0; v < nv; ++v) {
        Vertex nvx{w.vertices[v].kind, {}};
        for (int h : w.vertices[v].rot) nvx.rot.push_back(ph[h]);
        if (nvx.rot.size() > 1) {
            size_t k = rng() % nvx.rot.size();
            std::rotate(nvx.rot.begin(), nvx.rot.begin() + k, nvx.rot.end());
        }
        r.vertices[pv[v]] = std::move(nvx);
    }
    for (size_t h = 0; h < nh; ++h)
        r.halves[ph[h]] = {ph[w.halves[h].twin], pv[w.halves[h].vertex], w.halves[h].out};
    for (int v : w.domain) r.domain.push_back(pv[v]);
    for (int v : w.codomain) r.codomain.push_back(pv[v]);
    return r;
}

// The hexagonal basis web of B(+-+, -+-): domain/codomain -+-, six
// trivalent vertices around one internal six-sided face.
WebDiagram hexagon_web() {
    WebDiagram w;
    auto addv = [&](VertexKind k) {
        w.vertices.push_back({k, {}});
        return static_cast<int>(w.vertices.size()) - 1;
    };
    auto adde = [&](int from, int to) {
        int a = static_cast<int>(w.halves.size());
        w.halves.push_back({a + 1, from, true});
        w.halves.push_back({a, to, false});
        w.vertices[from].rot.push_back(a);
        w.vertices[to].rot.push_back(a + 1);
        return std::pair<int, int>{a, a + 1};
    };
    int D1 = addv(VertexKind::DomBoundary), D2 = addv(VertexKind::DomBoundary),
        D3 = addv(VertexKind::DomBoundary);
    int C1 = addv(VertexKind::CodBoundary), C2 = addv(VertexKind::CodBoundary),
        C3 = addv(VertexKind::CodBoundary);
    int A = addv(VertexKind::Source), B = addv(VertexKind::Sink), C = addv(VertexKind::Source);
    int TL = addv(VertexKind::Sink), M = addv(VertexKind::Source), TR = addv(VertexKind::Sink);
    auto [aD1, x0] = adde(A, D1);
    auto [aTL, tlA] = adde(A, TL);
    auto [aB, bA] = adde(A, B);
    auto [x1, bD2] = adde(D2, B);
    auto [cB, bC] = adde(C, B);
    auto [cD3, x2] = adde(C, D3);
    auto [cTR, trC] = adde(C, TR);
    auto [mTL, tlM] = adde(M, TL);
    auto [mTR, trM] = adde(M, TR);
    auto [mC2, x3] = adde(M, C2);
    auto [x4, tlC1] = adde(C1, TL);
    auto [x5, trC3] = adde(C3, TR);
    (void)x0; (void)x1; (void)x2; (void)x3; (void)x4; (void)x5;
    w.vertices[A].rot = {aTL, aD1, aB};
    w.vertices[B].rot = {bC, bA, bD2};
    w.vertices[C].rot = {cTR, cB, cD3};
    w.vertices[TL].rot = {tlM, tlC1, tlA};
    w.vertices[M].rot = {mC2, mTL, mTR};
    w.vertices[TR].rot = {trC3, trM, trC};
    w.domain = {D1, D2, D3};
    w.codomain = {C1, C2, C3};
    return w;
}

}  // namespace

TEST_CASE("generators are valid with the documented boundaries") {
    struct Row {
        Gen g;
        const char* dom;
        const char* cod;
    } rows[] = {
        {Gen::t_m_pp, "-", "++"}, {Gen::t_p_mm, "+", "--"}, {Gen::t_pp_m, "++", "-"},
        {Gen::t_mm_p, "--", "+"}, {Gen::b_mp, "", "-+"},    {Gen::b_pm, "", "+-"},
        {Gen::d_pm, "+-", ""},    {Gen::d_mp, "-+", ""},    {Gen::h_pm_mp, "+-", "-+"},
        {Gen::h_mp_pm, "-+", "+-"},
    };
    for (auto& r : rows) {
        WebDiagram w = gen(r.g);
        CHECK_NOTHROW(validate(w));
        CHECK(w.dom_signs() == ss(r.dom));
        CHECK(w.cod_signs() == ss(r.cod));
        CHECK(is_basis_web(w));
    }
    WebDiagram e = make_identity(ss(""));
    CHECK(e.vertices.empty());
    WebDiagram id = make_identity(ss("+-"));
    CHECK_NOTHROW(validate(id));
    CHECK(id.dom_signs() == ss("+-"));
}

TEST_CASE("composition and tensor") {
    WebDiagram id_p = make_identity(ss("+"));
    CHECK(canonical_key(compose_webs(id_p, id_p)) == canonical_key(id_p));
    CHECK(canonical_key(tensor_webs(make_identity(ss("")), id_p)) == canonical_key(id_p));
    CHECK(canonical_key(tensor_webs(id_p, make_identity(ss("-")))) ==
          canonical_key(make_identity(ss("+-"))));
    CHECK_THROWS_WITH_AS(compose_webs(id_p, make_identity(ss("-"))),
                         doctest::Contains("position 0"), std::invalid_argument);

    // cup then cap closes into a circle
    WebDiagram circle = compose_webs(gen(Gen::b_pm), gen(Gen::d_pm));
    CHECK(circle.free_loops == 1);
    CHECK(circle.vertices.empty());
    CHECK(internal_faces(circle) == std::vector<int>{0});
    CHECK_FALSE(is_basis_web(circle));

    // strict associativity at the diagram level
    WebDiagram a = gen(Gen::t_m_pp), b = gen(Gen::h_pm_mp), c = make_identity(ss("-+"));
    CHECK(canonical_key(tensor_webs(tensor_webs(a, b), c)) ==
          canonical_key(tensor_webs(a, tensor_webs(b, c))));
    WebDiagram f = gen(Gen::t_m_pp);                      // - -> ++
    WebDiagram g2 = tensor_webs(gen(Gen::t_p_mm), id_p);  // ++ -> --+
    WebDiagram h3 = tensor_webs(gen(Gen::t_mm_p), id_p);  // --+ -> ++
    CHECK(canonical_key(compose_webs(compose_webs(f, g2), h3)) ==
          canonical_key(compose_webs(f, compose_webs(g2, h3))));
}

TEST_CASE("bigon and square configurations") {
    WebDiagram bigon = compose_webs(gen(Gen::t_m_pp), gen(Gen::t_pp_m));
    CHECK(internal_faces(bigon) == std::vector<int>{2});
    CHECK_FALSE(is_basis_web(bigon));

    WebDiagram pinch = compose_webs(gen(Gen::t_pp_m), gen(Gen::t_m_pp));
    CHECK(internal_faces(pinch).empty());
    CHECK(is_basis_web(pinch));

    WebDiagram square = compose_webs(gen(Gen::h_pm_mp), gen(Gen::h_mp_pm));
    CHECK(internal_faces(square) == std::vector<int>{4});
    CHECK_FALSE(is_basis_web(square));

    CHECK(internal_faces(make_identity(ss("+-"))).empty());
}

TEST_CASE("canonical keys: relabel invariance and separation") {
    std::mt19937 rng(20240811);
    WebDiagram webs[] = {
        make_identity(ss("+")),
        make_identity(ss("+-+")),
        gen(Gen::h_pm_mp),
        compose_webs(gen(Gen::t_pp_m), gen(Gen::t_m_pp)),
        compose_webs(gen(Gen::h_pm_mp), gen(Gen::h_mp_pm)),
        hexagon_web(),
        compose_webs(gen(Gen::b_pm), gen(Gen::d_pm)),
        tensor_webs(gen(Gen::t_m_pp), compose_webs(gen(Gen::b_pm), gen(Gen::d_pm))),
    };
    for (auto& w : webs) {
        CanonicalKey k = canonical_key(w);
        for (int rep = 0; rep < 50; ++rep) CHECK(canonical_key(shuffled(w, rng)) == k);
    }
    CHECK(canonical_key(make_identity(ss("++"))) !=
          canonical_key(compose_webs(gen(Gen::t_pp_m), gen(Gen::t_m_pp))));
}

TEST_CASE("six basis webs of B(+-+,-+-) are pairwise distinct") {
    SignSeq m("-");
    WebDiagram w1 = make_identity(ss("-+-"));
    WebDiagram w2 = compose_webs(tensor_webs(make_identity(m), gen(Gen::d_pm)),
                                 tensor_webs(gen(Gen::b_mp), make_identity(m)));
    WebDiagram w3 = compose_webs(tensor_webs(gen(Gen::d_mp), make_identity(m)),
                                 tensor_webs(make_identity(m), gen(Gen::b_pm)));
    WebDiagram w4 = compose_webs(tensor_webs(make_identity(m), gen(Gen::d_pm)),
                                 tensor_webs(make_identity(m), gen(Gen::b_pm)));
    WebDiagram w5 = compose_webs(tensor_webs(gen(Gen::d_mp), make_identity(m)),
                                 tensor_webs(gen(Gen::b_mp), make_identity(m)));
    WebDiagram w6 = hexagon_web();
    WebDiagram webs[] = {w1, w2, w3, w4, w5, w6};
    for (auto& w : webs) {
        CHECK_NOTHROW(validate(w));
        CHECK(is_basis_web(w));
        CHECK(w.dom_signs() == ss("-+-"));
        CHECK(w.cod_signs() == ss("-+-"));
    }
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j)
            CHECK(canonical_key(webs[i]) != canonical_key(webs[j]));
    CHECK(internal_faces(w6) == std::vector<int>{6});
}

TEST_CASE("star") {
    CHECK(canonical_key(star_web(make_identity(ss("+")))) ==
          canonical_key(make_identity(ss("+"))));
    CHECK(canonical_key(star_web(gen(Gen::b_pm))) == canonical_key(gen(Gen::d_pm)));
    CHECK(canonical_key(star_web(gen(Gen::b_mp))) == canonical_key(gen(Gen::d_mp)));
    CHECK(canonical_key(star_web(gen(Gen::h_pm_mp))) == canonical_key(gen(Gen::h_mp_pm)));
    CHECK(canonical_key(star_web(gen(Gen::t_m_pp))) == canonical_key(gen(Gen::t_pp_m)));

    WebDiagram webs[] = {hexagon_web(), gen(Gen::t_mm_p),
                         compose_webs(gen(Gen::h_pm_mp), gen(Gen::h_mp_pm))};
    for (auto& w : webs) {
        CHECK_NOTHROW(validate(star_web(w)));
        CHECK(canonical_key(star_web(star_web(w))) == canonical_key(w));
    }
    // contravariance
    WebDiagram f = gen(Gen::t_m_pp), g = gen(Gen::t_pp_m);
    CHECK(canonical_key(star_web(compose_webs(f, g))) ==
          canonical_key(compose_webs(star_web(g), star_web(f))));
}

TEST_CASE("validation rejects a crossed boundary order") {
    WebDiagram w = make_identity(ss("++"));
    std::swap(w.domain[0], w.domain[1]);
    CHECK_THROWS_AS(validate(w), std::invalid_argument);
}

TEST_CASE("boundary scan") {
    BoundaryScan s0 = boundary_scan(make_identity(ss("+-")));
    CHECK_FALSE(s0.top.has_value());
    CHECK_FALSE(s0.bottom.has_value());

    WebDiagram cupcap = compose_webs(gen(Gen::d_pm), gen(Gen::b_pm));
    BoundaryScan s1 = boundary_scan(cupcap);
    REQUIRE(s1.top.has_value());
    REQUIRE(s1.bottom.has_value());
    CHECK(s1.top->first == Gen::b_pm);
    CHECK(s1.bottom->first == Gen::d_pm);

    BoundaryScan s2 = boundary_scan(hexagon_web());
    REQUIRE(s2.top.has_value());
    REQUIRE(s2.bottom.has_value());

    WebDiagram pinch = compose_webs(gen(Gen::t_pp_m), gen(Gen::t_m_pp));
    BoundaryScan s3 = boundary_scan(pinch);
    REQUIRE(s3.top.has_value());
    CHECK(s3.top->first == Gen::t_m_pp);
    REQUIRE(s3.bottom.has_value());
    CHECK(s3.bottom->first == Gen::t_pp_m);
}

TEST_CASE("json round trip is byte stable") {
    WebDiagram webs[] = {make_identity(ss("+-")), gen(Gen::h_pm_mp), hexagon_web(),
                         compose_webs(gen(Gen::t_pp_m), gen(Gen::t_m_pp))};
    for (auto& w : webs) {
        std::string j1 = web_to_json(w);
        WebDiagram w2 = web_from_json(j1);
        CHECK(canonical_key(w2) == canonical_key(w));
        CHECK(web_to_json(w2) == j1);
    }
    CHECK_THROWS(
        web_from_json(R"({"domain":"+","codomain":"+","vertices":[],"halfedges":[]})"));
}
