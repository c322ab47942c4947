#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "a2spider/rewrite.hpp"

using namespace a2;

namespace {

SignSeq ss(const char* s) { return SignSeq(s); }
Morphism gm(Gen g) { return Morphism::generator(g); }
Morphism id(const char* s) { return Morphism::identity(ss(s)); }

const Morphism& empty_id() {
    static Morphism e = Morphism::identity(ss(""));
    return e;
}

}  // namespace

TEST_CASE("relation sanity: circle, bigon, square") {
    // circle: d after b closes into a loop worth [3]
    Morphism circle = gm(Gen::b_pm).then(gm(Gen::d_pm));
    CHECK(circle == empty_id().scaled(qint(3)));
    CHECK(circle.coefficient_of(make_identity(ss(""))) == qint(3));

    // bigon on a + strand and on a - strand
    CHECK(gm(Gen::t_p_mm).then(gm(Gen::t_mm_p)) == id("+").scaled(qint(2)));
    CHECK(gm(Gen::t_m_pp).then(gm(Gen::t_pp_m)) == id("-").scaled(qint(2)));

    // square: both crossingless resolutions with coefficient 1
    Morphism square = gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm));
    Morphism turnback = gm(Gen::d_pm).then(gm(Gen::b_pm));
    CHECK(square.term_count() == 2);
    CHECK(square == id("+-") + turnback);
    CHECK(square.coefficient_of(make_identity(ss("+-"))) == Scalar(1));
    for (auto& [k, t] : turnback.terms()) CHECK(square.coefficient_of(t.web) == Scalar(1));

    // normal-form idempotence
    for (auto& [k, t] : square.terms())
        CHECK(reduce_web(t.web) == Morphism::from_web(t.web));
}

TEST_CASE("linear structure") {
    Morphism a = gm(Gen::h_pm_mp);
    CHECK((a + a.scaled(Scalar(-1))).is_zero());
    CHECK(empty_id().scaled(qint(3)).term_count() == 1);
    Morphism square = gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm));
    Morphism turnback = gm(Gen::d_pm).then(gm(Gen::b_pm));
    CHECK(id("+-") + turnback == square);
    CHECK_THROWS_AS(a + id("+"), std::invalid_argument);
}

TEST_CASE("compose and tensor") {
    CHECK(id("+").then(gm(Gen::t_p_mm)) == gm(Gen::t_p_mm));
    CHECK(gm(Gen::t_p_mm).tensor(empty_id()) == gm(Gen::t_p_mm));
    CHECK_THROWS_AS(gm(Gen::t_p_mm).then(gm(Gen::t_p_mm)), std::invalid_argument);

    // interchange law on generator pieces
    Morphism a = gm(Gen::t_m_pp), c = gm(Gen::t_pp_m);   // - -> ++ -> -
    Morphism b = gm(Gen::b_pm), d = gm(Gen::d_pm);       // "" -> +- -> ""
    CHECK(a.tensor(b).then(c.tensor(d)) == a.then(c).tensor(b.then(d)));
}

TEST_CASE("star morphism") {
    Morphism xs[] = {gm(Gen::h_pm_mp), gm(Gen::b_pm),
                     gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm)).scaled(qint(2))};
    for (auto& m : xs) CHECK(m.star().star() == m);
    CHECK(gm(Gen::b_pm).star() == gm(Gen::d_pm));
    Morphism f = gm(Gen::t_m_pp), g = gm(Gen::t_pp_m);
    CHECK(f.then(g).star() == g.star().then(f.star()));
}

TEST_CASE("closure trace") {
    CHECK(id("+").trace_closure() == qint(3));
    CHECK(id("+-").trace_closure() == qint(3) * qint(3));
    CHECK(id("").trace_closure() == Scalar(1));

    // trace property on a composable endomorphism pair
    Morphism a = gm(Gen::t_p_mm);  // + -> --
    Morphism b = gm(Gen::t_mm_p);  // -- -> +
    CHECK(a.then(b).trace_closure() == b.then(a).trace_closure());
    Morphism h1 = gm(Gen::h_pm_mp), h2 = gm(Gen::h_mp_pm);
    CHECK(h1.then(h2).trace_closure() == h2.then(h1).trace_closure());
}

TEST_CASE("coefficient_of") {
    Morphism zero = Morphism::zero(ss("+-"), ss("+-"));
    CHECK(zero.coefficient_of(make_identity(ss("+-"))).is_zero());
    CHECK_THROWS_AS(zero.coefficient_of(make_identity(ss("+"))), std::invalid_argument);
}

TEST_CASE("random rewrite orders agree with the deterministic engine") {
    std::mt19937 build_rng(7);
    // layered random composites, glued without intermediate reduction
    for (int trial = 0; trial < 20; ++trial) {
        WebDiagram w = make_identity(ss(build_rng() % 2 ? "+-" : "-+"));
        for (int layer = 0; layer < 6; ++layer) {
            SignSeq cod = w.cod_signs();
            std::vector<WebDiagram> options;
            for (Gen g : {Gen::t_m_pp, Gen::t_p_mm, Gen::t_pp_m, Gen::t_mm_p, Gen::b_mp,
                          Gen::b_pm, Gen::d_pm, Gen::d_mp, Gen::h_pm_mp, Gen::h_mp_pm}) {
                WebDiagram gw = make_gen(g);
                SignSeq need = gw.dom_signs();
                for (size_t at = 0; at + need.size() <= cod.size(); ++at) {
                    if (cod.slice(at, need.size()) != need) continue;
                    WebDiagram layer_web = make_identity(cod.slice(0, at));
                    layer_web = tensor_webs(layer_web, gw);
                    layer_web = tensor_webs(
                        layer_web,
                        make_identity(cod.slice(at + need.size(),
                                                cod.size() - at - need.size())));
                    options.push_back(layer_web);
                }
            }
            if (options.empty()) break;
            w = compose_webs(w, options[build_rng() % options.size()]);
        }
        Morphism expected = reduce_web(w);
        for (unsigned seed = 1; seed <= 5; ++seed) {
            std::mt19937 rng(seed * 977 + trial);
            CHECK(reduce_web_random(w, Scalar(1), rng) == expected);
        }
    }
}

TEST_CASE("term budget guard") {
    set_term_limit(1);
    CHECK_THROWS_AS(gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm)), TermBudgetExceeded);
    set_term_limit(0);
    CHECK_NOTHROW(gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm)));
}

TEST_CASE("morphism json round trip") {
    Morphism xs[] = {gm(Gen::h_pm_mp).then(gm(Gen::h_mp_pm)).scaled(qint(2)),
                     Morphism::zero(ss("+"), ss("+")), empty_id().scaled(qint(3))};
    for (auto& m : xs) {
        std::string j = m.to_json();
        CHECK(Morphism::from_json(j) == m);
        CHECK(Morphism::from_json(j).to_json() == j);
    }
}
