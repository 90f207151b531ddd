#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "centerfocus/focus.hpp"
#include "centerfocus/linalg.hpp"
#include "centerfocus/rng.hpp"
#include "support/focus_oracle.hpp"

using namespace centerfocus;
using namespace centerfocus::testsupport;

namespace {

RealSystem3D family_at(const std::vector<Rat>& a) {
    auto av = RealSystem3D::all_vars();
    std::map<std::string, Poly> sub;
    for (const auto& v : kRealStateVars) sub[v] = Poly::variable(v, av);
    for (std::size_t i = 0; i < 6; ++i) sub[kParamVars[i]] = Poly::constant(QC(a[i]), av);
    RealSystem3D base = standard_family();
    RealSystem3D out;
    out.beta = base.beta;
    for (int c = 0; c < 3; ++c) out.rhs[c] = base.rhs[c].substitute(sub);
    return out;
}

}  // namespace

TEST_CASE("standardize of f == 0 gives the linear system") {
    Poly f{std::vector<std::string>{"u", "du", "ddu"}};
    RealSystem3D sys = standardize(f);
    auto av = RealSystem3D::all_vars();
    CHECK(sys.rhs[0] == poly_from_string("-1*v", av));
    CHECK(sys.rhs[1] == poly_from_string("1*u", av));
    CHECK(sys.rhs[2] == poly_from_string("-1*w", av));
}

TEST_CASE("standardize of f = 2*ddu^2 gives h = (u+w)^2") {
    Poly f = poly_from_string("2*ddu^2", {"u", "du", "ddu"});
    RealSystem3D sys = standardize(f);
    // h = (u+w)^2 = u^2 + 2uw + w^2, i.e. a1 = a3 = 1 and a5 = 2
    Poly h = poly_from_string("1*u^2 + 2*u*w + 1*w^2", RealSystem3D::all_vars());
    RealSystem3D want = standardize_from_h(h);
    CHECK(sys.rhs[0] == want.rhs[0]);
    CHECK(sys.rhs[1] == want.rhs[1]);
    CHECK(sys.rhs[2] == want.rhs[2]);
}

TEST_CASE("standardize rejects f with linear terms") {
    Poly f = poly_from_string("1*du + 1*u^2", {"u", "du", "ddu"});
    CHECK_THROWS(standardize(f));
}

TEST_CASE("standard family has the normal-form right-hand sides") {
    RealSystem3D sys = standard_family();
    auto av = RealSystem3D::all_vars();
    Poly h = poly_from_string(
        "1*a1*u^2 + 1*a2*v^2 + 1*a3*w^2 + 1*a4*u*v + 1*a5*u*w + 1*a6*v*w", av);
    CHECK(sys.rhs[0] == poly_from_string("-1*v", av) + h);
    CHECK(sys.rhs[1] == poly_from_string("1*u", av) + h);
    CHECK(sys.rhs[2] == poly_from_string("-1*w", av) + h);
    CHECK_NOTHROW(sys.check_invariants());
}

TEST_CASE("complexify of the linear system") {
    Poly f{std::vector<std::string>{"u", "du", "ddu"}};
    ComplexSystem cs = complexify(standardize(f));
    auto cv = ComplexSystem::all_vars();
    CHECK(cs.rhs[0] == poly_from_string("(0,1)*x", cv));
    CHECK(cs.rhs[1] == poly_from_string("(0,-1)*y", cv));
    CHECK(cs.rhs[2] == poly_from_string("-1*z", cv));
}

TEST_CASE("complexified family has the conjugation structure") {
    ComplexSystem cs = complexify(standard_family());
    CHECK(cs.conjugate_symmetric());
    CHECK_NOTHROW(cs.check_invariants());
}

TEST_CASE("real slice: ydot is the conjugate of xdot and zdot is real") {
    Rng rng(101, "focus-realslice");
    ComplexSystem cs = complexify(standard_family());
    auto cv = ComplexSystem::all_vars();
    for (int trial = 0; trial < 100; ++trial) {
        QC x0 = rng.next_qc();
        std::vector<QC> pt{x0, x0.conj(), QC(rng.next_dyadic())};
        for (int i = 0; i < 6; ++i) pt.push_back(QC(rng.next_dyadic()));
        QC xdot = cs.rhs[0].evaluate(pt);
        QC ydot = cs.rhs[1].evaluate(pt);
        QC zdot = cs.rhs[2].evaluate(pt);
        CHECK(ydot == xdot.conj());
        CHECK(zdot.is_real());
    }
}

TEST_CASE("g110 vanishes identically") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 2);
    CHECK(fq.at(1).raw.is_zero());
}

TEST_CASE("all focus quantities vanish for the zero family") {
    ComplexSystem cs = complexify(family_at({0, 0, 0, 0, 0, 0}));
    FocusQuantitySet fq = focus_quantities(cs, 4);
    for (int K = 1; K <= 4; ++K) CHECK(fq.at(K).raw.is_zero());
}

TEST_CASE("kmax below 2 is rejected") {
    ComplexSystem cs = complexify(standard_family());
    CHECK_THROWS(focus_quantities(cs, 1));
}

TEST_CASE("g220 equals the hand-expanded first obstruction") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 2);
    Poly hand = poly_from_string(
        "-10*a1^2 + 10*a2^2 + 13*a1*a5 + 7*a2*a5 + 11*a1*a6 + 9*a2*a6 + -1*a4*a5 + 3*a4*a6",
        kParamVars).scaled(QC(Rat(1, 20)));
    CHECK(fq.at(2).raw == hand);
}

TEST_CASE("recursion matches the brute-force oracle for K = 2, 3") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 3);
    auto oracle = oracle_focus_quantities(cs, 3);
    CHECK(fq.at(2).raw == oracle.at(2));
    CHECK(fq.at(3).raw == oracle.at(3));
}

TEST_CASE("closed-form route matches the recursion for K = 2, 3") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 3);
    CHECK(closed_form_focus_quantity(cs, 2, fq.v_table) == fq.at(2).raw);
    CHECK(closed_form_focus_quantity(cs, 3, fq.v_table) == fq.at(3).raw);
}

TEST_CASE("focus quantities are homogeneous of the observed degree") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 4);
    for (int K = 2; K <= 4; ++K) {
        CHECK(fq.at(K).normalized.is_homogeneous());
        CHECK(fq.at(K).normalized.degree() == 2 * K - 2);
    }
}

TEST_CASE("chart specialization") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 2);
    auto chart0 = chart_specialize(fq, Chart::A6Zero);
    auto chart1 = chart_specialize(fq, Chart::A6One);
    REQUIRE(chart0.size() == 1);
    REQUIRE(chart1.size() == 1);
    CHECK(chart0[0].first == 2);
    CHECK(chart0[0].second.is_homogeneous());

    // case (j) point kills the a6 = 1 specialization of g220
    std::vector<QC> pj{QC(Rat(1, 4)), QC(Rat(-1, 2)), QC(Rat(-5, 4)), QC(0), QC(Rat(1, 2))};
    CHECK(chart1[0].second.evaluate(pj) == QC(0));

    // the a6 = 0 chart vanishes identically on a1 = a2 = a4 = 0
    std::vector<std::string> free_params{"s", "t"};
    std::map<std::string, Poly> sub;
    sub["a1"] = Poly{free_params};
    sub["a2"] = Poly{free_params};
    sub["a4"] = Poly{free_params};
    sub["a3"] = Poly::variable("s", free_params);
    sub["a5"] = Poly::variable("t", free_params);
    CHECK(chart0[0].second.substitute(sub).is_zero());
}

TEST_CASE("exact vanishing on every Theorem 3.2 and Theorem 1.1 condition, K <= 4") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 4);
    for (const auto& [key, gens] : center_condition_generators()) {
        for (int K = 2; K <= 4; ++K) {
            INFO("condition ", key, " K=", K);
            CHECK(vanishes_on_condition(fq.at(K).raw, key));
        }
    }
}

TEST_CASE("deterministic serialization") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet f1 = focus_quantities(cs, 3);
    FocusQuantitySet f2 = focus_quantities(cs, 3);
    for (int K = 2; K <= 3; ++K)
        CHECK(poly_to_string(f1.at(K).normalized) == poly_to_string(f2.at(K).normalized));
}
