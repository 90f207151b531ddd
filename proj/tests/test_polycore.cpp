#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "centerfocus/poly.hpp"
#include "centerfocus/rng.hpp"

using namespace centerfocus;

namespace {

const std::vector<std::string> XY{"x", "y"};

Poly P(const std::string& s, const std::vector<std::string>& vars = XY) {
    return poly_from_string(s, vars);
}

Poly random_poly(Rng& rng, const std::vector<std::string>& vars, int maxdeg, int nterms) {
    std::vector<Poly::Term> terms;
    for (int t = 0; t < nterms; ++t) {
        Mono m;
        m.e.resize(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v) {
            m.e[v] = static_cast<std::uint16_t>(rng.next_long(0, maxdeg));
            m.deg += m.e[v];
        }
        terms.push_back({m, QC(Rat(rng.next_long(-9, 9)), Rat(rng.next_long(-2, 2)))});
    }
    return Poly::from_terms(vars, std::move(terms));
}

}  // namespace

TEST_CASE("difference of squares") {
    CHECK(P("1*x + 1*y") * P("1*x + -1*y") == P("1*x^2 + -1*y^2"));
}

TEST_CASE("additive identity on random polynomials") {
    Rng rng(7, "polycore-addzero");
    for (int i = 0; i < 20; ++i) {
        Poly p = random_poly(rng, XY, 4, 6);
        CHECK(p + Poly(XY) == p);
    }
}

TEST_CASE("binomial cube coefficients") {
    Poly c = P("1*x + 1*y").pow(3);
    CHECK(c == P("1*x^3 + 3*x^2*y + 3*x*y^2 + 1*y^3"));
}

TEST_CASE("evaluate") {
    Poly p = P("1*x^2 + 1*y^2");
    CHECK(p.evaluate({QC(3), QC(4)}) == QC(25));
    Rng rng(11, "polycore-eval0");
    for (int i = 0; i < 10; ++i) {
        Poly q = random_poly(rng, XY, 5, 8);
        CHECK(q.evaluate({QC(0), QC(0)}) == q.constant_term());
    }
    CHECK_THROWS(p.evaluate({QC(1)}));
}

TEST_CASE("differentiate") {
    CHECK(P("1*x^2*y").differentiate("x") == P("2*x*y"));
    CHECK(P("5/3").differentiate("x").is_zero());
    std::vector<std::string> uvw{"u", "v", "w"};
    CHECK(poly_from_string("1*u^2 + 1*v^2", uvw).differentiate("u") == poly_from_string("2*u", uvw));
    CHECK_THROWS(P("1*x").differentiate("zz"));
}

TEST_CASE("product rule on random pairs") {
    Rng rng(13, "polycore-leibniz");
    for (int i = 0; i < 15; ++i) {
        Poly p = random_poly(rng, XY, 4, 5);
        Poly q = random_poly(rng, XY, 4, 5);
        Poly lhs = (p * q).differentiate("x");
        Poly rhs = p.differentiate("x") * q + p * q.differentiate("x");
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitute basics") {
    // y -> x in x + y gives 2x
    std::map<std::string, Poly> b;
    b["x"] = poly_from_string("1*x", {"x"});
    b["y"] = poly_from_string("1*x", {"x"});
    CHECK(P("1*x + 1*y").substitute(b) == poly_from_string("2*x", {"x"}));

    // unbound variable rejected
    std::map<std::string, Poly> b2;
    b2["x"] = poly_from_string("1*x", {"x"});
    CHECK_THROWS(P("1*x + 1*y").substitute(b2));
}

TEST_CASE("substitute is a ring homomorphism") {
    Rng rng(17, "polycore-hom");
    std::vector<std::string> st{"s", "t"};
    for (int i = 0; i < 10; ++i) {
        Poly p = random_poly(rng, XY, 3, 4);
        Poly q = random_poly(rng, XY, 3, 4);
        std::map<std::string, Poly> b;
        b["x"] = random_poly(rng, st, 2, 3);
        b["y"] = random_poly(rng, st, 2, 3);
        CHECK((p * q).substitute(b) == p.substitute(b) * q.substitute(b));
        CHECK((p + q).substitute(b) == p.substitute(b) + q.substitute(b));
    }
}

TEST_CASE("ring laws on random triples") {
    Rng rng(19, "polycore-ring");
    for (int i = 0; i < 10; ++i) {
        Poly p = random_poly(rng, XY, 3, 4);
        Poly q = random_poly(rng, XY, 3, 4);
        Poly r = random_poly(rng, XY, 3, 4);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK(p + q == q + p);
    }
}

TEST_CASE("evaluate is multiplicative over rationals") {
    Rng rng(23, "polycore-evalmul");
    for (int i = 0; i < 10; ++i) {
        Poly p = random_poly(rng, XY, 3, 4);
        Poly q = random_poly(rng, XY, 3, 4);
        std::vector<QC> pt{rng.next_qc(), rng.next_qc()};
        CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    }
}

TEST_CASE("homogenize and dehomogenize") {
    Poly p = P("1*x^2 + 1*y");
    Poly h = p.homogenize("z");
    CHECK(h == poly_from_string("1*x^2 + 1*y*z", {"x", "y", "z"}));
    CHECK(h.is_homogeneous());
    CHECK(h.dehomogenize("z", QC(1)) == p);
    CHECK_THROWS(p.homogenize("x"));

    Rng rng(29, "polycore-homog");
    for (int i = 0; i < 10; ++i) {
        Poly q = random_poly(rng, XY, 4, 6);
        if (q.is_zero()) continue;
        Poly hq = q.homogenize("z");
        CHECK(hq.is_homogeneous());
        CHECK(hq.degree() == q.degree());
        CHECK(hq.dehomogenize("z", QC(1)) == q);
    }
}

TEST_CASE("mixed variable lists rejected") {
    Poly a = P("1*x");
    Poly b = poly_from_string("1*x", {"x"});
    CHECK_THROWS(a + b);
    CHECK_THROWS(a * b);
}

TEST_CASE("canonical form has no zero terms") {
    Poly p = P("1*x + 1*y");
    Poly q = P("1*x + -1*y");
    Poly s = p - p;
    CHECK(s.is_zero());
    CHECK(s.terms().empty());
    Poly r = p * q - P("1*x^2") + P("1*y^2");
    CHECK(r.terms().empty());
}

TEST_CASE("text round trip") {
    Rng rng(31, "polycore-io");
    std::vector<std::string> vars{"a1", "a2", "a3"};
    for (int i = 0; i < 20; ++i) {
        Poly p = random_poly(rng, vars, 5, 7);
        CHECK(poly_from_string(poly_to_string(p), vars) == p);
    }
    // gaussian rational coefficients round trip
    Poly g = poly_from_string("(1/2,-3/7)*a1^2 + (0,2)*a2 + -5/3", vars);
    CHECK(poly_from_string(poly_to_string(g), vars) == g);
}

TEST_CASE("exact division") {
    Poly p = P("1*x^2 + -1*y^2");
    auto q = exact_divide(p, P("1*x + 1*y"));
    REQUIRE(q.has_value());
    CHECK(*q == P("1*x + -1*y"));
    CHECK(!exact_divide(p, P("1*x + 2*y")).has_value());
}

TEST_CASE("integer primitive normalization") {
    Poly p = P("2/3*x^2 + -4/9*y");
    Poly q = integer_primitive(p);
    CHECK(q == P("3*x^2 + -2*y"));
    CHECK(integer_primitive(-p) == q);
    CHECK(proportional(p, q));
    CHECK(!proportional(p, P("1*x")));
}

TEST_CASE("collect groups by selected variables") {
    std::vector<std::string> v{"x", "y", "a"};
    Poly p = poly_from_string("2*x^2*a + 3*x^2 + 1*y*a^2", v);
    auto groups = p.collect({0, 1});
    CHECK(groups.size() == 2);
    std::vector<std::uint16_t> x2{2, 0};
    CHECK(groups.at(x2) == poly_from_string("2*a + 3", {"a"}));
}
