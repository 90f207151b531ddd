#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "centerfocus/exactify.hpp"
#include "centerfocus/linalg.hpp"
#include "support/focus_oracle.hpp"

using namespace centerfocus;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};

MpReal mp(const Rat& q, mpfr_prec_t prec = 128) { return MpReal::from(q, prec); }

}  // namespace

TEST_CASE("integer relation recovers one third") {
    std::vector<MpReal> v{mp(Rat(1, 3)), mp(Rat(1))};
    auto rel = integer_relation(v, 64);
    REQUIRE(rel.has_value());
    // (3, -1) up to sign
    CHECK(abs((*rel)[0]) == 3);
    CHECK(abs((*rel)[1]) == 1);
    CHECK((*rel)[0] * (*rel)[1] < 0);
}

TEST_CASE("no small relation for e") {
    MpReal one(128), e(128);
    mpfr_set_ui(one.raw(), 1, MPFR_RNDN);
    mpfr_exp(e.raw(), one.raw(), MPFR_RNDN);
    std::vector<MpReal> v{one, e};
    auto rel = integer_relation(v, 100);
    CHECK(!rel.has_value());
}

TEST_CASE("planted relations of height <= 64 are recovered and scale invariant") {
    Rng rng(5, "exactify-planted");
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 4;
        std::vector<long> c(n);
        for (auto& x : c) x = rng.next_long(-64, 64);
        if (c[n - 1] == 0) c[n - 1] = 7;
        // v_i random, v_last chosen so that c.v = 0 exactly
        std::vector<Rat> vq(n);
        Rat acc(0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            vq[i] = rng.next_dyadic() + Rat(1, 3);
            acc += Rat(c[i]) * vq[i];
        }
        vq[n - 1] = -acc / Rat(c[n - 1]);
        std::vector<MpReal> v;
        for (auto& q : vq) v.push_back(mp(q));
        auto rel = integer_relation(v, 64);
        REQUIRE(rel.has_value());
        Rat dot(0);
        for (std::size_t i = 0; i < n; ++i) dot += Rat((*rel)[i]) * vq[i];
        CHECK(dot == 0);

        // scaling by a positive rational returns the same primitive vector
        std::vector<MpReal> vs;
        for (auto& q : vq) vs.push_back(mp(q * Rat(7, 3)));
        auto rel2 = integer_relation(vs, 64);
        REQUIRE(rel2.has_value());
        bool same = true, flipped = true;
        for (std::size_t i = 0; i < n; ++i) {
            if ((*rel)[i] != (*rel2)[i]) same = false;
            if ((*rel)[i] != -(*rel2)[i]) flipped = false;
        }
        CHECK((same || flipped));
    }
}

TEST_CASE("no false positives on random non-relations") {
    Rng rng(7, "exactify-negative");
    int found = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<MpReal> v;
        for (int i = 0; i < 4; ++i) {
            // random 120-bit dyadics have no height-64 relations
            Rat q(0);
            Rat scale(1, 1);
            for (int b = 0; b < 4; ++b) {
                q += rng.next_dyadic() * scale;
                scale /= Rat(1073741824);
            }
            v.push_back(mp(q + Rat(1, 7)));
        }
        auto rel = integer_relation(v, 64);
        if (rel) found++;
    }
    CHECK(found == 0);
}

TEST_CASE("precision guard") {
    std::vector<MpReal> v{MpReal::from(1.0 / 3.0, 53), MpReal::from(1.0, 53)};
    // height 10^6 needs far more than 53 bits
    CHECK_THROWS_AS(integer_relation(v, 1000000), std::invalid_argument);
}

TEST_CASE("hermite normal form canonicalizes row spans") {
    std::vector<std::vector<mpz_class>> a{{1, 1, 0}, {0, 1, 0}};
    std::vector<std::vector<mpz_class>> b{{1, 0, 0}, {0, 1, 0}};
    CHECK(hermite_normal_form(a) == hermite_normal_form(b));
    std::vector<std::vector<mpz_class>> c{{2, 0, 0}, {0, 1, 0}};
    CHECK(hermite_normal_form(a) != hermite_normal_form(c));
}

TEST_CASE("recover generators of a projective line") {
    Rng rng(11, "exactify-line");
    NidOptions no;
    no.track.workers = 2;
    Poly line = poly_from_string("1*x + 2*y + -3*z", XYZ);
    auto comps = decompose_hypersurface(line, Ambient::Projective, "", rng, no);
    REQUIRE(comps.size() == 1);
    Rng rr(13, "exactify-line-recover");
    auto cc = recover_polynomials(comps[0].ws, 1, rr);
    REQUIRE(cc.generators.size() == 1);
    CHECK(cc.generators[0] == integer_primitive(line));
    CHECK(cc.status == CenterCondition::Status::NumericOnly);
}

TEST_CASE("recover affine-chart generators with constants") {
    Rng rng(17, "exactify-affine");
    NidOptions no;
    no.track.workers = 2;
    // line x + 2y - 3z = 0, affine chart z = 1: x + 2y - 3 = 0
    Poly line = poly_from_string("1*x + 2*y + -3*z", XYZ);
    auto comps = decompose_hypersurface(line, Ambient::AffineChart, "z", rng, no);
    REQUIRE(comps.size() == 1);
    Rng rr(19, "exactify-affine-recover");
    auto cc = recover_polynomials(comps[0].ws, 1, rr);
    REQUIRE(cc.generators.size() == 1);
    Poly want = poly_from_string("1*x + 2*y + -3", std::vector<std::string>{"x", "y"});
    CHECK(cc.generators[0] == integer_primitive(want));
    CHECK(cc.chart == Chart::A6One);
}

TEST_CASE("recover an exact rational point from degree-1 relations") {
    // exact input point (1, 2, 3) in P^2: relations reproduce the
    // coordinate ratios
    WitnessSet ws;
    ws.vars = XYZ;
    ws.ambient = Ambient::Projective;
    ws.system = {};
    ws.randomized = {};
    ws.patch = poly_from_string("1*x", XYZ) - Poly::constant(QC(1), XYZ);
    ws.dim = 0;
    ws.degree = 1;
    Point p{MpComplex::from(QC(1), 256), MpComplex::from(QC(2), 256), MpComplex::from(QC(3), 256)};
    ws.points = {p};
    Rng rr(23, "exactify-point");
    ExactifyOptions opts;
    auto cc = recover_polynomials(ws, 1, rr, opts);
    // expect relations spanning { y - 2x, z - 3x } over Q
    REQUIRE(cc.generators.size() == 2);
    QCMatrix rows, want;
    auto row_of = [](const Poly& g) {
        std::vector<QC> row(3, QC(0));
        for (auto& [m, c] : g.terms())
            for (std::size_t v = 0; v < 3; ++v)
                if (m.e[v] == 1) row[v] = c;
        return row;
    };
    for (auto& g : cc.generators) rows.push_back(row_of(g));
    want.push_back(row_of(poly_from_string("2*x + -1*y", XYZ)));
    want.push_back(row_of(poly_from_string("3*x + -1*z", XYZ)));
    CHECK(row_span_contains(rows, want));
    CHECK(row_span_contains(want, rows));
}

TEST_CASE("point realness with conjugate pairing") {
    std::vector<std::string> vars{"x", "y"};
    Poly f1 = poly_from_string("1*x^2 + -2", vars);
    Poly f2 = poly_from_string("1*y^2 + 1", vars);
    Rng rng(29, "exactify-real");
    TrackOptions to;
    to.workers = 2;
    auto res = solve({f1, f2}, vars, rng, to);
    REQUIRE(res.solutions.size() == 4);
    std::vector<Point> pts = res.solutions;
    Rng rr(31, "exactify-real-filter");
    auto flags = realness_filter(pts, {f1, f2}, vars, rr);
    int real = 0;
    for (bool b : flags) real += b ? 1 : 0;
    CHECK(real == 0);  // y = ±i makes every solution nonreal

    Poly f3 = poly_from_string("1*y^2 + -1", vars);
    Rng rng2(37, "exactify-real2");
    auto res2 = solve({f1, f3}, vars, rng2, to);
    std::vector<Point> pts2 = res2.solutions;
    Rng rr2(41, "exactify-real2-filter");
    auto flags2 = realness_filter(pts2, {f1, f3}, vars, rr2);
    int real2 = 0;
    for (bool b : flags2) real2 += b ? 1 : 0;
    CHECK(real2 == 4);
}

TEST_CASE("component realness via sum-of-squares generators") {
    Rng rng(43, "exactify-sos");
    NidOptions no;
    no.track.workers = 2;
    // imaginary conic: no real projective points
    Poly conic = poly_from_string("1*x^2 + 1*y^2 + 1*z^2", XYZ);
    auto comps = decompose_hypersurface(conic, Ambient::Projective, "", rng, no);
    REQUIRE(comps.size() == 1);
    Rng r1(47, "exactify-sos-recover");
    auto cc = recover_polynomials(comps[0].ws, 2, r1);
    REQUIRE(!cc.generators.empty());
    Rng r2(53, "exactify-sos-real");
    auto real = realness_filter_component(comps[0].ws, cc, r2);
    CHECK(real.flag == ComponentRecord::RealFlag::No);

    // real conic: witness points may be complex, but the circle has real
    // points; inspection of a real witness point or Unknown are both
    // acceptable, never No
    Poly circle = poly_from_string("1*x^2 + 1*y^2 + -1*z^2", XYZ);
    Rng rng2(59, "exactify-sos2");
    auto comps2 = decompose_hypersurface(circle, Ambient::Projective, "", rng2, no);
    Rng r3(61, "exactify-sos2-recover");
    auto cc2 = recover_polynomials(comps2[0].ws, 2, r3);
    Rng r4(67, "exactify-sos2-real");
    auto real2 = realness_filter_component(comps2[0].ws, cc2, r4);
    CHECK(real2.flag != ComponentRecord::RealFlag::No);
}

TEST_CASE("plane curve real-point detection by distance critical points") {
    Rng rng(71, "exactify-curve");
    TrackOptions to;
    to.workers = 2;
    std::vector<std::string> xy{"x", "y"};
    CHECK(plane_curve_has_real_points(poly_from_string("1*x^2 + 1*y^2 + -1", xy), rng, to));
    Rng rng2(73, "exactify-curve2");
    CHECK(!plane_curve_has_real_points(poly_from_string("1*x^2 + 1*y^2 + 1", xy), rng2, to));
}

TEST_CASE("verify vanishing upgrades status exactly") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 4);

    CenterCondition cc;
    cc.chart = Chart::A6Zero;
    std::vector<std::string> chart_vars{"a1", "a2", "a3", "a4", "a5"};
    for (const char* s : {"1*a1", "1*a2", "1*a4"})
        cc.generators.push_back(poly_from_string(s, chart_vars));
    auto out = verify_vanishing(cc, fq);
    CHECK(out.verified);
    CHECK(out.method == VerifyOutcome::Method::Exact);
    CHECK(cc.status == CenterCondition::Status::SymbolicallyVerified);

    // perturbed set does not vanish
    CenterCondition bad;
    bad.chart = Chart::A6Zero;
    for (const char* s : {"1*a1", "1*a2", "1*a4 + -1"})
        bad.generators.push_back(poly_from_string(s, chart_vars));
    auto out2 = verify_vanishing(bad, fq);
    CHECK(!out2.verified);
    CHECK(bad.status == CenterCondition::Status::NumericOnly);
}

TEST_CASE("case j point yields the theorem generators") {
    // rational point of case (j) as an affine-chart witness point
    WitnessSet ws;
    ws.vars = kParamVars;
    ws.ambient = Ambient::AffineChart;
    ws.infinity_var = "a6";
    ws.system = {};
    ws.randomized = {};
    Rng patch_rng(79, "patch");
    ws.patch = random_patch(kParamVars, patch_rng);
    ws.dim = 0;
    ws.degree = 1;
    Point p;
    const Rat coords[6] = {Rat(1, 4), Rat(-1, 2), Rat(-5, 4), Rat(0), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 6; ++i) p.push_back(MpComplex::from(QC(coords[i]), 256));
    ws.points = {p};
    Rng rr(83, "exactify-j");
    auto cc = recover_polynomials(ws, 1, rr);
    // canonical output: exactly the Theorem 3.2 case (j) generators
    std::vector<std::string> cv{"a1", "a2", "a3", "a4", "a5"};
    std::vector<Poly> want;
    for (const char* s : {"4*a1 + -1", "2*a2 + 1", "4*a3 + 5", "1*a4", "2*a5 + -1"})
        want.push_back(poly_from_string(s, cv));
    REQUIRE(cc.generators.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(cc.generators[i] == want[i]);

    // and the recovered condition is symbolically certified
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 4);
    auto out = verify_vanishing(cc, fq);
    CHECK(out.verified);
}
