#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "centerfocus/focus.hpp"
#include "centerfocus/witness.hpp"

#include <set>

using namespace centerfocus;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

Poly P(const std::string& s, const std::vector<std::string>& vars) {
    return poly_from_string(s, vars);
}

NidOptions nid_opts() {
    NidOptions o;
    o.track.workers = 2;
    o.seed = 7;
    return o;
}

}  // namespace

TEST_CASE("binary form splits into its linear factors") {
    Rng rng(3, "nid-binary");
    auto comps = decompose_hypersurface(P("1*x^2 + -1*y^2", XY), Ambient::Projective, "", rng,
                                        nid_opts());
    REQUIRE(comps.size() == 2);
    for (auto& c : comps) {
        CHECK(c.ws.degree == 1);
        CHECK(c.ws.multiplicity == 1);
        // witness point lies on x = y or x = -y
        auto p = point_to_double(c.ws.points[0]);
        double d1 = std::abs(p[0] - p[1]), d2 = std::abs(p[0] + p[1]);
        CHECK(std::min(d1, d2) < 1e-8);
    }
}

TEST_CASE("multiple factors carry their multiplicities") {
    Rng rng(5, "nid-multfactor");
    // (x - y)^2 (x + y): degrees 1 and 1 with multiplicities 2 and 1
    Poly f = P("1*x + -1*y", XY).pow(2) * P("1*x + 1*y", XY);
    auto comps = decompose_hypersurface(f, Ambient::Projective, "", rng, nid_opts());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].ws.multiplicity == 1);
    CHECK(comps[1].ws.multiplicity == 2);
    CHECK(comps[0].ws.degree == 1);
    CHECK(comps[1].ws.degree == 1);
    // winding evidence on the double factor
    CHECK(comps[1].windings[0] >= 1);
}

TEST_CASE("conic times line in P^2") {
    Rng rng(7, "nid-conicline");
    Poly conic = P("1*x^2 + 1*y^2 + -1*z^2", XYZ);
    Poly line = P("1*x + 1*y + 1*z", XYZ);
    auto comps = decompose_hypersurface(conic * line, Ambient::Projective, "", rng, nid_opts());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].ws.degree == 1);
    CHECK(comps[1].ws.degree == 2);
    CHECK(comps[0].ws.multiplicity == 1);
    CHECK(comps[1].ws.multiplicity == 1);
    // the degree-2 component's points satisfy the conic exactly
    for (auto& p : comps[1].ws.points) {
        auto v = eval_poly_at(conic, p, 53).abs_approx();
        CHECK(v < 1e-8);
    }
}

TEST_CASE("irreducible conic: monodromy joins the two points, trace certifies") {
    Rng rng(11, "nid-conic");
    Poly conic = P("1*x^2 + 2*y^2 + -1*z^2 + 1*x*y", XYZ);
    auto comps = decompose_hypersurface(conic, Ambient::Projective, "", rng, nid_opts());
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].ws.degree == 2);

    // a single branch point alone fails the trace test
    Rng rng2(13, "nid-conic-trace");
    CHECK(trace_test(comps[0].ws, {0, 1}, rng2, nid_opts()));
    CHECK(!trace_test(comps[0].ws, {0}, rng2, nid_opts()));
}

TEST_CASE("monodromy partition is seed invariant") {
    Poly f = P("1*x^2 + 1*y^2 + -1*z^2", XYZ) * P("1*x + -2*y + 1*z", XYZ);
    Rng d1(17, "nid-seedinv-1");
    auto comps = decompose_hypersurface(f, Ambient::Projective, "", d1, nid_opts());
    // rebuild a joint witness set and partition twice with different seeds
    WitnessSet all = comps[0].ws;
    for (std::size_t i = 1; i < comps.size(); ++i)
        for (auto& p : comps[i].ws.points) all.points.push_back(p);
    all.degree = static_cast<long>(all.points.size());
    Rng m1(19, "nid-mono-a"), m2(23, "nid-mono-b");
    auto g1 = monodromy_partition(all, m1, nid_opts());
    auto g2 = monodromy_partition(all, m2, nid_opts());
    CHECK(g1 == g2);
}

TEST_CASE("deflated witness points on a triple line survive monodromy and trace") {
    Rng rng(29, "nid-triple");
    // (x - y)^3 (x + y + z): line of multiplicity 3 plus a simple line
    Poly f = P("1*x + -1*y", XYZ).pow(3) * P("1*x + 1*y + 1*z", XYZ);
    auto comps = decompose_hypersurface(f, Ambient::Projective, "", rng, nid_opts());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].ws.multiplicity == 1);
    CHECK(comps[1].ws.multiplicity == 3);
    CHECK(comps[0].ws.degree == 1);
    CHECK(comps[1].ws.degree == 1);
    // winding/multiplicity evidence greater than 1 on the triple component
    CHECK(comps[1].path_counts[0] == 3);
}

TEST_CASE("regeneration of a line against a conic yields two points") {
    Rng rng(31, "nid-regen");
    auto opts = nid_opts();
    auto comps = decompose_hypersurface(P("1*x + 2*y + -3*z", XYZ), Ambient::Projective, "", rng,
                                        opts);
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].ws.dim == 1);
    Poly conic = P("1*x^2 + 1*y^2 + -2*z^2 + 1*x*z", XYZ);
    Rng rr(37, "nid-regen-run");
    auto res = regenerate_intersect(comps[0].ws, conic, rr, opts);
    CHECK(res.points.size() == 2);
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        CHECK(res.path_counts[i] == 1);
        CHECK(eval_poly_at(conic, res.points[i], 53).abs_approx() < 1e-8);
        CHECK(eval_poly_at(P("1*x + 2*y + -3*z", XYZ), res.points[i], 53).abs_approx() < 1e-8);
    }

    // a polynomial vanishing on the line is rejected
    Poly vanish = P("1*x + 2*y + -3*z", XYZ) * P("1*x + -1*y", XYZ);
    Rng rv(41, "nid-regen-vanish");
    CHECK_THROWS_AS(regenerate_intersect(comps[0].ws, vanish, rv, opts), std::domain_error);
}

TEST_CASE("membership test") {
    Rng rng(43, "nid-member");
    auto opts = nid_opts();
    Poly conic = P("1*x^2 + 1*y^2 + -1*z^2", XYZ);
    auto comps = decompose_hypersurface(conic, Ambient::Projective, "", rng, opts);
    REQUIRE(comps.size() == 1);
    const WitnessSet& ws = comps[0].ws;

    // a witness point of the set is a member
    Rng r1(47, "nid-member-1");
    CHECK(membership_test(ws.points[0], ws, r1, opts));

    // a nearby off-component point is not: (3/5, 4/5, 1) lies on the conic,
    // so shift it off
    Point off{MpComplex::from(std::complex<double>(0.6, 0.0), 53),
              MpComplex::from(std::complex<double>(0.9, 0.0), 53),
              MpComplex::from(std::complex<double>(1.0, 0.0), 53)};
    Rng r2(53, "nid-member-2");
    CHECK(!membership_test(off, ws, r2, opts));

    // a fresh point on the conic IS a member: (3/5, 4/5, 1)
    Point on{MpComplex::from(QC(Rat(3, 5)), 53), MpComplex::from(QC(Rat(4, 5)), 53),
             MpComplex::from(QC(1), 53)};
    Rng r3(59, "nid-member-3");
    CHECK(membership_test(on, ws, r3, opts));
}

TEST_CASE("vanishing detection on a witness set") {
    Rng rng(61, "nid-vanish");
    auto opts = nid_opts();
    Poly line = P("1*x + 2*y + -3*z", XYZ);
    auto comps = decompose_hypersurface(line, Ambient::Projective, "", rng, opts);
    REQUIRE(comps.size() == 1);
    Rng r1(67, "nid-vanish-1");
    CHECK(vanishes_on_witness(line * P("1*x + -1*y", XYZ), comps[0].ws, r1, opts));
    Rng r2(71, "nid-vanish-2");
    CHECK(!vanishes_on_witness(P("1*x + -1*y", XYZ), comps[0].ws, r2, opts));
}

TEST_CASE("witness set invariants") {
    Rng rng(73, "nid-inv");
    auto opts = nid_opts();
    auto comps =
        decompose_hypersurface(P("1*x^2 + 1*y^2 + -1*z^2", XYZ), Ambient::Projective, "", rng, opts);
    REQUIRE(comps.size() == 1);
    CHECK_NOTHROW(comps[0].ws.check_invariants(opts.track));
    CHECK(comps[0].ws.slice.seed != 0);

    // degree additivity under re-randomized slices
    Rng rng2(79, "nid-inv-2");
    auto comps2 =
        decompose_hypersurface(P("1*x^2 + 1*y^2 + -1*z^2", XYZ), Ambient::Projective, "", rng2, opts);
    long mass1 = 0, mass2 = 0;
    for (auto& c : comps) mass1 += c.ws.degree * c.ws.multiplicity;
    for (auto& c : comps2) mass2 += c.ws.degree * c.ws.multiplicity;
    CHECK(mass1 == mass2);
}

TEST_CASE("g220 hypersurface in the a6=0 chart is an irreducible quadric") {
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fq = focus_quantities(cs, 2);
    auto chart = chart_specialize(fq, Chart::A6Zero);
    REQUIRE(chart.size() == 1);
    Rng rng(83, "nid-g220");
    auto opts = nid_opts();
    auto comps = decompose_hypersurface(chart[0].second, Ambient::Projective, "", rng, opts);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].ws.degree == 2);
    CHECK(comps[0].ws.multiplicity == 1);
    CHECK(comps[0].ws.dim == 3);
}
