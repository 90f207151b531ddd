#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "centerfocus/deflate.hpp"
#include "centerfocus/track.hpp"

#include <algorithm>
#include <complex>

using namespace centerfocus;

namespace {

const std::vector<std::string> X1{"x"};
const std::vector<std::string> XY{"x", "y"};

Poly P(const std::string& s, const std::vector<std::string>& vars) {
    return poly_from_string(s, vars);
}

TrackOptions quick_opts() {
    TrackOptions o;
    o.workers = 2;
    o.seed = 42;
    return o;
}

}  // namespace

TEST_CASE("total-degree start data") {
    auto td = total_degree_start({P("1*x^2 + -4", X1)}, X1);
    CHECK(td.degrees == std::vector<long>{2});
    CHECK(td.path_count == 2);
    CHECK(td.start_system[0] == P("1*x^2 + -1", X1));
    auto s0 = point_to_double(td.start_point(0, 53));
    auto s1 = point_to_double(td.start_point(1, 53));
    CHECK(std::abs(s0[0] - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(s1[0] - std::complex<double>(-1, 0)) < 1e-15);

    auto td2 = total_degree_start({P("1*x^2 + 1*y + -1", XY), P("1*y^2 + 1*x", XY)}, XY);
    CHECK(td2.path_count == 4);

    CHECK_THROWS(total_degree_start({P("1*x", X1), P("1*y", X1)}, X1));  // non-square
    CHECK_THROWS(total_degree_start({P("3", X1)}, X1));                  // constant
}

TEST_CASE("x^2 - 4 tracks to the matching square roots") {
    Rng rng(7, "tracker-sqrt");
    auto res = solve({P("1*x^2 + -4", X1)}, X1, rng, quick_opts());
    REQUIRE(res.paths.size() == 2);
    for (auto& pr : res.paths) {
        CHECK(pr.status == PathStatus::Converged);
        CHECK(pr.winding == 1);
        CHECK(pr.residual < 1e-10);
    }
    // the gamma trick keeps paths apart: +1 goes to +2, -1 to -2
    auto e0 = point_to_double(res.paths[0].endpoint)[0];
    auto e1 = point_to_double(res.paths[1].endpoint)[0];
    CHECK(std::abs(e0 - 2.0) < 1e-9);
    CHECK(std::abs(e1 + 2.0) < 1e-9);
    CHECK(res.solutions.size() == 2);
}

TEST_CASE("stationary path when start equals target") {
    Poly f = P("1*x^2 + -4", X1);
    Homotopy h = Homotopy::straight_line({f}, {f}, X1, QC(Rat(3, 5), Rat(4, 5)));
    Point start{MpComplex::from(std::complex<double>(2.0, 0.0), 53)};
    auto pr = track_path(h, start, quick_opts());
    CHECK(pr.status == PathStatus::Converged);
    CHECK(std::abs(point_to_double(pr.endpoint)[0] - 2.0) < 1e-10);
}

TEST_CASE("circle-line system: both total-degree paths converge to x = y points") {
    Rng rng(11, "tracker-circleline");
    auto res = solve({P("1*x^2 + 1*y^2 + -1", XY), P("1*x + -1*y", XY)}, XY, rng, quick_opts());
    REQUIRE(res.paths.size() == 2);  // degrees (2,1)
    REQUIRE(res.solutions.size() == 2);
    double r = std::sqrt(0.5);
    for (auto& sol : res.solutions) {
        auto p = point_to_double(sol);
        CHECK(std::abs(p[0] - p[1]) < 1e-9);
        CHECK(std::abs(std::abs(p[0]) - r) < 1e-9);
    }
}

TEST_CASE("bezout excess paths diverge") {
    // two solutions at infinity: two of the four total-degree paths diverge
    Rng rng(11, "tracker-excess");
    auto res = solve({P("1*x^2 + -1", XY), P("1*x*y + -1", XY)}, XY, rng, quick_opts());
    REQUIRE(res.paths.size() == 4);
    int conv = 0, div = 0;
    for (auto& pr : res.paths) {
        if (pr.status == PathStatus::Converged) conv++;
        if (pr.status == PathStatus::Diverged) div++;
    }
    CHECK(conv == 2);
    CHECK(div == 2);
    REQUIRE(res.solutions.size() == 2);
    for (auto& sol : res.solutions) {
        auto p = point_to_double(sol);
        CHECK(std::abs(p[0] * p[1] - 1.0) < 1e-9);
        CHECK(std::abs(p[0] * p[0] - 1.0) < 1e-9);
    }
}

TEST_CASE("endgame winding on a double root") {
    Rng rng(13, "tracker-double");
    auto res = solve({P("1*x^2 + -2*x + 1", X1), P("1*y + -1", {"x", "y"}).extend_vars(XY)}, XY,
                     rng, quick_opts());
    // both paths land on the multiplicity-2 point (1,1)
    REQUIRE(res.solutions.size() == 1);
    auto p = point_to_double(res.solutions[0]);
    CHECK(std::abs(p[0] - 1.0) < 1e-6);
    CHECK(std::abs(p[1] - 1.0) < 1e-6);
    int conv = 0;
    for (auto& pr : res.paths)
        if (pr.status == PathStatus::Converged) {
            conv++;
            CHECK(2 % pr.winding == 0);  // winding divides the multiplicity
            CHECK(pr.residual < 1e-10);
        }
    CHECK(conv == 2);
}

TEST_CASE("newton refinement") {
    Poly f = P("1*x^2 + -4", X1);
    Point x0{MpComplex::from(std::complex<double>(1.9999, 0.0), 53)};
    auto r = newton_refine({f}, X1, x0, 1e-14, 53);
    CHECK(r.ok);
    CHECK(std::abs(point_to_double(r.x)[0] - 2.0) < 1e-13);
    CHECK(r.iterations <= 6);  // quadratic convergence

    // an exact zero comes back unchanged
    Point x2{MpComplex::from(QC(2), 53)};
    auto r2 = newton_refine({f}, X1, x2, 1e-14, 53);
    CHECK(r2.ok);
    CHECK(r2.iterations == 0);
    CHECK(point_to_double(r2.x)[0] == 2.0);

    // high precision refinement for exactification input
    Point x3{MpComplex::from(std::complex<double>(2.0 + 3e-7, 1e-9), 256)};
    auto r3 = newton_refine({f}, X1, x3, 1e-60, 256);
    CHECK(r3.ok);
    CHECK(r3.residual < 1e-60);
}

TEST_CASE("solve finds all four real solutions of the split system") {
    Rng rng(17, "tracker-4real");
    auto res = solve({P("1*x^2 + -1", XY), P("1*y^2 + -1", XY)}, XY, rng, quick_opts());
    REQUIRE(res.solutions.size() == 4);
    for (auto& sol : res.solutions) {
        auto p = point_to_double(sol);
        CHECK(std::abs(std::abs(p[0].real()) - 1.0) < 1e-9);
        CHECK(std::abs(std::abs(p[1].real()) - 1.0) < 1e-9);
        CHECK(std::abs(p[0].imag()) < 1e-9);
        CHECK(std::abs(p[1].imag()) < 1e-9);
    }
}

TEST_CASE("quadric system through four prescribed points") {
    // build two quadrics vanishing exactly on four chosen generic points;
    // the solver must find exactly those points
    std::vector<std::vector<Rat>> pts = {
        {Rat(1, 2), Rat(1, 3)}, {Rat(-1), Rat(2)}, {Rat(3, 4), Rat(-2, 5)}, {Rat(-1, 3), Rat(-1)}};
    // quadric coefficients on monomials 1, x, y, x^2, xy, y^2
    QCMatrix m;
    for (auto& p : pts) {
        QC x{p[0]}, y{p[1]};
        m.push_back({QC(1), x, y, x * x, x * y, y * y});
    }
    auto basis = qc_nullspace(m);
    REQUIRE(basis.size() == 2);
    auto to_poly = [&](const std::vector<QC>& c) {
        Poly q{XY};
        const char* monos[6] = {"1", "1*x", "1*y", "1*x^2", "1*x*y", "1*y^2"};
        for (int i = 0; i < 6; ++i) q += poly_from_string(monos[i], XY).scaled(c[i]);
        return q;
    };
    Rng rng(19, "tracker-4pts");
    auto res = solve({to_poly(basis[0]), to_poly(basis[1])}, XY, rng, quick_opts());
    REQUIRE(res.solutions.size() == 4);
    for (auto& want : pts) {
        bool found = false;
        for (auto& sol : res.solutions) {
            auto p = point_to_double(sol);
            if (std::abs(p[0] - want[0].get_d()) < 1e-8 && std::abs(p[1] - want[1].get_d()) < 1e-8)
                found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("endpoint set is gamma-invariant and conjugation symmetric") {
    std::vector<Poly> F{P("1*x^2 + 1*x*y + 3*y^2 + -2*x + -1", XY),
                        P("2*x^2 + -1*y^2 + 1*x + 1*y + -3", XY)};
    Rng rng1(23, "tracker-gamma1"), rng2(999, "tracker-gamma2");
    auto r1 = solve(F, XY, rng1, quick_opts());
    auto r2 = solve(F, XY, rng2, quick_opts());
    REQUIRE(r1.solutions.size() == 4);
    REQUIRE(r2.solutions.size() == 4);
    CHECK(!(r1.gamma == r2.gamma));
    // same endpoint sets up to tolerance
    for (auto& a : r1.solutions) {
        bool found = false;
        for (auto& b : r2.solutions)
            if (points_equal(point_to_double(a), point_to_double(b), 1e-8)) found = true;
        CHECK(found);
    }
    // conjugation symmetry for the real-coefficient system
    for (auto& a : r1.solutions) {
        DPoint conj;
        for (auto c : point_to_double(a)) conj.push_back(std::conj(c));
        bool found = false;
        for (auto& b : r1.solutions)
            if (points_equal(conj, point_to_double(b), 1e-8)) found = true;
        CHECK(found);
    }
}

TEST_CASE("random gammas rarely fail") {
    std::vector<Poly> F{P("1*x^2 + 1*y^2 + -2", XY), P("1*x*y + -1", XY)};
    int total = 0, failed = 0;
    for (int g = 0; g < 20; ++g) {
        Rng rng(1000 + g, "tracker-gammasweep");
        auto res = solve(F, XY, rng, quick_opts());
        for (auto& pr : res.paths) {
            total++;
            if (pr.status == PathStatus::TrackingFailure) failed++;
        }
    }
    CHECK(failed * 100 <= total);  // at least 99% clean
}

TEST_CASE("deflation regularizes a double root") {
    // F = (x^2) at x = 0
    Rng rng(29, "tracker-deflate1");
    Point x0{MpComplex::from(std::complex<double>(1e-7, 1e-8), 53)};
    auto d = deflate({P("1*x^2", X1)}, X1, x0, rng);
    REQUIRE(d.has_value());
    CHECK(d->rounds >= 1);
    auto ref = newton_refine(d->eqs, d->vars, d->extended_point, 1e-12, 53);
    CHECK(ref.ok);
    CHECK(std::abs(point_to_double(ref.x)[0]) < 1e-10);

    // F = ((x-y)^2, x+y-2) at (1,1): one deflation round suffices
    Rng rng2(31, "tracker-deflate2");
    Point p2{MpComplex::from(std::complex<double>(1.0 + 2e-7, 0), 53),
             MpComplex::from(std::complex<double>(1.0 - 1e-7, 0), 53)};
    auto d2 = deflate({P("1*x^2 + -2*x*y + 1*y^2", XY), P("1*x + 1*y + -2", XY)}, XY, p2, rng2);
    REQUIRE(d2.has_value());
    CHECK(d2->rounds == 1);
    auto ref2 = refine_possibly_singular({P("1*x^2 + -2*x*y + 1*y^2", XY), P("1*x + 1*y + -2", XY)},
                                         XY, p2, 1e-20, 128, rng2);
    CHECK(ref2.ok);
    CHECK(std::abs(point_to_double(ref2.x)[0] - 1.0) < 1e-9);
}
