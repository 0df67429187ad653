#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "surfcode/io.hpp"
#include "surfcode/linalg.hpp"
#include "surfcode/projgeo.hpp"

using namespace surfcode;
using projgeo::Line;
using projgeo::Point;
using projgeo::Surface;

static const char* kCubic = "X^3+Y^3+Z^3-Z*X^2-X*Y^2-Y*Z^2+X*Z^2+T^3";

// The affine rational points as printed in the source experiment, P1..P13.
static const char* kCubicPoints[] = {
    "(2:0:0:1)", "(1:0:1:1)", "(0:0:2:1)", "(1:0:2:1)", "(2:1:1:1)", "(0:1:2:1)", "(2:1:2:1)",
    "(0:2:0:1)", "(1:2:0:1)", "(2:2:0:1)", "(2:2:1:1)", "(0:2:2:1)", "(2:2:2:1)"};

TEST_CASE("projective point counts") {
    CHECK(projgeo::enumerate_points(gf::Field::get(3, 1), 3).size() == 40);
    CHECK(projgeo::enumerate_points(gf::Field::get(2, 1), 1).size() == 3);
    CHECK(projgeo::enumerate_points(gf::Field::get(2, 2), 2).size() == 21);
    CHECK(projgeo::enumerate_points(gf::Field::get(5, 1), 3).size() == 156);
}

TEST_CASE("point normalization and ordering") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Point p(f3, {2, 0, 0, 1});
    CHECK(p.coords() == std::vector<uint8_t>{1, 0, 0, 2});
    auto pts = projgeo::enumerate_points(f3, 3);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    std::set<std::vector<uint8_t>> uniq;
    for (const auto& q : pts) uniq.insert(q.coords());
    CHECK(uniq.size() == pts.size());
}

TEST_CASE("explicit cubic affine points match the published set") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Surface s = io::parse_surface(kCubic, f3);
    auto sp = projgeo::surface_points(s);
    REQUIRE(sp.affine.size() == 13);
    std::set<std::vector<uint8_t>> got, want;
    for (const auto& p : sp.affine) got.insert(p.coords());
    for (const char* lit : kCubicPoints) want.insert(io::parse_point(lit, f3).coords());
    CHECK(got == want);
    CHECK(sp.affine.size() + sp.at_infinity.size() ==
          [&] {
              size_t c = 0;
              for (const auto& p : projgeo::enumerate_points(f3, 3))
                  if (!s.evaluate(p)) ++c;
              return c;
          }());
}

TEST_CASE("fermat-type surface over F2 against direct enumeration") {
    const gf::Field& f2 = gf::Field::get(2, 1);
    Surface s = io::parse_surface("T^3+X^3+Y^3+Z^3", f2);
    auto sp = projgeo::surface_points(s);
    for (const auto& p : sp.affine) {
        const auto ac = projgeo::affine_coords(p);
        uint8_t v = f2.add(f2.add(f2.pow(ac[0], 3), f2.pow(ac[1], 3)), f2.add(f2.pow(ac[2], 3), 1));
        CHECK(v == 0);
    }
}

TEST_CASE("line canonical form and symmetry") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Point p(f3, {1, 0, 0, 0}), q(f3, {0, 1, 0, 0});
    Line l = projgeo::line_through(p, q);
    CHECK(l.rows()[0] == std::vector<uint8_t>{1, 0, 0, 0});
    CHECK(l.rows()[1] == std::vector<uint8_t>{0, 1, 0, 0});
    CHECK(projgeo::line_through(q, p) == l);

    uint64_t state = 7;
    auto pts = projgeo::enumerate_points(f3, 3);
    for (int t = 0; t < 50; ++t) {
        const Point& a = pts[projgeo::uniform_index(state, pts.size())];
        const Point& b = pts[projgeo::uniform_index(state, pts.size())];
        if (a == b) continue;
        CHECK(projgeo::line_through(a, b) == projgeo::line_through(b, a));
    }
}

TEST_CASE("published line through the first and seventh points") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Point p1 = io::parse_point("(2:0:0:1)", f3);
    Point p7 = io::parse_point("(2:1:2:1)", f3);
    Line l = projgeo::line_through(p1, p7);
    // L1 = {x + t = 0, y + z = 0}
    Line expected = Line::from_planes(f3, io::parse_plane("x+t", f3), io::parse_plane("y+z", f3));
    CHECK(l == expected);
}

TEST_CASE("line points") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Point p1 = io::parse_point("(2:0:0:1)", f3);
    Point p7 = io::parse_point("(2:1:2:1)", f3);
    Line l = projgeo::line_through(p1, p7);
    auto pts = l.points();
    CHECK(pts.size() == 4);

    // L1 meets the cubic's affine points exactly in {P1, P7, P11}.
    Surface s = io::parse_surface(kCubic, f3);
    auto affine = projgeo::surface_points(s).affine;
    std::vector<Point> inter;
    for (const auto& p : pts)
        if (std::find(affine.begin(), affine.end(), p) != affine.end()) inter.push_back(p);
    REQUIRE(inter.size() == 3);
    std::set<std::vector<uint8_t>> got, want;
    for (const auto& p : inter) got.insert(p.coords());
    want.insert(io::parse_point("(2:0:0:1)", f3).coords());
    want.insert(io::parse_point("(2:1:2:1)", f3).coords());
    want.insert(io::parse_point("(2:2:1:1)", f3).coords());
    CHECK(got == want);

    const gf::Field& f5 = gf::Field::get(5, 1);
    Line l5 = projgeo::line_through(Point(f5, {1, 0, 0, 0}), Point(f5, {0, 1, 2, 3}));
    CHECK(l5.points().size() == 6);
}

TEST_CASE("line points regenerate the line") {
    const gf::Field& f4 = gf::Field::get(2, 2);
    uint64_t state = 99;
    auto pts = projgeo::enumerate_points(f4, 3);
    for (int t = 0; t < 30; ++t) {
        const Point& a = pts[projgeo::uniform_index(state, pts.size())];
        const Point& b = pts[projgeo::uniform_index(state, pts.size())];
        if (a == b) continue;
        Line l = projgeo::line_through(a, b);
        auto lp = l.points();
        for (size_t i = 0; i < lp.size(); ++i)
            for (size_t j = i + 1; j < lp.size(); ++j)
                CHECK(projgeo::line_through(lp[i], lp[j]) == l);
    }
}

TEST_CASE("line_in_surface") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    // X*T vanishes on the line {X = 0, T = 0}... the line {X=0,T=0} lies in
    // the degree-2 surface X*T + 0; use a plane pair X*Y containing x=0.
    Surface plane_pair = io::parse_surface("X*Y", f3);
    Line inside = Line::from_planes(f3, io::parse_plane("x", f3), io::parse_plane("z", f3));
    CHECK(projgeo::line_in_surface(inside, plane_pair));

    Surface cubic = io::parse_surface(kCubic, f3);
    Point p1 = io::parse_point("(2:0:0:1)", f3);
    Point p7 = io::parse_point("(2:1:2:1)", f3);
    CHECK_FALSE(projgeo::line_in_surface(projgeo::line_through(p1, p7), cubic));
}

TEST_CASE("line_in_surface against exhaustive rational-point oracle") {
    // When q >= degree, containment is equivalent to vanishing at all q+1
    // rational points of the line.
    const gf::Field& f5 = gf::Field::get(5, 1);
    uint64_t state = 4242;
    auto pts = projgeo::enumerate_points(f5, 3);
    for (int t = 0; t < 40; ++t) {
        Surface s = projgeo::random_surface(f5, 3, projgeo::splitmix64(state));
        const Point& a = pts[projgeo::uniform_index(state, pts.size())];
        const Point& b = pts[projgeo::uniform_index(state, pts.size())];
        if (a == b) continue;
        Line l = projgeo::line_through(a, b);
        bool all_vanish = true;
        for (const auto& p : l.points())
            if (s.evaluate(p)) {
                all_vanish = false;
                break;
            }
        CHECK(projgeo::line_in_surface(l, s) == all_vanish);
    }
}

TEST_CASE("gradients") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    // Char 3 kills every term of the gradient of x^3+y^3+z^3+1.
    Surface fermat = io::parse_surface("X^3+Y^3+Z^3+T^3", f3);
    Point p(f3, {0, 0, 2, 1});
    auto g = projgeo::gradient_affine(fermat, p);
    CHECK(g == std::array<uint8_t, 3>{0, 0, 0});

    const gf::Field& f5 = gf::Field::get(5, 1);
    // G = x^2 + y + z at (1,1,1): (2x, 1, 1) = (2, 1, 1).
    Surface s2 = io::parse_surface("X^2+Y*T+Z*T", f5);
    Point p2(f5, {1, 1, 1, 1});
    auto g2 = projgeo::gradient_affine(s2, p2);
    CHECK(g2 == std::array<uint8_t, 3>{2, 1, 1});

    CHECK_THROWS(projgeo::gradient_affine(s2, Point(f5, {1, 0, 0, 0})));
}

TEST_CASE("explicit cubic: smooth affine chart, singular at infinity") {
    // In characteristic 3 the T-partial of this equation vanishes
    // identically, and the plane cubic cut out at T = 0 has a singular
    // point over F_27 (at (1 : t^2 : 2t : 0) with t^3 = t + 2).  The
    // affine chart, which carries all thirteen rational points, is smooth.
    const gf::Field& f3 = gf::Field::get(3, 1);
    Surface s = io::parse_surface(kCubic, f3);
    CHECK(projgeo::is_smooth_affine(s));
    CHECK_FALSE(projgeo::is_smooth(s));
    CHECK_FALSE(projgeo::is_smooth_rational_only(s));
    auto sing = projgeo::find_singular_point_ext(s, 3);
    REQUIRE(sing.has_value());
    CHECK((*sing)[3] == std::vector<uint8_t>{0, 0, 0});  // lies at infinity
}

TEST_CASE("cone is singular") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    Surface cone = io::parse_surface("X*Y-Z^2", f3);
    CHECK_FALSE(projgeo::is_smooth(cone));
    // The vertex (0:0:0:1) is rational, so the cheap mode sees it too.
    CHECK_FALSE(projgeo::is_smooth_rational_only(cone));
}

TEST_CASE("smoothness agrees with bounded extension point search") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    uint64_t state = 31337;
    int singular_found = 0;
    for (int t = 0; t < 60; ++t) {
        Surface s = projgeo::random_surface(f3, 3, projgeo::splitmix64(state));
        const bool smooth = projgeo::is_smooth(s);
        bool oracle_singular = false;
        for (int k = 1; k <= 3 && !oracle_singular; ++k)
            oracle_singular = projgeo::find_singular_point_ext(s, k).has_value();
        if (oracle_singular) {
            ++singular_found;
            CHECK_FALSE(smooth);
        }
        // A singular cubic surface always has a singular point of degree
        // <= 3 over the closure (the singular locus has degree-bounded
        // coordinates), so the reverse direction holds here as well.
        if (smooth) CHECK_FALSE(oracle_singular);
    }
    CHECK(singular_found > 0);  // the sample must exercise both branches
}

TEST_CASE("random surfaces are reproducible and homogeneous") {
    const gf::Field& f5 = gf::Field::get(5, 1);
    Surface a = projgeo::random_surface(f5, 3, 42);
    Surface b = projgeo::random_surface(f5, 3, 42);
    CHECK(a.poly() == b.poly());
    Surface c = projgeo::random_surface(f5, 3, 43);
    CHECK_FALSE(a.poly() == c.poly());
    for (const auto& t : a.poly().terms()) CHECK(surfcode::mpoly::total_degree(t.e) == 3);
}

TEST_CASE("random surface coefficients approximately uniform") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    const auto monos = mpoly::monomials_of_degree(4, 3);
    std::vector<long> counts(3, 0);
    long total = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        Surface s = projgeo::random_surface(f3, 3, 1000 + draw);
        // Count every monomial's coefficient, including zeros.
        std::map<std::array<uint8_t, 4>, uint8_t> coef;
        for (const auto& t : s.poly().terms()) coef[t.e] = t.c;
        for (const auto& e : monos) {
            auto it = coef.find(e);
            ++counts[it == coef.end() ? 0 : it->second];
            ++total;
        }
    }
    // Chi-squared against uniform on 3 cells; 99.9% quantile for df=2 is 13.8.
    const double expected = static_cast<double>(total) / 3.0;
    double chi2 = 0;
    for (long c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 13.8);
}
