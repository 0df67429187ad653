#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "surfcode/codes.hpp"
#include "surfcode/io.hpp"

using namespace surfcode;
using codes::LinearCode;

static const char* kCubic = "X^3+Y^3+Z^3-Z*X^2-X*Y^2-Y*Z^2+X*Z^2+T^3";

TEST_CASE("functional code of the explicit cubic is [13,4,7]") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    auto s = io::parse_surface(kCubic, f3);
    LinearCode c = codes::functional_code(s, 1);
    CHECK(c.n == 13);
    CHECK(c.k == 4);
    CHECK(codes::min_distance_bruteforce(c) == 7);

    LinearCode d = codes::dual_code(c);
    CHECK(d.k == 9);
    CHECK(codes::dual_min_distance(c) == 3);

    // Double dual: same row space.
    CHECK(linalg::row_space_equal(codes::dual_code(d).generator, c.generator));
    // dim C + dim C-perp = n.
    CHECK(c.k + d.k == c.n);
}

TEST_CASE("m = 0 gives the repetition code") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    auto s = io::parse_surface(kCubic, f3);
    LinearCode c = codes::functional_code(s, 0);
    CHECK(c.k == 1);
    CHECK(codes::min_distance_bruteforce(c) == c.n);
}

TEST_CASE("functional code preconditions") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    auto s = io::parse_surface(kCubic, f3);
    CHECK_THROWS_AS(codes::functional_code(s, 3), std::invalid_argument);
    CHECK_THROWS_AS(codes::functional_code(s, -1), std::invalid_argument);
}

TEST_CASE("random F5 cubics have k = 4 at m = 1") {
    const gf::Field& f5 = gf::Field::get(5, 1);
    uint64_t state = 11;
    int built = 0;
    for (int t = 0; t < 12; ++t) {
        auto s = projgeo::random_surface(f5, 3, projgeo::splitmix64(state));
        auto pts = projgeo::surface_points(s).affine;
        if (pts.size() < 6) continue;
        LinearCode c = codes::functional_code(s, 1, pts);
        // Direct rank oracle: evaluation matrix of 1, x, y, z.
        linalg::Matrix eval(f5, 4, static_cast<int>(pts.size()));
        for (size_t p = 0; p < pts.size(); ++p) {
            auto ac = projgeo::affine_coords(pts[p]);
            eval(0, static_cast<int>(p)) = 1;
            for (int v = 0; v < 3; ++v) eval(v + 1, static_cast<int>(p)) = ac[v];
        }
        CHECK(c.k == linalg::rank(eval));
        ++built;
    }
    CHECK(built > 5);
}

TEST_CASE("budget enforcement") {
    const gf::Field& f5 = gf::Field::get(5, 1);
    linalg::Matrix g(f5, 12, 20);
    for (int i = 0; i < 12; ++i) g(i, i) = 1;
    LinearCode c{g, 20, 12, "wide"};
    CHECK_THROWS_AS(codes::min_distance_bruteforce(c, 1000000), std::runtime_error);
}

TEST_CASE("parity code [3,2] over F2") {
    const gf::Field& f2 = gf::Field::get(2, 1);
    linalg::Matrix g(f2, 2, 3);
    g(0, 0) = 1;
    g(0, 2) = 1;
    g(1, 1) = 1;
    g(1, 2) = 1;
    LinearCode c = codes::from_spanning_rows(g, "parity");
    CHECK(c.k == 2);
    CHECK(codes::min_distance_bruteforce(c) == 2);
    // Dual of the length-3 repetition code has distance 2.
    LinearCode rep = codes::from_spanning_rows(
        [&] {
            linalg::Matrix m(f2, 1, 3);
            m(0, 0) = m(0, 1) = m(0, 2) = 1;
            return m;
        }(),
        "rep3");
    CHECK(codes::dual_min_distance(rep) == 2);
}

TEST_CASE("m-general position") {
    const gf::Field& f5 = gf::Field::get(5, 1);
    using projgeo::Point;
    Point a(f5, {1, 0, 0, 1});
    Point b(f5, {0, 1, 0, 1});
    Point c(f5, {0, 0, 1, 1});
    CHECK(codes::is_m_general({a, b, c}, 1));

    // Three collinear points are 1-linked.
    Point p(f5, {1, 0, 0, 0});
    Point q(f5, {0, 1, 0, 0});
    Point r(f5, {1, 1, 0, 0});
    CHECK_FALSE(codes::is_m_general({p, q, r}, 1));

    // Any m+1 distinct points are in m-general position.
    uint64_t state = 4;
    auto all = projgeo::enumerate_points(f5, 3);
    for (int m = 1; m <= 3; ++m)
        for (int t = 0; t < 10; ++t) {
            std::set<size_t> pick;
            while (static_cast<int>(pick.size()) < m + 1)
                pick.insert(projgeo::uniform_index(state, all.size()));
            std::vector<Point> pts;
            for (size_t i : pick) pts.push_back(all[i]);
            CHECK(codes::is_m_general(pts, m));
        }

    CHECK_THROWS_AS(codes::is_m_general({a, a}, 1), std::invalid_argument);
}

TEST_CASE("reed-muller plane codes") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    LinearCode rm1 = codes::reed_muller_plane(f3, 1);
    CHECK(rm1.n == 9);
    CHECK(rm1.k == 3);
    // dual(RM(1)) equals RM(2q-3-m) = RM(2).
    LinearCode rm2 = codes::reed_muller_plane(f3, 2);
    CHECK(linalg::row_space_equal(codes::dual_code(rm1).generator, rm2.generator));
    // m >= 2(q-1) saturates to the full space.
    CHECK(codes::reed_muller_plane(f3, 4).k == 9);
}

TEST_CASE("tensor codes") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    LinearCode rs1 = codes::reed_solomon(f3, 1);
    CHECK(rs1.n == 3);
    CHECK(rs1.k == 2);
    LinearCode t = codes::tensor_code(rs1, rs1);
    CHECK(t.n == 9);
    CHECK(t.k == 4);

    // dual(A (x) B) = dual(A) (x) F  +  F (x) dual(B).
    LinearCode full = codes::reed_solomon(f3, 2);
    CHECK(full.k == 3);
    LinearCode da = codes::dual_code(rs1);
    LinearCode left = codes::tensor_code(da, full);
    LinearCode right = codes::tensor_code(full, da);
    linalg::Matrix stacked(f3, left.k + right.k, 9);
    for (int r = 0; r < left.k; ++r) stacked.set_row(r, left.generator.row(r));
    for (int r = 0; r < right.k; ++r) stacked.set_row(left.k + r, right.generator.row(r));
    CHECK(linalg::row_space_equal(codes::dual_code(t).generator, stacked));

    // Tensor with the full space interleaves A.
    LinearCode inter = codes::tensor_code(rs1, full);
    CHECK(inter.k == rs1.k * 3);
    CHECK(inter.n == 9);

    // The dual of RS (x) RS is not itself a tensor product of that shape.
    auto cert = codes::tensor_shape_certificate(codes::dual_code(t), 3, 3);
    CHECK_FALSE(cert.is_tensor);
    auto cert2 = codes::tensor_shape_certificate(t, 3, 3);
    CHECK(cert2.is_tensor);
    CHECK(cert2.dim_col_space == 2);
    CHECK(cert2.dim_row_space == 2);
}

TEST_CASE("dual of the full space is the zero code") {
    const gf::Field& f3 = gf::Field::get(3, 1);
    linalg::Matrix g(f3, 3, 3);
    for (int i = 0; i < 3; ++i) g(i, i) = 1;
    LinearCode full = codes::from_spanning_rows(g, "full");
    LinearCode z = codes::dual_code(full);
    CHECK(z.k == 0);
    CHECK(codes::min_distance_bruteforce(z) == 0);
}

TEST_CASE("without collinear triples the dual distance jumps to 2m+2") {
    // Smooth cubic over F_4 (seed found by search) whose five affine
    // points contain no collinear triple: the bound doubles.
    const gf::Field& f4 = gf::Field::get(2, 2);
    auto s = projgeo::random_surface(f4, 3, 726);
    REQUIRE(projgeo::is_smooth(s));
    auto pts = projgeo::surface_points(s).affine;
    REQUIRE(pts.size() == 5);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k)
                CHECK(codes::is_m_general({pts[i], pts[j], pts[k]}, 1));
    LinearCode c = codes::functional_code(s, 1, pts);
    CHECK(codes::dual_min_distance(c) >= 4);
}

TEST_CASE("dual distance bound for surface codes") {
    // For every constructed code with m < deg S: d-perp >= m + 2, with
    // equality exactly when some m+2 affine points are collinear.
    const gf::Field& f4 = gf::Field::get(2, 2);
    uint64_t state = 31;
    int tested = 0;
    while (tested < 6) {
        auto s = projgeo::random_surface(f4, 3, projgeo::splitmix64(state));
        auto pts = projgeo::surface_points(s).affine;
        if (pts.size() < 5 || pts.size() > 14) continue;
        LinearCode c = codes::functional_code(s, 1, pts);
        if (c.n - c.k > 9) continue;
        const long dperp = codes::dual_min_distance(c, 2000000);
        CHECK(dperp >= 3);
        bool has_collinear = false;
        for (size_t i = 0; i < pts.size() && !has_collinear; ++i)
            for (size_t j = i + 1; j < pts.size() && !has_collinear; ++j)
                for (size_t k = j + 1; k < pts.size() && !has_collinear; ++k)
                    if (!codes::is_m_general({pts[i], pts[j], pts[k]}, 1)) has_collinear = true;
        CHECK((dperp == 3) == has_collinear);
        ++tested;
    }
}
