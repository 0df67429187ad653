#ifndef SURFCODE_PROJGEO_HPP
#define SURFCODE_PROJGEO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfcode/gf.hpp"
#include "surfcode/mpoly.hpp"

namespace surfcode::projgeo {

/// Point of P^N(F_q), N <= 3.  Homogeneous coordinates are kept in the
/// canonical form whose first nonzero coordinate is 1; this is also the
/// representative used for evaluating homogeneous forms at the point.
class Point {
public:
    Point(const gf::Field& f, std::vector<uint8_t> coords);

    const gf::Field& field() const { return *f_; }
    int dim() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<uint8_t>& coords() const { return c_; }
    uint8_t operator[](int i) const { return c_[i]; }

    bool operator==(const Point& o) const { return c_ == o.c_; }
    bool operator!=(const Point& o) const { return c_ != o.c_; }
    bool operator<(const Point& o) const { return c_ < o.c_; }

    std::string str() const;

private:
    const gf::Field* f_;
    std::vector<uint8_t> c_;
};

/// Line of P^N as the row space of a 2 x (N+1) matrix in reduced row
/// echelon form; the echelon form is the unique canonical representative.
class Line {
public:
    Line(const gf::Field& f, const Point& p, const Point& q);
    /// Line cut out by two independent hyperplanes (coefficient rows).
    static Line from_planes(const gf::Field& f, const std::vector<uint8_t>& h1,
                            const std::vector<uint8_t>& h2);

    const gf::Field& field() const { return *f_; }
    int ncols() const { return static_cast<int>(rows_[0].size()); }
    const std::array<std::vector<uint8_t>, 2>& rows() const { return rows_; }

    /// The q+1 points of the line, in deterministic order.
    std::vector<Point> points() const;

    bool operator==(const Line& o) const { return rows_ == o.rows_; }
    bool operator<(const Line& o) const { return rows_ < o.rows_; }

private:
    Line(const gf::Field& f) : f_(&f) {}
    const gf::Field* f_;
    std::array<std::vector<uint8_t>, 2> rows_;
};

/// Homogeneous surface {F = 0} in P^3 with coordinates (X, Y, Z, T).
class Surface {
public:
    Surface(const gf::Field& f, int degree, mpoly::MPoly poly);

    const gf::Field& field() const { return *f_; }
    int degree() const { return d_; }
    const mpoly::MPoly& poly() const { return poly_; }

    uint8_t evaluate(const Point& p) const { return poly_.evaluate(p.coords()); }

    /// Dehomogenization G(x, y, z) = F(x, y, z, 1).
    mpoly::MPoly affine_equation() const;

    std::string str() const;

private:
    const gf::Field* f_;
    int d_;
    mpoly::MPoly poly_;
};

/// All points of P^N(F_q), each exactly once, in lexicographic order of the
/// canonical coordinates under the field's element order.
std::vector<Point> enumerate_points(const gf::Field& f, int n);

struct SurfacePoints {
    std::vector<Point> affine;       // T != 0
    std::vector<Point> at_infinity;  // T == 0
};

SurfacePoints surface_points(const Surface& s);

/// Affine coordinates (X/T, Y/T, Z/T) of a point with T != 0.
std::array<uint8_t, 3> affine_coords(const Point& p);

Line line_through(const Point& p, const Point& q);

/// True iff the surface vanishes identically on the line (checked
/// symbolically on the degree-d binary form obtained by restriction, so it
/// is exact even when the line has fewer than degree+1 rational points).
bool line_in_surface(const Line& l, const Surface& s);

/// Gradient of the affine equation at an affine point.
std::array<uint8_t, 3> gradient_affine(const Surface& s, const Point& p);

enum class SmoothMode { Full, RationalOnly };

/// Exact smoothness over the algebraic closure: in each of the four charts
/// the system {F, dF/dX, dF/dY, dF/dZ, dF/dT} generates the unit ideal.
bool is_smooth(const Surface& s);

/// Cheaper screen: no singular point with coordinates in F_{q^k}, k <= kmax.
bool is_smooth_rational_only(const Surface& s, int kmax = 3);

/// Smoothness restricted to the affine chart T != 0.
bool is_smooth_affine(const Surface& s);

bool is_smooth(const Surface& s, SmoothMode mode);

/// Searches for a singular point of S with coordinates in F_{q^k}.
/// Exhaustive over P^3(F_{q^k}); meant for small q^k.
std::optional<std::vector<std::vector<uint8_t>>> find_singular_point_ext(const Surface& s, int k);

/// Uniform independent coefficients over all degree-d monomials, rejecting
/// the zero polynomial; fully determined by the seed.
Surface random_surface(const gf::Field& f, int d, uint64_t seed);

/// Bias-free uniform draw from [0, n) consuming a deterministic rng stream.
uint64_t uniform_index(uint64_t& state, uint64_t n);

/// splitmix64 step; the basis of all deterministic seeding in the toolkit.
uint64_t splitmix64(uint64_t& state);

}  // namespace surfcode::projgeo

#endif
