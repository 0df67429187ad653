#ifndef SURFCODE_IO_HPP
#define SURFCODE_IO_HPP

#include <string>
#include <vector>

#include "surfcode/gf.hpp"
#include "surfcode/projgeo.hpp"

namespace surfcode::io {

/// "p^e" or plain "q" with q a prime power.
const gf::Field& parse_field(const std::string& s);

/// Homogeneous polynomial over X,Y,Z,T (case-insensitive) with +, -, *, ^.
/// Coefficients are decimal integers, or parenthesized t-polynomials for
/// extension fields, e.g. "(t+1)*X^2*Y".  A trailing "=0" is ignored.
projgeo::Surface parse_surface(const std::string& s, const gf::Field& f);

/// Degree-1 form as a coefficient vector (X, Y, Z, T).
std::vector<uint8_t> parse_plane(const std::string& s, const gf::Field& f);

/// "(2:0:0:1)" or whitespace-separated coordinates.
projgeo::Point parse_point(const std::string& s, const gf::Field& f);

/// One point per line; blank lines and lines starting with '#' skipped.
std::vector<projgeo::Point> parse_point_list(const std::string& text, const gf::Field& f);

/// Reorders `points` to match `order` (which must be the same set).
std::vector<projgeo::Point> apply_point_order(const std::vector<projgeo::Point>& points,
                                              const std::vector<projgeo::Point>& order);

std::string read_file(const std::string& path);

}  // namespace surfcode::io

#endif
