#ifndef SURFCODE_PARITY_HPP
#define SURFCODE_PARITY_HPP

#include <array>
#include <vector>

#include "surfcode/codes.hpp"
#include "surfcode/linalg.hpp"
#include "surfcode/projgeo.hpp"

namespace surfcode::parity {

/// Sparse dual codeword produced by one line.  Support size equals the
/// surface degree, every entry is nonzero and the entries sum to zero.
struct ParityRow {
    int n;
    std::vector<std::pair<int, uint8_t>> entries;  // (point index, element), ascending index
    projgeo::Line line;                            // provenance
    std::array<uint8_t, 3> direction;              // canonical affine direction used
};

struct ParityMatrix {
    const gf::Field* field;
    int n;
    std::vector<ParityRow> rows;
};

/// Dual codeword along one line: entry 1/<grad G(P_i), v> at each of the
/// d = m+2 affine intersection points, 0 elsewhere.  Requires
/// degree(S) == m+2, the line not contained in S, and exactly m+2 distinct
/// affine rational intersection points.
ParityRow residue_word(const projgeo::Surface& s, int m, const projgeo::Line& l,
                       const std::vector<projgeo::Point>& affine_points);

/// All canonical lines meeting the affine points in exactly m+2 points and
/// not contained in S, each once, in first-discovery order of the
/// unordered point-pair loop.
std::vector<projgeo::Line> find_parity_lines(const projgeo::Surface& s, int m,
                                             const std::vector<projgeo::Point>& affine_points);

ParityMatrix build_parity_matrix(const projgeo::Surface& s, int m,
                                 const std::vector<projgeo::Point>& affine_points);
ParityMatrix build_parity_matrix(const projgeo::Surface& s, int m);

linalg::Matrix to_matrix(const ParityMatrix& pm);

struct PositiveTest {
    bool positive;
    int gap;   // (n - k) - rank, >= 0
    int rank;  // rank of the parity matrix
    int n;
    int k;  // dimension of the functional code
};

/// Compares the parity-matrix rank with n - dim C_L(Delta, m L_inf).
PositiveTest is_positive_test(const projgeo::Surface& s, int m,
                             const std::vector<projgeo::Point>& affine_points);

}  // namespace surfcode::parity

#endif
