#ifndef SURFCODE_CODES_HPP
#define SURFCODE_CODES_HPP

#include <string>
#include <vector>

#include "surfcode/linalg.hpp"
#include "surfcode/projgeo.hpp"

namespace surfcode::codes {

/// Linear [n, k] code presented by a full-row-rank generator matrix.
struct LinearCode {
    linalg::Matrix generator;
    int n;
    int k;
    std::string provenance;

    const gf::Field& field() const { return generator.field(); }
};

/// Canonicalizes an arbitrary spanning matrix into a LinearCode.
LinearCode from_spanning_rows(const linalg::Matrix& rows, std::string provenance);

/// Evaluation code of the polynomials in (x, y, z) of total degree <= m at
/// the affine rational points of S, in the given point order.
/// Requires 0 <= m < degree(S) and at least one affine point.
LinearCode functional_code(const projgeo::Surface& s, int m,
                           const std::vector<projgeo::Point>& affine_points);
LinearCode functional_code(const projgeo::Surface& s, int m);

/// Exact minimum Hamming weight over all q^k - 1 nonzero codewords.
/// Throws std::runtime_error when q^k exceeds the budget.
long min_distance_bruteforce(const LinearCode& c, long budget = 1'000'000);

LinearCode dual_code(const LinearCode& c);

long dual_min_distance(const LinearCode& c, long budget = 1'000'000);

/// True iff the evaluation functionals of the points on degree-m forms are
/// linearly independent.  Throws on duplicate points.
bool is_m_general(const std::vector<projgeo::Point>& points, int m);

/// Reed-Muller code: bivariate polynomials of total degree <= m evaluated
/// at all q^2 affine plane points (lexicographic point order).
LinearCode reed_muller_plane(const gf::Field& f, int m);

/// Reed-Solomon code: univariate polynomials of degree <= m evaluated at
/// all q field elements in index order.
LinearCode reed_solomon(const gf::Field& f, int m);

/// Row-space tensor product; length n_a * n_b with column index
/// ia * n_b + ib.
LinearCode tensor_code(const LinearCode& a, const LinearCode& b);

struct TensorShape {
    int dim_col_space;  // span of all codeword-matrix columns
    int dim_row_space;  // span of all codeword-matrix rows
    bool is_tensor;     // k == product of the two dimensions
};

/// Decides whether C equals A (x) B for some codes A, B of lengths
/// (n_a, n_b): C is such a product iff its dimension equals the product of
/// the column- and row-support space dimensions.
TensorShape tensor_shape_certificate(const LinearCode& c, int n_a, int n_b);

}  // namespace surfcode::codes

#endif
