#ifndef SURFCODE_LINALG_HPP
#define SURFCODE_LINALG_HPP

#include <optional>
#include <vector>

#include "surfcode/gf.hpp"

namespace surfcode::linalg {

/// Dense matrix over one finite field; entries stored as element indices.
class Matrix {
public:
    Matrix(const gf::Field& f, int rows, int cols)
        : f_(&f), rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, 0) {}

    const gf::Field& field() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    uint8_t operator()(int r, int c) const { return d_[static_cast<size_t>(r) * cols_ + c]; }
    uint8_t& operator()(int r, int c) { return d_[static_cast<size_t>(r) * cols_ + c]; }

    std::vector<uint8_t> row(int r) const;
    void set_row(int r, const std::vector<uint8_t>& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

private:
    const gf::Field* f_;
    int rows_, cols_;
    std::vector<uint8_t> d_;
};

/// Reduced row echelon form (Gauss-Jordan); returns pivot column list.
std::vector<int> rref_in_place(Matrix& a);

Matrix rref(const Matrix& a);
int rank(const Matrix& a);

/// Nonzero rows of rref(a): a canonical full-row-rank basis of the row space.
Matrix row_basis(const Matrix& a);

/// Basis of { x : a x^T = 0 }, one solution per free column, in free-column
/// order.  Rows are the basis vectors.
Matrix nullspace(const Matrix& a);

/// One solution of a x = b, if any.
std::optional<std::vector<uint8_t>> solve(const Matrix& a, const std::vector<uint8_t>& b);

/// Mutual containment of row spaces.
bool row_space_equal(const Matrix& a, const Matrix& b);

/// True iff every row of a lies in the row space of b.
bool row_space_contains(const Matrix& b, const Matrix& a);

uint8_t dot(const gf::Field& f, const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

}  // namespace surfcode::linalg

#endif
