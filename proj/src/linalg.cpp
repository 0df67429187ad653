#include "surfcode/linalg.hpp"

#include <stdexcept>

namespace surfcode::linalg {

std::vector<uint8_t> Matrix::row(int r) const {
    return std::vector<uint8_t>(d_.begin() + static_cast<size_t>(r) * cols_,
                                d_.begin() + static_cast<size_t>(r + 1) * cols_);
}

void Matrix::set_row(int r, const std::vector<uint8_t>& v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("linalg: row size mismatch");
    std::copy(v.begin(), v.end(), d_.begin() + static_cast<size_t>(r) * cols_);
}

Matrix Matrix::transpose() const {
    Matrix t(*f_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (f_ != o.f_ || cols_ != o.rows_) throw std::invalid_argument("linalg: shape or field mismatch");
    Matrix out(*f_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const uint8_t a = (*this)(r, k);
            if (!a) continue;
            for (int c = 0; c < o.cols_; ++c)
                out(r, c) = f_->add(out(r, c), f_->mul(a, o(k, c)));
        }
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

std::vector<int> rref_in_place(Matrix& a) {
    const gf::Field& f = a.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pr, j));
        const uint8_t pinv = f.inv(a(r, c));
        for (int j = 0; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), pinv);
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || !a(i, c)) continue;
            const uint8_t m = a(i, c);
            for (int j = 0; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(m, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Matrix rref(const Matrix& a) {
    Matrix b = a;
    rref_in_place(b);
    return b;
}

int rank(const Matrix& a) {
    Matrix b = a;
    return static_cast<int>(rref_in_place(b).size());
}

Matrix row_basis(const Matrix& a) {
    Matrix b = a;
    const int k = static_cast<int>(rref_in_place(b).size());
    Matrix out(a.field(), k, a.cols());
    for (int r = 0; r < k; ++r) out.set_row(r, b.row(r));
    return out;
}

Matrix nullspace(const Matrix& a) {
    const gf::Field& f = a.field();
    Matrix b = a;
    const std::vector<int> pivots = rref_in_place(b);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix out(f, a.cols() - static_cast<int>(pivots.size()), a.cols());
    int r = 0;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        out(r, c) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            out(r, pivots[pi]) = f.neg(b(static_cast<int>(pi), c));
        ++r;
    }
    return out;
}

std::optional<std::vector<uint8_t>> solve(const Matrix& a, const std::vector<uint8_t>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("linalg: rhs size mismatch");
    const gf::Field& f = a.field();
    Matrix aug(f, a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
    std::vector<uint8_t> x(a.cols(), 0);
    for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug(static_cast<int>(pi), a.cols());
    return x;
}

bool row_space_contains(const Matrix& b, const Matrix& a) {
    if (&a.field() != &b.field() || a.cols() != b.cols())
        throw std::invalid_argument("linalg: shape or field mismatch");
    Matrix stacked(b.field(), a.rows() + b.rows(), b.cols());
    for (int r = 0; r < b.rows(); ++r) stacked.set_row(r, b.row(r));
    for (int r = 0; r < a.rows(); ++r) stacked.set_row(b.rows() + r, a.row(r));
    return rank(stacked) == rank(b);
}

bool row_space_equal(const Matrix& a, const Matrix& b) {
    return row_space_contains(b, a) && row_space_contains(a, b);
}

uint8_t dot(const gf::Field& f, const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("linalg: dot size mismatch");
    uint8_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

}  // namespace surfcode::linalg
