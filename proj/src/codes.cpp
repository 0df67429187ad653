#include "surfcode/codes.hpp"

#include <set>
#include <stdexcept>

#include "surfcode/mpoly.hpp"

namespace surfcode::codes {

LinearCode from_spanning_rows(const linalg::Matrix& rows, std::string provenance) {
    linalg::Matrix g = linalg::row_basis(rows);
    const int n = g.cols();
    const int k = g.rows();
    return LinearCode{std::move(g), n, k, std::move(provenance)};
}

LinearCode functional_code(const projgeo::Surface& s, int m,
                           const std::vector<projgeo::Point>& affine_points) {
    if (m < 0 || m >= s.degree())
        throw std::invalid_argument("codes: need 0 <= m < degree of the surface");
    if (affine_points.empty()) throw std::invalid_argument("codes: surface has no affine points");
    const gf::Field& f = s.field();
    const auto monos = mpoly::monomials_up_to_degree(3, m);
    linalg::Matrix eval(f, static_cast<int>(monos.size()), static_cast<int>(affine_points.size()));
    for (size_t c = 0; c < affine_points.size(); ++c) {
        const auto ac = projgeo::affine_coords(affine_points[c]);
        for (size_t r = 0; r < monos.size(); ++r) {
            uint8_t v = 1;
            for (int var = 0; var < 3; ++var)
                for (int e = 0; e < monos[r][var]; ++e) v = f.mul(v, ac[var]);
            eval(static_cast<int>(r), static_cast<int>(c)) = v;
        }
    }
    return from_spanning_rows(eval, "functional m=" + std::to_string(m) + " on " + s.str());
}

LinearCode functional_code(const projgeo::Surface& s, int m) {
    return functional_code(s, m, projgeo::surface_points(s).affine);
}

long min_distance_bruteforce(const LinearCode& c, long budget) {
    const gf::Field& f = c.field();
    const int q = f.size();
    long count = 1;
    for (int i = 0; i < c.k; ++i) {
        count *= q;
        if (count > budget)
            throw std::runtime_error("codes: brute-force budget exceeded (q^k too large)");
    }
    std::vector<uint8_t> digits(c.k, 0);
    std::vector<uint8_t> word(c.n, 0);
    long best = c.n + 1;
    for (long step = 1; step < count; ++step) {
        // Odometer increment; the word follows by row updates.
        int pos = 0;
        while (digits[pos] == q - 1) {
            const uint8_t old = digits[pos];
            digits[pos] = 0;
            for (int j = 0; j < c.n; ++j)
                word[j] = f.sub(word[j], f.mul(old, c.generator(pos, j)));
            ++pos;
        }
        const uint8_t before = digits[pos];
        digits[pos] += 1;
        const uint8_t delta = f.sub(digits[pos], before);
        for (int j = 0; j < c.n; ++j)
            word[j] = f.add(word[j], f.mul(delta, c.generator(pos, j)));
        int w = 0;
        for (int j = 0; j < c.n; ++j) w += word[j] != 0;
        if (w < best) best = w;
    }
    return best == c.n + 1 ? 0 : best;
}

LinearCode dual_code(const LinearCode& c) {
    linalg::Matrix ns = linalg::nullspace(c.generator);
    return from_spanning_rows(ns, "dual of " + c.provenance);
}

long dual_min_distance(const LinearCode& c, long budget) {
    return min_distance_bruteforce(dual_code(c), budget);
}

bool is_m_general(const std::vector<projgeo::Point>& points, int m) {
    if (points.empty()) return true;
    std::set<std::vector<uint8_t>> seen;
    for (const auto& p : points)
        if (!seen.insert(p.coords()).second)
            throw std::invalid_argument("codes: duplicate points in m-generality test");
    const gf::Field& f = points.front().field();
    const int nv = points.front().dim() + 1;
    const auto monos = mpoly::monomials_of_degree(nv, m);
    linalg::Matrix mat(f, static_cast<int>(points.size()), static_cast<int>(monos.size()));
    for (size_t r = 0; r < points.size(); ++r) {
        const auto& coords = points[r].coords();
        for (size_t c = 0; c < monos.size(); ++c) {
            uint8_t v = 1;
            for (int var = 0; var < nv; ++var)
                for (int e = 0; e < monos[c][var]; ++e) v = f.mul(v, coords[var]);
            mat(static_cast<int>(r), static_cast<int>(c)) = v;
        }
    }
    return linalg::rank(mat) == static_cast<int>(points.size());
}

LinearCode reed_muller_plane(const gf::Field& f, int m) {
    if (m < 0) throw std::invalid_argument("codes: m must be >= 0");
    const int q = f.size();
    const auto monos = mpoly::monomials_up_to_degree(2, m);
    linalg::Matrix eval(f, static_cast<int>(monos.size()), q * q);
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
            const int col = x * q + y;
            for (size_t r = 0; r < monos.size(); ++r) {
                uint8_t v = 1;
                for (int e = 0; e < monos[r][0]; ++e) v = f.mul(v, static_cast<uint8_t>(x));
                for (int e = 0; e < monos[r][1]; ++e) v = f.mul(v, static_cast<uint8_t>(y));
                eval(static_cast<int>(r), col) = v;
            }
        }
    return from_spanning_rows(eval, "reed-muller m=" + std::to_string(m));
}

LinearCode reed_solomon(const gf::Field& f, int m) {
    if (m < 0) throw std::invalid_argument("codes: m must be >= 0");
    const int q = f.size();
    linalg::Matrix eval(f, m + 1, q);
    for (int x = 0; x < q; ++x) {
        uint8_t v = 1;
        for (int r = 0; r <= m; ++r) {
            eval(r, x) = v;
            v = f.mul(v, static_cast<uint8_t>(x));
        }
    }
    return from_spanning_rows(eval, "reed-solomon m=" + std::to_string(m));
}

LinearCode tensor_code(const LinearCode& a, const LinearCode& b) {
    if (&a.field() != &b.field()) throw std::invalid_argument("codes: tensor over different fields");
    const gf::Field& f = a.field();
    linalg::Matrix rows(f, a.k * b.k, a.n * b.n);
    for (int ra = 0; ra < a.k; ++ra)
        for (int rb = 0; rb < b.k; ++rb) {
            const int r = ra * b.k + rb;
            for (int ca = 0; ca < a.n; ++ca)
                for (int cb = 0; cb < b.n; ++cb)
                    rows(r, ca * b.n + cb) = f.mul(a.generator(ra, ca), b.generator(rb, cb));
        }
    return from_spanning_rows(rows, "(" + a.provenance + ") tensor (" + b.provenance + ")");
}

TensorShape tensor_shape_certificate(const LinearCode& c, int n_a, int n_b) {
    if (n_a * n_b != c.n) throw std::invalid_argument("codes: tensor shape does not match length");
    const gf::Field& f = c.field();
    // Stack every codeword matrix's rows (resp. columns) and measure spans.
    linalg::Matrix rows(f, c.k * n_a, n_b);
    linalg::Matrix cols(f, c.k * n_b, n_a);
    for (int r = 0; r < c.k; ++r)
        for (int ia = 0; ia < n_a; ++ia)
            for (int ib = 0; ib < n_b; ++ib) {
                const uint8_t v = c.generator(r, ia * n_b + ib);
                rows(r * n_a + ia, ib) = v;
                cols(r * n_b + ib, ia) = v;
            }
    TensorShape t{};
    t.dim_col_space = linalg::rank(cols);
    t.dim_row_space = linalg::rank(rows);
    t.is_tensor = t.dim_col_space * t.dim_row_space == c.k;
    return t;
}

}  // namespace surfcode::codes
