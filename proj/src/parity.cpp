#include "surfcode/parity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "surfcode/mpoly.hpp"

namespace surfcode::parity {

namespace {

std::map<std::vector<uint8_t>, int> index_points(const std::vector<projgeo::Point>& pts) {
    std::map<std::vector<uint8_t>, int> m;
    for (size_t i = 0; i < pts.size(); ++i) m[pts[i].coords()] = static_cast<int>(i);
    return m;
}

std::vector<int> line_support(const projgeo::Line& l,
                              const std::map<std::vector<uint8_t>, int>& index) {
    std::vector<int> support;
    for (const projgeo::Point& p : l.points()) {
        auto it = index.find(p.coords());
        if (it != index.end()) support.push_back(it->second);
    }
    std::sort(support.begin(), support.end());
    return support;
}

}  // namespace

ParityRow residue_word(const projgeo::Surface& s, int m, const projgeo::Line& l,
                       const std::vector<projgeo::Point>& affine_points) {
    if (s.degree() != m + 2)
        throw std::invalid_argument("parity: residue words require degree(S) == m+2");
    if (projgeo::line_in_surface(l, s))
        throw std::invalid_argument("parity: line is contained in the surface");
    const gf::Field& f = s.field();
    const auto index = index_points(affine_points);
    const std::vector<int> support = line_support(l, index);
    if (static_cast<int>(support.size()) != m + 2)
        throw std::invalid_argument("parity: line meets the affine points in " +
                                    std::to_string(support.size()) + " points, expected " +
                                    std::to_string(m + 2));

    // Canonical direction: difference of the two lowest-index support
    // points, first nonzero coordinate scaled to 1.
    const auto a = projgeo::affine_coords(affine_points[support[0]]);
    const auto b = projgeo::affine_coords(affine_points[support[1]]);
    std::array<uint8_t, 3> v{f.sub(b[0], a[0]), f.sub(b[1], a[1]), f.sub(b[2], a[2])};
    for (int i = 0; i < 3; ++i) {
        if (!v[i]) continue;
        const uint8_t sc = f.inv(v[i]);
        for (int j = 0; j < 3; ++j) v[j] = f.mul(v[j], sc);
        break;
    }

    const mpoly::MPoly g = s.affine_equation();
    const std::array<mpoly::MPoly, 3> grad{g.derivative(0), g.derivative(1), g.derivative(2)};

    ParityRow row{static_cast<int>(affine_points.size()), {}, l, v};
    uint8_t sum = 0;
    for (int idx : support) {
        const auto ac = projgeo::affine_coords(affine_points[idx]);
        const std::vector<uint8_t> x{ac[0], ac[1], ac[2], 0};
        uint8_t pair = 0;
        for (int i = 0; i < 3; ++i) pair = f.add(pair, f.mul(grad[i].evaluate(x), v[i]));
        if (!pair)
            throw std::logic_error("parity: vanishing directional derivative at a transversal point");
        const uint8_t c = f.inv(pair);
        row.entries.emplace_back(idx, c);
        sum = f.add(sum, c);
    }
    if (sum) throw std::logic_error("parity: residue entries do not sum to zero");
    return row;
}

std::vector<projgeo::Line> find_parity_lines(const projgeo::Surface& s, int m,
                                             const std::vector<projgeo::Point>& affine_points) {
    if (s.degree() != m + 2)
        throw std::invalid_argument("parity: parity lines require degree(S) == m+2");
    const auto index = index_points(affine_points);
    std::set<projgeo::Line> seen;
    std::vector<projgeo::Line> lines;
    for (size_t i = 0; i < affine_points.size(); ++i)
        for (size_t j = i + 1; j < affine_points.size(); ++j) {
            projgeo::Line l = projgeo::line_through(affine_points[i], affine_points[j]);
            if (!seen.insert(l).second) continue;
            if (static_cast<int>(line_support(l, index).size()) != m + 2) continue;
            if (projgeo::line_in_surface(l, s)) continue;
            lines.push_back(std::move(l));
        }
    return lines;
}

ParityMatrix build_parity_matrix(const projgeo::Surface& s, int m,
                                 const std::vector<projgeo::Point>& affine_points) {
    ParityMatrix pm{&s.field(), static_cast<int>(affine_points.size()), {}};
    for (const projgeo::Line& l : find_parity_lines(s, m, affine_points))
        pm.rows.push_back(residue_word(s, m, l, affine_points));
    return pm;
}

ParityMatrix build_parity_matrix(const projgeo::Surface& s, int m) {
    return build_parity_matrix(s, m, projgeo::surface_points(s).affine);
}

linalg::Matrix to_matrix(const ParityMatrix& pm) {
    linalg::Matrix h(*pm.field, static_cast<int>(pm.rows.size()), pm.n);
    for (size_t r = 0; r < pm.rows.size(); ++r)
        for (const auto& [idx, c] : pm.rows[r].entries) h(static_cast<int>(r), idx) = c;
    return h;
}

PositiveTest is_positive_test(const projgeo::Surface& s, int m,
                             const std::vector<projgeo::Point>& affine_points) {
    const codes::LinearCode code = codes::functional_code(s, m, affine_points);
    const ParityMatrix pm = build_parity_matrix(s, m, affine_points);
    const int r = pm.rows.empty() ? 0 : linalg::rank(to_matrix(pm));
    PositiveTest t{};
    t.n = code.n;
    t.k = code.k;
    t.rank = r;
    t.gap = (code.n - code.k) - r;
    t.positive = t.gap == 0;
    return t;
}

}  // namespace surfcode::parity
