#include "surfcode/projgeo.hpp"

#include <algorithm>
#include <stdexcept>

#include "surfcode/linalg.hpp"

namespace surfcode::projgeo {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t uniform_index(uint64_t& state, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = splitmix64(state);
    } while (v >= limit);
    return v % n;
}

Point::Point(const gf::Field& f, std::vector<uint8_t> coords) : f_(&f), c_(std::move(coords)) {
    int h = -1;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) {
            h = static_cast<int>(i);
            break;
        }
    if (h < 0) throw std::invalid_argument("projgeo: all-zero homogeneous coordinates");
    if (c_[h] != 1) {
        const uint8_t s = f.inv(c_[h]);
        for (uint8_t& x : c_) x = f.mul(x, s);
    }
}

std::string Point::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ":";
        s += f_->to_string(c_[i]);
    }
    return s + ")";
}

Line::Line(const gf::Field& f, const Point& p, const Point& q) : f_(&f) {
    if (p == q) throw std::invalid_argument("projgeo: line through equal points");
    linalg::Matrix m(f, 2, p.dim() + 1);
    m.set_row(0, p.coords());
    m.set_row(1, q.coords());
    if (linalg::rref_in_place(m).size() != 2) throw std::invalid_argument("projgeo: degenerate line");
    rows_[0] = m.row(0);
    rows_[1] = m.row(1);
}

Line Line::from_planes(const gf::Field& f, const std::vector<uint8_t>& h1,
                       const std::vector<uint8_t>& h2) {
    linalg::Matrix planes(f, 2, static_cast<int>(h1.size()));
    planes.set_row(0, h1);
    planes.set_row(1, h2);
    linalg::Matrix ns = linalg::nullspace(planes);
    if (ns.rows() != 2) throw std::invalid_argument("projgeo: planes do not cut a line");
    linalg::Matrix m = linalg::rref(ns);
    Line l(f);
    l.rows_[0] = m.row(0);
    l.rows_[1] = m.row(1);
    return l;
}

std::vector<Point> Line::points() const {
    const gf::Field& f = *f_;
    std::vector<Point> pts;
    pts.reserve(f.size() + 1);
    pts.emplace_back(f, rows_[1]);
    for (int c = 0; c < f.size(); ++c) {
        std::vector<uint8_t> v(rows_[0].size());
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = f.add(rows_[0][i], f.mul(static_cast<uint8_t>(c), rows_[1][i]));
        pts.emplace_back(f, v);
    }
    return pts;
}

Surface::Surface(const gf::Field& f, int degree, mpoly::MPoly poly)
    : f_(&f), d_(degree), poly_(std::move(poly)) {
    if (degree < 1) throw std::invalid_argument("projgeo: surface degree must be >= 1");
    if (poly_.is_zero()) throw std::invalid_argument("projgeo: zero surface equation");
    for (const auto& t : poly_.terms())
        if (mpoly::total_degree(t.e) != degree)
            throw std::invalid_argument("projgeo: equation is not homogeneous of the stated degree");
}

mpoly::MPoly Surface::affine_equation() const { return poly_.subst_one(3); }

std::string Surface::str() const {
    const gf::Field& f = *f_;
    static const char* names[4] = {"X", "Y", "Z", "T"};
    std::string s;
    for (const auto& t : poly_.terms()) {
        if (!s.empty()) s += "+";
        std::string term;
        if (t.c != 1 || mpoly::total_degree(t.e) == 0) {
            term = f.degree() == 1 ? f.to_string(t.c) : "(" + f.to_string(t.c) + ")";
        }
        for (int v = 0; v < 4; ++v) {
            if (!t.e[v]) continue;
            if (!term.empty()) term += "*";
            term += names[v];
            if (t.e[v] > 1) term += "^" + std::to_string(static_cast<int>(t.e[v]));
        }
        s += term;
    }
    return s;
}

std::vector<Point> enumerate_points(const gf::Field& f, int n) {
    if (n < 1) throw std::invalid_argument("projgeo: dimension must be >= 1");
    std::vector<Point> pts;
    std::vector<uint8_t> c(n + 1, 0);
    // Odometer in lexicographic order; keep the canonical representatives.
    while (true) {
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (c[i] == 1) pts.emplace_back(f, c);
            break;
        }
        int pos = n;
        while (pos >= 0 && c[pos] == f.size() - 1) c[pos--] = 0;
        if (pos < 0) break;
        ++c[pos];
    }
    return pts;
}

SurfacePoints surface_points(const Surface& s) {
    SurfacePoints out;
    for (const Point& p : enumerate_points(s.field(), 3)) {
        if (s.evaluate(p)) continue;
        (p[3] ? out.affine : out.at_infinity).push_back(p);
    }
    return out;
}

std::array<uint8_t, 3> affine_coords(const Point& p) {
    if (!p[3]) throw std::invalid_argument("projgeo: point at infinity");
    const gf::Field& f = p.field();
    const uint8_t ti = f.inv(p[3]);
    return {f.mul(p[0], ti), f.mul(p[1], ti), f.mul(p[2], ti)};
}

Line line_through(const Point& p, const Point& q) { return Line(p.field(), p, q); }

bool line_in_surface(const Line& l, const Surface& s) {
    // Restrict F to the line: F(a*R0 + b*R1) as a binary form in (a, b).
    const gf::Field& f = s.field();
    const auto& rows = l.rows();
    mpoly::MPoly form(f, 2);
    for (const auto& t : s.poly().terms()) {
        mpoly::MPoly prod(f, 2);
        prod.add_term({0, 0, 0, 0}, t.c);
        for (int v = 0; v < 4; ++v) {
            mpoly::MPoly lin(f, 2);
            lin.add_term({1, 0, 0, 0}, rows[0][v]);
            lin.add_term({0, 1, 0, 0}, rows[1][v]);
            for (int k = 0; k < t.e[v]; ++k) prod = prod * lin;
        }
        form = form + prod;
    }
    return form.is_zero();
}

std::array<uint8_t, 3> gradient_affine(const Surface& s, const Point& p) {
    const mpoly::MPoly g = s.affine_equation();
    const auto ac = affine_coords(p);
    const std::vector<uint8_t> x{ac[0], ac[1], ac[2], 0};
    return {g.derivative(0).evaluate(x), g.derivative(1).evaluate(x), g.derivative(2).evaluate(x)};
}

bool is_smooth(const Surface& s) {
    std::vector<mpoly::MPoly> sys;
    sys.push_back(s.poly());
    for (int v = 0; v < 4; ++v) sys.push_back(s.poly().derivative(v));
    for (int chart = 3; chart >= 0; --chart) {
        std::vector<mpoly::MPoly> local;
        local.reserve(sys.size());
        for (const auto& p : sys) local.push_back(p.subst_one(chart));
        if (!mpoly::ideal_is_trivial(local)) return false;
    }
    return true;
}

bool is_smooth(const Surface& s, SmoothMode mode) {
    return mode == SmoothMode::Full ? is_smooth(s) : is_smooth_rational_only(s);
}

bool is_smooth_affine(const Surface& s) {
    std::vector<mpoly::MPoly> local;
    local.push_back(s.poly().subst_one(3));
    for (int v = 0; v < 4; ++v) local.push_back(s.poly().derivative(v).subst_one(3));
    return mpoly::ideal_is_trivial(local);
}

namespace {

// Minimal F_{q^k} arithmetic (k <= 3) on top of a base Field, used only by
// the extension-point singularity search.
struct ExtField {
    const gf::Field* base;
    int k;
    std::vector<uint8_t> mod;  // monic degree-k modulus over the base field

    using E = std::array<uint8_t, 3>;

    E zero() const { return {0, 0, 0}; }
    E embed(uint8_t c) const { return {c, 0, 0}; }

    E add(const E& a, const E& b) const {
        E r{};
        for (int i = 0; i < k; ++i) r[i] = base->add(a[i], b[i]);
        return r;
    }
    E mul(const E& a, const E& b) const {
        std::array<uint8_t, 8> full{};
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                full[i + j] = base->add(full[i + j], base->mul(a[i], b[j]));
        for (int d = 2 * k - 2; d >= k; --d) {
            const uint8_t c = full[d];
            if (!c) continue;
            full[d] = 0;
            for (int i = 0; i < k; ++i)
                full[d - k + i] = base->sub(full[d - k + i], base->mul(c, mod[i]));
        }
        E r{};
        for (int i = 0; i < k; ++i) r[i] = full[i];
        return r;
    }
    bool is_zero(const E& a) const {
        for (int i = 0; i < k; ++i)
            if (a[i]) return false;
        return true;
    }
    int size() const {
        int n = 1;
        for (int i = 0; i < k; ++i) n *= base->size();
        return n;
    }
    E from_index(int idx) const {
        E r{};
        for (int i = 0; i < k; ++i) {
            r[i] = static_cast<uint8_t>(idx % base->size());
            idx /= base->size();
        }
        return r;
    }
};

ExtField make_ext(const gf::Field& base, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("projgeo: extension degree must be 1..3");
    ExtField ext{&base, k, std::vector<uint8_t>(k, 0)};
    if (k == 1) {
        ext.mod = {0};
        return ext;
    }
    // Degree 2 or 3: irreducible over F_q iff it has no root in F_q.
    const int q = base.size();
    int count = 1;
    for (int i = 0; i < k; ++i) count *= q;
    for (int idx = 0; idx < count; ++idx) {
        std::vector<uint8_t> m(k, 0);
        int v = idx;
        for (int i = 0; i < k; ++i) {
            m[i] = static_cast<uint8_t>(v % q);
            v /= q;
        }
        bool has_root = false;
        for (int r = 0; r < q && !has_root; ++r) {
            uint8_t acc = 0, p = 1;
            for (int i = 0; i < k; ++i) {
                acc = base.add(acc, base.mul(m[i], p));
                p = base.mul(p, static_cast<uint8_t>(r));
            }
            acc = base.add(acc, p);  // monic leading term
            has_root = (acc == 0);
        }
        if (!has_root) {
            ext.mod = m;
            return ext;
        }
    }
    throw std::logic_error("projgeo: no irreducible extension modulus found");
}

ExtField::E eval_ext(const mpoly::MPoly& p, const ExtField& ext, const std::array<ExtField::E, 4>& x) {
    ExtField::E acc = ext.zero();
    for (const auto& t : p.terms()) {
        ExtField::E m = ext.embed(t.c);
        for (int v = 0; v < 4; ++v)
            for (int e = 0; e < t.e[v]; ++e) m = ext.mul(m, x[v]);
        acc = ext.add(acc, m);
    }
    return acc;
}

}  // namespace

std::optional<std::vector<std::vector<uint8_t>>> find_singular_point_ext(const Surface& s, int k) {
    const gf::Field& f = s.field();
    const ExtField ext = make_ext(f, k);
    std::vector<mpoly::MPoly> sys;
    sys.push_back(s.poly());
    for (int v = 0; v < 4; ++v) sys.push_back(s.poly().derivative(v));

    const int qk = ext.size();
    // Canonical representatives: first nonzero coordinate equal to 1.
    for (int h = 0; h < 4; ++h) {
        const int free = 3 - h;
        long total = 1;
        for (int i = 0; i < free; ++i) total *= qk;
        for (long idx = 0; idx < total; ++idx) {
            std::array<ExtField::E, 4> x;
            for (int i = 0; i < h; ++i) x[i] = ext.zero();
            x[h] = ext.embed(1);
            long v = idx;
            for (int i = h + 1; i < 4; ++i) {
                x[i] = ext.from_index(static_cast<int>(v % qk));
                v /= qk;
            }
            bool all_zero = true;
            for (const auto& p : sys) {
                if (!ext.is_zero(eval_ext(p, ext, x))) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero) {
                std::vector<std::vector<uint8_t>> out;
                for (int i = 0; i < 4; ++i)
                    out.emplace_back(x[i].begin(), x[i].begin() + k);
                return out;
            }
        }
    }
    return std::nullopt;
}

bool is_smooth_rational_only(const Surface& s, int kmax) {
    const long budget = 2'000'000;
    for (int k = 1; k <= kmax; ++k) {
        long qk = 1;
        for (int i = 0; i < k; ++i) qk *= s.field().size();
        if (qk * qk * qk > budget) break;
        if (find_singular_point_ext(s, k)) return false;
    }
    return true;
}

Surface random_surface(const gf::Field& f, int d, uint64_t seed) {
    const auto monos = mpoly::monomials_of_degree(4, d);
    uint64_t state = seed;
    while (true) {
        mpoly::MPoly p(f, 4);
        for (const auto& e : monos)
            p.add_term(e, static_cast<uint8_t>(uniform_index(state, f.size())));
        if (!p.is_zero()) return Surface(f, d, std::move(p));
    }
}

}  // namespace surfcode::projgeo
