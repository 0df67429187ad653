#ifndef SURFCODE_LAURENT_HPP
#define SURFCODE_LAURENT_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "surfcode/gf.hpp"

namespace surfcode::laurent {

/// Thrown when an operation cannot certify the coefficients it needs.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient-ring handle over a finite field.
struct GfRing {
    const gf::Field* f;
    using value_type = uint8_t;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const { return f->add(a, b); }
    value_type sub(value_type a, value_type b) const { return f->sub(a, b); }
    value_type mul(value_type a, value_type b) const { return f->mul(a, b); }
    value_type neg(value_type a) const { return f->neg(a); }
    value_type inv(value_type a) const { return f->inv(a); }
    value_type from_int(long v) const { return f->from_int(v); }
    bool is_zero(value_type a) const { return a == 0; }
    bool eq(value_type a, value_type b) const { return a == b; }
    std::string str(value_type a) const { return f->to_string(a); }
    value_type parse(const std::string& s) const { return f->parse(s); }
    bool same(const GfRing& o) const { return f == o.f; }
};

/// Exact rationals; characteristic-0 cross-checking mode.
struct QRing {
    using value_type = mpq_class;
    value_type zero() const { return mpq_class(0); }
    value_type one() const { return mpq_class(1); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw std::domain_error("laurent: rational inverse of zero");
        return 1 / a;
    }
    value_type from_int(long v) const { return mpq_class(v); }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool eq(const value_type& a, const value_type& b) const { return a == b; }
    std::string str(const value_type& a) const { return a.get_str(); }
    value_type parse(const std::string& s) const {
        value_type v(s);
        v.canonicalize();
        return v;
    }
    bool same(const QRing&) const { return true; }
};

/// Certification state of one v-slice of a series.
///
/// Complete: the stored coefficients are the whole slice (zero outside).
/// Exact:    correct for u-exponents <= xlim, zero below the window, and
///           unknown above xlim.
/// Polluted: nothing certified.
enum class SliceState : uint8_t { Complete, Exact, Polluted };

struct SliceMark {
    SliceState state;
    int xlim;  // meaningful for Exact

    static SliceMark complete() { return {SliceState::Complete, 0}; }
    static SliceMark exact(int xlim) { return {SliceState::Exact, xlim}; }
    static SliceMark polluted() { return {SliceState::Polluted, 0}; }
    bool operator==(const SliceMark& o) const = default;
};

/// Truncation caps.  Only the upper edges clamp: a Laurent series has
/// finitely many pole terms, so storage simply follows the actual support
/// downward, while the infinite tails are cut at uhi/vhi and the marks
/// record what the cut cost.  Defaults to exponents up to 8 per variable;
/// the lower bounds are kept for literal construction and diagnostics.
struct Window {
    int ulo = -8, uhi = 8, vlo = -8, vhi = 8;
    Window widened(int extra) const { return {ulo - extra, uhi + extra, vlo - extra, vhi + extra}; }
    bool operator==(const Window& o) const = default;
};

/// Truncated bivariate Laurent series sum h_{i,j} u^i v^j with certified
/// precision bookkeeping.  The grid bounds [i0, i1] x [j0, j1] are storage
/// bounds; i0 and j0 are hard lower bounds on the true support, upper
/// bounds are softened by the per-slice marks.  Slices above j1 are all
/// zero when v_tail_complete() holds and unknown otherwise.
template <class R>
class Series {
public:
    using V = typename R::value_type;

    Series(R ring, Window w) : ring_(ring), win_(w) { reset(0, -1, 0, -1); /* empty: zero */ }

    static Series zero(R ring, Window w = Window{}) { return Series(ring, w); }

    static Series monomial(R ring, const V& c, int i, int j, Window w = Window{}) {
        Series s(ring, w);
        if (!ring.is_zero(c)) {
            s.reset(i, i, j, j);
            s.at(i, j) = c;
        }
        return s;
    }

    static Series constant(R ring, const V& c, Window w = Window{}) {
        return monomial(ring, c, 0, 0, w);
    }

    const R& ring() const { return ring_; }
    const Window& window() const { return win_; }
    int i0() const { return i0_; }
    int i1() const { return i1_; }
    int j0() const { return j0_; }
    int j1() const { return j1_; }
    bool v_tail_complete() const { return vtail_; }

    bool in_grid(int i, int j) const { return i >= i0_ && i <= i1_ && j >= j0_ && j <= j1_; }

    const V& coeff(int i, int j) const {
        static const V z{};
        if (!in_grid(i, j)) return z;
        return c_[idx(i, j)];
    }

    /// Mark of a slice, including the implicit ones outside the grid.
    SliceMark mark(int j) const {
        if (j < j0_) return SliceMark::complete();
        if (j > j1_) return vtail_ ? SliceMark::complete() : SliceMark::polluted();
        return marks_[j - j0_];
    }

    /// True iff the coefficient at (i, j) is certified.
    bool certified(int i, int j) const {
        const SliceMark m = mark(j);
        if (m.state == SliceState::Polluted) return false;
        if (m.state == SliceState::Exact && i > m.xlim) return false;
        return true;
    }

    bool all_complete() const {
        if (!vtail_) return false;
        for (const auto& m : marks_)
            if (m.state != SliceState::Complete) return false;
        return true;
    }

    /// Certified-equality on the intersection of certified regions; throws
    /// PrecisionError if the compared region is empty.
    bool agrees_with(const Series& o) const;

    Series operator+(const Series& o) const { return combine(o, false); }
    Series operator-(const Series& o) const { return combine(o, true); }
    Series operator-() const;
    Series scaled(const V& c) const;
    Series operator*(const Series& o) const;

    /// Shift exponents by (di, dj) and scale.
    Series shifted(const V& c, int di, int dj) const;

    /// Multiplicative inverse via leading-monomial factorization and
    /// truncated geometric series.
    Series inverse() const;

    Series derivative_u() const;
    Series derivative_v() const;

    /// The series -h with the roles of the variables exchanged (grid
    /// transposed); realizes the anticommutativity of the wedge product.
    Series transposed_negated() const;

    /// Re-expands the series after the substitution u -> f, v -> g, where f
    /// and g must be fully certified (Complete everywhere).  f needs
    /// f(x, 0) of x-valuation exactly 1; g needs v-valuation exactly 1.
    Series substituted(const Series& f, const Series& g) const;

    /// Throws PrecisionError unless the coefficient at (i, j) is certified.
    void require_certified(int i, int j, const char* what) const {
        if (!certified(i, j))
            throw PrecisionError(std::string("laurent: coefficient (") + std::to_string(i) + "," +
                                 std::to_string(j) + ") not certified in " + what);
    }

    std::string str(const std::string& uname = "u", const std::string& vname = "v") const;

    // --- slice access used by residues ---
    struct UniSlice {
        int i0;
        std::vector<V> coeffs;  // c[t] is the coefficient of u^(i0 + t)
        SliceMark mark;
    };
    UniSlice slice(int j) const;

private:
    R ring_;
    Window win_;
    int i0_ = 0, i1_ = -1, j0_ = 0, j1_ = -1;
    bool vtail_ = true;
    std::vector<V> c_;
    std::vector<SliceMark> marks_;

    size_t idx(int i, int j) const {
        return static_cast<size_t>(j - j0_) * (i1_ - i0_ + 1) + (i - i0_);
    }
    V& at(int i, int j) { return c_[idx(i, j)]; }

    void reset(int i0, int i1, int j0, int j1) {
        i0_ = i0;
        i1_ = i1;
        j0_ = j0;
        j1_ = j1;
        vtail_ = true;
        const size_t cells =
            (i1 >= i0 && j1 >= j0) ? static_cast<size_t>(i1 - i0 + 1) * (j1 - j0 + 1) : 0;
        c_.assign(cells, V{});
        marks_.assign(j1 >= j0 ? j1 - j0 + 1 : 0, SliceMark::complete());
    }

    /// Drops uncertified stored cells to a canonical zero and shrinks fully
    /// trivial edges; keeps results deterministic.
    void normalize();

    /// Raises grid floors to the certified support (claims only weaken).
    void tighten();

    Series combine(const Series& o, bool subtract) const;

    int slice_min_support(int j) const {  // smallest certified nonzero exponent; INT_MAX if none
        if (j < j0_ || j > j1_) return std::numeric_limits<int>::max();
        const SliceMark m = mark(j);
        if (m.state == SliceState::Polluted) return std::numeric_limits<int>::max();
        const int hi = m.state == SliceState::Exact ? std::min(m.xlim, i1_) : i1_;
        for (int i = i0_; i <= hi; ++i)
            if (!ring_.is_zero(coeff(i, j))) return i;
        return std::numeric_limits<int>::max();
    }
    int slice_max_support(int j) const {  // largest stored nonzero exponent; INT_MIN if none
        if (j < j0_ || j > j1_) return std::numeric_limits<int>::min();
        for (int i = i1_; i >= i0_; --i)
            if (!ring_.is_zero(coeff(i, j))) return i;
        return std::numeric_limits<int>::min();
    }
};

/// 2-form h du^dv with an explicit variable-name pair recording the
/// expansion orientation.
template <class R>
struct Form2 {
    Series<R> h;
    std::string first = "u";
    std::string second = "v";

    /// Same form expressed in the opposite variable order: the wedge
    /// product anticommutes, so the coefficient series transposes and
    /// changes sign.
    Form2 flipped() const { return Form2{h.transposed_negated(), second, first}; }
};

/// Substitution data for re-expanding a form in new coordinates
/// (u = f(x, y), v = g(x, y)).
template <class R>
struct ChangeOfVars {
    Series<R> f;
    Series<R> g;

    /// Validates the valuation shape: f(x,0) has x-valuation exactly 1 and
    /// g has y-valuation exactly 1 (its y^1 slice nonzero).  Both series
    /// must be fully certified.
    void validate() const;
};

/// Coefficient slice of dv/v: the 1-form h_{-1}(u) du.
template <class R>
typename Series<R>::UniSlice one_residue(const Form2<R>& w);

/// The coefficient h_{-1,-1}.
template <class R>
typename R::value_type two_residue(const Form2<R>& w);

/// Substitution with the Jacobian factor:
/// h(f, g) (df/dx dg/dy - df/dy dg/dx) dx^dy.
template <class R>
Form2<R> apply_change_of_vars(const Form2<R>& w, const ChangeOfVars<R>& cv,
                              const std::string& xname = "x", const std::string& yname = "y");

/// res2(dA ^ dB); identically zero whenever certified.
template <class R>
typename R::value_type two_residue_of_exact_form(const Series<R>& a, const Series<R>& b);

/// Parses "+"-separated terms like "3*u^-1*v^2"; coefficients go through
/// the ring's parse (parenthesize extension-field literals).
template <class R>
Series<R> parse_series(R ring, const std::string& text, Window w = Window{},
                       const std::string& uname = "u", const std::string& vname = "v");

// ---------------------------------------------------------------------------
// implementation
// ---------------------------------------------------------------------------

template <class R>
void Series<R>::normalize() {
    for (int j = j0_; j <= j1_; ++j) {
        SliceMark& m = marks_[j - j0_];
        if (m.state == SliceState::Exact) {
            if (m.xlim >= i1_) {
                m.xlim = i1_;
            }
            for (int i = std::max(i0_, m.xlim + 1); i <= i1_; ++i) at(i, j) = V{};
            if (m.xlim < i0_) {
                // Nothing representable is certified beyond "zero below i0".
                for (int i = i0_; i <= i1_; ++i) at(i, j) = V{};
            }
        } else if (m.state == SliceState::Polluted) {
            for (int i = i0_; i <= i1_; ++i) at(i, j) = V{};
        }
    }
    tighten();
}

template <class R>
void Series<R>::tighten() {
    if (j1_ < j0_) return;
    // Drop leading and trailing certified-zero slices.
    int j0 = j0_, j1 = j1_;
    while (j0 <= j1) {
        const SliceMark m = marks_[j0 - j0_];
        if (m.state != SliceState::Complete || slice_max_support(j0) != std::numeric_limits<int>::min())
            break;
        ++j0;
    }
    if (vtail_) {
        while (j1 >= j0) {
            const SliceMark m = marks_[j1 - j0_];
            if (m.state != SliceState::Complete ||
                slice_max_support(j1) != std::numeric_limits<int>::min())
                break;
            --j1;
        }
    }
    if (j1 < j0) {
        if (vtail_) {
            reset(0, -1, 0, -1);
        } else {
            const int bound = j1_ + 1;  // pollution can only start above the old grid
            const int floor = i0_;      // unknown content still respects the x floor
            reset(floor, floor - 1, bound, bound - 1);
            vtail_ = false;
        }
        return;
    }
    // Raise i0 to the certified valuation floor.
    int i0 = std::numeric_limits<int>::max();
    bool constrained = false;
    for (int j = j0; j <= j1; ++j) {
        const SliceMark m = marks_[j - j0_];
        if (m.state == SliceState::Polluted) {
            i0 = std::min(i0, i0_);  // polluted content still respects the hard floor
            constrained = true;
            continue;
        }
        const int lo = slice_min_support(j);
        if (lo != std::numeric_limits<int>::max()) {
            i0 = std::min(i0, lo);
            constrained = true;
        } else if (m.state == SliceState::Exact) {
            i0 = std::min(i0, m.xlim + 1);
            constrained = true;
        }
    }
    if (!constrained) i0 = i0_;
    i0 = std::max(i0, i0_);
    i0 = std::min(i0, i1_ + 1);
    if (j0 == j0_ && j1 == j1_ && i0 == i0_) return;
    Series tightened(ring_, win_);
    tightened.reset(i0, std::max(i1_, i0 - 1), j0, j1);
    tightened.vtail_ = vtail_;
    for (int j = j0; j <= j1; ++j) {
        tightened.marks_[j - j0] = marks_[j - j0_];
        if (tightened.marks_[j - j0].state == SliceState::Exact)
            tightened.marks_[j - j0].xlim = std::min(tightened.marks_[j - j0].xlim, i1_);
        for (int i = i0; i <= i1_; ++i) tightened.at(i, j) = coeff(i, j);
    }
    *this = std::move(tightened);
}

template <class R>
Series<R> Series<R>::combine(const Series& o, bool subtract) const {
    if (!ring_.same(o.ring_)) throw std::invalid_argument("laurent: mixed coefficient rings");
    const Window w{std::max(win_.ulo, o.win_.ulo), std::min(win_.uhi, o.win_.uhi),
                   std::max(win_.vlo, o.win_.vlo), std::min(win_.vhi, o.win_.vhi)};
    Series r(ring_, w);
    const bool a_empty = j1_ < j0_, b_empty = o.j1_ < o.j0_;
    if (a_empty && vtail_) {
        r = subtract ? -o : o;
        r.win_ = w;
        return r;
    }
    if (b_empty && o.vtail_) {
        r = *this;
        r.win_ = w;
        return r;
    }

    const int j0 = std::min(j0_, o.j0_);
    int j1 = std::max(j1_, o.j1_);
    if (!vtail_) j1 = std::min(j1, j1_);
    if (!o.vtail_) j1 = std::min(j1, o.j1_);
    j1 = std::min(j1, w.vhi);
    const int i0 = std::min(i0_, o.i0_);
    const int i1 = std::min(std::max(i1_, o.i1_), w.uhi);

    r.reset(i0, std::max(i1, i0 - 1), j0, std::max(j1, j0 - 1));
    r.vtail_ = vtail_ && o.vtail_ && std::max(j1_, o.j1_) <= j1;
    for (int j = j0; j <= j1; ++j) {
        const SliceMark ma = mark(j), mb = o.mark(j);
        SliceMark& mr = r.marks_[j - j0];
        if (ma.state == SliceState::Polluted || mb.state == SliceState::Polluted) {
            mr = SliceMark::polluted();
            continue;
        }
        int lim = std::numeric_limits<int>::max();
        if (ma.state == SliceState::Exact) lim = std::min(lim, ma.xlim);
        if (mb.state == SliceState::Exact) lim = std::min(lim, mb.xlim);
        if (lim == std::numeric_limits<int>::max()) {
            // Both complete; the sum is complete if its support fits.
            const int hi = std::max(slice_max_support(j), o.slice_max_support(j));
            mr = hi > i1 ? SliceMark::exact(i1) : SliceMark::complete();
        } else {
            mr = SliceMark::exact(std::min(lim, i1));
        }
        const int hi = mr.state == SliceState::Complete ? i1 : mr.xlim;
        for (int i = i0; i <= hi; ++i) {
            V v = ring_.add(coeff(i, j), subtract ? ring_.neg(o.coeff(i, j)) : o.coeff(i, j));
            r.at(i, j) = v;
        }
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> Series<R>::operator-() const {
    Series r = *this;
    for (auto& v : r.c_) v = ring_.neg(v);
    return r;
}

template <class R>
Series<R> Series<R>::scaled(const V& c) const {
    if (ring_.is_zero(c)) return Series::zero(ring_, win_);
    Series r = *this;
    for (auto& v : r.c_) v = ring_.mul(v, c);
    return r;
}

template <class R>
Series<R> Series<R>::shifted(const V& c, int di, int dj) const {
    if (ring_.is_zero(c)) return Series::zero(ring_, win_);
    Series r(ring_, win_);
    if (j1_ < j0_ && vtail_) return r;
    const int i0 = i0_ + di, i1 = std::min(i1_ + di, win_.uhi);
    const int j0 = j0_ + dj, j1 = std::min(j1_ + dj, win_.vhi);
    if (j1 < j0) {  // everything above the window in v
        r.reset(i0, i0 - 1, j0, j0 - 1);
        r.vtail_ = vtail_ && (j1_ + dj <= win_.vhi);
        return r;
    }
    if (i1 < i0) {  // everything to the right of the window in u
        r.reset(i0, i0 - 1, j0, j1);
        r.vtail_ = vtail_ && (j1_ + dj <= win_.vhi);
        for (auto& m : r.marks_) m = SliceMark::exact(i0 - 1);
        return r;
    }
    r.reset(i0, i1, j0, j1);
    r.vtail_ = vtail_ && (j1_ + dj <= win_.vhi);
    for (int j = j0; j <= j1; ++j) {
        const SliceMark m = mark(j - dj);
        SliceMark& mr = r.marks_[j - j0];
        if (m.state == SliceState::Polluted) {
            mr = SliceMark::polluted();
            continue;
        }
        if (m.state == SliceState::Exact) {
            mr = SliceMark::exact(std::min(m.xlim + di, i1));
        } else {
            const int top = slice_max_support(j - dj);
            mr = (top != std::numeric_limits<int>::min() && top + di > i1)
                     ? SliceMark::exact(i1)
                     : SliceMark::complete();
        }
        const int hi = mr.state == SliceState::Complete ? i1 : mr.xlim;
        for (int i = i0; i <= hi; ++i) r.at(i, j) = ring_.mul(coeff(i - di, j - dj), c);
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> Series<R>::operator*(const Series& o) const {
    if (!ring_.same(o.ring_)) throw std::invalid_argument("laurent: mixed coefficient rings");
    const Window w{std::max(win_.ulo, o.win_.ulo), std::min(win_.uhi, o.win_.uhi),
                   std::max(win_.vlo, o.win_.vlo), std::min(win_.vhi, o.win_.vhi)};
    Series r(ring_, w);
    // A certified-zero factor gives a certified-zero product.
    if ((j1_ < j0_ && vtail_) || (o.j1_ < o.j0_ && o.vtail_)) return r;

    const int j0_nat = j0_ + o.j0_;
    int j1_known = std::numeric_limits<int>::max();
    if (!vtail_) j1_known = std::min(j1_known, j1_ + o.j0_);
    if (!o.vtail_) j1_known = std::min(j1_known, o.j1_ + j0_);
    const int j1_true = j1_ + o.j1_;
    int j1 = std::min({j1_known == std::numeric_limits<int>::max() ? j1_true : j1_known, w.vhi});
    const bool jtail = vtail_ && o.vtail_ && j1_true <= j1;
    const int j0 = j0_nat;
    if (j1 < j0) {
        // Everything representable is above the window or past a polluted
        // tail: certified zero below j0, unknown above.
        r.reset(i0_ + o.i0_, i0_ + o.i0_ - 1, j0, j0 - 1);
        r.vtail_ = jtail;
        return r;
    }
    const int i0 = i0_ + o.i0_;
    const int i1 = std::min(i1_ + o.i1_, w.uhi);
    if (i1 < i0) {
        // All content sits to the right of the window: each slice is
        // certified zero up to i0 - 1 and unknown beyond.
        r.reset(i0, i0 - 1, j0, j1);
        r.vtail_ = jtail;
        for (auto& m : r.marks_) m = SliceMark::exact(i0 - 1);
        return r;
    }
    r.reset(i0, i1, j0, j1);
    r.vtail_ = jtail;

    for (int j = j0; j <= j1; ++j) {
        SliceMark& mr = r.marks_[j - j0];
        // Pairs (ja, jb) with ja + jb == j.
        const int ja_lo = std::max(j0_, j - o.j1_);
        const int ja_hi = std::min(j1_, j - o.j0_);
        // Contributions from unknown tails?
        bool polluted = false;
        if (!vtail_ && j - j1_ - 1 >= o.j0_) polluted = true;
        if (!o.vtail_ && j - o.j1_ - 1 >= j0_) polluted = true;
        int lim = std::numeric_limits<int>::max();
        bool complete = true;
        int support_hi = std::numeric_limits<int>::min();
        for (int ja = ja_lo; ja <= ja_hi && !polluted; ++ja) {
            const int jb = j - ja;
            const SliceMark maj = mark(ja), mbj = o.mark(jb);
            if (maj.state == SliceState::Polluted || mbj.state == SliceState::Polluted) {
                polluted = true;
                break;
            }
            const int va = slice_min_support(ja);
            const int vb = o.slice_min_support(jb);
            if (maj.state == SliceState::Exact) {
                complete = false;
                if (vb != std::numeric_limits<int>::max())
                    lim = std::min(lim, maj.xlim + vb);
                else if (mbj.state == SliceState::Exact)
                    lim = std::min(lim, maj.xlim + mbj.xlim + 1);
                // complete zero slice on the other side: contributes nothing
            }
            if (mbj.state == SliceState::Exact) {
                complete = false;
                if (va != std::numeric_limits<int>::max())
                    lim = std::min(lim, mbj.xlim + va);
                else if (maj.state == SliceState::Exact)
                    lim = std::min(lim, mbj.xlim + maj.xlim + 1);
            }
            const int sa = slice_max_support(ja), sb = o.slice_max_support(jb);
            if (sa != std::numeric_limits<int>::min() && sb != std::numeric_limits<int>::min())
                support_hi = std::max(support_hi, sa + sb);
        }
        if (polluted) {
            mr = SliceMark::polluted();
            continue;
        }
        if (complete) {
            mr = support_hi > i1 ? SliceMark::exact(i1) : SliceMark::complete();
        } else {
            mr = SliceMark::exact(std::min(lim, i1));
        }
        const int hi = mr.state == SliceState::Complete ? i1 : mr.xlim;
        for (int ja = ja_lo; ja <= ja_hi; ++ja) {
            const int jb = j - ja;
            const SliceMark maj = mark(ja), mbj = o.mark(jb);
            const int a_hi = maj.state == SliceState::Exact ? std::min(maj.xlim, i1_) : i1_;
            for (int ia = i0_; ia <= a_hi; ++ia) {
                const V& ca = coeff(ia, ja);
                if (ring_.is_zero(ca)) continue;
                const int b_hi = mbj.state == SliceState::Exact ? std::min(mbj.xlim, o.i1_) : o.i1_;
                for (int ib = std::max(o.i0_, i0 - ia); ib <= b_hi && ia + ib <= hi; ++ib) {
                    const V& cb = o.coeff(ib, jb);
                    if (ring_.is_zero(cb)) continue;
                    V& target = r.at(ia + ib, j);
                    target = ring_.add(target, ring_.mul(ca, cb));
                }
            }
        }
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> Series<R>::inverse() const {
    // Leading-monomial extraction: scan slices upward for the first
    // certified nonzero slice.
    int m = 0, l = 0;
    bool found = false;
    for (int j = j0_; j <= j1_ && !found; ++j) {
        const SliceMark mk = mark(j);
        if (mk.state == SliceState::Polluted)
            throw PrecisionError("laurent: inverse hit a polluted slice before the valuation");
        const int lo = slice_min_support(j);
        if (lo != std::numeric_limits<int>::max()) {
            m = j;
            l = lo;
            found = true;
            break;
        }
        if (mk.state == SliceState::Exact)
            throw PrecisionError("laurent: v-valuation not certifiable inside the window");
    }
    if (!found) {
        if (vtail_) throw std::domain_error("laurent: inverse of zero");
        throw PrecisionError("laurent: v-valuation not certifiable inside the window");
    }
    const V lead = coeff(l, m);
    // b := a / (lead * u^l v^m) = 1 + s with s certified at least where a is.
    const Series b = shifted(ring_.inv(lead), -l, -m);
    Series s = b - Series::constant(ring_, ring_.one(), win_);

    // Split s into its v^0 slice (u-valuation >= 1) and the rest
    // (v-valuation >= 1); invert 1 + s0 by a univariate geometric series,
    // then fold in the cross terms by a second geometric series in v.
    Series s0(ring_, win_);
    if (s.j0() <= 0 && 0 <= s.j1()) {
        const auto sl = s.slice(0);
        if (sl.mark.state != SliceState::Polluted) {
            s0.reset(std::min(sl.i0, 0), std::max(sl.i0 + static_cast<int>(sl.coeffs.size()) - 1, 0),
                     0, 0);
            s0.marks_[0] = sl.mark;
            for (size_t t = 0; t < sl.coeffs.size(); ++t) s0.at(sl.i0 + static_cast<int>(t), 0) = sl.coeffs[t];
            s0.normalize();
        } else {
            throw PrecisionError("laurent: inverse needs a certified leading slice");
        }
    }
    Series inv0 = Series::constant(ring_, ring_.one(), win_);
    {
        Series acc = Series::constant(ring_, ring_.one(), win_);
        Series power = Series::constant(ring_, ring_.one(), win_);
        const Series neg_s0 = -s0;
        for (int k = 1; k <= win_.uhi - win_.ulo + 1; ++k) {
            power = power * neg_s0;
            if (power.slice_max_support(0) == std::numeric_limits<int>::min() &&
                power.mark(0).state == SliceState::Complete)
                break;  // powers vanished: s0 was nilpotent within the window
            acc = acc + power;
        }
        inv0 = acc;
    }
    Series splus = s - s0;
    Series t = splus * inv0;
    Series acc = Series::constant(ring_, ring_.one(), win_);
    Series power = Series::constant(ring_, ring_.one(), win_);
    const Series neg_t = -t;
    for (int k = 1; k <= win_.vhi - win_.vlo + 1; ++k) {
        power = power * neg_t;
        if (power.c_.empty() && power.vtail_) break;
        acc = acc + power;
        if (power.j0() > win_.vhi) break;
    }
    Series result = (inv0 * acc).shifted(ring_.inv(lead), -l, -m);
    return result;
}

template <class R>
Series<R> Series<R>::derivative_u() const {
    Series r(ring_, win_);
    if (j1_ < j0_ && vtail_) return r;
    const int i0 = i0_ - 1, i1 = std::min(i1_ - 1, win_.uhi);
    if (i1 < i0 || j1_ < j0_) {
        // Nothing representable; keep the certification boundaries.
        r.reset(i0, i0 - 1, j0_, std::max(j1_, j0_ - 1));
        r.vtail_ = vtail_;
        for (int j = j0_; j <= j1_; ++j)
            r.marks_[j - j0_] = mark(j).state == SliceState::Polluted ? SliceMark::polluted()
                                                                      : SliceMark::exact(i0 - 1);
        return r;
    }
    r.reset(i0, i1, j0_, j1_);
    r.vtail_ = vtail_;
    for (int j = j0_; j <= j1_; ++j) {
        const SliceMark m = mark(j);
        SliceMark& mr = r.marks_[j - j0_];
        if (m.state == SliceState::Exact) {
            mr = SliceMark::exact(std::min(m.xlim - 1, i1));
        } else if (m.state == SliceState::Complete) {
            const int top = slice_max_support(j);
            mr = (top != std::numeric_limits<int>::min() && top - 1 > i1) ? SliceMark::exact(i1)
                                                                          : SliceMark::complete();
        } else {
            mr = m;
        }
        const int hi = mr.state == SliceState::Complete
                           ? i1
                           : (mr.state == SliceState::Exact ? mr.xlim : i0 - 1);
        for (int i = i0; i <= hi; ++i)
            r.at(i, j) = ring_.mul(coeff(i + 1, j), ring_.from_int(i + 1));
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> Series<R>::derivative_v() const {
    Series r(ring_, win_);
    if (j1_ < j0_ && vtail_) return r;
    const int j0 = j0_ - 1, j1 = std::min(j1_ - 1, win_.vhi);
    if (j1 < j0 || j1_ < j0_) {
        r.reset(i0_, i0_ - 1, j0, j0 - 1);
        r.vtail_ = vtail_ && j1_ - 1 <= win_.vhi;
        return r;
    }
    r.reset(i0_, i1_, j0, j1);
    r.vtail_ = vtail_ && j1_ - 1 <= win_.vhi;
    for (int j = j0; j <= j1; ++j) {
        const SliceMark m = mark(j + 1);
        r.marks_[j - j0] = m;
        const int hi = m.state == SliceState::Complete
                           ? i1_
                           : (m.state == SliceState::Exact ? std::min(m.xlim, i1_) : i0_ - 1);
        for (int i = i0_; i <= hi; ++i)
            r.at(i, j) = ring_.mul(coeff(i, j + 1), ring_.from_int(j + 1));
    }
    r.normalize();
    return r;
}

template <class R>
Series<R> Series<R>::transposed_negated() const {
    Series r(ring_, Window{win_.vlo, win_.vhi, win_.ulo, win_.uhi});
    if (j1_ < j0_) {
        if (vtail_) return r;
        throw PrecisionError("laurent: cannot transpose a fully uncertified series");
    }
    r.reset(j0_, j1_, i0_, i1_);
    bool all_complete_slices = vtail_;
    for (int j = j0_; j <= j1_ && all_complete_slices; ++j)
        if (mark(j).state != SliceState::Complete) all_complete_slices = false;
    r.vtail_ = all_complete_slices;
    // New slice j' = old column i'.  The new slice is certified at position
    // j (old slice j) iff the old (i', j) cell is certified; find the
    // largest prefix of old slices certifying this column.
    for (int ip = i0_; ip <= i1_; ++ip) {
        SliceMark& mr = r.marks_[ip - i0_];
        int lim = std::numeric_limits<int>::max();
        bool complete = vtail_;
        for (int j = j0_; j <= j1_; ++j) {
            const SliceMark m = mark(j);
            if (m.state == SliceState::Complete) continue;
            if (m.state == SliceState::Exact && m.xlim >= ip) {
                complete = false;  // beyond xlim unknown, but this column is fine
                continue;
            }
            lim = std::min(lim, j - 1);
            complete = false;
            break;
        }
        if (complete && lim == std::numeric_limits<int>::max()) {
            mr = SliceMark::complete();
        } else if (lim == std::numeric_limits<int>::max()) {
            mr = SliceMark::exact(j1_);
        } else if (lim < j0_) {
            mr = SliceMark::polluted();
        } else {
            mr = SliceMark::exact(std::min(lim, j1_));
        }
        const int hi = mr.state == SliceState::Complete
                           ? j1_
                           : (mr.state == SliceState::Exact ? mr.xlim : j0_ - 1);
        for (int j = j0_; j <= hi; ++j) r.at(j, ip) = ring_.neg(coeff(ip, j));
    }
    r.normalize();
    return r;
}

template <class R>
typename Series<R>::UniSlice Series<R>::slice(int j) const {
    UniSlice s;
    s.mark = mark(j);
    if (j < j0_ || j > j1_ || s.mark.state == SliceState::Polluted) {
        s.i0 = 0;
        return s;
    }
    const int hi = s.mark.state == SliceState::Exact ? std::min(s.mark.xlim, i1_) : i1_;
    s.i0 = i0_;
    for (int i = i0_; i <= hi; ++i) s.coeffs.push_back(coeff(i, j));
    return s;
}

template <class R>
bool Series<R>::agrees_with(const Series& o) const {
    bool compared = false;
    const int j0 = std::min(j0_, o.j0_), j1 = std::max(j1_, o.j1_);
    const int i0 = std::min(i0_, o.i0_), i1 = std::max(i1_, o.i1_);
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
            if (!certified(i, j) || !o.certified(i, j)) continue;
            compared = true;
            if (!ring_.eq(coeff(i, j), o.coeff(i, j))) return false;
        }
    if (!compared) throw PrecisionError("laurent: no jointly certified region to compare");
    return true;
}

template <class R>
void ChangeOfVars<R>::validate() const {
    if (!f.all_complete() || !g.all_complete())
        throw std::invalid_argument("laurent: substitution series must be fully certified");
    // f(x, 0) in x k[[x]] \ x^2 k[[x]].
    const auto f0 = f.slice(0);
    int fval = std::numeric_limits<int>::max();
    for (size_t t = 0; t < f0.coeffs.size(); ++t)
        if (!f.ring().is_zero(f0.coeffs[t])) {
            fval = f0.i0 + static_cast<int>(t);
            break;
        }
    if (fval != 1)
        throw std::invalid_argument("laurent: f(x, 0) must have x-valuation exactly 1");
    // g has v-valuation exactly 1: zero v^0 slice, nonzero v^1 slice.
    if (g.j0() <= 0) {
        const auto g0 = g.slice(0);
        for (const auto& c : g0.coeffs)
            if (!g.ring().is_zero(c))
                throw std::invalid_argument("laurent: g must vanish on the y^0 slice");
    }
    bool g1_nonzero = false;
    const auto g1 = g.slice(1);
    for (const auto& c : g1.coeffs)
        if (!g.ring().is_zero(c)) g1_nonzero = true;
    if (!g1_nonzero) throw std::invalid_argument("laurent: g must have y-valuation exactly 1");
}

namespace detail {

/// Weighted-valuation parameters certifying substitution tails; see
/// apply_change_of_vars.  Weight of x is 1 and of y is rho; the image of
/// u^i v^j has weighted valuation at least i + gamma * j.
template <class R>
struct SubstWeights {
    long rho = 1;
    long gamma = 1;
};

template <class R>
SubstWeights<R> subst_weights(const Series<R>& f, const Series<R>& g) {
    // rho must satisfy: every term (i, j), j >= 1 of f has i + rho*j >= 2,
    // and every term (i, j), j >= 2 of g has i + rho*j >= c1 + rho + 1,
    // where c1 is the x-valuation of g's y^1 slice.  (f's y^0 slice is
    // x + higher by validate(); g's y^1 slice attains c1.)
    long rho = 1;
    const auto& rf = f.ring();
    for (int j = std::max(1, f.j0()); j <= f.j1(); ++j) {
        const auto sl = f.slice(j);
        for (size_t t = 0; t < sl.coeffs.size(); ++t) {
            if (rf.is_zero(sl.coeffs[t])) continue;
            const long i = sl.i0 + static_cast<long>(t);
            // need i + rho*j >= 2
            if (i + rho * j < 2) rho = (2 - i + j - 1) / j;
        }
    }
    long c1 = std::numeric_limits<long>::max();
    {
        const auto sl = g.slice(1);
        for (size_t t = 0; t < sl.coeffs.size(); ++t)
            if (!g.ring().is_zero(sl.coeffs[t])) {
                c1 = sl.i0 + static_cast<long>(t);
                break;
            }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = std::max(2, g.j0()); j <= g.j1(); ++j) {
            const auto sl = g.slice(j);
            for (size_t t = 0; t < sl.coeffs.size(); ++t) {
                if (g.ring().is_zero(sl.coeffs[t])) continue;
                const long i = sl.i0 + static_cast<long>(t);
                while (i + rho * j < c1 + rho + 1) {
                    ++rho;
                    changed = true;
                }
            }
        }
        // Raising rho cannot break the f constraints (j >= 1 terms only
        // gain weight when i >= ... but i may be negative): re-check f.
        for (int j = std::max(1, f.j0()); j <= f.j1() && !changed; ++j) {
            const auto sl = f.slice(j);
            for (size_t t = 0; t < sl.coeffs.size(); ++t) {
                if (rf.is_zero(sl.coeffs[t])) continue;
                const long i = sl.i0 + static_cast<long>(t);
                if (i + rho * j < 2) {
                    ++rho;
                    changed = true;
                    break;
                }
            }
        }
    }
    SubstWeights<R> wts;
    wts.rho = rho;
    wts.gamma = c1 + rho;
    return wts;
}

}  // namespace detail

template <class R>
Series<R> Series<R>::substituted(const Series& f, const Series& g) const {
    const R& rg = ring_;
    const Window w = win_;
    // Precompute the needed powers of f and g (inverse powers via the
    // geometric-series inverse).
    const int fi_lo = i0_, fi_hi = i1_;
    const int gj_lo = j0_, gj_hi = j1_;
    std::vector<Series> fpow, fneg, gpow, gneg;
    fpow.push_back(Series::constant(rg, rg.one(), w));
    for (int k = 1; k <= std::max(0, fi_hi); ++k) fpow.push_back(fpow.back() * f);
    if (fi_lo < 0) {
        const Series finv = f.inverse();
        fneg.push_back(Series::constant(rg, rg.one(), w));
        for (int k = 1; k <= -fi_lo; ++k) fneg.push_back(fneg.back() * finv);
    }
    gpow.push_back(Series::constant(rg, rg.one(), w));
    for (int k = 1; k <= std::max(0, gj_hi); ++k) gpow.push_back(gpow.back() * g);
    if (gj_lo < 0) {
        const Series ginv = g.inverse();
        gneg.push_back(Series::constant(rg, rg.one(), w));
        for (int k = 1; k <= -gj_lo; ++k) gneg.push_back(gneg.back() * ginv);
    }
    auto f_power = [&](int k) -> const Series& { return k >= 0 ? fpow[k] : fneg[-k]; };
    auto g_power = [&](int k) -> const Series& { return k >= 0 ? gpow[k] : gneg[-k]; };

    Series acc = Series::zero(rg, w);
    for (int j = j0_; j <= j1_; ++j) {
        const SliceMark m = mark(j);
        const int hi = m.state == SliceState::Complete
                           ? i1_
                           : (m.state == SliceState::Exact ? std::min(m.xlim, i1_) : i0_ - 1);
        for (int i = i0_; i <= hi; ++i) {
            const V& c = coeff(i, j);
            if (rg.is_zero(c)) continue;
            acc = acc + (f_power(i) * g_power(j)).scaled(c);
        }
    }

    // Overlay the analytic tail bound: contributions of uncertified source
    // terms have weighted valuation (x:1, y:rho) at least tstar.
    const auto wt = detail::subst_weights(f, g);
    long tstar = std::numeric_limits<long>::max();
    for (int j = j0_; j <= j1_; ++j) {
        const SliceMark m = mark(j);
        if (m.state == SliceState::Complete) continue;
        const long from = m.state == SliceState::Exact ? m.xlim + 1 : i0_;
        tstar = std::min(tstar, from + wt.gamma * j);
    }
    if (!vtail_) tstar = std::min(tstar, i0_ + wt.gamma * (j1_ + 1));
    if (tstar != std::numeric_limits<long>::max()) {
        Series capped = acc;
        for (int j = capped.j0_; j <= capped.j1_; ++j) {
            SliceMark& mr = capped.marks_[j - capped.j0_];
            const long xl = tstar - wt.rho * j - 1;
            if (mr.state == SliceState::Polluted) continue;
            const int cur = mr.state == SliceState::Complete ? capped.i1_ : mr.xlim;
            const int nl = static_cast<int>(std::min<long>(cur, xl));
            mr = SliceMark::exact(nl);
        }
        // Tail also contaminates slices above the stored top.
        capped.vtail_ = false;
        capped.normalize();
        return capped;
    }
    return acc;
}

template <class R>
typename Series<R>::UniSlice one_residue(const Form2<R>& w) {
    const auto s = w.h.slice(-1);
    if (s.mark.state == SliceState::Polluted)
        throw PrecisionError("laurent: the dv/v slice is not certified");
    return s;
}

template <class R>
typename R::value_type two_residue(const Form2<R>& w) {
    w.h.require_certified(-1, -1, "two_residue");
    return w.h.coeff(-1, -1);
}

template <class R>
Form2<R> apply_change_of_vars(const Form2<R>& w, const ChangeOfVars<R>& cv,
                              const std::string& xname, const std::string& yname) {
    cv.validate();
    const Series<R> jac = cv.f.derivative_u() * cv.g.derivative_v() -
                          cv.f.derivative_v() * cv.g.derivative_u();
    Series<R> h = w.h.substituted(cv.f, cv.g) * jac;
    return Form2<R>{std::move(h), xname, yname};
}

template <class R>
typename R::value_type two_residue_of_exact_form(const Series<R>& a, const Series<R>& b) {
    const Series<R> h = a.derivative_u() * b.derivative_v() - a.derivative_v() * b.derivative_u();
    Form2<R> w{h, "u", "v"};
    return two_residue(w);
}

template <class R>
std::string Series<R>::str(const std::string& uname, const std::string& vname) const {
    std::string out;
    for (int j = j0_; j <= j1_; ++j) {
        const SliceMark m = mark(j);
        const int hi = m.state == SliceState::Complete
                           ? i1_
                           : (m.state == SliceState::Exact ? std::min(m.xlim, i1_) : i0_ - 1);
        for (int i = i0_; i <= hi; ++i) {
            if (ring_.is_zero(coeff(i, j))) continue;
            if (!out.empty()) out += " + ";
            out += ring_.str(coeff(i, j));
            if (i) out += "*" + uname + "^" + std::to_string(i);
            if (j) out += "*" + vname + "^" + std::to_string(j);
        }
    }
    return out.empty() ? "0" : out;
}

template <class R>
Series<R> parse_series(R ring, const std::string& text, Window w, const std::string& uname,
                       const std::string& vname) {
    Series<R> acc = Series<R>::zero(ring, w);
    size_t pos = 0;
    auto skip = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    bool negate = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negate = text[pos] == '-';
        ++pos;
    }
    while (pos < text.size()) {
        typename R::value_type coef = ring.one();
        int iu = 0, iv = 0;
        bool any = false;
        while (true) {
            skip();
            if (pos >= text.size()) break;
            const char c = text[pos];
            if (c == '+' || c == '-') break;
            any = true;
            if (c == '(') {
                const size_t close = text.find(')', pos);
                if (close == std::string::npos)
                    throw std::invalid_argument("laurent: unbalanced parenthesis");
                coef = ring.mul(coef, ring.parse(text.substr(pos + 1, close - pos - 1)));
                pos = close + 1;
            } else if (text.compare(pos, uname.size(), uname) == 0) {
                pos += uname.size();
                int e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    size_t consumed;
                    e = std::stoi(text.substr(pos), &consumed);
                    pos += consumed;
                }
                iu += e;
            } else if (text.compare(pos, vname.size(), vname) == 0) {
                pos += vname.size();
                int e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    size_t consumed;
                    e = std::stoi(text.substr(pos), &consumed);
                    pos += consumed;
                }
                iv += e;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '/') {
                size_t end = pos;
                while (end < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '/'))
                    ++end;
                coef = ring.mul(coef, ring.parse(text.substr(pos, end - pos)));
                pos = end;
            } else {
                throw std::invalid_argument(std::string("laurent: unexpected character '") + c +
                                            "' in series literal");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
        }
        if (!any) throw std::invalid_argument("laurent: empty term in series literal");
        if (negate) coef = ring.neg(coef);
        acc = acc + Series<R>::monomial(ring, coef, iu, iv, w);
        skip();
        if (pos >= text.size()) break;
        if (text[pos] == '+')
            negate = false;
        else if (text[pos] == '-')
            negate = true;
        else
            throw std::invalid_argument("laurent: expected '+' or '-' between terms");
        ++pos;
    }
    return acc;
}

}  // namespace surfcode::laurent

#endif
