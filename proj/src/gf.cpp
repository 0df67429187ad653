#include "surfcode/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace surfcode::gf {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense polynomials over F_p, low degree first.  Only used to build tables.
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int da = static_cast<int>(a.size()) - 1;
        const int c = a.back();  // m is monic
        for (int i = 0; i <= dm; ++i) {
            int& t = a[da - dm + i];
            t = ((t - c * m[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

Poly index_to_poly(int idx, int p) {
    Poly a;
    while (idx) {
        a.push_back(idx % p);
        idx /= p;
    }
    return a;
}

int poly_to_index(const Poly& a, int p) {
    int idx = 0;
    for (size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return idx;
}

bool divides(const Poly& d, const Poly& a, int p) { return poly_mod(a, d, p).empty(); }

bool is_irreducible(const Poly& m, int p) {
    const int e = static_cast<int>(m.size()) - 1;
    // Trial division by every monic polynomial of degree 1 .. e/2.
    for (int dd = 1; 2 * dd <= e; ++dd) {
        int count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (int idx = 0; idx < count; ++idx) {
            Poly d = index_to_poly(idx, p);
            d.resize(dd + 1, 0);
            d[dd] = 1;
            if (divides(d, m, p)) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(int p, int e) {
    if (e == 1) return {0, 1};
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
        Poly m = index_to_poly(idx, p);
        m.resize(e + 1, 0);
        m[e] = 1;
        if (is_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

Field::Field(int p, int e) : p_(p), e_(e) {
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;
    mod_ = smallest_irreducible(p, e);

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        Poly pa = index_to_poly(a, p);
        // Negation is digit-wise.
        Poly na = pa;
        for (int& c : na) c = (p - c) % p;
        neg_[a] = static_cast<uint8_t>(poly_to_index(na, p));
        for (int b = 0; b < q_; ++b) {
            Poly pb = index_to_poly(b, p);
            Poly s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int x = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
                s[i] = x % p;
            }
            add_[a * q_ + b] = static_cast<uint8_t>(poly_to_index(s, p));
            Poly m = poly_mod(poly_mul(pa, pb, p), mod_, p);
            const uint8_t mi = static_cast<uint8_t>(poly_to_index(m, p));
            mul_[a * q_ + b] = mi;
            if (mi == 1) inv_[a] = static_cast<uint8_t>(b);
        }
    }
}

const Field& Field::get(int p, int e) {
    if (!is_prime(p)) throw std::invalid_argument("gf: characteristic must be prime");
    if (e < 1) throw std::invalid_argument("gf: extension degree must be >= 1");
    long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > 64) throw std::invalid_argument("gf: field size above 64 is unsupported");
    }
    static std::mutex mtx;
    static std::map<std::pair<int, int>, Field*> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{p, e}];
    if (!slot) slot = new Field(p, e);
    return *slot;
}

uint8_t Field::inv(uint8_t a) const {
    if (a == 0) throw std::domain_error("gf: inverse of zero");
    return inv_[a];
}

uint8_t Field::pow(uint8_t a, long n) const {
    if (n < 0) return pow(inv(a), -n);
    uint8_t r = 1, base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

uint8_t Field::from_int(long v) const {
    long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<uint8_t>(r);
}

std::vector<int> Field::coeffs(uint8_t a) const {
    std::vector<int> c(e_, 0);
    int idx = a;
    for (int i = 0; i < e_; ++i) {
        c[i] = idx % p_;
        idx /= p_;
    }
    return c;
}

std::string Field::to_string(uint8_t a) const {
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    const std::vector<int> c = coeffs(a);
    std::string s;
    for (int i = e_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c[i]);
        } else {
            if (c[i] != 1) s += std::to_string(c[i]) + "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

uint8_t Field::parse(const std::string& s) const {
    // Terms separated by '+'; each term is "c", "t", "t^k", "c*t^k".
    std::vector<int> c(e_, 0);
    size_t pos = 0;
    if (s.empty()) throw std::invalid_argument("gf: empty element literal");
    while (pos < s.size()) {
        size_t next = s.find('+', pos);
        if (next == std::string::npos) next = s.size();
        std::string term = s.substr(pos, next - pos);
        pos = next + 1;
        if (term.empty()) throw std::invalid_argument("gf: bad element literal '" + s + "'");
        int coef = 1, expo = 0;
        size_t tp = term.find('t');
        if (tp == std::string::npos) {
            coef = std::stoi(term);
        } else {
            std::string cs = term.substr(0, tp);
            if (!cs.empty() && cs.back() == '*') cs.pop_back();
            if (!cs.empty()) coef = std::stoi(cs);
            expo = 1;
            if (tp + 1 < term.size()) {
                if (term[tp + 1] != '^') throw std::invalid_argument("gf: bad element literal '" + s + "'");
                expo = std::stoi(term.substr(tp + 2));
            }
        }
        if (expo >= e_) throw std::invalid_argument("gf: exponent out of range in '" + s + "'");
        c[expo] = ((c[expo] + coef) % p_ + p_) % p_;
    }
    int idx = 0;
    for (int i = e_ - 1; i >= 0; --i) idx = idx * p_ + c[i];
    return static_cast<uint8_t>(idx);
}

Element Field::operator()(int index) const {
    if (index < 0 || index >= q_) throw std::out_of_range("gf: element index out of range");
    return Element(*this, static_cast<uint8_t>(index));
}

std::vector<Element> Field::elements() const {
    std::vector<Element> v;
    v.reserve(q_);
    for (int i = 0; i < q_; ++i) v.emplace_back(*this, static_cast<uint8_t>(i));
    return v;
}

Element Element::bin(const Element& o, uint8_t (Field::*op)(uint8_t, uint8_t) const) const {
    if (f_ != o.f_) throw std::invalid_argument("gf: operands from different fields");
    return Element(*f_, (f_->*op)(i_, o.i_));
}

bool Element::operator==(const Element& o) const {
    if (f_ != o.f_) throw std::invalid_argument("gf: operands from different fields");
    return i_ == o.i_;
}

}  // namespace surfcode::gf
