#include "surfcode/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace surfcode::mpoly {

int total_degree(const Exp& e) { return e[0] + e[1] + e[2] + e[3]; }

static void collect(int nvars, int var, int left, Exp& cur, std::vector<Exp>& out) {
    if (var == nvars - 1) {
        cur[var] = static_cast<uint8_t>(left);
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[var] = static_cast<uint8_t>(e);
        collect(nvars, var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}

std::vector<Exp> monomials_of_degree(int nvars, int d) {
    std::vector<Exp> out;
    Exp cur{0, 0, 0, 0};
    collect(nvars, 0, d, cur, out);
    return out;
}

std::vector<Exp> monomials_up_to_degree(int nvars, int d) {
    std::vector<Exp> out;
    for (int t = 0; t <= d; ++t) {
        auto block = monomials_of_degree(nvars, t);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

bool grevlex_less(const Exp& a, const Exp& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // Same degree: a < b iff the last nonzero entry of a - b is positive.
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

int MPoly::degree() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, total_degree(t.e));
    return d;
}

void MPoly::add_term(const Exp& e, uint8_t c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const Exp& key) {
        return grevlex_less(key, t.e);  // stored descending
    });
    if (it != terms_.end() && it->e == e) {
        it->c = f_->add(it->c, c);
        if (it->c == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{e, c});
    }
}

namespace {

// Linear merge of two descending term lists; b is scaled by bc.
std::vector<MPoly::Term> merge_terms(const gf::Field& f, const std::vector<MPoly::Term>& a,
                                     const std::vector<MPoly::Term>& b, uint8_t bc) {
    std::vector<MPoly::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grevlex_less(b[j].e, a[i].e))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grevlex_less(a[i].e, b[j].e)) {
            out.push_back({b[j].e, f.mul(b[j].c, bc)});
            ++j;
        } else {
            const uint8_t c = f.add(a[i].c, f.mul(b[j].c, bc));
            if (c) out.push_back({a[i].e, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r(*f_, nvars_);
    r.terms_ = merge_terms(*f_, terms_, o.terms_, 1);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r(*f_, nvars_);
    r.terms_ = merge_terms(*f_, terms_, o.terms_, f_->neg(1));
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(*f_, nvars_);
    for (const Term& a : terms_) {
        std::vector<Term> shifted;
        shifted.reserve(o.terms_.size());
        for (const Term& b : o.terms_) {
            Exp e;
            for (int i = 0; i < 4; ++i) e[i] = static_cast<uint8_t>(a.e[i] + b.e[i]);
            const uint8_t c = f_->mul(a.c, b.c);
            if (c) shifted.push_back({e, c});
        }
        r.terms_ = merge_terms(*f_, r.terms_, shifted, 1);
    }
    return r;
}

MPoly MPoly::scaled(uint8_t c) const {
    MPoly r(*f_, nvars_);
    for (const Term& t : terms_) r.add_term(t.e, f_->mul(t.c, c));
    return r;
}

MPoly MPoly::times_monomial(const Exp& e, uint8_t c) const {
    // A common monomial shift preserves the grevlex order of the terms.
    MPoly r(*f_, nvars_);
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
        Exp ne;
        for (int i = 0; i < 4; ++i) ne[i] = static_cast<uint8_t>(t.e[i] + e[i]);
        r.terms_.push_back({ne, f_->mul(t.c, c)});
    }
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(*f_, nvars_);
    for (const Term& t : terms_) {
        if (t.e[var] == 0) continue;
        Exp e = t.e;
        e[var] -= 1;
        r.add_term(e, f_->mul(t.c, f_->from_int(t.e[var])));
    }
    return r;
}

MPoly MPoly::subst_one(int var) const {
    MPoly r(*f_, nvars_);
    for (const Term& t : terms_) {
        Exp e = t.e;
        e[var] = 0;
        r.add_term(e, t.c);
    }
    return r;
}

uint8_t MPoly::evaluate(const std::vector<uint8_t>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("mpoly: evaluation arity");
    uint8_t acc = 0;
    for (const Term& t : terms_) {
        uint8_t m = t.c;
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < t.e[v]; ++k) m = f_->mul(m, x[v]);
        acc = f_->add(acc, m);
    }
    return acc;
}

bool MPoly::operator==(const MPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].e == o.terms_[i].e) || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

namespace {

bool divides_exp(const Exp& d, const Exp& e) {
    for (int i = 0; i < 4; ++i)
        if (d[i] > e[i]) return false;
    return true;
}

Exp exp_sub(const Exp& a, const Exp& b) {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = static_cast<uint8_t>(a[i] - b[i]);
    return r;
}

Exp exp_lcm(const Exp& a, const Exp& b) {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

}  // namespace

MPoly reduce(const MPoly& p, const std::vector<MPoly>& basis) {
    const gf::Field& f = p.field();
    std::vector<MPoly::Term> rem;
    std::vector<MPoly::Term> cur = p.terms();
    size_t head = 0;
    while (head < cur.size()) {
        const MPoly::Term lt = cur[head];
        const MPoly* divisor = nullptr;
        for (const MPoly& g : basis) {
            if (g.is_zero()) continue;
            if (divides_exp(g.leading().e, lt.e)) {
                divisor = &g;
                break;
            }
        }
        if (!divisor) {
            rem.push_back(lt);
            ++head;
            continue;
        }
        const uint8_t c = f.neg(f.div(lt.c, divisor->leading().c));
        // cur[head..] += c * monomial-shift of divisor; the leading terms
        // cancel by construction.
        const Exp shift = exp_sub(lt.e, divisor->leading().e);
        const auto& gt = divisor->terms();
        std::vector<MPoly::Term> next;
        next.reserve(cur.size() - head + gt.size());
        size_t i = head, j = 0;
        while (i < cur.size() || j < gt.size()) {
            Exp ge{};
            if (j < gt.size())
                for (int v = 0; v < 4; ++v) ge[v] = static_cast<uint8_t>(gt[j].e[v] + shift[v]);
            if (j == gt.size() || (i < cur.size() && grevlex_less(ge, cur[i].e))) {
                next.push_back(cur[i++]);
            } else if (i == cur.size() || grevlex_less(cur[i].e, ge)) {
                next.push_back({ge, f.mul(gt[j].c, c)});
                ++j;
            } else {
                const uint8_t v = f.add(cur[i].c, f.mul(gt[j].c, c));
                if (v) next.push_back({cur[i].e, v});
                ++i;
                ++j;
            }
        }
        cur = std::move(next);
        head = 0;
    }
    MPoly out(f, p.nvars());
    out.set_terms(std::move(rem));
    return out;
}

std::vector<MPoly> groebner(std::vector<MPoly> gens) {
    std::erase_if(gens, [](const MPoly& p) { return p.is_zero(); });
    if (gens.empty()) return gens;
    const gf::Field& f = gens.front().field();

    struct Pair {
        size_t i, j;
        int lcm_degree;
    };
    std::vector<Pair> pairs;
    auto push_pair = [&](size_t i, size_t j) {
        const Exp& ei = gens[i].leading().e;
        const Exp& ej = gens[j].leading().e;
        const Exp l = exp_lcm(ei, ej);
        // Buchberger's first criterion: coprime leading monomials.
        if (total_degree(l) == total_degree(ei) + total_degree(ej)) return;
        pairs.push_back({i, j, total_degree(l)});
    };
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) push_pair(i, j);

    while (!pairs.empty()) {
        // Normal selection: smallest lcm degree first.
        size_t best = 0;
        for (size_t t = 1; t < pairs.size(); ++t)
            if (pairs[t].lcm_degree < pairs[best].lcm_degree) best = t;
        const auto [i, j, unused] = pairs[best];
        pairs[best] = pairs.back();
        pairs.pop_back();
        const Exp& ei = gens[i].leading().e;
        const Exp& ej = gens[j].leading().e;
        const Exp l = exp_lcm(ei, ej);
        MPoly s = gens[i].times_monomial(exp_sub(l, ei), f.inv(gens[i].leading().c)) -
                  gens[j].times_monomial(exp_sub(l, ej), f.inv(gens[j].leading().c));
        MPoly r = reduce(s, gens);
        if (r.is_zero()) continue;
        // A unit in the basis settles everything.
        const bool unit = total_degree(r.leading().e) == 0;
        gens.push_back(std::move(r));
        if (unit) break;
        for (size_t k = 0; k + 1 < gens.size(); ++k) push_pair(k, gens.size() - 1);
    }
    return gens;
}

bool ideal_is_trivial(const std::vector<MPoly>& gens) {
    for (const MPoly& g : gens)
        if (!g.is_zero() && total_degree(g.leading().e) == 0) return true;
    const std::vector<MPoly> gb = groebner(gens);
    for (const MPoly& g : gb)
        if (!g.is_zero() && total_degree(g.leading().e) == 0) return true;
    return false;
}

}  // namespace surfcode::mpoly
