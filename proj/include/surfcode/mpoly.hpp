#ifndef SURFCODE_MPOLY_HPP
#define SURFCODE_MPOLY_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "surfcode/gf.hpp"

namespace surfcode::mpoly {

/// Exponent vector for up to 4 variables (unused slots stay 0).
using Exp = std::array<uint8_t, 4>;

int total_degree(const Exp& e);

/// All exponent vectors over `nvars` variables of total degree exactly d,
/// in lexicographically descending order (X^d first).
std::vector<Exp> monomials_of_degree(int nvars, int d);

/// Total degree <= d, graded lexicographic order (degree 0 first, then
/// each degree block in the order of monomials_of_degree).
std::vector<Exp> monomials_up_to_degree(int nvars, int d);

/// Sparse multivariate polynomial over F_q.  Terms are kept sorted by
/// graded reverse lexicographic order, leading term first.
class MPoly {
public:
    struct Term {
        Exp e;
        uint8_t c;
    };

    MPoly(const gf::Field& f, int nvars) : f_(&f), nvars_(nvars) {}

    const gf::Field& field() const { return *f_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }
    int degree() const;

    void add_term(const Exp& e, uint8_t c);

    /// Takes ownership of a term list that is already grevlex-descending
    /// with no duplicates or zero coefficients.
    void set_terms(std::vector<Term>&& terms) { terms_ = std::move(terms); }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(uint8_t c) const;
    MPoly times_monomial(const Exp& e, uint8_t c) const;

    MPoly derivative(int var) const;

    /// Substitutes the given variable by the constant 1 (chart map); the
    /// variable keeps its slot but no term uses it afterwards.
    MPoly subst_one(int var) const;

    uint8_t evaluate(const std::vector<uint8_t>& x) const;

    bool operator==(const MPoly& o) const;

private:
    const gf::Field* f_;
    int nvars_;
    std::vector<Term> terms_;
};

/// grevlex comparison: true if a < b.
bool grevlex_less(const Exp& a, const Exp& b);

/// Remainder of p under multivariate division by basis (grevlex).
MPoly reduce(const MPoly& p, const std::vector<MPoly>& basis);

/// Buchberger.  Returns a Groebner basis of the ideal generated by gens.
std::vector<MPoly> groebner(std::vector<MPoly> gens);

/// True iff the ideal generated by gens is the whole ring, i.e. the system
/// has no common zero over the algebraic closure.
bool ideal_is_trivial(const std::vector<MPoly>& gens);

}  // namespace surfcode::mpoly

#endif
