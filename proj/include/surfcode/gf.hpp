#ifndef SURFCODE_GF_HPP
#define SURFCODE_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace surfcode::gf {

class Element;

/// Arithmetic in GF(p^e) for prime p and p^e <= 64.
///
/// Elements are indexed by iota = sum c_i * p^i where (c_0 .. c_{e-1}) are
/// the coefficients of the reduced polynomial representative; the index is a
/// bijection onto [0, q).  All arithmetic is table driven.
///
/// The modulus for each (p, e) is fixed once and for all: it is the monic
/// irreducible polynomial of degree e over F_p whose non-leading coefficient
/// index sum c_0 + c_1*p + ... is smallest.  This makes every downstream
/// enumeration bit-reproducible.  (F_4: t^2+t+1, F_8: t^3+t+1, F_9: t^2+1,
/// F_16: t^4+t+1, F_25: t^2+2, F_27: t^3+2t+1, ...)
class Field {
public:
    /// Returns the cached field instance for (p, e).  The returned reference
    /// stays valid for the lifetime of the program.  Throws
    /// std::invalid_argument if p is not prime, e < 1 or p^e > 64.
    static const Field& get(int p, int e);

    int characteristic() const { return p_; }
    int degree() const { return e_; }
    int size() const { return q_; }

    /// Modulus coefficients c_0 .. c_e (monic, c_e = 1).  For e = 1 this is
    /// the convention t - 0, i.e. {0, 1}.
    const std::vector<int>& modulus() const { return mod_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const;  // throws std::domain_error on 0
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }
    uint8_t pow(uint8_t a, long n) const;

    /// Image of an integer under Z -> F_p -> F_q.
    uint8_t from_int(long v) const;

    /// Base-p digits (c_0 .. c_{e-1}) of an element index.
    std::vector<int> coeffs(uint8_t a) const;

    /// Renders an element: decimal for prime fields, t-polynomial otherwise.
    std::string to_string(uint8_t a) const;

    /// Parses the literal syntax produced by to_string (e.g. "2", "t+1").
    uint8_t parse(const std::string& s) const;

    Element operator()(int index) const;
    std::vector<Element> elements() const;

    bool operator==(const Field& o) const { return this == &o; }

private:
    Field(int p, int e);
    int p_, e_, q_;
    std::vector<int> mod_;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

/// Immutable value type for one element of a Field.  Mixed-field operands
/// throw std::invalid_argument.
class Element {
public:
    Element() : f_(nullptr), i_(0) {}
    Element(const Field& f, uint8_t index) : f_(&f), i_(index) {}

    const Field& field() const { return *f_; }
    uint8_t index() const { return i_; }
    bool is_zero() const { return i_ == 0; }

    Element operator+(const Element& o) const { return bin(o, &Field::add); }
    Element operator-(const Element& o) const { return bin(o, &Field::sub); }
    Element operator*(const Element& o) const { return bin(o, &Field::mul); }
    Element operator-() const { return Element(*f_, f_->neg(i_)); }
    Element inverse() const { return Element(*f_, f_->inv(i_)); }
    Element pow(long n) const { return Element(*f_, f_->pow(i_, n)); }

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string str() const { return f_->to_string(i_); }

private:
    Element bin(const Element& o, uint8_t (Field::*op)(uint8_t, uint8_t) const) const;
    const Field* f_;
    uint8_t i_;
};

bool is_prime(int n);

}  // namespace surfcode::gf

#endif
