#pragma once

#include "reparam/mpoly.hpp"

#include <map>
#include <string>

namespace reparam {

/// Reduced fraction of polynomials. Canonical form: gcd(num, den) = 1, integer
/// coefficients with no common integer factor, den leading coefficient > 0.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const MPoly& p);  // NOLINT(google-explicit-constructor)
    RatFunc(const Rational& c) : num_(c), den_(1) { normalize_constant(); }  // NOLINT
    RatFunc(long c) : RatFunc(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(int c) : RatFunc(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    RatFunc(const MPoly& num, const MPoly& den);
    static RatFunc var(Var v) { return RatFunc(MPoly::var(v)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == den_.constant_value(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    // num/den as a polynomial; requires is_polynomial.
    MPoly as_poly() const;

    std::set<Var> vars() const;
    bool involves(Var v) const { return num_.involves(v) || den_.involves(v); }
    bool involves_any(const std::set<Var>& vs) const { return num_.involves_any(vs) || den_.involves_any(vs); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc inverse() const;
    RatFunc pow(int e) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc derivative(Var v) const;
    RatFunc substitute(const std::map<Var, RatFunc>& values) const;
    RatFunc substitute(Var v, const RatFunc& value) const;
    // Substitution then normalization; ZeroDenominator if the denominator vanishes.
    RatFunc evaluate(const std::map<Var, Rational>& values) const;

    std::string str() const;
    std::size_t hash() const { return num_.hash() * 31u ^ den_.hash(); }

private:
    void normalize_constant();
    void canonicalize_units();

    MPoly num_;
    MPoly den_;
};

// Builds the canonical fraction num/den.
RatFunc rf_normalize(const MPoly& num, const MPoly& den);

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace reparam
