#pragma once

#include "reparam/rational.hpp"
#include "reparam/symbol.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace reparam {

/// Sparse power product; factors sorted by variable id, exponents positive.
class Monomial {
public:
    using Factor = std::pair<Var, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial of(Var v, std::uint32_t e = 1);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    std::uint32_t degree() const { return deg_; }
    std::uint32_t exponent(Var v) const;
    bool divides(const Monomial& o) const;

    Monomial operator*(const Monomial& o) const;
    // Requires divides(o); returns o / *this.
    Monomial cofactor(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    Monomial gcd(const Monomial& o) const;
    Monomial without(Var v) const;
    // Factors restricted to (or excluding) a variable set.
    Monomial restrict(const std::set<Var>& vs, bool keep) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    std::string str() const;

private:
    std::vector<Factor> f_;
    std::uint32_t deg_ = 0;
};

// Graded reverse lexicographic comparison; lower variable id ranks higher.
int grevlex_cmp(const Monomial& a, const Monomial& b);

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};

struct Term {
    Monomial m;
    Rational c;
};

/// Multivariate polynomial over Q, terms kept in descending grevlex order.
class MPoly {
public:
    MPoly() = default;
    MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    MPoly(int c) : MPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    static MPoly var(Var v);
    static MPoly monomial(const Monomial& m, const Rational& c = Rational(1));
    static MPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    Rational constant_value() const;  // requires is_constant
    Rational constant_term() const;
    const Term& lt() const { return terms_.front(); }
    const Rational& lc() const { return terms_.front().c; }
    const Monomial& lm() const { return terms_.front().m; }

    std::uint32_t degree() const;
    std::uint32_t degree(Var v) const;
    std::uint32_t low_degree(Var v) const;
    std::set<Var> vars() const;
    bool involves(Var v) const;
    bool involves_any(const std::set<Var>& vs) const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly scaled(const Rational& c) const;
    MPoly shifted(const Monomial& m) const;  // multiply by a monomial
    MPoly pow(unsigned e) const;

    friend bool operator==(const MPoly& a, const MPoly& b);

    MPoly derivative(Var v) const;
    MPoly substitute(Var v, const MPoly& value) const;
    MPoly substitute(const std::map<Var, MPoly>& values) const;
    MPoly evaluate(const std::map<Var, Rational>& values) const;

    // Coefficients w.r.t. v: result[k] is the coefficient of v^k.
    std::vector<MPoly> coeffs_in(Var v) const;
    static MPoly from_coeffs(Var v, const std::vector<MPoly>& cs);
    // Splits into (monomial in vs) -> coefficient polynomial free of vs.
    std::map<Monomial, MPoly, MonomialGreater> split(const std::set<Var>& vs) const;

    // Positive rational c such that this / c has coprime integer coefficients
    // with positive leading coefficient; 0 for the zero polynomial.
    Rational content() const;
    MPoly primitive() const;  // this / content()
    MPoly monic() const;
    Monomial monomial_content() const;  // gcd of all monomials

    std::string str() const;
    std::size_t hash() const;

private:
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

}  // namespace reparam
