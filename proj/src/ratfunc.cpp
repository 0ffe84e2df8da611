#include "reparam/ratfunc.hpp"

#include "reparam/error.hpp"
#include "reparam/polyalg.hpp"

namespace reparam {

namespace {

MPoly exact(const MPoly& a, const MPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw Error(ErrorKind::Internal, "inexact division in fraction arithmetic");
    return *q;
}

}  // namespace

RatFunc::RatFunc(const MPoly& p) : num_(p), den_(1) { canonicalize_units(); }

RatFunc::RatFunc(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "fraction with zero denominator");
    if (num.is_zero()) {
        den_ = MPoly(1);
        return;
    }
    MPoly g = poly_gcd(num, den);
    num_ = exact(num, g);
    den_ = exact(den, g);
    canonicalize_units();
}

RatFunc rf_normalize(const MPoly& num, const MPoly& den) { return RatFunc(num, den); }

void RatFunc::normalize_constant() { canonicalize_units(); }

// Scales num and den by a common rational so both have integer coefficients
// with joint content 1 and the denominator's leading coefficient is positive.
void RatFunc::canonicalize_units() {
    if (num_.is_zero()) {
        den_ = MPoly(1);
        return;
    }
    BigInt l = 1, g = 0;
    for (const auto& t : num_.terms()) l = lcm(l, t.c.den());
    for (const auto& t : den_.terms()) l = lcm(l, t.c.den());
    for (const auto& t : num_.terms()) g = gcd(g, (t.c * Rational(l)).num());
    for (const auto& t : den_.terms()) g = gcd(g, (t.c * Rational(l)).num());
    Rational s(l, g);
    if (den_.lc().sign() < 0) s = -s;
    if (!s.is_one()) {
        num_ = num_.scaled(s);
        den_ = den_.scaled(s);
    }
}

MPoly RatFunc::as_poly() const {
    if (!den_.is_constant()) throw Error(ErrorKind::Internal, "fraction " + str() + " is not a polynomial");
    return num_.scaled(den_.constant_value().inverse());
}

std::set<Var> RatFunc::vars() const {
    auto a = num_.vars();
    auto b = den_.vars();
    a.insert(b.begin(), b.end());
    return a;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFunc r;
    if (a.den_ == b.den_) {
        MPoly n = a.num_ + b.num_;
        if (a.den_.is_constant()) {
            r.num_ = n;
            r.den_ = a.den_;
            r.canonicalize_units();
            return r;
        }
        return RatFunc(n, a.den_);
    }
    if (a.den_.is_constant() && b.den_.is_constant()) {
        r.num_ = a.num_.scaled(b.den_.constant_value()) + b.num_.scaled(a.den_.constant_value());
        r.den_ = MPoly(a.den_.constant_value() * b.den_.constant_value());
        r.canonicalize_units();
        return r;
    }
    MPoly g = poly_gcd(a.den_, b.den_);
    if (g.is_constant()) {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
        r.canonicalize_units();
        return r;
    }
    MPoly ad = exact(a.den_, g), bd = exact(b.den_, g);
    MPoly t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return RatFunc();
    MPoly g2 = poly_gcd(t, g);
    r.num_ = exact(t, g2);
    r.den_ = ad * bd * exact(g, g2);
    r.canonicalize_units();
    return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    RatFunc r;
    if (a.den_.is_constant() && b.den_.is_constant()) {
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ * b.den_;
        r.canonicalize_units();
        return r;
    }
    MPoly g1 = poly_gcd(a.num_, b.den_);
    MPoly g2 = poly_gcd(b.num_, a.den_);
    r.num_ = exact(a.num_, g1) * exact(b.num_, g2);
    r.den_ = exact(a.den_, g2) * exact(b.den_, g1);
    r.canonicalize_units();
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw Error(ErrorKind::ZeroDenominator, "inverse of zero fraction");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    r.canonicalize_units();
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    r.canonicalize_units();
    return r;
}

RatFunc RatFunc::derivative(Var v) const {
    if (den_.is_constant()) {
        RatFunc r;
        r.num_ = num_.derivative(v);
        r.den_ = den_;
        r.canonicalize_units();
        return r;
    }
    return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {

// Substitutes rational values into a polynomial: sum c * prod(values^e).
RatFunc substitute_poly(const MPoly& p, const std::map<Var, RatFunc>& values) {
    // Common denominator per variable keeps this polynomial until the end.
    std::map<Var, std::uint32_t> maxdeg;
    for (const auto& t : p.terms())
        for (const auto& [v, e] : t.m.factors())
            if (values.count(v)) maxdeg[v] = std::max(maxdeg[v], e);
    std::map<Var, MPoly> nums;
    MPoly total_den(1);
    for (const auto& [v, d] : maxdeg) {
        const RatFunc& val = values.at(v);
        nums[v] = val.num();
        total_den *= val.den().pow(d);
    }
    std::map<std::pair<Var, std::uint32_t>, MPoly> cache;
    auto power = [&](Var v, std::uint32_t e, bool of_den) -> const MPoly& {
        auto key = std::make_pair(v, of_den ? e + 0x80000000u : e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const MPoly& base = of_den ? values.at(v).den() : nums.at(v);
        return cache.emplace(key, base.pow(e)).first->second;
    };
    MPoly acc;
    for (const auto& t : p.terms()) {
        MPoly term(t.c);
        std::vector<Monomial::Factor> kept;
        for (const auto& [v, e] : t.m.factors()) {
            if (values.count(v)) {
                term *= power(v, e, false);
                std::uint32_t rest = maxdeg[v] - e;
                if (rest) term *= power(v, rest, true);
            } else {
                kept.push_back({v, e});
            }
        }
        for (const auto& [v, d] : maxdeg)
            if (t.m.exponent(v) == 0) term *= power(v, d, true);
        acc += term.shifted(Monomial(std::move(kept)));
    }
    return RatFunc(acc, total_den);
}

}  // namespace

RatFunc RatFunc::substitute(const std::map<Var, RatFunc>& values) const {
    if (!involves_any([&] {
            std::set<Var> s;
            for (const auto& [v, _] : values) s.insert(v);
            return s;
        }()))
        return *this;
    RatFunc n = substitute_poly(num_, values);
    RatFunc d = substitute_poly(den_, values);
    if (d.is_zero()) throw Error(ErrorKind::ZeroDenominator, "denominator " + den_.str() + " vanishes under substitution");
    return n / d;
}

RatFunc RatFunc::substitute(Var v, const RatFunc& value) const {
    std::map<Var, RatFunc> m{{v, value}};
    return substitute(m);
}

RatFunc RatFunc::evaluate(const std::map<Var, Rational>& values) const {
    MPoly d = den_.evaluate(values);
    if (d.is_zero()) throw Error(ErrorKind::ZeroDenominator, "denominator " + den_.str() + " vanishes at the point");
    return RatFunc(num_.evaluate(values), d);
}

std::string RatFunc::str() const {
    if (den_.is_constant()) {
        MPoly p = as_poly();
        return p.str();
    }
    std::string n = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
    std::string d = den_.size() > 1 || !den_.lc().is_one() ? "(" + den_.str() + ")" : den_.str();
    return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

}  // namespace reparam
