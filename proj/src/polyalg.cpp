#include "reparam/polyalg.hpp"

#include "reparam/error.hpp"

#include <algorithm>
#include <set>

namespace reparam {

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "polynomial division by zero");
    if (a.is_zero()) return MPoly();
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    if (a.degree() < b.degree()) return std::nullopt;
    for (Var v : b.vars())
        if (a.degree(v) < b.degree(v)) return std::nullopt;
    const Monomial& blm = b.lm();
    Rational blc_inv = b.lc().inverse();
    std::vector<Term> q;
    MPoly r = a;
    while (!r.is_zero()) {
        if (!blm.divides(r.lm())) return std::nullopt;
        Term t{blm.cofactor(r.lm()), r.lc() * blc_inv};
        r -= b.shifted(t.m).scaled(t.c);
        q.push_back(std::move(t));
    }
    return MPoly::from_terms(std::move(q));
}

MPoly divide_monomial(const MPoly& a, const Monomial& m) {
    if (m.is_one()) return a;
    std::vector<Term> ts;
    ts.reserve(a.size());
    for (const auto& t : a.terms()) ts.push_back({m.cofactor(t.m), t.c});
    return MPoly::from_terms(std::move(ts));
}

namespace {

MPoly gcd_primitive(const MPoly& a, const MPoly& b);

MPoly coefficient_gcd(const std::vector<MPoly>& cs) {
    MPoly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive() : poly_gcd(g, c);
        if (g.is_constant()) return MPoly(1);
    }
    return g;
}

MPoly lead_coeff_in(const MPoly& p, Var v) { return p.coeffs_in(v).back(); }

// True only if gcd(a, b) = 1: images at a point keeping both leading
// coefficients in x are coprime, and the x-contents are coprime too.
bool coprime_image(const MPoly& a, const MPoly& b, Var x) {
    std::set<Var> others = a.vars();
    for (Var v : b.vars()) others.insert(v);
    others.erase(x);
    if (others.empty()) return false;
    std::map<Var, Rational> pt;
    long k = 3;
    for (Var v : others) pt[v] = Rational(k++ * 7 % 31 + 2);
    MPoly ea = a.evaluate(pt), eb = b.evaluate(pt);
    if (ea.degree(x) != a.degree(x) || eb.degree(x) != b.degree(x)) return false;
    if (!gcd_primitive(ea.primitive(), eb.primitive()).is_constant()) return false;
    // A common factor free of x divides both contents.
    return poly_gcd(content_in(a, x), content_in(b, x)).is_constant();
}

MPoly gcd_primitive(const MPoly& a, const MPoly& b) {
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (a == b) return a;
    auto va = a.vars();
    auto vb = b.vars();
    for (Var v : va)
        if (!vb.count(v)) return poly_gcd(content_in(a, v), b);
    for (Var v : vb)
        if (!va.count(v)) return poly_gcd(a, content_in(b, v));

    if (a.size() <= b.size()) {
        if (divide_exact(b, a)) return a;
    } else if (divide_exact(a, b)) {
        return b;
    }

    Var x = *va.begin();
    std::uint32_t best = UINT32_MAX;
    for (Var v : va) {
        std::uint32_t d = std::max(a.degree(v), b.degree(v));
        if (d < best) {
            best = d;
            x = v;
        }
    }
    if (coprime_image(a, b, x)) return MPoly(1);
    MPoly ca = content_in(a, x), cb = content_in(b, x);
    MPoly gc = poly_gcd(ca, cb);
    MPoly p = *divide_exact(a, ca), q = *divide_exact(b, cb);
    if (p.degree(x) < q.degree(x)) std::swap(p, q);
    MPoly g;
    while (true) {
        MPoly r = pseudo_rem(p, q, x);
        if (r.is_zero()) {
            g = q;
            break;
        }
        if (r.degree(x) == 0) {
            g = MPoly(1);
            break;
        }
        r = *divide_exact(r, content_in(r, x));
        p = std::move(q);
        q = r.primitive();
    }
    return (gc * g).primitive();
}

}  // namespace

MPoly content_in(const MPoly& p, Var v) {
    if (p.is_zero()) return MPoly();
    return coefficient_gcd(p.coeffs_in(v));
}

MPoly pseudo_rem(const MPoly& a, const MPoly& b, Var v) {
    std::uint32_t db = b.degree(v);
    MPoly lb = lead_coeff_in(b, v);
    MPoly r = a;
    while (!r.is_zero() && r.degree(v) >= db) {
        std::uint32_t dr = r.degree(v);
        MPoly lr = lead_coeff_in(r, v);
        r = r * lb - (lr * b).shifted(Monomial::of(v, dr - db));
    }
    return r;
}

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    Monomial ma = a.monomial_content(), mb = b.monomial_content();
    Monomial mg = ma.gcd(mb);
    MPoly pa = divide_monomial(a, ma).primitive();
    MPoly pb = divide_monomial(b, mb).primitive();
    return gcd_primitive(pa, pb).shifted(mg).primitive();
}

MPoly poly_lcm(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    MPoly g = poly_gcd(a, b);
    return (*divide_exact(a, g) * b).primitive();
}

MPoly Factorization::expand() const {
    MPoly r(unit);
    for (const auto& [f, e] : factors) r *= f.pow(e);
    return r;
}

}  // namespace reparam
