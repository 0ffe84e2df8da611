#include "reparam/tower.hpp"

#include "reparam/error.hpp"

namespace reparam {

UPoly to_upoly(const MPoly& p, Var t) {
    UPoly r;
    for (const auto& c : p.coeffs_in(t)) r.emplace_back(c);
    upoly_trim(r);
    return r;
}

RatFunc from_upoly(const UPoly& p, Var t) {
    RatFunc acc;
    RatFunc x = RatFunc::var(t);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

void upoly_trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    upoly_trim(r);
    return r;
}

namespace {

// Quotient and remainder of a by m (m nonzero).
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& m) {
    upoly_trim(a);
    std::size_t n = m.size() - 1;
    if (a.size() <= n) return {{}, a};
    UPoly q(a.size() - n);
    RatFunc inv = m.back().inverse();
    for (std::size_t k = a.size(); k-- > n;) {
        if (a[k].is_zero()) continue;
        RatFunc c = m.back().is_one() ? a[k] : a[k] * inv;
        q[k - n] = c;
        for (std::size_t j = 0; j <= n; ++j)
            if (!m[j].is_zero()) a[k - n + j] -= c * m[j];
    }
    a.resize(n);
    upoly_trim(a);
    upoly_trim(q);
    return {q, a};
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    upoly_trim(r);
    return r;
}

}  // namespace

UPoly upoly_rem(UPoly a, const UPoly& m) { return divmod(std::move(a), m).second; }

std::optional<UPoly> upoly_inverse(const UPoly& a, const UPoly& m) {
    UPoly r0 = m, r1 = upoly_rem(a, m);
    UPoly s0, s1{RatFunc(1)};
    if (r1.empty()) return std::nullopt;
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        UPoly s = sub(s0, upoly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        if (r1.empty()) return std::nullopt;
    }
    RatFunc inv = r1[0].inverse();
    for (auto& c : s1) c *= inv;
    return upoly_rem(s1, m);
}

RatFunc FieldTower::min_poly_expr() const {
    if (!alpha) throw Error(ErrorKind::NoAlgebraicGenerator, "tower has no algebraic generator");
    return from_upoly(min_poly, *alpha);
}

RatFunc FieldTower::to_params(const RatFunc& f) const {
    std::map<Var, RatFunc> sub;
    for (std::size_t i = 0; i < gens.size(); ++i) sub[gens[i]] = definitions[i];
    if (alpha) sub[*alpha] = alpha_definition;
    return f.substitute(sub);
}

RatFunc reduce_mod_minpoly(const RatFunc& p, const FieldTower& tower) {
    if (!tower.alpha) throw Error(ErrorKind::NoAlgebraicGenerator, "tower has no algebraic generator");
    Var a = *tower.alpha;
    const UPoly& m = tower.min_poly;
    UPoly num = upoly_rem(to_upoly(p.num(), a), m);
    if (!p.den().involves(a)) return from_upoly(num, a) / RatFunc(p.den());
    auto inv = upoly_inverse(to_upoly(p.den(), a), m);
    if (!inv) throw Error(ErrorKind::ZeroDenominator, "denominator " + p.den().str() + " vanishes modulo the minimal polynomial");
    return from_upoly(upoly_rem(upoly_mul(num, *inv), m), a);
}

}  // namespace reparam
