// Factorization over Q: contents, square-free decomposition, then a
// monic transform, univariate Zassenhaus at an integer point and
// multivariate Hensel lifting with subset recombination.
#include "reparam/error.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>
#include <random>

namespace reparam {

namespace {

using ZPoly = std::vector<BigInt>;
using FPoly = std::vector<std::uint64_t>;
using QPoly = std::vector<Rational>;

template <class P>
void trim(P& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// ---- arithmetic in F_p[x]

struct Fp {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

    FPoly from(const ZPoly& z) const {
        FPoly r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            BigInt m = z[i] % static_cast<unsigned long>(p);
            if (m < 0) m += static_cast<unsigned long>(p);
            r[i] = m.get_ui();
        }
        trim(r);
        return r;
    }

    FPoly mulp(const FPoly& a, const FPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        trim(r);
        return r;
    }

    FPoly subp(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        trim(a);
        return a;
    }

    FPoly addp(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = add(a[i], b[i]);
        trim(a);
        return a;
    }

    // a = q*b + r
    void divmod(const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) const {
        r = a;
        q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
        std::uint64_t li = inv(b.back());
        while (r.size() >= b.size() && !r.empty()) {
            std::size_t s = r.size() - b.size();
            std::uint64_t c = mul(r.back(), li);
            q[s] = c;
            for (std::size_t i = 0; i < b.size(); ++i) r[s + i] = sub(r[s + i], mul(c, b[i]));
            trim(r);
        }
        trim(q);
    }

    FPoly mod(const FPoly& a, const FPoly& b) const {
        FPoly q, r;
        divmod(a, b, q, r);
        return r;
    }

    FPoly monic(FPoly a) const {
        if (a.empty()) return a;
        std::uint64_t li = inv(a.back());
        for (auto& c : a) c = mul(c, li);
        return a;
    }

    FPoly gcd(FPoly a, FPoly b) const {
        while (!b.empty()) {
            FPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s*a + t*b = 1 for coprime a, b.
    void egcd(const FPoly& a, const FPoly& b, FPoly& s, FPoly& t) const {
        FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            FPoly q, r;
            divmod(r0, r1, q, r);
            FPoly s2 = subp(s0, mulp(q, s1));
            FPoly t2 = subp(t0, mulp(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        std::uint64_t li = inv(r0.back());
        for (auto& c : s0) c = mul(c, li);
        for (auto& c : t0) c = mul(c, li);
        s = s0;
        t = t0;
    }

    FPoly powmod(FPoly base, const BigInt& e, const FPoly& m) const {
        FPoly r{1};
        base = mod(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mod(mulp(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mulp(r, base), m);
        }
        return r;
    }

    FPoly derivative(const FPoly& a) const {
        FPoly r;
        for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mul(a[i], i % p));
        trim(r);
        return r;
    }
};

// Distinct-degree then equal-degree factorization of a monic square-free f.
std::vector<FPoly> factor_mod_p(const Fp& F, FPoly f, std::mt19937_64& rng) {
    std::vector<std::pair<FPoly, std::size_t>> dd;
    FPoly x{0, 1};
    FPoly h = x;
    BigInt P(static_cast<unsigned long>(F.p));
    for (std::size_t d = 1; f.size() > 1 && 2 * d <= f.size() - 1; ++d) {
        h = F.powmod(h, P, f);
        FPoly g = F.gcd(f, F.subp(h, x));
        if (g.size() > 1) {
            dd.push_back({g, d});
            FPoly q, r;
            F.divmod(f, g, q, r);
            f = q;
            h = F.mod(h, f);
        }
    }
    if (f.size() > 1) dd.push_back({F.monic(f), f.size() - 1});

    std::vector<FPoly> out;
    for (auto& [g, d] : dd) {
        std::vector<FPoly> stack{g};
        BigInt e;
        mpz_pow_ui(e.get_mpz_t(), P.get_mpz_t(), d);
        e = (e - 1) / 2;
        while (!stack.empty()) {
            FPoly cur = stack.back();
            stack.pop_back();
            if (cur.size() - 1 == d) {
                out.push_back(cur);
                continue;
            }
            while (true) {
                FPoly a(cur.size() - 1);
                for (auto& c : a) c = rng() % F.p;
                trim(a);
                if (a.size() < 2) continue;
                FPoly b = F.subp(F.powmod(a, e, cur), FPoly{1});
                FPoly c = F.gcd(cur, b);
                if (c.size() > 1 && c.size() < cur.size()) {
                    FPoly q, r;
                    F.divmod(cur, c, q, r);
                    stack.push_back(c);
                    stack.push_back(F.monic(q));
                    break;
                }
            }
        }
    }
    return out;
}

// ---- integer polynomials modulo m

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

ZPoly zreduce(ZPoly a, const BigInt& m) {
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
    }
    trim(a);
    return a;
}

ZPoly zsymmetric(ZPoly a, const BigInt& m) {
    BigInt half = m / 2;
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    trim(a);
    return a;
}

ZPoly zfrom(const FPoly& f) {
    ZPoly r;
    for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

std::optional<ZPoly> zdiv_exact_monic(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    if (r.size() < b.size()) return std::nullopt;
    ZPoly q(r.size() - b.size() + 1, BigInt(0));
    while (r.size() >= b.size() && !r.empty()) {
        std::size_t s = r.size() - b.size();
        BigInt c = r.back();
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[s + i] -= c * b[i];
        trim(r);
    }
    if (!r.empty()) return std::nullopt;
    trim(q);
    return q;
}

// Lift F = prod(factors) mod p to mod p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FPoly>& factors, const Fp& F, unsigned k) {
    BigInt pk;
    BigInt P(static_cast<unsigned long>(F.p));
    mpz_pow_ui(pk.get_mpz_t(), P.get_mpz_t(), k);
    if (factors.size() == 1) return {zreduce(f, pk)};
    std::size_t half = factors.size() / 2;
    std::vector<FPoly> A(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<FPoly> B(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
    FPoly g0{1}, h0{1};
    for (const auto& a : A) g0 = F.mulp(g0, a);
    for (const auto& b : B) h0 = F.mulp(h0, b);
    FPoly s, t;
    F.egcd(g0, h0, s, t);
    ZPoly g = zfrom(g0), h = zfrom(h0);
    BigInt pj = P;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly prod = zmul(g, h);
        ZPoly e = f;
        if (e.size() < prod.size()) e.resize(prod.size(), BigInt(0));
        for (std::size_t i = 0; i < prod.size(); ++i) e[i] -= prod[i];
        trim(e);
        for (auto& c : e) c /= pj;
        FPoly ep = F.from(e);
        FPoly q, r;
        F.divmod(F.mulp(t, ep), g0, q, r);
        FPoly dh = F.addp(F.mulp(s, ep), F.mulp(q, h0));
        ZPoly dg = zfrom(r), dhz = zfrom(dh);
        if (g.size() < dg.size()) g.resize(dg.size(), BigInt(0));
        for (std::size_t i = 0; i < dg.size(); ++i) g[i] += pj * dg[i];
        if (h.size() < dhz.size()) h.resize(dhz.size(), BigInt(0));
        for (std::size_t i = 0; i < dhz.size(); ++i) h[i] += pj * dhz[i];
        pj *= P;
        g = zreduce(g, pj);
        h = zreduce(h, pj);
    }
    auto left = hensel_lift(g, A, F, k);
    auto right = hensel_lift(h, B, F, k);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

const std::uint64_t kPrimes[] = {10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093,
                                 10099, 10103, 10111, 10133, 10139, 10141, 10151, 10159, 10163, 10169};

// Irreducible factors of a monic square-free f in Z[x].
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    std::size_t n = f.size() - 1;
    if (n <= 1) return {f};
    std::mt19937_64 rng(12345);
    std::vector<FPoly> best;
    std::uint64_t best_p = 0;
    int tried = 0;
    for (std::uint64_t p : kPrimes) {
        Fp F{p};
        FPoly fp = F.from(f);
        if (fp.size() != f.size()) continue;
        if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
        auto fs = factor_mod_p(F, fp, rng);
        if (best_p == 0 || fs.size() < best.size()) {
            best = fs;
            best_p = p;
        }
        if (++tried == 3 || best.size() == 1) break;
    }
    if (best_p == 0) throw Error(ErrorKind::Internal, "no suitable prime for factorization");
    if (best.size() == 1) return {f};

    BigInt maxc = 0;
    for (const auto& c : f) maxc = std::max(maxc, BigInt(abs(c)));
    BigInt bound = maxc * static_cast<unsigned long>(n + 1);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    Fp F{best_p};
    BigInt P(static_cast<unsigned long>(best_p));
    unsigned k = 1;
    BigInt pk = P;
    while (pk <= bound) {
        pk *= P;
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift(f, best, F, k);

    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly g{BigInt(1)};
            for (auto i : idx) g = zsymmetric(zmul(g, lifted[i]), pk);
            if (auto q = zdiv_exact_monic(rest, g)) {
                result.push_back(g);
                rest = *q;
                for (std::size_t j = s; j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
                found = true;
                break;
            }
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == lifted.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (rest.size() > 1) result.push_back(rest);
    return result;
}

// ---- univariate polynomials over Q

void qtrim(QPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    Rational li = b.back().inverse();
    while (r.size() >= b.size() && !r.empty()) {
        std::size_t s = r.size() - b.size();
        Rational c = r.back() * li;
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[s + i] -= c * b[i];
        qtrim(r);
    }
    qtrim(q);
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qtrim(a);
    return a;
}

// Inverse of a modulo m (coprime).
QPoly qinvmod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1, s0{}, s1{Rational(1)};
    {
        QPoly q;
        qdivmod(a, m, q, r1);
    }
    while (!r1.empty()) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw Error(ErrorKind::Internal, "non-coprime factors in Hensel lifting");
    Rational li = r0[0].inverse();
    for (auto& c : s0) c *= li;
    QPoly q, r;
    qdivmod(s0, m, q, r);
    return r;
}

QPoly to_q(const MPoly& p, Var x) {
    QPoly r(p.degree(x) + 1, Rational(0));
    for (const auto& t : p.terms()) r[t.m.exponent(x)] += t.c;
    qtrim(r);
    return r;
}

MPoly from_q(const QPoly& q, Var x) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!q[i].is_zero()) ts.push_back({Monomial::of(x, static_cast<std::uint32_t>(i)), q[i]});
    return MPoly::from_terms(std::move(ts));
}

ZPoly to_z(const MPoly& p, Var x) {
    ZPoly r(p.degree(x) + 1, BigInt(0));
    for (const auto& t : p.terms()) r[t.m.exponent(x)] = t.c.num();
    trim(r);
    return r;
}

MPoly from_z(const ZPoly& z, Var x) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0) ts.push_back({Monomial::of(x, static_cast<std::uint32_t>(i)), Rational(z[i])});
    return MPoly::from_terms(std::move(ts));
}

// ---- multivariate

std::uint32_t degree_in(const Monomial& m, const std::set<Var>& ys) {
    std::uint32_t d = 0;
    for (const auto& [v, e] : m.factors())
        if (ys.count(v)) d += e;
    return d;
}

std::uint32_t degree_in(const MPoly& p, const std::set<Var>& ys) {
    std::uint32_t d = 0;
    for (const auto& t : p.terms()) d = std::max(d, degree_in(t.m, ys));
    return d;
}

MPoly truncate(const MPoly& p, const std::set<Var>& ys, std::uint32_t maxdeg) {
    std::vector<Term> ts;
    for (const auto& t : p.terms())
        if (degree_in(t.m, ys) <= maxdeg) ts.push_back(t);
    return MPoly::from_terms(std::move(ts));
}

MPoly truncated_product(const MPoly& a, const MPoly& b, const std::set<Var>& ys, std::uint32_t maxdeg) {
    std::vector<Term> ts;
    for (const auto& s : a.terms()) {
        std::uint32_t ds = degree_in(s.m, ys);
        if (ds > maxdeg) continue;
        for (const auto& t : b.terms())
            if (ds + degree_in(t.m, ys) <= maxdeg) ts.push_back({s.m * t.m, s.c * t.c});
    }
    return MPoly::from_terms(std::move(ts));
}

// Irreducible factors of a monic (in x) square-free F over Z, given the
// factorization of F(x, 0) where ys are already shifted to the evaluation point.
std::vector<MPoly> hensel_multivariate(const MPoly& F, Var x, const std::set<Var>& ys,
                                       const std::vector<QPoly>& uni) {
    std::uint32_t D = degree_in(F, ys);
    std::size_t r = uni.size();
    std::vector<QPoly> s(r);
    for (std::size_t i = 0; i < r; ++i) {
        QPoly others{Rational(1)};
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) others = qmul(others, uni[j]);
        s[i] = qinvmod(others, uni[i]);
    }
    std::vector<MPoly> lifted;
    for (const auto& u : uni) lifted.push_back(from_q(u, x));
    for (std::uint32_t k = 1; k <= D; ++k) {
        MPoly prod(1);
        for (const auto& l : lifted) prod = truncated_product(prod, l, ys, k);
        MPoly err = truncate(F, ys, k) - prod;
        if (err.is_zero()) continue;
        std::set<Var> xs{x};
        for (const auto& [m, c] : err.split(ys)) {
            if (m.degree() != k) continue;
            QPoly cq = to_q(c, x);
            for (std::size_t i = 0; i < r; ++i) {
                QPoly q, rem;
                qdivmod(qmul(cq, s[i]), uni[i], q, rem);
                lifted[i] += from_q(rem, x).shifted(m);
            }
        }
    }

    std::vector<MPoly> result;
    MPoly rest = F;
    std::size_t sz = 1;
    while (2 * sz <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(sz);
        for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
        while (true) {
            MPoly g(1);
            for (auto i : idx) g = truncated_product(g, lifted[i], ys, D);
            if (auto q = divide_exact(rest, g)) {
                result.push_back(g);
                rest = *q;
                for (std::size_t j = sz; j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
                found = true;
                break;
            }
            std::size_t i = sz;
            while (i > 0 && idx[i - 1] == lifted.size() - sz + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < sz; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++sz;
    }
    if (!rest.is_constant()) result.push_back(rest);
    return result;
}

MPoly normalize_factor(const MPoly& p) { return p.primitive(); }

// Irreducible factors of a square-free primitive polynomial with integer coefficients.
std::vector<MPoly> factor_square_free(const MPoly& f) {
    if (f.degree() <= 1) return {f};
    auto vs = f.vars();
    Var x = *vs.begin();
    std::uint32_t best = UINT32_MAX;
    for (Var v : vs) {
        std::uint32_t d = f.degree(v);
        if (d < best) {
            best = d;
            x = v;
        }
    }
    MPoly cont = content_in(f, x);
    if (!cont.is_constant()) {
        auto a = factor_square_free(cont);
        auto b = factor_square_free(*divide_exact(f, cont));
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    std::uint32_t n = f.degree(x);
    if (n == 1) return {normalize_factor(f)};
    auto cs = f.coeffs_in(x);
    MPoly L = cs[n];
    std::vector<MPoly> Fc(n + 1);
    for (std::uint32_t i = 0; i < n; ++i) Fc[i] = cs[i] * L.pow(n - 1 - i);
    Fc[n] = MPoly(1);
    MPoly F = MPoly::from_coeffs(x, Fc);

    auto map_back = [&](const MPoly& G) {
        MPoly g = G.substitute(x, L * MPoly::var(x));
        return normalize_factor(*divide_exact(g, content_in(g, x)));
    };

    std::set<Var> ys(vs.begin(), vs.end());
    ys.erase(x);
    std::vector<MPoly> out;
    if (ys.empty()) {
        for (const auto& g : zassenhaus(to_z(F, x))) out.push_back(map_back(from_z(g, x)));
        return out;
    }

    std::mt19937_64 rng(f.hash());
    std::map<Var, Rational> best_pt;
    std::vector<ZPoly> best_uni;
    int good = 0;
    for (int attempt = 0; attempt < 200 && good < 3; ++attempt) {
        long range = 2 + attempt / 10;
        std::map<Var, Rational> pt;
        for (Var y : ys) pt[y] = Rational(static_cast<long>(rng() % (2 * range + 1)) - range);
        MPoly u = F.evaluate(pt);
        MPoly du = u.derivative(x);
        if (!poly_gcd(u, du).is_constant()) continue;
        auto uni = zassenhaus(to_z(u, x));
        ++good;
        if (best_uni.empty() || uni.size() < best_uni.size()) {
            best_uni = uni;
            best_pt = pt;
        }
        if (best_uni.size() == 1) break;
    }
    if (good == 0) throw Error(ErrorKind::Internal, "no separable evaluation point for factorization");
    if (best_uni.size() == 1) return {normalize_factor(f)};

    std::map<Var, MPoly> shift, unshift;
    for (Var y : ys) {
        shift[y] = MPoly::var(y) + MPoly(best_pt[y]);
        unshift[y] = MPoly::var(y) - MPoly(best_pt[y]);
    }
    MPoly Fs = F.substitute(shift);
    std::vector<QPoly> uni;
    for (const auto& z : best_uni) {
        QPoly q;
        for (const auto& c : z) q.emplace_back(c);
        uni.push_back(q);
    }
    for (const auto& G : hensel_multivariate(Fs, x, ys, uni)) out.push_back(map_back(G.substitute(unshift)));
    return out;
}

void add_factor(std::vector<std::pair<MPoly, unsigned>>& fs, const MPoly& f, unsigned e) {
    for (auto& [g, k] : fs)
        if (g == f) {
            k += e;
            return;
        }
    fs.push_back({f, e});
}

// Factors a primitive integer polynomial without monomial content.
void factor_primitive(const MPoly& f, unsigned mult, std::vector<std::pair<MPoly, unsigned>>& out) {
    if (f.is_constant()) return;
    auto vs = f.vars();
    Var v = *vs.begin();
    MPoly c = content_in(f, v);
    if (!c.is_constant()) {
        factor_primitive(c, mult, out);
        factor_primitive(*divide_exact(f, c), mult, out);
        return;
    }
    // Yun's square-free decomposition with respect to v.
    MPoly df = f.derivative(v);
    MPoly b = poly_gcd(f, df);
    MPoly cc = *divide_exact(f, b);
    MPoly d = *divide_exact(df, b) - cc.derivative(v);
    unsigned i = 1;
    while (!cc.is_constant()) {
        MPoly a = poly_gcd(cc, d);
        if (!a.is_constant())
            for (const auto& g : factor_square_free(a)) add_factor(out, g, i * mult);
        cc = *divide_exact(cc, a);
        d = *divide_exact(d, a) - cc.derivative(v);
        ++i;
    }
}

}  // namespace

Factorization factor(const MPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "factorization of zero");
    Factorization result;
    result.unit = p.content();
    MPoly f = p.primitive();
    Monomial m = f.monomial_content();
    for (const auto& [v, e] : m.factors()) result.factors.push_back({MPoly::var(v), e});
    factor_primitive(divide_monomial(f, m), 1, result.factors);
    for (auto& [g, e] : result.factors) g = g.primitive();
    std::sort(result.factors.begin(), result.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.str() < b.first.str();
    });
    MPoly prod(1);
    for (const auto& [g, e] : result.factors) prod *= g.pow(e);
    result.unit = p.lc() / prod.lc();
    return result;
}

MPoly square_free_part(const MPoly& p) {
    MPoly r(1);
    for (const auto& [g, e] : factor(p).factors) r *= g;
    return r.primitive();
}

bool is_irreducible(const MPoly& p) {
    if (p.is_constant()) return false;
    auto f = factor(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace reparam
