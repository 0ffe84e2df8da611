#include "reparam/mpoly.hpp"

#include "reparam/error.hpp"

#include <algorithm>
#include <sstream>

namespace reparam {

Monomial::Monomial(std::vector<Factor> factors) : f_(std::move(factors)) {
    std::sort(f_.begin(), f_.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < f_.size(); ++r) {
        if (f_[r].second == 0) continue;
        if (w > 0 && f_[w - 1].first == f_[r].first) {
            f_[w - 1].second += f_[r].second;
        } else {
            f_[w++] = f_[r];
        }
    }
    f_.resize(w);
    for (const auto& [v, e] : f_) deg_ += e;
}

Monomial Monomial::of(Var v, std::uint32_t e) {
    Monomial m;
    if (e > 0) {
        m.f_.push_back({v, e});
        m.deg_ = e;
    }
    return m;
}

std::uint32_t Monomial::exponent(Var v) const {
    for (const auto& [w, e] : f_) {
        if (w == v) return e;
        if (w > v) break;
    }
    return 0;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
        while (j < o.f_.size() && o.f_[j].first < v) ++j;
        if (j == o.f_.size() || o.f_[j].first != v || o.f_[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
        if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
            r.f_.push_back(f_[i++]);
        } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
            r.f_.push_back(o.f_[j++]);
        } else {
            r.f_.push_back({f_[i].first, f_[i].second + o.f_[j].second});
            ++i;
            ++j;
        }
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

Monomial Monomial::cofactor(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0;
    for (const auto& [v, e] : o.f_) {
        std::uint32_t mine = 0;
        while (i < f_.size() && f_[i].first < v) ++i;
        if (i < f_.size() && f_[i].first == v) mine = f_[i].second;
        if (e > mine) r.f_.push_back({v, e - mine});
    }
    r.deg_ = o.deg_ - deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    std::vector<Factor> fs = f_;
    fs.insert(fs.end(), o.f_.begin(), o.f_.end());
    std::sort(fs.begin(), fs.end());
    Monomial r;
    for (const auto& fe : fs) {
        if (!r.f_.empty() && r.f_.back().first == fe.first) {
            r.f_.back().second = std::max(r.f_.back().second, fe.second);
        } else {
            r.f_.push_back(fe);
        }
    }
    for (const auto& [v, e] : r.f_) r.deg_ += e;
    return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
        while (j < o.f_.size() && o.f_[j].first < v) ++j;
        if (j < o.f_.size() && o.f_[j].first == v) {
            std::uint32_t m = std::min(e, o.f_[j].second);
            r.f_.push_back({v, m});
            r.deg_ += m;
        }
    }
    return r;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (const auto& fe : f_)
        if (fe.first != v) {
            r.f_.push_back(fe);
            r.deg_ += fe.second;
        }
    return r;
}

Monomial Monomial::restrict(const std::set<Var>& vs, bool keep) const {
    Monomial r;
    for (const auto& fe : f_)
        if ((vs.count(fe.first) > 0) == keep) {
            r.f_.push_back(fe);
            r.deg_ += fe.second;
        }
    return r;
}

std::string Monomial::str() const {
    std::string s;
    for (const auto& [v, e] : f_) {
        if (!s.empty()) s += "*";
        s += display_name(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(fa.size()) - 1;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(fb.size()) - 1;
    while (i >= 0 && j >= 0) {
        if (fa[i].first == fb[j].first) {
            if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? 1 : -1;
            --i;
            --j;
        } else if (fa[i].first > fb[j].first) {
            return -1;
        } else {
            return 1;
        }
    }
    if (i >= 0) return -1;
    if (j >= 0) return 1;
    return 0;
}

namespace {

// Sorts descending and merges equal monomials, dropping zeros.
void canonicalize(std::vector<Term>& ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return grevlex_cmp(x.m, y.m) > 0; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < ts.size(); ++r) {
        if (w > 0 && ts[w - 1].m == ts[r].m) {
            ts[w - 1].c += ts[r].c;
        } else {
            if (w > 0 && ts[w - 1].c.is_zero()) --w;
            if (w != r) ts[w] = std::move(ts[r]);
            ++w;
        }
    }
    if (w > 0 && ts[w - 1].c.is_zero()) --w;
    ts.resize(w);
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = -1;
        else if (j == b.size()) c = 1;
        else c = grevlex_cmp(a[i].m, b[j].m);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j++]);
            if (subtract) r.back().c = -r.back().c;
        } else {
            Rational s = subtract ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!s.is_zero()) r.push_back({a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

}  // namespace

MPoly::MPoly(const Rational& c) {
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

MPoly MPoly::var(Var v) { return monomial(Monomial::of(v), Rational(1)); }

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    MPoly p;
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

Rational MPoly::constant_value() const {
    if (!is_constant()) throw Error(ErrorKind::Internal, "polynomial " + str() + " is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].c;
}

Rational MPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
    return Rational(0);
}

std::uint32_t MPoly::degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }

std::uint32_t MPoly::degree(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.exponent(v));
    return d;
}

std::uint32_t MPoly::low_degree(Var v) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = UINT32_MAX;
    for (const auto& t : terms_) d = std::min(d, t.m.exponent(v));
    return d;
}

std::set<Var> MPoly::vars() const {
    std::set<Var> vs;
    for (const auto& t : terms_)
        for (const auto& [v, e] : t.m.factors()) vs.insert(v);
    return vs;
}

bool MPoly::involves(Var v) const {
    for (const auto& t : terms_)
        if (t.m.exponent(v) > 0) return true;
    return false;
}

bool MPoly::involves_any(const std::set<Var>& vs) const {
    for (const auto& t : terms_)
        for (const auto& [v, e] : t.m.factors())
            if (vs.count(v)) return true;
    return false;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    if (a.size() == 1) return b.shifted(a.terms_[0].m).scaled(a.terms_[0].c);
    if (b.size() == 1) return a.shifted(b.terms_[0].m).scaled(b.terms_[0].c);
    std::vector<Term> ts;
    ts.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) ts.push_back({x.m * y.m, x.c * y.c});
    return MPoly::from_terms(std::move(ts));
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly MPoly::scaled(const Rational& c) const {
    if (c.is_zero()) return MPoly();
    MPoly r = *this;
    if (!c.is_one())
        for (auto& t : r.terms_) t.c *= c;
    return r;
}

MPoly MPoly::shifted(const Monomial& m) const {
    if (m.is_one()) return *this;
    MPoly r = *this;
    for (auto& t : r.terms_) t.m = t.m * m;
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result(1), base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

MPoly MPoly::derivative(Var v) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        std::uint32_t e = t.m.exponent(v);
        if (e == 0) continue;
        std::vector<Monomial::Factor> fs = t.m.factors();
        for (auto& f : fs)
            if (f.first == v) f.second -= 1;
        ts.push_back({Monomial(std::move(fs)), t.c * Rational(static_cast<long>(e))});
    }
    return from_terms(std::move(ts));
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
    std::map<Var, MPoly> m{{v, value}};
    return substitute(m);
}

MPoly MPoly::substitute(const std::map<Var, MPoly>& values) const {
    std::map<std::pair<Var, std::uint32_t>, MPoly> powers;
    auto power = [&](Var v, std::uint32_t e) -> const MPoly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        return powers.emplace(key, values.at(v).pow(e)).first->second;
    };
    std::vector<Term> plain;
    MPoly acc;
    for (const auto& t : terms_) {
        std::vector<Monomial::Factor> kept;
        MPoly factor(t.c);
        bool touched = false;
        for (const auto& [v, e] : t.m.factors()) {
            if (values.count(v)) {
                factor *= power(v, e);
                touched = true;
            } else {
                kept.push_back({v, e});
            }
        }
        if (!touched) {
            plain.push_back(t);
        } else if (!factor.is_zero()) {
            acc += factor.shifted(Monomial(std::move(kept)));
        }
    }
    return acc + from_terms(std::move(plain));
}

MPoly MPoly::evaluate(const std::map<Var, Rational>& values) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rational c = t.c;
        std::vector<Monomial::Factor> kept;
        for (const auto& [v, e] : t.m.factors()) {
            auto it = values.find(v);
            if (it != values.end()) {
                c *= it->second.pow(e);
            } else {
                kept.push_back({v, e});
            }
        }
        if (!c.is_zero()) ts.push_back({Monomial(std::move(kept)), std::move(c)});
    }
    return from_terms(std::move(ts));
}

std::vector<MPoly> MPoly::coeffs_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) buckets[t.m.exponent(v)].push_back({t.m.without(v), t.c});
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        MPoly p;
        p.terms_ = std::move(b);  // dropping a shared power of v keeps grevlex order
        out.push_back(std::move(p));
    }
    if (terms_.empty()) out.assign(1, MPoly());
    return out;
}

MPoly MPoly::from_coeffs(Var v, const std::vector<MPoly>& cs) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        Monomial m = Monomial::of(v, static_cast<std::uint32_t>(k));
        for (const auto& t : cs[k].terms_) ts.push_back({t.m * m, t.c});
    }
    return from_terms(std::move(ts));
}

std::map<Monomial, MPoly, MonomialGreater> MPoly::split(const std::set<Var>& vs) const {
    std::map<Monomial, std::vector<Term>, MonomialGreater> buckets;
    for (const auto& t : terms_) buckets[t.m.restrict(vs, true)].push_back({t.m.restrict(vs, false), t.c});
    std::map<Monomial, MPoly, MonomialGreater> out;
    for (auto& [m, ts] : buckets) out.emplace(m, from_terms(std::move(ts)));
    return out;
}

Rational MPoly::content() const {
    if (terms_.empty()) return Rational(0);
    BigInt g = 0, l = 1;
    for (const auto& t : terms_) {
        g = gcd(g, t.c.num());
        l = lcm(l, t.c.den());
    }
    Rational c(g, l);
    if (lc().sign() < 0) c = -c;
    return c;
}

MPoly MPoly::primitive() const {
    if (terms_.empty()) return *this;
    return scaled(content().inverse());
}

MPoly MPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(lc().inverse());
}

Monomial MPoly::monomial_content() const {
    if (terms_.empty()) return Monomial();
    Monomial g = terms_[0].m;
    for (const auto& t : terms_) g = g.gcd(t.m);
    return g;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.c;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        if (t.m.is_one()) {
            s += c.str();
        } else if (c.is_one()) {
            s += t.m.str();
        } else {
            s += c.str() + "*" + t.m.str();
        }
    }
    return s;
}

std::size_t MPoly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = h * 1000003u ^ t.c.hash();
        for (const auto& [v, e] : t.m.factors()) h = h * 31u + v * 131u + e;
    }
    return h;
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

}  // namespace reparam
