#include "reparam/groebner.hpp"

#include "reparam/error.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>

namespace reparam {

namespace {

thread_local std::size_t t_budget = 1000000;

constexpr std::size_t kMaxVars = 40;

struct Mono {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t deg = 0;
};

struct OrderCtx {
    OrderKind kind;
    std::size_t n;
    std::size_t front;

    static int grevlex(const Mono& a, const Mono& b, std::size_t lo, std::size_t hi) {
        std::uint32_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        return 0;
    }

    int cmp(const Mono& a, const Mono& b) const {
        switch (kind) {
        case OrderKind::GRevLex:
            if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
            for (std::size_t i = n; i-- > 0;)
                if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
            return 0;
        case OrderKind::Lex:
            for (std::size_t i = 0; i < n; ++i)
                if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
            return 0;
        case OrderKind::BlockElim: {
            int c = grevlex(a, b, 0, front);
            if (c != 0) return c;
            return grevlex(a, b, front, n);
        }
        }
        return 0;
    }
};

bool mono_eq(const Mono& a, const Mono& b, std::size_t n) {
    if (a.deg != b.deg) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] != b.e[i]) return false;
    return true;
}

bool mono_divides(const Mono& a, const Mono& b, std::size_t n) {
    if (a.deg > b.deg) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Mono mono_mul(const Mono& a, const Mono& b, std::size_t n) {
    Mono r;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = a.e[i] + b.e[i];
        if (s > 60000) throw Error(ErrorKind::BudgetExhausted, "exponent overflow in Groebner basis computation");
        r.e[i] = static_cast<std::uint16_t>(s);
    }
    r.deg = a.deg + b.deg;
    return r;
}

Mono mono_div(const Mono& a, const Mono& b, std::size_t n) {  // a / b
    Mono r;
    for (std::size_t i = 0; i < n; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    r.deg = a.deg - b.deg;
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b, std::size_t n) {
    Mono r;
    for (std::size_t i = 0; i < n; ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        r.deg += r.e[i];
    }
    return r;
}

bool mono_coprime(const Mono& a, const Mono& b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

template <class K>
struct GPoly {
    std::vector<std::pair<Mono, K>> t;
    std::uint32_t sugar = 0;
    bool empty() const { return t.empty(); }
};

std::size_t coeff_weight(const Rational&) { return 1; }
std::size_t coeff_weight(const RatFunc& f) { return f.num().size() + f.den().size() - 1; }

template <class K>
std::size_t step_cost(const K& c, const GPoly<K>& g) {
    std::size_t wc = coeff_weight(c);
    if (wc <= 1) return 1;
    std::size_t wg = 0;
    for (std::size_t j = 1; j < g.t.size(); ++j) wg += coeff_weight(g.t[j].second);
    return 1 + wc * wg / 64;
}

Rational coeff_from(const MPoly& c, Rational*) { return c.constant_value(); }
RatFunc coeff_from(const MPoly& c, RatFunc*) { return RatFunc(c); }

}  // namespace

class GbImplBase {
public:
    virtual ~GbImplBase() = default;
    virtual std::unique_ptr<GbImplBase> clone() const = 0;
    virtual std::size_t size() const = 0;
    virtual std::vector<RatFunc> monic() const = 0;
    virtual std::vector<Monomial> leading_monomials() const = 0;
    virtual RatFunc normal_form(const MPoly& f) const = 0;
    virtual bool verify() const = 0;
    virtual std::vector<std::vector<std::uint16_t>> lead_exponents() const = 0;
};

namespace {

template <class K>
class GbImpl : public GbImplBase {
public:
    GbImpl(const std::vector<Var>& ring, OrderCtx ord) : ring_(ring), ord_(ord) {
        if (ring.size() > kMaxVars) throw Error(ErrorKind::InvalidArgument, "too many ring variables for Groebner engine");
        for (std::size_t i = 0; i < ring.size(); ++i) index_[ring[i]] = i;
    }

    std::unique_ptr<GbImplBase> clone() const override { return std::make_unique<GbImpl<K>>(*this); }

    GPoly<K> convert(const MPoly& f) const {
        std::set<Var> rs(ring_.begin(), ring_.end());
        GPoly<K> p;
        for (const auto& [m, c] : f.split(rs)) {
            Mono mm;
            for (const auto& [v, e] : m.factors()) {
                mm.e[index_.at(v)] = static_cast<std::uint16_t>(e);
                mm.deg += e;
            }
            p.t.push_back({mm, coeff_from(c, static_cast<K*>(nullptr))});
        }
        sort(p);
        if (!p.t.empty()) p.sugar = p.t.front().first.deg;
        for (const auto& [m, c] : p.t) p.sugar = std::max(p.sugar, m.deg);
        return p;
    }

    Monomial to_monomial(const Mono& m) const {
        std::vector<Monomial::Factor> fs;
        for (std::size_t i = 0; i < ring_.size(); ++i)
            if (m.e[i]) fs.push_back({ring_[i], m.e[i]});
        return Monomial(std::move(fs));
    }

    RatFunc to_ratfunc(const GPoly<K>& p) const {
        if (p.t.empty()) return RatFunc();
        if constexpr (std::is_same_v<K, Rational>) {
            std::vector<Term> ts;
            for (const auto& [m, c] : p.t) ts.push_back({to_monomial(m), c});
            return RatFunc(MPoly::from_terms(std::move(ts)));
        } else {
            MPoly L(1);
            for (const auto& [m, c] : p.t) L = poly_lcm(L, c.den());
            MPoly num;
            for (const auto& [m, c] : p.t) {
                MPoly scale = *divide_exact(L, c.den());
                num += (c.num() * scale).shifted(to_monomial(m));
            }
            return RatFunc(num, L);
        }
    }

    void sort(GPoly<K>& p) const {
        std::sort(p.t.begin(), p.t.end(), [&](const auto& a, const auto& b) { return ord_.cmp(a.first, b.first) > 0; });
    }

    void make_monic(GPoly<K>& p) const {
        if (p.t.empty() || p.t.front().second.is_one()) return;
        K inv = K(1) / p.t.front().second;
        for (auto& [m, c] : p.t) c = c * inv;
    }

    // p - c * m * g
    GPoly<K> sub_mul(const GPoly<K>& p, const K& c, const Mono& m, const GPoly<K>& g, std::size_t skip_p,
                     std::size_t skip_g) const {
        std::size_t n = ring_.size();
        GPoly<K> r;
        r.t.reserve(p.t.size() + g.t.size());
        std::size_t i = skip_p, j = skip_g;
        while (i < p.t.size() || j < g.t.size()) {
            Mono gm;
            int cmpv;
            if (j < g.t.size()) gm = mono_mul(g.t[j].first, m, n);
            if (i == p.t.size()) cmpv = -1;
            else if (j == g.t.size()) cmpv = 1;
            else cmpv = ord_.cmp(p.t[i].first, gm);
            if (cmpv > 0) {
                r.t.push_back(p.t[i++]);
            } else if (cmpv < 0) {
                r.t.push_back({gm, -(c * g.t[j].second)});
                ++j;
            } else {
                K s = p.t[i].second - c * g.t[j].second;
                if (!s.is_zero()) r.t.push_back({gm, std::move(s)});
                ++i;
                ++j;
            }
        }
        r.sugar = std::max(p.sugar, g.sugar + m.deg);
        return r;
    }

    // A reduction step costs one unit plus the coefficient work of the multiple subtracted.
    void spend(std::size_t cost = 1) const {
        if (steps_left_ < cost) throw Error(ErrorKind::BudgetExhausted, "Groebner basis reduction budget exhausted");
        steps_left_ -= cost;
    }

    const GPoly<K>* find_reducer(const Mono& m, const std::vector<GPoly<K>>& basis) const {
        for (const auto& g : basis)
            if (mono_divides(g.t.front().first, m, ring_.size())) return &g;
        return nullptr;
    }

    // Top or full reduction against a monic basis.
    GPoly<K> reduce(GPoly<K> p, const std::vector<GPoly<K>>& basis, bool full) const {
        std::size_t n = ring_.size();
        GPoly<K> rem;
        std::size_t start = 0;
        while (start < p.t.size()) {
            const auto& lead = p.t[start];
            const GPoly<K>* g = find_reducer(lead.first, basis);
            if (g) {
                Mono q = mono_div(lead.first, g->t.front().first, n);
                K c = lead.second;
                spend(step_cost(c, *g));
                GPoly<K> next = sub_mul(p, c, q, *g, start + 1, 1);
                if (start > 0) {
                    std::vector<std::pair<Mono, K>> ts(p.t.begin(), p.t.begin() + static_cast<std::ptrdiff_t>(start));
                    rem.t.insert(rem.t.end(), std::make_move_iterator(ts.begin()), std::make_move_iterator(ts.end()));
                }
                p = std::move(next);
                start = 0;
            } else {
                if (!full) break;
                ++start;
            }
        }
        if (!full) return p;
        rem.t.insert(rem.t.end(), std::make_move_iterator(p.t.begin()), std::make_move_iterator(p.t.end()));
        rem.sugar = p.sugar;
        return rem;
    }

    GPoly<K> spoly(const GPoly<K>& f, const GPoly<K>& g) const {
        std::size_t n = ring_.size();
        Mono l = mono_lcm(f.t.front().first, g.t.front().first, n);
        Mono mf = mono_div(l, f.t.front().first, n);
        Mono mg = mono_div(l, g.t.front().first, n);
        GPoly<K> a;
        a.t.reserve(f.t.size());
        for (std::size_t i = 1; i < f.t.size(); ++i) a.t.push_back({mono_mul(f.t[i].first, mf, n), f.t[i].second});
        a.sugar = f.sugar + mf.deg;
        return sub_mul(a, K(1), mg, g, 0, 1);
    }

    struct Pair {
        std::size_t i, j;
        Mono lcm;
        std::uint32_t sugar;
    };

    void compute(const std::vector<MPoly>& gens) {
        steps_left_ = t_budget;
        std::size_t n = ring_.size();
        std::vector<GPoly<K>> polys;
        std::vector<bool> active;
        std::vector<Pair> pairs;

        auto update = [&](GPoly<K> h) {
            make_monic(h);
            std::size_t hi = polys.size();
            polys.push_back(std::move(h));
            active.push_back(true);
            const Mono& lh = polys[hi].t.front().first;
            std::vector<Pair> cand;
            for (std::size_t k = 0; k < hi; ++k) {
                if (!active[k]) continue;
                Mono l = mono_lcm(lh, polys[k].t.front().first, n);
                std::uint32_t s = std::max(polys[hi].sugar + (l.deg - lh.deg),
                                           polys[k].sugar + (l.deg - polys[k].t.front().first.deg));
                cand.push_back({k, hi, l, s});
            }
            // Gebauer-Moeller: keep (h, g) unless another candidate lcm properly divides it.
            std::vector<Pair> kept;
            for (std::size_t a = 0; a < cand.size(); ++a) {
                bool coprime = mono_coprime(lh, polys[cand[a].i].t.front().first, n);
                bool redundant = false;
                if (!coprime) {
                    for (std::size_t b = 0; b < cand.size() && !redundant; ++b) {
                        if (a == b) continue;
                        if (mono_divides(cand[b].lcm, cand[a].lcm, n)) {
                            if (!mono_eq(cand[b].lcm, cand[a].lcm, n) || b < a) redundant = true;
                        }
                    }
                }
                if (!redundant) kept.push_back(cand[a]);
            }
            std::vector<Pair> next;
            for (const auto& p : pairs) {
                const Mono& l = p.lcm;
                bool drop = mono_divides(lh, l, n) &&
                            !mono_eq(mono_lcm(polys[p.i].t.front().first, lh, n), l, n) &&
                            !mono_eq(mono_lcm(polys[p.j].t.front().first, lh, n), l, n);
                if (!drop) next.push_back(p);
            }
            for (const auto& p : kept)
                if (!mono_coprime(lh, polys[p.i].t.front().first, n)) next.push_back(p);
            pairs = std::move(next);
            for (std::size_t k = 0; k < hi; ++k)
                if (active[k] && mono_divides(lh, polys[k].t.front().first, n)) active[k] = false;
        };

        auto current_basis = [&]() {
            std::vector<GPoly<K>> b;
            for (std::size_t k = 0; k < polys.size(); ++k)
                if (active[k]) b.push_back(polys[k]);
            return b;
        };

        // Start from an interreduced input, smallest leading monomials first.
        std::vector<GPoly<K>> input;
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            input.push_back(convert(g));
        }
        std::sort(input.begin(), input.end(), [&](const auto& a, const auto& b) {
            return ord_.cmp(a.t.front().first, b.t.front().first) < 0;
        });
        for (auto& g : input) {
            GPoly<K> r = reduce(g, current_basis(), false);
            if (r.t.empty()) continue;
            if (r.t.front().first.deg == 0) {
                set_unit();
                return;
            }
            update(std::move(r));
        }

        std::vector<GPoly<K>> basis = current_basis();
        while (!pairs.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs.size(); ++k) {
                const auto& a = pairs[k];
                const auto& b = pairs[best];
                if (a.sugar < b.sugar || (a.sugar == b.sugar && ord_.cmp(a.lcm, b.lcm) < 0)) best = k;
            }
            Pair p = pairs[best];
            pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
            GPoly<K> s = spoly(polys[p.i], polys[p.j]);
            GPoly<K> r = reduce(std::move(s), basis, false);
            if (r.t.empty()) continue;
            if (r.t.front().first.deg == 0) {
                set_unit();
                return;
            }
            update(std::move(r));
            basis = current_basis();
        }

        // Interreduce to the reduced basis.
        std::vector<GPoly<K>> b = current_basis();
        std::sort(b.begin(), b.end(),
                  [&](const auto& x, const auto& y) { return ord_.cmp(x.t.front().first, y.t.front().first) < 0; });
        for (std::size_t k = 0; k < b.size(); ++k) {
            std::vector<GPoly<K>> others;
            for (std::size_t l = 0; l < b.size(); ++l)
                if (l != k) others.push_back(b[l]);
            GPoly<K> head;
            head.t.push_back(b[k].t.front());
            GPoly<K> tail = b[k];
            tail.t.erase(tail.t.begin());
            GPoly<K> red = reduce(std::move(tail), others, true);
            head.t.insert(head.t.end(), red.t.begin(), red.t.end());
            head.sugar = b[k].sugar;
            make_monic(head);
            b[k] = std::move(head);
        }
        basis_ = std::move(b);
    }

    void set_unit() {
        GPoly<K> one;
        one.t.push_back({Mono{}, K(1)});
        basis_ = {one};
    }

    std::size_t size() const override { return basis_.size(); }

    std::vector<RatFunc> monic() const override {
        std::vector<RatFunc> out;
        for (const auto& g : basis_) out.push_back(to_ratfunc(g));
        return out;
    }

    std::vector<Monomial> leading_monomials() const override {
        std::vector<Monomial> out;
        for (const auto& g : basis_) out.push_back(to_monomial(g.t.front().first));
        return out;
    }

    std::vector<std::vector<std::uint16_t>> lead_exponents() const override {
        std::vector<std::vector<std::uint16_t>> out;
        for (const auto& g : basis_) {
            const Mono& m = g.t.front().first;
            out.emplace_back(m.e.begin(), m.e.begin() + static_cast<std::ptrdiff_t>(ring_.size()));
        }
        return out;
    }

    RatFunc normal_form(const MPoly& f) const override {
        if (f.is_zero()) return RatFunc();
        steps_left_ = t_budget;
        GPoly<K> p = convert(f);
        return to_ratfunc(reduce(std::move(p), basis_, true));
    }

    bool verify() const override {
        steps_left_ = t_budget;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = i + 1; j < basis_.size(); ++j) {
                if (mono_coprime(basis_[i].t.front().first, basis_[j].t.front().first, ring_.size())) continue;
                if (!reduce(spoly(basis_[i], basis_[j]), basis_, true).t.empty()) return false;
            }
        return true;
    }

private:
    std::vector<Var> ring_;
    std::map<Var, std::size_t> index_;
    OrderCtx ord_;
    std::vector<GPoly<K>> basis_;
    mutable std::size_t steps_left_ = 0;
};

std::atomic<std::size_t> g_checked{0};

bool check_enabled() {
    const char* v = std::getenv("REPARAM_CHECK_GB");
    return v && *v && std::string(v) != "0";
}

}  // namespace

std::size_t default_gb_budget() { return t_budget; }

std::size_t gb_post_checks() { return g_checked.load(); }

GbBudgetScope::GbBudgetScope(std::size_t budget) : saved_(t_budget) { t_budget = budget; }
GbBudgetScope::~GbBudgetScope() { t_budget = saved_; }

GroebnerBasis::GroebnerBasis(const std::vector<MPoly>& gens, std::vector<Var> ring_vars, MonomialOrder ord)
    : ring_(std::move(ring_vars)), order_(ord) {
    std::set<Var> rs(ring_.begin(), ring_.end());
    bool has_params = false;
    for (const auto& g : gens)
        for (Var v : g.vars())
            if (!rs.count(v)) has_params = true;
    OrderCtx ctx{ord.kind, ring_.size(), ord.front};
    has_params_ = has_params;
    if (has_params) {
        auto impl = std::make_unique<GbImpl<RatFunc>>(ring_, ctx);
        impl->compute(gens);
        impl_ = std::move(impl);
    } else {
        auto impl = std::make_unique<GbImpl<Rational>>(ring_, ctx);
        impl->compute(gens);
        impl_ = std::move(impl);
    }
    if (check_enabled()) {
        if (!impl_->verify()) throw Error(ErrorKind::Internal, "Buchberger criterion check failed on computed basis");
        ++g_checked;
    }
}

GroebnerBasis::~GroebnerBasis() = default;
GroebnerBasis::GroebnerBasis(const GroebnerBasis& o)
    : ring_(o.ring_), order_(o.order_), has_params_(o.has_params_), impl_(o.impl_->clone()) {}
GroebnerBasis& GroebnerBasis::operator=(const GroebnerBasis& o) {
    if (this != &o) {
        ring_ = o.ring_;
        order_ = o.order_;
        has_params_ = o.has_params_;
        impl_ = o.impl_->clone();
    }
    return *this;
}

std::size_t GroebnerBasis::size() const { return impl_->size(); }

bool GroebnerBasis::is_unit() const {
    auto lm = impl_->leading_monomials();
    return lm.size() == 1 && lm[0].is_one();
}

std::vector<RatFunc> GroebnerBasis::monic() const { return impl_->monic(); }

MPoly ring_primitive(const MPoly& p, const std::set<Var>& ring) {
    if (p.is_zero()) return p;
    MPoly c;
    for (const auto& [m, coeff] : p.split(ring)) {
        c = poly_gcd(c, coeff);
        if (c.is_constant()) break;
    }
    return divide_exact(p, c)->primitive();
}

std::vector<MPoly> GroebnerBasis::cleared() const {
    std::vector<MPoly> out;
    std::set<Var> rs(ring_.begin(), ring_.end());
    for (const auto& f : impl_->monic()) out.push_back(ring_primitive(f.num(), rs));
    return out;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const { return impl_->leading_monomials(); }

RatFunc GroebnerBasis::normal_form(const MPoly& f) const {
    if (!has_params_) {
        std::set<Var> rs(ring_.begin(), ring_.end());
        for (Var v : f.vars())
            if (!rs.count(v)) {
                // Extend scalars to the fraction field of f's parameters.
                auto impl = std::make_unique<GbImpl<RatFunc>>(ring_, OrderCtx{order_.kind, ring_.size(), order_.front});
                impl->compute(cleared());
                return impl->normal_form(f);
            }
    }
    return impl_->normal_form(f);
}

bool GroebnerBasis::contains(const MPoly& f) const { return normal_form(f).is_zero(); }

bool GroebnerBasis::verify() const { return impl_->verify(); }

std::vector<Var> GroebnerBasis::independent_set() const {
    if (is_unit()) return {};
    auto leads = impl_->lead_exponents();
    std::size_t n = ring_.size();
    std::vector<bool> chosen(n, false), best;
    std::size_t best_size = 0;
    bool have = false;
    // S is independent iff no leading monomial is supported inside S.
    auto independent = [&](const std::vector<bool>& s) {
        for (const auto& e : leads) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (e[i] && !s[i]) inside = false;
            if (inside) return false;
        }
        return true;
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t count) {
        if (count + (n - i) <= best_size && have) return;
        if (i == n) {
            if (!have || count > best_size) {
                best = chosen;
                best_size = count;
                have = true;
            }
            return;
        }
        chosen[i] = true;
        if (independent(chosen)) rec(i + 1, count + 1);
        chosen[i] = false;
        rec(i + 1, count);
    };
    rec(0, 0);
    std::vector<Var> out;
    for (std::size_t i = 0; i < n; ++i)
        if (best[i]) out.push_back(ring_[i]);
    return out;
}

int GroebnerBasis::dimension() const {
    if (is_unit()) return -1;
    return static_cast<int>(independent_set().size());
}

std::optional<std::size_t> GroebnerBasis::quotient_dimension() const {
    if (is_unit()) return 0;
    auto leads = impl_->lead_exponents();
    std::size_t n = ring_.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool pure = false;
        for (const auto& e : leads) {
            bool ok = e[i] > 0;
            for (std::size_t j = 0; j < n && ok; ++j)
                if (j != i && e[j]) ok = false;
            if (ok) pure = true;
        }
        if (!pure) return std::nullopt;
    }
    auto standard = [&](const std::vector<std::uint16_t>& m) {
        for (const auto& e : leads) {
            bool div = true;
            for (std::size_t j = 0; j < n && div; ++j)
                if (e[j] > m[j]) div = false;
            if (div) return false;
        }
        return true;
    };
    std::set<std::vector<std::uint16_t>> seen;
    std::vector<std::vector<std::uint16_t>> frontier{std::vector<std::uint16_t>(n, 0)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        auto m = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            auto next = m;
            ++next[i];
            if (seen.count(next) || !standard(next)) continue;
            seen.insert(next);
            frontier.push_back(next);
        }
    }
    return seen.size();
}

std::vector<MPoly> eliminate(const std::vector<MPoly>& gens, const std::vector<Var>& front, const std::vector<Var>& rest) {
    std::vector<Var> ring = front;
    ring.insert(ring.end(), rest.begin(), rest.end());
    GroebnerBasis gb(gens, ring, MonomialOrder::block(front.size()));
    std::set<Var> fs(front.begin(), front.end());
    std::vector<MPoly> out;
    for (const auto& g : gb.cleared())
        if (!g.involves_any(fs)) out.push_back(g);
    return out;
}

namespace {

Var sat_var() {
    static const Var v = intern("_sat");
    return v;
}

// Saturates by one polynomial with the extra-variable construction.
std::vector<MPoly> saturate_single(const std::vector<MPoly>& gens, const MPoly& f, const std::vector<Var>& ring) {
    Var t = sat_var();
    std::vector<MPoly> g = gens;
    g.push_back(MPoly::var(t) * f - MPoly(1));
    return eliminate(g, {t}, ring);
}

}  // namespace

std::vector<MPoly> saturate(const std::vector<MPoly>& gens, const MPoly& f, const std::vector<Var>& ring) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "saturation by zero");
    std::set<Var> rs(ring.begin(), ring.end());
    std::vector<MPoly> cur = gens;
    bool any = false;
    if (f.involves_any(rs)) {
        for (const auto& [g, e] : factor(f).factors) {
            if (!g.involves_any(rs)) continue;
            cur = saturate_single(cur, g, ring);
            any = true;
        }
    }
    if (!any) return GroebnerBasis(gens, ring, MonomialOrder::grevlex()).cleared();
    return GroebnerBasis(cur, ring, MonomialOrder::grevlex()).cleared();
}

std::vector<MPoly> intersect(const std::vector<MPoly>& a, const std::vector<MPoly>& b, const std::vector<Var>& ring) {
    Var t = sat_var();
    std::vector<MPoly> g;
    for (const auto& p : a) g.push_back(MPoly::var(t) * p);
    for (const auto& p : b) g.push_back((MPoly(1) - MPoly::var(t)) * p);
    return eliminate(g, {t}, ring);
}

std::vector<MPoly> quotient(const std::vector<MPoly>& i, const std::vector<MPoly>& j, const std::vector<Var>& ring) {
    std::vector<MPoly> result;
    bool first = true;
    std::set<Var> rs(ring.begin(), ring.end());
    for (const auto& g0 : j) {
        if (g0.is_zero()) continue;
        MPoly g = ring_primitive(g0, rs);
        std::vector<MPoly> inter = intersect(i, {g}, ring);
        std::vector<MPoly> q;
        for (const auto& p : inter) {
            auto d = divide_exact(p, g);
            if (!d) throw Error(ErrorKind::Internal, "ideal quotient: inexact division");
            q.push_back(*d);
        }
        if (first) {
            result = q;
            first = false;
        } else {
            result = intersect(result, q, ring);
        }
    }
    if (first) return {MPoly(1)};
    return GroebnerBasis(result, ring, MonomialOrder::grevlex()).cleared();
}

bool ideal_membership(const MPoly& f, const std::vector<MPoly>& gens, const std::vector<Var>& ring) {
    return GroebnerBasis(gens, ring, MonomialOrder::grevlex()).contains(f);
}

bool ideal_contains(const std::vector<MPoly>& big, const std::vector<MPoly>& small, const std::vector<Var>& ring) {
    GroebnerBasis gb(big, ring, MonomialOrder::grevlex());
    for (const auto& f : small)
        if (!gb.contains(f)) return false;
    return true;
}

int ideal_dimension(const std::vector<MPoly>& gens, const std::vector<Var>& ring) {
    GroebnerBasis gb(gens, ring, MonomialOrder::grevlex());
    if (gb.is_unit()) throw Error(ErrorKind::EmptyVariety, "ideal is the whole ring");
    return gb.dimension();
}

namespace {

struct Leaf {
    std::vector<MPoly> gens;
    bool certified;
};

// Distinct factors of p that involve ring variables (others are units).
std::vector<MPoly> ring_factors(const MPoly& p, const std::set<Var>& rs) {
    std::vector<MPoly> out;
    for (const auto& [g, e] : factor(p).factors)
        if (g.involves_any(rs)) out.push_back(g);
    return out;
}

void branch(const std::vector<MPoly>& gens, const std::vector<Var>& ring, std::vector<Leaf>& leaves, int depth) {
    if (depth > 64) throw Error(ErrorKind::SplitIncomplete, "component splitting did not terminate");
    GroebnerBasis gb(gens, ring, MonomialOrder::grevlex());
    if (gb.is_unit()) return;
    std::vector<MPoly> basis = gb.cleared();
    std::set<Var> rs(ring.begin(), ring.end());
    for (const auto& g : basis) {
        auto fs = ring_factors(g, rs);
        bool reducible = fs.size() > 1 || (fs.size() == 1 && !(fs[0] == g.primitive()) &&
                                            divide_exact(g, fs[0]).value().involves_any(rs));
        if (!reducible) continue;
        for (const auto& f : fs) {
            std::vector<MPoly> next = basis;
            next.push_back(f);
            branch(next, ring, leaves, depth + 1);
        }
        return;
    }
    bool certified = true;
    for (const auto& g : basis) {
        std::uint32_t d = 0;
        for (const auto& t : g.terms()) d = std::max(d, t.m.restrict(rs, true).degree());
        if (d > 2) certified = false;
    }
    leaves.push_back({basis, certified});
}

std::string key(const std::vector<MPoly>& gens) {
    std::string s;
    for (const auto& g : gens) s += g.str() + ";";
    return s;
}

std::vector<Leaf> minimal_leaves(const std::vector<MPoly>& gens, const std::vector<Var>& ring) {
    std::vector<Leaf> leaves;
    branch(gens, ring, leaves, 0);
    std::vector<Leaf> uniq;
    std::set<std::string> seen;
    for (auto& l : leaves)
        if (seen.insert(key(l.gens)).second) uniq.push_back(l);
    std::vector<Leaf> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < uniq.size() && !redundant; ++j) {
            if (i == j) continue;
            // Drop i when it strictly contains j.
            if (ideal_contains(uniq[i].gens, uniq[j].gens, ring)) redundant = true;
        }
        if (!redundant) out.push_back(uniq[i]);
    }
    return out;
}

// Product of the leading coefficients in Q[params, U] of a basis for the
// block order rest > U; I : h^inf is then the contraction of I from Q(U)[rest].
MPoly localizing_factor(const std::vector<MPoly>& I, const std::vector<Var>& rest, const std::vector<Var>& U) {
    std::vector<Var> ring = rest;
    ring.insert(ring.end(), U.begin(), U.end());
    GroebnerBasis gb(I, ring, MonomialOrder::block(rest.size()));
    std::set<Var> rs(rest.begin(), rest.end()), us(U.begin(), U.end());
    auto elems = gb.cleared();
    auto leads = gb.leading_monomials();
    MPoly h(1);
    for (std::size_t k = 0; k < elems.size(); ++k) {
        Monomial lead = leads[k].restrict(rs, true);
        MPoly lc = elems[k].split(rs).at(lead);
        if (!lc.involves_any(us)) continue;
        for (const auto& [g, e] : factor(lc).factors)
            if (g.involves_any(us)) h = poly_lcm(h, g);
    }
    return h;
}

}  // namespace

std::vector<Component> split_components(const std::vector<MPoly>& gens, const std::vector<Var>& ring) {
    GroebnerBasis base(gens, ring, MonomialOrder::grevlex());
    if (base.is_unit()) throw Error(ErrorKind::EmptyVariety, "ideal is the whole ring");
    std::vector<MPoly> I = base.cleared();
    std::vector<Leaf> primes = minimal_leaves(I, ring);

    std::vector<Component> out;
    for (const auto& p : primes) {
        GroebnerBasis gb(p.gens, ring, MonomialOrder::grevlex());
        out.push_back({p.gens, gb.dimension(), p.certified, false});
    }

    // Radical case: the intersection of the minimal primes is I itself.
    std::vector<MPoly> inter = primes[0].gens;
    for (std::size_t k = 1; k < primes.size(); ++k) inter = intersect(inter, primes[k].gens, ring);
    if (!ideal_contains(I, inter, ring)) {
        // Isolated primary components I : (h_i s_i)^inf, then embedded primes of I : J.
        std::vector<MPoly> J;
        for (std::size_t k = 0; k < primes.size(); ++k) {
            GroebnerBasis pk(primes[k].gens, ring, MonomialOrder::grevlex());
            std::vector<Var> U = pk.independent_set();
            std::vector<Var> rest;
            for (Var v : ring)
                if (std::find(U.begin(), U.end(), v) == U.end()) rest.push_back(v);
            MPoly s(1);
            for (std::size_t j = 0; j < primes.size(); ++j) {
                if (j == k) continue;
                for (const auto& g : primes[j].gens)
                    if (!pk.contains(g)) {
                        s *= g;
                        break;
                    }
            }
            std::vector<MPoly> Q = I;
            if (!U.empty() && !rest.empty()) {
                MPoly h = localizing_factor(I, rest, U);
                if (!h.is_constant()) Q = saturate(Q, h, ring);
            }
            if (!s.is_constant()) Q = saturate(Q, s, ring);
            J = k == 0 ? Q : intersect(J, Q, ring);
        }
        if (!ideal_contains(I, J, ring)) {
            std::vector<MPoly> colon = quotient(I, J, ring);
            for (const auto& e : minimal_leaves(colon, ring)) {
                bool known = false;
                for (const auto& c : out)
                    if (ideal_contains(c.gens, e.gens, ring) && ideal_contains(e.gens, c.gens, ring)) known = true;
                if (known) continue;
                GroebnerBasis gb(e.gens, ring, MonomialOrder::grevlex());
                out.push_back({e.gens, gb.dimension(), e.certified, true});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
        if (a.embedded != b.embedded) return !a.embedded;
        if (a.dimension != b.dimension) return a.dimension > b.dimension;
        if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
        return key(a.gens) < key(b.gens);
    });
    return out;
}

}  // namespace reparam
