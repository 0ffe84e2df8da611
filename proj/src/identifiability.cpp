#include "reparam/identifiability.hpp"

#include "reparam/error.hpp"
#include "reparam/groebner.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>
#include <random>

namespace reparam {

namespace {

struct Graph {
    std::vector<MPoly> gens;
    std::vector<Var> front;  // W (if needed) followed by the parameters
};

// den_i * h_i - num_i together with W * D - 1 for the parameter denominators.
Graph graph_ideal(const std::vector<Var>& h, const std::vector<RatFunc>& defs, const std::vector<Var>& params) {
    Graph g;
    std::set<Var> ps(params.begin(), params.end());
    MPoly d(1);
    for (std::size_t i = 0; i < h.size(); ++i) {
        g.gens.push_back(defs[i].den() * MPoly::var(h[i]) - defs[i].num());
        d = poly_lcm(d, defs[i].den());
    }
    MPoly dd(1);
    for (const auto& [f, e] : factor(d).factors)
        if (f.involves_any(ps)) dd *= f;
    if (!dd.is_constant()) {
        Var w = fresh_var("_w");
        g.gens.push_back(MPoly::var(w) * dd - MPoly(1));
        g.front.push_back(w);
    }
    g.front.insert(g.front.end(), params.begin(), params.end());
    return g;
}

UPoly monic_in(const RatFunc& e, Var t) {
    UPoly u = to_upoly(e.num(), t);
    RatFunc lc = u.back() / RatFunc(e.den());
    for (auto& c : u) c = c / RatFunc(e.den()) / lc;
    return u;
}

std::vector<Var> fresh_gens(std::size_t n) {
    std::vector<Var> h;
    for (std::size_t i = 0; i < n; ++i) h.push_back(fresh_var("_h"));
    return h;
}

}  // namespace

Algebraicity is_algebraic_over(const RatFunc& f, const std::vector<Var>& h, const std::vector<RatFunc>& defs,
                               const std::vector<Var>& params) {
    Graph g = graph_ideal(h, defs, params);
    Var t = fresh_var("_t");
    g.gens.push_back(f.den() * MPoly::var(t) - f.num());
    auto elim = eliminate(g.gens, g.front, {t});
    Algebraicity out;
    if (elim.empty()) return out;
    const MPoly* best = nullptr;
    for (const auto& e : elim)
        if (!best || e.degree(t) < best->degree(t)) best = &e;
    if (best->degree(t) == 0) throw Error(ErrorKind::Internal, "elimination ideal is the unit ideal");
    out.algebraic = true;
    out.min_poly = monic_in(RatFunc(*best), t);
    return out;
}

Algebraicity is_algebraic_over(const RatFunc& f, const std::vector<RatFunc>& gens, const std::vector<Var>& params) {
    return is_algebraic_over(f, fresh_gens(gens.size()), gens, params);
}

std::vector<std::size_t> independent_subset(const std::vector<RatFunc>& gens, const std::vector<Var>& params) {
    std::vector<std::size_t> idx;
    std::vector<RatFunc> chosen;
    for (std::size_t i = 0; i < gens.size() && chosen.size() < params.size(); ++i) {
        chosen.push_back(gens[i]);
        if (jacobian_of(chosen, params).rank() == chosen.size()) {
            idx.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    return idx;
}

bool in_field(const RatFunc& f, const std::vector<RatFunc>& gens, const std::vector<Var>& params) {
    if (f.is_constant()) return true;
    if (gens.empty()) return false;
    auto basis = independent_subset(gens, params);
    std::vector<Var> hb, ha;
    std::vector<RatFunc> defs_b, defs_a;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (std::find(basis.begin(), basis.end(), i) != basis.end()) {
            hb.push_back(fresh_var("_h"));
            defs_b.push_back(gens[i]);
        } else {
            ha.push_back(fresh_var("_a"));
            defs_a.push_back(gens[i]);
        }
    }
    if (ha.empty()) {
        auto alg = is_algebraic_over(f, hb, defs_b, params);
        return alg.algebraic && alg.min_poly.size() == 2;
    }
    std::vector<Var> all = hb;
    all.insert(all.end(), ha.begin(), ha.end());
    std::vector<RatFunc> defs = defs_b;
    defs.insert(defs.end(), defs_a.begin(), defs_a.end());
    Graph g = graph_ideal(all, defs, params);
    Var t = fresh_var("_t");
    g.gens.push_back(f.den() * MPoly::var(t) - f.num());
    std::vector<Var> rest{t};
    rest.insert(rest.end(), ha.begin(), ha.end());
    auto elim = eliminate(g.gens, g.front, rest);
    if (elim.empty()) return false;
    GroebnerBasis gb(elim, rest, MonomialOrder::block(1));
    for (const auto& m : gb.leading_monomials())
        if (m == Monomial::of(t)) return true;
    return false;
}

namespace {

// e = c - q with q free of the front variables.
std::optional<RatFunc> solved_for(const RatFunc& e, Var c, const std::set<Var>& front) {
    if (!e.num().involves(c)) return std::nullopt;
    RatFunc q = RatFunc::var(c) - e;
    if (q.involves_any(front)) return std::nullopt;
    return q;
}

std::optional<TowerReport> try_alpha(const TowerReport& base, const Graph& g, const std::vector<Rational>& coeffs,
                                     std::size_t n, Var a) {
    std::vector<MPoly> gens = g.gens;
    MPoly comb;
    RatFunc def;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        comb += MPoly::var(base.params[i]).scaled(coeffs[i]);
        def += RatFunc::var(base.params[i]) * RatFunc(coeffs[i]);
    }
    gens.push_back(MPoly::var(a) - comb);
    std::vector<Var> ring = g.front;
    ring.push_back(a);
    GroebnerBasis gb(gens, ring, MonomialOrder::block(g.front.size()));
    std::set<Var> fr(g.front.begin(), g.front.end());
    TowerReport t = base;
    bool found = false;
    for (const auto& e : gb.monic()) {
        if (e.involves_any(fr)) continue;
        if (e.num().degree(a) != n) return std::nullopt;
        t.tower.min_poly = monic_in(e, a);
        found = true;
    }
    if (!found) return std::nullopt;
    for (const auto& e : gb.monic()) {
        for (Var c : base.params)
            if (auto q = solved_for(e, c, fr)) t.tower.param_values.emplace_back(c, *q);
    }
    if (t.tower.param_values.size() != base.params.size()) return std::nullopt;
    t.tower.alpha = a;
    t.tower.alpha_definition = def;
    t.alpha_coeffs = coeffs;
    return t;
}

}  // namespace

TowerReport build_field_tower(const std::vector<Var>& params, const std::vector<RatFunc>& gens, std::uint64_t seed,
                              std::size_t max_draws) {
    if (independent_subset(gens, params).size() != gens.size())
        throw Error(ErrorKind::UnsupportedExtension, "identifiable generators are algebraically dependent");
    TowerReport r;
    r.params = params;
    r.tower.gens = fresh_gens(gens.size());
    r.tower.definitions = gens;
    for (Var c : params) {
        if (is_algebraic_over(RatFunc::var(c), r.tower.gens, r.tower.definitions, params).algebraic) continue;
        r.tower.gens.push_back(fresh_var("_h"));
        r.tower.definitions.push_back(RatFunc::var(c));
        r.transcendental.push_back(c);
    }
    Graph g = graph_ideal(r.tower.gens, r.tower.definitions, params);
    auto n = GroebnerBasis(g.gens, g.front, MonomialOrder::grevlex()).quotient_dimension();
    if (!n) throw Error(ErrorKind::Internal, "parameters not algebraic over the tower base");
    if (*n == 1) {
        GroebnerBasis gb(g.gens, g.front, MonomialOrder::grevlex());
        for (const auto& e : gb.monic())
            for (Var c : params)
                if (auto q = solved_for(e, c, {g.front.begin(), g.front.end()})) r.tower.param_values.emplace_back(c, *q);
        return r;
    }
    Var a = fresh_var("_alpha");
    for (std::size_t i = 0; i < params.size(); ++i) {
        std::vector<Rational> coeffs(params.size(), Rational(0));
        coeffs[i] = Rational(1);
        if (auto t = try_alpha(r, g, coeffs, *n, a)) return *t;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-10, 10);
    for (std::size_t k = 0; k < max_draws; ++k) {
        std::vector<Rational> coeffs;
        int nonzero = 0;
        for (std::size_t i = 0; i < params.size(); ++i) {
            int v = dist(rng);
            nonzero += v != 0;
            coeffs.emplace_back(v);
        }
        ++r.draws;
        if (nonzero < 2) continue;
        if (auto t = try_alpha(r, g, coeffs, *n, a)) {
            t->draws = r.draws;
            return *t;
        }
    }
    throw Error(ErrorKind::PrimitiveSearchExhausted,
                "no primitive element after " + std::to_string(max_draws) + " random combinations");
}

RatFunc express_in_tower(const RatFunc& f, const TowerReport& t) {
    std::map<Var, RatFunc> sub(t.tower.param_values.begin(), t.tower.param_values.end());
    RatFunc r = f.substitute(sub);
    if (t.tower.alpha) r = reduce_mod_minpoly(r, t.tower);
    if (!(t.tower.to_params(r) == f)) throw Error(ErrorKind::NotInTower, f.str() + " is not in the tower");
    return r;
}

std::map<Var, RatFunc> display_names(const TowerReport& t, const OdeModel& m) {
    std::set<std::string> taken;
    for (const auto* vs : {&m.states, &m.params, &m.inputs, &m.outputs})
        for (Var v : *vs) taken.insert(var_name(v));
    std::vector<std::size_t> others;
    std::map<Var, RatFunc> out;
    for (std::size_t i = 0; i < t.tower.gens.size(); ++i) {
        const RatFunc& d = t.tower.definitions[i];
        if (d.is_polynomial() && d.num().size() == 1 && d.num().lc().is_one() && d.num().lm().degree() == 1)
            out[t.tower.gens[i]] = d;
        else
            others.push_back(i);
    }
    std::string base = "h";
    for (const char* cand : {"h", "eta", "theta", "kappa"}) {
        base = cand;
        bool clash = taken.count(base) > 0;
        for (std::size_t k = 1; k <= others.size() && !clash; ++k) clash = taken.count(base + std::to_string(k)) > 0;
        if (!clash) break;
    }
    for (std::size_t k = 0; k < others.size(); ++k) {
        std::string name = others.size() == 1 ? base : base + std::to_string(k + 1);
        out[t.tower.gens[others[k]]] = RatFunc::var(intern(name));
    }
    return out;
}

namespace {

// Solves for parameters of the evaluated generators so each is mapped back
// to its original; nullopt if some generator is not linear in a free parameter.
std::optional<std::map<Var, RatFunc>> induced_rewrite(const std::vector<RatFunc>& gens,
                                                      const std::map<Var, RatFunc>& sub,
                                                      const std::vector<Var>& remaining) {
    std::map<Var, RatFunc> rho;
    for (const auto& g : gens) {
        RatFunc ga = g.substitute(sub);
        if (ga.substitute(rho) == g) continue;
        bool solved = false;
        for (Var v : remaining) {
            if (rho.count(v) || !ga.num().involves(v) || ga.den().involves(v) || ga.num().degree(v) != 1) continue;
            auto cs = ga.num().coeffs_in(v);
            RatFunc a = RatFunc(cs[1], ga.den()).substitute(rho);
            RatFunc b = RatFunc(cs[0], ga.den()).substitute(rho);
            rho[v] = (g - b) / a;
            solved = true;
            break;
        }
        if (!solved) return std::nullopt;
    }
    for (const auto& g : gens)
        if (!(g.substitute(sub).substitute(rho) == g)) return std::nullopt;
    return rho;
}

}  // namespace

Evaluation suitable_evaluation(const OdeModel& m, const Parametrization& p, const std::vector<RatFunc>& gens,
                               const std::vector<IoEquation>& eqs, const std::vector<Var>& trans, std::uint64_t seed,
                               const std::map<Var, Rational>& fixed, std::size_t max_attempts) {
    Evaluation ev;
    for (const auto& [v, _] : fixed)
        if (std::find(trans.begin(), trans.end(), v) == trans.end())
            throw Error(ErrorKind::InvalidArgument, var_name(v) + " is not a transcendental residual parameter");
    if (trans.empty()) {
        ev.model = m;
        return ev;
    }
    std::vector<Var> params = m.used_params();
    std::vector<Var> remaining;
    for (Var c : params)
        if (std::find(trans.begin(), trans.end(), c) == trans.end()) remaining.push_back(c);
    std::size_t rank_p = jacobian(p).rank();
    std::size_t rank_h = gens.empty() ? 0 : jacobian_of(gens, params).rank();
    std::optional<std::size_t> fiber;
    try {
        auto pr = properness_check(p);
        if (pr.proper) fiber = pr.fiber_degree;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InfiniteFiber) throw;
    }
    bool all_fixed = std::all_of(trans.begin(), trans.end(), [&](Var v) { return fixed.count(v) > 0; });
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-10, 10);
    std::string last = "no attempt";
    for (std::size_t k = 0; k < (all_fixed ? 1 : max_attempts); ++k) {
        ++ev.attempts;
        std::map<Var, Rational> assign;
        std::map<Var, RatFunc> sub;
        for (Var v : trans) {
            auto it = fixed.find(v);
            assign[v] = it != fixed.end() ? it->second : Rational(dist(rng));
            sub[v] = RatFunc(assign[v]);
        }
        try {
            Parametrization pa = p;
            for (auto& row : pa.comps)
                for (auto& c : row) c = c.substitute(sub);
            if (jacobian(pa).rank() != rank_p) {
                last = "rank of J(P) drops";
                continue;
            }
            std::vector<RatFunc> ga;
            for (const auto& g : gens) ga.push_back(g.substitute(sub));
            if (!ga.empty() && (remaining.empty() || jacobian_of(ga, remaining).rank() != rank_h)) {
                last = "rank of J(h) drops";
                continue;
            }
            auto rho = induced_rewrite(gens, sub, remaining);
            if (!rho) {
                last = "no linear rewrite keeps the identifiable functions";
                continue;
            }
            bool same = true;
            for (const auto& e : eqs)
                for (const auto& c : e.normalized_coeffs)
                    if (!(c.substitute(sub).substitute(*rho) == c)) same = false;
            if (!same) {
                last = "IO coefficients change";
                continue;
            }
            if (fiber) {
                auto pr = properness_check(pa);
                if (!pr.proper || pr.fiber_degree != *fiber) {
                    last = "properness lost";
                    continue;
                }
            }
            ev.assignment = assign;
            ev.rewrite = *rho;
            ev.model = m.substitute_params(sub);
            return ev;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ZeroDenominator && e.kind() != ErrorKind::InfiniteFiber) throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::EvaluationSearchExhausted, "no suitable evaluation (" + last + ")");
}

}  // namespace reparam
