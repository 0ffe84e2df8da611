#include "reparam/io.hpp"

#include "reparam/error.hpp"
#include "reparam/groebner.hpp"
#include "reparam/identifiability.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>

namespace reparam {

int output_order(const OdeModel& m, std::size_t i) {
    std::vector<RatFunc> rows{m.output_exprs[i]};
    std::size_t rank = jacobian_of(rows, m.states).rank();
    if (rank == 0) return 0;
    while (true) {
        rows.push_back(lie_derivative(rows.back(), m));
        std::size_t k = jacobian_of(rows, m.states).rank();
        if (k == rank) return static_cast<int>(rows.size()) - 1;
        rank = k;
    }
}

std::set<Var> signal_vars(const MPoly& p, const OdeModel& m) {
    std::set<Var> out;
    for (Var v : p.vars()) {
        const std::string& name = var_name(v);
        auto us = name.rfind('_');
        if (derivative_order(v) == 0 && us != std::string::npos && us + 1 < name.size() &&
            name.find_first_not_of("0123456789", us + 1) == std::string::npos && is_interned(name.substr(0, us))) {
            Var b = intern(name.substr(0, us));
            bool sig = std::find(m.outputs.begin(), m.outputs.end(), b) != m.outputs.end() ||
                       std::find(m.inputs.begin(), m.inputs.end(), b) != m.inputs.end();
            if (sig) derivative_var(b, std::stoi(name.substr(us + 1)));
        }
        Var b = base_var(v);
        if (std::find(m.outputs.begin(), m.outputs.end(), b) != m.outputs.end() || is_input_var(v, m)) out.insert(v);
    }
    return out;
}

namespace {

struct RankKey {
    int top;
    std::uint32_t degree;
};

// Highest output derivative first, then total degree, then grevlex.
bool ranks_higher(const Monomial& a, const Monomial& b, Var y) {
    auto top = [&](const Monomial& m) {
        int t = -1;
        for (const auto& [v, e] : m.factors())
            if (base_var(v) == y) t = std::max(t, derivative_order(v));
        return t;
    };
    int ta = top(a), tb = top(b);
    if (ta != tb) return ta > tb;
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return grevlex_cmp(a, b) > 0;
}

}  // namespace

IoEquation make_io_equation(const MPoly& poly, const OdeModel& m, std::size_t i) {
    IoEquation eq;
    eq.output_index = i;
    std::set<Var> sig = signal_vars(poly, m);
    MPoly p = ring_primitive(poly, sig);
    auto parts = p.split(sig);
    const Monomial* lead = nullptr;
    for (const auto& [mono, c] : parts)
        if (!lead || ranks_higher(mono, *lead, m.outputs[i])) lead = &mono;
    if (!lead) throw Error(ErrorKind::Internal, "empty IO polynomial");
    MPoly lc = parts.at(*lead);
    if (lc.lc().sign() < 0) {
        p = -p;
        lc = -lc;
        for (auto& [mono, c] : parts) c = -c;
    }
    eq.poly = p;
    eq.leading = *lead;
    eq.order = -1;
    for (Var v : p.vars())
        if (base_var(v) == m.outputs[i]) eq.order = std::max(eq.order, derivative_order(v));
    for (const auto& [mono, c] : parts)
        if (!(mono == *lead)) eq.normalized_coeffs.push_back(RatFunc(c, lc));
    return eq;
}

namespace {

// Numerator of p with x replaced by -b/a.
MPoly substitute_linear(const MPoly& p, Var x, const MPoly& a, const MPoly& b) {
    auto cs = p.coeffs_in(x);
    if (cs.size() <= 1) return p;
    std::size_t n = cs.size() - 1;
    MPoly acc;
    MPoly nb = -b;
    for (std::size_t e = 0; e <= n; ++e) {
        if (cs[e].is_zero()) continue;
        acc += cs[e] * nb.pow(static_cast<unsigned>(e)) * a.pow(static_cast<unsigned>(n - e));
    }
    return acc;
}

RatFunc chain_residual(const MPoly& f, const std::vector<Var>& ys, const std::vector<RatFunc>& chain) {
    std::map<Var, RatFunc> sub;
    for (std::size_t j = 0; j < ys.size(); ++j) sub[ys[j]] = chain[j];
    return RatFunc(f).substitute(sub);
}

}  // namespace

std::vector<IoEquation> io_equations(const OdeModel& m) {
    std::vector<IoEquation> out;
    for (std::size_t i = 0; i < m.outputs.size(); ++i) {
        int n = output_order(m, i);
        std::vector<RatFunc> chain{m.output_exprs[i]};
        for (int j = 0; j < n; ++j) chain.push_back(lie_derivative(chain.back(), m));
        std::vector<MPoly> gens;
        std::vector<Var> ys;
        MPoly den(1);
        for (int j = 0; j <= n; ++j) {
            Var y = derivative_var(m.outputs[i], j);
            ys.push_back(y);
            const RatFunc& c = chain[static_cast<std::size_t>(j)];
            gens.push_back(c.num() - MPoly::var(y) * c.den());
            den = poly_lcm(den, c.den());
        }
        std::set<Var> xs(m.states.begin(), m.states.end());
        MPoly h(1);
        for (const auto& [f, e] : factor(den).factors)
            if (f.involves_any(xs)) h *= f;
        // States occurring linearly with a state-free coefficient are solved for.
        std::vector<Var> left = m.states;
        for (bool progress = true; progress;) {
            progress = false;
            std::set<Var> ls(left.begin(), left.end());
            for (std::size_t k = 0; k < left.size() && !progress; ++k) {
                Var x = left[k];
                for (std::size_t g = 0; g < gens.size() && !progress; ++g) {
                    if (gens[g].degree(x) != 1) continue;
                    auto cs = gens[g].coeffs_in(x);
                    if (cs[1].involves_any(ls)) continue;
                    MPoly a = cs[1], b = cs[0];
                    std::vector<MPoly> next;
                    for (std::size_t o = 0; o < gens.size(); ++o) {
                        if (o == g) continue;
                        MPoly q = substitute_linear(gens[o], x, a, b);
                        if (!q.is_zero()) next.push_back(q);
                    }
                    gens = std::move(next);
                    h = substitute_linear(h, x, a, b);
                    left.erase(left.begin() + static_cast<std::ptrdiff_t>(k));
                    progress = true;
                }
            }
        }
        std::set<Var> ls(left.begin(), left.end());
        std::vector<MPoly> elim;
        if (left.empty()) {
            elim = gens;
        } else {
            std::vector<Var> front;
            MPoly hs(1);
            for (const auto& [f, e] : factor(h).factors)
                if (f.involves_any(ls)) hs *= f;
            if (!hs.is_constant()) {
                Var w = fresh_var("_w");
                front.push_back(w);
                gens.push_back(MPoly::var(w) * hs - MPoly(1));
            }
            front.insert(front.end(), left.begin(), left.end());
            elim = eliminate(gens, front, ys);
        }
        std::set<Var> ysig(ys.begin(), ys.end());
        std::vector<MPoly> found;
        for (const auto& g : elim) {
            for (const auto& [f, e] : factor(g).factors) {
                if (!f.involves_any(ysig) || f.involves_any(ls)) continue;
                if (!chain_residual(f, ys, chain).is_zero()) continue;
                bool dup = false;
                for (const auto& o : found) dup = dup || proportional(o, f, signal_vars(f, m));
                if (!dup) found.push_back(f);
            }
        }
        if (found.empty())
            throw Error(ErrorKind::EliminationFailed, "no relation among the derivatives of " + var_name(m.outputs[i]));
        std::sort(found.begin(), found.end(), [](const MPoly& a, const MPoly& b) {
            return std::make_pair(a.degree(), a.size()) < std::make_pair(b.degree(), b.size());
        });
        for (const auto& f : found) {
            IoEquation eq = make_io_equation(f, m, i);
            eq.principal = found.size() == 1;
            out.push_back(std::move(eq));
        }
    }
    return out;
}

RatFunc io_residual(const IoEquation& eq, const OdeModel& m) {
    std::map<Var, RatFunc> sub;
    RatFunc c = m.output_exprs[eq.output_index];
    int top = std::max(eq.order, 0);
    for (int j = 0; j <= top; ++j) {
        sub[derivative_var(m.outputs[eq.output_index], j)] = c;
        if (j < top) c = lie_derivative(c, m);
    }
    return RatFunc(eq.poly).substitute(sub);
}

bool proportional(const MPoly& a, const MPoly& b, const std::set<Var>& sig) {
    auto pa = a.split(sig), pb = b.split(sig);
    if (pa.size() != pb.size()) return false;
    std::optional<RatFunc> ratio;
    for (const auto& [mono, c] : pa) {
        auto it = pb.find(mono);
        if (it == pb.end()) return false;
        RatFunc r(c, it->second);
        if (!ratio) ratio = r;
        else if (!(r == *ratio)) return false;
    }
    return true;
}

namespace {

// Drops rational factors; a generator with constant numerator is inverted.
RatFunc strip_scale(const RatFunc& g) {
    MPoly n = g.num().primitive(), d = g.den().primitive();
    if (n.is_constant()) std::swap(n, d);
    if (n.lc().sign() < 0) n = -n;
    return RatFunc(n, d);
}

// Power products of the leading monomials of gs equal to target.
std::optional<std::vector<unsigned>> lead_exponents(const Monomial& target, const std::vector<MPoly>& gs,
                                                    std::size_t k, std::vector<unsigned>& e) {
    if (k == gs.size()) {
        if (target.is_one()) return e;
        return std::nullopt;
    }
    const Monomial& l = gs[k].lm();
    Monomial t = target;
    for (unsigned p = 0;; ++p) {
        e[k] = p;
        if (auto r = lead_exponents(t, gs, k + 1, e)) return r;
        if (l.is_one() || !l.divides(t)) break;
        t = l.cofactor(t);
    }
    e[k] = 0;
    return std::nullopt;
}

// Subtracts power products of the other polynomial generators while the
// leading term matches; keeps the result if it is simpler.
RatFunc subalgebra_reduce(const RatFunc& g, const std::vector<RatFunc>& others) {
    if (!g.is_polynomial()) return g;
    std::vector<MPoly> ps;
    for (const auto& o : others)
        if (o.is_polynomial() && !o.is_constant() && !(o == g)) ps.push_back(o.as_poly());
    if (ps.empty()) return g;
    MPoly p = g.as_poly();
    for (int step = 0; step < 16 && !p.is_constant(); ++step) {
        std::vector<unsigned> e(ps.size(), 0);
        auto hit = lead_exponents(p.lm(), ps, 0, e);
        if (!hit) break;
        MPoly prod(1);
        for (std::size_t k = 0; k < ps.size(); ++k) prod *= ps[k].pow((*hit)[k]);
        p -= prod.scaled(p.lc() / prod.lc());
    }
    p -= MPoly(p.constant_term());
    if (p.is_zero() || p.is_constant()) return RatFunc();
    MPoly q = g.as_poly();
    if (std::make_pair(p.degree(), p.size()) < std::make_pair(q.degree(), q.size())) return RatFunc(p);
    return g;
}

bool is_single_var(const RatFunc& g) {
    return g.is_polynomial() && g.num().size() == 1 && g.num().lm().degree() == 1 && g.num().lm().factors().size() == 1;
}

std::tuple<std::uint32_t, std::size_t, std::string> complexity(const RatFunc& g) {
    return {g.num().degree() + g.den().degree(), g.num().size() + g.den().size(), g.str()};
}

void dedupe(std::vector<RatFunc>& gs) {
    std::vector<RatFunc> out;
    for (auto& g : gs) {
        if (g.is_constant()) continue;
        g = strip_scale(g);
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    gs = std::move(out);
}

}  // namespace

std::vector<RatFunc> identifiable_generators(const std::vector<IoEquation>& eqs, const OdeModel& m) {
    if (eqs.empty()) throw Error(ErrorKind::InvalidArgument, "no IO-equations");
    std::vector<RatFunc> gs;
    for (const auto& e : eqs) gs.insert(gs.end(), e.normalized_coeffs.begin(), e.normalized_coeffs.end());
    dedupe(gs);
    if (gs.empty()) return gs;
    std::vector<Var> params = m.used_params();
    // Parameters that are themselves identifiable make simpler generators.
    std::vector<RatFunc> promoted;
    for (Var p : params) {
        RatFunc pv = RatFunc::var(p);
        if (std::find(gs.begin(), gs.end(), pv) == gs.end() && in_field(pv, gs, params)) promoted.push_back(pv);
    }
    gs.insert(gs.end(), promoted.begin(), promoted.end());
    // Divide out single-parameter generators.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& g : gs) {
            if (is_single_var(g)) continue;
            for (const auto& p : gs) {
                if (!is_single_var(p) || &p == &g) continue;
                Var v = p.num().lm().factors()[0].first;
                while (g.num().involves(v) && divide_exact(g.num(), MPoly::var(v))) {
                    g = g / p;
                    changed = true;
                }
                while (g.den().involves(v) && divide_exact(g.den(), MPoly::var(v))) {
                    g = g * p;
                    changed = true;
                }
            }
        }
        dedupe(gs);
    }
    std::sort(gs.begin(), gs.end(), [](const RatFunc& a, const RatFunc& b) { return complexity(a) < complexity(b); });
    for (auto& g : gs) {
        std::vector<RatFunc> others;
        for (const auto& o : gs)
            if (!(o == g)) others.push_back(o);
        g = subalgebra_reduce(g, others);
    }
    dedupe(gs);
    std::sort(gs.begin(), gs.end(), [](const RatFunc& a, const RatFunc& b) { return complexity(a) < complexity(b); });
    for (std::size_t k = gs.size(); k-- > 0;) {
        std::vector<RatFunc> others;
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (j != k) others.push_back(gs[j]);
        if (!others.empty() && in_field(gs[k], others, params)) gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return gs;
}

}  // namespace reparam
