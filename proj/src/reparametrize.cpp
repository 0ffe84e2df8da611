#include "reparam/reparametrize.hpp"

#include "reparam/error.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>

namespace reparam {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Identity: return "identity";
        case Provenance::WitnessComponent: return "witness-component";
        case Provenance::UserSupplied: return "user-supplied";
        case Provenance::FirstOrderMoebius: return "first-order-moebius";
    }
    return "?";
}

OdeModel apply_substitution(const OdeModel& m, const Substitution& s) {
    if (s.s.size() != m.states.size() || s.new_states.size() != m.states.size())
        throw Error(ErrorKind::InvalidArgument, "substitution arity does not match the state count");
    std::map<Var, RatFunc> sub;
    for (std::size_t i = 0; i < m.states.size(); ++i) sub[m.states[i]] = s.s[i];
    RatMatrix j = jacobian_of(s.s, s.new_states);
    auto inv = j.inverse();
    if (!inv) throw Error(ErrorKind::SingularSubstitution, "Jacobian of the substitution is singular");
    std::vector<RatFunc> fs;
    for (const auto& f : m.rhs) fs.push_back(f.substitute(sub));
    OdeModel r = m;
    r.states = s.new_states;
    r.rhs = inv->apply(fs);
    for (auto& g : r.output_exprs) g = g.substitute(sub);
    return r;
}

std::optional<DenominatorShape> denominator_shape(const std::vector<RatFunc>& fns, Var x) {
    MPoly q(1);
    for (const auto& f : fns) q = q.is_constant() ? f.den() : poly_lcm(q, f.den());
    int m = static_cast<int>(q.degree(x));
    DenominatorShape sh;
    sh.m = m;
    if (m == 0) {
        sh.a = RatFunc(q);
        return sh;
    }
    auto cs = q.coeffs_in(x);
    sh.a = RatFunc(cs[m]);
    sh.b = -RatFunc(cs[m - 1]) / (sh.a * RatFunc(Rational(m)));
    if (!(sh.a * (RatFunc::var(x) - sh.b).pow(m) == RatFunc(q))) return std::nullopt;
    return sh;
}

namespace {

std::set<Var> input_vars_of(const OdeModel& m, const std::vector<RatFunc>& fs) {
    std::set<Var> out;
    for (const auto& f : fs)
        for (Var v : f.vars())
            if (is_input_var(v, m)) out.insert(v);
    return out;
}

std::vector<RatFunc> all_exprs(const OdeModel& m) {
    std::vector<RatFunc> fs = m.rhs;
    fs.insert(fs.end(), m.output_exprs.begin(), m.output_exprs.end());
    return fs;
}

bool polynomial_in(const RatFunc& f, const std::set<Var>& vs) { return !f.den().involves_any(vs); }

Var fresh_state_name(const OdeModel& m, const std::string& base) {
    std::set<Var> taken(m.params.begin(), m.params.end());
    taken.insert(m.inputs.begin(), m.inputs.end());
    taken.insert(m.outputs.begin(), m.outputs.end());
    Var v = intern(base);
    return taken.count(v) ? fresh_var(base) : v;
}

}  // namespace

OdeModel polynomial_realization_first_order(const OdeModel& m) {
    if (m.dim() != 1 || m.outputs.size() != 1)
        throw Error(ErrorKind::InvalidArgument, "first-order realization needs one state and one output");
    Var x = m.states[0];
    auto fs = all_exprs(m);
    auto us = input_vars_of(m, fs);
    for (const auto& f : fs)
        if (f.den().involves_any(us))
            throw Error(ErrorKind::NoPolynomialRealization, "u-in-denominator: an input occurs in a denominator");
    bool constant = std::all_of(fs.begin(), fs.end(), [&](const RatFunc& f) { return !f.den().involves(x); });
    if (constant) return m;
    auto sh = denominator_shape(fs, x);
    if (!sh) throw Error(ErrorKind::NoPolynomialRealization, "shape: common denominator is not a*(x-b)^m");
    std::uint32_t top = 0;
    for (const auto& f : fs)
        for (const auto& [_, c] : f.num().split(us)) top = std::max(top, RatFunc(c, f.den()).num().degree(x));
    if (static_cast<std::uint32_t>(sh->m) < top)
        throw Error(ErrorKind::NoPolynomialRealization,
                    "shape: m = " + std::to_string(sh->m) + " is below the numerator degree " + std::to_string(top));
    Var z = fresh_state_name(m, "z");
    RatFunc zr = RatFunc::var(z);
    Substitution s{{z}, {(RatFunc(1) + sh->b * zr) / zr}, Provenance::FirstOrderMoebius};
    OdeModel r = apply_substitution(m, s);
    std::set<Var> sig{z};
    sig.insert(us.begin(), us.end());
    for (const auto& f : all_exprs(r))
        if (!polynomial_in(f, sig))
            throw Error(ErrorKind::NoPolynomialRealization, "final-polynomiality: " + f.str() + " is not polynomial");
    return r;
}

VerifyReport check_realization(const OdeModel& candidate, const std::vector<IoEquation>& eqs) {
    VerifyReport rep;
    rep.vanishes = true;
    for (const auto& e : eqs) {
        if (e.output_index >= candidate.outputs.size()) {
            rep.vanishes = false;
            rep.diagnostic = "output index out of range";
            continue;
        }
        RatFunc res = io_residual(e, candidate);
        if (!res.is_zero()) {
            rep.vanishes = false;
            if (rep.diagnostic.empty()) rep.diagnostic = "residual " + res.str();
        }
    }
    if (!rep.vanishes) return rep;
    auto own = io_equations(candidate);
    rep.proportional = true;
    for (const auto& e : eqs) {
        if (!e.principal) continue;
        bool found = false;
        for (const auto& o : own) {
            if (o.output_index != e.output_index) continue;
            auto sig = signal_vars(e.poly, candidate);
            auto so = signal_vars(o.poly, candidate);
            sig.insert(so.begin(), so.end());
            if (proportional(o.poly, e.poly, sig)) found = true;
        }
        if (!found) {
            rep.proportional = false;
            rep.diagnostic = "own IO-equation of output " + display_name(candidate.outputs[e.output_index]) +
                             " differs";
        }
    }
    return rep;
}

bool verify_realization(const OdeModel& candidate, const std::vector<IoEquation>& eqs) {
    return check_realization(candidate, eqs).ok();
}

std::uint32_t realization_degree(const OdeModel& m) {
    std::set<Var> vs(m.states.begin(), m.states.end());
    std::uint32_t d = 0;
    for (const auto& f : all_exprs(m)) {
        for (Var v : f.vars())
            if (is_input_var(v, m)) vs.insert(v);
        d = std::max({d, degree_in(f.num(), vs), degree_in(f.den(), vs)});
    }
    return d;
}

namespace {

struct Named {
    std::map<Var, RatFunc> to_display;  // tower generator -> display symbol
    std::map<Var, RatFunc> defs;        // display symbol -> original parameters
    std::vector<Var> display_params;
};

Named name_tower(const TowerReport& t, const std::map<Var, RatFunc>& rho, const OdeModel& original) {
    TowerReport copy = t;
    for (auto& d : copy.tower.definitions) d = d.substitute(rho);
    Named n;
    n.to_display = display_names(copy, original);
    for (std::size_t i = 0; i < t.tower.gens.size(); ++i) {
        Var g = t.tower.gens[i];
        const RatFunc& disp = n.to_display[g];
        Var v = *disp.vars().begin();
        n.defs[v] = copy.tower.definitions[i];
        n.display_params.push_back(v);
    }
    return n;
}

// Model with parameters rewritten as elements of the tower.
OdeModel model_in_tower(const OdeModel& m, const TowerReport& t) {
    OdeModel r = m;
    for (auto& f : r.rhs) f = express_in_tower(f, t);
    for (auto& g : r.output_exprs) g = express_in_tower(g, t);
    r.params = t.tower.gens;
    if (t.tower.alpha) r.params.push_back(*t.tower.alpha);
    return r;
}

void finish(Reparametrization& r, const OdeModel& over_tower, const Named& n) {
    r.model = over_tower.substitute_params(n.to_display);
    r.model.params.clear();
    std::set<Var> seen;
    for (const auto& f : all_exprs(r.model))
        for (Var v : f.vars()) seen.insert(v);
    for (Var v : n.display_params)
        if (seen.count(v)) r.model.params.push_back(v);
    r.defs.clear();
    for (Var v : r.model.params) r.defs[v] = n.defs.at(v);
    r.in_params = r.model.substitute_params(r.defs);
    std::set<Var> orig;
    for (const auto& [_, d] : r.defs)
        for (Var v : d.vars()) orig.insert(v);
    r.in_params.params.assign(orig.begin(), orig.end());
}

bool alpha_free(const OdeModel& m, Var a) {
    for (const auto& f : all_exprs(m))
        if (f.involves(a)) return false;
    return true;
}

OdeModel reduce_model(const OdeModel& m, const FieldTower& t) {
    OdeModel r = m;
    for (auto& f : r.rhs) f = reduce_mod_minpoly(f, t);
    for (auto& g : r.output_exprs) g = reduce_mod_minpoly(g, t);
    return r;
}

Substitution from_phi(const std::vector<RatFunc>& phi, const WitnessData& w, const TowerReport& t,
                      std::vector<Var> fresh, Provenance prov) {
    Substitution s;
    s.provenance = prov;
    s.new_states = std::move(fresh);
    Var a = *t.tower.alpha;
    for (std::size_t i = 0; i < w.z.size(); ++i) {
        RatFunc e;
        RatFunc pw(1);
        for (std::size_t j = 0; j < w.z[i].size(); ++j) {
            e += phi[i * w.z[i].size() + j] * pw;
            pw *= RatFunc::var(a);
        }
        s.s.push_back(e);
    }
    return s;
}

enum class Want { Any, Curve, Line };

void run(Reparametrization& r, const OdeModel& m, const ReparamOptions& opt, Want want) {
    r = Reparametrization{};
    r.stage = "io-eq";
    r.eqs = io_equations(m);
    r.stage = "identifiability";
    r.gens = identifiable_generators(r.eqs, m);
    std::vector<Var> params = m.used_params();
    r.stage = "tower";
    r.tower = build_field_tower(params, r.gens, opt.seed);
    OdeModel work = m;
    std::map<Var, RatFunc> rho;
    if (!r.tower.transcendental.empty() || !opt.fixed.empty()) {
        r.stage = "evaluation";
        auto p = build_parametrization(m, default_orders(m));
        r.evaluation = suitable_evaluation(m, p, r.gens, r.eqs, r.tower.transcendental, opt.seed, opt.fixed);
        work = r.evaluation->model;
        rho = r.evaluation->rewrite;
        std::map<Var, RatFunc> sub;
        for (const auto& [v, c] : r.evaluation->assignment) sub[v] = RatFunc(c);
        std::vector<RatFunc> ga;
        for (const auto& g : r.gens) ga.push_back(g.substitute(sub));
        r.tower = build_field_tower(work.used_params(), ga, opt.seed);
        r.notes.push_back("transcendental parameters evaluated");
    }
    Named names = name_tower(r.tower, rho, m);
    OdeModel over = model_in_tower(work, r.tower);
    if (r.tower.degree() == 1) {
        if (!r.evaluation) {
            r.model = m;
            r.in_params = m;
            r.substitution = {m.states, {}, Provenance::Identity};
            for (Var x : m.states) r.substitution.s.push_back(RatFunc::var(x));
            r.verified = true;
            r.notes.push_back("already globally identifiable");
            return;
        }
        r.substitution = {work.states, {}, Provenance::Identity};
        for (Var x : work.states) r.substitution.s.push_back(RatFunc::var(x));
        finish(r, over, names);
        r.changed = true;
        auto rep = check_realization(r.in_params, r.eqs);
        r.verified = rep.ok();
        if (!r.verified) throw Error(ErrorKind::NoFRealization, "rewritten model fails verification: " + rep.diagnostic);
        return;
    }
    if (want == Want::Line) {
        for (const auto& f : all_exprs(m))
            if (!f.is_polynomial() || f.den().involves_any({m.states.begin(), m.states.end()}))
                throw Error(ErrorKind::InvalidArgument, "polynomial realization expected");
    }
    r.stage = "witness";
    auto p = build_parametrization(work, default_orders(work));
    r.witness = witness_ideal(p, r.tower);
    r.components = witness_components(*r.witness);
    if (opt.stop_after_witness) return;
    r.stage = "reparam";
    const WitnessData& w = *r.witness;
    int d = static_cast<int>(work.dim());
    std::vector<std::pair<std::size_t, Substitution>> candidates;
    bool saw_nonlinear = false, saw_target = false;
    if (opt.component_param) {
        std::vector<RatFunc> phi;
        std::vector<Var> fresh;
        std::set<Var> known(r.tower.tower.gens.begin(), r.tower.tower.gens.end());
        std::map<Var, RatFunc> back;  // display symbol -> tower generator
        for (const auto& [g, disp] : names.to_display) back[*disp.vars().begin()] = RatFunc::var(g);
        for (Var z : w.ring) {
            auto it = opt.component_param->find(z);
            if (it == opt.component_param->end())
                throw Error(ErrorKind::InvalidArgument, "component parametrization misses " + var_name(z));
            RatFunc e = it->second.substitute(back);
            for (Var v : e.vars())
                if (!known.count(v) && std::find(fresh.begin(), fresh.end(), v) == fresh.end()) fresh.push_back(v);
            phi.push_back(e);
        }
        for (const auto& c : r.components) {
            bool on = true;
            for (const auto& g : c.gens) {
                std::map<Var, RatFunc> sub;
                for (std::size_t k = 0; k < w.ring.size(); ++k) sub[w.ring[k]] = phi[k];
                if (!RatFunc(g).substitute(sub).is_zero()) on = false;
            }
            if (on) {
                candidates.emplace_back(&c - r.components.data(), from_phi(phi, w, r.tower, fresh, Provenance::UserSupplied));
                break;
            }
        }
        if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "supplied parametrization lies on no component");
    } else {
        for (std::size_t k = 0; k < r.components.size(); ++k) {
            const auto& c = r.components[k];
            if (c.dimension != d || c.embedded) continue;
            saw_target = true;
            if (want == Want::Line && !line_check(c)) continue;
            if (!c.linear) {
                saw_nonlinear = true;
                r.notes.push_back("non-linear component of target dimension left unparametrized");
                continue;
            }
            auto lp = parametrize_linear_component(c.gens, w.ring, &r.tower);
            candidates.emplace_back(k, from_phi(lp.phi, w, r.tower, lp.fresh, Provenance::WitnessComponent));
        }
    }
    for (auto& [k, s] : candidates) {
        if (s.new_states.size() != work.dim()) continue;
        OdeModel out;
        try {
            out = reduce_model(apply_substitution(over, s), r.tower.tower);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularSubstitution && e.kind() != ErrorKind::ZeroDenominator) throw;
            r.notes.push_back(std::string("component skipped: ") + e.what());
            continue;
        }
        if (!alpha_free(out, *r.tower.tower.alpha)) {
            r.notes.push_back("component skipped: substituted model keeps alpha");
            continue;
        }
        out.params = over.params;
        Reparametrization trial = r;
        trial.substitution = s;
        finish(trial, out, names);
        auto rep = check_realization(trial.in_params, r.eqs);
        if (!rep.ok()) {
            r.notes.push_back("component skipped: " + rep.diagnostic);
            continue;
        }
        if (want == Want::Line) {
            std::set<Var> sig(trial.model.states.begin(), trial.model.states.end());
            for (const auto& f : all_exprs(trial.model))
                for (Var v : f.vars())
                    if (is_input_var(v, trial.model)) sig.insert(v);
            for (const auto& f : all_exprs(trial.model))
                if (!polynomial_in(f, sig)) throw Error(ErrorKind::Internal, "line reparametrization is not polynomial");
        }
        trial.chosen = k;
        trial.changed = true;
        trial.verified = true;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (candidates[j].first != k) trial.notes.push_back("alternative component " + std::to_string(candidates[j].first));
        r = std::move(trial);
        return;
    }
    if (want == Want::Line) throw Error(ErrorKind::NoLine, "no line component over the identifiable field");
    if (saw_nonlinear) throw Error(ErrorKind::NonLinearComponent, "components of the target dimension are not linear");
    throw Error(ErrorKind::NoFRealization,
                saw_target ? "no component yields a realization over the identifiable field"
                           : "witness variety has no component of dimension " + std::to_string(d));
}

void first_order_guard(const OdeModel& m) {
    if (m.dim() != 1 || m.outputs.size() != 1)
        throw Error(ErrorKind::InvalidArgument, "first-order algorithms need one state and one output");
}

}  // namespace

Reparametrization optimal_realization_general(const OdeModel& m, const ReparamOptions& opt) {
    Reparametrization r;
    run(r, m, opt, Want::Any);
    return r;
}

void optimal_realization_general_into(const OdeModel& m, const ReparamOptions& opt, Reparametrization& out) {
    run(out, m, opt, Want::Any);
}

Reparametrization optimal_realization_first_order(const OdeModel& m, const ReparamOptions& opt) {
    first_order_guard(m);
    Reparametrization r;
    run(r, m, opt, Want::Curve);
    return r;
}

Reparametrization optimal_polynomial_realization_first_order(const OdeModel& m, const ReparamOptions& opt) {
    first_order_guard(m);
    Reparametrization r;
    run(r, m, opt, Want::Line);
    return r;
}

}  // namespace reparam
