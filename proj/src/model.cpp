#include "reparam/model.hpp"

#include "reparam/error.hpp"
#include "reparam/groebner.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>
#include <functional>

namespace reparam {

std::vector<Var> OdeModel::used_params() const {
    std::set<Var> seen;
    for (const auto& f : rhs) {
        auto v = f.vars();
        seen.insert(v.begin(), v.end());
    }
    for (const auto& g : output_exprs) {
        auto v = g.vars();
        seen.insert(v.begin(), v.end());
    }
    std::vector<Var> out;
    for (Var p : params)
        if (seen.count(p)) out.push_back(p);
    return out;
}

OdeModel OdeModel::substitute_params(const std::map<Var, RatFunc>& values) const {
    OdeModel r = *this;
    for (auto& f : r.rhs) f = f.substitute(values);
    for (auto& g : r.output_exprs) g = g.substitute(values);
    return r;
}

namespace {

std::string join(const std::vector<Var>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + display_name(vs[i]);
    return s;
}

}  // namespace

std::string OdeModel::str() const {
    std::string s = "states: " + join(states) + "\n";
    if (!params.empty()) s += "params: " + join(params) + "\n";
    if (!inputs.empty()) s += "inputs: " + join(inputs) + "\n";
    s += "outputs: " + join(outputs) + "\n";
    for (std::size_t i = 0; i < states.size(); ++i) s += display_name(states[i]) + "' = " + rhs[i].str() + "\n";
    for (std::size_t i = 0; i < outputs.size(); ++i) s += display_name(outputs[i]) + " = " + output_exprs[i].str() + "\n";
    return s;
}

bool is_input_var(Var v, const OdeModel& m) {
    Var b = base_var(v);
    return std::find(m.inputs.begin(), m.inputs.end(), b) != m.inputs.end();
}

RatFunc input_shift(const RatFunc& p, const OdeModel& m) {
    RatFunc acc;
    for (Var v : p.vars()) {
        if (!is_input_var(v, m)) continue;
        RatFunc d = p.derivative(v);
        if (d.is_zero()) continue;
        acc += d * RatFunc::var(derivative_var(base_var(v), derivative_order(v) + 1));
    }
    return acc;
}

RatFunc lie_derivative(const RatFunc& p, const OdeModel& m) {
    RatFunc acc = input_shift(p, m);
    for (std::size_t i = 0; i < m.states.size(); ++i) {
        if (!p.involves(m.states[i])) continue;
        acc += p.derivative(m.states[i]) * m.rhs[i];
    }
    return acc;
}

std::vector<RatFunc> Parametrization::flat() const {
    std::vector<RatFunc> out;
    for (const auto& c : comps) out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::size_t Parametrization::size() const {
    std::size_t n = 0;
    for (const auto& c : comps) n += c.size();
    return n;
}

std::vector<int> default_orders(const OdeModel& m) {
    std::size_t r = m.outputs.size();
    std::vector<RatFunc> last(m.output_exprs.begin(), m.output_exprs.end());
    std::vector<int> orders(r, -1);
    std::vector<bool> frozen(r, false);
    std::vector<RatFunc> rows;
    std::size_t rank = 0;
    bool any = true;
    while (any) {
        any = false;
        for (std::size_t i = 0; i < r; ++i) {
            if (frozen[i]) continue;
            if (orders[i] >= 0) last[i] = lie_derivative(last[i], m);
            ++orders[i];
            rows.push_back(last[i]);
            std::size_t k = jacobian_of(rows, m.states).rank();
            if (k > rank) {
                rank = k;
                any = true;
            } else {
                frozen[i] = true;
            }
        }
    }
    return orders;
}

Parametrization build_parametrization(const OdeModel& m, const std::vector<int>& orders) {
    if (orders.size() != m.outputs.size()) throw Error(ErrorKind::InvalidArgument, "one Lie order per output expected");
    Parametrization p;
    p.orders = orders;
    p.states = m.states;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative Lie order");
        std::vector<RatFunc> chain{m.output_exprs[i]};
        for (int j = 0; j < orders[i]; ++j) chain.push_back(lie_derivative(chain.back(), m));
        p.comps.push_back(std::move(chain));
    }
    return p;
}

RatMatrix jacobian(const Parametrization& p) { return jacobian_of(p.flat(), p.states); }

namespace {

std::vector<std::size_t> selection_rows(const Parametrization& p, const JacobianSelection& sel) {
    std::vector<std::size_t> rows;
    std::size_t base = 0;
    for (std::size_t i = 0; i < p.comps.size(); ++i) {
        for (int j = 0; j <= sel[i]; ++j) rows.push_back(base + static_cast<std::size_t>(j));
        base += p.comps[i].size();
    }
    return rows;
}

}  // namespace

std::optional<JacobianSelection> default_selection(const Parametrization& p) {
    std::size_t d = p.states.size();
    RatMatrix jac = jacobian(p);
    std::size_t r = p.comps.size();
    JacobianSelection sel(r);
    std::optional<JacobianSelection> found;
    // Larger prefixes of earlier outputs come first.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (found) return;
        if (i == r) {
            if (left != 0) return;
            if (!jac.select_rows(selection_rows(p, sel)).det().is_zero()) found = sel;
            return;
        }
        for (int m = p.orders[i] - 1; m >= -1; --m) {
            auto take = static_cast<std::size_t>(m + 1);
            if (take > left) continue;
            sel[i] = m;
            rec(i + 1, left - take);
        }
    };
    rec(0, d);
    return found;
}

OdeModel realization_from_parametrization(const Parametrization& p, const JacobianSelection& sel,
                                          const OdeModel& shape) {
    OdeModel out = shape;
    out.states = p.states;
    for (std::size_t i = 0; i < p.comps.size(); ++i)
        for (Var v : p.comps[i][0].vars())
            if (is_input_var(v, shape) && derivative_order(v) > 0)
                throw Error(ErrorKind::NotARealization,
                            "output " + std::to_string(i + 1) + " involves " + display_name(v));
    auto rows = selection_rows(p, sel);
    if (rows.size() != p.states.size()) throw Error(ErrorKind::InvalidArgument, "selection does not give a square minor");
    auto inv = jacobian(p).select_rows(rows).inverse();
    if (!inv) throw Error(ErrorKind::RankDeficient, "selected Jacobian minor is singular");
    std::vector<RatFunc> v;
    for (std::size_t i = 0; i < p.comps.size(); ++i)
        for (int j = 0; j <= sel[i]; ++j) {
            if (j + 1 > p.orders[i]) throw Error(ErrorKind::InvalidArgument, "selection exceeds the Lie order");
            v.push_back(p.comps[i][static_cast<std::size_t>(j) + 1] - input_shift(p.comps[i][static_cast<std::size_t>(j)], shape));
        }
    out.rhs = inv->apply(v);
    for (std::size_t k = 0; k < out.rhs.size(); ++k)
        for (Var w : out.rhs[k].vars())
            if (is_input_var(w, shape) && derivative_order(w) > 0)
                throw Error(ErrorKind::NotARealization,
                            "right-hand side of " + display_name(p.states[k]) + " involves " + display_name(w));
    out.output_exprs.clear();
    for (const auto& c : p.comps) out.output_exprs.push_back(c[0]);
    return out;
}

Properness properness_check(const Parametrization& p) {
    std::map<Var, RatFunc> bar;
    for (Var x : p.states) bar[x] = RatFunc::var(fresh_var("_xbar"));
    std::vector<MPoly> gens;
    MPoly den(1);
    for (const auto& f : p.flat()) {
        RatFunc fb = f.substitute(bar);
        MPoly g = f.num() * fb.den() - fb.num() * f.den();
        if (!g.is_zero()) gens.push_back(g);
        den = poly_lcm(den, f.den());
    }
    std::set<Var> xs(p.states.begin(), p.states.end());
    MPoly h(1);
    for (const auto& [f, e] : factor(den).factors)
        if (f.involves_any(xs)) h *= f;
    if (!h.is_constant()) gens = saturate(gens, h, p.states);
    GroebnerBasis gb(gens, p.states, MonomialOrder::grevlex());
    auto q = gb.quotient_dimension();
    if (!q) throw Error(ErrorKind::InfiniteFiber, "the generic fiber of the parametrization is not finite");
    return {*q == 1, *q};
}

}  // namespace reparam
