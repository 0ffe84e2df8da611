#include "reparam/witness.hpp"

#include "reparam/error.hpp"
#include "reparam/polyalg.hpp"

#include <algorithm>

namespace reparam {

std::string witness_var_name(std::size_t i, std::size_t j) {
    return "z" + std::to_string(i) + "_" + std::to_string(j);
}

std::uint32_t degree_in(const MPoly& p, const std::set<Var>& vs) {
    std::uint32_t d = 0;
    for (const auto& t : p.terms()) d = std::max(d, t.m.restrict(vs, true).degree());
    return d;
}

namespace {

MPoly lcm_all(const MPoly& a, const MPoly& b) {
    if (a.is_constant()) return b;
    if (b.is_constant()) return a;
    return poly_lcm(a, b);
}

void push_unique(std::vector<MPoly>& out, const MPoly& p) {
    if (p.is_zero()) return;
    MPoly q = p.primitive();
    for (const auto& o : out)
        if (o == q) return;
    out.push_back(q);
}

}  // namespace

WitnessData witness_ideal(const Parametrization& p, const TowerReport& t) {
    std::size_t n = t.degree();
    if (n == 1) throw Error(ErrorKind::DegreeOneExtension, "tower has degree 1, nothing to witness");
    Var a = *t.tower.alpha;
    WitnessData w;
    w.target_dim = p.states.size();
    std::map<Var, RatFunc> expand;
    for (std::size_t i = 0; i < p.states.size(); ++i) {
        std::vector<Var> row;
        RatFunc x;
        RatFunc pw(1);
        for (std::size_t j = 0; j < n; ++j) {
            Var z = intern(witness_var_name(i + 1, j));
            row.push_back(z);
            w.ring.push_back(z);
            x += RatFunc::var(z) * pw;
            pw *= RatFunc::var(a);
        }
        w.z.push_back(row);
        expand[p.states[i]] = x;
    }
    std::vector<RatFunc> reduced;
    w.delta = MPoly(1);
    for (const auto& c : p.flat()) {
        RatFunc r = reduce_mod_minpoly(express_in_tower(c, t).substitute(expand), t.tower);
        w.delta = lcm_all(w.delta, r.den());
        reduced.push_back(r);
    }
    for (const auto& r : reduced) {
        MPoly num = r.num() * *divide_exact(w.delta, r.den());
        auto cs = num.coeffs_in(a);
        for (std::size_t j = 1; j < cs.size(); ++j)
            if (!cs[j].is_zero()) w.h_polys.push_back(cs[j]);
    }
    std::set<Var> zs(w.ring.begin(), w.ring.end());
    std::set<Var> coeff_vars(t.tower.gens.begin(), t.tower.gens.end());
    std::set<Var> inputs;
    for (const auto& h : w.h_polys)
        for (Var v : h.vars())
            if (!zs.count(v) && !coeff_vars.count(v)) inputs.insert(v);
    for (const auto& h : w.h_polys)
        for (const auto& [_, c] : h.split(inputs)) push_unique(w.ideal, ring_primitive(c, zs));
    MPoly dz = ring_primitive(w.delta, zs);
    if (!dz.is_constant() && !w.ideal.empty()) w.ideal = saturate(w.ideal, dz, w.ring);
    return w;
}

std::vector<WitnessComponent> witness_components(const WitnessData& w) {
    std::vector<WitnessComponent> out;
    std::set<Var> zs(w.ring.begin(), w.ring.end());
    std::vector<Component> comps;
    if (w.ideal.empty()) {
        comps.push_back(Component{{}, static_cast<int>(w.ring.size()), true, false});
    } else {
        comps = split_components(w.ideal, w.ring);
    }
    for (const auto& c : comps) {
        WitnessComponent wc;
        wc.gens = c.gens;
        wc.dimension = c.dimension;
        wc.certified = c.certified;
        wc.embedded = c.embedded;
        wc.linear = std::all_of(c.gens.begin(), c.gens.end(), [&](const MPoly& g) { return degree_in(g, zs) <= 1; });
        out.push_back(std::move(wc));
    }
    auto key = [&](const WitnessComponent& c) {
        std::vector<std::size_t> first;
        for (const auto& g : c.gens) {
            std::size_t k = 0;
            while (k < w.ring.size() && !g.involves(w.ring[k])) ++k;
            first.push_back(k);
        }
        std::sort(first.begin(), first.end());
        std::string s;
        for (const auto& g : c.gens) s += g.str() + ";";
        return std::make_pair(first, s);
    };
    std::stable_sort(out.begin(), out.end(), [&](const WitnessComponent& x, const WitnessComponent& y) {
        if (x.dimension != y.dimension) return x.dimension > y.dimension;
        if (x.gens.size() != y.gens.size()) return x.gens.size() < y.gens.size();
        return key(x) < key(y);
    });
    return out;
}

LinearParametrization parametrize_linear_component(const std::vector<MPoly>& gens, const std::vector<Var>& ring,
                                                   const TowerReport* t) {
    std::set<Var> zs(ring.begin(), ring.end());
    std::size_t nv = ring.size();
    // Row layout: coefficients of ring[0..nv), then the constant.
    std::vector<std::vector<RatFunc>> rows;
    for (const auto& g : gens) {
        if (degree_in(g, zs) > 1) throw Error(ErrorKind::NonLinearComponent, g.str() + " is not linear");
        std::vector<RatFunc> row(nv + 1);
        for (const auto& [m, c] : g.split(zs)) {
            if (m.is_one()) {
                row[nv] = c;
                continue;
            }
            Var v = m.factors()[0].first;
            row[std::find(ring.begin(), ring.end(), v) - ring.begin()] = c;
        }
        for (const auto& e : row)
            if (t && t->tower.alpha && e.involves(*t->tower.alpha))
                throw Error(ErrorKind::CoefficientsOutsideField, g.str() + " has coefficients outside Q(h)");
        rows.push_back(std::move(row));
    }
    std::vector<std::pair<std::size_t, std::vector<RatFunc>>> pivots;  // var index, normalized row
    for (auto row : rows) {
        for (const auto& [pv, pr] : pivots) {
            if (row[pv].is_zero()) continue;
            RatFunc f = row[pv];
            for (std::size_t k = 0; k <= nv; ++k) row[k] -= f * pr[k];
        }
        std::optional<std::size_t> pick;
        for (std::size_t k = 0; k < nv && !pick; ++k)
            if (!row[k].is_zero() && row[k].is_constant()) pick = k;
        for (std::size_t k = 0; k < nv && !pick; ++k)
            if (!row[k].is_zero()) pick = k;
        if (!pick) {
            if (!row[nv].is_zero()) throw Error(ErrorKind::EmptyVariety, "inconsistent linear component");
            continue;
        }
        RatFunc inv = row[*pick].inverse();
        for (auto& e : row) e *= inv;
        for (auto& [pv, pr] : pivots) {
            if (pr[*pick].is_zero()) continue;
            RatFunc f = pr[*pick];
            for (std::size_t k = 0; k <= nv; ++k) pr[k] -= f * row[k];
        }
        pivots.emplace_back(*pick, std::move(row));
    }
    std::vector<bool> bound(nv, false);
    for (const auto& [pv, _] : pivots) bound[pv] = true;
    LinearParametrization lp;
    std::map<std::size_t, RatFunc> coord;
    for (std::size_t k = 0; k < nv; ++k) {
        if (bound[k]) continue;
        lp.free.push_back(ring[k]);
        lp.fresh.push_back(intern("z" + std::to_string(lp.free.size())));
        coord[k] = RatFunc::var(lp.fresh.back());
    }
    if (lp.free.empty()) throw Error(ErrorKind::InvalidArgument, "component is a point");
    lp.phi.resize(nv);
    for (const auto& [k, c] : coord) lp.phi[k] = c;
    for (const auto& [pv, pr] : pivots) {
        RatFunc e = -pr[nv];
        for (const auto& [k, c] : coord) e -= pr[k] * c;
        lp.phi[pv] = e;
    }
    return lp;
}

bool line_check(const WitnessComponent& c) { return c.dimension == 1 && c.linear; }

}  // namespace reparam
