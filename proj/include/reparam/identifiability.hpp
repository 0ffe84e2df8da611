#pragma once

#include "reparam/io.hpp"
#include "reparam/tower.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace reparam {

struct Algebraicity {
    bool algebraic = false;
    UPoly min_poly;  // monic over Q(h), in the tested function
};

// Is f algebraic over Q(h), h_i standing for defs[i]? The h must be
// algebraically independent.
Algebraicity is_algebraic_over(const RatFunc& f, const std::vector<Var>& h, const std::vector<RatFunc>& defs,
                               const std::vector<Var>& params);
// Same with fresh symbols for the generators.
Algebraicity is_algebraic_over(const RatFunc& f, const std::vector<RatFunc>& gens, const std::vector<Var>& params);

// Indices of a transcendence basis of gens, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<RatFunc>& gens, const std::vector<Var>& params);

// f in Q(gens)? gens may be algebraically dependent.
bool in_field(const RatFunc& f, const std::vector<RatFunc>& gens, const std::vector<Var>& params);

struct TowerReport {
    FieldTower tower;
    std::vector<Var> params;
    std::vector<Var> transcendental;  // parameters adjoined as extra generators
    std::vector<Rational> alpha_coeffs;  // alpha = sum alpha_coeffs[i] * params[i]
    std::size_t draws = 0;  // random combinations tried

    std::size_t degree() const { return tower.degree(); }
};

TowerReport build_field_tower(const std::vector<Var>& params, const std::vector<RatFunc>& gens, std::uint64_t seed = 0,
                              std::size_t max_draws = 32);

// f as a polynomial in alpha of degree < n over Q(h); checked by back-substitution.
RatFunc express_in_tower(const RatFunc& f, const TowerReport& t);

// Display symbols for the tower generators: a generator equal to a single
// parameter prints as that parameter, the others as h (or h1, h2, ...).
std::map<Var, RatFunc> display_names(const TowerReport& t, const OdeModel& m);

struct Evaluation {
    std::map<Var, Rational> assignment;
    // Rewrite of the surviving parameters that keeps the generators fixed,
    // e.g. p4 -> p2*p4 after p2 = 1.
    std::map<Var, RatFunc> rewrite;
    OdeModel model;
    std::size_t attempts = 0;
};

// Assigns rationals to the transcendental parameters so that the ranks of
// J(P) and J(h), properness, and the IO coefficients (through the rewrite)
// are preserved. Values in `fixed` are forced.
Evaluation suitable_evaluation(const OdeModel& m, const Parametrization& p, const std::vector<RatFunc>& gens,
                               const std::vector<IoEquation>& eqs, const std::vector<Var>& trans,
                               std::uint64_t seed = 0, const std::map<Var, Rational>& fixed = {},
                               std::size_t max_attempts = 32);

}  // namespace reparam
