#pragma once

#include "reparam/ratfunc.hpp"

#include <optional>
#include <vector>

namespace reparam {

// Polynomial in one distinguished variable with fraction coefficients;
// entry k is the coefficient of t^k. Trailing zeros are trimmed.
using UPoly = std::vector<RatFunc>;

UPoly to_upoly(const MPoly& p, Var t);
RatFunc from_upoly(const UPoly& p, Var t);
void upoly_trim(UPoly& p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_rem(UPoly a, const UPoly& m);
// Inverse of a modulo m; nullopt if they share a factor.
std::optional<UPoly> upoly_inverse(const UPoly& a, const UPoly& m);

/// Q subset Q(h) subset Q(h)(alpha). The h are fresh symbols standing for the
/// rational functions in `definitions`; alpha has a monic minimal polynomial
/// over Q(h). `param_values` rewrites each model parameter as q(alpha).
struct FieldTower {
    std::vector<Var> gens;
    std::vector<RatFunc> definitions;
    std::optional<Var> alpha;
    RatFunc alpha_definition;
    UPoly min_poly;
    std::vector<std::pair<Var, RatFunc>> param_values;

    std::size_t degree() const { return alpha ? min_poly.size() - 1 : 1; }
    RatFunc min_poly_expr() const;
    // Substitutes h -> definition and alpha -> its definition.
    RatFunc to_params(const RatFunc& f) const;
};

// Reduces the alpha-degree of p below the tower degree. A denominator that
// involves alpha is inverted modulo the minimal polynomial.
RatFunc reduce_mod_minpoly(const RatFunc& p, const FieldTower& tower);

}  // namespace reparam
