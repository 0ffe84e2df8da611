#pragma once

#include "reparam/groebner.hpp"
#include "reparam/identifiability.hpp"

#include <vector>

namespace reparam {

/// Witness variety of a parametrization over Q(h)(alpha).
struct WitnessData {
    std::vector<std::vector<Var>> z;  // z[i][j]: state i, basis element alpha^j
    std::vector<Var> ring;            // z flattened state-major
    std::vector<MPoly> h_polys;       // alpha^j coefficients (j >= 1) of the numerators
    MPoly delta;                      // common denominator
    std::vector<MPoly> ideal;         // split over input monomials, saturated by delta
    std::size_t target_dim = 0;
};

// Name of z_{i,j} (1-based state index).
std::string witness_var_name(std::size_t i, std::size_t j);

WitnessData witness_ideal(const Parametrization& p, const TowerReport& t);

struct WitnessComponent {
    std::vector<MPoly> gens;
    int dimension = 0;
    bool linear = false;
    bool certified = true;
    bool embedded = false;  // contained in a larger component
};

// Components ordered by dimension (highest first), then fewest generators,
// then by the ring positions of the generators' first variables.
std::vector<WitnessComponent> witness_components(const WitnessData& w);

struct LinearParametrization {
    std::vector<Var> free;   // z variables kept as coordinates
    std::vector<Var> fresh;  // their new names z1, z2, ...
    std::vector<RatFunc> phi;  // one entry per ring variable, affine in fresh
};

// Solves the linear generators for the bound variables. Pivots prefer the
// earliest variable with a rational coefficient.
LinearParametrization parametrize_linear_component(const std::vector<MPoly>& gens, const std::vector<Var>& ring,
                                                   const TowerReport* t = nullptr);

bool line_check(const WitnessComponent& c);

// Total degree of p in the given variables.
std::uint32_t degree_in(const MPoly& p, const std::set<Var>& vs);

}  // namespace reparam
