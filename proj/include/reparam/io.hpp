#pragma once

#include "reparam/model.hpp"

#include <vector>

namespace reparam {

struct IoEquation {
    MPoly poly;  // in y_i and its derivatives, inputs and their derivatives, parameters
    std::size_t output_index = 0;
    int order = 0;
    Monomial leading;  // leading monomial in the output and input variables
    // Coefficients divided by the leading one, in the order of the remaining
    // monomials (descending grevlex).
    std::vector<RatFunc> normalized_coeffs;
    bool principal = true;
};

// Order at which L^j(g_i) stops raising the rank of its own chain.
int output_order(const OdeModel& m, std::size_t i);

// Normalizes an IO polynomial of output i: content over the parameters and
// inputs removed, leading coefficient made positive, coefficients collected.
IoEquation make_io_equation(const MPoly& poly, const OdeModel& m, std::size_t i);

// One equation per output (more, flagged non-principal, if the elimination
// ideal needs several generators).
std::vector<IoEquation> io_equations(const OdeModel& m);

// Substitutes the model's Lie chain for the output derivatives.
RatFunc io_residual(const IoEquation& eq, const OdeModel& m);

// Generators of the field spanned by the normalized coefficients, reduced so
// that none lies in the field of the others.
std::vector<RatFunc> identifiable_generators(const std::vector<IoEquation>& eqs, const OdeModel& m);

// True when a and b agree up to a factor free of output and input variables.
bool proportional(const MPoly& a, const MPoly& b, const std::set<Var>& signal_vars);

std::set<Var> signal_vars(const MPoly& p, const OdeModel& m);

}  // namespace reparam
