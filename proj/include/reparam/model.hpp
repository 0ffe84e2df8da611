#pragma once

#include "reparam/matrix.hpp"
#include "reparam/ratfunc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reparam {

/// x' = f(u, c, x), y = g(u, c, x).
struct OdeModel {
    std::vector<Var> states;
    std::vector<Var> params;
    std::vector<Var> inputs;
    std::vector<RatFunc> rhs;
    std::vector<Var> outputs;
    std::vector<RatFunc> output_exprs;

    std::size_t dim() const { return states.size(); }
    // Parameters that actually occur in rhs or outputs, in declaration order.
    std::vector<Var> used_params() const;
    OdeModel substitute_params(const std::map<Var, RatFunc>& values) const;
    // Model file text (the same grammar parse_model reads).
    std::string str() const;
};

bool is_input_var(Var v, const OdeModel& m);

// L_f(P) = sum dP/dx_i f_i + D_u(P).
RatFunc lie_derivative(const RatFunc& p, const OdeModel& m);
// D_u(P) = sum dP/du^(i) u^(i+1).
RatFunc input_shift(const RatFunc& p, const OdeModel& m);

struct Parametrization {
    std::vector<std::vector<RatFunc>> comps;  // comps[i][j] = L^j(g_i)
    std::vector<int> orders;
    std::vector<Var> states;

    std::vector<RatFunc> flat() const;
    std::size_t size() const;
};

// Per output, the order at which one more Lie derivative stops raising the
// Jacobian rank; orders grow round-robin across outputs.
std::vector<int> default_orders(const OdeModel& m);
Parametrization build_parametrization(const OdeModel& m, const std::vector<int>& orders);
RatMatrix jacobian(const Parametrization& p);

// Rows L^0..L^{m_i} of output i (m_i = -1 skips the output).
using JacobianSelection = std::vector<int>;
// First selection in lexicographic order whose d x d minor is nonzero.
std::optional<JacobianSelection> default_selection(const Parametrization& p);

// x' = M^{-1} (P_{i,j+1} - D_u(P_{i,j})), y_i = P_{i,0}. Throws NotARealization
// if an output or a right-hand side keeps an input derivative.
OdeModel realization_from_parametrization(const Parametrization& p, const JacobianSelection& sel,
                                          const OdeModel& shape);

struct Properness {
    bool proper = false;
    std::size_t fiber_degree = 0;
};

// Generic fiber size of x -> P(x) at a symbolic point x-bar.
Properness properness_check(const Parametrization& p);

}  // namespace reparam
