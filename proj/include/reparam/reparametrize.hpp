#pragma once

#include "reparam/witness.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reparam {

enum class Provenance { Identity, WitnessComponent, UserSupplied, FirstOrderMoebius };

const char* to_string(Provenance p);

/// x_i = s_i(z).
struct Substitution {
    std::vector<Var> new_states;
    std::vector<RatFunc> s;
    Provenance provenance = Provenance::UserSupplied;
};

// z' = J(s)^{-1} f(u, s), y = g(u, s).
OdeModel apply_substitution(const OdeModel& m, const Substitution& s);

struct DenominatorShape {
    RatFunc a;
    RatFunc b;
    int m = 0;
};

// (a, b, m) with lcm of the denominators equal to a*(x - b)^m.
std::optional<DenominatorShape> denominator_shape(const std::vector<RatFunc>& fns, Var x);

// Steps 3-6 of the first-order polynomial realization; the error message
// names the failing step (u-in-denominator, shape, final-polynomiality).
OdeModel polynomial_realization_first_order(const OdeModel& m);

struct ReparamOptions {
    std::uint64_t seed = 0;
    std::map<Var, Rational> fixed;
    // User parametrization of a witness component: z_{i,j} -> expression in new states.
    std::optional<std::map<Var, RatFunc>> component_param;
    bool stop_after_witness = false;
};

struct VerifyReport {
    bool vanishes = false;      // the given equations vanish on the candidate
    bool proportional = false;  // the candidate's own equations agree
    std::string diagnostic;

    bool ok() const { return vanishes && proportional; }
};

VerifyReport check_realization(const OdeModel& candidate, const std::vector<IoEquation>& eqs);
bool verify_realization(const OdeModel& candidate, const std::vector<IoEquation>& eqs);

struct Reparametrization {
    std::string stage;  // last stage entered
    std::vector<IoEquation> eqs;
    std::vector<RatFunc> gens;
    TowerReport tower;  // of the evaluated model
    std::optional<Evaluation> evaluation;
    std::optional<WitnessData> witness;
    std::vector<WitnessComponent> components;
    std::optional<std::size_t> chosen;
    Substitution substitution;
    OdeModel model;                   // over the display symbols of the identifiable field
    std::map<Var, RatFunc> defs;      // display symbol -> function of the original parameters
    OdeModel in_params;               // model with defs substituted
    bool changed = false;
    bool verified = false;
    std::vector<std::string> notes;
};

Reparametrization optimal_realization_general(const OdeModel& m, const ReparamOptions& opt = {});
// Fills `out` stage by stage, so a throw leaves the finished stages in place.
void optimal_realization_general_into(const OdeModel& m, const ReparamOptions& opt, Reparametrization& out);
Reparametrization optimal_realization_first_order(const OdeModel& m, const ReparamOptions& opt = {});
Reparametrization optimal_polynomial_realization_first_order(const OdeModel& m, const ReparamOptions& opt = {});

// Max total degree over numerators and denominators of the right-hand sides
// and outputs, in the state and input variables.
std::uint32_t realization_degree(const OdeModel& m);

}  // namespace reparam
