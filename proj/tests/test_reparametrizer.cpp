#include "doctest.h"
#include "reparam/error.hpp"
#include "reparam/expr.hpp"
#include "reparam/modelfile.hpp"
#include "reparam/reparametrize.hpp"

using namespace reparam;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }
Var V(const char* s) { return intern(s); }

OdeModel load(const char* name) { return load_model_file(std::string(REPARAM_MODELS_DIR) + "/" + name).model; }

std::vector<RatFunc> Rs(std::initializer_list<const char*> xs) {
    std::vector<RatFunc> out;
    for (const char* x : xs) out.push_back(R(x));
    return out;
}

std::vector<Var> Vs(std::initializer_list<const char*> xs) {
    std::vector<Var> out;
    for (const char* x : xs) out.push_back(V(x));
    return out;
}

void check_model(const OdeModel& m, std::initializer_list<const char*> rhs, std::initializer_list<const char*> outs) {
    CHECK(m.rhs == Rs(rhs));
    CHECK(m.output_exprs == Rs(outs));
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

// Every variable of the model is a state, an input (or derivative), or a declared parameter.
bool closed_over_params(const OdeModel& m) {
    std::set<Var> ok(m.states.begin(), m.states.end());
    ok.insert(m.params.begin(), m.params.end());
    for (const auto* fs : {&m.rhs, &m.output_exprs})
        for (const auto& f : *fs)
            for (Var v : f.vars())
                if (!ok.count(v) && !is_input_var(v, m)) return false;
    return true;
}

}  // namespace

TEST_CASE("apply_substitution") {
    SUBCASE("identity") {
        auto m = load("lotka_volterra.model");
        Substitution s{m.states, {R("x1"), R("x2")}, Provenance::Identity};
        auto r = apply_substitution(m, s);
        CHECK(r.rhs == m.rhs);
        CHECK(r.output_exprs == m.output_exprs);
    }
    SUBCASE("square-root plane with x1 = c*z1, x2 = z2") {
        auto m = load("square_root_plane.model");
        auto r = apply_substitution(m, {Vs({"z1", "z2"}), Rs({"c*z1", "z2"}), Provenance::UserSupplied});
        check_model(r, {"z2^3/(2*z1*c^2)", "(c^2*z1 + z2)/(3*z2^2)"}, {"c^2*z1^2"});
    }
    SUBCASE("inverted state: chain rule oracle") {
        auto m = load("inverted_state.model");
        Substitution s{Vs({"z1", "z2"}), Rs({"z1*z2", "1/z2"}), Provenance::UserSupplied};
        auto r = apply_substitution(m, s);
        CHECK(r.output_exprs == Rs({"u*z1*z2"}));
        // J(s) z' must reproduce f(u, s), row by row.
        std::map<Var, RatFunc> sub{{V("x1"), s.s[0]}, {V("x2"), s.s[1]}};
        for (std::size_t i = 0; i < 2; ++i) {
            RatFunc lhs = s.s[i].derivative(V("z1")) * r.rhs[0] + s.s[i].derivative(V("z2")) * r.rhs[1];
            CHECK(lhs == m.rhs[i].substitute(sub));
        }
        CHECK(r.rhs[1] == R("-2*z2^2"));
    }
    SUBCASE("singular substitution") {
        auto m = load("lotka_volterra.model");
        CHECK(kind_of([&] { apply_substitution(m, {Vs({"z1", "z2"}), Rs({"z1 + z2", "2*z1 + 2*z2"})}); }) ==
              ErrorKind::SingularSubstitution);
    }
}

TEST_CASE("denominator_shape") {
    Var x = V("x");
    auto a = denominator_shape(Rs({"u/x", "(u - 1)/x^2"}), x);
    REQUIRE(a);
    CHECK(a->a == R("1"));
    CHECK(a->b == R("0"));
    CHECK(a->m == 2);
    CHECK(!denominator_shape(Rs({"1/(x^2 - 1)"}), x));
    auto c = denominator_shape(Rs({"x + 1"}), x);
    REQUIRE(c);
    CHECK(c->m == 0);
    // 3*(x - 2)^2 expanded.
    auto d = denominator_shape(Rs({"1/(3*x^2 - 12*x + 12)", "x"}), x);
    REQUIRE(d);
    CHECK(!d->a.is_zero());
    CHECK(d->a.is_constant());
    CHECK(d->b == R("2"));
    CHECK(d->m == 2);
}

TEST_CASE("polynomial_realization_first_order") {
    SUBCASE("pole at the origin") {
        auto r = polynomial_realization_first_order(load("pole_input.model"));
        check_model(r, {"(1 - u)*z^4"}, {"u*z"});
    }
    SUBCASE("already polynomial") {
        auto m = load("cubic_poly.model");
        auto r = polynomial_realization_first_order(m);
        CHECK(r.rhs == m.rhs);
        CHECK(r.output_exprs == m.output_exprs);
        CHECK(r.states == m.states);
    }
    SUBCASE("numerator degree above the pole order") {
        try {
            polynomial_realization_first_order(load("cubic_rational.model"));
            FAIL("expected NoPolynomialRealization");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NoPolynomialRealization);
            CHECK(std::string(e.what()).find("shape") != std::string::npos);
        }
        // Hand execution: s = 1/z keeps z' polynomial but not y.
        auto m = load("cubic_rational.model");
        auto r = apply_substitution(m, {Vs({"z"}), Rs({"1/z"})});
        CHECK(r.rhs[0] == R("z^2*(1 - z^2)/3"));
        CHECK(!r.output_exprs[0].is_polynomial());
    }
    SUBCASE("input in a denominator") {
        auto m = parse_model("states: x\ninputs: u\noutputs: y\nx' = 1/(u + x)\ny = x\n");
        try {
            polynomial_realization_first_order(m);
            FAIL("expected NoPolynomialRealization");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("u-in-denominator") != std::string::npos);
        }
    }
    SUBCASE("shifted pole") {
        auto m = parse_model("states: x\noutputs: y\nx' = 1/(x - 1)\ny = 1/(x - 1)\n");
        auto r = polynomial_realization_first_order(m);
        // s = (1 + z)/z: y = z, z' = -z^2 * z = -z^3.
        check_model(r, {"-z^3"}, {"z"});
    }
}

TEST_CASE("verify_realization") {
    SUBCASE("predator-prey") {
        auto m = load("lotka_volterra.model");
        auto eq = make_io_equation(
            parse_poly("y*y_2 - y_1^2 - d*y^2*y_1 + c*y*y_1 + a*d*y^3 - a*c*y^2"), m, 0);
        CHECK(verify_realization(m, {eq}));
        auto bad = m.substitute_params({{V("c"), R("c + 1")}});
        CHECK(!verify_realization(bad, {eq}));
        CHECK(!check_realization(bad, {eq}).diagnostic.empty());
    }
    SUBCASE("cube-root output against the equation in h") {
        auto m = parse_model("states: z1\nparams: h\noutputs: y\nz1' = (h*z1 + 1)/3\ny = -h*z1^3\n");
        auto eq = make_io_equation(parse_poly("(y_1 - h*y)^3 + h*y^2"), m, 0);
        CHECK(verify_realization(m, {eq}));
    }
}

TEST_CASE("optimal_realization_general") {
    SUBCASE("square-root plane") {
        auto r = optimal_realization_general(load("square_root_plane.model"));
        REQUIRE(r.model.params == Vs({"h"}));
        CHECK(r.defs.at(V("h")) == R("c^2"));
        check_model(r.model, {"z2^3/(2*z1*h)", "(h*z1 + z2)/(3*z2^2)"}, {"h*z1^2"});
        CHECK(r.verified);
        REQUIRE(r.chosen);
        CHECK(r.components[*r.chosen].dimension == 2);
    }
    SUBCASE("square-root chain") {
        auto r = optimal_realization_general(load("square_root_chain.model"));
        check_model(r.model, {"z2", "z3", "h*z1"}, {"h*(z1^2 + 1)"});
        CHECK(r.verified);
    }
    SUBCASE("SEIR") {
        auto r = optimal_realization_general(load("seir.model"));
        // The third new state plays the role of I.
        check_model(r.in_params, {"-b*z1*z3/N", "-z3*(N - b*z1)/N", "a*nu*z2 - (a + nu)*z3"}, {"z3", "N"});
        CHECK(r.verified);
        CHECK(closed_over_params(r.model));
    }
    SUBCASE("bilinear with p2 = 1") {
        ReparamOptions o;
        o.fixed[V("p2")] = Rational(1);
        auto r = optimal_realization_general(load("bilinear.model"), o);
        REQUIRE(r.evaluation);
        CHECK(r.evaluation->assignment.at(V("p2")) == Rational(1));
        check_model(r.in_params,
                    {"p1*p3*z2 + u", "-(p1 + p3)*z2 - z1", "(p2*p4*u*z2 - z3)*(p1 + p3) + 2*p2*p4*u*z1"}, {"z3"});
        CHECK(r.verified);
    }
    SUBCASE("bilinear with a drawn value of p2") {
        auto r = optimal_realization_general(load("bilinear.model"));
        REQUIRE(r.evaluation);
        CHECK(!r.evaluation->assignment.at(V("p2")).is_zero());
        CHECK(r.verified);
        CHECK(closed_over_params(r.model));
    }
    SUBCASE("already identifiable input is echoed") {
        auto m = load("affine.model");
        auto r = optimal_realization_general(m);
        CHECK(!r.changed);
        CHECK(r.model.rhs == m.rhs);
    }
    SUBCASE("transcendental parameter evaluated on a degree-one tower") {
        auto r = optimal_realization_general(load("lotka_volterra.model"));
        REQUIRE(r.evaluation);
        CHECK(r.evaluation->assignment.size() == 1);
        CHECK(r.evaluation->assignment.count(V("b")) == 1);
        CHECK(r.verified);
    }
}

TEST_CASE("first-order optimal realizations") {
    auto m = load("cube_root.model");
    auto r2 = optimal_realization_first_order(m);
    check_model(r2.model, {"(h*z1 + 1)/3"}, {"-h*z1^3"});
    CHECK(r2.defs.at(V("h")) == R("c^3"));
    auto r3 = optimal_polynomial_realization_first_order(m);
    check_model(r3.model, {"(h*z1 + 1)/3"}, {"-h*z1^3"});
    for (const auto& f : r3.model.rhs) CHECK(f.is_polynomial());
    CHECK(realization_degree(m) == 3);
    CHECK(realization_degree(r3.model) == 3);
    CHECK(kind_of([&] { optimal_realization_first_order(load("lotka_volterra.model")); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { optimal_polynomial_realization_first_order(load("square_root_plane.model")); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("user-supplied component parametrization") {
    // The other three-dimensional component of the chain model.
    ReparamOptions o;
    o.component_param = std::map<Var, RatFunc>{{V("z1_0"), R("w1")}, {V("z1_1"), R("0")}, {V("z2_0"), R("0")},
                                               {V("z2_1"), R("w2")}, {V("z3_0"), R("0")}, {V("z3_1"), R("w3")}};
    auto r = optimal_realization_general(load("square_root_chain.model"), o);
    CHECK(r.substitution.provenance == Provenance::UserSupplied);
    check_model(r.model, {"h*w2", "w3 + 1", "w1"}, {"w1^2 + h"});
    CHECK(r.verified);
}

TEST_CASE("IO invariance, alpha freeness, degree preservation and idempotence") {
    for (const char* name : {"cube_root.model", "square_root_plane.model", "square_root_chain.model", "seir.model"}) {
        CAPTURE(name);
        auto m = load(name);
        auto r = optimal_realization_general(m);
        REQUIRE(r.changed);
        CHECK(verify_realization(r.in_params, io_equations(m)));
        CHECK(closed_over_params(r.model));
        for (const auto& f : r.model.rhs)
            for (Var v : f.vars()) CHECK(var_name(v).rfind("_alpha", 0) != 0);
        CHECK(realization_degree(r.model) == realization_degree(m));
        auto again = optimal_realization_general(r.model);
        CHECK(!again.changed);
        CHECK(again.model.rhs == r.model.rhs);
        CHECK(again.model.output_exprs == r.model.output_exprs);
    }
}
