#include "doctest.h"
#include "reparam/error.hpp"
#include "reparam/expr.hpp"
#include "reparam/model.hpp"
#include "reparam/modelfile.hpp"

#include <random>

using namespace reparam;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }
Var V(const char* s) { return intern(s); }

OdeModel load(const char* name) { return load_model_file(std::string(REPARAM_MODELS_DIR) + "/" + name).model; }

MPoly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, max_deg), pick(0, static_cast<int>(vars.size()) - 1);
    MPoly p;
    for (int t = 0; t < terms; ++t) {
        MPoly m(coef(rng));
        int d = deg(rng);
        for (int k = 0; k < d; ++k) m *= MPoly::var(vars[static_cast<std::size_t>(pick(rng))]);
        p += m;
    }
    return p;
}

// Parametrization given directly by its components (one output, x as state).
Parametrization single(const char* p0, const char* p1) {
    Parametrization p;
    p.comps = {{R(p0), R(p1)}};
    p.orders = {1};
    p.states = {V("x")};
    return p;
}

OdeModel shape_xy() {
    OdeModel m;
    m.states = {V("x")};
    m.outputs = {V("y")};
    return m;
}

}  // namespace

TEST_CASE("lie_derivative on the predator-prey model") {
    OdeModel lv = load("lotka_volterra.model");
    RatFunc y = RatFunc::var(V("x1"));
    RatFunc d1 = lie_derivative(y, lv);
    CHECK(d1 == R("a*x1 - b*x1*x2"));
    CHECK(lie_derivative(d1, lv) == R("-b*d*x1^2*x2 + b^2*x1*x2^2 + (b*c - 2*a*b)*x1*x2 + a^2*x1"));
    CHECK(lie_derivative(RatFunc(5), lv).is_zero());
}

TEST_CASE("lie_derivative shifts input derivatives") {
    OdeModel m = load("pole_input.model");
    RatFunc p = lie_derivative(m.output_exprs[0], m);
    CHECK(p == R("-u*(u - 1)/x^4 + u_1/x"));
    CHECK(input_shift(m.output_exprs[0], m) == R("u_1/x"));
}

TEST_CASE("Leibniz rule for lie_derivative on random fractions") {
    std::mt19937_64 rng(7);
    std::vector<Var> vars{V("x1"), V("x2"), V("u"), derivative_var(V("u"), 1), V("k")};
    OdeModel m;
    m.states = {V("x1"), V("x2")};
    m.inputs = {V("u")};
    m.params = {V("k")};
    m.outputs = {V("y")};
    m.output_exprs = {RatFunc::var(V("x1"))};
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        MPoly dens = random_poly(rng, vars, 2, 2);
        if (dens.is_zero()) dens = MPoly(1);
        m.rhs = {RatFunc(random_poly(rng, vars, 2, 3)), RatFunc(random_poly(rng, vars, 2, 2), MPoly(1) + MPoly::var(V("x2")).pow(2))};
        RatFunc p(random_poly(rng, vars, 3, 3), dens);
        RatFunc q(random_poly(rng, vars, 2, 3));
        CHECK(lie_derivative(p * q, m) == p * lie_derivative(q, m) + q * lie_derivative(p, m));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("default Lie orders and chain consistency") {
    OdeModel lv = load("lotka_volterra.model");
    CHECK(default_orders(lv) == std::vector<int>{2});
    OdeModel seir = load("seir.model");
    auto orders = default_orders(seir);
    CHECK(orders == std::vector<int>{3, 0});
    Parametrization p = build_parametrization(seir, orders);
    REQUIRE(p.comps.size() == 2);
    CHECK(p.comps[1][0] == R("N"));
    for (const auto& chain : p.comps)
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) CHECK(chain[j + 1] == lie_derivative(chain[j], seir));
    // SEIR second Lie derivative as displayed with the model.
    CHECK(p.comps[0][2] == R("(b*nu*S*I - a*N*nu*E - N*nu^2*E + a^2*N*I)/N"));
    CHECK(p.comps[0][3] == R("(b*N*nu^2*S*E - b^2*nu*S*I^2 - 2*a*b*N*nu*S*I - b*N*nu^2*S*I + a^2*N^2*nu*E + a*N^2*nu^2*E + N^2*nu^3*E - a^3*N^2*I)/N^2"));
    CHECK(jacobian(p).rank() == 3);
}

TEST_CASE("jacobian examples") {
    Parametrization p = single("x^2", "0");
    RatMatrix j = jacobian(p);
    CHECK(j.at(0, 0) == R("2*x"));
    CHECK(j.at(1, 0).is_zero());
    CHECK(j.rank() == 1);
    Parametrization q;
    q.comps = {{R("x1"), R("x2")}};
    q.orders = {1};
    q.states = {V("x1"), V("x2")};
    RatMatrix jq = jacobian(q);
    CHECK(jq.rank() == 2);
    CHECK(jq.det() == RatFunc(1));
}

TEST_CASE("bilinear Jacobian rows") {
    OdeModel m = load("bilinear.model");
    Parametrization p = build_parametrization(m, {3});
    RatMatrix j = jacobian(p);
    REQUIRE(j.rows() == 4);
    // Entries with input derivatives dropped are the displayed matrix.
    std::map<Var, RatFunc> drop{{derivative_var(V("u"), 1), RatFunc()}, {derivative_var(V("u"), 2), RatFunc()}};
    RatMatrix shown = j.substitute(drop);
    const char* expect[4][3] = {{"0", "0", "1"},
                                {"p4*u", "p2*u", "-p1 - p3"},
                                {"-p4*(2*p1 + p3)*u", "-p2*(p1 + 2*p3)*u", "(p1 + p3)^2"},
                                {"p4*(3*p1^2 + 3*p1*p3 + p3^2)*u", "p2*(p1^2 + 3*p1*p3 + 3*p3^2)*u", "-(p1 + p3)^3"}};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(shown.at(r, c) == R(expect[r][c]));
}

TEST_CASE("realization_from_parametrization examples") {
    OdeModel a = realization_from_parametrization(single("-x^3/4 - 3", "x^4/8"), {0}, shape_xy());
    CHECK(a.rhs[0] == R("-x^2/6"));
    CHECK(a.output_exprs[0] == R("-x^3/4 - 3"));
    OdeModel b = realization_from_parametrization(single("x^3", "-x^2 + 1"), {0}, shape_xy());
    CHECK(b.rhs[0] == R("-(x^2 - 1)/(3*x^2)"));
    OdeModel c = realization_from_parametrization(single("x", "1"), {0}, shape_xy());
    CHECK(c.rhs[0] == RatFunc(1));
}

TEST_CASE("realization criterion rejects input derivatives") {
    OdeModel shape = shape_xy();
    shape.inputs = {V("u")};
    CHECK_THROWS_AS(realization_from_parametrization(single("x + u_1", "1"), {0}, shape), Error);
    try {
        realization_from_parametrization(single("x", "u_2"), {0}, shape);
        FAIL("expected NotARealization");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotARealization);
    }
}

TEST_CASE("properness_check") {
    auto sq = properness_check(single("x^2", "0"));
    CHECK_FALSE(sq.proper);
    CHECK(sq.fiber_degree == 2);
    auto lin = properness_check(single("x", "1"));
    CHECK(lin.proper);
    CHECK(lin.fiber_degree == 1);
    OdeModel lv = load("lotka_volterra.model");
    // Oracle: y = x1, y' = a x1 - b x1 x2 gives x1 = y, x2 = (a y - y')/(b y).
    auto p = build_parametrization(lv, {2});
    CHECK(properness_check(p).proper);
    auto p1 = build_parametrization(lv, {1});
    CHECK(properness_check(p1).fiber_degree == 1);
}

TEST_CASE("round trip through the realization criterion on random models") {
    std::mt19937_64 rng(11);
    int done = 0, tries = 0;
    while (done < 20 && tries < 200) {
        ++tries;
        OdeModel m;
        int d = 1 + done % 2;
        std::vector<Var> xs = d == 1 ? std::vector<Var>{V("x1")} : std::vector<Var>{V("x1"), V("x2")};
        std::vector<Var> vars = xs;
        vars.push_back(V("u"));
        m.states = xs;
        m.inputs = {V("u")};
        m.outputs = {V("y")};
        for (int i = 0; i < d; ++i) m.rhs.push_back(RatFunc(random_poly(rng, vars, 2, 3)));
        m.output_exprs = {RatFunc(random_poly(rng, xs, 2, 2) + MPoly::var(xs[0]))};
        auto orders = default_orders(m);
        auto p = build_parametrization(m, orders);
        if (jacobian(p).rank() < static_cast<std::size_t>(d)) continue;
        auto sel = default_selection(p);
        REQUIRE(sel);
        OdeModel back = realization_from_parametrization(p, *sel, m);
        for (int i = 0; i < d; ++i) CHECK(back.rhs[static_cast<std::size_t>(i)] == m.rhs[static_cast<std::size_t>(i)]);
        CHECK(back.output_exprs[0] == m.output_exprs[0]);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("parse_model") {
    OdeModel lv = load("lotka_volterra.model");
    CHECK(lv.states.size() == 2);
    CHECK(lv.params.size() == 4);
    CHECK(lv.rhs[0] == R("a*x1 - b*x1*x2"));
    CHECK(parse_model(lv.str()).rhs == lv.rhs);
    try {
        parse_model("states: x1, x2\noutputs: y\nx1' = x2\nx2' = 1\ny = x3\n");
        FAIL("expected UndeclaredSymbol");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::UndeclaredSymbol);
        CHECK(e.line() == 5);
        CHECK(e.column() == 5);
    }
    try {
        parse_model("states: x\noutputs:\nx' = 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
    try {
        parse_model("states: x\noutputs: y\nx' = 1\nx' = 2\ny = x\n");
        FAIL("expected DuplicateEquation");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::DuplicateEquation);
    }
}
