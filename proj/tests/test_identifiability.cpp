#include "doctest.h"
#include "reparam/error.hpp"
#include "reparam/expr.hpp"
#include "reparam/groebner.hpp"
#include "reparam/identifiability.hpp"
#include "reparam/modelfile.hpp"

#include <algorithm>
#include <random>

using namespace reparam;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }
Var V(const char* s) { return intern(s); }

OdeModel load(const char* name) { return load_model_file(std::string(REPARAM_MODELS_DIR) + "/" + name).model; }

std::vector<Var> Vs(std::initializer_list<const char*> names) {
    std::vector<Var> out;
    for (const char* n : names) out.push_back(V(n));
    return out;
}

// Minimal polynomial with the generator symbols replaced by their definitions.
RatFunc min_poly_in_params(const UPoly& m, const std::vector<Var>& h, const std::vector<RatFunc>& defs, Var x) {
    std::map<Var, RatFunc> sub;
    for (std::size_t i = 0; i < h.size(); ++i) sub[h[i]] = defs[i];
    return from_upoly(m, x).substitute(sub);
}

std::size_t alpha_degree(const RatFunc& f, const TowerReport& t) {
    if (!t.tower.alpha) return 0;
    return f.num().degree(*t.tower.alpha) + f.den().degree(*t.tower.alpha);
}

// Number of points of the fiber of c -> (defs(c)) over the image of a random
// rational point, counted by an independent Groebner computation over Q.
std::size_t fiber_size(const std::vector<RatFunc>& defs, const std::vector<Var>& params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<Var, Rational> pt;
    for (Var c : params) pt[c] = Rational(static_cast<long>(rng() % 7) + 2);
    std::vector<MPoly> gens;
    MPoly den(1);
    for (const auto& d : defs) {
        Rational v = d.evaluate(pt).constant_value();
        gens.push_back(d.num() - d.den().scaled(v));
        den *= d.den();
    }
    Var w = V("_fiber_w");
    gens.push_back(MPoly::var(w) * den - MPoly(1));
    std::vector<Var> ring = params;
    ring.push_back(w);
    return *GroebnerBasis(gens, ring, MonomialOrder::grevlex()).quotient_dimension();
}

}  // namespace

TEST_CASE("algebraicity over a generator set") {
    SUBCASE("cube") {
        Var h = V("h");
        auto alg = is_algebraic_over(R("c"), {h}, {R("c^3")}, {V("c")});
        REQUIRE(alg.algebraic);
        // Oracle: reduced basis of <c^3 - h> over Q(h).
        GroebnerBasis gb({MPoly::var(V("c")).pow(3) - MPoly::var(h)}, {V("c")}, MonomialOrder::lex());
        REQUIRE(gb.monic().size() == 1);
        CHECK(from_upoly(alg.min_poly, V("c")) == gb.monic()[0]);
        CHECK(from_upoly(alg.min_poly, V("X")) == R("X^3 - h"));
    }
    SUBCASE("bilinear parameter") {
        std::vector<RatFunc> defs{R("p1*p3"), R("p2*p4"), R("p1 + p3")};
        auto h = Vs({"hb1", "hb2", "hb3"});
        auto alg = is_algebraic_over(R("p1"), h, defs, Vs({"p1", "p2", "p3", "p4"}));
        REQUIRE(alg.algebraic);
        CHECK(min_poly_in_params(alg.min_poly, h, defs, V("X")) == R("X^2 - (p1 + p3)*X + p1*p3"));
    }
    SUBCASE("independent symbols") {
        CHECK(!is_algebraic_over(R("b"), {R("a")}, Vs({"a", "b"})).algebraic);
    }
}

TEST_CASE("field membership") {
    auto p = Vs({"a", "b", "c", "d"});
    std::vector<RatFunc> lv{R("d"), R("c"), R("a*d"), R("a*c")};
    CHECK(in_field(R("a"), lv, p));
    CHECK(in_field(R("a^2*c + d"), lv, p));
    CHECK(!in_field(R("b"), lv, p));
    CHECK(!in_field(R("a + b"), lv, p));
    auto q = Vs({"p1", "p3"});
    CHECK(!in_field(R("p1"), {R("p1*p3"), R("p1 + p3")}, q));
    CHECK(in_field(R("p1^2 + p3^2"), {R("p1*p3"), R("p1 + p3")}, q));
    CHECK(in_field(R("1/c"), {R("c^2"), R("c^3")}, {V("c")}));
    CHECK(independent_subset({R("c^2"), R("c^3")}, {V("c")}).size() == 1);
}

TEST_CASE("field tower") {
    SUBCASE("cube root") {
        auto t = build_field_tower({V("c")}, {R("c^3")});
        REQUIRE(t.tower.alpha);
        CHECK(t.degree() == 3);
        CHECK(t.tower.alpha_definition == R("c"));
        CHECK(t.transcendental.empty());
        CHECK(min_poly_in_params(t.tower.min_poly, t.tower.gens, t.tower.definitions, V("X")) == R("X^3 - c^3"));
    }
    SUBCASE("SEIR") {
        auto params = Vs({"a", "b", "nu", "N"});
        auto t = build_field_tower(params, {R("N"), R("b"), R("a + nu"), R("a*nu")});
        REQUIRE(t.tower.alpha);
        CHECK(t.degree() == 2);
        CHECK(t.tower.alpha_definition == R("a"));
        CHECK(min_poly_in_params(t.tower.min_poly, t.tower.gens, t.tower.definitions, V("X")) ==
              R("X^2 - (a + nu)*X + a*nu"));
        CHECK(fiber_size(t.tower.definitions, params, 3) == t.degree());
    }
    SUBCASE("bilinear") {
        auto params = Vs({"p1", "p2", "p3", "p4"});
        auto t = build_field_tower(params, {R("p1 + p3"), R("p1*p3"), R("p2*p4")});
        REQUIRE(t.tower.alpha);
        CHECK(t.transcendental == Vs({"p2"}));
        CHECK(t.tower.alpha_definition == R("p1"));
        CHECK(t.degree() == 2);
        CHECK(fiber_size(t.tower.definitions, params, 5) == t.degree());
    }
    SUBCASE("degree one") {
        auto t = build_field_tower(Vs({"a", "c", "d"}), {R("a"), R("c"), R("d")});
        CHECK(!t.tower.alpha);
        CHECK(t.degree() == 1);
    }
    SUBCASE("no single parameter is primitive") {
        // Q(a, b) over Q(a^2, b^2) needs a combination such as a + k*b.
        auto params = Vs({"a", "b"});
        auto t = build_field_tower(params, {R("a^2"), R("b^2")}, 7);
        REQUIRE(t.tower.alpha);
        CHECK(t.degree() == 4);
        CHECK(t.draws >= 1);
        CHECK(fiber_size(t.tower.definitions, params, 11) == 4);
        std::size_t nonzero = std::count_if(t.alpha_coeffs.begin(), t.alpha_coeffs.end(), [](const Rational& r) { return !r.is_zero(); });
        CHECK(nonzero == 2);
        // Same seed, same choice.
        auto t2 = build_field_tower(params, {R("a^2"), R("b^2")}, 7);
        CHECK(t2.alpha_coeffs == t.alpha_coeffs);
    }
    SUBCASE("search can be exhausted") {
        CHECK_THROWS_AS(build_field_tower(Vs({"a", "b"}), {R("a^2"), R("b^2")}, 7, 0), Error);
    }
}

TEST_CASE("express_in_tower") {
    auto t = build_field_tower({V("c")}, {R("c^3")});
    Var h = t.tower.gens[0], a = *t.tower.alpha;
    CHECK(express_in_tower(R("c^4"), t) == RatFunc::var(h) * RatFunc::var(a));
    CHECK(express_in_tower(R("1/c"), t) == RatFunc::var(a).pow(2) / RatFunc::var(h));
    CHECK(alpha_degree(express_in_tower(R("c^3"), t), t) == 0);

    auto params = Vs({"a", "b", "nu", "N"});
    std::vector<RatFunc> gens{R("N"), R("b"), R("a + nu"), R("a*nu")};
    auto s = build_field_tower(params, gens);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        RatFunc e = express_in_tower(gens[i], s);
        CHECK(alpha_degree(e, s) == 0);
        CHECK(e == RatFunc::var(s.tower.gens[i]));
    }
    CHECK(express_in_tower(R("a"), s) == RatFunc::var(*s.tower.alpha));
    RatFunc nu = express_in_tower(R("nu"), s);
    CHECK(alpha_degree(nu, s) == 1);
    CHECK(s.tower.to_params(nu) == R("nu"));
    // The minimal polynomial vanishes at alpha.
    RatFunc m = s.tower.min_poly_expr().substitute(*s.tower.alpha, s.tower.alpha_definition);
    CHECK(s.tower.to_params(m).is_zero());
}

TEST_CASE("display names of generators") {
    OdeModel m = load("seir.model");
    auto gens = identifiable_generators(io_equations(m), m);
    auto t = build_field_tower(m.used_params(), gens);
    auto names = display_names(t, m);
    std::vector<std::string> shown;
    for (Var g : t.tower.gens) shown.push_back(names.at(g).str());
    CHECK(shown == std::vector<std::string>{"N", "b", "h1", "h2"});
}

TEST_CASE("suitable evaluation") {
    OdeModel m = load("bilinear.model");
    auto eqs = io_equations(m);
    auto gens = identifiable_generators(eqs, m);
    auto t = build_field_tower(m.used_params(), gens);
    auto p = build_parametrization(m, default_orders(m));
    REQUIRE(t.transcendental == Vs({"p2"}));

    SUBCASE("forced p2 = 1") {
        auto ev = suitable_evaluation(m, p, gens, eqs, t.transcendental, 0, {{V("p2"), Rational(1)}});
        CHECK(ev.assignment.at(V("p2")) == Rational(1));
        REQUIRE(ev.rewrite.count(V("p4")));
        CHECK(ev.rewrite.at(V("p4")) == R("p2*p4"));
        // Oracle: IO-equations recomputed on the evaluated model, pulled back by the rewrite.
        auto eqs_a = io_equations(ev.model);
        REQUIRE(eqs_a.size() == eqs.size());
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            MPoly back = RatFunc(eqs_a[i].poly).substitute(ev.rewrite).num();
            CHECK(proportional(back, eqs[i].poly, signal_vars(eqs[i].poly, m)));
        }
        CHECK(jacobian(build_parametrization(ev.model, default_orders(ev.model))).rank() == jacobian(p).rank());
    }
    SUBCASE("forced p2 = 0 is rejected") {
        CHECK_THROWS_AS(suitable_evaluation(m, p, gens, eqs, t.transcendental, 0, {{V("p2"), Rational(0)}}), Error);
        try {
            suitable_evaluation(m, p, gens, eqs, t.transcendental, 0, {{V("p2"), Rational(0)}});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EvaluationSearchExhausted);
            CHECK(std::string(e.what()).find("J(P)") != std::string::npos);
        }
    }
    SUBCASE("random draw") {
        auto ev = suitable_evaluation(m, p, gens, eqs, t.transcendental, 42);
        CHECK(!ev.assignment.at(V("p2")).is_zero());
        for (const auto& e : eqs)
            for (const auto& c : e.normalized_coeffs) {
                std::map<Var, RatFunc> sub;
                for (const auto& [v, r] : ev.assignment) sub[v] = RatFunc(r);
                CHECK(c.substitute(sub).substitute(ev.rewrite) == c);
            }
        auto again = suitable_evaluation(m, p, gens, eqs, t.transcendental, 42);
        CHECK(again.assignment == ev.assignment);
    }
    SUBCASE("only residual parameters can be fixed") {
        CHECK_THROWS_AS(suitable_evaluation(m, p, gens, eqs, t.transcendental, 0, {{V("p1"), Rational(1)}}), Error);
    }
}

TEST_CASE("predator-prey has a transcendental residual") {
    OdeModel m = load("lotka_volterra.model");
    auto eqs = io_equations(m);
    auto gens = identifiable_generators(eqs, m);
    auto t = build_field_tower(m.used_params(), gens);
    CHECK(t.transcendental == Vs({"b"}));
    CHECK(t.degree() == 1);
    auto ev = suitable_evaluation(m, build_parametrization(m, default_orders(m)), gens, eqs, t.transcendental);
    CHECK(ev.assignment.size() == 1);
    CHECK(!ev.assignment.at(V("b")).is_zero());
    CHECK(ev.rewrite.empty());
}
