#include "doctest.h"
#include "reparam/error.hpp"
#include "reparam/expr.hpp"
#include "reparam/groebner.hpp"
#include "reparam/polyalg.hpp"

#include <random>

using namespace reparam;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
Var V(const char* s) { return intern(s); }

std::vector<MPoly> Ps(std::initializer_list<const char*> ss) {
    std::vector<MPoly> out;
    for (auto s : ss) out.push_back(P(s));
    return out;
}

bool same_ideal(const std::vector<MPoly>& a, const std::vector<MPoly>& b, const std::vector<Var>& ring) {
    return ideal_contains(a, b, ring) && ideal_contains(b, a, ring);
}

const std::vector<MPoly>& ex43_witness() {
    static const std::vector<MPoly> w = Ps({
        "-3*h*z0*z2^2 - 3*h*z1^2*z2 - 3*z0^2*z1",
        "-3*h*z1*z2^2 - 3*z0^2*z2 - 3*z0*z1^2",
        "-3*h^2*z0*z2^2 - 3*h^2*z1^2*z2 - 3*h*z0^2*z1 - 2*h*z1*z2 - z0^2",
        "-3*h^2*z1*z2^2 - 3*h*z0^2*z2 - 3*h*z0*z1^2 - h*z2^2 - 2*z0*z1",
    });
    return w;
}

}  // namespace

TEST_CASE("groebner_basis examples") {
    GroebnerBasis a(Ps({"x", "y"}), {V("x"), V("y")}, MonomialOrder::lex());
    CHECK(a.cleared() == Ps({"y", "x"}));

    // hand Buchberger oracle: S-poly of x^2+y^2-1 and x-y reduces to 2y^2 - 1
    GroebnerBasis b(Ps({"x^2 + y^2 - 1", "x - y"}), {V("x"), V("y")}, MonomialOrder::lex());
    auto m = b.monic();
    REQUIRE(m.size() == 2);
    CHECK(m[0] == parse_ratfunc("y^2 - 1/2"));
    CHECK(m[1] == parse_ratfunc("x - y"));
    CHECK(b.verify());

    GroebnerBasis c(Ps({"x - t", "y - t^2"}), {V("t"), V("x"), V("y")}, MonomialOrder::block(1));
    CHECK(c.contains(P("y - x^2")));
    bool found = false;
    for (const auto& g : c.cleared()) found = found || g == P("x^2 - y") || g == P("y - x^2");
    CHECK(found);
}

TEST_CASE("every input generator reduces to zero") {
    auto gens = Ps({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"});
    GroebnerBasis gb(gens, {V("x"), V("y")}, MonomialOrder::grevlex());
    for (const auto& g : gens) CHECK(gb.contains(g));
    CHECK(gb.verify());
    // reduced grevlex basis of this classic ideal is {x^2, xy, y^2 - x/2}
    CHECK(gb.size() == 3);
    CHECK(gb.contains(P("x^2")));
    CHECK(gb.contains(P("2*y^2 - x")));
}

TEST_CASE("eliminate") {
    auto e = eliminate(Ps({"x - t", "y - t^2"}), {V("t")}, {V("x"), V("y")});
    REQUIRE(e.size() == 1);
    CHECK(e[0] == P("x^2 - y"));
    // h = c^3: nothing survives besides the defining relation when c is eliminated
    auto f = eliminate(Ps({"h - c^3"}), {V("c")}, {V("h")});
    CHECK(f.empty());
}

TEST_CASE("saturate") {
    std::vector<Var> xy{V("x"), V("y")};
    CHECK(same_ideal(saturate(Ps({"x*y"}), P("x"), xy), Ps({"y"}), xy));
    // brute-force oracle: <x^2, xy> : x^inf is the unit ideal (x is a unit after saturation)
    CHECK(same_ideal(saturate(Ps({"x^2", "x*y"}), P("x"), xy), Ps({"1"}), xy));
    CHECK(same_ideal(saturate(Ps({"x^2*y", "y^2"}), MPoly(1), xy), Ps({"x^2*y", "y^2"}), xy));
    // <x*(x - y), y*(y - 1)> : y^inf = <x - y, y - 1>
    CHECK(same_ideal(saturate(Ps({"x^2 - x*y", "y^2 - y"}), P("y"), xy), Ps({"x^2 - x", "y - 1"}), xy));
}

TEST_CASE("saturation idempotence and colon property on random ideals") {
    std::mt19937_64 rng(17);
    std::vector<Var> ring{V("x"), V("y"), V("z")};
    std::vector<MPoly> lin = Ps({"x", "y", "z", "x + y", "y - z", "x - 2*z + 1", "z + 1"});
    for (int i = 0; i < 10; ++i) {
        MPoly a = lin[rng() % lin.size()] * lin[rng() % lin.size()];
        MPoly b = lin[rng() % lin.size()] * lin[rng() % lin.size()] * lin[rng() % lin.size()];
        MPoly f = lin[rng() % lin.size()];
        std::vector<MPoly> I{a, b};
        auto s1 = saturate(I, f, ring);
        auto s2 = saturate(s1, f, ring);
        CHECK(same_ideal(s1, s2, ring));
        CHECK(ideal_contains(s1, I, ring));
        // f*g in I implies g in I : f^inf
        for (const auto& g : I)
            if (auto q = divide_exact(g, f)) CHECK(ideal_membership(*q, s1, ring));
    }
}

TEST_CASE("elimination is monotone") {
    std::vector<Var> front{V("t")}, rest{V("x"), V("y")};
    auto I = Ps({"x - t^2", "y - t^3"});
    auto J = Ps({"x - t^2", "y - t^3", "x*t - y"});
    auto eI = eliminate(I, front, rest), eJ = eliminate(J, front, rest);
    CHECK(ideal_contains(eJ, eI, rest));
}

TEST_CASE("ideal_dimension") {
    CHECK(ideal_dimension(Ps({"x"}), {V("x"), V("y")}) == 1);
    CHECK(ideal_dimension(Ps({"x*y"}), {V("x"), V("y")}) == 1);
    CHECK(ideal_dimension(Ps({"x", "y - 1"}), {V("x"), V("y")}) == 0);
    CHECK_THROWS_AS(ideal_dimension(Ps({"x", "x - 1"}), {V("x")}), Error);
}

TEST_CASE("ideal membership") {
    std::vector<Var> txy{V("t"), V("x"), V("y")};
    CHECK(ideal_membership(P("y - x^2"), Ps({"x - t", "y - t^2"}), txy));
    CHECK_FALSE(ideal_membership(P("x"), Ps({"x*y"}), {V("x"), V("y")}));
}

TEST_CASE("quotient dimension") {
    GroebnerBasis gb(Ps({"x^2 - a", "y - x"}), {V("x"), V("y")}, MonomialOrder::grevlex());
    CHECK(gb.quotient_dimension() == std::optional<std::size_t>(2));
    GroebnerBasis line(Ps({"x"}), {V("x"), V("y")}, MonomialOrder::grevlex());
    CHECK_FALSE(line.quotient_dimension().has_value());
}

TEST_CASE("coefficients in a parameter field") {
    // over Q(a): <a*x - 1> contains x - 1/a
    GroebnerBasis gb(Ps({"a*x - 1", "x*y - a"}), {V("x"), V("y")}, MonomialOrder::grevlex());
    CHECK(gb.contains(P("y - a^2")));
    auto m = gb.monic();
    REQUIRE(m.size() == 2);
    CHECK(gb.verify());
}

TEST_CASE("split_components: principal and monomial ideals") {
    std::vector<Var> xy{V("x"), V("y")};
    auto cs = split_components(Ps({"x*y"}), xy);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].gens == Ps({"x"}));
    CHECK(cs[1].gens == Ps({"y"}));
}

TEST_CASE("split_components: witness ideal with an embedded point") {
    std::vector<Var> z{V("z0"), V("z1"), V("z2")};
    auto cs = split_components(ex43_witness(), z);
    REQUIRE(cs.size() == 2);
    CHECK(same_ideal(cs[0].gens, Ps({"z0", "z2"}), z));
    CHECK(cs[0].dimension == 1);
    CHECK(same_ideal(cs[1].gens, Ps({"z0", "z1", "z2"}), z));
    CHECK(cs[1].dimension == 0);
    CHECK(cs[1].embedded);
}

TEST_CASE("split_components: two-state witness ideal") {
    std::vector<Var> z{V("z1_0"), V("z1_1"), V("z2_0"), V("z2_1")};
    auto cs = split_components(Ps({"2*z1_0*z1_1", "h*z2_1^3 + 3*z2_0^2*z2_1", "z1_0 + z2_1"}), z);
    REQUIRE(cs.size() == 2);
    CHECK(same_ideal(cs[0].gens, Ps({"z1_0", "z2_1"}), z));
    CHECK(cs[0].dimension == 2);
    CHECK(same_ideal(cs[1].gens, Ps({"z1_1", "z1_0 + z2_1", "h*z2_1^2 + 3*z2_0^2"}), z));
    CHECK(cs[1].dimension == 1);
    CHECK(cs[1].certified);
    // intersection of the components lies in the radical of the ideal
    auto I = Ps({"2*z1_0*z1_1", "h*z2_1^3 + 3*z2_0^2*z2_1", "z1_0 + z2_1"});
    auto inter = intersect(cs[0].gens, cs[1].gens, z);
    for (const auto& g : inter) {
        bool in_radical = false;
        for (unsigned e = 1; e <= 3 && !in_radical; ++e) in_radical = ideal_membership(g.pow(e), I, z);
        CHECK(in_radical);
    }
}

TEST_CASE("budget exhaustion surfaces as an error") {
    GbBudgetScope scope(1);
    CHECK_THROWS_AS(GroebnerBasis(Ps({"x^2*y - z", "x*y^2 - x", "x*z - y^2 + 1"}), {V("x"), V("y"), V("z")},
                                  MonomialOrder::grevlex()),
                    Error);
}
