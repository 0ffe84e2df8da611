#include "doctest.h"
#include "reparam/error.hpp"
#include "reparam/expr.hpp"
#include "reparam/polyalg.hpp"
#include "reparam/ratfunc.hpp"

#include <random>

using namespace reparam;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
RatFunc R(const char* s) { return parse_ratfunc(s); }

MPoly random_poly(std::mt19937_64& rng, const std::vector<Var>& vs, int terms, int maxdeg) {
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
        std::vector<Monomial::Factor> fs;
        for (Var v : vs) fs.push_back({v, static_cast<std::uint32_t>(rng() % (maxdeg + 1))});
        long c = static_cast<long>(rng() % 19) - 9;
        ts.push_back({Monomial(fs), Rational(c)});
    }
    return MPoly::from_terms(ts);
}

}  // namespace

TEST_CASE("rational canonical form") {
    Rational a = Rational::parse("-4/6");
    CHECK(a.num() == -2);
    CHECK(a.den() == 3);
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational(0).den() == 1);
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
    CHECK(Rational(BigInt(6), BigInt(-4)) == Rational(-3, 2));
}

TEST_CASE("polynomial ring axioms on random triples") {
    std::mt19937_64 rng(7);
    std::vector<Var> vs{intern("x"), intern("y"), intern("z")};
    for (int i = 0; i < 30; ++i) {
        MPoly a = random_poly(rng, vs, 4, 2), b = random_poly(rng, vs, 4, 2), c = random_poly(rng, vs, 3, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b - b == a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("derivative, substitution and coefficient views") {
    MPoly p = P("x^2*y + 3*x - y^3");
    CHECK(p.derivative(intern("x")) == P("2*x*y + 3"));
    CHECK(p.substitute(intern("y"), P("x + 1")) == P("x^3 + x^2 + 3*x - (x+1)^3"));
    auto cs = p.coeffs_in(intern("x"));
    REQUIRE(cs.size() == 3);
    CHECK(cs[2] == P("y"));
    CHECK(MPoly::from_coeffs(intern("x"), cs) == p);
}

TEST_CASE("exact division and gcd") {
    MPoly a = P("(x + y)^2*(x - 2*y + 1)");
    MPoly b = P("(x + y)*(x*y - 3)");
    CHECK(poly_gcd(a, b) == P("x + y"));
    CHECK(divide_exact(a, P("x + y")).has_value());
    CHECK_FALSE(divide_exact(a, P("x - y")).has_value());
    CHECK(poly_gcd(P("6*x^2*y"), P("4*x*y^3")) == P("x*y"));
    CHECK(poly_gcd(P("x^2 - 1"), P("x^2 + 2*x + 1")) == P("x + 1"));
}

TEST_CASE("gcd of random products") {
    std::mt19937_64 rng(11);
    std::vector<Var> vs{intern("x"), intern("y"), intern("z")};
    for (int i = 0; i < 20; ++i) {
        MPoly a = random_poly(rng, vs, 3, 2), b = random_poly(rng, vs, 3, 2), c = random_poly(rng, vs, 3, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        MPoly g = poly_gcd(a * c, b * c);
        CHECK(divide_exact(g, c.primitive()).has_value());
        CHECK(divide_exact(a * c, g).has_value());
        CHECK(divide_exact(b * c, g).has_value());
    }
}

TEST_CASE("rf_normalize") {
    RatFunc f = rf_normalize(P("x^2 - 1"), P("x - 1"));
    CHECK(f.num() == P("x + 1"));
    CHECK(f.den() == MPoly(1));
    RatFunc z = rf_normalize(MPoly(), P("x"));
    CHECK(z.is_zero());
    CHECK(z.den() == MPoly(1));
    // content oracle: gcd(2, 4) = 2
    RatFunc c = rf_normalize(P("2*x"), MPoly(4));
    CHECK(c.num() == P("x"));
    CHECK(c.den() == MPoly(2));
    CHECK(rf_normalize(c.num(), c.den()) == c);
    CHECK_THROWS_AS(rf_normalize(P("x"), MPoly()), Error);
    CHECK(rf_normalize(P("x"), P("-y")).den() == P("y"));
}

TEST_CASE("rf_normalize cancels common factors of random polynomials") {
    std::mt19937_64 rng(5);
    std::vector<Var> vs{intern("x"), intern("y")};
    for (int i = 0; i < 20; ++i) {
        MPoly a = random_poly(rng, vs, 3, 2), b = random_poly(rng, vs, 3, 2), c = random_poly(rng, vs, 2, 2);
        if (b.is_zero() || c.is_zero()) continue;
        CHECK(rf_normalize(a * c, b * c) == rf_normalize(a, b));
    }
}

TEST_CASE("evaluate") {
    CHECK(R("u/x").evaluate({{intern("u"), Rational(1)}}) == R("1/x"));
    CHECK(R("(x^2-1)/(x-1)").evaluate({{intern("x"), Rational(1)}}) == RatFunc(2));
    CHECK_THROWS_AS(R("1/x").evaluate({{intern("x"), Rational(0)}}), Error);
}

TEST_CASE("print and parse round trip") {
    std::mt19937_64 rng(3);
    std::vector<Var> vs{intern("x"), intern("y"), derivative_var(intern("u"), 2)};
    for (int i = 0; i < 20; ++i) {
        MPoly a = random_poly(rng, vs, 4, 2), b = random_poly(rng, vs, 3, 2);
        if (b.is_zero()) continue;
        RatFunc f = rf_normalize(a, b);
        CHECK(parse_ratfunc(f.str()) == f);
    }
    CHECK(R("u''").num() == MPoly::var(derivative_var(intern("u"), 2)));
    CHECK(MPoly::var(derivative_var(intern("y"), 1)).str() == "y'");
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_ratfunc("x + * y");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse_ratfunc("1/(x-x)"), Error);
}

TEST_CASE("factorization") {
    auto check = [](const MPoly& p, std::size_t nfactors) {
        Factorization f = factor(p);
        CHECK(f.expand() == p);
        std::size_t n = 0;
        for (const auto& [g, e] : f.factors) n += e;
        CHECK(n == nfactors);
        for (const auto& [g, e] : f.factors) CHECK(is_irreducible(g));
    };
    check(P("x^2 - 1"), 2);
    check(P("x^4 + 1"), 1);
    check(P("x^4 - 4"), 2);
    check(P("6*x^3*y - 6*x*y"), 4);  // 6 is a unit
    check(P("(x + y)^2*(x - y)*(x*y + 1)"), 4);
    check(P("(x^2 + y^2 + 1)*(x^2 - y^3)"), 2);
    check(P("(h*z^2 + 3*w^2)*(z + w)*z"), 3);
    check(P("(a*b + c)*(a + b*c + 2)*(a - 1)"), 3);
    check(P("x^6 - 1"), 4);
    check(P("(x^2 - 2)*(x^2 - 3)*(x^2-6)"), 3);
    check(P("(x^2*y + 3*y^2 - x + 2)*(y^3*x - x^2 + y + 5)"), 2);
    check(P("(2*x - 3)^3*(y + 1)^2"), 5);
    check(P("X^2 - (p1 + p3)*X + p1*p3"), 2);
    check(P("X^2 - s*X + q"), 1);
}

TEST_CASE("factorization of random products") {
    std::mt19937_64 rng(21);
    std::vector<Var> vs{intern("x"), intern("y"), intern("z")};
    for (int i = 0; i < 15; ++i) {
        MPoly a = random_poly(rng, vs, 3, 2) + MPoly(1), b = random_poly(rng, vs, 3, 1) + MPoly::var(vs[0]);
        if (a.is_constant() || b.is_constant()) continue;
        MPoly p = a * b;
        Factorization f = factor(p);
        CHECK(f.expand() == p);
        CHECK(f.factors.size() >= 2);
    }
}
