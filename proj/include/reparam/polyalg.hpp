#pragma once

#include "reparam/mpoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace reparam {

// a / b when b divides a exactly, nullopt otherwise.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
MPoly divide_monomial(const MPoly& a, const Monomial& m);

// Greatest common divisor, normalized to coprime integer coefficients and a
// positive leading coefficient (gcd(0, 0) = 0).
MPoly poly_gcd(const MPoly& a, const MPoly& b);
MPoly poly_lcm(const MPoly& a, const MPoly& b);
// gcd of the coefficients of p viewed in v.
MPoly content_in(const MPoly& p, Var v);
// Pseudo-remainder of a by b in v.
MPoly pseudo_rem(const MPoly& a, const MPoly& b, Var v);

struct Factorization {
    Rational unit;
    std::vector<std::pair<MPoly, unsigned>> factors;  // primitive, positive leading coefficient
    MPoly expand() const;
};

// Irreducible factorization over Q.
Factorization factor(const MPoly& p);
// Product of the distinct irreducible factors, primitive.
MPoly square_free_part(const MPoly& p);
bool is_irreducible(const MPoly& p);

}  // namespace reparam
