#pragma once

#include "reparam/ratfunc.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace reparam {

enum class OrderKind { GRevLex, Lex, BlockElim };

/// Monomial order on the ring variables of a computation. BlockElim compares
/// the first `front` ring variables by grevlex, then the rest by grevlex.
struct MonomialOrder {
    OrderKind kind = OrderKind::GRevLex;
    std::size_t front = 0;

    static MonomialOrder grevlex() { return {OrderKind::GRevLex, 0}; }
    static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
    static MonomialOrder block(std::size_t front) { return {OrderKind::BlockElim, front}; }
};

std::size_t default_gb_budget();
// Bases that passed the Buchberger re-check (REPARAM_CHECK_GB=1).
std::size_t gb_post_checks();

// Overrides the reduction-step budget for the current thread while alive.
class GbBudgetScope {
public:
    explicit GbBudgetScope(std::size_t budget);
    ~GbBudgetScope();
    GbBudgetScope(const GbBudgetScope&) = delete;
    GbBudgetScope& operator=(const GbBudgetScope&) = delete;

private:
    std::size_t saved_;
};

class GbImplBase;

/// Reduced Groebner basis of an ideal of Q(params)[ring_vars]. Every variable
/// of the generators that is not a ring variable is a coefficient parameter.
class GroebnerBasis {
public:
    GroebnerBasis(const std::vector<MPoly>& gens, std::vector<Var> ring_vars, MonomialOrder ord);
    ~GroebnerBasis();
    GroebnerBasis(const GroebnerBasis&);
    GroebnerBasis& operator=(const GroebnerBasis&);

    const std::vector<Var>& ring_vars() const { return ring_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t size() const;
    bool is_unit() const;

    // Monic elements over Q(params); denominators are free of ring variables.
    std::vector<RatFunc> monic() const;
    // Elements with parameter denominators cleared and content removed.
    std::vector<MPoly> cleared() const;
    // Leading monomials over the ring variables.
    std::vector<Monomial> leading_monomials() const;

    // Normal form, returned with cleared denominators (zero iff f is in the ideal).
    RatFunc normal_form(const MPoly& f) const;
    bool contains(const MPoly& f) const;

    // Krull dimension over Q(params); -1 for the unit ideal.
    int dimension() const;
    // A maximal independent set of ring variables realizing dimension().
    std::vector<Var> independent_set() const;
    // Number of standard monomials; nullopt if the ideal is not zero-dimensional.
    std::optional<std::size_t> quotient_dimension() const;
    // Checks that every S-polynomial reduces to zero.
    bool verify() const;

private:
    std::vector<Var> ring_;
    MonomialOrder order_;
    bool has_params_ = false;
    std::unique_ptr<GbImplBase> impl_;
};

// p divided by the gcd of its coefficients in Q[params] w.r.t. the ring variables.
MPoly ring_primitive(const MPoly& p, const std::set<Var>& ring);

// Generators of I intersected with Q(params)[ring \ front].
std::vector<MPoly> eliminate(const std::vector<MPoly>& gens, const std::vector<Var>& front,
                             const std::vector<Var>& rest);
// Generators of I : f^infinity in Q(params)[ring].
std::vector<MPoly> saturate(const std::vector<MPoly>& gens, const MPoly& f, const std::vector<Var>& ring);
std::vector<MPoly> intersect(const std::vector<MPoly>& a, const std::vector<MPoly>& b, const std::vector<Var>& ring);
// Ideal quotient I : J.
std::vector<MPoly> quotient(const std::vector<MPoly>& i, const std::vector<MPoly>& j, const std::vector<Var>& ring);
bool ideal_membership(const MPoly& f, const std::vector<MPoly>& gens, const std::vector<Var>& ring);
bool ideal_contains(const std::vector<MPoly>& big, const std::vector<MPoly>& small, const std::vector<Var>& ring);
// Krull dimension; throws EmptyVariety for the unit ideal.
int ideal_dimension(const std::vector<MPoly>& gens, const std::vector<Var>& ring);

struct Component {
    std::vector<MPoly> gens;  // reduced grevlex basis, cleared
    int dimension = 0;
    bool certified = true;  // false when an irreducible generator of degree > 2 was left unsplit
    bool embedded = false;
};

// Factor-and-branch splitting into prime-looking components.
std::vector<Component> split_components(const std::vector<MPoly>& gens, const std::vector<Var>& ring);

}  // namespace reparam
