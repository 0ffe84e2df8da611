#include "reparam/rational.hpp"

#include "reparam/error.hpp"

#include <cctype>

namespace reparam {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NoAlgebraicGenerator: return "NoAlgebraicGenerator";
    case ErrorKind::UnsupportedExtension: return "UnsupportedExtension";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::EmptyVariety: return "EmptyVariety";
    case ErrorKind::SplitIncomplete: return "SplitIncomplete";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotARealization: return "NotARealization";
    case ErrorKind::InfiniteFiber: return "InfiniteFiber";
    case ErrorKind::EliminationFailed: return "EliminationFailed";
    case ErrorKind::NotPrincipal: return "NotPrincipal";
    case ErrorKind::PrimitiveSearchExhausted: return "PrimitiveSearchExhausted";
    case ErrorKind::EvaluationSearchExhausted: return "EvaluationSearchExhausted";
    case ErrorKind::NotInTower: return "NotInTower";
    case ErrorKind::DegreeOneExtension: return "DegreeOneExtension";
    case ErrorKind::NonLinearComponent: return "NonLinearComponent";
    case ErrorKind::CoefficientsOutsideField: return "CoefficientsOutsideField";
    case ErrorKind::SingularSubstitution: return "SingularSubstitution";
    case ErrorKind::NoPolynomialRealization: return "NoPolynomialRealization";
    case ErrorKind::NoFRealization: return "NoFRealization";
    case ErrorKind::NoLine: return "NoLine";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::DuplicateEquation: return "DuplicateEquation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

Rational::Rational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw Error(ErrorKind::ZeroDenominator, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return Error(ErrorKind::ParseError, "malformed number '" + s + "'"); };
    if (s.empty()) throw bad();
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t scale = s.size() - dot - 1;
        for (char ch : digits)
            if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '-' && ch != '+') throw bad();
        BigInt n;
        if (n.set_str(digits, 10) != 0) throw bad();
        BigInt d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, scale);
        return Rational(n, d);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw Error(ErrorKind::ZeroDenominator, "rational literal '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error(ErrorKind::ZeroDenominator, "inverse of zero");
    return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::size_t Rational::hash() const {
    std::size_t h = mpz_get_ui(v_.get_num_mpz_t()) * 1000003u;
    h ^= mpz_get_ui(v_.get_den_mpz_t()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(sgn(v_) + 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace reparam
