#pragma once

#include <stdexcept>
#include <string>

namespace reparam {

enum class ErrorKind {
    ZeroDenominator,
    NoAlgebraicGenerator,
    UnsupportedExtension,
    BudgetExhausted,
    EmptyVariety,
    SplitIncomplete,
    RankDeficient,
    NotARealization,
    InfiniteFiber,
    EliminationFailed,
    NotPrincipal,
    PrimitiveSearchExhausted,
    EvaluationSearchExhausted,
    NotInTower,
    DegreeOneExtension,
    NonLinearComponent,
    CoefficientsOutsideField,
    SingularSubstitution,
    NoPolynomialRealization,
    NoFRealization,
    NoLine,
    ParseError,
    UndeclaredSymbol,
    DuplicateEquation,
    InvalidArgument,
    Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failure carrying a 1-based source position.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& what, int line, int column)
        : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace reparam
