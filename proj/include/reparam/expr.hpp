#pragma once

#include "reparam/ratfunc.hpp"

#include <functional>
#include <string_view>

namespace reparam {

// Maps an identifier (with its count of trailing primes) to a variable.
// Column is 1-based within the parsed text.
using SymbolResolver = std::function<Var(const std::string& name, int primes, int column)>;

// Parses the canonical text form: + - * / ^, parentheses, integer and
// decimal literals, identifiers optionally followed by primes (u', y'').
RatFunc parse_ratfunc(std::string_view text, const SymbolResolver& resolve = {}, int line = 1, int column_offset = 0);
MPoly parse_poly(std::string_view text, const SymbolResolver& resolve = {});

}  // namespace reparam
