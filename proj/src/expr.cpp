#include "reparam/expr.hpp"

#include "reparam/error.hpp"

#include <cctype>

namespace reparam {

namespace {

class Parser {
public:
    Parser(std::string_view s, const SymbolResolver& r, int line, int offset)
        : s_(s), resolve_(r), line_(line), offset_(offset) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(ErrorKind::ParseError, msg, line_, offset_ + static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc v = term();
        while (true) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    RatFunc term() {
        RatFunc v = unary();
        while (true) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    throw ParseError(ErrorKind::ZeroDenominator, "division by zero", line_, offset_ + static_cast<int>(at) + 1);
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    long exponent() {
        skip();
        bool paren = accept('(');
        bool neg = accept('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        long e = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren && !accept(')')) fail("expected ')'");
        return neg ? -e : e;
    }

    RatFunc power() {
        RatFunc base = atom();
        if (accept('^')) {
            long e = exponent();
            if (e < 0 && base.is_zero()) fail("negative power of zero");
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    RatFunc atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            return RatFunc(Rational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            int primes = 0;
            while (pos_ < s_.size() && s_[pos_] == '\'') {
                ++primes;
                ++pos_;
            }
            int col = offset_ + static_cast<int>(start) + 1;
            Var v;
            if (resolve_) {
                v = resolve_(name, primes, col);
            } else {
                v = derivative_var(intern(name), primes);
            }
            return RatFunc::var(v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const SymbolResolver& resolve_;
    int line_;
    int offset_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const SymbolResolver& resolve, int line, int column_offset) {
    return Parser(text, resolve, line, column_offset).parse();
}

MPoly parse_poly(std::string_view text, const SymbolResolver& resolve) {
    RatFunc f = parse_ratfunc(text, resolve);
    if (!f.is_polynomial()) throw Error(ErrorKind::ParseError, "expected a polynomial, got " + f.str());
    return f.as_poly();
}

}  // namespace reparam
