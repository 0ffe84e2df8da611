#pragma once

#include "reparam/ratfunc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reparam {

/// Dense matrix of fractions; rank and inverse by Gaussian elimination over
/// the fraction field with exact zero tests.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    RatFunc& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const RatFunc& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::size_t rank() const;
    RatFunc det() const;
    std::optional<RatMatrix> inverse() const;
    RatMatrix select_rows(const std::vector<std::size_t>& idx) const;
    RatMatrix substitute(const std::map<Var, RatFunc>& values) const;
    std::vector<RatFunc> apply(const std::vector<RatFunc>& v) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<RatFunc> a_;
};

// Jacobian of fs with respect to vars.
RatMatrix jacobian_of(const std::vector<RatFunc>& fs, const std::vector<Var>& vars);

}  // namespace reparam
