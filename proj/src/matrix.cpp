#include "reparam/matrix.hpp"

#include "reparam/error.hpp"

namespace reparam {

namespace {

// Row echelon form in place (pivots searched in the first `cols` columns,
// updates applied to whole rows); returns the rank and accumulates the
// determinant factor when the matrix is square.
std::size_t eliminate_rows(std::vector<std::vector<RatFunc>>& m, std::size_t cols, RatFunc* det) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        // Prefer the simplest nonzero pivot; keeps intermediate fractions small.
        std::size_t best_size = 0;
        bool found = false;
        for (std::size_t i = rank; i < m.size(); ++i) {
            if (m[i][col].is_zero()) continue;
            std::size_t sz = m[i][col].num().size() + m[i][col].den().size();
            if (!found || sz < best_size) {
                piv = i;
                best_size = sz;
                found = true;
            }
        }
        if (!found) {
            if (det) *det = RatFunc();
            continue;
        }
        if (piv != rank) {
            std::swap(m[piv], m[rank]);
            if (det) *det = -*det;
        }
        const RatFunc p = m[rank][col];
        if (det) *det *= p;
        RatFunc inv = p.inverse();
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][col].is_zero()) continue;
            RatFunc f = m[i][col] * inv;
            for (std::size_t j = col; j < m[i].size(); ++j)
                if (!m[rank][j].is_zero()) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t RatMatrix::rank() const {
    std::vector<std::vector<RatFunc>> m(r_);
    for (std::size_t i = 0; i < r_; ++i) m[i].assign(a_.begin() + static_cast<std::ptrdiff_t>(i * c_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
    return eliminate_rows(m, c_, nullptr);
}

RatFunc RatMatrix::det() const {
    if (r_ != c_) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    std::vector<std::vector<RatFunc>> m(r_);
    for (std::size_t i = 0; i < r_; ++i) m[i].assign(a_.begin() + static_cast<std::ptrdiff_t>(i * c_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
    RatFunc d(1);
    if (eliminate_rows(m, c_, &d) < r_) return RatFunc();
    return d;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
    if (r_ != c_) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    std::size_t n = r_;
    std::vector<std::vector<RatFunc>> m(n, std::vector<RatFunc>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);
        m[i][n + i] = RatFunc(1);
    }
    if (eliminate_rows(m, n, nullptr) < n) return std::nullopt;
    for (std::size_t k = n; k-- > 0;) {
        RatFunc inv = m[k][k].inverse();
        for (std::size_t j = k; j < 2 * n; ++j) m[k][j] *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (m[i][k].is_zero()) continue;
            RatFunc f = m[i][k];
            for (std::size_t j = k; j < 2 * n; ++j)
                if (!m[k][j].is_zero()) m[i][j] -= f * m[k][j];
        }
    }
    RatMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = m[i][n + j];
    return r;
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    RatMatrix r(idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < c_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
}

RatMatrix RatMatrix::substitute(const std::map<Var, RatFunc>& values) const {
    RatMatrix r = *this;
    for (auto& e : r.a_) e = e.substitute(values);
    return r;
}

std::vector<RatFunc> RatMatrix::apply(const std::vector<RatFunc>& v) const {
    if (v.size() != c_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in matrix product");
    std::vector<RatFunc> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

std::string RatMatrix::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < r_; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + at(i, j).str();
        s += "]";
    }
    return s + "]";
}

RatMatrix jacobian_of(const std::vector<RatFunc>& fs, const std::vector<Var>& vars) {
    RatMatrix j(fs.size(), vars.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t k = 0; k < vars.size(); ++k) j.at(i, k) = fs[i].derivative(vars[k]);
    return j;
}

}  // namespace reparam
