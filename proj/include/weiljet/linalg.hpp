#pragma once

#include "weiljet/polynomial.hpp"
#include "weiljet/rational.hpp"

#include <vector>

namespace weiljet {

// Dense matrix over the rationals; all rank decisions are exact.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Rat(0)) {}

    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> data_;
};

// Reduced row echelon form; appends the pivot column indices if requested.
RatMatrix rref(RatMatrix a, std::vector<int>* pivot_cols = nullptr);
int rank(const RatMatrix& a);

// Basis of the right kernel {x : a x = 0}, one vector per free column.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& a);

// Solves a x = b. Returns false when inconsistent; otherwise writes the
// particular solution with all free variables set to zero.
bool solve(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>* x);

// Same elimination with a polynomial right-hand side (entries sharing one
// variable pool): used to lift rational linear systems over symbolic
// coefficients. Inconsistent rows (zero row with nonzero rhs) return false.
bool solve_poly(const RatMatrix& a, std::vector<Polynomial> b, std::vector<Polynomial>* x);

} // namespace weiljet
