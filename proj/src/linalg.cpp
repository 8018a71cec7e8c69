#include "weiljet/linalg.hpp"

#include "weiljet/errors.hpp"

namespace weiljet {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix rref(RatMatrix a, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < a.rows(); ++r) {
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int c = 0; c < a.cols(); ++c) std::swap(a.at(pivot, c), a.at(row, c));
        }
        Rat inv = a.at(row, col);
        for (int c = col; c < a.cols(); ++c) a.at(row, c) /= inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, col) == 0) continue;
            Rat factor = a.at(r, col);
            for (int c = col; c < a.cols(); ++c) a.at(r, c) -= factor * a.at(row, c);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++row;
    }
    return a;
}

int rank(const RatMatrix& a) {
    std::vector<int> pivots;
    rref(a, &pivots);
    return static_cast<int>(pivots.size());
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& a) {
    std::vector<int> pivots;
    RatMatrix r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(a.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            v[pivots[p]] = -r.at(static_cast<int>(p), free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>* x) {
    if (static_cast<int>(b.size()) != a.rows()) throw SchemaError("solve: rhs length mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<int> pivots;
    RatMatrix red = rref(std::move(aug), &pivots);
    for (int c : pivots) {
        if (c == a.cols()) return false; // pivot in the rhs column
    }
    if (x) {
        x->assign(a.cols(), Rat(0));
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            (*x)[pivots[p]] = red.at(static_cast<int>(p), a.cols());
        }
    }
    return true;
}

bool solve_poly(const RatMatrix& a, std::vector<Polynomial> b, std::vector<Polynomial>* x) {
    if (static_cast<int>(b.size()) != a.rows()) throw SchemaError("solve_poly: rhs length mismatch");
    RatMatrix m = a;
    int row = 0;
    std::vector<int> pivots;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
            std::swap(b[pivot], b[row]);
        }
        Rat inv = m.at(row, col);
        for (int c = col; c < m.cols(); ++c) m.at(row, c) /= inv;
        b[row] = b[row] * (Rat(1) / inv);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat factor = m.at(r, col);
            for (int c = col; c < m.cols(); ++c) m.at(r, c) -= factor * m.at(row, c);
            b[r] = poly_sub(b[r], b[row] * factor);
        }
        pivots.push_back(col);
        ++row;
    }
    // Rows eliminated to zero must carry a zero rhs, otherwise the system
    // is inconsistent.
    for (int r = row; r < m.rows(); ++r) {
        if (!b[r].is_zero()) return false;
    }
    if (x) {
        int vars = b.empty() ? 0 : b[0].var_count();
        x->assign(m.cols(), Polynomial(vars));
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            (*x)[pivots[p]] = b[p];
        }
    }
    return true;
}

} // namespace weiljet
