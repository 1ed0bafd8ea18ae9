#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "algext.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace pcurv {

template <class F>
struct Matrix {
    typename F::Field fld;
    std::size_t rows = 0, cols = 0;
    std::vector<F> a;

    Matrix(const typename F::Field& f, std::size_t r, std::size_t c)
        : fld(f), rows(r), cols(c), a(r * c, f.zero()) {}

    F& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {

// Row scaling hooks: over a rational-function coefficient field rows are
// cleared to polynomial entries so the Bareiss recurrence stays
// fraction-free.
template <class F>
inline void clear_row_denominators(std::vector<F*>&) {}

template <class F>
inline void clear_row_denominators(std::vector<RatFunc<F>*>& row) {
    if (row.empty()) return;
    auto base = row[0]->num.field();
    Poly<F> l(base, {base.one()});
    for (auto* e : row)
        if (!e->den_is_one()) l = lcm(l, e->den);
    if (l.degree() == 0) return;
    RatFunc<F> m{l};
    for (auto* e : row) *e = *e * m;
}

template <class F>
inline void clear_row_denominators(std::vector<AlgExt<RatFunc<F>>*>& row) {
    if (row.empty()) return;
    auto base = (*row[0]).ctx->modulus.field().base;
    Poly<F> l(base, {base.one()});
    for (auto* e : row)
        for (const auto& comp : e->c)
            if (!comp.den_is_one()) l = lcm(l, comp.den);
    if (l.degree() == 0) return;
    auto m = (*row[0]).field().from_base(RatFunc<F>{l});
    for (auto* e : row) *e = *e * m;
}

}  // namespace detail

// Nullspace basis via fraction-free (Bareiss) elimination. Exact over any
// coefficient field; with rational-function entries the intermediate values
// remain polynomial.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> A) {
    const std::size_t m = A.rows, n = A.cols;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<F*> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = &A.at(i, j);
        detail::clear_row_denominators(row);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    F prev = A.fld.one();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t best = m;
        std::size_t best_size = 0;
        for (std::size_t i = r; i < m; ++i) {
            if (A.at(i, col).is_zero()) continue;
            std::size_t s = size_metric(A.at(i, col));
            if (best == m || s < best_size) {
                best = i;
                best_size = s;
            }
        }
        if (best == m) continue;
        if (best != r)
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(r, j), A.at(best, j));
        const F piv = A.at(r, col);
        const F prev_inv = prev.inv();
        for (std::size_t i = r + 1; i < m; ++i) {
            const F head = A.at(i, col);
            if (head.is_zero()) {
                for (std::size_t j = col + 1; j < n; ++j) {
                    F& e = A.at(i, j);
                    if (!e.is_zero()) e = e * piv * prev_inv;
                }
            } else {
                for (std::size_t j = col + 1; j < n; ++j)
                    A.at(i, j) = (A.at(i, j) * piv - head * A.at(r, j)) * prev_inv;
                A.at(i, col) = A.fld.zero();
            }
        }
        prev = piv;
        pivots.emplace_back(r, col);
        ++r;
    }
    std::vector<bool> is_pivot_col(n, false);
    for (auto [pr, pc] : pivots) is_pivot_col[pc] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t fc = 0; fc < n; ++fc) {
        if (is_pivot_col[fc]) continue;
        std::vector<F> v(n, A.fld.zero());
        v[fc] = A.fld.one();
        for (std::size_t k = pivots.size(); k-- > 0;) {
            auto [pr, pc] = pivots[k];
            F s = A.fld.zero();
            for (std::size_t j = pc + 1; j < n; ++j)
                if (!v[j].is_zero() && !A.at(pr, j).is_zero()) s += A.at(pr, j) * v[j];
            v[pc] = -s / A.at(pr, pc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace pcurv
