#pragma once

// Enumeration of subspaces of F_q^n by reduced-echelon representatives.
// Each k-dimensional subspace has a unique row-rref basis matrix, so walking
// pivot-column sets and free entries visits every subspace exactly once —
// the count is the Gaussian binomial, which the tests pin.

#include <functional>
#include <vector>

#include "ihall/matrix.hpp"
#include "ihall/rational.hpp"

namespace ihall {

// Visit every k-dimensional subspace of F_q^n as a k x n rref matrix.
// Returns the number visited.  A nonzero `budget` caps the Gaussian-binomial
// count up front (SearchTooLarge), so runaway enumerations fail fast.
inline Int subspaces_rref(const Fq& F, int n, int k,
                          const std::function<void(const Mat&)>& visit, double budget = 0) {
    Int total = gauss_binom(n, k, Int(F.q()));
    if (budget > 0 && total > Int((long)budget))
        throw SearchTooLarge("subspaces_rref", total.get_d(), budget);
    if (k < 0 || k > n) return 0;
    std::vector<int> piv((std::size_t)k);
    for (int i = 0; i < k; ++i) piv[(std::size_t)i] = i;
    Int count = 0;
    auto emit_all_for_pivots = [&]() {
        // Free positions: (i, j) with j > piv[i], j not a pivot column.
        std::vector<char> is_piv((std::size_t)n, 0);
        for (int p : piv) is_piv[(std::size_t)p] = 1;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int j = piv[(std::size_t)i] + 1; j < n; ++j)
                if (!is_piv[(std::size_t)j]) free_pos.push_back({i, j});
        Mat m(k, n);
        for (int i = 0; i < k; ++i) m.at(i, piv[(std::size_t)i]) = 1;
        std::vector<fq_t> vals(free_pos.size(), 0);
        while (true) {
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                m.at(free_pos[t].first, free_pos[t].second) = vals[t];
            visit(m);
            ++count;
            std::size_t t = 0;
            while (t < vals.size()) {
                if (++vals[t] < F.q()) break;
                vals[t] = 0;
                ++t;
            }
            if (t == vals.size()) break;
        }
    };
    if (k == 0) {
        visit(Mat(0, n));
        return 1;
    }
    while (true) {
        emit_all_for_pivots();
        // Next pivot-column combination (lexicographic).
        int i = k - 1;
        while (i >= 0 && piv[(std::size_t)i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[(std::size_t)i];
        for (int j = i + 1; j < k; ++j) piv[(std::size_t)j] = piv[(std::size_t)j - 1] + 1;
    }
    if (count != total) throw std::logic_error("subspaces_rref: count mismatch vs Gaussian binomial");
    return count;
}

// Reduce a row vector against a rref basis; the result is zero iff v lies in
// the row span.
inline std::vector<fq_t> reduce_against(const Fq& F, const Mat& basis,
                                        const std::vector<int>& pivots, std::vector<fq_t> v) {
    for (int i = 0; i < (int)pivots.size(); ++i) {
        fq_t c = v[(std::size_t)pivots[(std::size_t)i]];
        if (!c) continue;
        for (int j = 0; j < basis.c; ++j) v[(std::size_t)j] = F.sub(v[(std::size_t)j], F.mul(c, basis.at(i, j)));
    }
    return v;
}

inline bool in_row_span(const Fq& F, const Rref& basis, const std::vector<fq_t>& v) {
    auto r = reduce_against(F, basis.m, basis.pivots, v);
    for (fq_t x : r) if (x) return false;
    return true;
}

} // namespace ihall
