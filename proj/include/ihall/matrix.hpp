#pragma once

// Dense matrices over a small finite field, with the exact linear algebra the
// counting engines need: rank, reduced row echelon form, kernel and solution
// spaces, inverses.  Matrices act on column vectors; a row vector u maps to
// u * transpose(X).

#include <optional>
#include <string>
#include <vector>

#include "ihall/finite_field.hpp"

namespace ihall {

struct Mat {
    int r = 0, c = 0;
    std::vector<fq_t> a;  // row-major

    Mat() = default;
    Mat(int r, int c) : r(r), c(c), a((std::size_t)r * (std::size_t)c, 0) {}

    fq_t& at(int i, int j) { return a[(std::size_t)i * (std::size_t)c + (std::size_t)j]; }
    fq_t at(int i, int j) const { return a[(std::size_t)i * (std::size_t)c + (std::size_t)j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    bool is_zero() const {
        for (fq_t x : a) if (x) return false;
        return true;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return x.r == y.r && x.c == y.c && x.a == y.a; }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
    friend bool operator<(const Mat& x, const Mat& y) {
        if (x.r != y.r) return x.r < y.r;
        if (x.c != y.c) return x.c < y.c;
        return x.a < y.a;
    }
    std::string str() const {
        std::string s;
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < c; ++j) s += std::to_string((int)at(i, j)) + (j + 1 < c ? " " : "");
            s += "\n";
        }
        return s;
    }
};

inline Mat mat_add(const Fq& F, const Mat& x, const Mat& y) {
    Mat z(x.r, x.c);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = F.add(x.a[i], y.a[i]);
    return z;
}

inline Mat mat_sub(const Fq& F, const Mat& x, const Mat& y) {
    Mat z(x.r, x.c);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = F.sub(x.a[i], y.a[i]);
    return z;
}

inline Mat mat_mul(const Fq& F, const Mat& x, const Mat& y) {
    if (x.c != y.r) throw std::logic_error("mat_mul: shape mismatch");
    Mat z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            fq_t xik = x.at(i, k);
            if (!xik) continue;
            for (int j = 0; j < y.c; ++j)
                if (fq_t v = y.at(k, j)) z.at(i, j) = F.add(z.at(i, j), F.mul(xik, v));
        }
    return z;
}

inline std::vector<fq_t> mat_vec(const Fq& F, const Mat& x, const std::vector<fq_t>& v) {
    std::vector<fq_t> r((std::size_t)x.r, 0);
    for (int i = 0; i < x.r; ++i)
        for (int j = 0; j < x.c; ++j)
            if (fq_t m = x.at(i, j)) r[(std::size_t)i] = F.add(r[(std::size_t)i], F.mul(m, v[(std::size_t)j]));
    return r;
}

inline Mat mat_transpose(const Mat& x) {
    Mat z(x.c, x.r);
    for (int i = 0; i < x.r; ++i)
        for (int j = 0; j < x.c; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

struct Rref {
    Mat m;                    // reduced row echelon form, zero rows dropped
    std::vector<int> pivots;  // pivot column of each remaining row
};

inline Rref rref(const Fq& F, Mat m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
        int sel = -1;
        for (int i = row; i < m.r; ++i)
            if (m.at(i, col)) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(sel, j), m.at(row, j));
        fq_t piv = F.inv(m.at(row, col));
        for (int j = 0; j < m.c; ++j) m.at(row, j) = F.mul(m.at(row, j), piv);
        for (int i = 0; i < m.r; ++i) {
            if (i == row) continue;
            fq_t f = m.at(i, col);
            if (!f) continue;
            for (int j = 0; j < m.c; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    Mat out(row, m.c);
    for (int i = 0; i < row; ++i)
        for (int j = 0; j < m.c; ++j) out.at(i, j) = m.at(i, j);
    return {out, pivots};
}

inline int mat_rank(const Fq& F, const Mat& m) { return (int)rref(F, m).pivots.size(); }

// Basis of { x : M x = 0 }, one solution per row (length M.c).
inline Mat kernel_basis(const Fq& F, const Mat& m) {
    Rref e = rref(F, m);
    std::vector<char> is_piv((std::size_t)m.c, 0);
    for (int p : e.pivots) is_piv[(std::size_t)p] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < m.c; ++j)
        if (!is_piv[(std::size_t)j]) free_cols.push_back(j);
    Mat ker((int)free_cols.size(), m.c);
    for (int t = 0; t < (int)free_cols.size(); ++t) {
        int fc = free_cols[(std::size_t)t];
        ker.at(t, fc) = 1;
        for (int i = 0; i < (int)e.pivots.size(); ++i)
            ker.at(t, e.pivots[(std::size_t)i]) = F.neg(e.m.at(i, fc));
    }
    return ker;
}

// One solution of M x = b, if any.
inline std::optional<std::vector<fq_t>> solve(const Fq& F, const Mat& m, const std::vector<fq_t>& b) {
    Mat aug(m.r, m.c + 1);
    for (int i = 0; i < m.r; ++i) {
        for (int j = 0; j < m.c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.c) = b[(std::size_t)i];
    }
    Rref e = rref(F, aug);
    std::vector<fq_t> x((std::size_t)m.c, 0);
    for (int i = 0; i < (int)e.pivots.size(); ++i) {
        if (e.pivots[(std::size_t)i] == m.c) return std::nullopt;  // inconsistent
        x[(std::size_t)e.pivots[(std::size_t)i]] = e.m.at(i, m.c);
    }
    return x;
}

inline std::optional<Mat> mat_inverse(const Fq& F, const Mat& m) {
    if (m.r != m.c) return std::nullopt;
    Mat aug(m.r, 2 * m.c);
    for (int i = 0; i < m.r; ++i) {
        for (int j = 0; j < m.c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.c + i) = 1;
    }
    Rref e = rref(F, aug);
    for (int i = 0; i < m.r; ++i)
        if (i >= (int)e.pivots.size() || e.pivots[(std::size_t)i] != i) return std::nullopt;
    Mat inv(m.r, m.c);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) inv.at(i, j) = e.m.at(i, m.c + j);
    return inv;
}

} // namespace ihall
