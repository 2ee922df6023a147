#pragma once

// Free noncommutative expressions over the generators of a universal
// i-quantum group attached to a rank-n vertex set: finite Q(v)-linear
// combinations of monomials
//
//     B_{w_1} B_{w_2} ... B_{w_L} * K_mu,        mu in Z^n,
//
// where the K_mu span a central Laurent torus and the loop-central element C
// is identified with K_{(1,...,1)} (the delta class), consistently with every
// evaluation this workbench uses.  No relations between the B's are imposed:
// identities are *checked*, after evaluation into an iHall algebra, never
// assumed.  Coefficients are rational functions in v (LaurentV), so brackets
// like [x,y]_{v^a} and scalars like 1/[2] stay exact.

#include <map>
#include <string>
#include <vector>

#include "ihall/laurent.hpp"
#include "ihall/quiver.hpp"

namespace ihall {

struct NcMono {
    std::vector<int> word;  // B-generator indices, left factor first
    DimVec kexp;            // torus exponent: K_mu with mu ∈ Z^n

    friend bool operator<(const NcMono& x, const NcMono& y) {
        if (x.word != y.word) return x.word < y.word;
        return x.kexp < y.kexp;
    }
    friend bool operator==(const NcMono& x, const NcMono& y) {
        return x.word == y.word && x.kexp == y.kexp;
    }
};

class NcExpr {
public:
    NcExpr() = default;
    explicit NcExpr(int n) : n_(n) {}

    static NcExpr zero(int n) { return NcExpr(n); }
    static NcExpr unit(int n) {
        NcExpr e(n);
        e.terms_[NcMono{{}, DimVec(n, 0)}] = RationalV::one();
        return e;
    }
    static NcExpr B(int n, int i) {
        NcExpr e(n);
        e.terms_[NcMono{{i}, DimVec(n, 0)}] = RationalV::one();
        return e;
    }
    static NcExpr K(int n, const DimVec& mu) {
        NcExpr e(n);
        e.terms_[NcMono{{}, mu}] = RationalV::one();
        return e;
    }
    static NcExpr K_unit(int n, int i, int pow = 1) {
        DimVec mu(n, 0);
        mu[(std::size_t)i] = pow;
        return K(n, mu);
    }
    // The loop-central element C^pow = K_{pow*delta}.
    static NcExpr C(int n, int pow = 1) { return K(n, DimVec(n, pow)); }

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<NcMono, RationalV>& terms() const { return terms_; }

    void add_term(const NcMono& m, const RationalV& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NcExpr operator+(const NcExpr& x, const NcExpr& y) {
        NcExpr r = x.merged_rank(y);
        for (const auto& [m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    friend NcExpr operator-(const NcExpr& x, const NcExpr& y) { return x + (-y); }
    NcExpr operator-() const {
        NcExpr r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend NcExpr operator*(const NcExpr& x, const NcExpr& y) {
        NcExpr r = x.merged_rank(y);
        r.terms_.clear();
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                NcMono m;
                m.word = mx.word;
                m.word.insert(m.word.end(), my.word.begin(), my.word.end());
                m.kexp = dim_add(mx.kexp, my.kexp);
                r.add_term(m, cx * cy);
            }
        return r;
    }

    NcExpr scaled(const RationalV& c) const {
        NcExpr r(n_);
        for (const auto& [m, cc] : terms_) r.add_term(m, cc * c);
        return r;
    }
    NcExpr scaled(const Rat& c) const { return scaled(RationalV(LaurentPoly(c))); }

    // Relabel vertices cyclically: B_i -> B_{i+s mod n}, K_mu rotated alike.
    NcExpr relabeled(int s) const {
        NcExpr r(n_);
        auto sh = [&](int i) { return (int)(((i + s) % n_ + n_) % n_); };
        for (const auto& [m, c] : terms_) {
            NcMono mm;
            mm.word.reserve(m.word.size());
            for (int i : m.word) mm.word.push_back(sh(i));
            mm.kexp.assign((std::size_t)n_, 0);
            for (int i = 0; i < n_; ++i) mm.kexp[(std::size_t)sh(i)] = m.kexp[(std::size_t)i];
            r.add_term(mm, c);
        }
        return r;
    }

    friend bool operator==(const NcExpr& x, const NcExpr& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const NcExpr& x, const NcExpr& y) { return !(x == y); }

    std::size_t term_count() const { return terms_.size(); }
    std::size_t max_word_len() const {
        std::size_t L = 0;
        for (const auto& [m, c] : terms_)
            if (m.word.size() > L) L = m.word.size();
        return L;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.str() + ")";
            for (int i : m.word) s += "*B" + std::to_string(i);
            if (!dim_is_zero(m.kexp)) s += "*K" + dim_str(m.kexp);
        }
        return s;
    }

private:
    NcExpr merged_rank(const NcExpr& y) const {
        NcExpr r = *this;
        if (r.n_ == 0) r.n_ = y.n_;
        else if (y.n_ != 0 && y.n_ != r.n_)
            throw std::logic_error("NcExpr: mixing vertex ranks");
        return r;
    }

    int n_ = 0;
    std::map<NcMono, RationalV> terms_;
};

// [x, y]_{v^a} = x*y - v^a * y*x.
inline NcExpr bracket_v(const NcExpr& x, const NcExpr& y, int a) {
    return x * y - (y * x).scaled(RationalV::v_pow(a));
}
inline NcExpr bracket(const NcExpr& x, const NcExpr& y) { return bracket_v(x, y, 0); }

// Iterated bracket [x1, x2, ..., xk]_{v^a} = [[x1,x2]_{v^a}, x3]_{v^a} ...
inline NcExpr iterated_bracket_v(const std::vector<NcExpr>& xs, int a) {
    if (xs.empty()) throw std::logic_error("iterated_bracket_v: empty argument list");
    NcExpr acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = bracket_v(acc, xs[i], a);
    return acc;
}

} // namespace ihall
