#pragma once

// Laurent polynomials and rational functions in the quantum parameter v,
// with exact rational coefficients.
//
// LaurentV is the coefficient field for symbolic relation checking: products
// of generators carry coefficients like v^{-3}, [2] = v + v^{-1}, or
// 1/(v - v^{-1}).  Everything is kept in a canonical reduced form so that
// equality is structural.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ihall/errors.hpp"
#include "ihall/qsqrt.hpp"
#include "ihall/rational.hpp"

namespace ihall {

// Dense Laurent polynomial: value = sum_i coeff_[i] * v^(lo_ + i).
// Invariant: coeff_ is empty (zero) or has nonzero first and last entries.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rat& c, int k) {
        if (c != 0) { lo_ = k; coeff_ = {c}; }
    }
    explicit LaurentPoly(const Rat& c) : LaurentPoly(c, 0) {}
    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return LaurentPoly(Rat(1), 0); }
    static LaurentPoly v_pow(int k) { return LaurentPoly(Rat(1), k); }

    bool is_zero() const { return coeff_.empty(); }
    int lo() const { return lo_; }                      // valuation (undefined if zero)
    int hi() const { return lo_ + (int)coeff_.size() - 1; }
    Rat at(int k) const {
        if (is_zero() || k < lo_ || k > hi()) return Rat(0);
        return coeff_[(std::size_t)(k - lo_)];
    }
    const Rat& leading() const {
        if (is_zero()) throw std::domain_error("LaurentPoly: leading of zero");
        return coeff_.back();
    }
    const Rat& trailing() const {
        if (is_zero()) throw std::domain_error("LaurentPoly: trailing of zero");
        return coeff_.front();
    }

    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.lo_ += k;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        int lo = std::min(x.lo_, y.lo_), hi = std::max(x.hi(), y.hi());
        LaurentPoly r;
        r.lo_ = lo;
        r.coeff_.assign((std::size_t)(hi - lo + 1), Rat(0));
        for (int k = lo; k <= hi; ++k) r.coeff_[(std::size_t)(k - lo)] = x.at(k) + y.at(k);
        r.trim();
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) { return x + (-y); }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeff_) c = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        if (x.is_zero() || y.is_zero()) return {};
        LaurentPoly r;
        r.lo_ = x.lo_ + y.lo_;
        r.coeff_.assign(x.coeff_.size() + y.coeff_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < x.coeff_.size(); ++i)
            for (std::size_t j = 0; j < y.coeff_.size(); ++j)
                r.coeff_[i + j] += x.coeff_[i] * y.coeff_[j];
        r.trim();
        return r;
    }
    LaurentPoly scaled(const Rat& c) const {
        if (c == 0) return {};
        LaurentPoly r = *this;
        for (auto& x : r.coeff_) x *= c;
        return r;
    }

    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
        return x.is_zero() ? y.is_zero() : (!y.is_zero() && x.lo_ == y.lo_ && x.coeff_ == y.coeff_);
    }
    friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

    // Euclidean division for ordinary polynomials (lo >= 0 both sides).
    // Returns {quotient, remainder} with deg r < deg d.
    static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& n, const LaurentPoly& d) {
        if (d.is_zero()) throw NotInvertible("LaurentPoly: division by zero");
        if (n.lo_ < 0 || d.lo_ < 0) throw std::logic_error("LaurentPoly::divmod: negative exponents");
        LaurentPoly q, r = n;
        while (!r.is_zero() && r.hi() >= d.hi()) {
            Rat c = r.leading() / d.leading();
            int k = r.hi() - d.hi();
            LaurentPoly t(c, k);
            q = q + t;
            r = r - t * d;
        }
        return {q, r};
    }

    // Evaluate at v = sqrt(q). Negative powers use v^{-1} = v/q.
    QSqrt eval_sqrt(long q) const {
        QSqrt s = QSqrt::zero(q);
        for (int k = lo_; k <= hi(); ++k) {
            Rat c = at(k);
            if (c != 0) s += QSqrt::make_rat(q, c) * QSqrt::v_pow(q, k);
        }
        return s;
    }

    // "c*v^k + ..." from low to high degree; "0" for zero.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = lo_; k <= hi(); ++k) {
            Rat c = at(k);
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) out += rat_str(c);
            else {
                if (c != 1) out += rat_str(c) + "*";
                out += (k == 1) ? "v" : "v^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        std::size_t b = 0, e = coeff_.size();
        while (b < e && coeff_[b] == 0) ++b;
        while (e > b && coeff_[e - 1] == 0) --e;
        if (b == e) { coeff_.clear(); lo_ = 0; return; }
        if (b > 0 || e < coeff_.size()) {
            std::vector<Rat> t(coeff_.begin() + (long)b, coeff_.begin() + (long)e);
            coeff_.swap(t);
            lo_ += (int)b;
        }
    }
    int lo_ = 0;
    std::vector<Rat> coeff_;
};

inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    // Ordinary polynomials only (callers strip v-shifts first).
    while (!b.is_zero()) {
        auto [q, r] = LaurentPoly::divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(Rat(1) / a.trailing());  // normalize: trailing coefficient 1
}

// Field of fractions of Laurent polynomials in canonical form:
//  - denominator is an ordinary polynomial with nonzero constant term,
//  - gcd(numerator-without-shift, denominator) = 1,
//  - the lowest (constant) coefficient of the denominator is 1.
// Under these rules the representation is unique, so == is structural.
class RationalV {
public:
    RationalV() : num_(), den_(LaurentPoly::one()) {}
    RationalV(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    /* implicit */ RationalV(const LaurentPoly& n) : num_(n), den_(LaurentPoly::one()) {}
    explicit RationalV(const Rat& c) : num_(LaurentPoly(c)), den_(LaurentPoly::one()) {}

    static RationalV zero() { return {}; }
    static RationalV one() { return RationalV(LaurentPoly::one()); }
    static RationalV v_pow(int k) { return RationalV(LaurentPoly::v_pow(k)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == LaurentPoly::one() && den_ == LaurentPoly::one(); }

    friend RationalV operator+(const RationalV& x, const RationalV& y) {
        return RationalV(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RationalV operator-(const RationalV& x, const RationalV& y) {
        return RationalV(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    RationalV operator-() const {
        RationalV r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalV operator*(const RationalV& x, const RationalV& y) {
        return RationalV(x.num_ * y.num_, x.den_ * y.den_);
    }
    RationalV inv() const {
        if (is_zero()) throw NotInvertible("RationalV: inverse of zero");
        return RationalV(den_, num_);
    }
    friend RationalV operator/(const RationalV& x, const RationalV& y) { return x * y.inv(); }
    RationalV scaled(const Rat& c) const { return RationalV(num_.scaled(c), den_); }

    RationalV& operator+=(const RationalV& y) { *this = *this + y; return *this; }
    RationalV& operator-=(const RationalV& y) { *this = *this - y; return *this; }
    RationalV& operator*=(const RationalV& y) { *this = *this * y; return *this; }

    friend bool operator==(const RationalV& x, const RationalV& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const RationalV& x, const RationalV& y) { return !(x == y); }
    friend bool operator<(const RationalV& x, const RationalV& y) {  // deterministic order
        return key(x) < key(y);
    }

    QSqrt eval_sqrt(long q) const {
        QSqrt d = den_.eval_sqrt(q);
        if (d.is_zero())
            throw NotInvertible("RationalV: denominator (" + den_.str() + ") vanishes at v=sqrt(" +
                                std::to_string(q) + ")");
        return num_.eval_sqrt(q) / d;
    }

    std::string str() const {
        if (den_ == LaurentPoly::one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    static std::string key(const RationalV& x) { return x.num_.str() + "|" + x.den_.str(); }
    void reduce() {
        if (den_.is_zero()) throw NotInvertible("RationalV: zero denominator");
        if (num_.is_zero()) { den_ = LaurentPoly::one(); return; }
        // Shift the denominator to an ordinary polynomial with nonzero constant term.
        int ds = den_.lo();
        den_ = den_.shifted(-ds);
        num_ = num_.shifted(-ds);
        // Strip the numerator's v-shift before the gcd (v is a unit).
        int ns = num_.lo();
        LaurentPoly n0 = num_.shifted(-ns);
        LaurentPoly g = poly_gcd(n0, den_);
        if (!(g == LaurentPoly::one())) {
            n0 = LaurentPoly::divmod(n0, g).first;
            den_ = LaurentPoly::divmod(den_, g).first;
        }
        num_ = n0.shifted(ns);
        Rat c = den_.trailing();
        if (c != 1) {
            den_ = den_.scaled(Rat(1) / c);
            num_ = num_.scaled(Rat(1) / c);
        }
    }
    LaurentPoly num_, den_;
};

// Quantum integer [n] = (v^n - v^-n) / (v - v^-1) as a Laurent polynomial.
inline LaurentPoly qbracket_poly(long n) {
    // [n] = v^(n-1) + v^(n-3) + ... + v^(1-n);  [-n] = -[n];  [0] = 0.
    if (n == 0) return {};
    bool neg = n < 0;
    long m = neg ? -n : n;
    LaurentPoly r;
    for (long k = -(m - 1); k <= m - 1; k += 2) r = r + LaurentPoly(Rat(1), (int)k);
    return neg ? -r : r;
}

// [n]_{v^m}: the quantum integer in the variable v^m (m != 0).
inline RationalV qbracket(long n, long m = 1) {
    if (m == 0) throw std::domain_error("qbracket: base exponent must be nonzero");
    LaurentPoly p = qbracket_poly(n);
    if (p.is_zero()) return RationalV::zero();
    LaurentPoly r;
    for (int k = p.lo(); k <= p.hi(); ++k)
        if (p.at(k) != 0) r = r + LaurentPoly(p.at(k), (int)(k * m));
    return RationalV(r);
}

// Quantum binomial [n choose k] via the product formula, exact in Q(v).
inline RationalV qbinom(long n, long k) {
    if (k < 0 || k > n) return RationalV::zero();
    RationalV r = RationalV::one();
    for (long i = 1; i <= k; ++i) r = r * qbracket(n - k + i) / qbracket(i);
    return r;
}

// Quantum factorial [n]! = [1][2]...[n].
inline RationalV qfactorial(long n) {
    RationalV r = RationalV::one();
    for (long i = 2; i <= n; ++i) r = r * qbracket(i);
    return r;
}

// [n]_{v^m} evaluated at v = sqrt(q).
inline QSqrt qbracket_eval(long n, long m, long q) { return qbracket(n, m).eval_sqrt(q); }

} // namespace ihall
