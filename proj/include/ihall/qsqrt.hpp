#pragma once

// Exact arithmetic in Q(v) with v^2 = q, for a fixed prime power q.
//
// Every scalar produced by a Hall-algebra computation at a fixed q lives here:
// structure constants are Laurent polynomials in v evaluated at v = sqrt(q),
// i.e. elements a + b*v with a, b rational.  When q is not a perfect square
// this is a quadratic field and every nonzero element is invertible; when q is
// a perfect square the ring Q[v]/(v^2 - q) has zero divisors and inversion can
// legitimately fail (NotInvertible).  Counting identities never divide by such
// elements, so hitting that throw indicates a genuine modelling error.

#include <string>

#include "ihall/errors.hpp"
#include "ihall/rational.hpp"

namespace ihall {

class QSqrt {
public:
    QSqrt() : q_(0), a_(0), b_(0) {}  // q-agnostic zero
    QSqrt(long q, Rat a, Rat b) : q_(q), a_(std::move(a)), b_(std::move(b)) { check(); }

    static QSqrt make_rat(long q, const Rat& a) { return QSqrt(q, a, 0); }
    static QSqrt zero(long q) { return QSqrt(q, 0, 0); }
    static QSqrt one(long q) { return QSqrt(q, 1, 0); }
    static QSqrt v(long q) { return QSqrt(q, 0, 1); }

    // v^k, folding v^2 = q: even k -> rational, odd k -> rational * v.
    static QSqrt v_pow(long q, long k) {
        Rat qr(q);
        if (k % 2 == 0) return QSqrt(q, rpow(qr, k / 2), 0);
        // k = 2m + 1 with m = (k-1)/2 rounded toward -inf.
        long m = (k - ((k % 2 + 2) % 2)) / 2;
        return QSqrt(q, 0, rpow(qr, m));
    }

    long q() const { return q_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    // Rational value when b == 0.
    const Rat& rat_value() const {
        if (b_ != 0) throw std::domain_error("QSqrt: not rational: " + str());
        return a_;
    }

    QSqrt conj() const { return QSqrt(q_, a_, -b_); }
    Rat norm() const { return a_ * a_ - Rat(q_) * b_ * b_; }

    friend QSqrt operator+(const QSqrt& x, const QSqrt& y) {
        long q = merge_q(x, y);
        return QSqrt(q, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QSqrt operator-(const QSqrt& x, const QSqrt& y) {
        long q = merge_q(x, y);
        return QSqrt(q, x.a_ - y.a_, x.b_ - y.b_);
    }
    QSqrt operator-() const { return QSqrt(q_, -a_, -b_); }
    friend QSqrt operator*(const QSqrt& x, const QSqrt& y) {
        long q = merge_q(x, y);
        if (q == 0) return QSqrt();
        return QSqrt(q, x.a_ * y.a_ + Rat(q) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    QSqrt inv() const {
        Rat n = norm();
        if (n == 0) throw NotInvertible("QSqrt: " + str() + " not invertible (norm 0, q=" + std::to_string(q_) + ")");
        return QSqrt(q_, a_ / n, -b_ / n);
    }
    friend QSqrt operator/(const QSqrt& x, const QSqrt& y) { return x * y.inv(); }

    QSqrt& operator+=(const QSqrt& y) { *this = *this + y; return *this; }
    QSqrt& operator-=(const QSqrt& y) { *this = *this - y; return *this; }
    QSqrt& operator*=(const QSqrt& y) { *this = *this * y; return *this; }

    friend bool operator==(const QSqrt& x, const QSqrt& y) {
        if (x.is_zero() && y.is_zero()) return true;
        return merge_q(x, y), x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QSqrt& x, const QSqrt& y) { return !(x == y); }

    // Total order (for deterministic containers): by (a, b).  Only meaningful
    // within one q; mixing is a programming error caught by merge_q.
    friend bool operator<(const QSqrt& x, const QSqrt& y) {
        merge_q(x, y);
        int c = cmp(x.a_, y.a_);
        if (c != 0) return c < 0;
        return cmp(x.b_, y.b_) < 0;
    }

    // Canonical rendering "a + b*v", e.g. "-1/2 + 1/2*v", "1 + 0*v".
    std::string str() const { return rat_str(a_) + " + " + rat_str(b_) + "*v"; }

private:
    void check() {
        if (a_ == 0 && b_ == 0) { q_ = q_; }  // zero is fine with any tag
    }
    static long merge_q(const QSqrt& x, const QSqrt& y) {
        if (x.q_ == 0) return y.q_;   // q-agnostic zero adapts
        if (y.q_ == 0) return x.q_;
        if (x.q_ != y.q_)
            throw std::logic_error("QSqrt: mixing q=" + std::to_string(x.q_) +
                                   " with q=" + std::to_string(y.q_));
        return x.q_;
    }
    long q_;
    Rat a_, b_;
};

// Parse "a + b*v" (the exact canonical form produced by QSqrt::str()).
inline QSqrt qsqrt_parse(long q, const std::string& s) {
    auto plus = s.find(" + ");
    auto star = s.rfind("*v");
    if (plus == std::string::npos || star == std::string::npos || star + 2 != s.size())
        throw ParseError("expected 'a + b*v' in '" + s + "'", 0);
    Rat a = rat_parse(s.substr(0, plus));
    Rat b = rat_parse(s.substr(plus + 3, star - plus - 3), plus + 3);
    return QSqrt(q, a, b);
}

} // namespace ihall
