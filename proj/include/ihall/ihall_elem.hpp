#pragma once

// Elements of the ıHall algebra of a quiver: finite Q(v)-linear combinations
// of basis symbols [M] * K_alpha, where M is a nilpotent-representation class
// and alpha ∈ Z^n indexes the (central) torus part.  Scalars live in Q(sqrt q).
//
// Elements carry a pointer to their ambient algebra so that * reads naturally
// in relation-checking code; linear operations work without the ambient.

#include <map>
#include <string>
#include <utility>

#include "ihall/iso_class.hpp"
#include "ihall/qsqrt.hpp"

namespace ihall {

class IHallAlgebra;

struct IHallElem {
    using Key = std::pair<IsoClass, DimVec>;  // (module class, torus exponent)

    IHallAlgebra* alg = nullptr;  // null only for the zero element
    std::map<Key, QSqrt> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const Key& k, const QSqrt& c) {
        if (c.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend IHallElem operator+(const IHallElem& x, const IHallElem& y) {
        IHallElem r = x;
        if (r.alg == nullptr) r.alg = y.alg;
        else if (y.alg != nullptr && y.alg != r.alg)
            throw std::logic_error("IHallElem: mixing ambient algebras");
        for (const auto& [k, c] : y.terms) r.add_term(k, c);
        return r;
    }
    friend IHallElem operator-(const IHallElem& x, const IHallElem& y) { return x + (-y); }
    IHallElem operator-() const {
        IHallElem r = *this;
        for (auto& [k, c] : r.terms) c = -c;
        return r;
    }
    IHallElem& operator+=(const IHallElem& y) { *this = *this + y; return *this; }
    IHallElem& operator-=(const IHallElem& y) { *this = *this - y; return *this; }

    IHallElem scaled(const QSqrt& s) const {
        IHallElem r;
        r.alg = alg;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms) r.add_term(k, c * s);
        return r;
    }
    IHallElem scaled(const Rat& s) const {
        IHallElem r;
        r.alg = alg;
        if (s == 0) return r;
        for (const auto& [k, c] : terms) {
            QSqrt cs(c.q(), c.a() * s, c.b() * s);
            r.add_term(k, cs);
        }
        return r;
    }

    // Shift every torus exponent by beta (right multiplication by K_beta).
    IHallElem torus_shifted(const DimVec& beta) const {
        if (dim_is_zero(beta)) return *this;
        IHallElem r;
        r.alg = alg;
        for (const auto& [k, c] : terms) r.add_term({k.first, dim_add(k.second, beta)}, c);
        return r;
    }

    QSqrt coeff(const IsoClass& cls, const DimVec& alpha) const {
        auto it = terms.find({cls, alpha});
        return it == terms.end() ? QSqrt() : it->second;
    }

    // Terms whose module class has the given dimension vector.
    IHallElem part_with_module_dim(const DimVec& d) const {
        IHallElem r;
        r.alg = alg;
        for (const auto& [k, c] : terms)
            if (k.first.dim == d) r.add_term(k, c);
        return r;
    }

    friend bool operator==(const IHallElem& x, const IHallElem& y) { return x.terms == y.terms; }
    friend bool operator!=(const IHallElem& x, const IHallElem& y) { return !(x == y); }

    // "(a + b*v)*[cls]" or "(a + b*v)*[cls]*K[a0,a1,...]"; terms joined " + ".
    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, c] : terms) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.str() + ")*[" + k.first.str() + "]";
            if (!dim_is_zero(k.second)) {
                std::string a = dim_str(k.second);
                s += "*K" + a;
            }
        }
        return s;
    }

    // Defined in ihall.hpp (needs the ambient algebra).
    friend IHallElem operator*(const IHallElem& x, const IHallElem& y);
};

} // namespace ihall
