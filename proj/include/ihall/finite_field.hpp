#pragma once

// Small finite fields F_q, q = p^k <= 32, with fully precomputed tables.
//
// Elements are plain bytes 0..q-1 encoding coefficient vectors in the
// polynomial basis: index = sum_i c_i p^i for the element sum_i c_i x^i in
// F_p[x]/(modulus).  All arithmetic goes through an Fq context object; the
// table build verifies the field axioms (in particular, every nonzero element
// must acquire an inverse, which fails exactly when the modulus is reducible).

#include <cstdint>
#include <string>
#include <vector>

#include "ihall/errors.hpp"

namespace ihall {

using fq_t = std::uint8_t;

class Fq {
public:
    explicit Fq(long q) : q_(q) {
        if (q < 2 || q > 32) throw std::domain_error("Fq: need 2 <= q <= 32, got " + std::to_string(q));
        factor();
        std::vector<int> mod = modulus();
        build_tables(mod);
    }

    long q() const { return q_; }
    long p() const { return p_; }
    int k() const { return k_; }

    fq_t zero() const { return 0; }
    fq_t one() const { return 1; }
    fq_t add(fq_t a, fq_t b) const { return add_[idx(a, b)]; }
    fq_t sub(fq_t a, fq_t b) const { return add_[idx(a, neg_[b])]; }
    fq_t mul(fq_t a, fq_t b) const { return mul_[idx(a, b)]; }
    fq_t neg(fq_t a) const { return neg_[a]; }
    fq_t inv(fq_t a) const {
        if (a == 0) throw NotInvertible("Fq: inverse of 0");
        return inv_[a];
    }
    fq_t div(fq_t a, fq_t b) const { return mul(a, inv(b)); }
    fq_t pow(fq_t a, long e) const {
        long m = q_ - 1;
        if (a == 0) {
            if (e < 0) throw NotInvertible("Fq: negative power of 0");
            return e == 0 ? one() : zero();
        }
        e %= m;
        if (e < 0) e += m;
        fq_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // Prime-subfield element from an integer.
    fq_t from_int(long n) const {
        long r = n % p_;
        if (r < 0) r += p_;
        return (fq_t)r;
    }
    // All elements, 0 first.
    std::vector<fq_t> elements() const {
        std::vector<fq_t> r((std::size_t)q_);
        for (long i = 0; i < q_; ++i) r[(std::size_t)i] = (fq_t)i;
        return r;
    }

private:
    std::size_t idx(fq_t a, fq_t b) const { return (std::size_t)a * (std::size_t)q_ + b; }

    void factor() {
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
            long n = q_, k = 0;
            while (n % p == 0) { n /= p; ++k; }
            if (n == 1 && k >= 1) { p_ = p; k_ = (int)k; return; }
        }
        throw std::domain_error("Fq: q=" + std::to_string(q_) + " is not a prime power");
    }

    // Fixed irreducible moduli (little-endian coefficients, leading 1 included).
    std::vector<int> modulus() const {
        if (k_ == 1) return {0, 1};  // unused for prime fields
        switch (q_) {
            case 4: return {1, 1, 1};           // x^2 + x + 1
            case 8: return {1, 1, 0, 1};        // x^3 + x + 1
            case 9: return {1, 0, 1};           // x^2 + 1
            case 16: return {1, 1, 0, 0, 1};    // x^4 + x + 1
            case 25: return {1, 1, 1};          // x^2 + x + 1
            case 27: return {1, 2, 0, 1};       // x^3 + 2x + 1
            case 32: return {1, 0, 1, 0, 0, 1}; // x^5 + x^2 + 1
            default:
                throw std::domain_error("Fq: no modulus on file for q=" + std::to_string(q_));
        }
    }

    std::vector<int> decode(fq_t a) const {
        std::vector<int> c((std::size_t)k_, 0);
        for (int i = 0; i < k_; ++i) { c[(std::size_t)i] = (int)(a % p_); a = (fq_t)(a / p_); }
        return c;
    }
    fq_t encode(const std::vector<int>& c) const {
        long r = 0;
        for (int i = k_ - 1; i >= 0; --i) r = r * p_ + c[(std::size_t)i];
        return (fq_t)r;
    }

    void build_tables(const std::vector<int>& mod) {
        std::size_t n = (std::size_t)q_;
        add_.assign(n * n, 0);
        mul_.assign(n * n, 0);
        neg_.assign(n, 0);
        inv_.assign(n, 0);
        for (long a = 0; a < q_; ++a) {
            auto ca = decode((fq_t)a);
            std::vector<int> cn((std::size_t)k_);
            for (int i = 0; i < k_; ++i) cn[(std::size_t)i] = (int)((p_ - ca[(std::size_t)i]) % p_);
            neg_[(std::size_t)a] = encode(cn);
            for (long b = 0; b < q_; ++b) {
                auto cb = decode((fq_t)b);
                std::vector<int> cs((std::size_t)k_);
                for (int i = 0; i < k_; ++i) cs[(std::size_t)i] = (int)((ca[(std::size_t)i] + cb[(std::size_t)i]) % p_);
                add_[idx((fq_t)a, (fq_t)b)] = encode(cs);
                // Polynomial product, reduced by the modulus.
                std::vector<int> prod((std::size_t)(2 * k_ - 1), 0);
                for (int i = 0; i < k_; ++i)
                    for (int j = 0; j < k_; ++j)
                        prod[(std::size_t)(i + j)] =
                            (int)((prod[(std::size_t)(i + j)] + (long)ca[(std::size_t)i] * cb[(std::size_t)j]) % p_);
                for (int d = 2 * k_ - 2; d >= k_; --d) {
                    int lead = prod[(std::size_t)d];
                    if (lead == 0) continue;
                    prod[(std::size_t)d] = 0;
                    for (int i = 0; i < k_; ++i) {
                        std::size_t t = (std::size_t)(d - k_ + i);
                        prod[t] = (int)(((long)prod[t] - (long)lead * mod[(std::size_t)i]) % p_);
                        if (prod[t] < 0) prod[t] += (int)p_;
                    }
                }
                prod.resize((std::size_t)k_);
                mul_[idx((fq_t)a, (fq_t)b)] = encode(prod);
            }
        }
        // Inverses by exhaustive search; doubles as an irreducibility check.
        for (long a = 1; a < q_; ++a) {
            bool found = false;
            for (long b = 1; b < q_; ++b)
                if (mul_[idx((fq_t)a, (fq_t)b)] == 1) { inv_[(std::size_t)a] = (fq_t)b; found = true; break; }
            if (!found)
                throw std::logic_error("Fq: element without inverse (reducible modulus?) q=" + std::to_string(q_));
        }
    }

    long q_ = 0, p_ = 0;
    int k_ = 0;
    std::vector<fq_t> add_, mul_, neg_, inv_;
};

} // namespace ihall
