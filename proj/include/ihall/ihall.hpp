#pragma once

// The ıHall algebra ıH(kQ) of a quiver over F_q: basis [M] * K_alpha with M a
// nilpotent representation class, K_alpha central torus symbols, scalars in
// Q(sqrt q) with v = sqrt q.
//
// The product of two module symbols is a sum over homomorphisms f: A -> B.
// Writing N = ker f and L = coker f, the primary route is
//
//   [A]*[B] = v^{-<A,B>} sum_{f in Hom(A,B)} sum_M (|Ext^1(N,L)_M| / |Ext^1(N,L)|) [M]*K_{A^ - N^}
//
// grouped by the fibers (N, L).  A second route computes the same coefficient
// as v^{-<A,B>} * q^{<N,L>} |Ext^1(N,L)_M| / |Hom(N,L)| — equal by the Euler
// identity, but assembled from independently computed quantities, so running
// both is a genuine cross-check (`mul` vs `mul1`).
//
// The hom-fiber census itself has two independent routes:
//   (a) enumerate Hom(A,B) elementwise and classify kernel/cokernel;
//   (b) count via filtration numbers: #{f : ker≅N, coker≅L}
//         = sum_I F^A_{I,N} * F^B_{L,I} * |Aut I|
// and both must sum to q^{dim Hom(A,B)}.

#include <optional>

#include "ihall/hall.hpp"
#include "ihall/ihall_elem.hpp"

namespace ihall {

class IHallAlgebra {
public:
    enum class Norm { Mult2, Mult1 };
    enum class CensusRoute { Auto, HomEnum, SubTable };

    explicit IHallAlgebra(HallEngine& E, double census_budget = 2e5,
                          double route_b_threshold = 2e5)
        : E_(E), census_budget_(census_budget), route_b_threshold_(route_b_threshold) {}
    IHallAlgebra(const IHallAlgebra&) = delete;
    IHallAlgebra& operator=(const IHallAlgebra&) = delete;

    HallEngine& engine() { return E_; }
    long q() const { return E_.q(); }
    int rank() const { return E_.quiver().n; }

    IHallElem zero() {
        IHallElem e;
        e.alg = this;
        return e;
    }
    IHallElem unit() { return basis(E_.zero_class()); }
    IHallElem basis(const IsoClass& M) {
        IHallElem e = zero();
        e.add_term({M, DimVec((std::size_t)rank(), 0)}, QSqrt::one(q()));
        return e;
    }
    IHallElem basis(const IsoClass& M, const DimVec& alpha) {
        IHallElem e = zero();
        e.add_term({M, alpha}, QSqrt::one(q()));
        return e;
    }
    IHallElem torus(const DimVec& alpha) { return basis(E_.zero_class(), alpha); }
    IHallElem scalar(const QSqrt& c) { return unit().scaled(c); }

    // ----- hom-fiber census -----

    using Census = std::map<std::pair<IsoClass, IsoClass>, Int>;  // (ker, coker) -> #maps

    const Census& hom_fiber_census(const IsoClass& A, const IsoClass& B,
                                   CensusRoute route = CensusRoute::Auto) {
        auto key = std::make_pair(A, B);
        auto it = census_memo_.find(key);
        if (it != census_memo_.end()) return it->second;
        int h = E_.hom_dim(A, B);
        double maps = 1;
        for (int t = 0; t < h; ++t) maps *= (double)q();
        CensusRoute r = route;
        if (r == CensusRoute::Auto)
            r = (maps <= route_b_threshold_) ? CensusRoute::HomEnum : CensusRoute::SubTable;
        Census c = (r == CensusRoute::HomEnum) ? census_by_hom_enum(A, B) : census_by_subtable(A, B);
        Int total = 0;
        for (auto& [k, cnt] : c) total += cnt;
        if (total != ipow(q(), (unsigned long)h))
            throw std::logic_error("hom_fiber_census: total != q^hom for " + A.str() + ", " + B.str());
        return census_memo_.emplace(key, std::move(c)).first->second;
    }

    Census census_by_hom_enum(const IsoClass& A, const IsoClass& B) {
        const Fq& F = E_.field();
        const Quiver& Q = E_.quiver();
        const Rep& ra = E_.rep_of(A);
        const Rep& rb = E_.rep_of(B);
        auto basis_f = hom_basis(F, Q, ra, rb);
        std::size_t h = basis_f.size();
        double maps = 1;
        for (std::size_t t = 0; t < h; ++t) {
            maps *= (double)q();
            if (maps > census_budget_)
                throw SearchTooLarge("hom census " + A.str() + " -> " + B.str(), maps, census_budget_);
        }
        Census out;
        std::vector<fq_t> cvec(h, 0);
        std::vector<Mat> f;
        while (true) {
            f.clear();
            for (int i = 0; i < Q.n; ++i) {
                Mat fi(rb.dim[(std::size_t)i], ra.dim[(std::size_t)i]);
                for (std::size_t k = 0; k < h; ++k) {
                    if (!cvec[k]) continue;
                    const Mat& bk = basis_f[k][(std::size_t)i];
                    for (std::size_t e = 0; e < fi.a.size(); ++e)
                        fi.a[e] = F.add(fi.a[e], F.mul(cvec[k], bk.a[e]));
                }
                f.push_back(std::move(fi));
            }
            IsoClass kerc = E_.classify(kernel_rep(F, Q, ra, f));
            IsoClass cokc = E_.classify(cokernel_rep(F, Q, rb, f));
            out[{kerc, cokc}] += 1;
            std::size_t t = 0;
            while (t < h) {
                if (++cvec[t] < F.q()) break;
                cvec[t] = 0;
                ++t;
            }
            if (t == h) break;
        }
        return out;
    }

    Census census_by_subtable(const IsoClass& A, const IsoClass& B) {
        const auto& tabA = E_.submodule_table(A, census_budget_ * 50);
        const auto& tabB = E_.submodule_table(B, census_budget_ * 50);
        Census out;
        // #{f: ker ≅ N, coker ≅ L} = sum_I F^A_{I,N} F^B_{L,I} |Aut I|,
        // tabA[N][I] = F^A_{I,N}, tabB[I][L] = F^B_{L,I}.
        for (const auto& [N, rowA] : tabA)
            for (const auto& [I, fAIN] : rowA) {
                auto itB = tabB.find(I);
                if (itB == tabB.end()) continue;
                Int autI = E_.aut_order(I);
                for (const auto& [L, fBLI] : itB->second) out[{N, L}] += fAIN * fBLI * autI;
            }
        return out;
    }

    // ----- products -----

    IHallElem mul(const IHallElem& x, const IHallElem& y) { return mul_impl(x, y, Norm::Mult2); }
    IHallElem mul1(const IHallElem& x, const IHallElem& y) { return mul_impl(x, y, Norm::Mult1); }

    IHallElem mul_impl(const IHallElem& x, const IHallElem& y, Norm norm) {
        IHallElem out = zero();
        for (const auto& [kx, cx] : x.terms)
            for (const auto& [ky, cy] : y.terms) {
                const IHallElem& base = basis_product(kx.first, ky.first, norm);
                DimVec shift = dim_add(kx.second, ky.second);  // K_alpha are central
                for (const auto& [kb, cb] : base.terms)
                    out.add_term({kb.first, dim_add(kb.second, shift)}, cb * cx * cy);
            }
        return out;
    }

    // [A]*[B] for module classes (torus exponent 0 on both sides).
    const IHallElem& basis_product(const IsoClass& A, const IsoClass& B, Norm norm) {
        auto key = std::make_tuple(A, B, norm == Norm::Mult1);
        auto it = prod_memo_.find(key);
        if (it != prod_memo_.end()) return it->second;
        const Census& census = hom_fiber_census(A, B);
        IHallElem out = zero();
        QSqrt twist = QSqrt::v_pow(q(), -E_.quiver().euler(A.dim, B.dim));
        for (const auto& [fiber, fcount] : census) {
            const IsoClass& N = fiber.first;   // kernel
            const IsoClass& L = fiber.second;  // cokernel
            DimVec beta = dim_sub(A.dim, N.dim);
            HomExt he = E_.hom_ext(N, L);
            for (const auto& t : E_.diamond(N, L)) {
                // |Ext^1(N,L)_M| = diamond coeff * q^hom(N,L).
                Rat extM = t.coeff * Rat(ipow(q(), (unsigned long)he.hom));
                Rat co;
                if (norm == Norm::Mult2) {
                    // |Ext^1(N,L)_M| / |Ext^1(N,L)|
                    co = extM / Rat(ipow(q(), (unsigned long)he.ext));
                } else {
                    // q^{<N,L>} |Ext^1(N,L)_M| / |Hom(N,L)|
                    long e = E_.quiver().euler(N.dim, L.dim);
                    co = rpow(Rat(q()), e) * extM / Rat(ipow(q(), (unsigned long)he.hom));
                }
                co *= Rat(fcount);
                out.add_term({t.cls, beta}, twist * QSqrt::make_rat(q(), co));
            }
        }
        return prod_memo_.emplace(key, std::move(out)).first->second;
    }

    // The twisted Ringel–Hall product v^{<A,B>} [A] ⋄ [B], lifted to torus-free
    // elements — the top-degree part of the ıHall product must equal it.
    IHallElem twisted_rh_product(const IsoClass& A, const IsoClass& B) {
        IHallElem out = zero();
        QSqrt twist = QSqrt::v_pow(q(), E_.quiver().euler(A.dim, B.dim));
        for (const auto& t : E_.diamond(A, B))
            out.add_term({t.cls, DimVec((std::size_t)rank(), 0)}, twist * QSqrt::make_rat(q(), t.coeff));
        return out;
    }

    IHallElem leading_part(const IHallElem& x, const DimVec& module_dim) {
        return x.part_with_module_dim(module_dim);
    }

    // Every basis product computed so far, keyed (A, B, used-Mult1): the
    // record a dual-normalization sweep replays to certify Mult1 ≡ Mult2 on
    // the exact set of products a suite touched.
    const std::map<std::tuple<IsoClass, IsoClass, bool>, IHallElem>& product_log() const {
        return prod_memo_;
    }

private:
    HallEngine& E_;
    double census_budget_;
    double route_b_threshold_;
    std::map<std::pair<IsoClass, IsoClass>, Census> census_memo_;
    std::map<std::tuple<IsoClass, IsoClass, bool>, IHallElem> prod_memo_;
};

inline IHallElem operator*(const IHallElem& x, const IHallElem& y) {
    IHallAlgebra* alg = x.alg ? x.alg : y.alg;
    if (!alg) return IHallElem{};
    if (x.alg && y.alg && x.alg != y.alg)
        throw std::logic_error("IHallElem: product across ambient algebras");
    return alg->mul(x, y);
}

} // namespace ihall
