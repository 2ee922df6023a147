#pragma once
// Distinguished elements of the cyclic-quiver iHall algebra built from
// closed formulas rather than braid words, and the relation suites around
// them:
//
//   h0m(A, m)               the affine-node loop generator H_{0,m}: a
//                           partition-indexed combination of stacked
//                           uniserials at vertex 0 (lengths multiples of n,
//                           so the K0-degree is m*delta), minus a torus
//                           correction for even m.
//   theta_hat_global(ctx,m) the weighted sum over all vertices of the degree-m
//                           imaginary generators; expected central.
//   c_hat(A, m)             the signed sum over iso-classes of class m*delta
//                           with multiplicity-free socle; centrality is
//                           EXPERIMENTAL (checked, reported, not asserted).
//   gln_suite(ctx, bounds)  commutation checks tying h0m to the loop towers:
//                           [H_{0,m}, H_{i,r}] = 0 and the j = 1 /
//                           j != 1 dichotomy for [H_{0,m}, Bhat_{j,l}].
//
// Conventions: n(l) = prod_{i=1..l} (1 - q^i); all brackets are plain
// commutators; scalars live in Q(sqrt(q)).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihall/relations.hpp"

namespace ihall {

// Weakly decreasing positive parts summing to m, in reverse-lex order
// starting from the one-part partition (m).
inline std::vector<std::vector<int>> partitions_of(int m) {
    std::vector<std::vector<int>> out;
    if (m < 0) return out;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

// prod_{i=1..l} (1 - q^i) as an exact rational.
inline Rat n_poly(long q, int l) {
    Rat acc(1);
    Int pw(1);
    for (int i = 1; i <= l; ++i) {
        pw *= q;
        acc *= Rat(1) - Rat(pw);
    }
    return acc;
}

// [m]_{v^k} evaluated at v = sqrt(q).
inline QSqrt qnum(long q, int m, int k) { return qbracket(m, k).eval_sqrt(q); }

// The affine-node loop generator of degree m (m >= 1):
//   ([m]/m) * sum_{|lambda| = m} n(len(lambda)-1) / |Aut S_0^{(lambda)}| * [S_0^{(lambda)}]
//   - [m even] * v^{-m/2} * ([m/2]/m) * [K_{(m/2) delta}]
// where S_0^{(lambda)} = direct sum of uniserials with top 0 and lengths
// lambda_i * n, so every module term has class m*delta.
inline IHallElem h0m(IHallAlgebra& A, int m) {
    if (m < 1) throw std::invalid_argument("h0m: need m >= 1");
    HallEngine& E = A.engine();
    const int n = A.rank();
    const long q = A.q();
    IHallElem out = A.zero();
    QSqrt lead = qnum(q, m, 1) * QSqrt::make_rat(q, Rat(1, m));
    for (const auto& lam : partitions_of(m)) {
        std::vector<Segment> segs;
        for (int part : lam) segs.push_back({0, part * n});
        IsoClass M = E.segments(segs);
        Rat coeff = n_poly(q, (int)lam.size() - 1) / Rat(E.aut_order(M));
        out = out + A.basis(M).scaled(lead * QSqrt::make_rat(q, coeff));
    }
    if (m % 2 == 0) {
        QSqrt corr = QSqrt::v_pow(q, -m / 2) * qnum(q, m / 2, 1) *
                     QSqrt::make_rat(q, Rat(1, m));
        out = out - A.torus(DimVec((std::size_t)n, m / 2)).scaled(corr);
    }
    return out;
}

// H_{i,m} across the whole vertex set: the i = 0 member is the closed-form
// h0m, the i >= 1 members are the loop towers.
inline IHallElem h_hat_at(DrinfeldContext& ctx, int i, int m) {
    if (i == 0) return h0m(ctx.algebra(), m);
    return ctx.h_hat(i, m);
}

// theta_hat_m = sum_{i=0}^{n-1} [n-i]_{v^m} * H_{i,m}; expected central.
inline IHallElem theta_hat_global(DrinfeldContext& ctx, int m) {
    IHallAlgebra& A = ctx.algebra();
    const int n = ctx.n();
    const long q = ctx.q();
    IHallElem out = A.zero();
    for (int i = 0; i <= n - 1; ++i)
        out = out + h_hat_at(ctx, i, m).scaled(qnum(q, n - i, m));
    return out;
}

// All iso-classes of nilpotent representations with class exactly `target`,
// enumerated as multisets of segments in a canonical order.
inline std::vector<IsoClass> classes_of_dim(HallEngine& E, const DimVec& target) {
    const int n = (int)target.size();
    int total = 0;
    for (int d : target) total += d;
    std::vector<IsoClass> out;
    std::vector<Segment> cur;
    DimVec rest = target;
    auto fits = [&](int t, int l) {
        // subtract the segment's class from `rest`; report feasibility
        IsoClass seg = E.segments({{t, l}});
        for (int v = 0; v < n; ++v)
            if (rest[(std::size_t)v] < seg.dim[(std::size_t)v]) return false;
        return true;
    };
    auto apply = [&](int t, int l, int sgn) {
        IsoClass seg = E.segments({{t, l}});
        for (int v = 0; v < n; ++v) rest[(std::size_t)v] += sgn * seg.dim[(std::size_t)v];
    };
    auto rec = [&](auto&& self, int min_t, int min_l) -> void {
        bool done = true;
        for (int d : rest)
            if (d != 0) done = false;
        if (done) {
            out.push_back(E.segments(cur));
            return;
        }
        for (int t = min_t; t < n; ++t) {
            int lstart = (t == min_t) ? min_l : 1;
            for (int l = lstart; l <= total; ++l) {
                if (!fits(t, l)) continue;
                apply(t, l, -1);
                cur.push_back({t, l});
                self(self, t, l);  // canonical: segments non-decreasing in (t, l)
                cur.pop_back();
                apply(t, l, +1);
            }
        }
    };
    rec(rec, 0, 1);
    return out;
}

// Multiplicity of the simple at vertex s in the socle of M equals
// dim Hom(S_s, M); the socle is multiplicity-free iff all are <= 1.
inline bool socle_multiplicity_free(HallEngine& E, const IsoClass& M) {
    const int n = (int)M.dim.size();
    for (int s = 0; s < n; ++s)
        if (E.hom_dim(E.simple(s), M) > 1) return false;
    return true;
}

// The experimental degree-m central candidate:
//   c_hat_m = (-1)^m q^{-nm} sum_{[M]} (-1)^{dim End M} [M]
// over iso-classes M of class m*delta whose socle is multiplicity-free;
// c_hat_0 = 1 by convention.
inline IHallElem c_hat(IHallAlgebra& A, int m) {
    if (m < 0) throw std::invalid_argument("c_hat: need m >= 0");
    if (m == 0) return A.unit();
    HallEngine& E = A.engine();
    const int n = A.rank();
    const long q = A.q();
    IHallElem out = A.zero();
    for (const IsoClass& M : classes_of_dim(E, DimVec((std::size_t)n, m))) {
        if (!socle_multiplicity_free(E, M)) continue;
        int sgn = (E.end_dim(M) % 2 == 0) ? 1 : -1;
        out = out + A.basis(M).scaled(Rat(sgn));
    }
    Int denom = ipow(q, (unsigned long)(n * m));
    Rat lead = Rat(m % 2 == 0 ? 1 : -1) / Rat(denom);
    return out.scaled(lead);
}

// ----- relation suites -----

// Centrality of theta_hat_m against every generator class [S_i].
inline std::vector<RelationReport> theta_central_suite(DrinfeldContext& ctx, int m_max) {
    IHallAlgebra& A = ctx.algebra();
    std::vector<RelationReport> out;
    const char* cf = ctx.config().name();
    for (int m = 1; m <= m_max; ++m) {
        IHallElem th = theta_hat_global(ctx, m);
        for (int i = 0; i < ctx.n(); ++i) {
            IHallElem res = hbracket(A, th, A.basis(A.engine().simple(i)));
            out.push_back(make_report("theta-central",
                                      "m=" + std::to_string(m) + " i=" + std::to_string(i), cf,
                                      res));
        }
    }
    return out;
}

// Centrality of the experimental c_hat_m against every generator class.
inline std::vector<RelationReport> c_central_suite(IHallAlgebra& A, int m_max) {
    std::vector<RelationReport> out;
    for (int m = 1; m <= m_max; ++m) {
        IHallElem c = c_hat(A, m);
        for (int i = 0; i < A.rank(); ++i) {
            IHallElem res = hbracket(A, c, A.basis(A.engine().simple(i)));
            out.push_back(make_report("c-central-experimental",
                                      "m=" + std::to_string(m) + " i=" + std::to_string(i),
                                      "plain", res));
        }
    }
    return out;
}

struct GlnBounds {
    int m_max = 2;  // degree of the affine-node generator
    int r_max = 2;  // degree of the loop-tower partner in hhcom
    int l_abs = 1;  // |l| bound for hbcom
};

// Commutation suite for the affine-node generators:
//   hhcom: [H_{0,m}, H_{i,r}] = 0 for all 0 <= i <= n-1;
//   hbcom: [H_{0,m}, Bhat_{j,l}] = -([m]/m) Bhat_{1,l+m}
//                                  + ([m]/m) Bhat_{1,l-m} C^m   if j = 1,
//                                  0 otherwise (including j = n-1, which is
//                                  adjacent to vertex 0 — this pins the
//                                  orientation convention).
inline std::vector<RelationReport> gln_suite(DrinfeldContext& ctx, GlnBounds bd = {}) {
    IHallAlgebra& A = ctx.algebra();
    const int n = ctx.n();
    const long q = ctx.q();
    if (n < 3) throw std::invalid_argument("gln_suite: need n >= 3 so j = 1 and j = n-1 differ");
    std::vector<RelationReport> out;
    const char* cf = ctx.config().name();
    for (int m = 1; m <= bd.m_max; ++m) {
        IHallElem h0 = h0m(A, m);
        for (int i = 0; i <= n - 1; ++i) {
            for (int r = 1; r <= bd.r_max; ++r) {
                if (i == 0 && r < m) continue;  // [h0m_m, h0m_r] symmetric in (m, r)
                IHallElem res = hbracket(A, h0, h_hat_at(ctx, i, r));
                out.push_back(make_report("hhcom",
                                          "m=" + std::to_string(m) + " i=" + std::to_string(i) +
                                              " r=" + std::to_string(r),
                                          cf, res));
            }
        }
        QSqrt co = qnum(q, m, 1) * QSqrt::make_rat(q, Rat(1, m));
        for (int j = 1; j <= n - 1; ++j) {
            for (int l = -bd.l_abs; l <= bd.l_abs; ++l) {
                IHallElem res = hbracket(A, h0, ctx.Bhat(j, l));
                if (j == 1) {
                    res = res + ctx.Bhat(1, l + m).scaled(co) -
                          A.mul(ctx.Bhat(1, l - m), ctx.C(m)).scaled(co);
                }
                out.push_back(make_report("hbcom",
                                          "m=" + std::to_string(m) + " j=" + std::to_string(j) +
                                              " l=" + std::to_string(l),
                                          cf, res));
            }
        }
    }
    return out;
}

}  // namespace ihall
