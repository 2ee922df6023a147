#pragma once

// Relation suites for the loop presentations realized inside ıHall algebras.
//
// Three layers:
//
//   1. Chevalley-level Serre checks (ids s1/s2/s3, shape chosen by the Cartan
//      entry c_ij ∈ {0,−1,−2}) — valid over any loop-free quiver and runnable
//      under either K-normalization; built as symbolic words and pushed
//      through the certified Evaluator.
//
//   2. DrinfeldContext — per cyclic-quiver ambient C_n: the loop-algebra root
//      vectors Ω(B_{j,l}) for the finite-part vertices j ∈ {1..n−1}, the
//      imaginary towers Ω(Θ_{j,m}) and Ω(H_{j,m}), and residual builders for
//      the loop relations (ids idr1b, idr2, idr3a, idr3b, idr4, idr5).
//      The Cartan entries used by the loop relations are the FINITE ones: the
//      induced subgraph of the cycle on vertices {1..n−1} is the type-A path,
//      so the cycle GCM restricted to those vertices is exactly the finite
//      GCM the loop presentation is built on.
//
//   3. StarFrame — the star-vertex composite generator B_[i,0] and its two
//      identities (ids bbs0 / bs0bs1b), instantiated on the chain
//      (star, b_1, ..., b_{p−1}) = (0, 1, ..., p−1) of the cycle.  Root
//      vectors at those labels are the rotation-relabels of the standard ones
//      (the rotation is an algebra automorphism of the cyclic ıHall algebra,
//      so every loop relation survives relabeling verbatim).
//
// Conventions (documented in the repository notes):
//   * root vectors with |l| ≤ 2 are honest braid-word evaluations; |l| ≥ 3
//     are built by the degree-1 loop recursion
//         B_{j,l+1} = [2]^{-1} [H_{j,1}, B_{j,l}] + B_{j,l-1} C
//     and its downward mirror, so the degree-2 loop checks against the
//     recursion-built tower remain nontrivial;
//   * the Θ tower is the recursion forced by the (k,l) = (0,m−1) instances of
//     the imaginary-root loop relation, including the m = 2 torus correction
//     −Θ_0·C (Θ_0 = (v−v^{-1})^{-1} is a nonzero scalar by convention):
//         Θ_1 = v² K_j^{-1} [B_{j,0}, B_{j,1}]_{v^{-2}}
//         Θ_m = v² K_j^{-1} ([B_{j,0}, B_{j,m}]_{v^{-2}}
//                            − v^{-2} [B_{j,1}, B_{j,m-1}]_{v^{2}})
//               + v^{-2} Θ_{m-2} C  − δ_{m,2} Θ_0 C            (m ≥ 2);
//   * H from Θ by the exp/log series conversion, which checks pairwise
//     commutation of the tower as a precondition (it would silently produce
//     garbage otherwise).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ihall/eval.hpp"
#include "ihall/ihall.hpp"
#include "ihall/laurent.hpp"
#include "ihall/series.hpp"

namespace ihall {

// ------------------------------------------------------------------ brackets

inline IHallElem hbracket(IHallAlgebra& A, const IHallElem& x, const IHallElem& y) {
    return A.mul(x, y) - A.mul(y, x);
}

// [x, y]_{v^a} = x y − v^a y x, coefficients evaluated at v = √q.
inline IHallElem hbracket_v(IHallAlgebra& A, const IHallElem& x, const IHallElem& y, long a) {
    return A.mul(x, y) - A.mul(y, x).scaled(QSqrt::v_pow(A.q(), a));
}

// [x_1, ..., x_k]_{v^a} = [[x_1, x_2]_{v^a}, x_3]_{v^a} ... (leftward nesting).
inline IHallElem hbracket_iter_v(IHallAlgebra& A, const std::vector<IHallElem>& xs, long a) {
    if (xs.empty()) throw std::invalid_argument("hbracket_iter_v: empty argument list");
    IHallElem acc = xs[0];
    for (std::size_t k = 1; k < xs.size(); ++k) acc = hbracket_v(A, acc, xs[k], a);
    return acc;
}

// v-binomial [n choose r] = [n][n−1]...[n−r+1] / [r]! as a rational function.
inline RationalV qbinom(int nn, int r) {
    if (r < 0) return RationalV::zero();
    RationalV num = RationalV::one(), den = RationalV::one();
    for (int t = 1; t <= r; ++t) {
        num *= qbracket(nn - t + 1, 1);
        den *= qbracket(t, 1);
    }
    return num / den;
}

// ------------------------------------------------------------------- reports

struct RelationReport {
    std::string rel;     // relation id: s1, s2, s3, idr1b, ..., bbs0, bs0bs1b
    std::string params;  // e.g. "i=1 j=2 k=0 l=0"
    std::string knorm;   // evaluation convention the residual was computed under
    bool pass = false;
    IHallElem residual;  // exact LHS − RHS
};

inline RelationReport make_report(std::string rel, std::string params, const char* knorm,
                                  IHallElem residual) {
    RelationReport r;
    r.rel = std::move(rel);
    r.params = std::move(params);
    r.knorm = knorm;
    r.pass = residual.is_zero();
    r.residual = std::move(residual);
    return r;
}

// --------------------------------------------------------------- Serre suite

// Residual of the rank-2 relation attached to the ordered pair (i, j):
//   c_ij =  0:  B_i B_j − B_j B_i
//   c_ij = −1:  B_i² B_j − [2] B_i B_j B_i + B_j B_i²  +  v^{-1} B_j K_i
//   c_ij = −2:  Σ_{r=0}^{3} (−1)^r [3 over r] B_i^{3−r} B_j B_i^{r}
//               + v^{-1} [2]² (B_i B_j − B_j B_i) K_i
// built symbolically and evaluated under cfg.
inline IHallElem serre_residual(IHallAlgebra& A, const Gcm& g, const EvalConfig& cfg, int i,
                                int j) {
    const int n = g.n;
    if (i == j) throw std::invalid_argument("serre_residual: need i != j");
    NcExpr Bi = NcExpr::B(n, i), Bj = NcExpr::B(n, j), Ki = NcExpr::K_unit(n, i, 1);
    NcExpr expr = NcExpr::zero(n);
    switch (g.at(i, j)) {
        case 0:
            expr = Bi * Bj - Bj * Bi;
            break;
        case -1:
            expr = Bi * Bi * Bj - (Bi * Bj * Bi).scaled(qbracket(2, 1)) + Bj * Bi * Bi +
                   (Bj * Ki).scaled(RationalV::v_pow(-1));
            break;
        case -2: {
            for (int r = 0; r <= 3; ++r) {
                NcExpr word = NcExpr::unit(n);
                for (int t = 0; t < 3 - r; ++t) word = word * Bi;
                word = word * Bj;
                for (int t = 0; t < r; ++t) word = word * Bi;
                RationalV c = qbinom(3, r);
                if (r % 2) c = -c;
                expr = expr + word.scaled(c);
            }
            RationalV c2 = qbracket(2, 1);
            expr = expr + ((Bi * Bj - Bj * Bi) * Ki).scaled(c2 * c2 * RationalV::v_pow(-1));
            break;
        }
        default:
            throw UnsupportedCartanEntry("serre_residual: c_ij = " +
                                         std::to_string(g.at(i, j)));
    }
    Evaluator ev(A, cfg);
    return ev.eval(expr);
}

inline const char* serre_rel_id(int cij) {
    return cij == 0 ? "s1" : cij == -1 ? "s2" : "s3";
}

// All ordered pairs (i, j), i ≠ j, of the ambient quiver's GCM.
inline std::vector<RelationReport> serre_suite(IHallAlgebra& A, const EvalConfig& cfg) {
    Gcm g = Gcm::from_quiver(A.engine().quiver());
    std::vector<RelationReport> out;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (i == j) continue;
            out.push_back(make_report(serre_rel_id(g.at(i, j)),
                                      "i=" + std::to_string(i) + " j=" + std::to_string(j),
                                      cfg.name(), serre_residual(A, g, cfg, i, j)));
        }
    return out;
}

// ----------------------------------------------------------- DrinfeldContext

class DrinfeldContext {
  public:
    // honest_range: the largest |l| evaluated through a literal braid word;
    // beyond it the H_{j,1}-commutator recursion extends the family.  The
    // default (-1) picks 2 for n <= 3 and 1 for larger cycles, where the
    // doubly twisted words grow too large to multiply out while the recursion
    // route stays cheap; the two routes are checked against each other where
    // both are affordable.  The recursion's defining relation involves the
    // loop-vertex H family only, so checks against other generator families
    // (the affine-node closed forms) remain non-defining either way.
    explicit DrinfeldContext(IHallAlgebra& A, EvalConfig cfg = EvalConfig::plain_cfg(),
                             SigmaOrder ord = SigmaOrder::Post, int honest_range = -1)
        : A_(A),
          cfg_(cfg),
          ord_(ord),
          ev_(A, cfg),
          g_(Gcm::cycle(A.rank())),
          honest_(honest_range >= 1 ? honest_range : (A.rank() <= 3 ? 2 : 1)) {
        if (!A.engine().quiver().is_cyclic())
            throw std::invalid_argument("DrinfeldContext: ambient must be a cyclic quiver");
    }

    IHallAlgebra& algebra() { return A_; }
    int n() const { return g_.n; }
    long q() const { return A_.q(); }
    const EvalConfig& config() const { return cfg_; }
    // Finite Cartan entry between loop vertices i, j ∈ {1..n−1} (path GCM).
    int cartan(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return g_.at(i, j);
    }

    QSqrt vq(long a) const { return QSqrt::v_pow(A_.q(), a); }
    QSqrt rv(const RationalV& c) const { return c.eval_sqrt(A_.q()); }

    IHallElem K(int i, int pow = 1) {
        DimVec mu((std::size_t)n(), 0);
        mu[(std::size_t)i] = pow;
        return A_.torus(mu);
    }
    IHallElem C(int pow = 1) { return A_.torus(DimVec((std::size_t)n(), pow)); }

    // Ω(B_{j,l}) for a loop vertex j ∈ {1..n−1}.
    const IHallElem& B(int j, int l) {
        check_vertex(j);
        auto key = std::make_pair(j, l);
        auto it = rv_memo_.find(key);
        if (it != rv_memo_.end()) return it->second;
        IHallElem val;
        if (std::abs(l) <= honest_) {
            val = ev_.eval(root_vector_word(j, l, n(), ord_));
        } else if (l > 0) {
            // B_{j,l} = [2]^{-1} [H_{j,1}, B_{j,l-1}] + B_{j,l-2} C
            val = hbracket(A_, h_hat(j, 1), B(j, l - 1)).scaled(rv(qbracket(2, 1).inv())) +
                  A_.mul(B(j, l - 2), C(1));
        } else {  // l < 0:  B_{j,l} = (B_{j,l+2} − [2]^{-1}[H_{j,1}, B_{j,l+1}]) C^{-1}
            val = A_.mul(
                B(j, l + 2) - hbracket(A_, h_hat(j, 1), B(j, l + 1)).scaled(rv(qbracket(2, 1).inv())),
                C(-1));
        }
        return rv_memo_.emplace(key, std::move(val)).first->second;
    }

    // (1−q)·Ω(B_{j,l}) — the hatted normalization with B̂_{j,0} = [S_j].
    IHallElem Bhat(int j, int l) { return B(j, l).scaled(Rat(1 - A_.q())); }

    // Ω(Θ_{j,m});  Θ_{j,0} = (v−v^{-1})^{-1}·unit,  Θ_{j,m<0} = 0.
    const IHallElem& theta_hat(int j, int m) {
        check_vertex(j);
        auto key = std::make_pair(j, m);
        auto it = th_memo_.find(key);
        if (it != th_memo_.end()) return it->second;
        IHallElem val;
        if (m < 0) {
            val = A_.zero();
        } else if (m == 0) {
            val = A_.unit().scaled(rv((RationalV::v_pow(1) - RationalV::v_pow(-1)).inv()));
        } else if (m == 1) {
            val = A_.mul(K(j, -1), hbracket_v(A_, B(j, 0), B(j, 1), -2)).scaled(vq(2));
        } else {
            IHallElem mixed = hbracket_v(A_, B(j, 0), B(j, m), -2) -
                              hbracket_v(A_, B(j, 1), B(j, m - 1), 2).scaled(vq(-2));
            val = A_.mul(K(j, -1), mixed).scaled(vq(2)) +
                  A_.mul(theta_hat(j, m - 2), C(1)).scaled(vq(-2));
            if (m == 2) val = val - A_.mul(theta_hat(j, 0), C(1));
        }
        return th_memo_.emplace(key, std::move(val)).first->second;
    }

    // Ω(H_{j,m}) via the exp/log series conversion from the Θ tower.  Results
    // are stored per (j, m) in a node-based map so references stay valid
    // across later, deeper tower builds.
    const IHallElem& h_hat(int j, int m) {
        check_vertex(j);
        if (m < 1) throw std::invalid_argument("h_hat: need m >= 1");
        auto key = std::make_pair(j, m);
        auto it = h_memo_.find(key);
        if (it != h_memo_.end()) return it->second;
        std::vector<IHallElem> th;
        for (int t = 1; t <= m; ++t) th.push_back(theta_hat(j, t));
        QSqrt c = rv(RationalV::v_pow(1) - RationalV::v_pow(-1));
        QSqrt cinv = rv((RationalV::v_pow(1) - RationalV::v_pow(-1)).inv());
        auto hs = h_from_theta(
            th, A_.unit(), [&](const IHallElem& x) { return x.scaled(c); },
            [&](const IHallElem& x) { return x.scaled(cinv); });
        for (int t = 1; t <= m; ++t) h_memo_.emplace(std::make_pair(j, t), hs[(std::size_t)(t - 1)]);
        return h_memo_.at(key);
    }

  private:
    void check_vertex(int j) const {
        if (j < 1 || j > n() - 1)
            throw std::invalid_argument("DrinfeldContext: loop vertex out of range: " +
                                        std::to_string(j));
    }

    IHallAlgebra& A_;
    EvalConfig cfg_;
    SigmaOrder ord_;
    Evaluator ev_;
    Gcm g_;
    int honest_;
    std::map<std::pair<int, int>, IHallElem> rv_memo_;
    std::map<std::pair<int, int>, IHallElem> th_memo_;
    std::map<std::pair<int, int>, IHallElem> h_memo_;
};

// ------------------------------------------------------------ loop residuals

// [H_{i,m}, H_{j,r}] = 0.
inline IHallElem idr1b_residual(DrinfeldContext& ctx, int i, int m, int j, int r) {
    return hbracket(ctx.algebra(), ctx.h_hat(i, m), ctx.h_hat(j, r));
}

// [H_{i,m}, B_{j,l}] − ([m c_ij]/m)·(B_{j,l+m} − B_{j,l−m} C^m).
inline IHallElem idr2_residual(DrinfeldContext& ctx, int i, int m, int j, int l) {
    IHallAlgebra& A = ctx.algebra();
    QSqrt coef = ctx.rv(qbracket(m * ctx.cartan(i, j), 1).scaled(Rat(1, m)));
    IHallElem rhs = (ctx.B(j, l + m) - A.mul(ctx.B(j, l - m), ctx.C(m))).scaled(coef);
    return hbracket(A, ctx.h_hat(i, m), ctx.B(j, l)) - rhs;
}

// [B_{i,k}, B_{j,l+1}]_{v^{−c_ij}} − v^{−c_ij} [B_{i,k+1}, B_{j,l}]_{v^{c_ij}},  i ≠ j.
inline IHallElem idr3a_residual(DrinfeldContext& ctx, int i, int k, int j, int l) {
    if (i == j) throw std::invalid_argument("idr3a_residual: need i != j");
    IHallAlgebra& A = ctx.algebra();
    int c = ctx.cartan(i, j);
    return hbracket_v(A, ctx.B(i, k), ctx.B(j, l + 1), -c) -
           hbracket_v(A, ctx.B(i, k + 1), ctx.B(j, l), c).scaled(ctx.vq(-c));
}

// [B_{i,k}, B_{i,l+1}]_{v^{−2}} − v^{−2}[B_{i,k+1}, B_{i,l}]_{v^{2}}
//   − ( v^{−2}Θ_{i,l−k+1}C^k K_i − v^{−4}Θ_{i,l−k−1}C^{k+1}K_i
//     + v^{−2}Θ_{i,k−l+1}C^l K_i − v^{−4}Θ_{i,k−l−1}C^{l+1}K_i ).
inline IHallElem idr3b_residual(DrinfeldContext& ctx, int i, int k, int l) {
    IHallAlgebra& A = ctx.algebra();
    IHallElem lhs = hbracket_v(A, ctx.B(i, k), ctx.B(i, l + 1), -2) -
                    hbracket_v(A, ctx.B(i, k + 1), ctx.B(i, l), 2).scaled(ctx.vq(-2));
    auto term = [&](int th_idx, int c_pow, long vexp) {
        return A.mul(ctx.theta_hat(i, th_idx), A.mul(ctx.C(c_pow), ctx.K(i)))
            .scaled(ctx.vq(vexp));
    };
    IHallElem rhs = term(l - k + 1, k, -2) - term(l - k - 1, k + 1, -4) +
                    term(k - l + 1, l, -2) - term(k - l - 1, l + 1, -4);
    return lhs - rhs;
}

// [B_{i,k}, B_{j,l}] = 0 when c_ij = 0.
inline IHallElem idr4_residual(DrinfeldContext& ctx, int i, int k, int j, int l) {
    if (ctx.cartan(i, j) != 0) throw std::invalid_argument("idr4_residual: need c_ij = 0");
    return hbracket(ctx.algebra(), ctx.B(i, k), ctx.B(j, l));
}

namespace detail {

// S(k₁,k₂|l; i,j) = B_{i,k₁}B_{i,k₂}B_{j,l} − [2]B_{i,k₁}B_{j,l}B_{i,k₂} + B_{j,l}B_{i,k₁}B_{i,k₂}.
inline IHallElem idr5_S(DrinfeldContext& ctx, int k1, int k2, int l, int i, int j) {
    IHallAlgebra& A = ctx.algebra();
    const IHallElem &b1 = ctx.B(i, k1), &b2 = ctx.B(i, k2), &bj = ctx.B(j, l);
    return A.mul(b1, A.mul(b2, bj)) -
           A.mul(b1, A.mul(bj, b2)).scaled(ctx.rv(qbracket(2, 1))) + A.mul(bj, A.mul(b1, b2));
}

// R(k₁,k₂|l; i,j) = K_i C^{k₁} ( −Σ_{p≥0} v^{2p}[2][Θ_{i,k₂−k₁−2p−1}, B_{j,l−1}]_{v^{−2}} C^{p+1}
//                                −Σ_{p≥1} v^{2p−1}[2][B_{j,l}, Θ_{i,k₂−k₁−2p}]_{v^{−2}} C^{p}
//                                −[B_{j,l}, Θ_{i,k₂−k₁}]_{v^{−2}} ).
// The p-sums terminate because Θ_{i,m} = 0 for m < 0 (Θ_{i,0} is a nonzero scalar
// and its index-0 terms DO contribute).
inline IHallElem idr5_R(DrinfeldContext& ctx, int k1, int k2, int l, int i, int j) {
    IHallAlgebra& A = ctx.algebra();
    QSqrt two = ctx.rv(qbracket(2, 1));
    IHallElem inner = A.zero();
    for (int p = 0; k2 - k1 - 2 * p - 1 >= 0; ++p)
        inner -= A.mul(hbracket_v(A, ctx.theta_hat(i, k2 - k1 - 2 * p - 1), ctx.B(j, l - 1), -2),
                       ctx.C(p + 1))
                     .scaled(ctx.vq(2 * p) * two);
    for (int p = 1; k2 - k1 - 2 * p >= 0; ++p)
        inner -= A.mul(hbracket_v(A, ctx.B(j, l), ctx.theta_hat(i, k2 - k1 - 2 * p), -2),
                       ctx.C(p))
                     .scaled(ctx.vq(2 * p - 1) * two);
    inner -= hbracket_v(A, ctx.B(j, l), ctx.theta_hat(i, k2 - k1), -2);
    return A.mul(A.mul(ctx.K(i), ctx.C(k1)), inner);
}

}  // namespace detail

// 𝕊(k₁,k₂|l; i,j) − ℝ(k₁,k₂|l; i,j) for c_ij = −1, where 𝕊/ℝ add the {k₁↔k₂}
// copy exactly when k₁ ≠ k₂.
inline IHallElem idr5_residual(DrinfeldContext& ctx, int i, int j, int k1, int k2, int l) {
    if (ctx.cartan(i, j) != -1) throw std::invalid_argument("idr5_residual: need c_ij = -1");
    IHallElem res = detail::idr5_S(ctx, k1, k2, l, i, j) - detail::idr5_R(ctx, k1, k2, l, i, j);
    if (k1 != k2)
        res += detail::idr5_S(ctx, k2, k1, l, i, j) - detail::idr5_R(ctx, k2, k1, l, i, j);
    return res;
}

// ----------------------------------------------------------- Drinfeld suite

struct DrinfeldBounds {
    int m_max = 2;   // tower degree for idr1b / idr2
    int k_abs = 1;   // |k| bound for idr3a/idr3b (and l there)
    int l_abs = 1;   // |l| bound for idr2
    int k5_max = 1;  // k₁,k₂ ∈ [0, k5_max], l ∈ [0, k5_max] for idr5
};

inline std::vector<RelationReport> drinfeld_suite(DrinfeldContext& ctx,
                                                  const DrinfeldBounds& bd = {}) {
    std::vector<RelationReport> out;
    const char* cf = ctx.config().name();
    const int n = ctx.n();
    auto P = [](std::initializer_list<std::pair<const char*, int>> ps) {
        std::string s;
        for (auto& [k, x] : ps) s += (s.empty() ? "" : " ") + std::string(k) + "=" + std::to_string(x);
        return s;
    };
    for (int i = 1; i < n; ++i)
        for (int m = 1; m <= bd.m_max; ++m)
            for (int j = i; j < n; ++j)
                for (int r = (j == i ? m : 1); r <= bd.m_max; ++r)
                    out.push_back(make_report("idr1b", P({{"i", i}, {"m", m}, {"j", j}, {"r", r}}),
                                              cf, idr1b_residual(ctx, i, m, j, r)));
    for (int i = 1; i < n; ++i)
        for (int m = 1; m <= bd.m_max; ++m)
            for (int j = 1; j < n; ++j)
                for (int l = -bd.l_abs; l <= bd.l_abs; ++l)
                    out.push_back(make_report("idr2", P({{"i", i}, {"m", m}, {"j", j}, {"l", l}}),
                                              cf, idr2_residual(ctx, i, m, j, l)));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            if (i == j) continue;
            for (int k = -bd.k_abs; k <= bd.k_abs; ++k)
                for (int l = -bd.k_abs; l <= bd.k_abs; ++l)
                    out.push_back(make_report("idr3a", P({{"i", i}, {"k", k}, {"j", j}, {"l", l}}),
                                              cf, idr3a_residual(ctx, i, k, j, l)));
        }
    for (int i = 1; i < n; ++i)
        for (int k = -bd.k_abs; k <= bd.k_abs; ++k)
            for (int l = -bd.k_abs; l <= bd.k_abs; ++l)
                out.push_back(make_report("idr3b", P({{"i", i}, {"k", k}, {"l", l}}), cf,
                                          idr3b_residual(ctx, i, k, l)));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (ctx.cartan(i, j) != 0) continue;
            for (int k = -bd.k_abs; k <= bd.k_abs; ++k)
                for (int l = -bd.k_abs; l <= bd.k_abs; ++l)
                    out.push_back(make_report("idr4", P({{"i", i}, {"k", k}, {"j", j}, {"l", l}}),
                                              cf, idr4_residual(ctx, i, k, j, l)));
        }
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            if (i == j || ctx.cartan(i, j) != -1) continue;
            for (int k1 = 0; k1 <= bd.k5_max; ++k1)
                for (int k2 = k1; k2 <= bd.k5_max; ++k2)
                    for (int l = 0; l <= bd.k5_max; ++l)
                        out.push_back(
                            make_report("idr5", P({{"i", i}, {"j", j}, {"k1", k1}, {"k2", k2}, {"l", l}}),
                                        cf, idr5_residual(ctx, i, j, k1, k2, l)));
        }
    return out;
}

// --------------------------------------------------------------- StarFrame

// Rotation automorphism of the cyclic ıHall algebra: vertex t ↦ t + s (mod n)
// on segment tops, and the matching rotation of torus exponents.
inline IHallElem rotate_elem(IHallAlgebra& A, const IHallElem& x, int s) {
    const int n = A.rank();
    auto rot = [&](int t) { return ((t + s) % n + n) % n; };
    IHallElem out = A.zero();
    for (const auto& [key, c] : x.terms) {
        const IsoClass& cls = key.first;
        if (!cls.cyclic_form())
            throw std::invalid_argument("rotate_elem: non-cyclic class in element");
        std::vector<Segment> segs = cls.segs;
        for (auto& sg : segs) sg.first = rot(sg.first);
        DimVec alpha((std::size_t)n, 0);
        for (int t = 0; t < n; ++t) alpha[(std::size_t)rot(t)] = key.second[(std::size_t)t];
        out.add_term({A.engine().segments(segs), alpha}, c);
    }
    return out;
}

// The star-vertex computational frame: the chain (star, b_1, ..., b_{p−1})
// realized at vertices (0, 1, ..., p−1) of C_n, with root vectors obtained by
// rotating the standard loop vectors at (1, ..., p) down by one.  Requires
// p ≤ n − 1 so the whole chain stays inside the loop vertex set before the
// rotation.
class StarFrame {
  public:
    StarFrame(DrinfeldContext& ctx, int p) : ctx_(ctx), p_(p) {
        if (p < 2 || p > ctx.n() - 1)
            throw std::invalid_argument("StarFrame: need 2 <= p <= n-1");
    }

    int p() const { return p_; }

    // B_{⋆,l} — the star-vertex root vector (frame vertex 0).
    IHallElem Bstar(int l) { return rot(ctx_.B(1, l)); }
    // B_{[i,j],l} — branch root vectors, j ∈ {1..p−1} (frame vertex j).
    IHallElem Bbranch(int j, int l) {
        if (j < 1 || j > p_ - 1) throw std::invalid_argument("StarFrame: branch index");
        return rot(ctx_.B(1 + j, l));
    }

    // θ_i = α_{[i,1]} + ... + α_{[i,p−1]} in frame coordinates.
    DimVec theta() const {
        DimVec t((std::size_t)ctx_.n(), 0);
        for (int j = 1; j <= p_ - 1; ++j) t[(std::size_t)j] = 1;
        return t;
    }

    // B_{[i,0]} = [B_{[i,1],−1}, B_{[i,2]}, ..., B_{[i,p−1]}]_v · C K_{θ}^{-1}.
    IHallElem Bs0() {
        IHallAlgebra& A = ctx_.algebra();
        std::vector<IHallElem> xs;
        xs.push_back(Bbranch(1, -1));
        for (int j = 2; j <= p_ - 1; ++j) xs.push_back(Bbranch(j, 0));
        IHallElem word = xs.size() == 1 ? xs[0] : hbracket_iter_v(A, xs, 1);
        DimVec shift((std::size_t)ctx_.n(), 1);  // δ − θ
        for (int j = 1; j <= p_ - 1; ++j) shift[(std::size_t)j] -= 1;
        return word.torus_shifted(shift);
    }

    // [B_{[i,0]}, B_{⋆,l}]_v + [B_{⋆,l−1}, B_{[i,1]}, ..., B_{[i,p−1]}]_v · C K_θ^{-1}.
    IHallElem bbs0_residual(int l) {
        IHallAlgebra& A = ctx_.algebra();
        IHallElem lhs = hbracket_v(A, Bs0(), Bstar(l), 1);
        std::vector<IHallElem> xs;
        xs.push_back(Bstar(l - 1));
        for (int j = 1; j <= p_ - 1; ++j) xs.push_back(Bbranch(j, 0));
        DimVec shift((std::size_t)ctx_.n(), 1);
        for (int j = 1; j <= p_ - 1; ++j) shift[(std::size_t)j] -= 1;
        return lhs + hbracket_iter_v(A, xs, 1).torus_shifted(shift);
    }

    // [B_{[i,0]}, [B_{[i,1]}, B_{⋆,l}]_{v^{-1}}]  (requires p > 2).
    IHallElem bs0bs1b_residual(int l) {
        if (p_ <= 2) throw std::invalid_argument("bs0bs1b: needs p > 2");
        IHallAlgebra& A = ctx_.algebra();
        return hbracket(A, Bs0(), hbracket_v(A, Bbranch(1, 0), Bstar(l), -1));
    }

  private:
    IHallElem rot(const IHallElem& x) { return rotate_elem(ctx_.algebra(), x, -1); }

    DrinfeldContext& ctx_;
    int p_;
};

inline std::vector<RelationReport> star_suite(DrinfeldContext& ctx, int p, int l_max) {
    StarFrame fr(ctx, p);
    std::vector<RelationReport> out;
    const char* cf = ctx.config().name();
    for (int l = 0; l <= l_max; ++l)
        out.push_back(make_report("bbs0", "l=" + std::to_string(l), cf, fr.bbs0_residual(l)));
    if (p > 2)
        for (int l = 0; l <= l_max; ++l)
            out.push_back(
                make_report("bs0bs1b", "l=" + std::to_string(l), cf, fr.bs0bs1b_residual(l)));
    return out;
}

// The composite generator over the full cycle (the branch chain uses every
// loop vertex, p = n): [B_{1,−1}, B_{2,0}, ..., B_{n−1,0}]_v · C K_θ^{-1}
// with θ = e_1 + ... + e_{n−1}.  The word involves only branch vectors, so
// the standard loop labels serve directly and no rotation is needed.
inline IHallElem full_cycle_bs0(DrinfeldContext& ctx) {
    IHallAlgebra& A = ctx.algebra();
    const int n = ctx.n();
    std::vector<IHallElem> xs;
    xs.push_back(ctx.B(1, -1));
    for (int j = 2; j <= n - 1; ++j) xs.push_back(ctx.B(j, 0));
    IHallElem word = xs.size() == 1 ? xs[0] : hbracket_iter_v(A, xs, 1);
    DimVec shift((std::size_t)n, 1);  // δ − θ = e_0
    for (int j = 1; j <= n - 1; ++j) shift[(std::size_t)j] -= 1;
    return word.torus_shifted(shift);
}

// The full-cycle composite generator collapses to a single basis class:
// +1/(q−1) · [S_0].  The + sign is forced by the (−1)^{jl} sign assignment
// baked into the root-vector words (the o(j) = (−1)^j choice); the opposite
// admissible assignment on an even cycle, o(j) = (−1)^{j+1}, flips the level
// −1 entry and yields −1/(q−1) · [S_0].  The collapse to the single class
// and the magnitude of the coefficient are sign-independent.
inline IHallElem full_cycle_bs0_expected(DrinfeldContext& ctx) {
    IHallAlgebra& A = ctx.algebra();
    return A.basis(A.engine().simple(0)).scaled(Rat(1, ctx.q() - 1));
}

}  // namespace ihall
