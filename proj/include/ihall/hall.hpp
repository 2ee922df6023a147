#pragma once

// The Hall counting engine for nilpotent representations of a fixed quiver
// over a fixed F_q.  Produces, with exact rational arithmetic:
//
//   diamond:   [M] ⋄ [N] = sum_L ( |Ext^1(M,N)_L| / |Hom(M,N)| ) [L]
//              computed by walking one cocycle per extension class and
//              classifying the middle terms;
//   hall_number: the filtration count F^L_{M,N} = #{ U <= L : U ≅ N, L/U ≅ M },
//              derived from diamond by the Riedtmann correspondence
//              F^L_{M,N} = coeff_L * |Aut L| / (|Aut M| |Aut N|)
//              (integrality of the result is asserted, which cross-checks the
//              automorphism counts);
//   f_count_oracle: the same filtration count by direct arrow-closed subspace
//              enumeration — an independent route kept as an oracle;
//   submodule_table: all (sub, quotient) class pairs of a module with
//              multiplicities, the input for fiber censuses.
//
// Everything is memoized per engine; cyclic-quiver diamond expansions can
// additionally persist in a HallCache.

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "ihall/cache.hpp"
#include "ihall/iso_class.hpp"
#include "ihall/rep.hpp"

namespace ihall {

struct HallTerm {
    IsoClass cls;
    Rat coeff;
};

class HallEngine {
public:
    HallEngine(long q, Quiver Q, double product_budget = 2.5e5, HallCache* cache = nullptr)
        : q_(q), Q_(std::move(Q)), F_(q), cyclic_(Q_.is_cyclic()), product_budget_(product_budget),
          cache_(cache) {
        if (!cyclic_) reg_ = std::make_unique<ClassRegistry>(F_, Q_);
    }
    HallEngine(const HallEngine&) = delete;
    HallEngine& operator=(const HallEngine&) = delete;

    long q() const { return q_; }
    const Quiver& quiver() const { return Q_; }
    const Fq& field() const { return F_; }
    bool cyclic() const { return cyclic_; }
    double product_budget() const { return product_budget_; }
    void set_product_budget(double b) { product_budget_ = b; }

    IsoClass zero_class() {
        return cyclic_ ? class_from_segments(Q_, {}) : classify(zero_rep(Q_));
    }
    IsoClass simple(int i) {
        if (cyclic_) return class_from_segments(Q_, {{i, 1}});
        Rep r = zero_rep(Q_);
        r.dim[(std::size_t)i] = 1;
        for (int a = 0; a < Q_.arrow_count(); ++a) {
            auto [s, t] = Q_.arrows[(std::size_t)a];
            r.x[(std::size_t)a] = Mat(r.dim[(std::size_t)t], r.dim[(std::size_t)s]);
        }
        return classify(r);
    }
    IsoClass segments(const std::vector<Segment>& segs) { return class_from_segments(Q_, segs); }

    IsoClass classify(const Rep& r) {
        if (cyclic_) return cyclic_iso_class(F_, Q_, r);
        return reg_->class_of(r);
    }

    const Rep& rep_of(const IsoClass& c) {
        auto it = rep_memo_.find(c);
        if (it != rep_memo_.end()) return it->second;
        Rep r = c.cyclic_form() ? rep_of_class(Q_, c) : reg_->rep_of(c.gid);
        return rep_memo_.emplace(c, std::move(r)).first->second;
    }

    HomExt hom_ext(const IsoClass& A, const IsoClass& B) {
        auto key = std::make_pair(A, B);
        auto it = homext_memo_.find(key);
        if (it != homext_memo_.end()) return it->second;
        HomExt he = hom_ext_dims(F_, Q_, rep_of(A), rep_of(B));
        homext_memo_[key] = he;
        return he;
    }
    int hom_dim(const IsoClass& A, const IsoClass& B) { return hom_ext(A, B).hom; }
    int ext_dim(const IsoClass& A, const IsoClass& B) { return hom_ext(A, B).ext; }
    int end_dim(const IsoClass& A) { return hom_ext(A, A).hom; }

    Int aut_order(const IsoClass& A) {
        auto it = aut_memo_.find(A);
        if (it != aut_memo_.end()) return it->second;
        Int a = A.cyclic_form() ? aut_order_cyclic(q_, A, end_dim(A))
                                : aut_order_enumerate(F_, Q_, rep_of(A), product_budget_);
        aut_memo_[A] = a;
        return a;
    }

    // [M] ⋄ [N], coefficients |Ext^1(M,N)_L| / |Hom(M,N)|, terms sorted by class.
    const std::vector<HallTerm>& diamond(const IsoClass& M, const IsoClass& N) {
        auto key = std::make_pair(M, N);
        auto it = prod_memo_.find(key);
        if (it != prod_memo_.end()) return it->second;
        if (cyclic_ && cache_) {
            if (auto hit = cache_->get(q_, Q_.spec, M.str(), N.str())) {
                std::vector<HallTerm> terms;
                for (auto& [cls, co] : *hit) terms.push_back({parse_cyclic_class(Q_, cls), co});
                return prod_memo_.emplace(key, std::move(terms)).first->second;
            }
        }
        const Rep& rm = rep_of(M);
        const Rep& rn = rep_of(N);
        ExtProblem P = ext_problem(F_, Q_, rm, rn);
        double combos = 1;
        for (int t = 0; t < P.ext; ++t) {
            combos *= (double)q_;
            if (combos > product_budget_)
                throw SearchTooLarge("diamond " + M.str() + " ⋄ " + N.str(), combos, product_budget_);
        }
        std::map<IsoClass, Int> counts;
        std::vector<fq_t> xi((std::size_t)P.layout.target_dim, 0);
        std::vector<fq_t> vals((std::size_t)P.ext, 0);
        while (true) {
            for (int k = 0; k < P.ext; ++k)
                xi[(std::size_t)P.free_coords[(std::size_t)k]] = vals[(std::size_t)k];
            counts[classify(extension_rep(Q_, rm, rn, P.layout, xi))] += 1;
            int t = 0;
            while (t < P.ext) {
                if (++vals[(std::size_t)t] < F_.q()) break;
                vals[(std::size_t)t] = 0;
                ++t;
            }
            if (t == P.ext) break;
        }
        Int total = 0;
        for (auto& [cls, cnt] : counts) total += cnt;
        if (total != ipow(q_, (unsigned long)P.ext))
            throw std::logic_error("diamond: cocycle count mismatch");
        Int homsize = ipow(q_, (unsigned long)P.hom);
        std::vector<HallTerm> terms;
        for (auto& [cls, cnt] : counts) {
            Rat co(cnt);
            co /= Rat(homsize);
            terms.push_back({cls, co});
        }
        if (cyclic_ && cache_) {
            HallCache::Expansion exp;
            for (auto& t : terms) exp.push_back({t.cls.str(), t.coeff});
            cache_->put(q_, Q_.spec, M.str(), N.str(), exp);
        }
        return prod_memo_.emplace(key, std::move(terms)).first->second;
    }

    // Coefficient of [L] in [M] ⋄ [N].
    Rat diamond_coeff(const IsoClass& L, const IsoClass& M, const IsoClass& N) {
        for (const auto& t : diamond(M, N))
            if (t.cls == L) return t.coeff;
        return Rat(0);
    }

    // |Ext^1(M,N)_L| — extension classes with prescribed middle term.
    Int ext_count_with_middle(const IsoClass& L, const IsoClass& M, const IsoClass& N) {
        Rat r = diamond_coeff(L, M, N) * Rat(ipow(q_, (unsigned long)hom_dim(M, N)));
        if (r.get_den() != 1) throw std::logic_error("ext_count_with_middle: non-integer");
        return r.get_num();
    }

    // F^L_{M,N} via the Riedtmann correspondence; must come out a nonnegative integer.
    Int hall_number(const IsoClass& L, const IsoClass& M, const IsoClass& N) {
        Rat co = diamond_coeff(L, M, N);
        if (co == 0) return 0;
        Rat g = co * Rat(aut_order(L)) / Rat(aut_order(M) * aut_order(N));
        if (g.get_den() != 1 || g < 0)
            throw std::logic_error("hall_number: non-integral count for " + L.str() + " / " + M.str() +
                                   "," + N.str() + ": " + rat_str(g));
        return g.get_num();
    }

    // Visit every submodule of rep L (as per-vertex row spaces), optionally
    // restricted to a fixed dimension vector.  The budget caps the number of
    // candidate subspaces *tried* (including pruned ones), which is an honest
    // measure of work done.
    void enumerate_submodules(const Rep& L, const std::optional<DimVec>& dims, double budget,
                              const std::function<void(const std::vector<Rref>&)>& visit) {
        std::vector<Rref> rows((std::size_t)Q_.n);
        double steps = 0;
        std::function<void(int)> rec = [&](int v) {
            if (v == Q_.n) {
                visit(rows);
                return;
            }
            auto try_dim = [&](int k) {
                subspaces_rref(F_, L.dim[(std::size_t)v], k, [&](const Mat& m) {
                    if (++steps > budget)
                        throw SearchTooLarge("enumerate_submodules", steps, budget);
                    Rref rr;
                    rr.m = m;  // already in rref; pivots are the first nonzero entries
                    for (int i = 0; i < m.r; ++i)
                        for (int j = 0; j < m.c; ++j)
                            if (m.at(i, j)) { rr.pivots.push_back(j); break; }
                    rows[(std::size_t)v] = std::move(rr);
                    // Closure check for arrows with both endpoints chosen.
                    for (int a = 0; a < Q_.arrow_count(); ++a) {
                        auto [s, t] = Q_.arrows[(std::size_t)a];
                        if (std::max(s, t) != v || std::min(s, t) > v) continue;
                        const Rref& Bs = rows[(std::size_t)s];
                        const Rref& Bt = rows[(std::size_t)t];
                        for (int b = 0; b < Bs.m.r; ++b) {
                            std::vector<fq_t> u(Bs.m.a.begin() + b * Bs.m.c,
                                                Bs.m.a.begin() + (b + 1) * Bs.m.c);
                            if (!in_row_span(F_, Bt, mat_vec(F_, L.x[(std::size_t)a], u))) return;
                        }
                    }
                    rec(v + 1);
                });
            };
            if (dims) try_dim((*dims)[(std::size_t)v]);
            else
                for (int k = 0; k <= L.dim[(std::size_t)v]; ++k) try_dim(k);
        };
        rec(0);
    }

    // Oracle route for F^L_{M,N}: direct submodule enumeration.
    Int f_count_oracle(const IsoClass& L, const IsoClass& M, const IsoClass& N, double budget = 1e6) {
        if (dim_add(M.dim, N.dim) != L.dim) return 0;
        const Rep& rl = rep_of(L);
        Int count = 0;
        enumerate_submodules(rl, N.dim, budget, [&](const std::vector<Rref>& rows) {
            Rep sub = subrep_from_rowspaces(F_, Q_, rl, rows);
            if (classify(sub) != N) return;
            Rep quo = quotient_rep(F_, Q_, rl, rows);
            if (classify(quo) != M) return;
            count += 1;
        });
        return count;
    }

    // table[sub class][quotient class] = number of submodules realizing the pair,
    // i.e. table[N][I] = F^A_{I,N}.
    using SubTable = std::map<IsoClass, std::map<IsoClass, Int>>;

    const SubTable& submodule_table(const IsoClass& A, double budget = 5e6) {
        auto it = subtab_memo_.find(A);
        if (it != subtab_memo_.end()) return it->second;
        const Rep& ra = rep_of(A);
        SubTable tab;
        Int total = 0;
        enumerate_submodules(ra, std::nullopt, budget, [&](const std::vector<Rref>& rows) {
            Rep sub = subrep_from_rowspaces(F_, Q_, ra, rows);
            Rep quo = quotient_rep(F_, Q_, ra, rows);
            tab[classify(sub)][classify(quo)] += 1;
            total += 1;
        });
        (void)total;
        return subtab_memo_.emplace(A, std::move(tab)).first->second;
    }

private:
    long q_;
    Quiver Q_;
    Fq F_;
    bool cyclic_;
    double product_budget_;
    HallCache* cache_;
    std::unique_ptr<ClassRegistry> reg_;
    std::map<IsoClass, Rep> rep_memo_;
    std::map<std::pair<IsoClass, IsoClass>, HomExt> homext_memo_;
    std::map<IsoClass, Int> aut_memo_;
    std::map<std::pair<IsoClass, IsoClass>, std::vector<HallTerm>> prod_memo_;
    std::map<IsoClass, SubTable> subtab_memo_;
};

} // namespace ihall
