#pragma once

// Isomorphism classes of nilpotent representations.
//
// Cyclic quiver: every nilpotent representation is a direct sum of segments
// (i, a) = the uniserial of length a with top S_i, and the multiset of
// segments is a complete invariant.  It is recovered exactly from the rank
// table r_{i,l} = rank of the composite of l consecutive arrows starting at
// vertex i, via
//
//     mult(i, a) = r_{i,a-1} - r_{i,a} - r_{i+1,a} + r_{i+1,a+1}.
//
// (For a single segment (j, b), r_{i,l} counts basis positions t in [0, b-l)
// with t = j - i mod n; the double difference collapses to [ (i,a) = (j,b) ].)
//
// General quiver: classes are registry handles; classification is an honest
// isomorphism search (budgeted) behind cheap invariant pre-filters, so it is
// always correct, merely slow if pushed beyond small examples.

#include <map>
#include <string>
#include <vector>

#include "ihall/rep.hpp"

namespace ihall {

struct IsoClass {
    std::vector<Segment> segs;  // cyclic canonical form (sorted); unused for registry classes
    int gid = -1;               // registry id for general quivers, -1 for cyclic form
    DimVec dim;

    bool cyclic_form() const { return gid < 0; }
    bool is_zero_class() const { return cyclic_form() ? segs.empty() : dim_is_zero(dim); }
    int total() const { return dim_total(dim); }

    friend bool operator==(const IsoClass& a, const IsoClass& b) {
        return a.gid == b.gid && a.segs == b.segs;
    }
    friend bool operator!=(const IsoClass& a, const IsoClass& b) { return !(a == b); }
    friend bool operator<(const IsoClass& a, const IsoClass& b) {
        if (a.gid != b.gid) return a.gid < b.gid;
        return a.segs < b.segs;
    }

    // "i:a+i:a+..." for cyclic classes (sorted), "0" for the zero module,
    // "g<id>" for registry classes.
    std::string str() const {
        if (!cyclic_form()) return "g" + std::to_string(gid);
        if (segs.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < segs.size(); ++k)
            s += (k ? "+" : "") + std::to_string(segs[k].first) + ":" + std::to_string(segs[k].second);
        return s;
    }
};

inline IsoClass class_from_segments(const Quiver& Q, std::vector<Segment> segs) {
    // Normalize tops into [0, n) and drop empties.
    std::vector<Segment> out;
    for (auto [i, a] : segs) {
        if (a < 0) throw std::domain_error("segment with negative length");
        if (a == 0) continue;
        out.push_back({((i % Q.n) + Q.n) % Q.n, a});
    }
    std::sort(out.begin(), out.end());
    IsoClass c;
    c.segs = std::move(out);
    c.dim.assign((std::size_t)Q.n, 0);
    for (const auto& s : c.segs) c.dim = dim_add(c.dim, segment_dim(Q.n, s));
    return c;
}

inline IsoClass parse_cyclic_class(const Quiver& Q, const std::string& s) {
    if (s == "0") return class_from_segments(Q, {});
    std::vector<Segment> segs;
    std::size_t b = 0;
    while (b < s.size()) {
        auto plus = s.find('+', b);
        std::string tok = s.substr(b, plus == std::string::npos ? plus : plus - b);
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw ParseError("class token '" + tok + "' lacks ':'", b);
        try {
            segs.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
        } catch (...) {
            throw ParseError("bad class token '" + tok + "'", b);
        }
        if (plus == std::string::npos) break;
        b = plus + 1;
    }
    return class_from_segments(Q, segs);
}

inline Rep rep_of_class(const Quiver& Q, const IsoClass& c) {
    if (!c.cyclic_form()) throw std::logic_error("rep_of_class: registry classes need the registry");
    return rep_from_segments(Q, c.segs);
}

// Decompose a nilpotent cyclic-quiver representation via the rank table.
inline IsoClass cyclic_iso_class(const Fq& F, const Quiver& Q, const Rep& M) {
    if (!Q.is_cyclic()) throw std::logic_error("cyclic_iso_class: cyclic quiver only");
    int n = Q.n, D = M.total();
    // comp[i] = composite of l arrows starting at vertex i (updated in place).
    // Arrow out of vertex v is M.x[v] (arrows are indexed by source for cn).
    std::vector<Mat> arrow_of((std::size_t)n);
    for (int a = 0; a < Q.arrow_count(); ++a) arrow_of[(std::size_t)Q.arrows[(std::size_t)a].first] = M.x[(std::size_t)a];
    // r[l][i] for l = 0..D+1
    std::vector<std::vector<int>> r((std::size_t)(D + 2), std::vector<int>((std::size_t)n, 0));
    std::vector<Mat> comp((std::size_t)n);
    for (int i = 0; i < n; ++i) {
        comp[(std::size_t)i] = Mat::identity(M.dim[(std::size_t)i]);
        r[0][(std::size_t)i] = M.dim[(std::size_t)i];
    }
    for (int l = 1; l <= D + 1; ++l) {
        for (int i = 0; i < n; ++i) {
            // comp_{i,l} = X_{i-l+1} ∘ comp_{i,l-1}; the next arrow leaves vertex (i-l+1) mod n.
            int next = ((i - l + 1) % n + n) % n;
            comp[(std::size_t)i] = mat_mul(F, arrow_of[(std::size_t)next], comp[(std::size_t)i]);
            r[(std::size_t)l][(std::size_t)i] = mat_rank(F, comp[(std::size_t)i]);
        }
    }
    std::vector<Segment> segs;
    for (int a = 1; a <= D; ++a)
        for (int i = 0; i < n; ++i) {
            int ip = (i + 1) % n;
            int m = r[(std::size_t)(a - 1)][(std::size_t)i] - r[(std::size_t)a][(std::size_t)i] -
                    r[(std::size_t)a][(std::size_t)ip] + r[(std::size_t)(a + 1)][(std::size_t)ip];
            if (m < 0) throw std::logic_error("cyclic_iso_class: negative multiplicity (non-nilpotent input?)");
            for (int t = 0; t < m; ++t) segs.push_back({i, a});
        }
    IsoClass c = class_from_segments(Q, segs);
    if (c.dim != M.dim)
        throw std::logic_error("cyclic_iso_class: decomposition does not add up (non-nilpotent input?)");
    return c;
}

// Honest isomorphism test: search Hom(A,B) for an element invertible at every
// vertex.  Complete (up to the budget): A ≅ B iff such an element exists.
inline bool iso_test(const Fq& F, const Quiver& Q, const Rep& A, const Rep& B,
                     double budget = 3e6) {
    if (A.dim != B.dim) return false;
    if (A.total() == 0) return true;
    auto basis = hom_basis(F, Q, A, B);
    std::size_t h = basis.size();
    if (h == 0) return false;
    if ((std::size_t)hom_dim(F, Q, A, A) != (std::size_t)hom_dim(F, Q, B, B)) return false;
    auto invertible = [&](const std::vector<Mat>& f) {
        for (int i = 0; i < Q.n; ++i)
            if (mat_rank(F, f[(std::size_t)i]) != A.dim[(std::size_t)i]) return false;
        return true;
    };
    // Single basis elements first (common fast path).
    for (const auto& f : basis)
        if (invertible(f)) return true;
    double combos = 1;
    for (std::size_t t = 0; t < h; ++t) {
        combos *= (double)F.q();
        if (combos > budget) throw SearchTooLarge("iso_test coefficient search", combos, budget);
    }
    std::vector<fq_t> c(h, 0);
    std::vector<Mat> f;
    while (true) {
        std::size_t t = 0;
        while (t < h) {
            if (++c[t] < F.q()) break;
            c[t] = 0;
            ++t;
        }
        if (t == h) break;
        f.clear();
        for (int i = 0; i < Q.n; ++i) {
            Mat fi(B.dim[(std::size_t)i], A.dim[(std::size_t)i]);
            for (std::size_t k = 0; k < h; ++k) {
                if (!c[k]) continue;
                const Mat& bk = basis[k][(std::size_t)i];
                for (std::size_t e = 0; e < fi.a.size(); ++e)
                    fi.a[e] = F.add(fi.a[e], F.mul(c[k], bk.a[e]));
            }
            f.push_back(std::move(fi));
        }
        if (invertible(f)) return true;
    }
    return false;
}

// |Aut M| for a cyclic-quiver nilpotent class:
//   |Aut M| = q^{dim End M} * prod_t prod_{i=1}^{m_t} (1 - q^{-i}),
// t running over distinct segment types with multiplicities m_t.  Valid
// because every indecomposable here has endomorphism residue field F_q.
inline Int aut_order_cyclic(long q, const IsoClass& c, int end_dim) {
    Rat r = rpow(Rat(q), end_dim);
    std::map<Segment, int> mult;
    for (const auto& s : c.segs) mult[s]++;
    for (const auto& [seg, m] : mult) {
        (void)seg;
        for (int i = 1; i <= m; ++i) r *= Rat(1) - rpow(Rat(q), -i);
    }
    if (r.get_den() != 1) throw std::logic_error("aut_order_cyclic: non-integer order");
    return r.get_num();
}

// Enumeration oracle for |Aut M|: count invertible elements of End(M).
inline Int aut_order_enumerate(const Fq& F, const Quiver& Q, const Rep& M, double budget = 1e6) {
    auto basis = hom_basis(F, Q, M, M);
    std::size_t h = basis.size();
    double combos = 1;
    for (std::size_t t = 0; t < h; ++t) {
        combos *= (double)F.q();
        if (combos > budget) throw SearchTooLarge("aut_order_enumerate", combos, budget);
    }
    Int count = 0;
    std::vector<fq_t> c(h, 0);
    while (true) {
        bool ok = true;
        for (int i = 0; ok && i < Q.n; ++i) {
            Mat fi(M.dim[(std::size_t)i], M.dim[(std::size_t)i]);
            for (std::size_t k = 0; k < h; ++k) {
                if (!c[k]) continue;
                const Mat& bk = basis[k][(std::size_t)i];
                for (std::size_t e = 0; e < fi.a.size(); ++e)
                    fi.a[e] = F.add(fi.a[e], F.mul(c[k], bk.a[e]));
            }
            if (mat_rank(F, fi) != M.dim[(std::size_t)i]) ok = false;
        }
        if (ok) ++count;
        std::size_t t = 0;
        while (t < h) {
            if (++c[t] < F.q()) break;
            c[t] = 0;
            ++t;
        }
        if (t == h) break;
    }
    return count;
}

// Registry of iso classes for arbitrary quivers.  classify() files the
// representation under cheap invariants, then confirms against stored
// representatives by honest iso_test.
class ClassRegistry {
public:
    ClassRegistry(const Fq& F, const Quiver& Q, double iso_budget = 3e6)
        : F_(F), Q_(Q), iso_budget_(iso_budget) {}

    int classify(const Rep& r) {
        std::string fp = fingerprint(r);
        auto& bucket = byfp_[fp];
        for (int id : bucket)
            if (iso_test(F_, Q_, r, reps_[(std::size_t)id], iso_budget_)) return id;
        int id = (int)reps_.size();
        reps_.push_back(r);
        bucket.push_back(id);
        return id;
    }

    IsoClass class_of(const Rep& r) {
        IsoClass c;
        c.gid = classify(r);
        c.dim = r.dim;
        return c;
    }

    const Rep& rep_of(int id) const { return reps_.at((std::size_t)id); }
    int size() const { return (int)reps_.size(); }

private:
    std::string fingerprint(const Rep& r) {
        std::string s = dim_str(r.dim) + "|";
        for (const auto& m : r.x) s += std::to_string(mat_rank(F_, m)) + ",";
        s += "|" + std::to_string(hom_dim(F_, Q_, r, r));
        return s;
    }
    const Fq& F_;
    const Quiver& Q_;
    double iso_budget_;
    std::map<std::string, std::vector<int>> byfp_;
    std::vector<Rep> reps_;
};

// All iso classes of nilpotent cyclic-quiver representations with a given
// dimension vector: enumerate segment multisets in decreasing lexicographic
// order with capacity pruning.
inline std::vector<IsoClass> cyclic_classes_with_dim(const Quiver& Q, const DimVec& d) {
    int n = Q.n;
    std::vector<IsoClass> out;
    std::vector<Segment> cur;
    int maxlen = dim_total(d);
    // Candidate segments ordered decreasing; multisets built non-increasing.
    std::vector<Segment> cands;
    for (int i = 0; i < n; ++i)
        for (int a = 1; a <= maxlen; ++a) cands.push_back({i, a});
    std::sort(cands.begin(), cands.end());
    std::reverse(cands.begin(), cands.end());
    std::vector<DimVec> cand_dim;
    for (auto& s : cands) cand_dim.push_back(segment_dim(n, s));
    std::function<void(std::size_t, DimVec)> rec = [&](std::size_t from, DimVec left) {
        if (dim_is_zero(left)) {
            out.push_back(class_from_segments(Q, cur));
            return;
        }
        for (std::size_t k = from; k < cands.size(); ++k) {
            bool fits = true;
            for (int i = 0; i < n; ++i)
                if (cand_dim[k][(std::size_t)i] > left[(std::size_t)i]) { fits = false; break; }
            if (!fits) continue;
            cur.push_back(cands[k]);
            rec(k, dim_sub(left, cand_dim[k]));
            cur.pop_back();
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ihall
