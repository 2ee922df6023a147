#pragma once

// Finite-dimensional quiver representations over F_q and the exact homological
// algebra on them.  For a path algebra the complex
//
//   0 -> Hom(M,N) -> ⊕_i Hom_k(M_i,N_i) --delta--> ⊕_{a:s->t} Hom_k(M_s,N_t) -> Ext^1(M,N) -> 0
//
// with delta(f)_a = f_t X^M_a - X^N_a f_s computes both Hom and Ext^1, and a
// linear complement of im(delta) gives one cocycle representative per
// extension class; the class of the cocycle xi is the middle term
// L_i = N_i ⊕ M_i with X^L = [[X^N, xi],[0, X^M]].   Everything downstream
// (Hall numbers, censuses) reduces to these primitives.

#include <random>
#include <vector>

#include "ihall/matrix.hpp"
#include "ihall/quiver.hpp"
#include "ihall/subspaces.hpp"

namespace ihall {

struct Rep {
    DimVec dim;           // per-vertex dimensions
    std::vector<Mat> x;   // one matrix per quiver arrow a: s->t, shape dim[t] x dim[s]

    int total() const { return dim_total(dim); }
    friend bool operator==(const Rep& a, const Rep& b) { return a.dim == b.dim && a.x == b.x; }
};

inline Rep zero_rep(const Quiver& Q) {
    Rep r;
    r.dim.assign((std::size_t)Q.n, 0);
    for (auto [s, t] : Q.arrows) { (void)s; (void)t; r.x.push_back(Mat(0, 0)); }
    return r;
}

// Segment (top, len) on the cyclic quiver: uniserial with top S_top,
// composition series S_top, S_{top-1}, ..., basis vector e_u at vertex
// (top - u) mod n, arrows acting e_u -> e_{u+1}.
using Segment = std::pair<int, int>;

inline DimVec segment_dim(int n, const Segment& s) {
    DimVec d((std::size_t)n, 0);
    for (int u = 0; u < s.second; ++u) d[(std::size_t)(((s.first - u) % n + n) % n)]++;
    return d;
}

inline Rep rep_from_segments(const Quiver& Q, const std::vector<Segment>& segs) {
    if (!Q.is_cyclic()) throw std::logic_error("rep_from_segments: cyclic quiver only");
    int n = Q.n;
    Rep r;
    r.dim.assign((std::size_t)n, 0);
    // Assign basis slots: (segment index, position) -> index within its vertex.
    std::vector<std::vector<int>> slot;
    for (const auto& s : segs) {
        std::vector<int> sl((std::size_t)s.second);
        for (int u = 0; u < s.second; ++u) {
            int v = ((s.first - u) % n + n) % n;
            sl[(std::size_t)u] = r.dim[(std::size_t)v]++;
        }
        slot.push_back(std::move(sl));
    }
    for (auto [src, tgt] : Q.arrows) {
        Mat m(r.dim[(std::size_t)tgt], r.dim[(std::size_t)src]);
        for (std::size_t k = 0; k < segs.size(); ++k) {
            const auto& s = segs[k];
            for (int u = 0; u + 1 < s.second; ++u) {
                int v = ((s.first - u) % n + n) % n;
                if (v == src) m.at(slot[k][(std::size_t)(u + 1)], slot[k][(std::size_t)u]) = 1;
            }
        }
        r.x.push_back(std::move(m));
    }
    return r;
}

inline Rep direct_sum(const Quiver& Q, const Rep& A, const Rep& B) {
    Rep r;
    r.dim = dim_add(A.dim, B.dim);
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        Mat m(r.dim[(std::size_t)t], r.dim[(std::size_t)s]);
        const Mat& xa = A.x[(std::size_t)a];
        const Mat& xb = B.x[(std::size_t)a];
        for (int i = 0; i < xa.r; ++i)
            for (int j = 0; j < xa.c; ++j) m.at(i, j) = xa.at(i, j);
        for (int i = 0; i < xb.r; ++i)
            for (int j = 0; j < xb.c; ++j) m.at(xa.r + i, xa.c + j) = xb.at(i, j);
        r.x.push_back(std::move(m));
    }
    return r;
}

// Relabel vertices i -> (i + shift) mod n on a cyclic quiver.
inline Rep shift_vertices(const Quiver& Q, const Rep& rep, int shift) {
    if (!Q.is_cyclic()) throw std::logic_error("shift_vertices: cyclic quiver only");
    int n = Q.n;
    auto sh = [&](int i) { return ((i + shift) % n + n) % n; };
    Rep r;
    r.dim.assign((std::size_t)n, 0);
    for (int i = 0; i < n; ++i) r.dim[(std::size_t)sh(i)] = rep.dim[(std::size_t)i];
    r.x.assign((std::size_t)n, Mat());
    for (int a = 0; a < Q.arrow_count(); ++a) {
        int src = Q.arrows[(std::size_t)a].first;               // arrow src -> src-1
        // The image arrow starts at sh(src); arrows are indexed by source.
        r.x[(std::size_t)sh(src)] = rep.x[(std::size_t)a];
    }
    return r;
}

// Nilpotency: all composites along directed cycles eventually vanish.  On an
// acyclic quiver this is automatic; otherwise the total endomorphism
// T = sum_a X_a of ⊕_i M_i satisfies T^dim = 0 iff the representation is
// nilpotent (on the cyclic quiver the blocks of T^len are the single length-len
// path composites, so no cancellation can hide a nonzero composite).
inline bool is_nilpotent(const Fq& F, const Quiver& Q, const Rep& M) {
    if (Q.is_acyclic()) return true;
    int D = M.total();
    if (D == 0) return true;
    std::vector<int> off((std::size_t)Q.n + 1, 0);
    for (int i = 0; i < Q.n; ++i) off[(std::size_t)i + 1] = off[(std::size_t)i] + M.dim[(std::size_t)i];
    Mat T(D, D);
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        const Mat& X = M.x[(std::size_t)a];
        for (int i = 0; i < X.r; ++i)
            for (int j = 0; j < X.c; ++j)
                if (X.at(i, j)) T.at(off[(std::size_t)t] + i, off[(std::size_t)s] + j) = X.at(i, j);
    }
    Mat P = T;
    for (int k = 1; k < D; ++k) P = mat_mul(F, P, T);  // P = T^D
    return P.is_zero();
}

// ----- the delta complex -----

struct DeltaLayout {
    std::vector<int> unk_off;     // per-vertex offset into the unknown vector
    int unk_dim = 0;              // sum_i m_i n_i
    std::vector<int> arrow_off;   // per-arrow offset into the target vector
    int target_dim = 0;           // sum_a m_s n_t
};

inline DeltaLayout delta_layout(const Quiver& Q, const Rep& M, const Rep& N) {
    DeltaLayout L;
    for (int i = 0; i < Q.n; ++i) {
        L.unk_off.push_back(L.unk_dim);
        L.unk_dim += M.dim[(std::size_t)i] * N.dim[(std::size_t)i];
    }
    for (auto [s, t] : Q.arrows) {
        L.arrow_off.push_back(L.target_dim);
        L.target_dim += M.dim[(std::size_t)s] * N.dim[(std::size_t)t];
    }
    return L;
}

// Matrix of delta: rows = target coordinates, columns = unknown coordinates.
// f_i is an N_i x M_i matrix stored row-major in the unknown vector.
inline Mat delta_matrix(const Fq& F, const Quiver& Q, const Rep& M, const Rep& N,
                        const DeltaLayout& L) {
    Mat D(L.target_dim, L.unk_dim);
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        int ms = M.dim[(std::size_t)s], nt = N.dim[(std::size_t)t];
        const Mat& XM = M.x[(std::size_t)a];  // m_t x m_s
        const Mat& XN = N.x[(std::size_t)a];  // n_t x n_s
        for (int u = 0; u < nt; ++u)
            for (int v = 0; v < ms; ++v) {
                int row = L.arrow_off[(std::size_t)a] + u * ms + v;
                // + (f_t)_{u,w} * XM_{w,v}
                for (int w = 0; w < M.dim[(std::size_t)t]; ++w)
                    if (fq_t c = XM.at(w, v)) {
                        int col = L.unk_off[(std::size_t)t] + u * M.dim[(std::size_t)t] + w;
                        D.at(row, col) = F.add(D.at(row, col), c);
                    }
                // - XN_{u,w} * (f_s)_{w,v}
                for (int w = 0; w < N.dim[(std::size_t)s]; ++w)
                    if (fq_t c = XN.at(u, w)) {
                        int col = L.unk_off[(std::size_t)s] + w * M.dim[(std::size_t)s] + v;
                        D.at(row, col) = F.sub(D.at(row, col), c);
                    }
            }
    }
    return D;
}

struct HomExt {
    int hom = 0;
    int ext = 0;
};

inline HomExt hom_ext_dims(const Fq& F, const Quiver& Q, const Rep& M, const Rep& N) {
    DeltaLayout L = delta_layout(Q, M, N);
    int r = mat_rank(F, delta_matrix(F, Q, M, N, L));
    return {L.unk_dim - r, L.target_dim - r};
}

inline int hom_dim(const Fq& F, const Quiver& Q, const Rep& M, const Rep& N) {
    return hom_ext_dims(F, Q, M, N).hom;
}

// Basis of Hom(M, N): per basis element, one N_i x M_i matrix per vertex.
inline std::vector<std::vector<Mat>> hom_basis(const Fq& F, const Quiver& Q, const Rep& M,
                                               const Rep& N) {
    DeltaLayout L = delta_layout(Q, M, N);
    Mat ker = kernel_basis(F, delta_matrix(F, Q, M, N, L));
    std::vector<std::vector<Mat>> out;
    for (int b = 0; b < ker.r; ++b) {
        std::vector<Mat> f;
        for (int i = 0; i < Q.n; ++i) {
            Mat fi(N.dim[(std::size_t)i], M.dim[(std::size_t)i]);
            for (int u = 0; u < fi.r; ++u)
                for (int v = 0; v < fi.c; ++v)
                    fi.at(u, v) = ker.at(b, L.unk_off[(std::size_t)i] + u * fi.c + v);
            f.push_back(std::move(fi));
        }
        out.push_back(std::move(f));
    }
    return out;
}

// Extension-enumeration data: coordinates of a linear complement of im(delta)
// inside the target space.  Setting arbitrary values on free_coords (zero
// elsewhere) walks exactly one cocycle per Ext^1 class.
struct ExtProblem {
    DeltaLayout layout;
    int hom = 0, ext = 0;
    std::vector<int> free_coords;
};

inline ExtProblem ext_problem(const Fq& F, const Quiver& Q, const Rep& M, const Rep& N) {
    ExtProblem P;
    P.layout = delta_layout(Q, M, N);
    Mat D = delta_matrix(F, Q, M, N, P.layout);
    Rref colspace = rref(F, mat_transpose(D));  // row space of D^T = im(delta)
    int r = (int)colspace.pivots.size();
    P.hom = P.layout.unk_dim - r;
    P.ext = P.layout.target_dim - r;
    std::vector<char> is_piv((std::size_t)P.layout.target_dim, 0);
    for (int p : colspace.pivots) is_piv[(std::size_t)p] = 1;
    for (int j = 0; j < P.layout.target_dim; ++j)
        if (!is_piv[(std::size_t)j]) P.free_coords.push_back(j);
    return P;
}

// Middle term of the extension with cocycle xi (a full target vector):
//  L_i = N_i ⊕ M_i,  X^L_a = [[X^N_a, xi_a], [0, X^M_a]].
inline Rep extension_rep(const Quiver& Q, const Rep& M, const Rep& N, const DeltaLayout& L,
                         const std::vector<fq_t>& xi) {
    Rep r;
    r.dim = dim_add(N.dim, M.dim);
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        int ms = M.dim[(std::size_t)s], ns = N.dim[(std::size_t)s], nt = N.dim[(std::size_t)t];
        Mat m(r.dim[(std::size_t)t], r.dim[(std::size_t)s]);
        const Mat& XN = N.x[(std::size_t)a];
        const Mat& XM = M.x[(std::size_t)a];
        for (int i = 0; i < XN.r; ++i)
            for (int j = 0; j < XN.c; ++j) m.at(i, j) = XN.at(i, j);
        for (int i = 0; i < XM.r; ++i)
            for (int j = 0; j < XM.c; ++j) m.at(nt + i, ns + j) = XM.at(i, j);
        for (int u = 0; u < nt; ++u)
            for (int v = 0; v < ms; ++v)
                m.at(u, ns + v) = xi[(std::size_t)(L.arrow_off[(std::size_t)a] + u * ms + v)];
        r.x.push_back(std::move(m));
    }
    return r;
}

// ----- sub- and quotient representations along per-vertex row spaces -----

// Induced representation on the subspaces rows[i] ⊆ M_i (must be closed under
// all arrow maps; throws logic_error otherwise).
inline Rep subrep_from_rowspaces(const Fq& F, const Quiver& Q, const Rep& M,
                                 const std::vector<Rref>& rows) {
    Rep r;
    for (int i = 0; i < Q.n; ++i) r.dim.push_back(rows[(std::size_t)i].m.r);
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        const Rref& Bs = rows[(std::size_t)s];
        const Rref& Bt = rows[(std::size_t)t];
        Mat m(Bt.m.r, Bs.m.r);
        for (int b = 0; b < Bs.m.r; ++b) {
            std::vector<fq_t> u(Bs.m.a.begin() + b * Bs.m.c, Bs.m.a.begin() + (b + 1) * Bs.m.c);
            std::vector<fq_t> w = mat_vec(F, M.x[(std::size_t)a], u);
            // Coordinates in the rref basis of the target: pivot entries.
            for (int i2 = 0; i2 < Bt.m.r; ++i2) m.at(i2, b) = w[(std::size_t)Bt.pivots[(std::size_t)i2]];
            auto rem = reduce_against(F, Bt.m, Bt.pivots, w);
            for (fq_t z : rem)
                if (z) throw std::logic_error("subrep_from_rowspaces: subspaces not arrow-closed");
        }
        r.x.push_back(std::move(m));
    }
    return r;
}

// Induced representation on the quotients M_i / rows[i] (same closedness
// requirement).  Quotient basis: images of the unit vectors at non-pivot
// coordinates.
inline Rep quotient_rep(const Fq& F, const Quiver& Q, const Rep& M, const std::vector<Rref>& rows) {
    std::vector<std::vector<int>> freec((std::size_t)Q.n);
    for (int i = 0; i < Q.n; ++i) {
        std::vector<char> is_piv((std::size_t)M.dim[(std::size_t)i], 0);
        for (int p : rows[(std::size_t)i].pivots) is_piv[(std::size_t)p] = 1;
        for (int j = 0; j < M.dim[(std::size_t)i]; ++j)
            if (!is_piv[(std::size_t)j]) freec[(std::size_t)i].push_back(j);
    }
    Rep r;
    for (int i = 0; i < Q.n; ++i) r.dim.push_back((int)freec[(std::size_t)i].size());
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        Mat m((int)freec[(std::size_t)t].size(), (int)freec[(std::size_t)s].size());
        for (int b = 0; b < (int)freec[(std::size_t)s].size(); ++b) {
            std::vector<fq_t> u((std::size_t)M.dim[(std::size_t)s], 0);
            u[(std::size_t)freec[(std::size_t)s][(std::size_t)b]] = 1;
            std::vector<fq_t> w = mat_vec(F, M.x[(std::size_t)a], u);
            auto rem = reduce_against(F, rows[(std::size_t)t].m, rows[(std::size_t)t].pivots, w);
            for (int i2 = 0; i2 < (int)freec[(std::size_t)t].size(); ++i2)
                m.at(i2, b) = rem[(std::size_t)freec[(std::size_t)t][(std::size_t)i2]];
        }
        r.x.push_back(std::move(m));
    }
    return r;
}

// Kernel and cokernel of a homomorphism f = (f_i): M -> N, as representations.
inline Rep kernel_rep(const Fq& F, const Quiver& Q, const Rep& M, const std::vector<Mat>& f) {
    std::vector<Rref> rows;
    for (int i = 0; i < Q.n; ++i) rows.push_back(rref(F, kernel_basis(F, f[(std::size_t)i])));
    return subrep_from_rowspaces(F, Q, M, rows);
}

inline Rep cokernel_rep(const Fq& F, const Quiver& Q, const Rep& N, const std::vector<Mat>& f) {
    std::vector<Rref> rows;
    for (int i = 0; i < Q.n; ++i) {
        // Row space of f_i^T = image of f_i as row vectors.
        rows.push_back(rref(F, mat_transpose(f[(std::size_t)i])));
    }
    return quotient_rep(F, Q, N, rows);
}

// Conjugate by random per-vertex basis changes (isomorphic representation).
inline Rep rep_conjugate(const Fq& F, const Quiver& Q, const Rep& M, std::mt19937& rng) {
    std::vector<Mat> g, ginv;
    for (int i = 0; i < Q.n; ++i) {
        int d = M.dim[(std::size_t)i];
        while (true) {
            Mat m(d, d);
            for (auto& v : m.a) v = (fq_t)(rng() % (unsigned long)F.q());
            if (auto inv = mat_inverse(F, m)) { g.push_back(m); ginv.push_back(*inv); break; }
        }
    }
    Rep r;
    r.dim = M.dim;
    for (int a = 0; a < Q.arrow_count(); ++a) {
        auto [s, t] = Q.arrows[(std::size_t)a];
        r.x.push_back(mat_mul(F, g[(std::size_t)t], mat_mul(F, M.x[(std::size_t)a], ginv[(std::size_t)s])));
    }
    return r;
}

} // namespace ihall
