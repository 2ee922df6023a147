#pragma once

// Quivers (directed graphs with multiplicity), dimension vectors, and the
// Euler form.  Three families have factory constructors and a canonical
// spec-string syntax used everywhere a quiver is named (CLI flags, cache
// keys, reports):
//
//   "cn:<n>"                 cyclic quiver, vertices 0..n-1, arrows i -> i-1
//   "star:<p1,...,pt>:<in|out>"  star-shaped tree: center 0, t branches of
//                            lengths p_i - 1; "in" points arrows at the center
//   "arrows:<n>:<s>-<t>,..." explicit arrow list on n vertices
//
// The cyclic quiver with n = 1 is the single loop (Jordan quiver).

#include <algorithm>
#include <string>
#include <vector>

#include "ihall/errors.hpp"

namespace ihall {

using DimVec = std::vector<int>;

inline DimVec dim_add(const DimVec& a, const DimVec& b) {
    DimVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline DimVec dim_sub(const DimVec& a, const DimVec& b) {
    DimVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
inline DimVec dim_scale(const DimVec& a, int c) {
    DimVec r = a;
    for (auto& x : r) x *= c;
    return r;
}
inline bool dim_is_zero(const DimVec& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}
inline int dim_total(const DimVec& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}
inline DimVec unit_vec(int n, int i) {
    DimVec r((std::size_t)n, 0);
    r[(std::size_t)i] = 1;
    return r;
}
inline std::string dim_str(const DimVec& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

struct Quiver {
    int n = 0;                                 // number of vertices 0..n-1
    std::vector<std::pair<int, int>> arrows;   // (source, target)
    std::string spec;                          // canonical spec string

    int arrow_count() const { return (int)arrows.size(); }

    static Quiver cyclic(int n) {
        if (n < 1) throw std::domain_error("cyclic quiver needs n >= 1");
        Quiver q;
        q.n = n;
        for (int i = 0; i < n; ++i) q.arrows.push_back({i, (i + n - 1) % n});
        q.spec = "cn:" + std::to_string(n);
        return q;
    }

    static Quiver star(const std::vector<int>& ps, bool arrows_in) {
        Quiver q;
        q.n = 1;
        for (int p : ps) {
            if (p < 2) throw std::domain_error("star quiver branch weights must be >= 2");
            q.n += p - 1;
        }
        int off = 1;
        for (int p : ps) {
            for (int j = 1; j <= p - 1; ++j) {
                int here = off + j - 1;
                int toward_center = (j == 1) ? 0 : off + j - 2;
                if (arrows_in) q.arrows.push_back({here, toward_center});
                else q.arrows.push_back({toward_center, here});
            }
            off += p - 1;
        }
        std::string ws;
        for (std::size_t i = 0; i < ps.size(); ++i) ws += (i ? "," : "") + std::to_string(ps[i]);
        q.spec = "star:" + ws + ":" + (arrows_in ? "in" : "out");
        return q;
    }

    static Quiver from_arrows(int n, std::vector<std::pair<int, int>> as) {
        Quiver q;
        q.n = n;
        q.arrows = std::move(as);
        for (auto [s, t] : q.arrows)
            if (s < 0 || s >= n || t < 0 || t >= n)
                throw std::domain_error("arrow endpoint out of range");
        std::string al;
        for (std::size_t i = 0; i < q.arrows.size(); ++i)
            al += (i ? "," : "") + std::to_string(q.arrows[i].first) + "-" + std::to_string(q.arrows[i].second);
        q.spec = "arrows:" + std::to_string(n) + ":" + al;
        return q;
    }

    // <d, e> = sum_i d_i e_i  -  sum_{a: s->t} d_s e_t
    long euler(const DimVec& d, const DimVec& e) const {
        long r = 0;
        for (int i = 0; i < n; ++i) r += (long)d[(std::size_t)i] * e[(std::size_t)i];
        for (auto [s, t] : arrows) r -= (long)d[(std::size_t)s] * e[(std::size_t)t];
        return r;
    }
    long sym_euler(const DimVec& d, const DimVec& e) const { return euler(d, e) + euler(e, d); }

    bool is_cyclic() const {
        if ((int)arrows.size() != n) return false;
        std::vector<char> seen((std::size_t)n, 0);
        for (auto [s, t] : arrows) {
            if (t != (s + n - 1) % n) return false;
            if (seen[(std::size_t)s]) return false;
            seen[(std::size_t)s] = 1;
        }
        return true;
    }

    bool is_acyclic() const {
        std::vector<int> indeg((std::size_t)n, 0);
        for (auto [s, t] : arrows) { (void)s; indeg[(std::size_t)t]++; }
        std::vector<int> stack;
        for (int i = 0; i < n; ++i)
            if (!indeg[(std::size_t)i]) stack.push_back(i);
        int removed = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++removed;
            for (auto [s, t] : arrows)
                if (s == v && --indeg[(std::size_t)t] == 0) stack.push_back(t);
        }
        return removed == n;
    }
};

inline Quiver parse_quiver(const std::string& s) {
    auto bad = [&](const std::string& why) { return ParseError("quiver '" + s + "': " + why, 0); };
    auto split = [](const std::string& x, char sep) {
        std::vector<std::string> out;
        std::size_t b = 0;
        while (true) {
            auto e = x.find(sep, b);
            out.push_back(x.substr(b, e == std::string::npos ? e : e - b));
            if (e == std::string::npos) break;
            b = e + 1;
        }
        return out;
    };
    auto to_int = [&](const std::string& x) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(x, &pos);
            if (pos != x.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw bad("bad integer '" + x + "'");
        }
    };
    if (s.rfind("cn:", 0) == 0) return Quiver::cyclic(to_int(s.substr(3)));
    if (s.rfind("star:", 0) == 0) {
        auto parts = split(s.substr(5), ':');
        if (parts.size() != 2 || (parts[1] != "in" && parts[1] != "out")) throw bad("expected star:<p1,...>:<in|out>");
        std::vector<int> ps;
        for (auto& t : split(parts[0], ',')) ps.push_back(to_int(t));
        return Quiver::star(ps, parts[1] == "in");
    }
    if (s.rfind("arrows:", 0) == 0) {
        auto parts = split(s.substr(7), ':');
        if (parts.size() != 2) throw bad("expected arrows:<n>:<s>-<t>,...");
        int n = to_int(parts[0]);
        std::vector<std::pair<int, int>> as;
        if (!parts[1].empty())
            for (auto& t : split(parts[1], ',')) {
                auto dash = t.find('-');
                if (dash == std::string::npos) throw bad("expected <s>-<t> in '" + t + "'");
                as.push_back({to_int(t.substr(0, dash)), to_int(t.substr(dash + 1))});
            }
        return Quiver::from_arrows(n, std::move(as));
    }
    throw bad("unknown quiver kind");
}

} // namespace ihall
