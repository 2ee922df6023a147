#pragma once

// Parser for the canonical element rendering produced by IHallElem::str():
//
//   elem  := "0" | term { " + " term }
//   term  := "(" <a + b*v> ")*[" <class> "]" [ "*K[" <int> { "," <int> } "]" ]
//
// Classes use the cyclic segment syntax ("0" or "t:l+t:l+...").  Registry
// labels ("g<id>") are process-local handles, not names, and are refused.
// parse ∘ render is the identity on canonical renderings; errors carry the
// byte offset into the input.

#include <string>
#include <vector>

#include "ihall/ihall.hpp"

namespace ihall {

inline IHallElem parse_elem(IHallAlgebra& A, const std::string& s) {
    if (s == "0") return A.zero();
    const Quiver& Q = A.engine().quiver();
    IHallElem out = A.zero();
    std::size_t pos = 0;
    auto fail = [&](const std::string& why, std::size_t at) { throw ParseError(why, at); };
    // Sub-parsers report offsets into their own substring; rebase them.
    auto rebase = [&](const ParseError& e, std::size_t base) {
        std::string m = e.what();
        std::string suffix = " at position " + std::to_string(e.pos);
        if (m.size() >= suffix.size() &&
            m.compare(m.size() - suffix.size(), suffix.size(), suffix) == 0)
            m.resize(m.size() - suffix.size());
        throw ParseError(m, base + e.pos);
    };
    while (true) {
        if (pos >= s.size() || s[pos] != '(') fail("expected '('", pos);
        ++pos;
        auto close = s.find(")*[", pos);
        if (close == std::string::npos) fail("unterminated coefficient (expected ')*[')", pos);
        QSqrt c;
        try {
            c = qsqrt_parse(A.q(), s.substr(pos, close - pos));
        } catch (const ParseError& e) {
            rebase(e, pos);
        }
        pos = close + 3;
        auto endcls = s.find(']', pos);
        if (endcls == std::string::npos) fail("unterminated class (expected ']')", pos);
        std::string cls_str = s.substr(pos, endcls - pos);
        if (!cls_str.empty() && cls_str[0] == 'g')
            fail("registry class label '" + cls_str + "' is process-local, not parseable", pos);
        IsoClass cls;
        try {
            cls = parse_cyclic_class(Q, cls_str);
        } catch (const ParseError& e) {
            rebase(e, pos);
        }
        pos = endcls + 1;
        DimVec alpha((std::size_t)A.rank(), 0);
        if (s.compare(pos, 3, "*K[") == 0) {
            pos += 3;
            auto endk = s.find(']', pos);
            if (endk == std::string::npos) fail("unterminated torus exponent (expected ']')", pos);
            std::string ints = s.substr(pos, endk - pos);
            std::vector<int> vals;
            std::size_t b = 0;
            while (true) {
                auto comma = ints.find(',', b);
                std::string tok = ints.substr(b, comma == std::string::npos ? comma : comma - b);
                try {
                    std::size_t used = 0;
                    vals.push_back(std::stoi(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument("");
                } catch (...) {
                    fail("bad torus exponent '" + tok + "'", pos + b);
                }
                if (comma == std::string::npos) break;
                b = comma + 1;
            }
            if ((int)vals.size() != A.rank())
                fail("torus exponent has " + std::to_string(vals.size()) +
                         " entries, ambient rank is " + std::to_string(A.rank()),
                     pos);
            for (std::size_t t = 0; t < vals.size(); ++t) alpha[t] = vals[t];
            pos = endk + 1;
        }
        out.add_term({cls, alpha}, c);
        if (pos == s.size()) break;
        if (s.compare(pos, 3, " + ") != 0) fail("expected ' + ' between terms", pos);
        pos += 3;
    }
    return out;
}

} // namespace ihall
