#pragma once

// Exp/log conversion between the two standard generating towers of a
// commuting family:
//
//     1 + sum_{m>=1} c * Theta_m u^m  =  exp( sum_{m>=1} c * H_m u^m ),
//
// where c is the scalar (v - v^{-1}) of the ambient algebra.  Both directions
// are computed by the Newton-style recursions for E(u) = exp(P(u)):
//
//     m*P_m = m*E_m - sum_{k=1}^{m-1} k*P_k*E_{m-k}        (log direction)
//     m*E_m = sum_{k=1}^{m}   k*P_k*E_{m-k}                (exp direction)
//
// These recursions are only valid when the inputs commute pairwise, so both
// functions pre-check all commutators and throw NonCommutingCoefficients
// otherwise (the conversion would silently produce garbage if skipped).
//
// Elem requirements: operator+, operator-, operator*, scaled(Rat), is_zero().
// mul_c / div_c: multiply / divide by the scalar c in the algebra.

#include <vector>

#include "ihall/errors.hpp"
#include "ihall/rational.hpp"

namespace ihall {

template <class Elem>
void require_commuting(const std::vector<Elem>& xs, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (!(xs[i] * xs[j] - xs[j] * xs[i]).is_zero())
                throw NonCommutingCoefficients(std::string(what) + ": entries " +
                                               std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                               " do not commute");
}

// Input theta[m-1] = Theta_m for m = 1..M; output h[m-1] = H_m.
template <class Elem, class CMul, class CDiv>
std::vector<Elem> h_from_theta(const std::vector<Elem>& theta, const Elem& unit, CMul mul_c,
                               CDiv div_c) {
    require_commuting(theta, "h_from_theta");
    std::size_t M = theta.size();
    std::vector<Elem> E(M + 1, unit), P(M + 1, unit), H;
    for (std::size_t m = 1; m <= M; ++m) E[m] = mul_c(theta[m - 1]);
    H.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) {
        Elem acc = E[m].scaled(Rat((long)m));
        for (std::size_t k = 1; k < m; ++k) acc = acc - (P[k] * E[m - k]).scaled(Rat((long)k));
        P[m] = acc.scaled(Rat(1, (long)m));
        H.push_back(div_c(P[m]));
    }
    return H;
}

// Input h[m-1] = H_m for m = 1..M; output theta[m-1] = Theta_m.
template <class Elem, class CMul, class CDiv>
std::vector<Elem> theta_from_h(const std::vector<Elem>& h, const Elem& unit, CMul mul_c,
                               CDiv div_c) {
    require_commuting(h, "theta_from_h");
    std::size_t M = h.size();
    std::vector<Elem> E(M + 1, unit), P(M + 1, unit), Th;
    for (std::size_t m = 1; m <= M; ++m) P[m] = mul_c(h[m - 1]);
    Th.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) {
        Elem acc = P[m];  // k = m term: m*P_m*E_0 / m
        for (std::size_t k = 1; k < m; ++k)
            acc = acc + (P[k] * E[m - k]).scaled(Rat((long)k, (long)m));
        E[m] = acc;
        Th.push_back(div_c(E[m]));
    }
    return Th;
}

} // namespace ihall
