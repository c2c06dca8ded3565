#pragma once

#include <optional>

#include "tgf/common.hpp"
#include "tgf/polyalg.hpp"
#include "tgf/rxcore.hpp"

// Meromorphic continuation of R_x beyond the unit disc.
//
// For |x| < 1 and w = -Log z,
//   Q_x(w) = sum log(1 - x^n) e^{-wn}
//          = 1/2 log(1 - x) e^{-w} + A(w) + i (M+(w) - M-(w)) + T+(w) + T-(w)
// and R_x(z) = (Q_x(w) + Q_conj(x)(w)) / 2.
namespace tgf::cont {

enum class Sign { Plus = 1, Minus = -1 };

struct ContinuationParams {
    double K = 0.0;  // 0 selects choose_K, capped at 1
    double tail_tol = 1e-10;
    std::size_t max_terms = 100000;
    bool principal_log = true;
};

double choose_K(cplx x);

EvalResult a_tilde(cplx x, cplx w, const ContinuationParams& p = {});

// Single-sign series at a positive lower endpoint delta.
EvalResult m_tilde(cplx x, Sign s, double K, cplx w, double delta, const ContinuationParams& p = {});
// i (M+ - M-) at delta = 0, paired termwise so the endpoint parts converge.
EvalResult m_tilde_difference(cplx x, double K, cplx w, const ContinuationParams& p = {});

EvalResult t_tilde(cplx x, Sign s, double K, cplx w, const ContinuationParams& p = {});

EvalResult q_continuation(cplx x, cplx w, const ContinuationParams& p = {});

EvalResult rx_continued(cplx x, cplx z, const ContinuationParams& p = {});
EvalResult rx_continued(rx::RootOfUnity x, cplx z);

// If |x| = 1 within tolerance and x^m = 1 for some m <= 1000, its order data.
std::optional<rx::RootOfUnity> detect_root_of_unity(cplx x, double tol = 1e-12);

struct AbelPlanaTerms {
    cplx lhs;
    cplx rhs;
    double residual;
};

// Finite-box Abel-Plana identity for h(s) = log(1 - x^s) e^{-ws} on [a,b] x i[-K,K].
AbelPlanaTerms abel_plana_terms(cplx x, cplx w, int a, int b, double K);
double abel_plana_check(cplx x, cplx w, int a, int b, double K);

}  // namespace tgf::cont
