#pragma once

#include <vector>

#include "tgf/common.hpp"

// R_x(z) = sum over r >= 1 of log|1 - x^r| z^r, skipping r with x^r = 1.
namespace tgf::rx {

// x = exp(2 pi i exponent / order), exponent coprime to order
struct RootOfUnity {
    unsigned long order = 1;
    unsigned long exponent = 0;
};

// log|1 - y| accurate for small |y|
double log_abs_one_minus(cplx y);

// log|1 - x^r|, with x^r formed as |x|^r exp(i r arg x)
double log_abs_one_minus_power(cplx x, unsigned long r);
double log_abs_one_minus_power(RootOfUnity x, unsigned long r);

inline constexpr double kSkipTolerance = 1e-13;

EvalResult rx_series(cplx x, cplx z, std::size_t n_terms);
EvalResult rx_series(RootOfUnity x, cplx z, std::size_t n_terms);

// sum over l = 1..m-1 of numerator[l] z^l / (1 - z^m)
struct RationalFormRx {
    unsigned long order = 1;
    std::vector<double> numerator;  // index l, entry 0 unused

    cplx eval(cplx z) const;
    // residue at p with p^order = 1
    cplx residue(cplx p) const;
    // coefficient of z^r in the power series at 0
    double series_coefficient(unsigned long r) const;
};

RationalFormRx rational_form(RootOfUnity x);
EvalResult rx_root_of_unity(RootOfUnity x, cplx z);

struct LaurentAtOne {
    double residue;
    double constant;
};
// Laurent data at z = 1 for a primitive root of unity of order m >= 2
LaurentAtOne rx_laurent_at_one_rootofunity(unsigned long m);

struct Inversion {
    cplx x_inv;
    double double_pole_weight;  // log|x|, coefficient of z/(z-1)^2
};
Inversion rx_invert_decompose(cplx x);

// log|F(x)| for the partition function F(x) = prod (1 - x^n)^-1
Evaluated<double> log_abs_F(cplx x);

// Taylor coefficients of R_x about z = 1, for |x| < 1
std::vector<Evaluated<double>> rx_expansion_at_one(cplx x, std::size_t max_order);

}  // namespace tgf::rx
