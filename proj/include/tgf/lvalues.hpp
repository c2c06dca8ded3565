#pragma once

#include <vector>

#include "tgf/common.hpp"

// Dirichlet characters, periodic functions on Z/m and their L-values at s = 1.
namespace tgf::lval {

// (Z/m)^x as a product of cyclic groups. A character is stored by the exponents
// it assigns to the generators: chi(g_i) = exp(2 pi i e_i / ord_i).
struct CharacterTable {
    unsigned long modulus = 1;
    std::vector<unsigned long> generators;
    std::vector<unsigned long> orders;
    std::vector<std::vector<unsigned long>> exponents;  // one row per character
    std::size_t principal_index = 0;

    std::size_t size() const { return exponents.size(); }
    cplx value(std::size_t chi, unsigned long a) const;
    // coordinates of a unit in terms of the generators
    std::vector<unsigned long> discrete_log(unsigned long a) const;

    std::vector<std::vector<unsigned long>> logs;  // indexed by residue, empty for non-units
};

CharacterTable characters(unsigned long m);

struct PeriodicFn {
    unsigned long modulus = 1;
    std::vector<cplx> values;   // f(0..m-1)
    std::vector<cplx> fourier;  // fhat(n) = (1/m) sum f(l) e^{-2 pi i l n / m}

    cplx at(long n) const;
    std::vector<cplx> inverse() const;
};

PeriodicFn make_periodic(std::vector<cplx> values);
PeriodicFn from_fourier(std::vector<cplx> fourier);
PeriodicFn character_fn(const CharacterTable& table, std::size_t chi);

// L(1, f) = -sum_{l=1}^{m-1} fhat(l) log(1 - zeta_m^l), principal log
cplx l_one_periodic(const PeriodicFn& f);
// sum f(n)/n over whole periods up to n = periods * m, plus an asymptotic tail in 1/n
Evaluated<cplx> l_one_series(const PeriodicFn& f, std::size_t periods = 20000);

// log|1 - zeta_m^l| as -(1/2) L(1, f + conj f) with fhat = delta_l
double log_abs_from_lvalues(unsigned long m, unsigned long l);

inline constexpr std::size_t kDigammaTerms = 1000000;
// psi(u/v) + Euler's constant
double digamma_rational(long u, long v, std::size_t terms = kDigammaTerms);

}  // namespace tgf::lval
