#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tgf/common.hpp"

namespace tgf::poly {

// Integer polynomial, coefficients in ascending degree.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<long long> coeffs);

    static IntPoly monomial(BigInt c, std::size_t k);
    // "6,-13,6" means 6 - 13t + 6t^2
    static IntPoly parse(std::string_view text);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const BigInt> coeffs() const { return c_; }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const { return c_.back(); }

    BigInt eval(const BigInt& t) const;
    cplx eval(cplx t) const;
    HPComplex eval(const HPComplex& t) const;

    IntPoly derivative() const;
    BigInt content() const;
    IntPoly primitive_part() const;
    // t^deg f(1/t)
    IntPoly reversed() const;
    // largest k with t^k | f
    std::size_t low_order() const;
    IntPoly divided_by_t_power(std::size_t k) const;
    bool is_reciprocal() const;

    std::string to_string() const;
    std::string pretty() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const BigInt& s, const IntPoly& a);
    friend IntPoly operator-(const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  private:
    void trim();
    std::vector<BigInt> c_;
};

IntPoly pow(const IntPoly& f, unsigned e);
// t^r - 1
IntPoly t_power_minus_one(std::size_t r);

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
// a / b when the quotient has integer coefficients and the remainder is zero
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);
// primitive gcd with positive leading coefficient
IntPoly gcd(const IntPoly& a, const IntPoly& b);

struct SquarefreeFactor {
    IntPoly factor;
    int multiplicity;
};
// f = content * prod factor^multiplicity, factors primitive and pairwise coprime
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f);

// Sylvester determinant, standard sign: lc(f)^deg g * prod g(roots of f)
BigInt resultant_exact(const IntPoly& f, const IntPoly& g);

unsigned long euler_phi(unsigned long n);
IntPoly cyclotomic(std::size_t d);

// ---- roots ----

struct Root {
    cplx value;
    int multiplicity = 1;
};

struct HPRoot {
    HPComplex value;
    int multiplicity = 1;
};

// Aberth-Ehrlich in double, then Newton at 50 digits on the square-free parts.
std::vector<HPRoot> roots_hp(const IntPoly& f);
std::vector<Root> roots(const IntPoly& f, double precision = 1e-12);

enum class RootClass { InsideDisc, OutsideDisc, RootOfUnity, Diophantine };
enum class Provenance { ExactCyclotomic, Numeric };

struct ClassifiedRoot {
    cplx value;
    HPComplex hp_value;
    int multiplicity = 1;
    RootClass cls = RootClass::InsideDisc;
    unsigned long order = 0;     // root-of-unity order
    unsigned long exponent = 0;  // value = exp(2 pi i exponent / order)
    Provenance provenance = Provenance::Numeric;
};

struct CyclotomicFactor {
    unsigned long order;
    int multiplicity;
};

struct RootProfile {
    std::vector<ClassifiedRoot> roots;
    double leading_abs = 0.0;
    double mahler = 0.0;
    double log_mahler = 0.0;
    int degree = 0;
    std::size_t zero_power = 0;
    std::vector<CyclotomicFactor> cyclotomic_factors;

    bool has_diophantine() const;
    std::vector<cplx> diophantine_roots() const;
    bool all_roots_of_unity() const;  // ignoring roots at zero
};

inline constexpr double kCircleTolerance = 1e-9;

RootProfile classify_roots(const IntPoly& f, double eps_circle = kCircleTolerance);

// ---- continued fractions ----

struct ContinuedFraction {
    double theta = 0.0;
    std::vector<unsigned long long> partial_quotients;
    std::vector<std::pair<BigInt, BigInt>> convergents;
    bool terminated = false;
};

// Interval-tracked expansion: theta is known to within +-uncertainty.
ContinuedFraction continued_fraction(const HPReal& theta, std::size_t n, const HPReal& uncertainty);
ContinuedFraction continued_fraction(double theta, std::size_t n);
ContinuedFraction continued_fraction(const BigInt& p, const BigInt& q);

struct BadlyApproximableVerdict {
    bool bounded_by_prefix = true;
    std::size_t exceeds_at = 0;  // 1-based index of first a_n >= bound
};
BadlyApproximableVerdict badly_approximable_witness(const ContinuedFraction& cf, unsigned long long bound);

}  // namespace tgf::poly
