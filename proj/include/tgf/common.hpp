#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tgf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
// 50 decimal digits, about 166 bits of mantissa
using HPReal = boost::multiprecision::cpp_bin_float_50;
using HPComplex = boost::multiprecision::cpp_complex_50;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// A truncated series value with a bound on what was dropped.
template <class T>
struct Evaluated {
    T value{};
    double tail_bound = 0.0;
    std::size_t terms_used = 0;
};

using EvalResult = Evaluated<cplx>;

// ---- errors ----

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
  public:
    NonConvergence(const std::string& what, double best_residual)
        : Error(what), best_residual(best_residual) {}
    double best_residual;
};

class PrecisionExhausted : public Error {
  public:
    PrecisionExhausted(const std::string& what, std::size_t reliable_terms)
        : Error(what), reliable_terms(reliable_terms) {}
    std::size_t reliable_terms;
};

class ZeroInput : public Error {
  public:
    using Error::Error;
};

class PoleHit : public Error {
  public:
    PoleHit(const std::string& what, cplx location, std::optional<cplx> generator = {},
            std::optional<long> exponent = {})
        : Error(what), location(location), generator(generator), exponent(exponent) {}
    cplx location;
    std::optional<cplx> generator;
    std::optional<long> exponent;
};

class NaturalBoundary : public Error {
  public:
    NaturalBoundary(const std::string& what, std::vector<cplx> roots)
        : Error(what), diophantine_roots(std::move(roots)) {}
    std::vector<cplx> diophantine_roots;
};

class NotAPole : public Error {
  public:
    using Error::Error;
};
class AmbiguousGenerators : public Error {
  public:
    using Error::Error;
};
class RootOfUnityCollision : public Error {
  public:
    using Error::Error;
};
class InvalidExponent : public Error {
  public:
    using Error::Error;
};
class NonzeroMean : public Error {
  public:
    using Error::Error;
};
class PoleOfGamma : public Error {
  public:
    using Error::Error;
};
class ZeroResultant : public Error {
  public:
    ZeroResultant(const std::string& what, std::size_t m) : Error(what), m(m) {}
    std::size_t m;
};
class NoDecomposition : public Error {
  public:
    using Error::Error;
};
class OutOfScope : public Error {
  public:
    using Error::Error;
};
class NotAUnit : public Error {
  public:
    using Error::Error;
};
class UnimodularConjugate : public Error {
  public:
    using Error::Error;
};
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// ---- small numeric helpers ----

// Neumaier's variant of compensated summation.
template <class T>
class CompensatedSum {
  public:
    void add(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

  private:
    T sum_{};
    T comp_{};
};

template <class T>
class CompensatedSum<std::complex<T>> {
  public:
    void add(std::complex<T> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum<T> re_, im_;
};

// log|n| for arbitrarily large n; -inf for zero.
double log_abs(const BigInt& n);

std::string to_decimal(const BigInt& n);

inline cplx to_cplx(const HPComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace tgf
