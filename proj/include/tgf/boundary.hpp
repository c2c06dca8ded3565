#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tgf/common.hpp"
#include "tgf/polyalg.hpp"

// Behaviour near the unit circle when roots are unimodular but not roots of unity:
// ergodic averages of log|1 - e^{2 pi i n theta}|, the integrals they converge to,
// radial limits of coefficient streams and integer-relation detection.
namespace tgf::boundary {

// An angle in turns kept as an unevaluated sum hi + lo, so that {n theta} stays
// accurate for n in the millions.
struct Turns {
    double hi = 0;
    double lo = 0;

    static Turns from(const HPReal& t);
    static Turns from(double t) { return {t, 0.0}; }
    // fractional part of q * theta in [0, 1)
    double frac_multiple(long long q) const;
    // (q * theta mod d) / d in [0, 1)
    double frac_multiple_over(long long q, long long d) const;
};

// Angle of the idx-th root (sorted by argument in [0, 1)) of an integer polynomial,
// restricted to roots on the unit circle that are not roots of unity.
HPReal unimodular_angle(const poly::IntPoly& f, std::size_t idx);
std::size_t unimodular_angle_count(const poly::IntPoly& f);

// How e^{2 pi i m n theta} is formed for non-integer m.
//   Product:        exponential of the product m n theta
//   FractionalPart: e^{2 pi i m {n theta}}, the weight whose average is W_m
// Both agree for integer m.
enum class PhaseConvention { Product, FractionalPart };

struct AverageSpec {
    Turns theta;
    std::optional<Turns> alpha;  // independent direction for the twisted weight
    long m_num = 0;
    long m_den = 1;
    std::size_t N = 1000000;
    PhaseConvention convention = PhaseConvention::Product;
    unsigned threads = 1;
};

// (1/N) sum_{n=1}^N log|1 - e^{2 pi i n theta}| w_n with w_n the phase above,
// taken in alpha when alpha is present
cplx ergodic_average(const AverageSpec& spec);
cplx ergodic_average_2d(Turns theta, Turns alpha, long m, std::size_t N, unsigned threads = 1);

// P_m = int_0^pi log(sin t) e^{2imt} dt
double p_integral(long m);
double p_quadrature(long m);

// W_m = int_0^1 log|1 - e^{2 pi i x}| e^{2 pi i m x} dx
double w_integral(long m);
cplx w_quadrature(double m, double tol = 1e-12);

struct SmValue {
    BigRational m;
    double at_one = 0;      // sum 1/(r(r+m))
    cplx at_minus_one = 0;  // sum (1/r) e^{i pi (r+m)} / (r+m)
};
SmValue s_m(const BigRational& m);
// the alternating sum sum_{r>=1} (-1)^r / (r (r+m)) by Cohen-Villegas-Zagier acceleration
double alternating_sm(double m);

struct WParts {
    cplx lower;  // int_0^pi log|1-e^{it}| e^{imt} dt
    cplx upper;  // int_pi^{2pi}, equal to e^{2 pi i m} conj(lower)
};
WParts w_fractional_parts(const BigRational& m);
cplx w_fractional(const BigRational& m);
// int_0^pi log|1-e^{it}| e^{imt} dt by quadrature
cplx w_lower_quadrature(double m, double tol = 1e-12);

// Stream a_n = log T_n - n log M(delta), n = 1..n_max, from the float root profile.
// Terms where a root of unity has beta^n = 1 contribute 0.
std::vector<double> e_stream_without_mahler(const poly::IntPoly& delta, std::size_t n_max);
// log|1 - e^{2 pi i n theta}| for n = 1..n_max
std::vector<double> unimodular_stream(Turns theta, std::size_t n_max);

enum class RadialMode { Cesaro, Abel };
struct RadialEstimate {
    cplx value = 0;
    double error = 0;
    std::size_t terms = 0;
};
// Cesaro: (1/N) sum a_n p^n at N/4, N/2, N with a Richardson step.
// Abel: (1 - r) sum a_n (r p)^n at r = 1 - 2^-j, j = 8..14, truncated at 40/(1 - r).
// stream[i] holds a_{i+1}.
RadialEstimate radial_limit(const std::vector<double>& stream, cplx p, RadialMode mode, std::size_t N = 400000);
std::size_t radial_terms_needed(RadialMode mode, std::size_t N = 400000);

using PslqReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<128>>;

struct Dependence {
    bool found = false;                 // false means independent at this precision
    std::vector<BigInt> relation;       // coefficients of (1, angles..., target)
    PslqReal residual = 0;
    PslqReal norm_bound = 0;            // no relation of smaller norm exists when !found
};
// Integer relation among (1, angles..., target) by PSLQ. A relation is reported only
// after its residual is below 10^-(bits/4).
Dependence multiplicative_dependence(const std::vector<PslqReal>& angles, const PslqReal& target,
                                     unsigned precision_bits = 256);
std::string describe(const Dependence& d);

}  // namespace tgf::boundary
