#include "tgf/boundary.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numeric>
#include <thread>

#include "tgf/lvalues.hpp"
#include "tgf/rxcore.hpp"

namespace tgf::boundary {

namespace {

// log|1 - e^{2 pi i s}| for s in [0, 1)
double log_chord(double s) {
    const double d = std::min(s, 1.0 - s);
    const double chord = 2.0 * std::sin(kPi * d);
    return chord < 1e-300 ? 0.0 : std::log(chord);
}

cplx turn(double s) { return std::polar(1.0, kTwoPi * s); }

// e^{i pi u/v} with the angle reduced exactly first
cplx half_turn(const BigRational& m) {
    const BigInt u = numerator(m), v = denominator(m);
    BigInt r = u % (2 * v);
    if (r < 0) r += 2 * v;
    return std::polar(1.0, kPi * static_cast<double>(r) / static_cast<double>(v));
}

template <class Term>
cplx parallel_mean(std::size_t N, unsigned threads, Term term) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, N / 1000))));
    std::vector<cplx> partial(threads);
    auto work = [&](unsigned t) {
        const std::size_t lo = 1 + N * t / threads, hi = N * (t + 1) / threads;
        CompensatedSum<cplx> acc;
        for (std::size_t n = lo; n <= hi; ++n) acc.add(term(static_cast<long long>(n)));
        partial[t] = acc.value();
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    CompensatedSum<cplx> total;
    for (const auto& p : partial) total.add(p);
    return total.value() / static_cast<double>(N);
}

}  // namespace

Turns Turns::from(const HPReal& t) {
    HPReal f = t - floor(t);
    const double hi = static_cast<double>(f);
    return {hi, static_cast<double>(f - HPReal(hi))};
}

double Turns::frac_multiple(long long q) const {
    const double dq = static_cast<double>(q);
    const double p = dq * hi;
    const double e = std::fma(dq, hi, -p);
    double x = (p - std::floor(p)) + e + dq * lo;
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

double Turns::frac_multiple_over(long long q, long long d) const {
    const double dq = static_cast<double>(q), dd = static_cast<double>(d);
    const double p = dq * hi;
    const double e = std::fma(dq, hi, -p);
    const double fl = std::floor(p);
    double k = std::fmod(fl, dd);
    if (k < 0) k += dd;
    double x = (k + (p - fl) + e + dq * lo) / dd;
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

namespace {

std::vector<HPReal> unimodular_angles(const poly::IntPoly& f) {
    std::vector<HPReal> out;
    for (const auto& r : poly::classify_roots(f).roots) {
        if (r.cls != poly::RootClass::Diophantine) continue;
        HPReal a = atan2(r.hp_value.imag(), r.hp_value.real()) / (2 * boost::math::constants::pi<HPReal>());
        if (a < 0) a += 1;
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

HPReal unimodular_angle(const poly::IntPoly& f, std::size_t idx) {
    const auto a = unimodular_angles(f);
    if (idx >= a.size()) throw InvalidArgument("no unimodular root with index " + std::to_string(idx));
    return a[idx];
}

std::size_t unimodular_angle_count(const poly::IntPoly& f) { return unimodular_angles(f).size(); }

cplx ergodic_average(const AverageSpec& spec) {
    if (spec.N < 1) throw InvalidArgument("N must be positive");
    if (spec.m_den < 1) throw InvalidArgument("m_den must be positive");
    if (std::gcd(std::labs(spec.m_num), spec.m_den) != 1 && spec.m_num != 0)
        throw InvalidArgument("m_num/m_den must be in lowest terms");
    const Turns dir = spec.alpha.value_or(spec.theta);
    const Turns theta = spec.theta;
    const long a = spec.m_num, b = spec.m_den;
    const bool fractional_part = spec.convention == PhaseConvention::FractionalPart && b != 1;
    return parallel_mean(spec.N, spec.threads, [&](long long n) {
        const double l = log_chord(theta.frac_multiple(n));
        if (a == 0) return cplx(l, 0.0);
        const double phase = fractional_part ? static_cast<double>(a) / static_cast<double>(b) * dir.frac_multiple(n)
                                             : dir.frac_multiple_over(n * a, b);
        return l * turn(phase);
    });
}

cplx ergodic_average_2d(Turns theta, Turns alpha, long m, std::size_t N, unsigned threads) {
    AverageSpec spec;
    spec.theta = theta;
    spec.alpha = alpha;
    spec.m_num = m;
    spec.N = N;
    spec.threads = threads;
    return ergodic_average(spec);
}

double p_integral(long m) {
    if (m == 0) return -kPi * std::log(2.0);
    return -kPi / (2.0 * static_cast<double>(std::labs(m)));
}

double p_quadrature(long m) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    // the imaginary part vanishes by t -> pi - t
    auto f = [m](double t, double tc) {
        return std::log(std::sin(std::abs(tc))) * std::cos(2.0 * static_cast<double>(m) * t);
    };
    return integrator.integrate(f, 0.0, kPi, 1e-14);
}

double w_integral(long m) { return m == 0 ? 0.0 : -1.0 / (2.0 * static_cast<double>(std::labs(m))); }

cplx w_quadrature(double m, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto logf = [](double xc) { return std::log(2.0 * std::sin(kPi * std::abs(xc))); };
    const double re = integrator.integrate([&](double x, double xc) { return logf(xc) * std::cos(kTwoPi * m * x); },
                                           0.0, 1.0, tol);
    const double im = integrator.integrate([&](double x, double xc) { return logf(xc) * std::sin(kTwoPi * m * x); },
                                           0.0, 1.0, tol);
    return {re, im};
}

cplx w_lower_quadrature(double m, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto logf = [](double t, double tc) {
        const double near0 = t < 0.5 * kPi ? std::abs(tc) : t;
        return std::log(2.0 * std::sin(0.5 * near0));
    };
    const double re = integrator.integrate([&](double t, double tc) { return logf(t, tc) * std::cos(m * t); }, 0.0,
                                           kPi, tol);
    const double im = integrator.integrate([&](double t, double tc) { return logf(t, tc) * std::sin(m * t); }, 0.0,
                                           kPi, tol);
    return {re, im};
}

double alternating_sm(double m) {
    // terms with r + m <= 0 are summed directly, the rest is a moment sequence
    long r0 = 1;
    while (static_cast<double>(r0) + m <= 0.0) ++r0;
    CompensatedSum<double> head;
    for (long r = 1; r < r0; ++r) head.add(((r % 2) ? -1.0 : 1.0) / (static_cast<double>(r) * (static_cast<double>(r) + m)));
    // sum_{k>=0} (-1)^k a_k with a_k = 1/((k + r0)(k + r0 + m))
    constexpr int n = 40;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        const double rk = static_cast<double>(k + r0);
        s += c / (rk * (rk + m));
        b = static_cast<double>(k + n) * static_cast<double>(k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    const double sign = (r0 % 2) ? -1.0 : 1.0;
    return head.value() + sign * s / d;
}

SmValue s_m(const BigRational& m) {
    SmValue out;
    out.m = m;
    const BigInt u = numerator(m), v = denominator(m);
    if (v == 1 && u <= 0) {
        if (u < 0) throw InvalidExponent("S_m needs m outside the negative integers");
        const double pi = boost::math::constants::pi<double>();
        out.at_one = pi * pi / 6.0;
        out.at_minus_one = -pi * pi / 12.0;
        return out;
    }
    const double md = static_cast<double>(m);
    const double psi = lval::digamma_rational(static_cast<long>(u), static_cast<long>(v));
    out.at_one = (psi + 1.0 / md) / md;
    out.at_minus_one = half_turn(m) * alternating_sm(md);
    return out;
}

WParts w_fractional_parts(const BigRational& m) {
    if (m == 0) return {0.0, 0.0};
    if (m < 0) {
        const WParts p = w_fractional_parts(-m);
        return {std::conj(p.lower), std::conj(p.upper)};
    }
    const double md = static_cast<double>(m);
    const SmValue s = s_m(m);
    const cplx e = half_turn(m);
    const cplx bracket = s.at_one - s.at_minus_one - (1.0 / (2.0 * md * md)) * (1.0 - e + cplx(0.0, md * kPi));
    const cplx lower = bracket / cplx(0.0, 1.0);
    return {lower, e * e * std::conj(lower)};
}

cplx w_fractional(const BigRational& m) {
    if (denominator(m) == 1) return w_integral(static_cast<long>(numerator(m)));
    const WParts p = w_fractional_parts(m);
    return (p.lower + p.upper) / kTwoPi;
}

std::vector<double> e_stream_without_mahler(const poly::IntPoly& delta, std::size_t n_max) {
    const auto prof = poly::classify_roots(delta);
    std::vector<CompensatedSum<double>> acc(n_max);
    for (const auto& r : prof.roots) {
        if (r.value == cplx(0)) continue;
        const double mult = r.multiplicity;
        switch (r.cls) {
            case poly::RootClass::RootOfUnity:
                for (std::size_t n = 1; n <= n_max; ++n) {
                    const unsigned long k = (n * r.exponent) % r.order;
                    if (k != 0) acc[n - 1].add(mult * log_chord(static_cast<double>(k) / static_cast<double>(r.order)));
                }
                break;
            case poly::RootClass::Diophantine: {
                HPReal a = atan2(r.hp_value.imag(), r.hp_value.real()) / (2 * boost::math::constants::pi<HPReal>());
                const Turns t = Turns::from(a);
                for (std::size_t n = 1; n <= n_max; ++n)
                    acc[n - 1].add(mult * log_chord(t.frac_multiple(static_cast<long long>(n))));
                break;
            }
            default: {
                // roots outside enter through 1/beta once the Mahler slope is removed
                const cplx b = r.cls == poly::RootClass::OutsideDisc ? 1.0 / r.value : r.value;
                const double lm = std::log(std::abs(b)), ang = std::arg(b);
                for (std::size_t n = 1; n <= n_max; ++n) {
                    const double dn = static_cast<double>(n);
                    if (dn * lm < -745.0) break;
                    acc[n - 1].add(mult * rx::log_abs_one_minus(std::polar(std::exp(dn * lm), dn * ang)));
                }
            }
        }
    }
    std::vector<double> out(n_max);
    for (std::size_t i = 0; i < n_max; ++i) out[i] = acc[i].value();
    return out;
}

std::vector<double> unimodular_stream(Turns theta, std::size_t n_max) {
    std::vector<double> out(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = log_chord(theta.frac_multiple(static_cast<long long>(n)));
    return out;
}

std::size_t radial_terms_needed(RadialMode mode, std::size_t N) {
    return mode == RadialMode::Cesaro ? N : static_cast<std::size_t>(40) << 14;
}

RadialEstimate radial_limit(const std::vector<double>& stream, cplx p, RadialMode mode, std::size_t N) {
    const std::size_t need = radial_terms_needed(mode, N);
    if (stream.size() < need) throw InvalidArgument("coefficient stream shorter than " + std::to_string(need));
    const double ang = std::arg(p), mod = std::abs(p);
    RadialEstimate est;
    if (mode == RadialMode::Cesaro) {
        if (N < 4) throw InvalidArgument("Cesaro mode needs N >= 4");
        const std::size_t marks[3] = {N / 4, N / 2, N};
        double means[3][2];
        CompensatedSum<cplx> acc;
        std::size_t next = 0;
        for (std::size_t n = 1; n <= N; ++n) {
            const double dn = static_cast<double>(n);
            acc.add(stream[n - 1] * std::polar(std::pow(mod, dn), dn * ang));
            if (n == marks[next]) {
                const cplx c = acc.value() / dn;
                means[next][0] = c.real();
                means[next][1] = c.imag();
                ++next;
            }
        }
        auto mean = [&](int i) { return cplx(means[i][0], means[i][1]); };
        const cplx r1 = 2.0 * mean(2) - mean(1), r0 = 2.0 * mean(1) - mean(0);
        est.value = r1;
        est.error = std::max(std::abs(r1 - r0), std::abs(mean(2) - mean(1)));
        est.terms = N;
        return est;
    }
    std::vector<cplx> abel;
    for (int j = 8; j <= 14; ++j) {
        const double h = std::ldexp(1.0, -j), r = 1.0 - h;
        const std::size_t nj = static_cast<std::size_t>(40) << j;
        const double lr = std::log(r * mod);
        CompensatedSum<cplx> acc;
        for (std::size_t n = 1; n <= nj; ++n) {
            const double dn = static_cast<double>(n);
            acc.add(stream[n - 1] * std::polar(std::exp(dn * lr), dn * ang));
        }
        abel.push_back(h * acc.value());
    }
    const std::size_t k = abel.size();
    const cplx r1 = 2.0 * abel[k - 1] - abel[k - 2], r0 = 2.0 * abel[k - 2] - abel[k - 3];
    est.value = r1;
    est.error = std::max(std::abs(r1 - r0), std::abs(abel[k - 1] - abel[k - 2]));
    est.terms = need;
    return est;
}

}  // namespace tgf::boundary
