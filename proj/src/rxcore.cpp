#include "tgf/rxcore.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace tgf::rx {

namespace {

cplx power(cplx x, unsigned long r) {
    return std::polar(std::pow(std::abs(x), static_cast<double>(r)), static_cast<double>(r) * std::arg(x));
}

void check_root_of_unity(RootOfUnity x) {
    if (x.order == 0) throw InvalidArgument("root of unity order must be positive");
    if (std::gcd(x.exponent % x.order, x.order) != 1 && x.order != 1)
        throw InvalidArgument("root of unity exponent must be coprime to its order");
}

}  // namespace

double log_abs_one_minus(cplx y) {
    // |1 - y|^2 = 1 - 2 Re y + |y|^2
    double a = std::abs(y);
    if (a < 0.5) return 0.5 * std::log1p(-2.0 * y.real() + a * a);
    return std::log(std::abs(1.0 - y));
}

double log_abs_one_minus_power(cplx x, unsigned long r) {
    const double ax = std::abs(x);
    if (ax > 1.0) {
        // log|1 - y| = log|y| + log|1 - 1/y| keeps large powers finite
        const double dr = static_cast<double>(r);
        return dr * std::log(ax) + log_abs_one_minus(std::polar(std::pow(ax, -dr), -dr * std::arg(x)));
    }
    return log_abs_one_minus(power(x, r));
}

double log_abs_one_minus_power(RootOfUnity x, unsigned long r) {
    unsigned long j = (x.exponent % x.order) * (r % x.order) % x.order;
    if (j == 0) return -std::numeric_limits<double>::infinity();
    // |1 - e^{2 pi i j/m}| = 2 sin(pi j/m)
    return std::log(2.0 * std::sin(kPi * static_cast<double>(j) / static_cast<double>(x.order)));
}

EvalResult rx_series(cplx x, cplx z, std::size_t n_terms) {
    if (x == cplx(0)) throw ZeroInput("R_x needs x != 0");
    CompensatedSum<cplx> acc;
    cplx zr = 1;
    for (std::size_t r = 1; r <= n_terms; ++r) {
        zr *= z;
        cplx xr = power(x, r);
        if (std::abs(xr - 1.0) < kSkipTolerance) continue;
        acc.add(log_abs_one_minus_power(x, r) * zr);
    }
    EvalResult out{acc.value(), 0.0, n_terms};
    const double q = std::abs(z);
    const double ax = std::abs(x);
    const double n1 = static_cast<double>(n_terms + 1);
    if (q >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    } else if (ax < 1.0) {
        // |log|1 - y|| <= |y|/(1 - |y|)
        out.tail_bound = std::pow(ax * q, n1) / ((1.0 - ax * q) * (1.0 - ax));
    } else if (ax > 1.0) {
        const double lg = std::log(ax), c = 1.0 / (ax - 1.0);
        double geo = std::pow(q, n1) / (1.0 - q);
        double lin = std::pow(q, n1) * (n1 - (n1 - 1.0) * q) / ((1.0 - q) * (1.0 - q));
        out.tail_bound = lg * lin + c * geo;
    } else {
        // unimodular: assumes |log|1 - x^r|| <= log 2 + 2 log r
        double qn = std::pow(q, n1);
        out.tail_bound = qn * ((std::log(2.0) + 2.0 * std::log(n1)) / (1.0 - q) + 2.0 * q / (n1 * (1.0 - q) * (1.0 - q)));
    }
    return out;
}

EvalResult rx_series(RootOfUnity x, cplx z, std::size_t n_terms) {
    check_root_of_unity(x);
    CompensatedSum<cplx> acc;
    cplx zr = 1;
    for (std::size_t r = 1; r <= n_terms; ++r) {
        zr *= z;
        double a = log_abs_one_minus_power(x, r);
        if (std::isinf(a)) continue;
        acc.add(a * zr);
    }
    EvalResult out{acc.value(), 0.0, n_terms};
    const double q = std::abs(z);
    if (q >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        double amax = 0;
        for (unsigned long l = 1; l < x.order; ++l)
            amax = std::max(amax, std::abs(log_abs_one_minus_power(RootOfUnity{x.order, 1}, l)));
        out.tail_bound = amax * std::pow(q, static_cast<double>(n_terms + 1)) / (1.0 - q);
    }
    return out;
}

cplx RationalFormRx::eval(cplx z) const {
    if (order == 1) return 0.0;
    // nearest m-th root of unity
    double turns = std::arg(z) / kTwoPi * static_cast<double>(order);
    cplx nearest = std::polar(1.0, kTwoPi * std::round(turns) / static_cast<double>(order));
    if (std::abs(z - nearest) < 1e-12) throw PoleHit("R_x pole at a root of unity", nearest);
    cplx num = 0, zl = 1;
    for (unsigned long l = 1; l < order; ++l) {
        zl *= z;
        num += numerator[l] * zl;
    }
    cplx zm = zl * z;
    return num / (1.0 - zm);
}

cplx RationalFormRx::residue(cplx p) const {
    // 1 - z^m ~ -m p^{m-1} (z - p) = -(m/p)(z - p)
    cplx s = 0, pl = 1;
    for (unsigned long l = 1; l < order; ++l) {
        pl *= p;
        s += numerator[l] * pl;
    }
    return -p * s / static_cast<double>(order);
}

double RationalFormRx::series_coefficient(unsigned long r) const {
    if (order == 1) return 0.0;
    unsigned long l = r % order;
    return l == 0 ? 0.0 : numerator[l];
}

RationalFormRx rational_form(RootOfUnity x) {
    check_root_of_unity(x);
    RationalFormRx f;
    f.order = x.order;
    f.numerator.assign(x.order, 0.0);
    for (unsigned long l = 1; l < x.order; ++l) f.numerator[l] = log_abs_one_minus_power(x, l);
    return f;
}

EvalResult rx_root_of_unity(RootOfUnity x, cplx z) {
    RationalFormRx f = rational_form(x);
    return {f.eval(z), 0.0, x.order};
}

LaurentAtOne rx_laurent_at_one_rootofunity(unsigned long m) {
    if (m < 2) throw InvalidArgument("R_x at x = 1 is the zero function and has no pole");
    const double dm = static_cast<double>(m);
    const double lm = std::log(1.0 / dm);
    double weighted = 0;
    for (unsigned long l = 1; l < m; ++l)
        weighted += static_cast<double>(l) * log_abs_one_minus_power(RootOfUnity{m, 1}, l);
    return {lm / dm, -((dm - 1.0) / 2.0) * lm / dm - weighted / dm};
}

Inversion rx_invert_decompose(cplx x) {
    if (!(std::abs(x) > 1.0)) throw InvalidArgument("inversion needs |x| > 1");
    return {1.0 / x, std::log(std::abs(x))};
}

Evaluated<double> log_abs_F(cplx x) {
    const double ax = std::abs(x);
    if (!(ax < 1.0)) throw InvalidArgument("log|F(x)| needs |x| < 1");
    if (ax == 0.0) return {0.0, 0.0, 0};
    CompensatedSum<double> acc;
    std::size_t n = 0;
    double bound = 1.0;
    while (true) {
        ++n;
        acc.add(-log_abs_one_minus_power(x, n));
        double next = std::pow(ax, static_cast<double>(n + 1));
        bound = next / ((1.0 - ax) * (1.0 - next));
        if (bound < 1e-18 || n > 1000000) break;
    }
    return {acc.value(), bound, n};
}

std::vector<Evaluated<double>> rx_expansion_at_one(cplx x, std::size_t max_order) {
    const double ax = std::abs(x);
    if (!(ax < 1.0)) throw InvalidArgument("expansion at z = 1 needs |x| < 1");
    std::vector<Evaluated<double>> out;
    for (std::size_t j = 0; j <= max_order; ++j) {
        if (ax == 0.0) {
            out.push_back({0.0, 0.0, 0});
            continue;
        }
        CompensatedSum<double> acc;
        double binom = (j == 0) ? 1.0 : 0.0;  // binom(r, j) at r = 0
        std::size_t r = 0;
        double tail = 0;
        while (true) {
            ++r;
            binom = (r == j) ? 1.0 : (r < j ? 0.0 : binom * static_cast<double>(r) / static_cast<double>(r - j));
            if (binom != 0.0) acc.add(log_abs_one_minus_power(x, r) * binom);
            // majorant terms |x|^r binom(r, j)/(1 - |x|) have ratio |x|(r+1)/(r+1-j)
            if (r > j) {
                double ratio = ax * static_cast<double>(r + 1) / static_cast<double>(r + 1 - j);
                double next = std::pow(ax, static_cast<double>(r + 1)) * binom * static_cast<double>(r + 1) /
                              static_cast<double>(r + 1 - j) / (1.0 - ax);
                if (ratio < 1.0) {
                    tail = next / (1.0 - ratio);
                    if (tail < 1e-17 * std::max(1.0, std::abs(acc.value()))) break;
                }
            }
            if (r > 10000000) break;
        }
        out.push_back({acc.value(), tail, r});
    }
    return out;
}

}  // namespace tgf::rx
