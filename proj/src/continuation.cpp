#include "tgf/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tgf::cont {

namespace {

constexpr double kPoleDistance = 1e-12;
constexpr double kSwitch = 1e-8;
const cplx I(0.0, 1.0);

void require_inside(cplx x) {
    const double ax = std::abs(x);
    if (!(ax > 0.0 && ax < 1.0)) throw InvalidArgument("continuation series need 0 < |x| < 1");
}

double effective_K(cplx x, const ContinuationParams& p) { return p.K > 0 ? p.K : std::min(choose_K(x), 1.0); }

cplx expm1(cplx z) {
    const double a = z.real(), b = z.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// (e^{dK} - 1)/d, continuous through d = 0
cplx endpoint_difference(cplx d, double K) {
    if (std::abs(d) < kSwitch) return K + 0.5 * d * K * K;
    return expm1(d * K) / d;
}

// sum over n > N of 1/(n^2 + a^2) by Euler-Maclaurin, N >= 2|a| + 10
cplx inverse_square_tail(cplx a, double N) {
    const cplx a2 = a * a;
    cplx integral;
    if (std::abs(a) < 1e-8)
        integral = 1.0 / N - a2 / (3.0 * N * N * N);
    else
        integral = std::atan(a / N) / a;
    const cplx u = N * N + a2;
    const cplx f = 1.0 / u;
    const cplx f1 = -2.0 * N / (u * u);
    const cplx f3 = 24.0 * N / (u * u * u) - 48.0 * N * N * N / (u * u * u * u);
    return integral - 0.5 * f - f1 / 12.0 + f3 / 720.0;
}

}  // namespace

double choose_K(cplx x) {
    const double ax = std::abs(x);
    if (!(ax > 0.0 && ax < 1.0)) throw InvalidArgument("choose_K needs 0 < |x| < 1");
    const double arg = std::arg(x);
    if (arg == 0.0) return 1.0;
    return 0.5 * (-std::log(ax)) / std::abs(arg);
}

EvalResult a_tilde(cplx x, cplx w, const ContinuationParams& p) {
    require_inside(x);
    const cplx L = std::log(x);
    const double ax = std::abs(x), lg = -std::log(ax);
    const double scale = std::exp(-w.real());
    const double target = p.tail_tol * 1e-2;
    CompensatedSum<cplx> acc;
    std::size_t n = 0;
    double tail = std::numeric_limits<double>::infinity();
    while (n < p.max_terms) {
        ++n;
        const cplx den = static_cast<double>(n) * L - w;
        if (std::abs(den) < kPoleDistance) throw PoleHit("pole of A at w = n log x", std::exp(-w), x, -long(n));
        acc.add(std::exp(den) / (static_cast<double>(n) * den));
        // once n |log|x|| > |w| + 1 every later denominator exceeds 1
        const double n1 = static_cast<double>(n + 1);
        if (n1 * lg > std::abs(w) + 1.0) {
            tail = scale * std::pow(ax, n1) / (n1 * (1.0 - ax));
            if (tail < target) break;
        }
    }
    return {acc.value(), tail, n};
}

EvalResult m_tilde(cplx x, Sign s, double K, cplx w, double delta, const ContinuationParams& p) {
    require_inside(x);
    if (!(delta > 0.0 && delta < K))
        throw InvalidArgument("single-sign M series needs 0 < delta < K; use m_tilde_difference at delta = 0");
    const double sg = static_cast<double>(s);
    const cplx L = std::log(x);
    const double ax = std::abs(x);
    const double target = p.tail_tol * 1e-2;
    const double sigma = std::exp(-kTwoPi * delta);
    const cplx pref = -std::exp(-w);
    CompensatedSum<cplx> acc;
    std::size_t terms = 0;
    double tail_total = 0;
    cplx xm = 1;
    std::size_t m = 0;
    while (m < p.max_terms) {
        ++m;
        xm *= x;
        const cplx c = static_cast<double>(m) * L - w;
        const double rho_k = std::exp(-sg * K * c.imag());
        const double rho_d = std::exp(-sg * delta * c.imag());
        const double amp = std::pow(ax, static_cast<double>(m)) / m * std::max(rho_k * std::exp(-kTwoPi * K), rho_d);
        CompensatedSum<cplx> inner;
        std::size_t n = 0;
        double ntail = std::numeric_limits<double>::infinity();
        while (n < p.max_terms) {
            ++n;
            const cplx d = sg * I * c - kTwoPi * static_cast<double>(n);
            cplx v;
            if (std::abs(d) < kSwitch)
                v = K - delta;
            else
                v = (std::exp(d * K) - std::exp(d * delta)) / d;
            inner.add(v);
            ++terms;
            const double n1 = static_cast<double>(n + 1);
            const double den = kTwoPi * n1 - std::abs(c);
            if (den > 1.0) {
                ntail = std::pow(ax, static_cast<double>(m)) / m * 2.0 * std::max(rho_k, rho_d) *
                        std::pow(sigma, n1) / ((1.0 - sigma) * den) * std::abs(pref);
                if (ntail < target * 1e-3) break;
            }
        }
        acc.add(xm / static_cast<double>(m) * inner.value());
        tail_total += ntail;
        // majorant for every later m: |x|^m/m times the n-sum bound
        const double later = amp * std::abs(pref) * 2.0 / (1.0 - sigma);
        if (later < target * (1.0 - ax) && m > 2) {
            tail_total += later / (1.0 - ax);
            break;
        }
    }
    return {pref * acc.value(), tail_total, terms};
}

EvalResult m_tilde_difference(cplx x, double K, cplx w, const ContinuationParams& p) {
    require_inside(x);
    const cplx L = std::log(x);
    const double ax = std::abs(x);
    const double target = p.tail_tol * 1e-2;
    const double sigma = std::exp(-kTwoPi * K);
    const cplx pref = -I * std::exp(-w);
    const double apref = std::abs(pref);
    CompensatedSum<cplx> acc;
    std::size_t terms = 0;
    double tail_total = 0;
    cplx xm = 1;
    std::size_t m = 0;
    while (m < p.max_terms) {
        ++m;
        xm *= x;
        const double dm = static_cast<double>(m);
        const double xmag = std::pow(ax, dm);
        const cplx c = dm * L - w;
        const cplx a = c / kTwoPi;
        const double grow = std::exp(K * std::abs(c.imag()));
        // exponential parts beyond N: 2 grow sigma^(N+1) / ((1 - sigma)(2 pi (N+1) - |c|))
        double N = std::max(64.0, std::ceil(2.0 * std::abs(a) + 10.0));
        auto etail = [&](double nn) {
            return xmag / dm * apref * 2.0 * grow * std::pow(sigma, nn + 1.0) /
                   ((1.0 - sigma) * (kTwoPi * (nn + 1.0) - std::abs(c)));
        };
        while (etail(N) > target * 1e-3 && N < static_cast<double>(p.max_terms)) N *= 2.0;
        const std::size_t n_max = static_cast<std::size_t>(N);
        CompensatedSum<cplx> inner;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const double tn = kTwoPi * static_cast<double>(n);
            const cplx dp = I * c - tn, dmn = -I * c - tn;
            inner.add(endpoint_difference(dp, K) - endpoint_difference(dmn, K));
        }
        terms += n_max;
        // endpoint parts beyond N: sum of 2ic/(4 pi^2 n^2 + c^2)
        inner.add(2.0 * I * c / (kTwoPi * kTwoPi) * inverse_square_tail(a, N));
        acc.add(xm / dm * inner.value());
        tail_total += etail(N);
        // later terms shrink at least geometrically with ratio max(|x|, rho1), rho1 = |x| e^{K |arg x|} < 1
        const double rho1 = ax * std::exp(K * std::abs(std::arg(x)));
        const double rho = std::pow(rho1, dm + 1.0);
        const double later = (std::pow(ax, dm + 1.0) + rho * std::exp(K * std::abs(w.imag())) / (1.0 - sigma)) *
                             apref / (dm + 1.0) / (1.0 - std::max(ax, rho1));
        if (later < target) {
            tail_total += later;
            break;
        }
    }
    return {pref * acc.value(), tail_total, terms};
}

EvalResult t_tilde(cplx x, Sign s, double K, cplx w, const ContinuationParams& p) {
    require_inside(x);
    const double sg = static_cast<double>(s);
    const cplx L = std::log(x);
    const double ax = std::abs(x), lg = -std::log(ax);
    const double target = p.tail_tol * 1e-2;
    const double sigma = std::exp(-kTwoPi * K);
    const double rho = std::exp(std::log(ax) - sg * K * std::arg(x));
    if (!(rho < 1.0)) throw InvalidArgument("K violates the admissibility bound for this x");
    const double E = std::exp(-w.real() + sg * K * w.imag());
    const cplx rot(1.0, sg * K);
    CompensatedSum<cplx> acc;
    std::size_t terms = 0;
    double tail_total = 0;
    std::size_t m = 0;
    while (m < p.max_terms) {
        ++m;
        const double dm = static_cast<double>(m);
        const cplx c = dm * L - w;
        const double amp = std::pow(rho, dm) * E / dm;
        CompensatedSum<cplx> inner;
        std::size_t n = 0;
        double ntail = std::numeric_limits<double>::infinity();
        while (n < p.max_terms) {
            ++n;
            const cplx den = c + sg * I * kTwoPi * static_cast<double>(n);
            if (std::abs(den) < kPoleDistance)
                throw PoleHit("pole of T at w = m log x + 2 pi i n", std::exp(-w), x, -long(m));
            inner.add(std::exp(den * rot) / den);
            ++terms;
            const double n1 = static_cast<double>(n + 1);
            const double low = kTwoPi * n1 - std::abs(c.imag());
            if (low > 1.0) {
                ntail = amp * std::pow(sigma, n1) / ((1.0 - sigma) * low);
                if (ntail < target * 1e-3) break;
            }
        }
        acc.add(inner.value() / dm);
        tail_total += ntail;
        const double m1 = dm + 1.0;
        if (m1 * lg > std::abs(w.real()) + 1.0) {
            const double later = std::pow(rho, m1) * E / (m1 * (1.0 - rho)) * sigma / (1.0 - sigma);
            if (later < target) {
                tail_total += later;
                break;
            }
        }
    }
    return {acc.value(), tail_total, terms};
}

EvalResult q_continuation(cplx x, cplx w, const ContinuationParams& p) {
    require_inside(x);
    const double K = effective_K(x, p);
    const double bound = (std::arg(x) == 0.0) ? std::numeric_limits<double>::infinity()
                                              : -std::log(std::abs(x)) / std::abs(std::arg(x));
    if (!(K < bound)) throw InvalidArgument("K violates the admissibility bound for this x");
    EvalResult a = a_tilde(x, w, p);
    EvalResult md = m_tilde_difference(x, K, w, p);
    EvalResult tp = t_tilde(x, Sign::Plus, K, w, p);
    EvalResult tm = t_tilde(x, Sign::Minus, K, w, p);
    const cplx head = 0.5 * std::log(1.0 - x) * std::exp(-w);
    return {head + a.value + md.value + tp.value + tm.value,
            a.tail_bound + md.tail_bound + tp.tail_bound + tm.tail_bound,
            a.terms_used + md.terms_used + tp.terms_used + tm.terms_used};
}

std::optional<rx::RootOfUnity> detect_root_of_unity(cplx x, double tol) {
    if (std::abs(std::abs(x) - 1.0) > tol) return std::nullopt;
    const double turns = std::arg(x) / kTwoPi;
    for (unsigned long m = 1; m <= 1000; ++m) {
        const double k = std::round(turns * static_cast<double>(m));
        if (std::abs(turns * static_cast<double>(m) - k) * kTwoPi > tol) continue;
        long e = static_cast<long>(k) % static_cast<long>(m);
        if (e < 0) e += static_cast<long>(m);
        return rx::RootOfUnity{m, static_cast<unsigned long>(e)};
    }
    return std::nullopt;
}

EvalResult rx_continued(rx::RootOfUnity x, cplx z) { return rx::rx_root_of_unity(x, z); }

EvalResult rx_continued(cplx x, cplx z, const ContinuationParams& p) {
    if (x == cplx(0)) throw ZeroInput("R_x needs x != 0");
    if (z == cplx(0)) return {0.0, 0.0, 0};
    const double ax = std::abs(x);
    if (std::abs(ax - 1.0) <= poly::kCircleTolerance) {
        if (auto u = detect_root_of_unity(x)) return rx::rx_root_of_unity(*u, z);
        throw NaturalBoundary("unimodular x that is not a root of unity", {x});
    }
    if (ax > 1.0) {
        const rx::Inversion inv = rx::rx_invert_decompose(x);
        EvalResult base = rx_continued(inv.x_inv, z, p);
        if (std::abs(z - 1.0) < kPoleDistance) throw PoleHit("double pole at z = 1", cplx(1.0));
        base.value += inv.double_pole_weight * z / ((z - 1.0) * (z - 1.0));
        return base;
    }
    const cplx w = -std::log(z);
    EvalResult q1 = q_continuation(x, w, p);
    EvalResult q2 = q_continuation(std::conj(x), w, p);
    return {0.5 * (q1.value + q2.value), 0.5 * (q1.tail_bound + q2.tail_bound), q1.terms_used + q2.terms_used};
}

namespace {

cplx h_fn(cplx L, cplx w, cplx s) { return std::log(1.0 - std::exp(s * L)) * std::exp(-w * s); }

template <class F>
cplx integrate(F f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double t) { return f(t).real(); };
    auto im = [&](double t) { return f(t).imag(); };
    const double r = gauss_kronrod<double, 31>::integrate(re, a, b, 8, 1e-13);
    const double i = gauss_kronrod<double, 31>::integrate(im, a, b, 8, 1e-13);
    return {r, i};
}

}  // namespace

AbelPlanaTerms abel_plana_terms(cplx x, cplx w, int a, int b, double K) {
    require_inside(x);
    if (!(a >= 1 && b > a && K > 0)) throw InvalidArgument("Abel-Plana box needs 1 <= a < b and K > 0");
    const cplx L = std::log(x);
    auto h = [&](cplx s) { return h_fn(L, w, s); };
    CompensatedSum<cplx> lhs;
    for (int n = a; n <= b; ++n) lhs.add(h(cplx(n)));
    const double da = a, db = b;
    cplx rhs = 0.5 * h(da) + 0.5 * h(db);
    rhs += integrate([&](double t) { return h(cplx(t)); }, da, db);
    auto side = [&](double e) {
        return integrate(
            [&](double y) {
                if (y == 0.0) return cplx(0);
                return (h(cplx(e, y)) - h(cplx(e, -y))) / std::expm1(kTwoPi * y);
            },
            0.0, K);
    };
    rhs += I * side(da) - I * side(db);
    rhs -= integrate([&](double t) {
        const cplx s(t, K);
        return h(s) / (1.0 - std::exp(-kTwoPi * I * s));
    }, da, db);
    rhs += integrate([&](double t) {
        const cplx s(t, -K);
        return h(s) / (std::exp(kTwoPi * I * s) - 1.0);
    }, da, db);
    return {lhs.value(), rhs, std::abs(lhs.value() - rhs)};
}

double abel_plana_check(cplx x, cplx w, int a, int b, double K) { return abel_plana_terms(x, w, a, b, K).residual; }

}  // namespace tgf::cont
