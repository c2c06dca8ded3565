#include <cmath>

#include "tgf/polyalg.hpp"

namespace tgf::poly {

namespace {

void push_quotient(ContinuedFraction& cf, unsigned long long a) {
    cf.partial_quotients.push_back(a);
    const std::size_t n = cf.convergents.size();
    BigInt p_prev = n >= 2 ? cf.convergents[n - 2].first : (n == 1 ? BigInt(0) : BigInt(1));
    BigInt q_prev = n >= 2 ? cf.convergents[n - 2].second : (n == 1 ? BigInt(1) : BigInt(0));
    BigInt p_cur = n >= 1 ? cf.convergents[n - 1].first : BigInt(0);
    BigInt q_cur = n >= 1 ? cf.convergents[n - 1].second : BigInt(1);
    // theta = [0; a1, a2, ...], seeds p_{-1}/q_{-1} = 1/0 and p_0/q_0 = 0/1
    if (n == 0) {
        p_prev = 1;
        q_prev = 0;
    }
    cf.convergents.emplace_back(a * p_cur + p_prev, a * q_cur + q_prev);
}

}  // namespace

ContinuedFraction continued_fraction(const HPReal& theta, std::size_t n, const HPReal& uncertainty) {
    if (!(theta > 0 && theta < 1)) throw InvalidArgument("continued_fraction needs theta in (0,1)");
    ContinuedFraction cf;
    cf.theta = theta.convert_to<double>();
    HPReal lo = theta - uncertainty, hi = theta + uncertainty;
    // the map x -> 1/x - a is decreasing, so the endpoints swap every step
    for (std::size_t k = 0; k < n; ++k) {
        if (lo <= 0) {
            cf.terminated = true;
            return cf;
        }
        HPReal ylo = 1 / hi, yhi = 1 / lo;
        HPReal a_lo = floor(ylo), a_hi = floor(yhi);
        if (a_lo != a_hi) {
            // a narrow interval straddling one integer is a rational that ends here
            if (a_hi - a_lo == 1 && yhi - ylo < HPReal("1e-6")) {
                push_quotient(cf, a_hi.convert_to<unsigned long long>());
                cf.terminated = true;
                return cf;
            }
            throw PrecisionExhausted("continued fraction lost precision at term " + std::to_string(k + 1), k);
        }
        if (a_lo > HPReal(1e18)) throw PrecisionExhausted("partial quotient overflow", k);
        unsigned long long a = a_lo.convert_to<unsigned long long>();
        push_quotient(cf, a);
        lo = ylo - a_lo;
        hi = yhi - a_lo;
    }
    return cf;
}

ContinuedFraction continued_fraction(double theta, std::size_t n) {
    // a double carries its exact binary value; use it with a half-ulp interval
    HPReal t(theta);
    HPReal eps = HPReal(std::nextafter(theta, 1.0) - theta) / 2;
    ContinuedFraction cf = continued_fraction(t, n, eps);
    cf.theta = theta;
    return cf;
}

ContinuedFraction continued_fraction(const BigInt& p, const BigInt& q) {
    if (!(p > 0 && p < q)) throw InvalidArgument("continued_fraction needs 0 < p < q");
    ContinuedFraction cf;
    cf.theta = (HPReal(p) / HPReal(q)).convert_to<double>();
    BigInt num = q, den = p;
    while (den != 0) {
        BigInt a = num / den;
        push_quotient(cf, a.convert_to<unsigned long long>());
        BigInt r = num - a * den;
        num = den;
        den = r;
    }
    cf.terminated = true;
    return cf;
}

BadlyApproximableVerdict badly_approximable_witness(const ContinuedFraction& cf, unsigned long long bound) {
    for (std::size_t i = 0; i < cf.partial_quotients.size(); ++i)
        if (cf.partial_quotients[i] >= bound) return {false, i + 1};
    return {true, 0};
}

}  // namespace tgf::poly
