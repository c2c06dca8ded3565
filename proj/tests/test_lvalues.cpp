#include "doctest.h"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numeric>

#include "tgf/lvalues.hpp"

using namespace tgf;
using namespace tgf::lval;

namespace {

std::size_t find_real_nonprincipal(const CharacterTable& t) {
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (c == t.principal_index) continue;
        bool real = true;
        for (unsigned long a = 1; a < t.modulus; ++a)
            if (std::abs(t.value(c, a).imag()) > 1e-12) real = false;
        if (real) return c;
    }
    return t.size();
}

unsigned long euler_phi(unsigned long m) {
    unsigned long n = 0;
    for (unsigned long a = 1; a <= m; ++a)
        if (std::gcd(a, m) == 1) ++n;
    return n;
}

}  // namespace

TEST_CASE("character tables are orthogonal and multiplicative") {
    for (unsigned long m = 1; m <= 50; ++m) {
        const auto t = characters(m);
        const unsigned long phi = euler_phi(m);
        REQUIRE(t.size() == phi);
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = 0; b < t.size(); ++b) {
                cplx s = 0;
                for (unsigned long n = 0; n < m; ++n) s += t.value(a, n) * std::conj(t.value(b, n));
                CHECK(std::abs(s - (a == b ? double(phi) : 0.0)) < 1e-9);
            }
        for (unsigned long x = 1; x < m; x += 3)
            for (unsigned long y = 1; y < m; y += 5) {
                const std::size_t c = t.size() - 1;
                CHECK(std::abs(t.value(c, x * y % m) - t.value(c, x) * t.value(c, y)) < 1e-12);
            }
        for (unsigned long n = 0; n < m; ++n)
            CHECK(std::abs(t.value(t.principal_index, n) - (std::gcd(n, m) == 1 ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("Fourier transform round trip") {
    std::vector<cplx> v{1.0, cplx(0, 2), -3.0, 0.5, cplx(1, 1), 0.0, 7.0};
    const auto f = make_periodic(v);
    const auto back = f.inverse();
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(back[i] - v[i]) < 1e-12);
    CHECK(std::abs(f.at(-1) - v.back()) == 0.0);
    CHECK(std::abs(f.at(15) - v[1]) == 0.0);
}

TEST_CASE("L(1, chi) for small moduli") {
    const double pi = boost::math::constants::pi<double>();
    const auto t4 = characters(4);
    const auto c4 = find_real_nonprincipal(t4);
    const auto f4 = character_fn(t4, c4);
    CHECK(std::abs(l_one_periodic(f4) - pi / 4) < 1e-12);
    const auto t3 = characters(3);
    const auto f3 = character_fn(t3, find_real_nonprincipal(t3));
    CHECK(std::abs(l_one_periodic(f3) - pi / (3 * std::sqrt(3.0))) < 1e-12);
    // mod 5 quadratic character: L = 2 log(phi)/sqrt 5
    const auto t5 = characters(5);
    const auto f5 = character_fn(t5, find_real_nonprincipal(t5));
    const double golden = (1 + std::sqrt(5.0)) / 2;
    CHECK(std::abs(l_one_periodic(f5) - 2 * std::log(golden) / std::sqrt(5.0)) < 1e-12);
}

TEST_CASE("closed form agrees with the raw Dirichlet series") {
    for (unsigned long m : {3ul, 4ul, 7ul, 12ul, 15ul}) {
        const auto t = characters(m);
        for (std::size_t c = 0; c < t.size(); ++c) {
            if (c == t.principal_index) continue;
            const auto f = character_fn(t, c);
            const auto raw = l_one_series(f, 4000);
            CHECK(std::abs(raw.value - l_one_periodic(f)) < 1e-10);
        }
    }
    const auto f = make_periodic({0.0, 1.0, cplx(0, 1), -1.0, cplx(0, -1)});
    CHECK(std::abs(l_one_series(f).value - l_one_periodic(f)) < 1e-10);
}

TEST_CASE("nonzero mean is rejected") {
    const auto t = characters(5);
    CHECK_THROWS_AS(l_one_periodic(character_fn(t, t.principal_index)), NonzeroMean);
    CHECK_THROWS_AS(l_one_series(make_periodic({1.0, 1.0})), NonzeroMean);
}

TEST_CASE("log|1 - zeta| from L-values") {
    for (unsigned long m = 2; m <= 30; ++m) {
        double total = 0;
        for (unsigned long l = 1; l < m; ++l) {
            const double direct = std::log(std::abs(1.0 - std::polar(1.0, kTwoPi * double(l) / double(m))));
            const double via = log_abs_from_lvalues(m, l);
            CHECK(via == doctest::Approx(direct).epsilon(1e-12));
            total += via;
        }
        CHECK(total == doctest::Approx(std::log(double(m))).epsilon(1e-11));
    }
}

TEST_CASE("digamma at rationals") {
    const double gamma = boost::math::constants::euler<double>();
    const std::vector<std::pair<long, long>> points{{1, 1}, {1, 2}, {1, 3}, {2, 3}, {7, 4}, {-1, 2}, {-5, 3}, {13, 5}, {6, 4}};
    for (auto [u, v] : points) {
        const double want = boost::math::digamma(double(u) / double(v)) + gamma;
        CHECK(std::abs(digamma_rational(u, v, 200000) - want) < 1e-12);
    }
    CHECK(std::abs(digamma_rational(1, 1, 1000)) < 1e-10);
    CHECK(digamma_rational(1, 2, 200000) == doctest::Approx(-2 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(digamma_rational(0, 1), PoleOfGamma);
    CHECK_THROWS_AS(digamma_rational(-6, 3), PoleOfGamma);
}
