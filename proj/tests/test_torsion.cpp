#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "tgf/rxcore.hpp"
#include "tgf/torsion.hpp"

using namespace tgf;
using namespace tgf::torsion;
using tgf::poly::IntPoly;

namespace {

const IntPoly trefoil{1, -1, 1};
const IntPoly fig8{1, -3, 1};
const IntPoly k8{6, -13, 6};
const IntPoly lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

// roots from the companion matrix, independent of the library root finder
std::vector<cplx> companion_roots(const IntPoly& f) {
    const int n = f.degree();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    const double lc = f.leading().convert_to<double>();
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -f[i].convert_to<double>() / lc;
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(c);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

double log_product(const IntPoly& f, unsigned long r) {
    double s = static_cast<double>(r) * std::log(std::abs(f.leading().convert_to<double>()));
    for (cplx b : companion_roots(f)) {
        // log|1 - b^r| without overflow
        const double lb = std::log(std::abs(b)) * double(r);
        const cplx u = std::polar(1.0, double(r) * std::arg(b));
        if (lb > 0)
            s += lb + std::log(std::abs(std::exp(-lb) - u));
        else
            s += std::log(std::abs(1.0 - std::exp(lb) * u));
    }
    return s;
}

IntPoly random_reciprocal(std::mt19937& rng, int half) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<long long> c(2 * half + 1);
    long long partial = 0;
    for (int i = 0; i < half; ++i) {
        c[i] = c[2 * half - i] = d(rng);
        if (i == 0 && c[0] == 0) c[0] = c[2 * half] = 1;
        partial += c[i];
    }
    c[half] = ((rng() & 1) ? 1 : -1) - 2 * partial;
    std::vector<BigInt> b(c.begin(), c.end());
    return IntPoly(b);
}

double log_F(cplx x) {
    double s = 0;
    for (int n = 1; n < 2000; ++n) s -= std::log(std::abs(1.0 - std::pow(x, n)));
    return s;
}

}  // namespace

TEST_CASE("torsion values of standard knots") {
    CHECK(fox_torsion(trefoil, 2) == 3);
    CHECK(fox_torsion(trefoil, 6) == 0);
    CHECK(fox_torsion(fig8, 3) == 16);
    CHECK(reduced_torsion(trefoil, 6) == 1);
    CHECK(reduced_torsion(fig8, 3) == 16);
    TorsionTable t = torsion_table(trefoil, 12);
    CHECK(t.omitted == std::set<unsigned long>{6, 12});
    CHECK(t.entries.at(4) == 3);
    CHECK_THROWS_AS(fox_torsion(IntPoly{}, 2), ZeroInput);
    CHECK(input_warnings(fig8).empty());
    CHECK(input_warnings(k8).empty());
    CHECK(input_warnings(IntPoly{1, 1}).size() == 1);
    CHECK(input_warnings(IntPoly{-3, 1}).size() == 2);
}

TEST_CASE("E series with the omission rule") {
    auto tr = e_series(trefoil, 6);
    const double expect[] = {0, std::log(3.0), std::log(4.0), std::log(3.0), 0};
    for (int i = 0; i < 5; ++i) {
        CHECK(tr[i].log_value == doctest::Approx(expect[i]));
        CHECK(!tr[i].omitted);
    }
    CHECK(tr[5].omitted);
    auto f8 = e_series(fig8, 4);
    const double e8[] = {0, std::log(5.0), std::log(16.0), std::log(45.0)};
    for (int i = 0; i < 4; ++i) CHECK(f8[i].log_value == doctest::Approx(e8[i]).epsilon(1e-14));
    CHECK(e_series(lehmer, 1)[0].log_value == doctest::Approx(0.0));
}

TEST_CASE("exact and float torsion agree on random reciprocal polynomials") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 10; ++trial) {
        const IntPoly f = random_reciprocal(rng, 1 + trial % 3);
        CHECK(abs(f.eval(BigInt(1))) == 1);
        for (unsigned long r = 1; r <= 30; ++r) {
            const BigInt v = fox_torsion(f, r);
            if (v == 0) continue;
            const double exact = log_abs(v);
            const double oracle = log_product(f, r);
            CHECK(std::abs(exact - oracle) <= 1e-9 * std::max(1.0, std::abs(exact)));
            CHECK(std::abs(exact - log_torsion_float(f, r)) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
    // float path beyond the exact cap continues the exact values
    auto s = e_series(fig8, 80, 64);
    CHECK(s[63].exact);
    CHECK(!s[64].exact);
    CHECK(s[63].log_value == doctest::Approx(log_torsion_float(fig8, 64)).epsilon(1e-12));
}

TEST_CASE("continued E against the series and rational forms") {
    auto s = e_series(fig8, 3000);
    cplx partial = 0, zr = 1;
    for (const auto& t : s) {
        zr *= 0.5;
        partial += t.log_value * zr;
    }
    CHECK(std::abs(e_continued(fig8, 0.5).value - partial) < 1e-6);

    const cplx z = 0.3;
    const cplx rational = rx::rational_form({6, 1}).eval(z) + rx::rational_form({6, 5}).eval(z);
    CHECK(std::abs(e_continued(trefoil, z).value - rational) < 1e-12);

    CHECK_THROWS_AS(e_continued(lehmer, 0.5), NaturalBoundary);
    try {
        e_continued(lehmer, 0.5);
    } catch (const NaturalBoundary& nb) {
        CHECK(nb.diophantine_roots.size() == 8);
    }
    CHECK_THROWS_AS(e_continued(fig8, 1.0), PoleHit);
    CHECK_THROWS_AS(e_continued(fig8, (3.0 + std::sqrt(5.0)) / 2.0), PoleHit);
}

TEST_CASE("pole sets") {
    auto p = pole_set(k8, 4.0, false);
    REQUIRE(p.size() == 4);
    CHECK(std::abs(p[0].location - 1.0) < 1e-12);
    CHECK(p[0].order == 2);
    const double expect[] = {1.5, 2.25, 3.375};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(p[i + 1].location - expect[i]) < 1e-9);
        CHECK(p[i + 1].order == 1);
    }

    auto t = pole_set(trefoil, 2.0, false);
    REQUIRE(t.size() == 6);
    for (const auto& q : t) {
        CHECK(q.order == 1);
        CHECK(std::abs(std::pow(q.location, 6) - 1.0) < 1e-12);
    }

    const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
    auto f = pole_set(fig8, 8.0, false);
    REQUIRE(f.size() == 3);
    CHECK(f[0].order == 2);
    CHECK(std::abs(f[1].location - phi2) < 1e-12);
    CHECK(std::abs(f[2].location - phi2 * phi2) < 1e-11);
    for (const auto& q : f) {
        CHECK(std::abs(q.location) >= 1.0 - 1e-12);
        if (q.order == 2) CHECK(std::abs(q.location - 1.0) < 1e-12);
        if (q.generator && q.exponent != 0)
            CHECK(std::abs(std::pow(*q.generator, double(q.exponent)) - q.location) < 1e-9);
    }
    CHECK_THROWS_AS(pole_set(lehmer, 2.0), NaturalBoundary);
}

TEST_CASE("residues") {
    // root-of-unity poles: sum of rational-form residues
    const cplx m1 = -1.0;
    const cplx closed = rx::rational_form({6, 1}).residue(m1) + rx::rational_form({6, 5}).residue(m1);
    CHECK(std::abs(residue_at(trefoil, m1) - closed) < 1e-8);
    // outside powers: each root pair beta, 1/beta contributes p/k at p = beta^k
    const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(residue_at(fig8, phi2) - 2.0 * phi2) < 1e-7);
    CHECK(std::abs(residue_at(fig8, phi2 * phi2) - phi2 * phi2) < 1e-6);
    CHECK(std::abs(residue_at(k8, 3.375) - 3.375 * 2.0 / 3.0) < 1e-6);
    // z = 1 double pole reports the closed-form c_{-1}
    CHECK(residue_at(fig8, 1.0).real() == doctest::Approx(laurent_at_one(fig8).c_minus1));
    // linearity in multiplicity on a non-reciprocal square
    const IntPoly g{1, -5, 2};
    const IntPoly g2 = g * g;
    const auto pg = pole_set(g, 6.0, false);
    for (const auto& q : pg) {
        if (q.order == 2) continue;
        const cplx a = residue_at(g, q.location), b = residue_at(g2, q.location);
        CHECK(std::abs(b - 2.0 * a) < 1e-3 * std::abs(a));
    }
    CHECK_THROWS_AS(residue_at(fig8, 2.0), NotAPole);
    // an order-4 root's orbit contains z = -1, where its residue cancels
    const IntPoly q4{1, 0, 1};
    CHECK_THROWS_AS(residue_at(q4, -1.0), NotAPole);
    auto orbit = pole_set(q4, 2.0);
    REQUIRE(orbit.size() == 4);
    for (const auto& q : orbit) CHECK(q.removable == (std::abs(q.location + 1.0) < 1e-12));
}

TEST_CASE("Laurent data at z = 1") {
    const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
    auto f = laurent_at_one(fig8);
    CHECK(f.c_minus2 == doctest::Approx(std::log(phi2)).epsilon(1e-14));
    CHECK(f.c_minus2 == doctest::Approx(0.962424).epsilon(1e-6));
    CHECK(f.c_minus1 == doctest::Approx(f.c_minus2));
    CHECK(f.c_0 == doctest::Approx(-2.0 * log_F(1.0 / phi2)).epsilon(1e-12));

    auto t = laurent_at_one(trefoil);
    CHECK(t.c_minus2 == 0.0);
    CHECK(t.c_minus1 == doctest::Approx(-std::log(6.0) / 3.0).epsilon(1e-14));
    CHECK(t.c_0 == doctest::Approx(2.0 * (-std::log(6.0) / 12.0)).epsilon(1e-14));

    CHECK(laurent_at_one(k8).c_minus2 == doctest::Approx(std::log(9.0)).epsilon(1e-14));

    for (const IntPoly& p : {fig8, trefoil, k8}) {
        auto closed = laurent_at_one(p);
        auto num = laurent_numeric(p, 0);
        CHECK(std::abs(num.at(-2) - closed.c_minus2) < 1e-4);
        CHECK(std::abs(num.at(-1) - closed.c_minus1) < 1e-4);
        CHECK(std::abs(num.at(0) - closed.c_0) < 1e-4);
    }
    CHECK(std::abs(laurent_numeric(trefoil, -2).at(-2)) < 1e-6);
}

TEST_CASE("growth slope") {
    const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
    auto f = silver_williams_slope(fig8, 60);
    CHECK(f.reference == doctest::Approx(std::log(phi2)));
    CHECK(std::abs(f.slope - f.reference) < 0.01 * f.reference);
    auto t = silver_williams_slope(trefoil, 60);
    CHECK(t.slope == 0.0);
    CHECK(t.reference == 0.0);
    auto k = silver_williams_slope(k8, 40);
    CHECK(std::abs(k.slope - std::log(9.0)) < 0.01 * std::log(9.0));
}

TEST_CASE("periodicity classification and its witnesses") {
    auto t = gordon_classify(trefoil);
    CHECK(t.periodic);
    CHECK(t.period == 6ul);
    CHECK(!gordon_classify(fig8).periodic);
    auto c12 = gordon_classify(poly::cyclotomic(12));
    CHECK(c12.periodic);
    CHECK(c12.period == 12ul);
    CHECK(!gordon_classify(IntPoly{1, -2}).periodic);

    auto wt = gordon_witness(trefoil, 36);
    CHECK(wt.torsion_periodic);
    CHECK(wt.hankel_rank_large == wt.hankel_rank_small);
    CHECK(wt.pole_at_one_simple);
    CHECK(wt.poles_small == wt.poles_large);
    CHECK(wt.matches_rational_form);

    auto wf = gordon_witness(fig8, 36);
    CHECK(!wf.torsion_periodic);
    CHECK(wf.hankel_rank_large > wf.hankel_rank_small);
    CHECK(!wf.pole_at_one_simple);
    CHECK(wf.poles_large > wf.poles_small);
    CHECK(!wf.matches_rational_form);

    // rational form denominator divides (1 - z^m)(z - 1)
    PeriodicRational r = periodic_rational_form(poly::cyclotomic(12) * trefoil);
    CHECK(r.period == 12);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const cplx z(u(rng), u(rng));
        const cplx e = e_continued(poly::cyclotomic(12) * trefoil, z).value;
        CHECK(std::abs(e - r.eval(z)) < 1e-9 * std::max(1.0, std::abs(e)));
    }
}

TEST_CASE("periodic part and error bound") {
    auto f = periodic_part_and_bound(fig8);
    CHECK(f.period == 1);
    const double q = 2.0 / (3.0 + std::sqrt(5.0));
    CHECK(f.bound(10) == doctest::Approx(2.0 * std::pow(q, 10) / (1.0 - std::pow(q, 10))));
    auto t = periodic_part_and_bound(trefoil);
    CHECK(t.period == 6);
    CHECK(t.bound(5) == 0.0);
    for (unsigned long r = 1; r <= 24; ++r)
        CHECK(t.periodic_value(r) == doctest::Approx(log_abs(reduced_torsion(trefoil, r))).epsilon(1e-13));

    std::mt19937 rng(99);
    int used = 0;
    for (int trial = 0; trial < 60 && used < 5; ++trial) {
        const IntPoly g = random_reciprocal(rng, 2);
        if (poly::classify_roots(g).has_diophantine()) continue;
        ++used;
        CHECK(periodic_bound_slack(g, 60) <= 1e-9);
    }
    CHECK(used == 5);
}

TEST_CASE("root reconstruction from poles and residues") {
    auto check_round_trip = [](const IntPoly& p) {
        auto rec = fried_reconstruct(pole_set(p, 8.0));
        auto prof = poly::classify_roots(p);
        std::vector<cplx> want;
        for (const auto& b : prof.roots)
            for (int i = 0; i < b.multiplicity; ++i) want.push_back(b.value);
        REQUIRE(rec.roots.size() == want.size());
        for (cplx w : want) {
            const bool found = std::any_of(rec.roots.begin(), rec.roots.end(), [&](cplx r) {
                return std::abs(r - w) < 1e-6 || std::abs(1.0 / r - w) < 1e-6;
            });
            CHECK(found);
        }
    };
    check_round_trip(fig8);
    check_round_trip(k8);
    check_round_trip(trefoil);
    check_round_trip(fig8 * IntPoly{1, 0, 1});
    check_round_trip(fig8 * fig8);

    auto rec = fried_reconstruct(pole_set(k8, 8.0));
    REQUIRE(rec.roots.size() == 2);
    CHECK(std::abs(rec.roots[0] - 1.5) < 1e-9);
    CHECK(std::abs(rec.roots[1] - 2.0 / 3.0) < 1e-9);
    CHECK_THROWS_AS(fried_reconstruct(pole_set(k8, 4.0, false)), InvalidArgument);
}

TEST_CASE("alternating torsion product") {
    CHECK(reidemeister_tau({fig8}, 3) == BigRational(16));
    CHECK(reidemeister_tau({fig8, fig8}, 5) == BigRational(1));
    CHECK(reidemeister_tau({fig8, IntPoly{-2, 1}}, 3) == BigRational(16, 7));
    CHECK_THROWS_AS(reidemeister_tau({trefoil}, 6), RootOfUnityCollision);
    const cplx z(0.4, 0.2);
    const cplx j = j_continued({fig8, k8}, z).value;
    CHECK(std::abs(j - (e_continued(fig8, z).value - e_continued(k8, z).value)) < 1e-14);
}
