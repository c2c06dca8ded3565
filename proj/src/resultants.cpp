#include "tgf/resultants.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <algorithm>
#include <thread>

namespace tgf::res {

namespace {

std::vector<cplx> expand_roots(const IntPoly& f) {
    std::vector<cplx> out;
    for (const auto& r : poly::roots(f))
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

// ascending coefficients of c * prod (t - z)
std::vector<cplx> from_roots(const std::vector<cplx>& zs, cplx c) {
    std::vector<cplx> p{c};
    for (const auto& z : zs) {
        std::vector<cplx> q(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= z * p[i];
        }
        p = std::move(q);
    }
    return p;
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::optional<IntPoly> round_integral(const std::vector<cplx>& p) {
    std::vector<BigInt> c;
    for (const auto& z : p) {
        const double r = std::round(z.real());
        if (std::abs(z.imag()) > 1e-6 || std::abs(z.real() - r) > 1e-6 * std::max(1.0, std::abs(r))) return std::nullopt;
        c.emplace_back(static_cast<long long>(r));
    }
    return IntPoly(std::move(c));
}

double max_diff(const std::vector<cplx>& a, const IntPoly& f) {
    double d = 0;
    const std::size_t n = std::max(a.size(), f.coeffs().size());
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = i < a.size() ? a[i] : 0.0;
        d = std::max(d, std::abs(x - static_cast<double>(f.coeff(i))));
    }
    return d;
}

void require_no_unit_circle(const IntPoly& f) {
    for (const auto& r : poly::classify_roots(f).roots)
        if (r.value != cplx(0) && (r.cls == poly::RootClass::RootOfUnity || r.cls == poly::RootClass::Diophantine))
            throw OutOfScope("decomposition is implemented only for polynomials without roots on the unit circle");
}

}  // namespace

std::vector<BigInt> cyclic_resultants(const IntPoly& f, std::size_t M) {
    if (f.is_zero()) throw ZeroInput("cyclic resultants of the zero polynomial");
    std::vector<BigInt> out;
    out.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) out.push_back(poly::resultant_exact(f, poly::t_power_minus_one(m)));
    return out;
}

EvalResult t_f_continued(const IntPoly& f, cplx z, const cont::ContinuationParams& params) {
    return torsion::e_continued(f, z, params);
}

std::vector<torsion::PoleReport> t_f_poles(const IntPoly& f, double radius_max) {
    return torsion::pole_set(f, radius_max);
}

bool hillar_equal(const IntPoly& f, const IntPoly& g, std::size_t M) {
    const auto a = cyclic_resultants(f, M), b = cyclic_resultants(g, M);
    for (std::size_t m = 0; m < M; ++m) {
        if (a[m] == 0 || b[m] == 0) throw ZeroResultant("cyclic resultant vanishes at m = " + std::to_string(m + 1), m + 1);
    }
    for (std::size_t m = 0; m < M; ++m)
        if (abs(a[m]) != abs(b[m])) return false;
    return true;
}

HillarDecomposition hillar_decompose(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw ZeroInput("decomposition of the zero polynomial");
    HillarDecomposition d;
    d.l1 = f.low_order();
    d.l2 = g.low_order();
    const IntPoly fr = f.divided_by_t_power(d.l1), gr = g.divided_by_t_power(d.l2);
    if (fr.degree() > 0) require_no_unit_circle(fr);
    if (gr.degree() > 0) require_no_unit_circle(gr);
    if (fr.degree() != gr.degree()) throw NoDecomposition("degrees differ after removing powers of t");

    std::vector<cplx> f_roots = fr.degree() > 0 ? expand_roots(fr) : std::vector<cplx>{};
    const std::vector<cplx> g_roots = gr.degree() > 0 ? expand_roots(gr) : std::vector<cplx>{};
    std::vector<cplx> u_roots, v_roots;
    auto take = [&](cplx z) {
        for (std::size_t i = 0; i < f_roots.size(); ++i)
            if (std::abs(f_roots[i] - z) <= 1e-8 * std::max(1.0, std::abs(z))) {
                f_roots.erase(f_roots.begin() + static_cast<long>(i));
                return true;
            }
        return false;
    };
    // roots of g shared with f go to v, roots whose inverse lies in f go to u
    for (const auto& z : g_roots) {
        if (take(z))
            v_roots.push_back(z);
        else if (take(1.0 / z))
            u_roots.push_back(z);
        else
            throw NoDecomposition("a root of g matches neither a root of f nor an inverse");
    }

    // u monic, v carries lc(g); then f = sign lc(g) prod(-beta_u) ...
    const double lcg = static_cast<double>(gr.leading()), lcf = static_cast<double>(fr.leading());
    cplx prod = 1.0;
    for (const auto& z : u_roots) prod *= -z;
    const cplx ratio = lcf / (lcg * prod);
    if (std::abs(std::abs(ratio) - 1.0) > 1e-8 || std::abs(ratio.imag()) > 1e-8)
        throw NoDecomposition("leading coefficients are incompatible");
    d.sign = ratio.real() > 0 ? 1 : -1;
    // split lc(g) = c * (lc(g)/c) between u and v, preferring a split with integer coefficients
    const long lg = static_cast<long>(std::abs(lcg));
    d.u = from_roots(u_roots, 1.0);
    d.v = from_roots(v_roots, lcg);
    for (long c = 1; c <= lg && !(d.u_int && d.v_int); ++c) {
        if (lg % c) continue;
        for (double sc : {1.0, -1.0}) {
            auto uc = from_roots(u_roots, sc * static_cast<double>(c));
            auto vc = from_roots(v_roots, lcg / (sc * static_cast<double>(c)));
            d.u_int = round_integral(uc);
            d.v_int = round_integral(vc);
            if (d.u_int && d.v_int) {
                d.u = std::move(uc);
                d.v = std::move(vc);
                break;
            }
        }
    }
    if (d.u_int && d.v_int) {
        const IntPoly tl1 = IntPoly::monomial(1, d.l1), tl2 = IntPoly::monomial(1, d.l2);
        const IntPoly f_check = BigInt(d.sign) * (tl1 * *d.v_int * d.u_int->reversed());
        const IntPoly g_check = tl2 * *d.v_int * *d.u_int;
        // reversed() drops the degree shift when u(0) = 0, which cannot happen here
        d.integral = f_check == f && g_check == g;
    }
    if (!d.integral) {
        std::vector<cplx> u_rev(d.u.rbegin(), d.u.rend());
        std::vector<cplx> fs = multiply(d.v, u_rev), gs = multiply(d.v, d.u);
        fs.insert(fs.begin(), d.l1, 0.0);
        gs.insert(gs.begin(), d.l2, 0.0);
        for (auto& c : fs) c *= static_cast<double>(d.sign);
        d.mismatch = std::max(max_diff(fs, f), max_diff(gs, g));
        if (d.mismatch > 1e-8) throw NoDecomposition("product identities fail by " + std::to_string(d.mismatch));
        d.u_int.reset();
        d.v_int.reset();
    }
    return d;
}

UnitScan exceptional_scan(const IntPoly& minpoly, std::size_t M, unsigned threads) {
    if (minpoly.degree() < 1) throw NotAUnit("constant polynomial");
    if (abs(minpoly.leading()) != 1 || abs(minpoly[0]) != 1)
        throw NotAUnit("a unit needs leading and constant coefficients +-1");
    if (!poly::classify_roots(minpoly).cyclotomic_factors.empty())
        throw NotAUnit("a root of unity u makes 1 - u^n vanish");
    UnitScan s;
    s.minpoly = minpoly;
    s.M = M;
    s.norms.assign(M, BigInt(0));
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(M, 1))));
    // N(1 - u^n) = prod (1 - beta^n) = (-1)^deg Res(f, t^n - 1) for monic f
    const bool odd = minpoly.degree() % 2 != 0;
    const int lead_sign = minpoly.leading() > 0 ? 1 : -1;
    auto work = [&](unsigned t) {
        for (std::size_t n = 1 + t; n <= M; n += threads) {
            BigInt r = poly::resultant_exact(minpoly, poly::t_power_minus_one(n));
            if (odd) r = -r;
            if (lead_sign < 0 && n % 2 != 0) r = -r;
            s.norms[n - 1] = std::move(r);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (std::size_t n = 1; n <= M; ++n)
        if (abs(s.norms[n - 1]) == 1) s.unit_indices.push_back(n);
    while (s.E0 < s.unit_indices.size() && s.unit_indices[s.E0] == s.E0 + 1) ++s.E0;
    return s;
}

EvalResult g_u_continued(const IntPoly& minpoly, cplx z, unsigned degree_multiplier,
                         const cont::ContinuationParams& params) {
    if (degree_multiplier < 1) throw InvalidArgument("degree multiplier must be positive");
    for (const auto& r : poly::classify_roots(minpoly).roots)
        if (r.value != cplx(0) && (r.cls == poly::RootClass::RootOfUnity || r.cls == poly::RootClass::Diophantine))
            throw UnimodularConjugate("a conjugate of u lies on the unit circle");
    EvalResult e = t_f_continued(minpoly, z, params);
    e.value *= static_cast<double>(degree_multiplier);
    e.tail_bound *= static_cast<double>(degree_multiplier);
    return e;
}

std::vector<HPReal> hankel_min_singular_values(const std::vector<HPReal>& seq, std::size_t max_order) {
    using Mat = Eigen::Matrix<HPReal, Eigen::Dynamic, Eigen::Dynamic>;
    std::vector<HPReal> out;
    for (std::size_t k = 1; k <= max_order + 1; ++k) {
        if (seq.size() < 2 * k - 1) break;
        const std::size_t cols = seq.size() - k + 1;
        Mat H(k, cols);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < cols; ++j) H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = seq[i + j];
        Eigen::JacobiSVD<Mat> svd(H);
        out.push_back(svd.singularValues().minCoeff());
    }
    return out;
}

std::vector<HPReal> log_norms(const UnitScan& scan) {
    std::vector<HPReal> out;
    for (const auto& n : scan.norms) {
        if (n == 0) throw ZeroInput("vanishing norm");
        out.push_back(log(HPReal(abs(n))));
    }
    return out;
}

}  // namespace tgf::res
