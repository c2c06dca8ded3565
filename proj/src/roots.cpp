#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/constants/constants.hpp>

#include "tgf/polyalg.hpp"

namespace tgf::poly {

namespace {

template <class C>
void horner_with_derivative(const std::vector<C>& c, const C& z, C& p, C& dp) {
    p = c.back();
    dp = C(0);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

// One Aberth-Ehrlich sweep; returns the largest relative correction.
template <class C, class R>
R aberth_step(const std::vector<C>& c, std::vector<C>& z) {
    R worst = 0;
    const std::size_t n = z.size();
    for (std::size_t k = 0; k < n; ++k) {
        C p, dp;
        horner_with_derivative(c, z[k], p, dp);
        if (p == C(0)) continue;
        C ratio = p / dp;
        C s(0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) s += C(1) / (z[k] - z[j]);
        C w = ratio / (C(1) - ratio * s);
        z[k] -= w;
        R rel = abs(w) / (R(1) + abs(z[k]));
        worst = std::max(worst, rel);
    }
    return worst;
}

// Roots of a square-free integer polynomial with nonzero constant term.
std::vector<HPComplex> squarefree_roots(const IntPoly& g) {
    const int n = g.degree();
    std::vector<HPComplex> out;
    if (n < 1) return out;
    if (n == 1) {
        out.emplace_back(HPReal(-g[0]) / HPReal(g[1]));
        return out;
    }
    std::vector<cplx> cd(n + 1);
    for (int i = 0; i <= n; ++i) cd[i] = (HPReal(g[i]) / HPReal(g.leading())).convert_to<double>();

    double r0 = std::pow(std::abs(cd[0].real()), 1.0 / n);
    if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1.0;
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(r0, kTwoPi * k / n + 0.4);

    for (int it = 0; it < 2000; ++it)
        if (aberth_step<cplx, double>(cd, z) < 1e-15) break;

    std::vector<HPComplex> ch(n + 1);
    for (int i = 0; i <= n; ++i) ch[i] = HPComplex(HPReal(g[i]) / HPReal(g.leading()));
    std::vector<HPComplex> zh(z.begin(), z.end());
    const HPReal target("1e-46");
    HPReal last = 1;
    for (int it = 0; it < 200; ++it) {
        last = aberth_step<HPComplex, HPReal>(ch, zh);
        if (last < target) break;
    }
    if (last > HPReal("1e-30")) throw NonConvergence("root polishing did not converge", last.convert_to<double>());

    for (auto& r : zh)
        if (abs(r.imag()) < HPReal("1e-40") * (1 + abs(r))) r = HPComplex(r.real(), 0);
    return zh;
}

bool root_order(const HPRoot& a, const HPRoot& b) {
    double aa = std::arg(to_cplx(a.value)), ab = std::arg(to_cplx(b.value));
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    return abs(a.value) < abs(b.value);
}

}  // namespace

std::vector<HPRoot> roots_hp(const IntPoly& f) {
    if (f.degree() < 1) throw InvalidArgument("roots of a constant polynomial");
    std::vector<HPRoot> out;
    std::size_t k = f.low_order();
    if (k > 0) out.push_back({HPComplex(0), static_cast<int>(k)});
    IntPoly rest = f.divided_by_t_power(k);
    for (const auto& [factor, mult] : squarefree_decomposition(rest))
        for (auto& z : squarefree_roots(factor)) out.push_back({z, mult});
    std::sort(out.begin(), out.end(), root_order);
    return out;
}

std::vector<Root> roots(const IntPoly& f, double precision) {
    std::vector<Root> out;
    double scale = 0;
    for (const auto& c : f.coeffs()) scale = std::max(scale, abs(c).convert_to<double>());
    for (const auto& r : roots_hp(f)) {
        HPReal mag = 0;
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) mag += abs(HPReal(f[i])) * pow(abs(r.value), int(i));
        HPReal residual = abs(f.eval(r.value));
        if (residual > HPReal(precision) * (mag + scale))
            throw NonConvergence("root residual above requested precision", residual.convert_to<double>());
        out.push_back({to_cplx(r.value), r.multiplicity});
    }
    return out;
}

bool RootProfile::has_diophantine() const {
    return std::any_of(roots.begin(), roots.end(), [](const auto& r) { return r.cls == RootClass::Diophantine; });
}

std::vector<cplx> RootProfile::diophantine_roots() const {
    std::vector<cplx> out;
    for (const auto& r : roots)
        if (r.cls == RootClass::Diophantine) out.push_back(r.value);
    return out;
}

bool RootProfile::all_roots_of_unity() const {
    return std::all_of(roots.begin(), roots.end(), [](const auto& r) {
        return r.cls == RootClass::RootOfUnity || r.value == cplx(0);
    });
}

RootProfile classify_roots(const IntPoly& f, double eps_circle) {
    if (f.is_zero()) throw InvalidArgument("classify_roots of zero polynomial");
    RootProfile prof;
    prof.degree = f.degree();
    prof.leading_abs = abs(f.leading()).convert_to<double>();
    prof.zero_power = f.low_order();
    if (prof.zero_power > 0) {
        ClassifiedRoot z;
        z.value = 0;
        z.hp_value = 0;
        z.multiplicity = static_cast<int>(prof.zero_power);
        z.cls = RootClass::InsideDisc;
        z.provenance = Provenance::ExactCyclotomic;
        prof.roots.push_back(z);
    }

    IntPoly rest = f.divided_by_t_power(prof.zero_power);
    const unsigned long n = static_cast<unsigned long>(rest.degree());
    // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2 n^2
    for (unsigned long d = 1; n > 0 && d <= 2 * n * n + 2; ++d) {
        if (euler_phi(d) > static_cast<unsigned long>(rest.degree())) continue;
        IntPoly phi = cyclotomic(d);
        int mult = 0;
        while (rest.degree() >= phi.degree()) {
            auto q = divide_exact(rest, phi);
            if (!q) break;
            rest = std::move(*q);
            ++mult;
        }
        if (mult == 0) continue;
        prof.cyclotomic_factors.push_back({d, mult});
        for (unsigned long k = 1; k <= d; ++k) {
            if (std::gcd(k, d) != 1) continue;
            ClassifiedRoot r;
            HPReal angle = boost::math::constants::two_pi<HPReal>() * HPReal(k % d) / HPReal(d);
            r.hp_value = HPComplex(cos(angle), sin(angle));
            r.value = std::polar(1.0, kTwoPi * static_cast<double>(k % d) / static_cast<double>(d));
            r.multiplicity = mult;
            r.cls = RootClass::RootOfUnity;
            r.order = d;
            r.exponent = k % d;
            r.provenance = Provenance::ExactCyclotomic;
            prof.roots.push_back(r);
        }
    }

    double log_m = std::log(prof.leading_abs);
    if (rest.degree() >= 1) {
        for (const auto& hr : roots_hp(rest)) {
            ClassifiedRoot r;
            r.hp_value = hr.value;
            r.value = to_cplx(hr.value);
            r.multiplicity = hr.multiplicity;
            r.provenance = Provenance::Numeric;
            double mod = abs(hr.value).convert_to<double>();
            if (std::abs(mod - 1.0) <= eps_circle)
                r.cls = RootClass::Diophantine;
            else if (mod < 1.0)
                r.cls = RootClass::InsideDisc;
            else {
                r.cls = RootClass::OutsideDisc;
                log_m += r.multiplicity * log(abs(hr.value)).convert_to<double>();
            }
            prof.roots.push_back(r);
        }
    }
    prof.log_mahler = log_m;
    prof.mahler = std::exp(log_m);
    return prof;
}

}  // namespace tgf::poly
