#include "tgf/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "tgf/continuation.hpp"
#include "tgf/rxcore.hpp"

namespace tgf::torsion {

namespace {

using poly::ClassifiedRoot;
using poly::RootClass;
using poly::RootProfile;

RootProfile profile_without_boundary(const IntPoly& delta) {
    RootProfile prof = poly::classify_roots(delta);
    if (prof.has_diophantine())
        throw NaturalBoundary("unit-circle roots that are not roots of unity", prof.diophantine_roots());
    return prof;
}

bool is_zero_root(const ClassifiedRoot& b) { return b.value == cplx(0); }

// weight for summing R_beta over a conjugation-closed root list: R_beta = R_conj(beta)
int conjugate_weight(const ClassifiedRoot& b) {
    constexpr double tiny = 1e-14;
    if (b.value.imag() < -tiny * (1.0 + std::abs(b.value))) return 0;
    if (b.value.imag() > tiny * (1.0 + std::abs(b.value))) return 2;
    return 1;
}

double tolerance_at(cplx p) { return kPoleMergeTolerance * std::max(1.0, std::abs(p)); }

cplx power(cplx b, long n) {
    return std::polar(std::pow(std::abs(b), static_cast<double>(n)), static_cast<double>(n) * std::arg(b));
}

cplx richardson_limit(const std::vector<cplx>& samples) {
    // samples at h, h/2, h/4, ... with error a power series in h
    std::vector<cplx> t = samples;
    for (std::size_t level = 1; level < t.size(); ++level) {
        const double f = std::ldexp(1.0, static_cast<int>(level));
        for (std::size_t i = t.size() - 1; i >= level; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1.0);
    }
    return t.back();
}

cplx rational_residue_sum(unsigned long order, cplx p) {
    cplx s = 0;
    for (unsigned long k = 1; k <= order; ++k) {
        if (std::gcd(k % order, order) != 1) continue;
        s += rx::rational_form(rx::RootOfUnity{order, k % order}).residue(p);
    }
    return s;
}

}  // namespace

std::vector<std::string> input_warnings(const IntPoly& delta) {
    std::vector<std::string> out;
    if (delta.is_zero()) return {"zero polynomial"};
    const BigInt at_one = delta.eval(BigInt(1));
    if (abs(at_one) != 1) out.push_back("delta(1) = " + to_decimal(at_one) + ", not +-1");
    if (!delta.divided_by_t_power(delta.low_order()).is_reciprocal()) out.push_back("polynomial is not reciprocal");
    return out;
}

BigInt fox_torsion(const IntPoly& delta, unsigned long r) {
    if (delta.is_zero()) throw ZeroInput("fox_torsion of the zero polynomial");
    if (r == 0) throw InvalidArgument("r must be positive");
    return abs(poly::resultant_exact(delta, poly::t_power_minus_one(r)));
}

BigInt reduced_torsion(const IntPoly& delta, unsigned long r) {
    BigInt full = fox_torsion(delta, r);
    if (full != 0) return full;
    IntPoly g = delta;
    for (unsigned long d = 1; d <= r; ++d) {
        if (r % d) continue;
        const IntPoly phi = poly::cyclotomic(d);
        if (phi.degree() > g.degree()) continue;
        while (auto q = poly::divide_exact(g, phi)) g = std::move(*q);
    }
    return abs(poly::resultant_exact(g, poly::t_power_minus_one(r)));
}

TorsionTable torsion_table(const IntPoly& delta, unsigned long r_max) {
    TorsionTable t;
    for (unsigned long r = 1; r <= r_max; ++r) {
        BigInt v = fox_torsion(delta, r);
        if (v == 0) t.omitted.insert(r);
        t.entries.emplace(r, std::move(v));
    }
    return t;
}

double log_torsion_float(const IntPoly& delta, unsigned long r) {
    const RootProfile prof = poly::classify_roots(delta);
    double s = static_cast<double>(r) * std::log(prof.leading_abs);
    for (const ClassifiedRoot& b : prof.roots) {
        if (is_zero_root(b)) continue;
        if (b.cls == RootClass::RootOfUnity) {
            const double a = rx::log_abs_one_minus_power(rx::RootOfUnity{b.order, b.exponent}, r);
            if (!std::isinf(a)) s += b.multiplicity * a;
            continue;
        }
        s += b.multiplicity * rx::log_abs_one_minus_power(b.value, r);
    }
    return s;
}

std::vector<ESeriesTerm> e_series(const IntPoly& delta, unsigned long n_terms, unsigned long exact_cap) {
    const RootProfile prof = poly::classify_roots(delta);
    std::vector<ESeriesTerm> out;
    out.reserve(n_terms);
    for (unsigned long r = 1; r <= n_terms; ++r) {
        bool omitted = false;
        for (const auto& c : prof.cyclotomic_factors)
            if (r % c.order == 0) omitted = true;
        if (r <= exact_cap) {
            const BigInt v = reduced_torsion(delta, r);
            out.push_back({r, log_abs(v), omitted, true});
        } else {
            out.push_back({r, log_torsion_float(delta, r), omitted, false});
        }
    }
    return out;
}

EvalResult e_continued(const IntPoly& delta, cplx z, const cont::ContinuationParams& params) {
    return e_continued(profile_without_boundary(delta), z, params);
}

EvalResult e_continued(const RootProfile& prof, cplx z, const cont::ContinuationParams& params) {
    if (prof.has_diophantine())
        throw NaturalBoundary("unit-circle roots that are not roots of unity", prof.diophantine_roots());
    EvalResult out{0.0, 0.0, 0};
    if (z == cplx(0)) return out;
    if (prof.log_mahler > 0.0) {
        if (std::abs(z - 1.0) < 1e-12) throw PoleHit("double pole of E at z = 1", cplx(1.0));
        out.value += prof.log_mahler * z / ((z - 1.0) * (z - 1.0));
    }
    for (const ClassifiedRoot& b : prof.roots) {
        if (is_zero_root(b)) continue;
        if (b.cls == RootClass::RootOfUnity) {
            if (b.order == 1) continue;
            EvalResult e = rx::rx_root_of_unity(rx::RootOfUnity{b.order, b.exponent}, z);
            out.value += static_cast<double>(b.multiplicity) * e.value;
            out.terms_used += e.terms_used;
            continue;
        }
        const int w = conjugate_weight(b);
        if (w == 0) continue;
        const cplx x = (b.cls == RootClass::InsideDisc) ? b.value : 1.0 / b.value;
        try {
            EvalResult e = cont::rx_continued(x, z, params);
            const double weight = static_cast<double>(w * b.multiplicity);
            out.value += weight * e.value;
            out.tail_bound += weight * e.tail_bound;
            out.terms_used += e.terms_used;
        } catch (const PoleHit& hit) {
            throw PoleHit("pole of E", hit.location, b.value, hit.exponent);
        }
    }
    return out;
}

std::vector<PoleReport> pole_set(const IntPoly& delta, double radius_max, bool with_residues) {
    const RootProfile prof = profile_without_boundary(delta);
    std::vector<PoleReport> poles;
    auto add = [&](cplx loc, cplx gen, long n) {
        if (std::abs(loc - 1.0) < tolerance_at(loc)) return;  // z = 1 handled below
        for (const auto& p : poles)
            if (std::abs(p.location - loc) < tolerance_at(loc)) return;
        poles.push_back({loc, 1, gen, n, std::nullopt});
    };
    bool has_unit_orbit = false;
    std::optional<cplx> one_generator;
    for (const ClassifiedRoot& b : prof.roots) {
        if (is_zero_root(b)) continue;
        const double mod = std::abs(b.value);
        if (b.cls == RootClass::RootOfUnity) {
            if (b.order < 2) continue;
            has_unit_orbit = true;
            if (!one_generator) one_generator = b.value;
            for (unsigned long n = 1; n < b.order; ++n)
                add(std::polar(1.0, kTwoPi * static_cast<double>((b.exponent * n) % b.order) /
                                        static_cast<double>(b.order)),
                    b.value, static_cast<long>(n));
            continue;
        }
        const long sign = (b.cls == RootClass::InsideDisc) ? -1 : 1;
        const double step = std::abs(std::log(mod));
        const long k_max = static_cast<long>(std::floor(std::log(radius_max) / step + 1e-12));
        for (long k = 1; k <= k_max; ++k) add(power(b.value, sign * k), b.value, sign * k);
        if (b.cls == RootClass::OutsideDisc && !one_generator) one_generator = b.value;
    }
    if (radius_max >= 1.0) {
        if (prof.log_mahler > 1e-12)
            poles.push_back({1.0, 2, one_generator, 0, std::nullopt});
        else if (has_unit_orbit)
            poles.push_back({1.0, 1, one_generator, 0, std::nullopt});
    }
    std::sort(poles.begin(), poles.end(), [](const PoleReport& a, const PoleReport& b) {
        const double ma = std::abs(a.location), mb = std::abs(b.location);
        if (std::abs(ma - mb) > 1e-12) return ma < mb;
        return std::arg(a.location) < std::arg(b.location);
    });
    if (with_residues)
        for (auto& p : poles) {
            try {
                p.residue = residue_at(delta, p.location);
            } catch (const NotAPole&) {
                p.residue = 0.0;
                p.removable = true;
            }
        }
    return poles;
}

cplx residue_at(const IntPoly& delta, cplx p) {
    if (std::abs(p - 1.0) < tolerance_at(p)) {
        const RootProfile prof = profile_without_boundary(delta);
        if (prof.log_mahler > 1e-12) return laurent_at_one(delta).c_minus1;
    }
    const RootProfile prof = profile_without_boundary(delta);
    std::vector<cplx> samples;
    for (int j = 6; j <= 12; ++j) {
        const double h = std::ldexp(1.0, -j);
        const cplx z = p * (1.0 + h);
        samples.push_back((z - p) * e_continued(prof, z).value);
    }
    const cplx limit = richardson_limit(samples);
    if (std::abs(limit) < 1e-8) throw NotAPole("residue vanishes; not a pole");
    return limit;
}

LaurentAtOne laurent_at_one(const IntPoly& delta) {
    const RootProfile prof = profile_without_boundary(delta);
    LaurentAtOne l;
    l.c_minus2 = prof.log_mahler;
    l.c_minus1 = prof.log_mahler;
    for (const ClassifiedRoot& b : prof.roots) {
        if (is_zero_root(b)) continue;
        const double mult = b.multiplicity;
        if (b.cls == RootClass::RootOfUnity) {
            if (b.order < 2) continue;
            const rx::LaurentAtOne part = rx::rx_laurent_at_one_rootofunity(b.order);
            l.c_minus1 += mult * part.residue;
            l.c_0 += mult * part.constant;
            continue;
        }
        const cplx x = (b.cls == RootClass::InsideDisc) ? b.value : 1.0 / b.value;
        l.c_0 -= mult * rx::log_abs_F(x).value;
    }
    return l;
}

LaurentNumeric laurent_numeric(const IntPoly& delta, int k_max, double rho, int nodes) {
    if (k_max < -2 || nodes < 8 || !(rho > 0)) throw InvalidArgument("laurent_numeric needs k_max >= -2, rho > 0");
    // keep every other pole outside twice the contour radius
    const auto poles = pole_set(delta, 1.0 + 4.0 * rho, false);
    for (const auto& p : poles) {
        const double d = std::abs(p.location - 1.0);
        if (d > 1e-9) rho = std::min(rho, 0.5 * d);
    }
    const RootProfile prof = profile_without_boundary(delta);
    std::vector<cplx> values(static_cast<std::size_t>(nodes));
    std::vector<cplx> u(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        u[j] = std::polar(rho, kTwoPi * j / nodes);
        values[j] = e_continued(prof, 1.0 + u[j]).value;
    }
    LaurentNumeric out;
    out.rho = rho;
    for (int k = -2; k <= k_max; ++k) {
        CompensatedSum<cplx> acc;
        for (int j = 0; j < nodes; ++j) acc.add(values[j] * std::pow(u[j], -k));
        out.coeffs.push_back(acc.value() / static_cast<double>(nodes));
    }
    return out;
}

Slope silver_williams_slope(const IntPoly& delta, unsigned long r_max) {
    const RootProfile prof = poly::classify_roots(delta);
    Slope s;
    s.reference = prof.log_mahler;
    for (unsigned long r = r_max; r >= 1; --r) {
        const BigInt v = fox_torsion(delta, r);
        if (v == 0) continue;
        s.slope = log_abs(v) / static_cast<double>(r);
        s.r_used = r;
        break;
    }
    return s;
}

GordonVerdict gordon_classify(const IntPoly& delta) {
    const RootProfile prof = poly::classify_roots(delta);
    GordonVerdict v;
    v.evidence = prof.cyclotomic_factors;
    v.periodic = prof.all_roots_of_unity() && prof.leading_abs == 1.0;
    if (v.periodic) {
        unsigned long m = 1;
        for (const auto& c : prof.cyclotomic_factors) m = std::lcm(m, c.order);
        v.period = m;
    }
    return v;
}

namespace {

// rank at 50 digits, so exponentially small components of the sequence still count
int numerical_rank(const std::vector<HPReal>& seq, int n) {
    using Mat = Eigen::Matrix<HPReal, Eigen::Dynamic, Eigen::Dynamic>;
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = seq.at(static_cast<std::size_t>(i + j));
    Eigen::FullPivLU<Mat> lu(h);
    lu.setThreshold(HPReal("1e-35"));
    return static_cast<int>(lu.rank());
}

}  // namespace

GordonWitness gordon_witness(const IntPoly& delta, unsigned long r_max, int hankel_size) {
    GordonWitness w;
    const GordonVerdict verdict = gordon_classify(delta);
    const unsigned long needed = std::max<unsigned long>(r_max, 2 * static_cast<unsigned long>(hankel_size));
    std::vector<HPReal> logs;
    std::vector<BigInt> exact;
    for (unsigned long r = 1; r <= needed; ++r) {
        exact.push_back(reduced_torsion(delta, r));
        logs.push_back(log(HPReal(exact.back())));
    }
    const unsigned long m = verdict.period.value_or(1);
    w.torsion_periodic = true;
    for (unsigned long r = 1; r + m <= r_max; ++r)
        if (exact[r - 1] != exact[r + m - 1]) w.torsion_periodic = false;
    w.hankel_rank_small = numerical_rank(logs, hankel_size / 2);
    w.hankel_rank_large = numerical_rank(logs, hankel_size);
    const auto small = pole_set(delta, 2.0, false);
    const auto large = pole_set(delta, 8.0, false);
    w.poles_small = small.size();
    w.poles_large = large.size();
    for (const auto& p : small)
        if (std::abs(p.location - 1.0) < 1e-9) w.pole_at_one_simple = (p.order == 1);
    const PeriodicRational f = periodic_rational_form(delta);
    w.matches_rational_form = true;
    for (int j = 0; j < 10; ++j) {
        const cplx z = std::polar(0.3 + 0.25 * j, 0.7 + 1.3 * j);
        const cplx a = e_continued(delta, z).value, b = f.eval(z);
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) w.matches_rational_form = false;
    }
    return w;
}

PeriodicPart periodic_part_and_bound(const IntPoly& delta) {
    const RootProfile prof = profile_without_boundary(delta);
    PeriodicPart out;
    out.log_mahler = prof.log_mahler;
    for (const auto& c : prof.cyclotomic_factors) out.period = std::lcm(out.period, c.order);
    out.values.assign(out.period, 0.0);
    for (unsigned long r = 1; r <= out.period; ++r) {
        double s = 0;
        for (const ClassifiedRoot& b : prof.roots) {
            if (b.cls != RootClass::RootOfUnity) continue;
            const double a = rx::log_abs_one_minus_power(rx::RootOfUnity{b.order, b.exponent}, r);
            if (!std::isinf(a)) s += b.multiplicity * a;
        }
        out.values[r % out.period] = s;
    }
    std::vector<std::pair<double, int>> moduli;
    for (const ClassifiedRoot& b : prof.roots) {
        if (is_zero_root(b) || b.cls == RootClass::RootOfUnity) continue;
        const double q = std::abs(b.value);
        moduli.emplace_back(q < 1.0 ? q : 1.0 / q, b.multiplicity);
    }
    out.bound = [moduli](unsigned long r) {
        double s = 0;
        for (auto [q, mult] : moduli) {
            const double qr = std::pow(q, static_cast<double>(r));
            s += mult * qr / (1.0 - qr);
        }
        return s;
    };
    return out;
}

double periodic_bound_slack(const IntPoly& delta, unsigned long r_max) {
    const PeriodicPart part = periodic_part_and_bound(delta);
    double worst = -std::numeric_limits<double>::infinity();
    for (unsigned long r = 1; r <= r_max; ++r) {
        const double lt = log_abs(reduced_torsion(delta, r));
        const double err = std::abs(lt - (part.periodic_value(r) + static_cast<double>(r) * part.log_mahler));
        worst = std::max(worst, err - part.bound(r));
    }
    return worst;
}

cplx PeriodicRational::eval(cplx z) const {
    cplx num = 0, zl = 1;
    for (unsigned long l = 1; l <= period; ++l) {
        zl *= z;
        num += numerator[l] * zl;
    }
    if (std::abs(1.0 - zl) < 1e-12) throw PoleHit("pole of the periodic rational form", z);
    return num / (1.0 - zl);
}

PeriodicRational periodic_rational_form(const IntPoly& delta) {
    const PeriodicPart part = periodic_part_and_bound(delta);
    PeriodicRational f;
    f.period = part.period;
    f.numerator.assign(part.period + 1, 0.0);
    for (unsigned long l = 1; l <= part.period; ++l) f.numerator[l] = part.periodic_value(l);
    return f;
}

ReconstructedRoots fried_reconstruct(const std::vector<PoleReport>& poles) {
    ReconstructedRoots out;
    std::vector<const PoleReport*> outside, circle;
    for (const auto& p : poles) {
        if (!p.residue) throw InvalidArgument("fried_reconstruct needs residues");
        const double mod = std::abs(p.location);
        if (std::abs(p.location - 1.0) < 1e-9) continue;
        if (mod > 1.0 + 1e-9)
            outside.push_back(&p);
        else
            circle.push_back(&p);
    }
    std::sort(outside.begin(), outside.end(),
              [](auto a, auto b) { return std::abs(a->location) < std::abs(b->location); });
    for (const PoleReport* p : outside) {
        const cplx loc = p->location;
        cplx expected = 0;
        for (const auto& [g, c] : out.generators) {
            const double k = std::round(std::log(std::abs(loc)) / std::log(std::abs(g)));
            if (k < 1) continue;
            if (std::abs(power(g, static_cast<long>(k)) - loc) < tolerance_at(loc) * 10) expected += c / k;
        }
        const cplx rest = *p->residue / loc - expected;
        if (std::abs(rest) < 0.25) continue;
        const double n = std::round(rest.real());
        if (std::abs(rest - n) > 0.1 || n < 1)
            throw AmbiguousGenerators("residue at " + std::to_string(loc.real()) + "+" + std::to_string(loc.imag()) +
                                      "i is not an integer combination of generator powers");
        out.generators.emplace_back(loc, static_cast<int>(n));
    }
    for (const auto& [g, c] : out.generators) {
        for (int i = 0; i < (c + 1) / 2; ++i) out.roots.push_back(g);
        for (int i = 0; i < c / 2; ++i) out.roots.push_back(1.0 / g);
    }

    if (circle.empty()) return out;
    // orders m >= 2 whose whole orbit mu_m lies in the pole set
    auto present = [&](cplx z) {
        if (std::abs(z - 1.0) < 1e-9) return true;
        return std::any_of(circle.begin(), circle.end(), [&](auto p) { return std::abs(p->location - z) < 1e-8; });
    };
    std::vector<unsigned long> orders;
    for (unsigned long m = 2; m <= circle.size() + 1; ++m) {
        bool all = true;
        for (unsigned long k = 1; k < m && all; ++k) all = present(std::polar(1.0, kTwoPi * double(k) / double(m)));
        if (all) orders.push_back(m);
    }
    if (orders.empty()) throw AmbiguousGenerators("unit-circle poles do not form root-of-unity orbits");
    const Eigen::Index rows = 2 * static_cast<Eigen::Index>(circle.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(orders.size());
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (std::size_t i = 0; i < circle.size(); ++i) {
        const cplx loc = circle[i]->location;
        rhs(2 * i) = circle[i]->residue->real();
        rhs(2 * i + 1) = circle[i]->residue->imag();
        for (std::size_t j = 0; j < orders.size(); ++j) {
            // a primitive order-m root has poles only at the m-th roots of unity
            const double turns = std::arg(loc) / kTwoPi * static_cast<double>(orders[j]);
            const bool on_orbit = std::abs(turns - std::round(turns)) < 1e-8;
            const cplx r = on_orbit ? rational_residue_sum(orders[j], loc) : cplx(0);
            a(2 * i, j) = r.real();
            a(2 * i + 1, j) = r.imag();
        }
    }
    const Eigen::VectorXd n = a.colPivHouseholderQr().solve(rhs);
    Eigen::VectorXd rounded = n.array().round();
    const double misfit = (a * rounded - rhs).norm();
    if (misfit > 1e-5 * std::max(1.0, rhs.norm()) || (rounded.array() < 0).any())
        throw AmbiguousGenerators("unit-circle residues are not an integer combination of cyclotomic orbits");
    for (std::size_t j = 0; j < orders.size(); ++j) {
        const int cnt = static_cast<int>(rounded(static_cast<Eigen::Index>(j)));
        if (cnt == 0) continue;
        out.root_of_unity_orders.emplace_back(orders[j], cnt);
        for (unsigned long k = 1; k < orders[j]; ++k) {
            if (std::gcd(k, orders[j]) != 1) continue;
            for (int c = 0; c < cnt; ++c) out.roots.push_back(std::polar(1.0, kTwoPi * double(k) / double(orders[j])));
        }
    }
    return out;
}

BigRational reidemeister_tau(const std::vector<IntPoly>& deltas, unsigned long r) {
    if (deltas.empty()) throw InvalidArgument("reidemeister_tau needs at least one polynomial");
    BigRational tau = 1;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const BigInt v = fox_torsion(deltas[i], r);
        if (v == 0)
            throw RootOfUnityCollision("polynomial " + std::to_string(i + 1) + " has a root of order dividing " +
                                       std::to_string(r));
        if (i % 2 == 0)
            tau *= BigRational(v);
        else
            tau /= BigRational(v);
    }
    return tau;
}

EvalResult j_continued(const std::vector<IntPoly>& deltas, cplx z) {
    EvalResult out{0.0, 0.0, 0};
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const EvalResult e = e_continued(deltas[i], z);
        out.value += (i % 2 == 0 ? 1.0 : -1.0) * e.value;
        out.tail_bound += e.tail_bound;
        out.terms_used += e.terms_used;
    }
    return out;
}

}  // namespace tgf::torsion
