#include <CLI11.hpp>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <thread>

#include "tgf/boundary.hpp"
#include "tgf/continuation.hpp"
#include "tgf/lvalues.hpp"
#include "tgf/polyalg.hpp"
#include "tgf/resultants.hpp"
#include "tgf/torsion.hpp"

using json = nlohmann::ordered_json;
using namespace tgf;
using poly::IntPoly;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBoundary = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    double tail_tol = 1e-10;
    std::size_t max_terms = 100000;
    unsigned threads = 1;
    bool csv = false;
    unsigned precision_bits = 128;

    cont::ContinuationParams params() const {
        cont::ContinuationParams p;
        p.tail_tol = tail_tol;
        p.max_terms = max_terms;
        return p;
    }
};

IntPoly parse_poly(const std::string& s) {
    try {
        IntPoly f = IntPoly::parse(s);
        if (f.is_zero()) throw UsageError("zero polynomial");
        return f;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("cannot parse polynomial '" + s + "': " + e.what());
    }
}

// "0.5", "-1.2e-3", "0.5+0.2i", "1-2i", "2i", "-i"
cplx parse_complex(const std::string& s) {
    static const std::regex re_num(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
    static const std::regex re_imag(R"(\s*([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\s*\*?\s*[ij]\s*)");
    static const std::regex re_both(
        R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*[ij]\s*)");
    std::smatch m;
    auto coef = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (std::regex_match(s, m, re_num)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, re_imag)) return {0.0, coef(m[1])};
    if (std::regex_match(s, m, re_both)) {
        const double im = m[3].matched ? std::stod(m[3]) : 1.0;
        return {std::stod(m[1]), m[2] == "-" ? -im : im};
    }
    throw UsageError("cannot parse complex number '" + s + "'");
}

BigRational parse_rational(const std::string& s) {
    static const std::regex re(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("cannot parse rational '" + s + "'");
    const BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
    if (den == 0) throw UsageError("zero denominator in '" + s + "'");
    return BigRational(BigInt(m[1].str()), den);
}

struct ThetaSpec {
    HPReal turns;
    bool from_roots = false;
};

// decimal turns, or root:<poly>:<i> (argument of root i), or root:<poly>:<i>/<j> (argument of v_i / v_j);
// roots are indexed in the order of increasing modulus, then argument
ThetaSpec parse_theta(const std::string& s) {
    static const std::regex re_dec(R"(\s*[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\s*)");
    static const std::regex re_root(R"(root:([^:]+):(\d+)(?:/(\d+))?)");
    std::smatch m;
    const HPReal two_pi = 2 * boost::math::constants::pi<HPReal>();
    if (std::regex_match(s, re_dec)) {
        HPReal t(s);
        return {t - floor(t), false};
    }
    if (std::regex_match(s, m, re_root)) {
        const IntPoly f = parse_poly(m[1]);
        const auto roots = poly::roots_hp(f);
        std::vector<HPComplex> list;
        for (const auto& r : roots)
            for (int k = 0; k < r.multiplicity; ++k) list.push_back(r.value);
        const std::size_t i = std::stoul(m[2]);
        if (i >= list.size()) throw UsageError("root index out of range in '" + s + "'");
        HPComplex v = list[i];
        if (m[3].matched) {
            const std::size_t j = std::stoul(m[3]);
            if (j >= list.size()) throw UsageError("root index out of range in '" + s + "'");
            v = v / list[j];
        }
        if (abs(v) == 0) throw UsageError("the zero root has no angle");
        HPReal a = atan2(v.imag(), v.real()) / two_pi;
        if (a < 0) a += 1;
        return {a, true};
    }
    throw UsageError("cannot parse theta spec '" + s + "' (decimal, root:<poly>:<i> or root:<poly>:<i>/<j>)");
}

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string decimal(const BigInt& n) { return to_decimal(n); }

json poly_json(const IntPoly& f) {
    json c = json::array();
    for (const auto& x : f.coeffs()) c.push_back(decimal(x));
    return {{"coefficients", c}, {"pretty", f.pretty()}};
}

const char* class_name(poly::RootClass c) {
    switch (c) {
        case poly::RootClass::InsideDisc: return "inside";
        case poly::RootClass::OutsideDisc: return "outside";
        case poly::RootClass::RootOfUnity: return "root_of_unity";
        case poly::RootClass::Diophantine: return "diophantine";
    }
    return "unknown";
}

std::string turns_string(const HPReal& t) { return t.str(30, std::ios_base::fixed); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- verbs ----

json pole_json(const torsion::PoleReport& p) {
    json j{{"location", cjson(p.location)}, {"order", p.order}};
    j["generator"] = p.generator ? cjson(*p.generator) : json(nullptr);
    j["exponent"] = p.exponent;
    j["residue"] = p.residue ? cjson(*p.residue) : json(nullptr);
    j["removable"] = p.removable;
    return j;
}

int cmd_analyze(const std::string& text, unsigned long r_max, double radius) {
    const IntPoly f = parse_poly(text);
    json j;
    j["polynomial"] = poly_json(f);
    j["warnings"] = torsion::input_warnings(f);
    const auto prof = poly::classify_roots(f);
    json roots = json::array();
    for (const auto& r : prof.roots) {
        json e{{"value", cjson(r.value)}, {"modulus", std::abs(r.value)}, {"class", class_name(r.cls)},
               {"multiplicity", r.multiplicity}};
        if (r.cls == poly::RootClass::RootOfUnity) {
            e["order"] = r.order;
            e["exponent"] = r.exponent;
        }
        roots.push_back(e);
    }
    j["roots"] = roots;
    j["mahler"] = prof.mahler;
    j["log_mahler"] = prof.log_mahler;
    const auto g = torsion::gordon_classify(f);
    json factors = json::array();
    for (const auto& c : g.evidence) factors.push_back({{"order", c.order}, {"multiplicity", c.multiplicity}});
    j["gordon"] = {{"periodic", g.periodic},
                   {"period", g.period ? json(*g.period) : json(nullptr)},
                   {"cyclotomic_factors", factors}};
    const auto table = torsion::torsion_table(f, r_max);
    json rows = json::array();
    for (const auto& [r, v] : table.entries)
        rows.push_back({{"r", r}, {"torsion", decimal(v)}, {"omitted", table.omitted.count(r) > 0}});
    j["torsion"] = rows;
    if (prof.has_diophantine()) {
        json d = json::array();
        std::size_t idx = 0;
        for (const auto& r : prof.roots) {
            if (r.cls != poly::RootClass::Diophantine) continue;
            HPReal a = atan2(r.hp_value.imag(), r.hp_value.real()) / (2 * boost::math::constants::pi<HPReal>());
            if (a < 0) a += 1;
            d.push_back({{"value", cjson(r.value)}, {"turns", turns_string(a)}});
            ++idx;
        }
        j["laurent"] = nullptr;
        j["poles"] = nullptr;
        j["diophantine"] = {
            {"roots", d},
            {"note", "the unit circle is a natural boundary of E; no continuation, poles or Laurent data"},
            {"radial_limit", "tgf radial " + text + " --at root:" + text + ":<i> --power <m>"}};
    } else {
        const auto l = torsion::laurent_at_one(f);
        j["laurent"] = {{"c_minus2", l.c_minus2}, {"c_minus1", l.c_minus1}, {"c_0", l.c_0}};
        json poles = json::array();
        for (const auto& p : torsion::pole_set(f, radius)) poles.push_back(pole_json(p));
        j["poles"] = poles;
        j["diophantine"] = nullptr;
    }
    emit(j);
    return 0;
}

enum class Quantity { ESeriesPartial, EContinued, RxContinued, TfContinued };

struct Evaluator {
    Quantity q;
    IntPoly f;
    cplx x = 0;
    std::size_t terms = 300;
    cont::ContinuationParams params;
    std::optional<poly::RootProfile> prof;
    std::vector<double> series;

    Evaluator(Quantity q_, IntPoly f_, cplx x_, std::size_t terms_, cont::ContinuationParams p)
        : q(q_), f(std::move(f_)), x(x_), terms(terms_), params(p) {
        if (q == Quantity::ESeriesPartial) {
            for (const auto& t : torsion::e_series(f, terms)) series.push_back(t.log_value);
        } else if (q != Quantity::RxContinued) {
            prof = poly::classify_roots(f);
            if (prof->has_diophantine())
                throw NaturalBoundary("the unit circle is a natural boundary; only E_series_partial is available",
                                      prof->diophantine_roots());
        }
    }

    EvalResult operator()(cplx z) const {
        switch (q) {
            case Quantity::ESeriesPartial: {
                cplx s = 0, zr = 1;
                for (double c : series) {
                    zr *= z;
                    s += c * zr;
                }
                return {s, 0.0, series.size()};
            }
            case Quantity::RxContinued: return cont::rx_continued(x, z, params);
            default: return torsion::e_continued(*prof, z, params);
        }
    }

    std::vector<cplx> poles(double radius) const {
        std::vector<cplx> out;
        if (q == Quantity::ESeriesPartial) return out;
        if (q == Quantity::RxContinued) {
            if (std::abs(std::abs(x) - 1.0) < 1e-9) return out;
            const cplx y = std::abs(x) < 1 ? x : 1.0 / x;
            if (std::abs(x) > 1) out.push_back(1.0);
            for (cplx p = 1.0 / y; std::abs(p) <= radius; p /= y) {
                out.push_back(p);
                out.push_back(std::conj(p));
            }
            return out;
        }
        for (const auto& p : torsion::pole_set(f, radius, false)) out.push_back(p.location);
        return out;
    }
};

Quantity parse_quantity(const std::string& s) {
    if (s == "E_series_partial") return Quantity::ESeriesPartial;
    if (s == "E_continued") return Quantity::EContinued;
    if (s == "R_x_continued") return Quantity::RxContinued;
    if (s == "T_f_continued") return Quantity::TfContinued;
    throw UsageError("unknown quantity '" + s + "'");
}

double take_part(cplx v, const std::string& part) {
    if (part == "re") return v.real();
    if (part == "im") return v.imag();
    if (part == "abs") return std::abs(v);
    if (part == "log_abs") return std::log(std::abs(v));
    throw UsageError("unknown part '" + part + "'");
}

int cmd_eval(const Globals& g, const std::string& text, const std::string& zs, const std::string& qs,
             const std::string& xs, std::size_t terms) {
    const Quantity q = parse_quantity(qs);
    const cplx x = q == Quantity::RxContinued ? parse_complex(xs) : cplx(0);
    const Evaluator ev(q, parse_poly(text), x, terms, g.params());
    const cplx z = parse_complex(zs);
    const EvalResult r = ev(z);
    json j{{"quantity", qs}, {"z", cjson(z)}, {"value", cjson(r.value)}, {"tail_bound", r.tail_bound},
           {"terms_used", r.terms_used}};
    if (q == Quantity::RxContinued) j["x"] = cjson(x);
    emit(j);
    return 0;
}

int cmd_grid(const Globals& g, const std::string& text, double re0, double re1, double im0, double im1,
             std::size_t nx, std::size_t ny, const std::string& qs, const std::string& xs, std::size_t terms,
             const std::string& part, const std::string& out_path) {
    if (nx < 2 || ny < 2) throw UsageError("grid needs nx, ny >= 2");
    const Quantity q = parse_quantity(qs);
    const cplx x = q == Quantity::RxContinued ? parse_complex(xs) : cplx(0);
    take_part(1.0, part);
    const Evaluator ev(q, parse_poly(text), x, terms, g.params());
    const double radius = std::hypot(std::max(std::abs(re0), std::abs(re1)), std::max(std::abs(im0), std::abs(im1))) + 1;
    const auto poles = ev.poles(radius);
    std::vector<std::string> cells(nx * ny);
    auto work = [&](unsigned t) {
        for (std::size_t row = t; row < ny; row += std::max(1u, g.threads)) {
            const double im = im0 + (im1 - im0) * static_cast<double>(row) / static_cast<double>(ny - 1);
            for (std::size_t col = 0; col < nx; ++col) {
                const double re = re0 + (re1 - re0) * static_cast<double>(col) / static_cast<double>(nx - 1);
                const cplx z(re, im);
                std::string value = "POLE";
                const bool near = std::any_of(poles.begin(), poles.end(), [&](cplx p) { return std::abs(z - p) < 1e-6; });
                if (!near) {
                    try {
                        std::ostringstream os;
                        os.precision(17);
                        os << take_part(ev(z).value, part);
                        value = os.str();
                    } catch (const PoleHit&) {
                    }
                }
                std::ostringstream line;
                line.precision(17);
                line << re << "," << im << "," << value;
                cells[row * nx + col] = line.str();
            }
        }
    };
    const unsigned threads = std::max(1u, g.threads);
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw UsageError("cannot open '" + out_path + "' for writing");
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    os << "re,im,value\n";
    for (const auto& c : cells) os << c << "\n";
    return 0;
}

int cmd_torsion(const Globals& g, const std::string& text, unsigned long r_max) {
    const IntPoly f = parse_poly(text);
    const auto table = torsion::torsion_table(f, r_max);
    if (g.csv) {
        std::cout << "r,torsion,log_torsion,omitted\n";
        for (const auto& [r, v] : table.entries)
            std::cout << r << "," << decimal(v) << "," << (v == 0 ? std::string("") : std::to_string(log_abs(v))) << ","
                      << (table.omitted.count(r) ? 1 : 0) << "\n";
        return 0;
    }
    json j;
    j["polynomial"] = poly_json(f);
    json rows = json::array();
    for (const auto& [r, v] : table.entries) {
        json e{{"r", r}, {"torsion", decimal(v)}, {"omitted", table.omitted.count(r) > 0}};
        e["log_torsion"] = v == 0 ? json(nullptr) : json(log_abs(v));
        rows.push_back(e);
    }
    j["entries"] = rows;
    const auto prof = poly::classify_roots(f);
    j["log_mahler"] = prof.log_mahler;
    if (r_max >= 4) {
        const auto s = torsion::silver_williams_slope(f, r_max);
        j["slope"] = {{"slope", s.slope}, {"reference", s.reference}, {"r_used", s.r_used}};
    } else {
        j["slope"] = nullptr;
    }
    emit(j);
    return 0;
}

int cmd_average(const Globals& g, const std::string& theta_s, const std::string& m_s, std::size_t N,
                const std::string& alpha_s, const std::string& conv) {
    const ThetaSpec theta = parse_theta(theta_s);
    const BigRational m = parse_rational(m_s);
    boundary::AverageSpec spec;
    spec.theta = boundary::Turns::from(theta.turns);
    if (!alpha_s.empty()) spec.alpha = boundary::Turns::from(parse_theta(alpha_s).turns);
    spec.m_num = static_cast<long>(numerator(m));
    spec.m_den = static_cast<long>(denominator(m));
    spec.N = N;
    spec.threads = g.threads;
    if (conv == "product")
        spec.convention = boundary::PhaseConvention::Product;
    else if (conv == "fractional")
        spec.convention = boundary::PhaseConvention::FractionalPart;
    else
        throw UsageError("convention must be product or fractional");
    const cplx v = boundary::ergodic_average(spec);
    json j{{"theta", turns_string(theta.turns)}, {"m", m.str()}, {"N", N}, {"convention", conv}};
    j["alpha"] = alpha_s.empty() ? json(nullptr) : json(turns_string(parse_theta(alpha_s).turns));
    j["value"] = cjson(v);
    // the limit the theorems predict when theta (and alpha) are irrational and independent
    cplx limit = 0;
    if (alpha_s.empty() || m == 0) {
        if (spec.m_den == 1)
            limit = boundary::w_integral(spec.m_num);
        else if (spec.convention == boundary::PhaseConvention::FractionalPart)
            limit = boundary::w_fractional(m);
    }
    j["predicted_limit"] = cjson(limit);
    j["rate"] = "convergence holds without a proven rate; compare against predicted_limit empirically";
    emit(j);
    return 0;
}

int cmd_cyclic(const Globals& g, const std::string& f_s, const std::string& g_s, std::size_t M) {
    const IntPoly f = parse_poly(f_s);
    const auto rf = res::cyclic_resultants(f, M);
    if (g.csv) {
        std::cout << "m,r_m\n";
        for (std::size_t i = 0; i < M; ++i) std::cout << i + 1 << "," << decimal(rf[i]) << "\n";
        return 0;
    }
    json j;
    j["f"] = poly_json(f);
    j["M"] = M;
    json a = json::array();
    for (const auto& r : rf) a.push_back(decimal(r));
    j["resultants"] = a;
    if (!g_s.empty()) {
        const IntPoly h = parse_poly(g_s);
        j["g"] = poly_json(h);
        json b = json::array();
        for (const auto& r : res::cyclic_resultants(h, M)) b.push_back(decimal(r));
        j["g_resultants"] = b;
        try {
            j["hillar_equal"] = res::hillar_equal(f, h, M);
        } catch (const ZeroResultant& e) {
            j["hillar_equal"] = nullptr;
            j["zero_resultant_at"] = e.m;
        }
        try {
            const auto d = res::hillar_decompose(f, h);
            json dj{{"l1", d.l1}, {"l2", d.l2}, {"sign", d.sign}, {"integral", d.integral}};
            if (d.integral) {
                dj["u"] = poly_json(*d.u_int);
                dj["v"] = poly_json(*d.v_int);
            } else {
                json u = json::array(), v = json::array();
                for (auto c : d.u) u.push_back(cjson(c));
                for (auto c : d.v) v.push_back(cjson(c));
                dj["u"] = {{"coefficients", u}};
                dj["v"] = {{"coefficients", v}};
                dj["mismatch"] = d.mismatch;
            }
            j["decomposition"] = dj;
        } catch (const NoDecomposition& e) {
            j["decomposition"] = {{"error", "NoDecomposition"}, {"message", e.what()}};
        } catch (const OutOfScope& e) {
            j["decomposition"] = {{"error", "OutOfScope"}, {"message", e.what()}};
        }
    }
    emit(j);
    return 0;
}

int cmd_units(const Globals& g, const std::string& text, std::size_t M) {
    const IntPoly f = parse_poly(text);
    const auto s = res::exceptional_scan(f, M, g.threads);
    if (g.csv) {
        std::cout << "m,r_m,is_unit\n";
        for (std::size_t n = 1; n <= M; ++n)
            std::cout << n << "," << decimal(s.norms[n - 1]) << "," << (abs(s.norms[n - 1]) == 1 ? 1 : 0) << "\n";
        return 0;
    }
    json norms = json::array();
    for (const auto& n : s.norms) norms.push_back(decimal(n));
    emit({{"minpoly", poly_json(f)},
          {"M", M},
          {"E0", s.E0},
          {"unit_indices", s.unit_indices},
          {"E_within_bound", s.E_within_bound()},
          {"lower_bound_only", !res::UnitScan::exhaustive},
          {"norms", norms}});
    return 0;
}

int cmd_lvalue(unsigned long m, bool with_series) {
    const auto table = lval::characters(m);
    json chars = json::array();
    for (std::size_t c = 0; c < table.size(); ++c) {
        json e{{"index", c}, {"principal", c == table.principal_index}, {"exponents", table.exponents[c]}};
        if (c == table.principal_index) {
            e["L1"] = nullptr;
        } else {
            const auto f = lval::character_fn(table, c);
            e["L1"] = cjson(lval::l_one_periodic(f));
            if (with_series) e["L1_series"] = cjson(lval::l_one_series(f).value);
        }
        chars.push_back(e);
    }
    json logs = json::array();
    double total = 0;
    if (m >= 2)
        for (unsigned long l = 1; l < m; ++l) {
            const double via = lval::log_abs_from_lvalues(m, l);
            const double direct = std::log(std::abs(1.0 - std::polar(1.0, kTwoPi * double(l) / double(m))));
            logs.push_back({{"l", l}, {"via_lvalues", via}, {"direct", direct}});
            total += via;
        }
    emit({{"modulus", m},
          {"generators", table.generators},
          {"orders", table.orders},
          {"characters", chars},
          {"log_abs_one_minus_zeta", logs},
          {"sum_log_abs", total},
          {"log_modulus", std::log(double(m))}});
    return 0;
}

int cmd_radial(const Globals& g, const std::string& text, const std::string& at, long power, const std::string& mode,
               std::size_t N) {
    const IntPoly f = parse_poly(text);
    const ThetaSpec theta = parse_theta(at);
    HPReal t = theta.turns * power;
    t -= floor(t);
    const double td = static_cast<double>(t);
    const cplx p = std::polar(1.0, kTwoPi * td);
    std::vector<boundary::RadialMode> modes;
    if (mode == "cesaro" || mode == "both") modes.push_back(boundary::RadialMode::Cesaro);
    if (mode == "abel" || mode == "both") modes.push_back(boundary::RadialMode::Abel);
    if (modes.empty()) throw UsageError("mode must be cesaro, abel or both");
    std::size_t need = 0;
    for (auto md : modes) need = std::max(need, boundary::radial_terms_needed(md, N));
    const auto stream = boundary::e_stream_without_mahler(f, need);
    json est = json::array();
    for (auto md : modes) {
        const auto e = boundary::radial_limit(stream, p, md, N);
        est.push_back({{"mode", md == boundary::RadialMode::Cesaro ? "cesaro" : "abel"},
                       {"value", cjson(e.value)},
                       {"error", e.error},
                       {"terms", e.terms}});
    }
    json j{{"polynomial", poly_json(f)}, {"p_turns", turns_string(t)}, {"power", power}, {"estimates", est}};
    // integer relation between the target angle and the angles of the upper-half-plane boundary roots
    std::vector<boundary::PslqReal> angles;
    for (std::size_t i = 0; i < boundary::unimodular_angle_count(f); ++i) {
        const HPReal a = boundary::unimodular_angle(f, i);
        if (a < HPReal(0.5)) angles.push_back(boundary::PslqReal(a));
    }
    // roots are known to about 160 bits
    const unsigned bits = std::min(g.precision_bits, theta.from_roots || !angles.empty() ? 160u : 384u);
    const auto dep = boundary::multiplicative_dependence(angles, boundary::PslqReal(t), bits);
    json dj{{"precision_bits", bits}, {"found", dep.found}, {"summary", boundary::describe(dep)}};
    json rel = json::array();
    for (const auto& c : dep.relation) rel.push_back(decimal(c));
    dj["relation"] = rel;
    j["dependence"] = dj;
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Torsion generating functions: continuation, poles, boundary behaviour and resultants.\n"
                 "Polynomials are comma-separated integer coefficients in ascending degree:\n"
                 "  \"1,-1,1\" = 1 - t + t^2,  \"6,-13,6\" = 6 - 13t + 6t^2,  \"-2,1\" = t - 2."};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tail-tol", g.tail_tol, "tail tolerance of the continuation series")->check(CLI::PositiveNumber);
    app.add_option("--max-terms", g.max_terms, "term cap for each continuation series");
    app.add_option("--threads", g.threads, "worker threads for grid, average and units");
    app.add_option("--precision-bits", g.precision_bits, "precision of integer-relation searches")
        ->check(CLI::Range(32u, 384u));
    auto* fmt = app.add_option_group("format");
    bool json_flag = false;
    fmt->add_flag("--json", json_flag, "JSON output (default)");
    fmt->add_flag("--csv", g.csv, "CSV output for tabular verbs");
    fmt->require_option(0, 1);

    std::string poly_s, z_s, q_s = "E_continued", x_s, theta_s, m_s = "0", alpha_s, conv = "product", g_s, out_path,
                        at_s, mode_s = "both", part = "abs";
    std::size_t terms = 300, N = 1000000, M = 10, nx = 101, ny = 101, radial_N = 400000;
    unsigned long r_max = 64, lmod = 4;
    long power = 1;
    double radius = 4.0, re0 = -3, re1 = 3, im0 = -3, im1 = 3;
    bool series = false;

    auto* analyze = app.add_subcommand("analyze", "roots, periodicity, torsion table, Laurent data and poles");
    analyze->add_option("poly", poly_s)->required();
    analyze->add_option("--r-max", r_max, "torsion table length");
    analyze->add_option("--radius", radius, "pole search radius");

    auto* eval = app.add_subcommand("eval", "evaluate a generating function at one point");
    eval->add_option("poly", poly_s)->required();
    eval->add_option("z", z_s)->required();
    eval->add_option("--quantity", q_s, "E_continued, E_series_partial, R_x_continued or T_f_continued");
    eval->add_option("--x", x_s, "x for R_x_continued");
    eval->add_option("--terms", terms, "N for E_series_partial");

    auto* grid = app.add_subcommand("grid", "evaluate on a rectangular grid, CSV re,im,value");
    grid->add_option("poly", poly_s)->required();
    grid->add_option("--re-min", re0);
    grid->add_option("--re-max", re1);
    grid->add_option("--im-min", im0);
    grid->add_option("--im-max", im1);
    grid->add_option("--nx", nx);
    grid->add_option("--ny", ny);
    grid->add_option("--quantity", q_s);
    grid->add_option("--x", x_s);
    grid->add_option("--terms", terms);
    grid->add_option("--part", part, "re, im, abs or log_abs");
    grid->add_option("--out", out_path, "output file (default stdout)");

    auto* tors = app.add_subcommand("torsion", "exact torsion |Res(delta, t^r - 1)| and the growth slope");
    tors->add_option("poly", poly_s)->required();
    tors->add_option("--r-max", r_max);

    auto* avg = app.add_subcommand("average", "ergodic average of log|1 - e^{2 pi i n theta}| with a phase");
    avg->add_option("theta", theta_s, "decimal, root:<poly>:<i> or root:<poly>:<i>/<j>")->required();
    avg->add_option("--m", m_s, "integer or fraction");
    avg->add_option("--N", N);
    avg->add_option("--alpha", alpha_s, "independent direction for the phase");
    avg->add_option("--convention", conv, "product or fractional");

    auto* cyc = app.add_subcommand("cyclic", "cyclic resultants, Hillar equality and decomposition");
    cyc->add_option("f", poly_s)->required();
    cyc->add_option("--g", g_s);
    cyc->add_option("--M", M);

    auto* units = app.add_subcommand("units", "scan n <= M for units 1 - u^n");
    units->add_option("minpoly", poly_s)->required();
    units->add_option("--M", M);

    auto* lv = app.add_subcommand("lvalue", "characters mod m, L(1, chi) and log|1 - zeta_m^l|");
    lv->add_option("m", lmod)->required()->check(CLI::Range(1ul, 1000ul));
    lv->add_flag("--series", series, "also sum the raw Dirichlet series");

    auto* rad = app.add_subcommand("radial", "radial limit of (1-|z|) E(z) towards e^{2 pi i m theta}");
    rad->add_option("poly", poly_s)->required();
    rad->add_option("--at", at_s, "theta spec of the direction")->required();
    rad->add_option("--power", power, "exponent m");
    rad->add_option("--mode", mode_s, "cesaro, abel or both");
    rad->add_option("--N", radial_N, "Cesaro length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(poly_s, r_max, radius);
        if (*eval) return cmd_eval(g, poly_s, z_s, q_s, x_s, terms);
        if (*grid) return cmd_grid(g, poly_s, re0, re1, im0, im1, nx, ny, q_s, x_s, terms, part, out_path);
        if (*tors) return cmd_torsion(g, poly_s, r_max);
        if (*avg) return cmd_average(g, theta_s, m_s, N, alpha_s, conv);
        if (*cyc) return cmd_cyclic(g, poly_s, g_s, M);
        if (*units) return cmd_units(g, poly_s, M);
        if (*lv) return cmd_lvalue(lmod, series);
        if (*rad) return cmd_radial(g, poly_s, at_s, power, mode_s, radial_N);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NaturalBoundary& e) {
        std::cerr << "natural boundary: " << e.what() << "\n";
        return kExitBoundary;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
