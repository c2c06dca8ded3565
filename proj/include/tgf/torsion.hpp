#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgf/common.hpp"
#include "tgf/continuation.hpp"
#include "tgf/polyalg.hpp"

// Torsion growth of cyclic covers and the generating function
//   E(z) = sum log|Res(delta, t^r - 1)| z^r
// together with its continuation, poles and Laurent data at z = 1.
namespace tgf::torsion {

using poly::IntPoly;

// Non-fatal remarks about inputs that are not normalized Alexander polynomials.
std::vector<std::string> input_warnings(const IntPoly& delta);

// |Res(delta, t^r - 1)|; zero when delta has a root of order dividing r
BigInt fox_torsion(const IntPoly& delta, unsigned long r);
// |Res(g, t^r - 1)| with every cyclotomic factor Phi_d, d | r, removed from delta.
// Equals fox_torsion whenever that is nonzero.
BigInt reduced_torsion(const IntPoly& delta, unsigned long r);

struct TorsionTable {
    std::map<unsigned long, BigInt> entries;
    std::set<unsigned long> omitted;
};
TorsionTable torsion_table(const IntPoly& delta, unsigned long r_max);

struct ESeriesTerm {
    unsigned long r;
    double log_value;  // log of the reduced torsion when omitted
    bool omitted;
    bool exact;
};
inline constexpr unsigned long kExactCap = 64;
std::vector<ESeriesTerm> e_series(const IntPoly& delta, unsigned long n_terms, unsigned long exact_cap = kExactCap);
// float path only: r log|lc| + sum mult log|1 - beta^r| over roots with beta^r != 1
double log_torsion_float(const IntPoly& delta, unsigned long r);

EvalResult e_continued(const IntPoly& delta, cplx z, const cont::ContinuationParams& params = {});
// same, reusing a root profile across many points
EvalResult e_continued(const poly::RootProfile& prof, cplx z, const cont::ContinuationParams& params = {});

struct PoleReport {
    cplx location;
    int order = 1;
    std::optional<cplx> generator;
    long exponent = 0;
    std::optional<cplx> residue;
    // listed by the orbit rule but the residue cancels, e.g. z = -1 for an order-4 root
    bool removable = false;
};
inline constexpr double kPoleMergeTolerance = 1e-9;
std::vector<PoleReport> pole_set(const IntPoly& delta, double radius_max, bool with_residues = true);

cplx residue_at(const IntPoly& delta, cplx p);

struct LaurentAtOne {
    double c_minus2 = 0;
    double c_minus1 = 0;
    double c_0 = 0;
};
LaurentAtOne laurent_at_one(const IntPoly& delta);

struct LaurentNumeric {
    double rho = 0;
    std::vector<cplx> coeffs;  // coeffs[i] is c_{i-2}
    cplx at(int k) const { return coeffs.at(static_cast<std::size_t>(k + 2)); }
};
LaurentNumeric laurent_numeric(const IntPoly& delta, int k_max, double rho = 0.05, int nodes = 512);

struct Slope {
    double slope = 0;
    double reference = 0;  // log Mahler measure
    unsigned long r_used = 0;
};
Slope silver_williams_slope(const IntPoly& delta, unsigned long r_max);

struct GordonVerdict {
    bool periodic = false;
    std::optional<unsigned long> period;
    std::vector<poly::CyclotomicFactor> evidence;
};
GordonVerdict gordon_classify(const IntPoly& delta);

// Independent witnesses of periodicity, each computed from a different object.
struct GordonWitness {
    bool torsion_periodic = false;    // table over r <= r_max repeats with the period
    int hankel_rank_small = 0;        // numerical rank of the log-torsion Hankel matrix, size n/2
    int hankel_rank_large = 0;        // same at size n
    bool pole_at_one_simple = false;  // z = 1 is a pole of order 1
    std::size_t poles_small = 0;      // poles up to radius 2
    std::size_t poles_large = 0;      // poles up to radius 8
    bool matches_rational_form = false;
};
GordonWitness gordon_witness(const IntPoly& delta, unsigned long r_max, int hankel_size = 12);

struct PeriodicPart {
    unsigned long period = 1;
    std::vector<double> values;  // values[r % period] for r = 1..period
    double log_mahler = 0;
    std::function<double(unsigned long)> bound;
    double periodic_value(unsigned long r) const { return values[r % period]; }
};
PeriodicPart periodic_part_and_bound(const IntPoly& delta);
// largest |log T_r - (a_r + r log M)| - bound(r) over r = 1..r_max, nonpositive when the bound holds
double periodic_bound_slack(const IntPoly& delta, unsigned long r_max);

// E = sum_{l=1}^m a_l z^l / (1 - z^m) for a periodic input
struct PeriodicRational {
    unsigned long period = 1;
    std::vector<double> numerator;  // index l = 1..period
    cplx eval(cplx z) const;
};
PeriodicRational periodic_rational_form(const IntPoly& delta);

struct ReconstructedRoots {
    std::vector<cplx> roots;  // closed under beta -> 1/beta
    std::vector<std::pair<cplx, int>> generators;  // outside-disc generator, paired count
    std::vector<std::pair<unsigned long, int>> root_of_unity_orders;
};
ReconstructedRoots fried_reconstruct(const std::vector<PoleReport>& poles);

BigRational reidemeister_tau(const std::vector<IntPoly>& deltas, unsigned long r);
EvalResult j_continued(const std::vector<IntPoly>& deltas, cplx z);

}  // namespace tgf::torsion
