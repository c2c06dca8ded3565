#pragma once

#include <optional>
#include <vector>

#include "tgf/common.hpp"
#include "tgf/polyalg.hpp"
#include "tgf/torsion.hpp"

// Cyclic resultants r_m = Res(f, t^m - 1), their generating function, Hillar's
// equality criterion and exceptional-unit scans.
namespace tgf::res {

using poly::IntPoly;

// r_1..r_M, signed, zeros kept
std::vector<BigInt> cyclic_resultants(const IntPoly& f, std::size_t M);

// T_f(z) = sum log|r_m| z^m continued past the unit disc
EvalResult t_f_continued(const IntPoly& f, cplx z, const cont::ContinuationParams& params = {});
std::vector<torsion::PoleReport> t_f_poles(const IntPoly& f, double radius_max);

// |r_m(f)| = |r_m(g)| for m = 1..M; ZeroResultant when a resultant vanishes
bool hillar_equal(const IntPoly& f, const IntPoly& g, std::size_t M);

// f = sign t^l1 v(t) u(1/t) t^{deg u},  g = t^l2 v(t) u(t)
struct HillarDecomposition {
    std::vector<cplx> u;  // ascending coefficients
    std::vector<cplx> v;
    std::optional<IntPoly> u_int;
    std::optional<IntPoly> v_int;
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    int sign = 1;
    bool integral = false;
    double mismatch = 0;  // largest coefficient error of the two identities (0 when integral)
};
HillarDecomposition hillar_decompose(const IntPoly& f, const IntPoly& g);

struct UnitScan {
    IntPoly minpoly;
    std::size_t M = 0;
    std::vector<BigInt> norms;               // N(1 - u^n), n = 1..M
    std::vector<std::size_t> unit_indices;   // n with |N(1 - u^n)| = 1
    std::size_t E0 = 0;                      // length of the initial run 1, 2, ..., E0
    std::size_t E_within_bound() const { return unit_indices.size(); }
    static constexpr bool exhaustive = false;  // the count is a lower bound for E(u)
};
UnitScan exceptional_scan(const IntPoly& minpoly, std::size_t M, unsigned threads = 1);

// sum log|N(1 - u^n)| z^n, scaled for a field of degree multiplier * [Q(u):Q]
EvalResult g_u_continued(const IntPoly& minpoly, cplx z, unsigned degree_multiplier = 1,
                         const cont::ContinuationParams& params = {});

// smallest singular value of the k x (n - k + 1) Hankel matrix of seq for k = 1..max_order+1;
// all of them positive means no linear recurrence of order <= max_order fits seq
std::vector<HPReal> hankel_min_singular_values(const std::vector<HPReal>& seq, std::size_t max_order);
// log|N(1 - u^n)| at 50 digits
std::vector<HPReal> log_norms(const UnitScan& scan);

}  // namespace tgf::res
