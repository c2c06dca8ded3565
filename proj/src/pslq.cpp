#include <algorithm>
#include <sstream>

#include "tgf/boundary.hpp"

namespace tgf::boundary {

namespace {

using Matrix = std::vector<std::vector<PslqReal>>;

PslqReal round_to_bits(const PslqReal& x, unsigned bits) {
    if (x == 0) return x;
    int e = 0;
    frexp(x, &e);
    return ldexp(round(ldexp(x, static_cast<int>(bits) - e)), e - static_cast<int>(bits));
}

// One-level PSLQ. Returns the relation column of B, or nothing when the
// coefficient bound is exceeded first. bound receives 1/max|H_jj|.
std::optional<std::vector<PslqReal>> pslq(const std::vector<PslqReal>& x, const PslqReal& eps,
                                          const PslqReal& coeff_limit, PslqReal& bound) {
    const std::size_t n = x.size();
    const PslqReal gamma = sqrt(PslqReal(4) / 3);
    std::vector<PslqReal> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
        PslqReal acc = 0;
        for (std::size_t j = k; j < n; ++j) acc += x[j] * x[j];
        s[k] = sqrt(acc);
    }
    const PslqReal t0 = s[0];
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = x[k] / t0;
        s[k] /= t0;
    }
    Matrix H(n, std::vector<PslqReal>(n - 1, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n - 1 && j <= i; ++j) {
            if (i == j)
                H[i][j] = s[j + 1] / s[j];
            else
                H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
        }
    Matrix A(n, std::vector<PslqReal>(n, 0)), B(n, std::vector<PslqReal>(n, 0));
    for (std::size_t i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;

    auto reduce_row = [&](std::size_t i, std::size_t j) {
        const PslqReal t = round(H[i][j] / H[j][j]);
        if (t == 0) return;
        y[j] += t * y[i];
        for (std::size_t k = 0; k <= j; ++k) H[i][k] -= t * H[j][k];
        for (std::size_t k = 0; k < n; ++k) {
            A[i][k] -= t * A[j][k];
            B[k][j] += t * B[k][i];
        }
    };
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i; j-- > 0;) reduce_row(i, j);

    for (int iter = 0; iter < 20000; ++iter) {
        std::size_t m = 0;
        PslqReal best = -1, g = gamma;
        for (std::size_t i = 0; i < n - 1; ++i, g *= gamma) {
            const PslqReal v = g * abs(H[i][i]);
            if (v > best) {
                best = v;
                m = i;
            }
        }
        std::swap(y[m], y[m + 1]);
        std::swap(A[m], A[m + 1]);
        std::swap(H[m], H[m + 1]);
        for (std::size_t k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);
        if (m + 2 < n) {
            const PslqReal h0 = H[m][m], h1 = H[m][m + 1];
            const PslqReal t = sqrt(h0 * h0 + h1 * h1), c = h0 / t, d = h1 / t;
            for (std::size_t i = m; i < n; ++i) {
                const PslqReal a = H[i][m], b = H[i][m + 1];
                H[i][m] = c * a + d * b;
                H[i][m + 1] = -d * a + c * b;
            }
        }
        for (std::size_t i = m + 1; i < n; ++i)
            for (std::size_t j = std::min(i - 1, m + 1) + 1; j-- > 0;) reduce_row(i, j);

        PslqReal hmax = 0, bmax = 0;
        for (std::size_t j = 0; j < n - 1; ++j) hmax = std::max(hmax, PslqReal(abs(H[j][j])));
        bound = hmax > 0 ? PslqReal(1 / hmax) : PslqReal(0);
        for (std::size_t j = 0; j < n; ++j) {
            if (abs(y[j]) < eps) {
                std::vector<PslqReal> rel(n);
                for (std::size_t k = 0; k < n; ++k) rel[k] = B[k][j];
                return rel;
            }
            for (std::size_t k = 0; k < n; ++k) bmax = std::max(bmax, PslqReal(abs(B[k][j])));
        }
        if (bmax > coeff_limit) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

Dependence multiplicative_dependence(const std::vector<PslqReal>& angles, const PslqReal& target,
                                     unsigned precision_bits) {
    if (precision_bits < 32 || precision_bits > 384) throw InvalidArgument("precision must be 32..384 bits");
    std::vector<PslqReal> exact{PslqReal(1)};
    exact.insert(exact.end(), angles.begin(), angles.end());
    exact.push_back(target);
    std::vector<PslqReal> x;
    for (const auto& v : exact) x.push_back(round_to_bits(v, precision_bits));

    Dependence out;
    const PslqReal eps = ldexp(PslqReal(1), -static_cast<int>(precision_bits) + 12);
    const PslqReal limit = ldexp(PslqReal(1), static_cast<int>(precision_bits) / 2);
    const auto rel = pslq(x, eps, limit, out.norm_bound);
    if (!rel) return out;

    std::vector<BigInt> c;
    for (const auto& v : *rel) c.push_back(static_cast<BigInt>(round(v)));
    // sign: first nonzero coefficient from the target end is positive
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        if (c[k] < 0)
            for (auto& v : c) v = -v;
        break;
    }
    PslqReal residual = 0;
    for (std::size_t k = 0; k < c.size(); ++k) residual += PslqReal(c[k]) * exact[k];
    out.residual = abs(residual);
    const PslqReal tol = pow(PslqReal(10), -static_cast<int>(precision_bits / 4));
    if (out.residual < tol && std::any_of(c.begin(), c.end(), [](const BigInt& v) { return v != 0; })) {
        out.found = true;
        out.relation = std::move(c);
    }
    return out;
}

std::string describe(const Dependence& d) {
    std::ostringstream os;
    if (!d.found) {
        os << "independent at this precision (no relation of norm below "
           << d.norm_bound.convert_to<double>() << ")";
        return os.str();
    }
    os << "relation (";
    for (std::size_t k = 0; k < d.relation.size(); ++k) os << (k ? ", " : "") << d.relation[k];
    os << "), residual " << d.residual.convert_to<double>();
    return os.str();
}

}  // namespace tgf::boundary
