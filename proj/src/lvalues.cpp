#include "tgf/lvalues.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace tgf::lval {

namespace {

unsigned long mulmod(unsigned long a, unsigned long b, unsigned long m) { return (a * b) % m; }

unsigned long powmod(unsigned long a, unsigned long e, unsigned long m) {
    unsigned long r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

unsigned long multiplicative_order(unsigned long a, unsigned long m) {
    unsigned long x = a % m, k = 1;
    while (x != 1 % m) {
        x = mulmod(x, a, m);
        ++k;
    }
    return k;
}

std::map<unsigned long, unsigned> factor(unsigned long m) {
    std::map<unsigned long, unsigned> f;
    for (unsigned long p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            ++f[p];
            m /= p;
        }
    if (m > 1) ++f[m];
    return f;
}

// x = a mod q, x = 1 mod m/q
unsigned long crt_lift(unsigned long a, unsigned long q, unsigned long m) {
    const unsigned long rest = m / q;
    for (unsigned long x = a % q; x < m; x += q)
        if (x % rest == 1 % rest) return x;
    throw Error("CRT lift failed");
}

}  // namespace

CharacterTable characters(unsigned long m) {
    if (m == 0 || m > 1000) throw InvalidArgument("characters need 1 <= m <= 1000");
    CharacterTable t;
    t.modulus = m;
    // cyclic generators of each prime-power factor, lifted to Z/m
    for (auto [p, k] : factor(m)) {
        unsigned long q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        if (p == 2) {
            if (k == 1) continue;
            t.generators.push_back(crt_lift(q - 1, q, m));
            t.orders.push_back(2);
            if (k >= 3) {
                t.generators.push_back(crt_lift(5, q, m));
                t.orders.push_back(q / 4);
            }
            continue;
        }
        const unsigned long phi = q / p * (p - 1);
        for (unsigned long g = 2; g < q; ++g) {
            if (g % p == 0) continue;
            if (multiplicative_order(g, q) == phi) {
                t.generators.push_back(crt_lift(g, q, m));
                t.orders.push_back(phi);
                break;
            }
        }
    }
    // discrete logs by walking the product of cyclic groups
    t.logs.assign(m, {});
    const std::size_t r = t.generators.size();
    std::vector<unsigned long> coord(r, 0);
    std::size_t group_size = 1;
    for (auto o : t.orders) group_size *= o;
    for (std::size_t idx = 0; idx < group_size; ++idx) {
        unsigned long a = 1 % m;
        for (std::size_t i = 0; i < r; ++i) a = mulmod(a, powmod(t.generators[i], coord[i], m), m);
        t.logs[a] = coord;
        t.exponents.push_back(coord);  // the character dual to this coordinate vector
        for (std::size_t i = 0; i < r; ++i) {
            if (++coord[i] < t.orders[i]) break;
            coord[i] = 0;
        }
    }
    t.principal_index = 0;
    return t;
}

std::vector<unsigned long> CharacterTable::discrete_log(unsigned long a) const {
    const auto& l = logs.at(a % modulus);
    if (l.empty() && !(modulus == 1 || generators.empty() && std::gcd(a, modulus) == 1))
        throw InvalidArgument("not a unit");
    return l;
}

cplx CharacterTable::value(std::size_t chi, unsigned long a) const {
    a %= modulus;
    if (std::gcd(a, modulus) != 1) return 0.0;
    const auto& l = logs[a];
    double turns = 0;
    for (std::size_t i = 0; i < generators.size(); ++i)
        turns += static_cast<double>((exponents[chi][i] * l[i]) % orders[i]) / static_cast<double>(orders[i]);
    return std::polar(1.0, kTwoPi * (turns - std::floor(turns)));
}

cplx PeriodicFn::at(long n) const {
    const long m = static_cast<long>(modulus);
    return values[static_cast<std::size_t>(((n % m) + m) % m)];
}

namespace {

std::vector<cplx> dft(const std::vector<cplx>& v, double sign, double scale) {
    const std::size_t m = v.size();
    std::vector<cplx> out(m);
    for (std::size_t n = 0; n < m; ++n) {
        CompensatedSum<cplx> acc;
        for (std::size_t l = 0; l < m; ++l)
            acc.add(v[l] * std::polar(1.0, sign * kTwoPi * static_cast<double>((l * n) % m) / static_cast<double>(m)));
        out[n] = scale * acc.value();
    }
    return out;
}

}  // namespace

std::vector<cplx> PeriodicFn::inverse() const { return dft(fourier, 1.0, 1.0); }

PeriodicFn make_periodic(std::vector<cplx> values) {
    if (values.empty()) throw InvalidArgument("periodic function needs a positive modulus");
    PeriodicFn f;
    f.modulus = values.size();
    f.fourier = dft(values, -1.0, 1.0 / static_cast<double>(values.size()));
    f.values = std::move(values);
    return f;
}

PeriodicFn from_fourier(std::vector<cplx> fourier) {
    if (fourier.empty()) throw InvalidArgument("periodic function needs a positive modulus");
    PeriodicFn f;
    f.modulus = fourier.size();
    f.values = dft(fourier, 1.0, 1.0);
    f.fourier = std::move(fourier);
    return f;
}

PeriodicFn character_fn(const CharacterTable& table, std::size_t chi) {
    std::vector<cplx> v(table.modulus);
    for (unsigned long a = 0; a < table.modulus; ++a) v[a] = table.value(chi, a);
    return make_periodic(std::move(v));
}

cplx l_one_periodic(const PeriodicFn& f) {
    if (std::abs(f.fourier[0]) > 1e-12) throw NonzeroMean("L(1, f) needs a mean-zero periodic function");
    const double m = static_cast<double>(f.modulus);
    CompensatedSum<cplx> acc;
    for (unsigned long l = 1; l < f.modulus; ++l) {
        const cplx zeta = std::polar(1.0, kTwoPi * static_cast<double>(l) / m);
        acc.add(-f.fourier[l] * std::log(1.0 - zeta));
    }
    return acc.value();
}

Evaluated<cplx> l_one_series(const PeriodicFn& f, std::size_t periods) {
    if (std::abs(f.fourier[0]) > 1e-12) throw NonzeroMean("the Dirichlet series of f diverges at s = 1");
    const unsigned long m = f.modulus;
    CompensatedSum<cplx> acc;
    for (std::size_t k = 0; k < periods; ++k)
        for (unsigned long l = 1; l <= m; ++l) {
            const double n = static_cast<double>(k * m + l);
            acc.add(f.at(static_cast<long>(l)) / n);
        }
    // sum over k >= K of sum_l f(l)/(km + l) = sum_j (-1)^j mu_j / m^{j+1} zeta(j+1, K),
    // mu_j = sum_l f(l) l^j, with zeta(s, K) from Euler-Maclaurin
    const double K = static_cast<double>(periods), dm = static_cast<double>(m);
    auto hurwitz = [&](double s) {
        return std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s) + s / 12.0 * std::pow(K, -s - 1.0) -
               s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(K, -s - 3.0);
    };
    cplx tail = 0;
    for (int j = 1; j <= 6; ++j) {
        cplx mu = 0;
        for (unsigned long l = 1; l <= m; ++l) mu += f.at(static_cast<long>(l)) * std::pow(static_cast<double>(l), j);
        tail += ((j % 2) ? -1.0 : 1.0) * mu / std::pow(dm, j + 1) * hurwitz(j + 1.0);
    }
    double fmax = 0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    const double bound = fmax * dm * std::pow(dm / K, 7.0);
    return {acc.value() + tail, bound, periods * m};
}

double log_abs_from_lvalues(unsigned long m, unsigned long l) {
    if (m < 2 || l % m == 0) throw InvalidArgument("need 1 <= l < m");
    std::vector<cplx> fhat(m, 0.0);
    fhat[l % m] += 1.0;
    fhat[(m - l % m) % m] += 1.0;  // conj f has fhat = delta_{-l}
    return -0.5 * l_one_periodic(from_fourier(std::move(fhat))).real();
}

double digamma_rational(long u, long v, std::size_t terms) {
    if (v <= 0) throw InvalidArgument("denominator must be positive");
    if (u <= 0 && u % v == 0) throw PoleOfGamma("digamma has a pole at nonpositive integers");
    const long g = std::gcd(std::labs(u), v);
    u /= g;
    v /= g;
    // psi(z + 1) = psi(z) + 1/z, moving z = u/v into (0, 1]
    const double dv = static_cast<double>(v);
    CompensatedSum<double> shift;
    long a = u;
    while (a > v) {
        a -= v;
        shift.add(dv / static_cast<double>(a));  // psi(z) = psi(z - 1) + 1/(z - 1)
    }
    while (a <= 0) {
        shift.add(-dv / static_cast<double>(a));  // psi(z) = psi(z + 1) - 1/z
        a += v;
    }
    const double z = static_cast<double>(a) / dv;
    // psi(z) + gamma = -1/z + z sum 1/((r + z) r)
    CompensatedSum<double> s;
    for (std::size_t r = terms; r >= 1; --r) {
        const double dr = static_cast<double>(r);
        s.add(1.0 / ((dr + z) * dr));
    }
    const double nh = static_cast<double>(terms) + 0.5;
    s.add(std::log1p(z / nh) / z);
    return -1.0 / z + z * s.value() + shift.value();
}

}  // namespace tgf::lval
