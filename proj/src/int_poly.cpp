#include <algorithm>
#include <map>
#include <sstream>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "tgf/polyalg.hpp"

namespace tgf::poly {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) c_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(BigInt c, std::size_t k) {
    std::vector<BigInt> v(k + 1);
    v[k] = std::move(c);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::parse(std::string_view text) {
    std::vector<BigInt> v;
    std::string s(text);
    std::erase_if(s, [](char ch) { return ch == ' ' || ch == '\t' || ch == '\n'; });
    if (s.empty()) throw InvalidArgument("empty polynomial text");
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InvalidArgument("empty coefficient in '" + s + "'");
        std::size_t start = (item[0] == '-' || item[0] == '+') ? 1 : 0;
        if (start == item.size() ||
            !std::all_of(item.begin() + start, item.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw InvalidArgument("bad coefficient '" + item + "'");
        if (item[0] == '+') item.erase(0, 1);
        v.emplace_back(item);
    }
    if (!s.empty() && s.back() == ',') throw InvalidArgument("trailing comma in '" + s + "'");
    return IntPoly(std::move(v));
}

BigInt IntPoly::eval(const BigInt& t) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

cplx IntPoly::eval(cplx t) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->convert_to<double>();
    return acc;
}

HPComplex IntPoly::eval(const HPComplex& t) const {
    HPComplex acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + HPComplex(HPReal(*it));
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * i;
    return IntPoly(std::move(v));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (leading() < 0) g = -g;
    std::vector<BigInt> v(c_);
    for (auto& c : v) c /= g;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed() const {
    std::vector<BigInt> v(c_.rbegin(), c_.rend());
    return IntPoly(std::move(v));
}

std::size_t IntPoly::low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return k;
}

IntPoly IntPoly::divided_by_t_power(std::size_t k) const {
    if (k > low_order()) throw InvalidArgument("t-power does not divide polynomial");
    return IntPoly(std::vector<BigInt>(c_.begin() + static_cast<long>(k), c_.end()));
}

bool IntPoly::is_reciprocal() const {
    IntPoly g = divided_by_t_power(low_order());
    IntPoly r = g.reversed();
    return r == g || r == -g;
}

std::string IntPoly::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += c_[i].str();
    }
    return s;
}

std::string IntPoly::pretty() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const BigInt& c = c_[i];
        if (c == 0) continue;
        BigInt a = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (a != 1 || i == 0) s += a.str();
        if (i >= 1) s += "t";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a) {
    std::vector<BigInt> v(a.c_);
    for (auto& c : v) c = -c;
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& s, const IntPoly& a) {
    std::vector<BigInt> v(a.c_);
    for (auto& c : v) c *= s;
    return IntPoly(std::move(v));
}

IntPoly pow(const IntPoly& f, unsigned e) {
    IntPoly r{1};
    for (unsigned i = 0; i < e; ++i) r = r * f;
    return r;
}

IntPoly t_power_minus_one(std::size_t r) { return IntPoly::monomial(1, r) - IntPoly{1}; }

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw InvalidArgument("pseudo-remainder by zero polynomial");
    std::vector<BigInt> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const BigInt& lb = b.leading();
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        const int dr = static_cast<int>(r.size()) - 1;
        BigInt lr = r.back();
        for (auto& c : r) c *= lb;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= lr * b[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<BigInt> r(a.coeffs().begin(), a.coeffs().end());
    std::vector<BigInt> q(a.degree() - b.degree() + 1);
    const int db = b.degree();
    for (int k = a.degree() - db; k >= 0; --k) {
        BigInt num = r[k + db];
        if (num % b.leading() != 0) return std::nullopt;
        BigInt qk = num / b.leading();
        q[k] = qk;
        for (int i = 0; i <= db; ++i) r[k + i] -= qk * b[i];
    }
    for (const auto& c : r)
        if (c != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

bool divides(const IntPoly& b, const IntPoly& a) {
    if (b.degree() == 0) return true;
    return pseudo_remainder(a, b).is_zero();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.is_zero() ? IntPoly{} : r.primitive_part();
    }
    return x.primitive_part();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f) {
    // Yun's algorithm on the primitive part
    std::vector<SquarefreeFactor> out;
    if (f.degree() < 1) return out;
    IntPoly p = f.primitive_part();
    IntPoly c = gcd(p, p.derivative());
    IntPoly w = *divide_exact(p, c);
    int i = 1;
    while (c.degree() > 0) {
        IntPoly y = gcd(w, c);
        IntPoly z = *divide_exact(w, y);
        if (z.degree() > 0) out.push_back({z.primitive_part(), i});
        w = y;
        c = *divide_exact(c, y);
        ++i;
    }
    if (w.degree() > 0) out.push_back({w.primitive_part(), i});
    return out;
}

namespace {

using BigMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

BigInt bareiss_determinant(BigMatrix a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.row(k).swap(a.row(p));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace

BigInt resultant_exact(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw InvalidArgument("resultant of zero polynomial");
    const int m = f.degree(), n = g.degree();
    if (m == 0) return boost::multiprecision::pow(f[0], static_cast<unsigned>(n));
    if (n == 0) return boost::multiprecision::pow(g[0], static_cast<unsigned>(m));
    const int size = m + n;
    BigMatrix s = BigMatrix::Constant(size, size, BigInt(0));
    // rows are descending-degree coefficient shifts
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(i, i + j) = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(n + i, i + j) = g[n - j];
    return bareiss_determinant(std::move(s));
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

int moebius(std::size_t n) {
    int mu = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

IntPoly cyclotomic(std::size_t d) {
    if (d == 0) throw InvalidArgument("cyclotomic order must be positive");
    // product over e | d of (t^e - 1)^mu(d/e)
    IntPoly num{1}, den{1};
    for (std::size_t e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = moebius(d / e);
        if (mu == 1) num = num * t_power_minus_one(e);
        if (mu == -1) den = den * t_power_minus_one(e);
    }
    return *divide_exact(num, den);
}

}  // namespace tgf::poly
