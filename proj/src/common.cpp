#include "tgf/common.hpp"

#include <cmath>
#include <limits>

namespace tgf {

double log_abs(const BigInt& n) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    BigInt a = abs(n);
    std::size_t bits = boost::multiprecision::msb(a) + 1;
    if (bits <= 1000) return std::log(a.convert_to<double>());
    std::size_t shift = bits - 64;
    BigInt top = a >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::string to_decimal(const BigInt& n) { return n.str(); }

}  // namespace tgf
