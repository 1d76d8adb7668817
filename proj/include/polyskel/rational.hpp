#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace polyskel {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Decimal rendering with a fixed number of significant digits (default 12),
// round-half-up on the truncated tail. Used for CSV/report output.
inline std::string rat_to_decimal(const Rat& r, int sig_digits = 12) {
    if (r == 0) return "0";
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;

    // scale so that the integer division yields sig_digits digits
    BigInt scaled = num;
    int exp10 = 0;  // value = digits * 10^(exp10)
    while (scaled / den == 0) {
        scaled *= 10;
        --exp10;
    }
    while (true) {
        BigInt q = scaled / den;
        std::string ds = q.str();
        if (static_cast<int>(ds.size()) >= sig_digits) break;
        scaled *= 10;
        --exp10;
    }
    // round half up
    BigInt q = scaled / den;
    BigInt rem = scaled % den;
    if (2 * rem >= den) q += 1;
    std::string digits = q.str();
    if (static_cast<int>(digits.size()) > sig_digits && exp10 < 0) {
        // rounding carried into one more digit; drop a trailing digit
        digits.pop_back();
        BigInt qq(digits);
        ++exp10;
        digits = qq.str();
    }

    std::string out;
    if (exp10 >= 0) {
        out = digits + std::string(exp10, '0');
    } else {
        int point = static_cast<int>(digits.size()) + exp10;
        if (point > 0) {
            out = digits.substr(0, point) + "." + digits.substr(point);
        } else {
            out = "0." + std::string(-point, '0') + digits;
        }
        // trim trailing zeros after the point
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return (neg ? "-" : "") + out;
}

}  // namespace polyskel
