#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace pacer {

// All budgets, bids and clearing prices are integer micro-currency units
// (1'000'000 micros = 1.00). Ledger arithmetic stays exact; floating point
// only enters through rates and ratios.
using Money = std::int64_t;

constexpr Money kMicrosPerUnit = 1'000'000;
constexpr Money kNoEcpmCap = std::numeric_limits<Money>::max();

inline Money money_from_units(double units) {
    return static_cast<Money>(std::llround(units * static_cast<double>(kMicrosPerUnit)));
}

inline double money_to_units(Money m) {
    return static_cast<double>(m) / static_cast<double>(kMicrosPerUnit);
}

// Ceiling division for nonnegative amounts.
inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    return (num + den - 1) / den;
}

inline std::string format_money(Money m) {
    const bool neg = m < 0;
    const Money a = neg ? -m : m;
    std::string s = (neg ? "-" : "") + std::to_string(a / kMicrosPerUnit) + ".";
    std::string frac = std::to_string(a % kMicrosPerUnit);
    s += std::string(6 - frac.size(), '0') + frac;
    return s;
}

}  // namespace pacer
