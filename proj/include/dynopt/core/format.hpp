#ifndef DYNOPT_CORE_FORMAT_HPP
#define DYNOPT_CORE_FORMAT_HPP

#include <string>

namespace dynopt {

/// Shortest decimal that parses back to exactly `v`.
std::string format_roundtrip(double v);

/// printf-style "%.<digits>E", e.g. 0.000336 -> "3.36E-04".
std::string format_scientific(double v, int digits = 2);

/// Fixed-point with `digits` fractional digits.
std::string format_fixed(double v, int digits);

} // namespace dynopt

#endif // DYNOPT_CORE_FORMAT_HPP
