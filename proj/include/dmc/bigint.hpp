#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dmc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(std::int64_t n) {
  BigInt result = 1;
  for (std::int64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

inline BigInt ipow(BigInt base, std::uint64_t exponent) {
  BigInt result = 1;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace dmc
