#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chiprotor {

using BigInt = boost::multiprecision::cpp_int;

/// Dense per-vertex integer vector. Chip configurations may hold negative
/// entries; count vectors (firing vectors, odometers, bounds, period vectors)
/// are nonnegative by contract.
using IntVector = std::vector<BigInt>;
using ChipConfig = IntVector;
using CountVector = IntVector;

/// Floor division (rounds toward negative infinity). `den` must be positive.
BigInt floor_div(const BigInt& num, const BigInt& den);

/// Remainder in [0, den). `den` must be positive.
BigInt floor_mod(const BigInt& num, const BigInt& den);

/// Parses an optionally signed decimal integer; throws std::invalid_argument
/// on anything else.
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& value);

/// Comma-separated rendering, e.g. "1,-2,0".
std::string join(const IntVector& values);

/// Inverse of join(); an empty string yields an empty vector.
IntVector parse_vector(std::string_view text);

bool is_nonnegative(const IntVector& values);
bool is_zero(const IntVector& values);

IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);

BigInt sum(const IntVector& values);

IntVector zeros(std::size_t n);

}  // namespace chiprotor
