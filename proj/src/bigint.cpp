#include "chiprotor/bigint.hpp"

#include <cctype>
#include <stdexcept>

namespace chiprotor {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt floor_mod(const BigInt& num, const BigInt& den) {
  return num - floor_div(num, den) * den;
}

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (!std::isdigit(c)) {
      throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string join(const IntVector& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += values[i].str();
  }
  return out;
}

IntVector parse_vector(std::string_view text) {
  IntVector out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_bigint(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_nonnegative(const IntVector& values) {
  for (const auto& v : values)
    if (v < 0) return false;
  return true;
}

bool is_zero(const IntVector& values) {
  for (const auto& v : values)
    if (v != 0) return false;
  return true;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

BigInt sum(const IntVector& values) {
  BigInt total = 0;
  for (const auto& v : values) total += v;
  return total;
}

IntVector zeros(std::size_t n) { return IntVector(n, BigInt(0)); }

}  // namespace chiprotor
