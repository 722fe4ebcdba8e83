#include "hadamard/scalar.hpp"

#include <charconv>

namespace hadamard {

std::string to_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace hadamard
