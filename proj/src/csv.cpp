#include "qbat/csv.hpp"

#include <charconv>

namespace qbat {

std::string format_sig(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_short(double x) {
  if (x == 0.0) x = 0.0;
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace qbat
