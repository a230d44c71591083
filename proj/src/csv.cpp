#include "desynclab/csv.hpp"

#include <charconv>
#include <cmath>

namespace desynclab {

std::string csv_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_long(long v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_bool(bool v) { return v ? "1" : "0"; }

}  // namespace desynclab
