#pragma once

#include <string>

namespace desynclab {

// Locale-free shortest round-trip representation; NaN becomes the empty
// field.
std::string csv_double(double v);

std::string csv_long(long v);

// "1" / "0".
std::string csv_bool(bool v);

}  // namespace desynclab
