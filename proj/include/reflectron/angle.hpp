#pragma once

#include <string>

namespace reflectron {

// Accepts "pi", "-pi", "pi/K", "M*pi", "M*pi/K" and decimals. Symbolic
// tokens are evaluated in long double before rounding to double.
double parse_angle(const std::string& token);

}  // namespace reflectron
