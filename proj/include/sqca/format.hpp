#pragma once

#include <complex>
#include <string>
#include <vector>

#include <cstdint>

namespace sqca {

// All user-facing numbers go through these helpers: %.17g reproduces doubles
// exactly on read-back and prints identically across runs.
std::string format_double(double x);

// "1+0i", "0.70710678118654757-0.5i", ...
std::string format_complex(std::complex<double> z);

// "(1)", "(0,-1)", ...
std::string format_vector(const std::vector<std::int64_t>& v);

} // namespace sqca
