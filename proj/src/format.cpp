#include "sqca/format.hpp"

#include <cmath>
#include <cstdio>

namespace sqca {

std::string format_double(double x) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(std::complex<double> z) {
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string out = format_double(z.real());
    out += std::signbit(im) ? "-" : "+";
    out += format_double(std::fabs(im));
    out += "i";
    return out;
}

std::string format_vector(const std::vector<std::int64_t>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    out += ")";
    return out;
}

} // namespace sqca
