#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "sympent/errors.hpp"

namespace sympent {

// Exact action values. All bar-length arithmetic stays in this type;
// doubles appear only at the geometric front-ends.
using rat = boost::rational<long long>;

inline double to_double(const rat& r) {
	return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Quantize a floating-point action to a rational on the 1e-9 grid.
inline rat quantize(double x, long long denom = 1000000000LL) {
	if (!std::isfinite(x)) throw input_error("quantize: non-finite value");
	const double scaled = x * static_cast<double>(denom);
	if (std::abs(scaled) > 9.0e17) throw input_error("quantize: value out of range");
	return rat(static_cast<long long>(std::llround(scaled)), denom);
}

// Parse "p/q" or "p".
inline rat parse_rational(const std::string& s) {
	const auto slash = s.find('/');
	try {
		if (slash == std::string::npos) return rat(std::stoll(s));
		const long long num = std::stoll(s.substr(0, slash));
		const long long den = std::stoll(s.substr(slash + 1));
		if (den == 0) throw input_error("parse_rational: zero denominator in '" + s + "'");
		return rat(num, den);
	} catch (const std::invalid_argument&) {
		throw input_error("parse_rational: cannot parse '" + s + "'");
	} catch (const std::out_of_range&) {
		throw input_error("parse_rational: out of range '" + s + "'");
	}
}

inline std::string to_string(const rat& r) {
	if (r.denominator() == 1) return std::to_string(r.numerator());
	return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace sympent
