#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "sympent/errors.hpp"

namespace sympent {

// Growth-rate measurement in natural-log units, with the window the slope
// was fitted on and the RMS residual of the fit.
struct entropy_estimate {
	double value = 0.0;        // ln(growth_factor)
	double growth_factor = 1.0;
	int fit_n_min = 0;
	int fit_n_max = 0;
	double residual = 0.0;

	double value_base2() const { return value / std::log(2.0); }
};

// log^+ clamps 0 to 0; natural log otherwise.
inline double log_plus(double x) { return x <= 0.0 ? 0.0 : std::log(x); }

// Order-independent sum (pairwise): merges are deterministic regardless of
// how samples were produced.
inline double pairwise_sum(const std::vector<double>& xs, size_t lo, size_t hi) {
	if (hi - lo <= 8) {
		double s = 0.0;
		for (size_t i = lo; i < hi; ++i) s += xs[i];
		return s;
	}
	const size_t mid = lo + (hi - lo) / 2;
	return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) { return pairwise_sum(xs, 0, xs.size()); }

namespace detail {

// Least-squares slope of y against n over the last half of the points
// (largest n), which suppresses transients from non-dominant modes.
inline entropy_estimate fit_upper_half(const std::vector<std::pair<int, double>>& pts) {
	const size_t n = pts.size();
	const size_t begin = n / 2;
	bool constant = true;
	for (size_t i = begin + 1; i < n; ++i)
		if (pts[i].second != pts[begin].second) constant = false;
	if (constant) {
		// Constant counts give slope 0 with no fit noise.
		entropy_estimate est;
		est.fit_n_min = pts[begin].first;
		est.fit_n_max = pts[n - 1].first;
		return est;
	}
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	const double count = static_cast<double>(n - begin);
	for (size_t i = begin; i < n; ++i) {
		sx += pts[i].first;
		sy += pts[i].second;
		sxx += static_cast<double>(pts[i].first) * pts[i].first;
		sxy += pts[i].first * pts[i].second;
	}
	const double denom = count * sxx - sx * sx;
	entropy_estimate est;
	est.fit_n_min = pts[begin].first;
	est.fit_n_max = pts[n - 1].first;
	double slope = 0.0, intercept = sy / count;
	if (denom != 0.0) {
		slope = (count * sxy - sx * sy) / denom;
		intercept = (sy - slope * sx) / count;
	}
	double ss = 0.0;
	for (size_t i = begin; i < n; ++i) {
		const double d = pts[i].second - (slope * pts[i].first + intercept);
		ss += d * d;
	}
	est.value = slope;
	est.growth_factor = std::exp(slope);
	est.residual = std::sqrt(ss / count);
	return est;
}

} // namespace detail

// Slope of log^+(value) against n. Counts must be >= 0; all-zero input
// yields exactly 0 by the log^+ convention.
inline entropy_estimate growth_rate_fit(const std::vector<std::pair<int, double>>& counts) {
	if (counts.size() < 4) throw input_error("growth_rate_fit: need at least 4 points");
	std::vector<std::pair<int, double>> pts = counts;
	std::sort(pts.begin(), pts.end());
	bool all_zero = true;
	for (auto& [n, v] : pts) {
		if (v < 0.0) throw input_error("growth_rate_fit: negative count");
		if (v != 0.0) all_zero = false;
		v = log_plus(v);
	}
	if (all_zero) {
		entropy_estimate est;
		est.fit_n_min = pts[pts.size() / 2].first;
		est.fit_n_max = pts.back().first;
		return est;
	}
	return detail::fit_upper_half(pts);
}

// Same fit for strictly positive magnitudes (lengths, norms) where plain ln
// is the right scale: values below 1 must not be clamped.
inline entropy_estimate growth_rate_fit_positive(const std::vector<std::pair<int, double>>& values) {
	if (values.size() < 4) throw input_error("growth_rate_fit: need at least 4 points");
	std::vector<std::pair<int, double>> pts = values;
	std::sort(pts.begin(), pts.end());
	for (auto& [n, v] : pts) {
		if (v <= 0.0) throw input_error("growth_rate_fit: non-positive value");
		v = std::log(v);
	}
	return detail::fit_upper_half(pts);
}

} // namespace sympent
