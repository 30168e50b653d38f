#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sympent/filtered_complex.hpp"
#include "sympent/reduction.hpp"

namespace sympent {

// Finite trigonometric polynomial on the unit circle (period 1):
//   f(q) = a0 + sum_k ( cos_coeffs[k-1] cos(2 pi k q) + sin_coeffs[k-1] sin(2 pi k q) ).
struct trig_poly {
	double a0 = 0.0;
	std::vector<double> cos_coeffs;
	std::vector<double> sin_coeffs;

	double operator()(double q) const {
		double s = a0;
		for (size_t k = 0; k < cos_coeffs.size(); ++k)
			s += cos_coeffs[k] * std::cos(2.0 * M_PI * (k + 1) * q);
		for (size_t k = 0; k < sin_coeffs.size(); ++k)
			s += sin_coeffs[k] * std::sin(2.0 * M_PI * (k + 1) * q);
		return s;
	}

	double deriv(double q) const {
		double s = 0.0;
		for (size_t k = 0; k < cos_coeffs.size(); ++k)
			s -= cos_coeffs[k] * 2.0 * M_PI * (k + 1) * std::sin(2.0 * M_PI * (k + 1) * q);
		for (size_t k = 0; k < sin_coeffs.size(); ++k)
			s += sin_coeffs[k] * 2.0 * M_PI * (k + 1) * std::cos(2.0 * M_PI * (k + 1) * q);
		return s;
	}

	double deriv2(double q) const {
		double s = 0.0;
		const double w = 2.0 * M_PI;
		for (size_t k = 0; k < cos_coeffs.size(); ++k)
			s -= cos_coeffs[k] * w * w * (k + 1) * (k + 1) * std::cos(w * (k + 1) * q);
		for (size_t k = 0; k < sin_coeffs.size(); ++k)
			s -= sin_coeffs[k] * w * w * (k + 1) * (k + 1) * std::sin(w * (k + 1) * q);
		return s;
	}

	trig_poly operator-(const trig_poly& o) const {
		trig_poly d;
		d.a0 = a0 - o.a0;
		d.cos_coeffs.resize(std::max(cos_coeffs.size(), o.cos_coeffs.size()), 0.0);
		d.sin_coeffs.resize(std::max(sin_coeffs.size(), o.sin_coeffs.size()), 0.0);
		for (size_t k = 0; k < cos_coeffs.size(); ++k) d.cos_coeffs[k] += cos_coeffs[k];
		for (size_t k = 0; k < o.cos_coeffs.size(); ++k) d.cos_coeffs[k] -= o.cos_coeffs[k];
		for (size_t k = 0; k < sin_coeffs.size(); ++k) d.sin_coeffs[k] += sin_coeffs[k];
		for (size_t k = 0; k < o.sin_coeffs.size(); ++k) d.sin_coeffs[k] -= o.sin_coeffs[k];
		return d;
	}
};

// Pair of exact graph Lagrangians over the circle; only the difference
// f2 - f1 enters the complex.
struct graph_pair {
	trig_poly f1;
	trig_poly f2;
	int resolution = 4096;
};

struct circle_critical_point {
	double q = 0.0;
	double value = 0.0;
	bool is_max = false;
};

namespace detail {

inline std::vector<circle_critical_point> circle_critical_points(const trig_poly& h,
                                                                 int resolution) {
	std::vector<circle_critical_point> out;
	double max_abs_deriv = 0.0;
	for (int i = 0; i < resolution; ++i)
		max_abs_deriv = std::max(max_abs_deriv, std::abs(h.deriv(static_cast<double>(i) / resolution)));
	if (max_abs_deriv < 1e-12)
		throw degeneracy_error("graph pair: difference function has no critical points at resolution");

	for (int i = 0; i < resolution; ++i) {
		double a = static_cast<double>(i) / resolution;
		double b = static_cast<double>(i + 1) / resolution;
		double fa = h.deriv(a), fb = h.deriv(b);
		if (fa == 0.0) fa = 1e-300; // root exactly on a sample; nudged into the bracket
		if (!(fa < 0.0) == !(fb < 0.0)) continue;
		for (int it = 0; it < 80; ++it) {
			const double m = 0.5 * (a + b);
			const double fm = h.deriv(m);
			if ((fm < 0.0) == (fa < 0.0)) {
				a = m;
				fa = fm;
			} else {
				b = m;
			}
		}
		const double q = 0.5 * (a + b);
		const double curv = h.deriv2(q);
		if (std::abs(curv) < 1e-8)
			throw degeneracy_error("graph pair: degenerate critical point near q = " + std::to_string(q));
		out.push_back({q, h(q), curv < 0.0});
	}
	std::sort(out.begin(), out.end(),
	          [](const auto& x, const auto& y) { return x.q < y.q; });
	return out;
}

} // namespace detail

// Circle Morse complex of h = f2 - f1: generators are the critical points
// with action h(q) quantized at 1e-9, each maximum bounding to its two
// neighboring minima over Z/2.
inline filtered_complex graph_pair_complex(const graph_pair& pair) {
	const trig_poly h = pair.f2 - pair.f1;
	const auto crit = detail::circle_critical_points(h, pair.resolution);
	const int m = static_cast<int>(crit.size());
	if (m < 2 || m % 2 != 0)
		throw degeneracy_error("graph pair: critical points do not alternate on the circle");
	for (int i = 0; i < m; ++i)
		if (crit[i].is_max == crit[(i + 1) % m].is_max)
			throw degeneracy_error("graph pair: consecutive critical points of equal index near q = " +
			                       std::to_string(crit[i].q));

	filtered_complex cx;
	std::vector<std::string> ids(m);
	for (int i = 0; i < m; ++i) {
		ids[i] = "c" + std::to_string(i);
		cx.add_generator(ids[i], crit[i].is_max ? 1 : 0, quantize(crit[i].value));
	}
	for (int i = 0; i < m; ++i) {
		if (!crit[i].is_max) continue;
		cx.add_differential_entry(ids[i], ids[(i + m - 1) % m]);
		cx.add_differential_entry(ids[i], ids[(i + 1) % m]);
	}
	cx.validate();
	return cx;
}

} // namespace sympent
