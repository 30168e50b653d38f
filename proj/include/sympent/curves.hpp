#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "sympent/fit.hpp"
#include "sympent/maps.hpp"

namespace sympent {

// Polyline curve in the map domain. `tolerance` bounds the midpoint
// deviation allowed before a segment of an iterated image is subdivided.
struct curve {
	std::vector<vec2> vertices;
	bool closed = false;
	double tolerance = 1e-3;
};

// Axis-aligned window used to restrict length measurements to the compact
// part of the domain.
struct window {
	double x_lo = -1e18, x_hi = 1e18;
	double y_lo = -1e18, y_hi = 1e18;

	bool contains(vec2 p) const {
		return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
	}
};

struct growth_result {
	entropy_estimate estimate;
	std::vector<std::pair<int, double>> lengths; // (n, length inside the window)
	bool budget_exhausted = false;
	int n_reached = 0;
};

namespace detail {

struct sample {
	double t = 0.0; // parameter on the input polyline (by vertex index)
	vec2 base;      // curve point at the parameter
	vec2 image;     // current iterate of the point, in the cover
};

inline vec2 eval_polyline(const curve& c, double t) {
	const size_t m = c.vertices.size();
	const size_t segs = m - (c.closed ? 0 : 1);
	size_t seg = static_cast<size_t>(std::max(0.0, std::floor(t)));
	if (seg >= segs) seg = segs - 1;
	const double u = t - static_cast<double>(seg);
	const vec2 a = c.vertices[seg % m];
	const vec2 b = c.vertices[(seg + 1) % m];
	return a + u * (b - a);
}

inline vec2 iterate_cover(const map_system& map, vec2 p, int n) {
	for (int i = 0; i < n; ++i) p = map.step_cover(p);
	return p;
}

} // namespace detail

// Length growth of phi^n(curve): adaptive polyline refinement (split any
// segment whose image midpoint deviates from the chord by more than the
// tolerance), slope fit of ln(length) against n, lengths restricted to W.
inline growth_result curve_volume_growth(const map_system& map, const curve& c, int n_max,
                                         const window& w = {}, long long vertex_budget = 2000000) {
	if (n_max < 4) throw input_error("curve_volume_growth: n_max must be >= 4");
	if (c.vertices.size() < 2) throw input_error("curve_volume_growth: need >= 2 vertices");
	const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-3;

	std::vector<detail::sample> pts;
	const size_t segs = c.vertices.size() - (c.closed ? 0 : 1);
	for (size_t i = 0; i <= segs; ++i) {
		detail::sample s;
		s.t = static_cast<double>(i);
		s.base = c.vertices[i % c.vertices.size()];
		s.image = s.base;
		pts.push_back(s);
	}

	growth_result result;
	long long spent = 0;
	for (int n = 0; n <= n_max; ++n) {
		if (n > 0)
			for (auto& s : pts) s.image = map.step_cover(s.image);

		// Refine until every chord is within tolerance of the true image.
		if (n > 0 && !result.budget_exhausted) {
			std::vector<detail::sample> refined;
			refined.reserve(pts.size());
			// Rebuild by walking segments left to right, splitting as needed.
			refined.push_back(pts.front());
			for (size_t i = 0; i + 1 < pts.size(); ++i) {
				std::deque<std::pair<detail::sample, detail::sample>> stack;
				stack.emplace_back(pts[i], pts[i + 1]);
				while (!stack.empty()) {
					auto [a, b] = stack.front();
					stack.pop_front();
					if (b.t - a.t > 1e-12 && spent < vertex_budget) {
						detail::sample m;
						m.t = 0.5 * (a.t + b.t);
						m.base = detail::eval_polyline(c, m.t);
						m.image = detail::iterate_cover(map, m.base, n);
						spent += n;
						if (dist(m.image, 0.5 * (a.image + b.image)) > tol) {
							stack.emplace_front(m, b);
							stack.emplace_front(a, m);
							continue;
						}
					}
					refined.push_back(b);
				}
			}
			if (spent >= vertex_budget) result.budget_exhausted = true;
			pts = std::move(refined);
		}

		double len = 0.0;
		for (size_t i = 0; i + 1 < pts.size(); ++i)
			if (w.contains(0.5 * (pts[i].image + pts[i + 1].image)))
				len += dist(pts[i].image, pts[i + 1].image);
		result.lengths.emplace_back(n, len);
		result.n_reached = n;
		if (result.budget_exhausted) break;
	}

	if (result.lengths.size() >= 4) result.estimate = growth_rate_fit_positive(result.lengths);
	return result;
}

// Length growth of the k-string graph curve in the unweighted Euclidean
// product metric. Projection to the first factor is 1-Lipschitz, so this is
// bounded below by the curve growth.
inline growth_result graph_volume_growth(const map_system& map, const curve& c, int k_max,
                                         long long vertex_budget = 2000000) {
	if (k_max < 4) throw input_error("graph_volume_growth: k_max must be >= 4");
	if (c.vertices.size() < 2) throw input_error("graph_volume_growth: need >= 2 vertices");
	const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-3;

	growth_result result;
	long long spent = 0;
	for (int k = 1; k <= k_max; ++k) {
		// String of a parameter value: (y, phi(y), ..., phi^{k-1}(y)) in the cover.
		auto string_of = [&](vec2 base) {
			std::vector<vec2> s(k);
			s[0] = base;
			for (int j = 1; j < k; ++j) s[j] = map.step_cover(s[j - 1]);
			spent += k;
			return s;
		};
		auto product_dist = [&](const std::vector<vec2>& a, const std::vector<vec2>& b) {
			double ss = 0.0;
			for (int j = 0; j < k; ++j) {
				const double d = dist(a[j], b[j]);
				ss += d * d;
			}
			return std::sqrt(ss);
		};

		struct node {
			double t;
			std::vector<vec2> str;
		};
		std::vector<node> pts;
		const size_t segs = c.vertices.size() - (c.closed ? 0 : 1);
		for (size_t i = 0; i <= segs; ++i)
			pts.push_back({static_cast<double>(i), string_of(c.vertices[i % c.vertices.size()])});

		std::vector<node> refined;
		refined.push_back(pts.front());
		for (size_t i = 0; i + 1 < pts.size(); ++i) {
			std::deque<std::pair<node, node>> stack;
			stack.emplace_back(pts[i], pts[i + 1]);
			while (!stack.empty()) {
				auto [a, b] = stack.front();
				stack.pop_front();
				if (b.t - a.t > 1e-12 && spent < vertex_budget) {
					node m;
					m.t = 0.5 * (a.t + b.t);
					m.str = string_of(detail::eval_polyline(c, m.t));
					std::vector<vec2> chord(k);
					for (int j = 0; j < k; ++j) chord[j] = 0.5 * (a.str[j] + b.str[j]);
					if (product_dist(m.str, chord) > tol) {
						stack.emplace_front(m, b);
						stack.emplace_front(a, m);
						continue;
					}
				}
				refined.push_back(b);
			}
		}
		if (spent >= vertex_budget) result.budget_exhausted = true;

		double len = 0.0;
		for (size_t i = 0; i + 1 < refined.size(); ++i)
			len += product_dist(refined[i].str, refined[i + 1].str);
		result.lengths.emplace_back(k, len);
		result.n_reached = k;
		if (result.budget_exhausted) break;
	}

	if (result.lengths.size() >= 4) result.estimate = growth_rate_fit_positive(result.lengths);
	return result;
}

} // namespace sympent
