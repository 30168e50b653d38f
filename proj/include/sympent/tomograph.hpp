#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sympent/curves.hpp"
#include "sympent/errors.hpp"
#include "sympent/fit.hpp"
#include "sympent/maps.hpp"

namespace sympent {

// Interaction region in T*S^1 coordinates (q, p): base window times a fiber
// band. W0 is the inner window where the bump differentials must span the
// fiber direction.
struct tomograph_windows {
	double w_lo = 0.2, w_hi = 0.8;   // base window of W
	double w0_lo = 0.35, w0_hi = 0.65; // base window of W0, inside W
	double p_max = 1.0;              // fiber bound of W
};

// Family of graph perturbations L^s = graph(d f_s), f_s = sum s_i g_i, over
// the parameter ball of radius r.
struct tomograph {
	std::vector<bump> bumps;
	double radius = 0.0;
	tomograph_windows windows;
	double ell = 0.0; // minimum L1/L2 distance in W \ Int(W0)

	double f(const std::vector<double>& s, double q) const {
		double v = 0.0;
		for (size_t i = 0; i < bumps.size(); ++i) v += s[i] * bumps[i](q);
		return v;
	}
	double df(const std::vector<double>& s, double q) const {
		double v = 0.0;
		for (size_t i = 0; i < bumps.size(); ++i) v += s[i] * bumps[i].deriv(q);
		return v;
	}
};

namespace detail {

// p = 0 crossings of a polyline, by sign change of the fiber coordinate.
inline std::vector<double> zero_section_crossings(const curve& l2) {
	std::vector<double> qs;
	const size_t segs = l2.vertices.size() - (l2.closed ? 0 : 1);
	for (size_t i = 0; i < segs; ++i) {
		const vec2 a = l2.vertices[i % l2.vertices.size()];
		const vec2 b = l2.vertices[(i + 1) % l2.vertices.size()];
		if ((a.y < 0.0) == (b.y < 0.0)) continue;
		const double t = a.y / (a.y - b.y);
		qs.push_back(a.x + t * (b.x - a.x));
	}
	return qs;
}

inline double min_distance_to_segment(vec2 p, vec2 a, vec2 b) {
	const vec2 d = b - a;
	const double len2 = d.x * d.x + d.y * d.y;
	double t = len2 > 0.0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
	t = std::clamp(t, 0.0, 1.0);
	return dist(p, a + t * d);
}

} // namespace detail

// Builds the perturbation family for a good pair (zero section, L2): bumps
// supported in W spanning the fiber over W0, with the ball radius halved
// until the oscillation bound (< eps/2, the Hofer surrogate) and the fiber
// displacement bound (< ell) both hold.
inline tomograph build_tomograph(int d, double eps, const curve& l2,
                                 const tomograph_windows& windows = {}) {
	if (d < 2) throw input_error("build_tomograph: need d >= 2");
	if (eps <= 0.0) throw input_error("build_tomograph: eps must be positive");
	if (!(windows.w_lo < windows.w0_lo && windows.w0_lo < windows.w0_hi &&
	      windows.w0_hi < windows.w_hi))
		throw input_error("build_tomograph: windows must nest W0 inside W");

	// Good pair: every intersection with the zero section lies in Int(W0).
	for (double q : detail::zero_section_crossings(l2))
		if (q <= windows.w0_lo || q >= windows.w0_hi)
			throw input_error("build_tomograph: pair is not good, intersection at q = " +
			                  std::to_string(q) + " outside W0");

	tomograph t;
	t.windows = windows;
	const double span = windows.w0_hi - windows.w0_lo;
	const double spacing = span / d;
	// Supports must overlap past the neighboring centers: every bump's
	// derivative vanishes at its own center, so a neighbor has to be nonzero
	// there for the family to span the fiber direction.
	const double width = 2.4 * spacing;
	for (int i = 0; i < d; ++i) {
		bump g;
		g.center = windows.w0_lo + (i + 0.5) * spacing;
		g.width = width;
		g.height = 1.0;
		if (g.center - width / 2 < windows.w_lo || g.center + width / 2 > windows.w_hi)
			throw config_error("build_tomograph: bump support leaves W; widen W or increase d");
		t.bumps.push_back(g);
	}

	// Spanning condition: some dg_i is nonzero at every point of W0.
	for (int i = 0; i <= 256; ++i) {
		const double q = windows.w0_lo + span * i / 256.0;
		double best = 0.0;
		for (const auto& g : t.bumps) best = std::max(best, std::abs(g.deriv(q)));
		if (best < 1e-6)
			throw config_error("build_tomograph: bump differentials do not span the fiber at q = " +
			                   std::to_string(q) + "; increase d");
	}

	// Minimum distance between L1 and L2 inside W \ Int(W0).
	double ell = 1.0;
	const size_t segs = l2.vertices.size() - (l2.closed ? 0 : 1);
	for (int side = 0; side < 2; ++side) {
		const double a = side == 0 ? windows.w_lo : windows.w0_hi;
		const double b = side == 0 ? windows.w0_lo : windows.w_hi;
		for (int i = 0; i <= 128; ++i) {
			const vec2 p{a + (b - a) * i / 128.0, 0.0}; // point of L1 in the side region
			for (size_t j = 0; j < segs; ++j) {
				const vec2 u = l2.vertices[j % l2.vertices.size()];
				const vec2 v = l2.vertices[(j + 1) % l2.vertices.size()];
				const double mx = 0.5 * (u.x + v.x), my = 0.5 * (u.y + v.y);
				const bool in_region = mx >= a && mx <= b && std::abs(my) <= windows.p_max;
				if (!in_region) continue;
				ell = std::min(ell, detail::min_distance_to_segment(p, u, v));
			}
		}
	}
	t.ell = ell;
	if (ell <= 0.0) throw input_error("build_tomograph: L1 and L2 touch outside W0");

	double osc_bound = 0.0, deriv_bound = 0.0;
	for (const auto& g : t.bumps) {
		osc_bound += g.height * g.height;
		const double dmax = g.height * M_PI / g.width;
		deriv_bound += dmax * dmax;
	}
	osc_bound = std::sqrt(osc_bound);
	deriv_bound = std::sqrt(deriv_bound);

	double r = eps;
	for (int it = 0; it < 200 && (r * osc_bound >= eps / 2.0 || r * deriv_bound >= ell); ++it)
		r /= 2.0;
	if (r * osc_bound >= eps / 2.0 || r * deriv_bound >= ell)
		throw config_error("build_tomograph: no admissible radius found");
	t.radius = r;
	return t;
}

// Polyline of the graph of d f_s over the circle.
inline curve sample_curve(const tomograph& t, const std::vector<double>& s, int resolution = 1024) {
	if (s.size() != t.bumps.size()) throw input_error("sample_curve: parameter dimension mismatch");
	double norm2 = 0.0;
	for (double x : s) norm2 += x * x;
	if (std::sqrt(norm2) > t.radius * (1.0 + 1e-12))
		throw input_error("sample_curve: parameter outside the ball");
	curve c;
	c.closed = true;
	for (int i = 0; i < resolution; ++i) {
		const double q = static_cast<double>(i) / resolution;
		c.vertices.push_back({q, t.df(s, q)});
	}
	return c;
}

struct crofton_report {
	int d = 0;
	double radius = 0.0;
	int n_samples = 0;
	double integral = 0.0; // Monte-Carlo estimate of the N(s) integral over the ball
	double stderr_ = 0.0;
	double volume = 0.0; // Vol(L2 cap W), polyline length inside W
	double ratio = 0.0;
	double tangency_fraction = 0.0;
	bool transversality_warning = false;
};

namespace detail {

inline double ball_volume(int d, double r) {
	return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(r, d);
}

// Transverse intersections of L2 with graph(d f_s), by sign changes of the
// fiber difference along the polyline; near-zero values at a change are
// tangencies.
inline std::pair<long long, bool> count_intersections(const tomograph& t,
                                                      const std::vector<double>& s, const curve& l2,
                                                      int substeps) {
	long long count = 0;
	bool tangency = false;
	const size_t segs = l2.vertices.size() - (l2.closed ? 0 : 1);
	double prev = 0.0;
	bool have_prev = false;
	for (size_t i = 0; i < segs; ++i) {
		const vec2 a = l2.vertices[i % l2.vertices.size()];
		const vec2 b = l2.vertices[(i + 1) % l2.vertices.size()];
		for (int j = (i == 0 ? 0 : 1); j <= substeps; ++j) {
			const double u = static_cast<double>(j) / substeps;
			const vec2 p = a + u * (b - a);
			const double g = p.y - t.df(s, p.x);
			if (have_prev && (g < 0.0) != (prev < 0.0)) {
				++count;
				if (std::abs(g) < 1e-9 || std::abs(prev) < 1e-9) tangency = true;
			}
			prev = g;
			have_prev = true;
		}
	}
	return {count, tangency};
}

} // namespace detail

// Monte-Carlo check of the Crofton bound: integral of N(s) over the ball
// against the length of L2 inside W. Uniform ball sampling by rejection
// from the bounding cube; seedable for reproducibility.
inline crofton_report crofton_check(const tomograph& t, const curve& l2, int n_samples,
                                    std::uint64_t seed = 1, int substeps = 8,
                                    std::vector<double>* raw_counts = nullptr) {
	if (n_samples < 100) throw input_error("crofton_check: need at least 100 samples");
	const int d = static_cast<int>(t.bumps.size());
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> unit(-1.0, 1.0);

	std::vector<double> counts;
	counts.reserve(n_samples);
	long long tangencies = 0;
	std::vector<double> s(d);
	for (int i = 0; i < n_samples; ++i) {
		double norm2;
		do {
			norm2 = 0.0;
			for (int j = 0; j < d; ++j) {
				s[j] = unit(rng);
				norm2 += s[j] * s[j];
			}
		} while (norm2 > 1.0);
		for (int j = 0; j < d; ++j) s[j] *= t.radius;
		const auto [n, tang] = detail::count_intersections(t, s, l2, substeps);
		counts.push_back(static_cast<double>(n));
		if (tang) ++tangencies;
	}

	if (raw_counts) *raw_counts = counts;
	const double vol_ball = detail::ball_volume(d, t.radius);
	const double mean = pairwise_sum(counts) / n_samples;
	std::vector<double> sq(counts.size());
	for (size_t i = 0; i < counts.size(); ++i) sq[i] = (counts[i] - mean) * (counts[i] - mean);
	const double var = n_samples > 1 ? pairwise_sum(sq) / (n_samples - 1) : 0.0;

	crofton_report rep;
	rep.d = d;
	rep.radius = t.radius;
	rep.n_samples = n_samples;
	rep.integral = vol_ball * mean;
	rep.stderr_ = vol_ball * std::sqrt(var / n_samples);
	rep.tangency_fraction = static_cast<double>(tangencies) / n_samples;
	rep.transversality_warning = rep.tangency_fraction > 0.01;

	double len = 0.0;
	const size_t segs = l2.vertices.size() - (l2.closed ? 0 : 1);
	for (size_t i = 0; i < segs; ++i) {
		const vec2 a = l2.vertices[i % l2.vertices.size()];
		const vec2 b = l2.vertices[(i + 1) % l2.vertices.size()];
		const vec2 m = 0.5 * (a + b);
		if (m.x >= t.windows.w_lo && m.x <= t.windows.w_hi && std::abs(m.y) <= t.windows.p_max)
			len += dist(a, b);
	}
	rep.volume = len;
	rep.ratio = len > 0.0 ? rep.integral / len : 0.0;
	return rep;
}

} // namespace sympent
