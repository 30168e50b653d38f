#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "sympent/errors.hpp"

namespace sympent {

struct vec2 {
	double x = 0.0;
	double y = 0.0;
};

inline vec2 operator+(vec2 a, vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline vec2 operator-(vec2 a, vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline vec2 operator*(double t, vec2 a) { return {t * a.x, t * a.y}; }
inline double dist(vec2 a, vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// C^1 bump supported on |x - center| < width/2 (cos^2 profile).
struct bump {
	double center = 0.5;
	double width = 0.5;
	double height = 1.0;

	double operator()(double x) const {
		const double u = (x - center) / width;
		if (std::abs(u) >= 0.5) return 0.0;
		const double c = std::cos(M_PI * u);
		return height * c * c;
	}

	double deriv(double x) const {
		const double u = (x - center) / width;
		if (std::abs(u) >= 0.5) return 0.0;
		return -height * M_PI / width * std::sin(2.0 * M_PI * u);
	}
};

// Bump evaluated with periodic distance on the unit circle.
struct circle_bump {
	bump b;

	double wrap(double x) const {
		double d = x - b.center;
		d -= std::floor(d + 0.5);
		return b.center + d;
	}
	double operator()(double x) const { return b(wrap(x)); }
	double deriv(double x) const { return b.deriv(wrap(x)); }
};

struct torus_automorphism {
	long long a = 2, b = 1, c = 1, d = 1;

	long long det() const { return a * d - b * c; }
};

struct horseshoe_params {
	double contraction = 1.0 / 3.0; // lambda_c in (0, 1/2)
	double stretch = 3.0;           // lambda_s > 2
	double margin = 0.0;            // identity collar around the unit square
};

struct annulus_twist_params {
	bump profile; // shift of the angle as a function of the radial coordinate
};

struct identity_map_params {};

// A 2D testbed system on the unit square / torus / annulus.
class map_system {
public:
	using params =
	    std::variant<torus_automorphism, horseshoe_params, annulus_twist_params, identity_map_params>;

	explicit map_system(params p) : p_(std::move(p)) {
		if (auto* t = std::get_if<torus_automorphism>(&p_)) {
			if (std::llabs(t->det()) != 1)
				throw validation_error("torus automorphism must have |det| = 1");
		}
		if (auto* h = std::get_if<horseshoe_params>(&p_)) {
			if (!(h->contraction > 0.0 && h->contraction < 0.5))
				throw validation_error("horseshoe contraction must lie in (0, 1/2)");
			if (!(h->stretch > 2.0)) throw validation_error("horseshoe stretch must exceed 2");
			if (h->margin < 0.0) throw validation_error("horseshoe margin must be >= 0");
		}
		if (auto* a = std::get_if<annulus_twist_params>(&p_)) {
			const auto& b = a->profile;
			if (b.center - b.width / 2 <= 0.0 || b.center + b.width / 2 >= 1.0)
				throw validation_error("annulus twist profile must vanish near the boundary");
		}
	}

	const params& kind() const { return p_; }

	bool is_torus() const { return std::holds_alternative<torus_automorphism>(p_); }
	bool is_horseshoe() const { return std::holds_alternative<horseshoe_params>(p_); }
	bool is_annulus() const { return std::holds_alternative<annulus_twist_params>(p_); }
	bool is_identity() const { return std::holds_alternative<identity_map_params>(p_); }

	double domain_lo() const {
		if (auto* h = std::get_if<horseshoe_params>(&p_)) return -h->margin;
		return 0.0;
	}
	double domain_hi() const {
		if (auto* h = std::get_if<horseshoe_params>(&p_)) return 1.0 + h->margin;
		return 1.0;
	}

	// One step of the dynamics on the domain; nullopt when the point leaves
	// (horseshoe points outside both branches are discarded from strings).
	std::optional<vec2> step(vec2 p) const {
		if (std::holds_alternative<identity_map_params>(p_)) return p;
		if (auto* t = std::get_if<torus_automorphism>(&p_)) {
			vec2 q{static_cast<double>(t->a) * p.x + static_cast<double>(t->b) * p.y,
			       static_cast<double>(t->c) * p.x + static_cast<double>(t->d) * p.y};
			q.x -= std::floor(q.x);
			q.y -= std::floor(q.y);
			return q;
		}
		if (auto* h = std::get_if<horseshoe_params>(&p_)) {
			const bool inside =
			    p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
			if (!inside) return p; // identity collar
			if (p.y <= 1.0 / h->stretch) return vec2{h->contraction * p.x, h->stretch * p.y};
			if (p.y >= 1.0 - 1.0 / h->stretch)
				return vec2{1.0 - h->contraction * p.x, h->stretch * (1.0 - p.y)};
			return std::nullopt;
		}
		const auto& a = std::get<annulus_twist_params>(p_);
		double x = p.x + a.profile(p.y);
		x -= std::floor(x);
		return vec2{x, p.y};
	}

	// Step lifted to the universal cover (no wrapping); used for curve
	// lengths. Not defined for the piecewise horseshoe model.
	vec2 step_cover(vec2 p) const {
		if (std::holds_alternative<identity_map_params>(p_)) return p;
		if (auto* t = std::get_if<torus_automorphism>(&p_))
			return {static_cast<double>(t->a) * p.x + static_cast<double>(t->b) * p.y,
			        static_cast<double>(t->c) * p.x + static_cast<double>(t->d) * p.y};
		if (std::holds_alternative<annulus_twist_params>(p_)) {
			const auto& a = std::get<annulus_twist_params>(p_);
			return {p.x + a.profile(p.y), p.y};
		}
		throw config_error("step_cover: not defined for the piecewise-affine horseshoe");
	}

	// Itinerary count of the full horseshoe: 2^k. Independent oracle for
	// the horseshoe entropy; unrelated to the box-counting path.
	static long long symbolic_horseshoe_oracle(int k) {
		if (k < 0) throw input_error("symbolic_horseshoe_oracle: negative k");
		if (k > 62) throw input_error("symbolic_horseshoe_oracle: k > 62 overflows");
		return 1LL << k;
	}

private:
	params p_;
};

} // namespace sympent
