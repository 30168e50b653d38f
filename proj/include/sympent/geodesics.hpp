#pragma once

#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "sympent/fit.hpp"
#include "sympent/reduction.hpp"
#include "sympent/twist.hpp"

namespace sympent {

// Pair of straight torus geodesics with primitive direction vectors, the
// second iterated under an automorphism. Desk-scale analogue model: the
// torus is closed, so bars carry no action filtration and are infinite by
// construction.
struct geodesic_pair {
	long long v1x = 1, v1y = 0;
	long long v2x = 0, v2y = 1;
	imatrix automorphism = imatrix::identity(2);
};

namespace detail {

inline long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

inline void validate_geodesic_pair(const geodesic_pair& p) {
	if (p.automorphism.n != 2) throw input_error("geodesic pair: automorphism must be 2x2");
	if (std::llabs(determinant(p.automorphism)) != 1)
		throw input_error("geodesic pair: automorphism must have |det| = 1");
	if (gcd_ll(p.v1x, p.v1y) != 1 || gcd_ll(p.v2x, p.v2y) != 1)
		throw input_error("geodesic pair: direction vectors must be primitive");
}

} // namespace detail

// |det(v1, A^n v2)|: the minimal intersection number of the two geodesics
// after n iterations. Parallel directions (det 0) have no defined count.
inline long long geodesic_intersection_count(const geodesic_pair& pair, int n) {
	detail::validate_geodesic_pair(pair);
	const imatrix a = n >= 0 ? pair.automorphism : inverse(pair.automorphism);
	bigint m00 = a.a[0][0], m01 = a.a[0][1], m10 = a.a[1][0], m11 = a.a[1][1];
	bigint wx = pair.v2x, wy = pair.v2y;
	for (int i = 0; i < std::abs(n); ++i) {
		const bigint nx = m00 * wx + m01 * wy;
		const bigint ny = m10 * wx + m11 * wy;
		wx = nx;
		wy = ny;
	}
	bigint det = bigint(pair.v1x) * wy - bigint(pair.v1y) * wx;
	if (det < 0) det = -det;
	if (det > bigint(std::numeric_limits<long long>::max()))
		throw input_error("geodesic_intersection_count: count overflows");
	if (det == 0) throw parallel_error("geodesic pair: parallel directions, count undefined");
	return det.convert_to<long long>();
}

// Minimal-position model: straight geodesics intersect minimally and the
// differential vanishes, so every bar is infinite.
inline barcode geodesic_pair_barcode(const geodesic_pair& pair, int n) {
	barcode bc;
	bc.infinite = static_cast<int>(geodesic_intersection_count(pair, n));
	return bc;
}

// --- barcode entropy experiment ---------------------------------------

struct bar_experiment_row {
	int n = 0;
	double eps = 0.0;
	long long b_eps = 0;
};

struct bar_experiment_result {
	std::vector<bar_experiment_row> table;
	std::vector<std::pair<double, entropy_estimate>> h_eps; // per epsilon, grid order
	entropy_estimate h_bar;                                 // h_eps at the smallest epsilon
	double plateau = 0.0; // max pairwise difference over the last 3 eps values
	bool trivial = false; // all counts were zero
};

// h_eps = slope of log^+ b_eps(n) over the fit window; h_bar is reported at
// the smallest epsilon of the (decreasing) grid with a plateau diagnostic.
inline bar_experiment_result barcode_entropy_experiment(
    const std::function<barcode(int)>& generator, const std::vector<double>& eps_grid, int n_max) {
	if (n_max < 6) throw input_error("barcode_entropy_experiment: n_max must be >= 6");
	if (eps_grid.empty()) throw input_error("barcode_entropy_experiment: empty epsilon grid");
	for (size_t i = 0; i + 1 < eps_grid.size(); ++i)
		if (!(eps_grid[i] > eps_grid[i + 1]))
			throw input_error("barcode_entropy_experiment: epsilon grid must decrease");

	std::vector<barcode> bars;
	bars.reserve(n_max);
	for (int n = 1; n <= n_max; ++n) bars.push_back(generator(n));

	bar_experiment_result result;
	result.trivial = true;
	for (double eps : eps_grid) {
		std::vector<std::pair<int, double>> counts;
		for (int n = 1; n <= n_max; ++n) {
			const long long b = count_b_epsilon(bars[n - 1], quantize(eps));
			if (b != 0) result.trivial = false;
			result.table.push_back({n, eps, b});
			counts.emplace_back(n, static_cast<double>(b));
		}
		result.h_eps.emplace_back(eps, growth_rate_fit(counts));
	}
	result.h_bar = result.h_eps.back().second;
	const size_t tail = std::min<size_t>(3, result.h_eps.size());
	double lo = result.h_eps.back().second.value, hi = lo;
	for (size_t i = result.h_eps.size() - tail; i < result.h_eps.size(); ++i) {
		lo = std::min(lo, result.h_eps[i].second.value);
		hi = std::max(hi, result.h_eps[i].second.value);
	}
	result.plateau = hi - lo;
	return result;
}

// CSV: n, epsilon, b_epsilon.
inline void write_bar_experiment_csv(std::ostream& os, const bar_experiment_result& r) {
	os << "n,epsilon,b_epsilon\n";
	for (const auto& row : r.table) os << row.n << "," << row.eps << "," << row.b_eps << "\n";
}

} // namespace sympent
