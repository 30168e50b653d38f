#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "sympent/fit.hpp"
#include "sympent/maps.hpp"

namespace sympent {

struct orbit_graph_spec {
	int k = 1;        // string length
	double eps = 0.0; // box size
	int grid = 0;     // samples per axis
	int grid_y = 0;   // y-axis override; 0 keeps the square grid. Maps whose
	                  // expansion is concentrated in one direction need far
	                  // denser sampling there to populate the occupied boxes.
};

struct capacity_result {
	entropy_estimate estimate; // slope at the smallest eps
	struct per_eps_fit {
		double eps = 0.0;
		int grid = 0;
		int grid_y = 0;
		entropy_estimate est;
		std::vector<std::pair<int, double>> counts; // (k, occupied boxes)
	};
	std::vector<per_eps_fit> per_eps;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
	h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
	h *= 0xff51afd7ed558ccdULL;
	h ^= h >> 33;
	return h;
}

} // namespace detail

// Occupied epsilon-box count of densely sampled k-strings: a lower bound of
// the covering number Cap_eps within a dimension-dependent constant, which
// the log-slope absorbs. Entropy estimate = per-k slope at the smallest eps.
inline capacity_result capacity_entropy(const map_system& map,
                                        const std::vector<orbit_graph_spec>& schedule) {
	// Group the schedule by (eps, grid, grid_y).
	std::map<std::tuple<double, int, int>, std::vector<int>> groups;
	for (const auto& s : schedule) {
		if (s.k < 1 || s.eps <= 0.0 || s.grid < 1 || s.grid_y < 0)
			throw input_error("capacity: bad schedule entry");
		groups[{s.eps, s.grid, s.grid_y ? s.grid_y : s.grid}].push_back(s.k);
	}
	{
		std::unordered_set<double> eps_values;
		for (const auto& [key, ks] : groups) {
			eps_values.insert(std::get<0>(key));
			if (ks.size() < 4) throw input_error("capacity: need >= 4 values of k per eps");
		}
		if (eps_values.size() < 2) throw input_error("capacity: need >= 2 eps values");
	}

	const double lo = map.domain_lo(), hi = map.domain_hi();
	capacity_result result;
	for (auto& [key, ks] : groups) {
		const auto [eps, grid, grid_y] = key;
		const double step = (hi - lo) / grid;
		const double step_y = (hi - lo) / grid_y;
		if (step > eps / 4.0 || step_y > eps / 4.0)
			throw config_error("capacity: grid too coarse, need >= 4 samples per box side");
		std::sort(ks.begin(), ks.end());
		ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
		const int k_max = ks.back();

		std::vector<std::unordered_set<std::uint64_t>> boxes(ks.size());
		for (auto& b : boxes) b.reserve(1 << 16);
		for (int iy = 0; iy < grid_y; ++iy) {
			for (int ix = 0; ix < grid; ++ix) {
				vec2 p{lo + (ix + 0.5) * step, lo + (iy + 0.5) * step_y};
				std::uint64_t h = 0x243f6a8885a308d3ULL;
				std::optional<vec2> q = p;
				size_t slot = 0;
				for (int k = 1; k <= k_max && q && slot < ks.size(); ++k) {
					h = detail::mix64(h, static_cast<std::uint64_t>(
					                        static_cast<std::int64_t>(std::floor((q->x - lo) / eps))));
					h = detail::mix64(h, static_cast<std::uint64_t>(
					                        static_cast<std::int64_t>(std::floor((q->y - lo) / eps))));
					if (k == ks[slot]) {
						boxes[slot].insert(h);
						++slot;
					}
					if (k < k_max) q = map.step(*q);
				}
			}
		}

		capacity_result::per_eps_fit fit;
		fit.eps = eps;
		fit.grid = grid;
		fit.grid_y = grid_y;
		for (size_t i = 0; i < ks.size(); ++i)
			fit.counts.emplace_back(ks[i], static_cast<double>(boxes[i].size()));
		fit.est = growth_rate_fit(fit.counts);
		result.per_eps.push_back(std::move(fit));
	}

	std::sort(result.per_eps.begin(), result.per_eps.end(),
	          [](const auto& a, const auto& b) { return a.eps > b.eps; });
	result.estimate = result.per_eps.back().est;
	return result;
}

} // namespace sympent
