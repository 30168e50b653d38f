#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <vector>

#include "sympent/filtered_complex.hpp"

namespace sympent {

// Basis {alpha_i} u {(beta_j, gamma_j)} with d(alpha) = 0, d(gamma_j) = beta_j,
// and pair lengths sorted in non-decreasing order.
struct singular_basis {
	struct pair {
		chain beta;
		chain gamma;
		rat length{0}; // norm(gamma) - norm(beta)
	};
	std::vector<chain> alphas;
	std::vector<pair> pairs;
};

// Bar lengths only; actions of endpoints are not part of a barcode.
struct barcode {
	int infinite = 0;
	std::vector<rat> finite;

	int total() const { return infinite + static_cast<int>(finite.size()); }
};

namespace detail {

// Generators ordered by (action, id) ascending. Processing columns in this
// order makes the reduction deterministic and puts each pivot at the
// maximal-action entry of its reduced column.
inline std::vector<int> action_order(const filtered_complex& cx) {
	std::vector<int> ord(cx.size());
	std::iota(ord.begin(), ord.end(), 0);
	std::sort(ord.begin(), ord.end(), [&](int a, int b) {
		if (cx.gen(a).action != cx.gen(b).action) return cx.gen(a).action < cx.gen(b).action;
		return cx.gen(a).id < cx.gen(b).id;
	});
	return ord;
}

} // namespace detail

// Column reduction of the differential over Z/2 with respect to the action
// filtration. Throws validation_error if the input complex is invalid.
inline singular_basis reduce(const filtered_complex& cx) {
	cx.validate();
	const int m = cx.size();
	const std::vector<int> ord = detail::action_order(cx);
	std::vector<int> pos(m); // generator index -> position in action order
	for (int p = 0; p < m; ++p) pos[ord[p]] = p;

	// Columns in position space; v[j] tracks the chain whose boundary is r[j].
	std::vector<chain> r(m), v(m);
	std::vector<int> pivot_owner(m, -1); // position of pivot row -> owning column
	std::vector<int> paired_with(m, -1); // column position -> pivot position

	for (int j = 0; j < m; ++j) {
		v[j].insert(j);
		for (int i : cx.differential(ord[j])) r[j].insert(pos[i]);
		while (!r[j].empty()) {
			const int low = *r[j].rbegin();
			const int owner = pivot_owner[low];
			if (owner < 0) {
				pivot_owner[low] = j;
				paired_with[j] = low;
				break;
			}
			add_to(r[j], r[owner]);
			add_to(v[j], v[owner]);
		}
	}

	singular_basis out;
	for (int j = 0; j < m; ++j) {
		if (paired_with[j] >= 0) {
			singular_basis::pair p;
			for (int q : v[j]) p.gamma.insert(ord[q]);
			for (int q : r[j]) p.beta.insert(ord[q]);
			p.length = cx.gen(ord[j]).action - cx.gen(ord[paired_with[j]]).action;
			out.pairs.push_back(std::move(p));
		} else if (pivot_owner[j] < 0) {
			chain a;
			for (int q : v[j]) a.insert(ord[q]);
			out.alphas.push_back(std::move(a));
		}
	}
	std::stable_sort(out.pairs.begin(), out.pairs.end(),
	                 [](const auto& a, const auto& b) { return a.length < b.length; });
	return out;
}

inline barcode barcode_of(const singular_basis& basis) {
	barcode bc;
	bc.infinite = static_cast<int>(basis.alphas.size());
	for (const auto& p : basis.pairs) bc.finite.push_back(p.length);
	std::sort(bc.finite.begin(), bc.finite.end());
	return bc;
}

inline barcode barcode_of(const filtered_complex& cx) { return barcode_of(reduce(cx)); }

// b_eps: number of bars of length >= eps (closed inequality).
inline int count_b_epsilon(const barcode& bc, const rat& eps) {
	if (eps < rat(0)) throw input_error("count_b_epsilon: negative epsilon");
	int n = bc.infinite;
	for (const auto& len : bc.finite)
		if (len >= eps) ++n;
	return n;
}

// b_infinity: only the infinite bars qualify.
inline int count_b_infinite(const barcode& bc) { return bc.infinite; }

struct stability_report {
	bool ok = false;
	int b_eps_base = 0;
	int b_eps_plus_delta_perturbed = 0;
	int b_eps_minus_delta_perturbed = 0;
};

// Checks b_{eps+delta}(perturbed) <= b_eps(base) <= b_{eps-delta}(perturbed),
// the action-shift shadow of Hofer-distance stability.
inline stability_report check_stability(const filtered_complex& base,
                                        const filtered_complex& perturbed, const rat& delta,
                                        const rat& eps) {
	if (!(delta < eps)) throw input_error("check_stability: requires delta < eps");
	const barcode bb = barcode_of(base);
	const barcode pb = barcode_of(perturbed);
	stability_report rep;
	rep.b_eps_base = count_b_epsilon(bb, eps);
	rep.b_eps_plus_delta_perturbed = count_b_epsilon(pb, eps + delta);
	rep.b_eps_minus_delta_perturbed = count_b_epsilon(pb, eps - delta);
	rep.ok = rep.b_eps_plus_delta_perturbed <= rep.b_eps_base &&
	         rep.b_eps_base <= rep.b_eps_minus_delta_perturbed;
	return rep;
}

// Finite surrogate for liminf b_eps over a perturbation schedule ordered by
// decreasing perturbation size: the minimum over the tail (last half) of the
// schedule. This is an approximation, not the liminf itself.
inline int good_pair_b_epsilon(const std::vector<filtered_complex>& schedule, const rat& eps) {
	if (schedule.empty()) throw input_error("good_pair_b_epsilon: empty schedule");
	const size_t n = schedule.size();
	const size_t tail_begin = n - (n + 1) / 2;
	int best = -1;
	for (size_t i = tail_begin; i < n; ++i) {
		const int b = count_b_epsilon(barcode_of(schedule[i]), eps);
		if (best < 0 || b < best) best = b;
	}
	return best;
}

// Barcode CSV: a single `length` column with `inf` for infinite bars.
inline void write_barcode_csv(std::ostream& os, const barcode& bc) {
	os << "length\n";
	for (int i = 0; i < bc.infinite; ++i) os << "inf\n";
	for (const auto& len : bc.finite) os << to_string(len) << "\n";
}

} // namespace sympent
