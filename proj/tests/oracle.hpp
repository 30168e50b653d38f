#pragma once

// Test-only oracles, kept independent of the library's reduction path:
// a dense brute-force persistence reduction and an F2 homology rank.

#include <algorithm>
#include <random>
#include <vector>

#include "sympent/filtered_complex.hpp"
#include "sympent/reduction.hpp"

namespace oracle {

using sympent::filtered_complex;
using sympent::rat;

// Standard persistence column reduction over generators sorted by action,
// on dense bool columns. Returns the barcode multiset.
inline sympent::barcode brute_force_barcode(const filtered_complex& cx) {
	const int m = cx.size();
	std::vector<int> ord(m);
	for (int i = 0; i < m; ++i) ord[i] = i;
	std::sort(ord.begin(), ord.end(), [&](int a, int b) {
		if (cx.gen(a).action != cx.gen(b).action) return cx.gen(a).action < cx.gen(b).action;
		return cx.gen(a).id < cx.gen(b).id;
	});
	std::vector<int> pos(m);
	for (int p = 0; p < m; ++p) pos[ord[p]] = p;

	std::vector<std::vector<bool>> col(m, std::vector<bool>(m, false));
	for (int j = 0; j < m; ++j)
		for (int i : cx.differential(ord[j])) col[j][pos[i]] = true;

	auto low = [&](int j) {
		for (int i = m - 1; i >= 0; --i)
			if (col[j][i]) return i;
		return -1;
	};

	std::vector<int> owner(m, -1);
	sympent::barcode bc;
	std::vector<bool> is_pivot_row(m, false);
	for (int j = 0; j < m; ++j) {
		int l = low(j);
		while (l >= 0 && owner[l] >= 0) {
			const int k = owner[l];
			for (int i = 0; i < m; ++i) col[j][i] = col[j][i] != col[k][i];
			l = low(j);
		}
		if (l >= 0) {
			owner[l] = j;
			is_pivot_row[l] = true;
			bc.finite.push_back(cx.gen(ord[j]).action - cx.gen(ord[l]).action);
		}
	}
	for (int j = 0; j < m; ++j)
		if (owner[j] < 0 && low(j) < 0 && !is_pivot_row[j]) ++bc.infinite;
	std::sort(bc.finite.begin(), bc.finite.end());
	return bc;
}

// dim ker(d) - rank(d) over F2, by plain Gaussian elimination.
inline int homology_rank(const filtered_complex& cx) {
	const int m = cx.size();
	std::vector<std::vector<bool>> rows(m, std::vector<bool>(m, false));
	for (int j = 0; j < m; ++j)
		for (int i : cx.differential(j)) rows[i][j] = true;
	int rank = 0;
	for (int c = 0; c < m; ++c) {
		int piv = -1;
		for (int r = rank; r < m; ++r)
			if (rows[r][c]) {
				piv = r;
				break;
			}
		if (piv < 0) continue;
		std::swap(rows[piv], rows[rank]);
		for (int r = 0; r < m; ++r)
			if (r != rank && rows[r][c])
				for (int cc = 0; cc < m; ++cc) rows[r][cc] = rows[r][cc] != rows[rank][cc];
		++rank;
	}
	return m - 2 * rank; // dim ker - rank = m - rank - rank
}

// Random valid filtered complex: a canonical pair differential conjugated
// by a random filtration-preserving triangular change of basis. The
// returned complex satisfies both invariants by construction.
inline filtered_complex random_complex(std::mt19937_64& rng, int max_generators = 12,
                                       bool allow_ties = true) {
	std::uniform_int_distribution<int> size_dist(0, max_generators);
	const int m = size_dist(rng);
	std::vector<rat> actions(m);
	std::uniform_int_distribution<int> num(-40, 40);
	for (int i = 0; i < m; ++i) {
		actions[i] = rat(num(rng), 8);
		if (!allow_ties) {
			for (int j = 0; j < i; ++j)
				if (actions[j] == actions[i]) {
					actions[i] += rat(1, 16 + i);
					j = -1;
				}
		}
	}

	// Positions sorted by (action, index); ids follow the index.
	std::vector<int> ord(m);
	for (int i = 0; i < m; ++i) ord[i] = i;
	std::sort(ord.begin(), ord.end(), [&](int a, int b) {
		if (actions[a] != actions[b]) return actions[a] < actions[b];
		return a < b;
	});

	// Canonical differential D0 in position space: d gamma = beta for some
	// strictly action-increasing position pairs.
	std::vector<int> pair_of(m, -1); // position of gamma -> position of beta
	std::vector<bool> used(m, false);
	std::uniform_real_distribution<double> coin(0.0, 1.0);
	for (int j = m - 1; j >= 1; --j) {
		if (used[j] || coin(rng) < 0.4) continue;
		std::vector<int> candidates;
		for (int i = 0; i < j; ++i)
			if (!used[i] && actions[ord[i]] < actions[ord[j]]) candidates.push_back(i);
		if (candidates.empty()) continue;
		const int i = candidates[std::uniform_int_distribution<size_t>(0, candidates.size() - 1)(rng)];
		pair_of[j] = i;
		used[i] = used[j] = true;
	}

	// P = I + strictly lower entries (position order); P preserves the
	// filtration, so D = P D0 P^{-1} still strictly decreases action.
	std::vector<std::vector<bool>> P(m, std::vector<bool>(m, false));
	for (int j = 0; j < m; ++j) {
		P[j][j] = true;
		for (int i = 0; i < j; ++i)
			if (coin(rng) < 0.3) P[j][i] = true;
	}
	// Forward substitution for P^{-1} (unit lower triangular in columns).
	std::vector<std::vector<bool>> Pinv(m, std::vector<bool>(m, false));
	for (int j = 0; j < m; ++j) {
		std::vector<bool> e(m, false);
		e[j] = true; // solve P x = e_j, columns P[c] have support below c
		for (int c = m - 1; c >= 0; --c)
			if (e[c])
				for (int i = 0; i < c; ++i)
					if (P[c][i]) e[i] = !e[i];
		Pinv[j] = e;
	}

	auto apply_cols = [&](const std::vector<std::vector<bool>>& mat, const std::vector<bool>& v) {
		std::vector<bool> out(m, false);
		for (int c = 0; c < m; ++c)
			if (v[c])
				for (int i = 0; i < m; ++i)
					if (mat[c][i]) out[i] = !out[i];
		return out;
	};

	filtered_complex cx;
	for (int i = 0; i < m; ++i) cx.add_generator("g" + std::to_string(i), i % 2, actions[i]);
	for (int j = 0; j < m; ++j) {
		// Column j of D = P D0 P^{-1} in position space.
		std::vector<bool> v = Pinv[j];
		std::vector<bool> d0(m, false);
		for (int c = 0; c < m; ++c)
			if (v[c] && pair_of[c] >= 0) d0[pair_of[c]] = !d0[pair_of[c]];
		const std::vector<bool> dj = apply_cols(P, d0);
		for (int i = 0; i < m; ++i)
			if (dj[i]) cx.add_differential_entry(ord[j], ord[i]);
	}
	cx.validate();
	return cx;
}

} // namespace oracle
