#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/fit.hpp"
#include "sympent/rational.hpp"

namespace sympent {

using bigint = boost::multiprecision::cpp_int;

enum class parity { even, odd };

// A tree of Lagrangian spheres; vertex order fixes the homology basis.
class plumbing_tree {
public:
	plumbing_tree(std::vector<std::string> vertices,
	              std::vector<std::pair<std::string, std::string>> edges)
	    : vertices_(std::move(vertices)) {
		if (vertices_.empty()) throw input_error("plumbing_tree: need at least one vertex");
		for (size_t i = 0; i < vertices_.size(); ++i) {
			if (!index_.emplace(vertices_[i], static_cast<int>(i)).second)
				throw input_error("plumbing_tree: duplicate vertex '" + vertices_[i] + "'");
		}
		adj_.resize(vertices_.size());
		for (const auto& [a, b] : edges) {
			const int ia = index_of(a), ib = index_of(b);
			if (ia == ib) throw input_error("plumbing_tree: self-loop at '" + a + "'");
			adj_[ia].insert(ib);
			adj_[ib].insert(ia);
		}
		if (edges.size() + 1 != vertices_.size() || !connected())
			throw validation_error("plumbing_tree: edges do not form a tree");
	}

	// Linear A_k tree with vertices V1..Vk (A2 gets the short names A, B).
	static plumbing_tree linear(int k) {
		if (k < 1) throw input_error("plumbing_tree: linear tree needs k >= 1");
		std::vector<std::string> vs;
		for (int i = 0; i < k; ++i) {
			if (k == 2)
				vs.push_back(i == 0 ? "A" : "B");
			else
				vs.push_back("V" + std::to_string(i + 1));
		}
		std::vector<std::pair<std::string, std::string>> es;
		for (int i = 0; i + 1 < k; ++i) es.emplace_back(vs[i], vs[i + 1]);
		return plumbing_tree(vs, es);
	}

	int size() const { return static_cast<int>(vertices_.size()); }
	const std::vector<std::string>& vertices() const { return vertices_; }
	const std::set<int>& neighbors(int v) const { return adj_[v]; }

	int index_of(const std::string& v) const {
		auto it = index_.find(v);
		if (it == index_.end()) throw input_error("plumbing_tree: unknown vertex '" + v + "'");
		return it->second;
	}

private:
	bool connected() const {
		std::vector<int> stack{0};
		std::set<int> seen{0};
		while (!stack.empty()) {
			const int v = stack.back();
			stack.pop_back();
			for (int w : adj_[v])
				if (seen.insert(w).second) stack.push_back(w);
		}
		return seen.size() == vertices_.size();
	}

	std::vector<std::string> vertices_;
	std::map<std::string, int> index_;
	std::vector<std::set<int>> adj_;
};

struct twist_letter {
	std::string vertex;
	int exponent = 1; // +1 or -1
};

using twist_word = std::vector<twist_letter>;

// Square integer matrix indexed by tree vertices.
struct imatrix {
	int n = 0;
	std::vector<std::vector<long long>> a;

	static imatrix identity(int n) {
		imatrix m{n, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0))};
		for (int i = 0; i < n; ++i) m.a[i][i] = 1;
		return m;
	}

	bool operator==(const imatrix&) const = default;
};

inline imatrix operator*(const imatrix& x, const imatrix& y) {
	if (x.n != y.n) throw input_error("imatrix: size mismatch");
	imatrix z = imatrix::identity(x.n);
	for (int i = 0; i < x.n; ++i)
		for (int j = 0; j < x.n; ++j) {
			long long s = 0;
			for (int k = 0; k < x.n; ++k) s += x.a[i][k] * y.a[k][j];
			z.a[i][j] = s;
		}
	return z;
}

inline imatrix entrywise_abs(const imatrix& m) {
	imatrix out = m;
	for (auto& row : out.a)
		for (auto& v : row) v = std::llabs(v);
	return out;
}

inline long long determinant(const imatrix& m) {
	// Gauss elimination over exact rationals; sizes are tiny.
	std::vector<std::vector<rat>> a(m.n, std::vector<rat>(m.n));
	for (int i = 0; i < m.n; ++i)
		for (int j = 0; j < m.n; ++j) a[i][j] = rat(m.a[i][j]);
	rat det(1);
	for (int col = 0; col < m.n; ++col) {
		int piv = -1;
		for (int r = col; r < m.n; ++r)
			if (a[r][col] != rat(0)) {
				piv = r;
				break;
			}
		if (piv < 0) return 0;
		if (piv != col) {
			std::swap(a[piv], a[col]);
			det = -det;
		}
		det *= a[col][col];
		for (int r = col + 1; r < m.n; ++r) {
			if (a[r][col] == rat(0)) continue;
			const rat f = a[r][col] / a[col][col];
			for (int c = col; c < m.n; ++c) a[r][c] -= f * a[col][c];
		}
	}
	return boost::rational_cast<long long>(det);
}

// Exact inverse of a unimodular integer matrix.
inline imatrix inverse(const imatrix& m) {
	const int n = m.n;
	std::vector<std::vector<rat>> a(n, std::vector<rat>(2 * n));
	for (int i = 0; i < n; ++i) {
		for (int j = 0; j < n; ++j) a[i][j] = rat(m.a[i][j]);
		a[i][n + i] = rat(1);
	}
	for (int col = 0; col < n; ++col) {
		int piv = -1;
		for (int r = col; r < n; ++r)
			if (a[r][col] != rat(0)) {
				piv = r;
				break;
			}
		if (piv < 0) throw input_error("imatrix: singular matrix has no inverse");
		std::swap(a[piv], a[col]);
		const rat d = a[col][col];
		for (int c = 0; c < 2 * n; ++c) a[col][c] /= d;
		for (int r = 0; r < n; ++r) {
			if (r == col || a[r][col] == rat(0)) continue;
			const rat f = a[r][col];
			for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
		}
	}
	imatrix out = imatrix::identity(n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			const rat& v = a[i][n + j];
			if (v.denominator() != 1)
				throw validation_error("imatrix: inverse is not integral (|det| != 1)");
			out.a[i][j] = v.numerator();
		}
	return out;
}

// Picard-Lefschetz action of the Dehn twist at `vertex` on the basis of
// vertex sphere classes. The fixed class scales by (-1)^(n-1); an adjacent
// class [w] gains c*[v] with c = 1 for v before w in vertex order and
// c = (-1)^n after, calibrated against the printed A2 matrices.
inline imatrix homology_twist_matrix(const plumbing_tree& tree, const std::string& vertex,
                                     parity par) {
	const int v = tree.index_of(vertex);
	const int self = (par == parity::even) ? -1 : 1;   // (-1)^(n-1)
	const int after = (par == parity::even) ? 1 : -1;  // (-1)^n
	imatrix m = imatrix::identity(tree.size());
	m.a[v][v] = self;
	for (int w : tree.neighbors(v)) m.a[v][w] = (v < w) ? 1 : after;
	return m;
}

// Ordered product of twist matrices; negative exponents use the exact
// integer inverse.
inline imatrix word_homology_action(const plumbing_tree& tree, const twist_word& word, parity par) {
	imatrix m = imatrix::identity(tree.size());
	for (const auto& letter : word) {
		if (letter.exponent != 1 && letter.exponent != -1)
			throw input_error("twist_word: exponent must be +1 or -1");
		imatrix t = homology_twist_matrix(tree, letter.vertex, par);
		if (letter.exponent < 0) t = inverse(t);
		m = m * t;
	}
	return m;
}

// Maximal eigenvalue modulus.
inline double spectral_radius(const imatrix& m) {
	if (m.n == 0) throw input_error("spectral_radius: empty matrix");
	Eigen::MatrixXd e(m.n, m.n);
	for (int i = 0; i < m.n; ++i)
		for (int j = 0; j < m.n; ++j) e(i, j) = static_cast<double>(m.a[i][j]);
	Eigen::EigenSolver<Eigen::MatrixXd> solver(e, /*computeEigenvectors=*/false);
	double rad = 0.0;
	for (int i = 0; i < m.n; ++i) rad = std::max(rad, std::abs(solver.eigenvalues()[i]));
	return rad;
}

namespace detail {

inline std::vector<std::vector<bigint>> big_matrix(const imatrix& m) {
	std::vector<std::vector<bigint>> out(m.n, std::vector<bigint>(m.n));
	for (int i = 0; i < m.n; ++i)
		for (int j = 0; j < m.n; ++j) out[i][j] = m.a[i][j];
	return out;
}

inline std::vector<bigint> apply_matrix(const std::vector<std::vector<bigint>>& m,
                                        const std::vector<bigint>& v) {
	std::vector<bigint> out(m.size(), 0);
	for (size_t i = 0; i < m.size(); ++i)
		for (size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
	return out;
}

// Unsigned transfer matrix of the word: each letter contributes the
// entry-wise absolute value of its homology matrix (or inverse). This is
// the model for Hom-dimension growth; positive and negative twists give
// transposed unipotent patterns.
inline imatrix unsigned_transfer_matrix(const plumbing_tree& tree, const twist_word& word,
                                        parity par) {
	imatrix m = imatrix::identity(tree.size());
	for (const auto& letter : word) {
		imatrix t = homology_twist_matrix(tree, letter.vertex, par);
		if (letter.exponent < 0) t = inverse(t);
		m = m * entrywise_abs(t);
	}
	return m;
}

inline entropy_estimate transfer_growth(const imatrix& m, const std::vector<bigint>& v0,
                                        int n_max) {
	if (n_max < 4) throw input_error("transfer growth: n_max must be >= 4");
	auto big = big_matrix(m);
	std::vector<bigint> v = v0;
	std::vector<std::pair<int, double>> counts;
	for (int n = 1; n <= n_max; ++n) {
		v = apply_matrix(big, v);
		bigint sum = 0;
		for (const auto& x : v) sum += x;
		counts.emplace_back(n, sum.convert_to<double>());
	}
	return growth_rate_fit(counts);
}

} // namespace detail

// Growth factor of ||M^n 1||_1 for the unsigned transfer matrix M of the
// word; entropy is its natural log. Both parities give the same unsigned
// matrix, so the parity argument is omitted.
inline entropy_estimate hom_growth_entropy(const plumbing_tree& tree, const twist_word& word,
                                           int n_max) {
	if (n_max < 4) throw input_error("hom_growth_entropy: n_max must be >= 4");
	const imatrix m = detail::unsigned_transfer_matrix(tree, word, parity::even);
	return detail::transfer_growth(m, std::vector<bigint>(tree.size(), 1), n_max);
}

// Same transfer growth with sphere classes paired against the dual cocore
// basis (identity intersection matrix): growth of the total entry sum of M^n.
inline entropy_estimate compact_model_entropy(const plumbing_tree& tree, const twist_word& word,
                                              int n_max) {
	if (n_max < 4) throw input_error("compact_model_entropy: n_max must be >= 4");
	const imatrix m = detail::unsigned_transfer_matrix(tree, word, parity::even);
	auto big = detail::big_matrix(m);
	auto power = detail::big_matrix(imatrix::identity(tree.size()));
	std::vector<std::pair<int, double>> counts;
	for (int n = 1; n <= n_max; ++n) {
		std::vector<std::vector<bigint>> next(m.n, std::vector<bigint>(m.n, 0));
		for (int i = 0; i < m.n; ++i)
			for (int k = 0; k < m.n; ++k)
				for (int j = 0; j < m.n; ++j) next[i][j] += power[i][k] * big[k][j];
		power = std::move(next);
		bigint sum = 0;
		for (const auto& row : power)
			for (const auto& x : row) sum += x;
		counts.emplace_back(n, sum.convert_to<double>());
	}
	return growth_rate_fit(counts);
}

struct spectral_bound_report {
	bool ok = false;
	double log_rad = 0.0;
	double h_cat_model = 0.0;
};

// ln Rad(word action on homology) <= model categorical entropy, within tol.
inline spectral_bound_report spectral_lower_bound_check(const plumbing_tree& tree,
                                                        const twist_word& word, parity par,
                                                        int n_max, double tol = 1e-6) {
	spectral_bound_report rep;
	rep.log_rad = std::log(spectral_radius(word_homology_action(tree, word, par)));
	rep.h_cat_model = hom_growth_entropy(tree, word, n_max).value;
	rep.ok = rep.log_rad <= rep.h_cat_model + tol;
	return rep;
}

} // namespace sympent
