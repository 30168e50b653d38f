#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/rational.hpp"

namespace sympent {

// A chain with Z/2 coefficients, stored as the set of generator indices
// in its support. Symmetric difference is addition.
using chain = std::set<int>;

inline void add_to(chain& a, const chain& b) {
	for (int i : b) {
		auto [it, inserted] = a.insert(i);
		if (!inserted) a.erase(it);
	}
}

struct generator {
	std::string id;
	int degree = 0; // Z/2
	rat action{0};
};

// A finite Z/2 chain complex whose differential strictly decreases the
// action value of every generator it touches.
class filtered_complex {
public:
	filtered_complex() = default;

	int add_generator(const std::string& id, int degree, const rat& action) {
		if (index_.count(id)) throw input_error("duplicate generator id '" + id + "'");
		const int k = static_cast<int>(gens_.size());
		index_[id] = k;
		gens_.push_back({id, ((degree % 2) + 2) % 2, action});
		diff_.emplace_back();
		return k;
	}

	// Adds (mod 2) the entry sending generator `from` to generator `to`.
	void add_differential_entry(const std::string& from, const std::string& to) {
		add_to(diff_[index_of(from)], chain{index_of(to)});
	}

	void add_differential_entry(int from, int to) {
		check_index(from);
		check_index(to);
		add_to(diff_[from], chain{to});
	}

	int size() const { return static_cast<int>(gens_.size()); }
	const generator& gen(int i) const { return gens_[i]; }
	const chain& differential(int i) const { return diff_[i]; }

	int index_of(const std::string& id) const {
		auto it = index_.find(id);
		if (it == index_.end()) throw input_error("unknown generator id '" + id + "'");
		return it->second;
	}

	chain boundary(const chain& c) const {
		chain out;
		for (int i : c) {
			check_index(i);
			add_to(out, diff_[i]);
		}
		return out;
	}

	// d^2 = 0 and strict action decrease on every nonzero entry.
	void validate() const {
		for (int j = 0; j < size(); ++j) {
			for (int i : diff_[j]) {
				if (!(gens_[i].action < gens_[j].action))
					throw validation_error("differential does not decrease action: " + gens_[j].id +
					                       " -> " + gens_[i].id);
			}
			if (!boundary(diff_[j]).empty())
				throw validation_error("d^2 != 0 at generator " + gens_[j].id);
		}
	}

	// Shifts every action by the same constant (Floer actions are only
	// defined up to a choice of primitives).
	filtered_complex shifted(const rat& c) const {
		filtered_complex out = *this;
		for (auto& g : out.gens_) g.action += c;
		return out;
	}

private:
	void check_index(int i) const {
		if (i < 0 || i >= size()) throw input_error("generator index out of range");
	}

	std::vector<generator> gens_;
	std::vector<chain> diff_;
	std::map<std::string, int> index_;
};

// Non-Archimedean norm: max action over the support, -infinity (nullopt)
// for the zero chain.
inline std::optional<rat> norm(const std::vector<std::string>& support, const filtered_complex& cx) {
	chain c;
	for (const auto& id : support) add_to(c, chain{cx.index_of(id)});
	if (c.empty()) return std::nullopt;
	rat best = cx.gen(*c.begin()).action;
	for (int i : c) best = std::max(best, cx.gen(i).action);
	return best;
}

inline std::optional<rat> norm(const chain& c, const filtered_complex& cx) {
	if (c.empty()) return std::nullopt;
	rat best = cx.gen(*c.begin()).action;
	for (int i : c) {
		if (i < 0 || i >= cx.size()) throw input_error("chain support outside complex");
		best = std::max(best, cx.gen(i).action);
	}
	return best;
}

// --- fcx v1 text format ------------------------------------------------
//
//   fcx v1 <n_generators>
//   <id> <degree> <num>/<den>        (one line per generator)
//   d <id_from> <id_to>              (one line per nonzero entry)

inline void write_fcx(std::ostream& os, const filtered_complex& cx) {
	os << "fcx v1 " << cx.size() << "\n";
	for (int i = 0; i < cx.size(); ++i) {
		const auto& g = cx.gen(i);
		os << g.id << " " << g.degree << " " << g.action.numerator() << "/" << g.action.denominator()
		   << "\n";
	}
	for (int j = 0; j < cx.size(); ++j)
		for (int i : cx.differential(j)) os << "d " << cx.gen(j).id << " " << cx.gen(i).id << "\n";
}

inline filtered_complex read_fcx(std::istream& is) {
	std::string magic, version;
	int n = -1;
	if (!(is >> magic >> version >> n) || magic != "fcx" || version != "v1" || n < 0)
		throw input_error("fcx: bad header");
	filtered_complex cx;
	for (int i = 0; i < n; ++i) {
		std::string id, action;
		int degree;
		if (!(is >> id >> degree >> action)) throw input_error("fcx: truncated generator list");
		cx.add_generator(id, degree, parse_rational(action));
	}
	std::string tag;
	while (is >> tag) {
		if (tag != "d") throw input_error("fcx: unexpected token '" + tag + "'");
		std::string from, to;
		if (!(is >> from >> to)) throw input_error("fcx: truncated differential entry");
		cx.add_differential_entry(from, to);
	}
	return cx;
}

} // namespace sympent
