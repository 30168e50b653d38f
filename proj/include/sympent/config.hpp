#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sympent/errors.hpp"

namespace sympent {

// Line-oriented `key: value` configuration; '#' starts a comment. Values keep
// internal whitespace, so lists can be given space-separated.
class experiment_config {
public:
	experiment_config() = default;

	static experiment_config parse(std::istream& is) {
		experiment_config cfg;
		std::string line;
		int lineno = 0;
		while (std::getline(is, line)) {
			++lineno;
			const auto hash = line.find('#');
			if (hash != std::string::npos) line.erase(hash);
			const std::string trimmed = trim(line);
			if (trimmed.empty()) continue;
			const auto colon = trimmed.find(':');
			if (colon == std::string::npos)
				throw input_error("config line " + std::to_string(lineno) + ": expected 'key: value'");
			const std::string key = trim(trimmed.substr(0, colon));
			const std::string value = trim(trimmed.substr(colon + 1));
			if (key.empty())
				throw input_error("config line " + std::to_string(lineno) + ": empty key");
			if (!cfg.values_.emplace(key, value).second)
				throw input_error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
		}
		return cfg;
	}

	static experiment_config parse_file(const std::string& path) {
		std::ifstream f(path);
		if (!f) throw input_error("config: cannot open '" + path + "'");
		return parse(f);
	}

	void set(const std::string& key, const std::string& value) { values_[key] = value; }

	bool has(const std::string& key) const { return values_.count(key) != 0; }

	std::string get_string(const std::string& key, const std::string& fallback = "") const {
		const auto it = values_.find(key);
		return it == values_.end() ? fallback : it->second;
	}

	std::string require(const std::string& key) const {
		const auto it = values_.find(key);
		if (it == values_.end()) throw input_error("config: missing key '" + key + "'");
		return it->second;
	}

	long long get_int(const std::string& key, long long fallback) const {
		const auto it = values_.find(key);
		if (it == values_.end()) return fallback;
		try {
			size_t pos = 0;
			const long long v = std::stoll(it->second, &pos);
			if (pos != it->second.size()) throw input_error("");
			return v;
		} catch (...) {
			throw input_error("config: key '" + key + "' is not an integer: '" + it->second + "'");
		}
	}

	double get_double(const std::string& key, double fallback) const {
		const auto it = values_.find(key);
		if (it == values_.end()) return fallback;
		try {
			size_t pos = 0;
			const double v = std::stod(it->second, &pos);
			if (pos != it->second.size()) throw input_error("");
			return v;
		} catch (...) {
			throw input_error("config: key '" + key + "' is not a number: '" + it->second + "'");
		}
	}

	std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const {
		const auto it = values_.find(key);
		if (it == values_.end()) return fallback;
		std::vector<double> out;
		std::istringstream ss(it->second);
		std::string tok;
		while (ss >> tok) {
			try {
				out.push_back(std::stod(tok));
			} catch (...) {
				throw input_error("config: key '" + key + "' has a non-numeric entry: '" + tok + "'");
			}
		}
		if (out.empty()) throw input_error("config: key '" + key + "' has an empty list");
		return out;
	}

	std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("seed", 1)); }

	double tol() const {
		const double t = get_double("tol", 0.05);
		if (t <= 0.0) throw input_error("config: tol must be positive");
		return t;
	}

	const std::map<std::string, std::string>& entries() const { return values_; }

private:
	static std::string trim(const std::string& s) {
		const auto b = s.find_first_not_of(" \t\r\n");
		if (b == std::string::npos) return "";
		const auto e = s.find_last_not_of(" \t\r\n");
		return s.substr(b, e - b + 1);
	}

	std::map<std::string, std::string> values_;
};

} // namespace sympent
