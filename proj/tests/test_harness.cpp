#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sympent/config.hpp"
#include "sympent/fit.hpp"
#include "sympent/report.hpp"

using namespace sympent;

namespace {

const double kGoldenLog = std::log((3.0 + std::sqrt(5.0)) / 2.0);

experiment_config quick_cat_config() {
	experiment_config cfg;
	cfg.set("system", "cat_map");
	cfg.set("cap_eps", "0.125 0.0625");
	cfg.set("cap_k", "3 4 5 6");
	cfg.set("cap_grid", "64");
	cfg.set("cap_grid_y", "2000 4000");
	cfg.set("tol", "0.1");
	return cfg;
}

} // namespace

TEST_CASE("growth rate fit") {
	SUBCASE("geometric counts give the exact rate") {
		std::vector<std::pair<int, double>> pts;
		for (int n = 1; n <= 12; ++n) pts.emplace_back(n, std::pow(2.0, n));
		const auto est = growth_rate_fit(pts);
		CHECK(est.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
		CHECK(est.growth_factor == doctest::Approx(2.0).epsilon(1e-12));
	}
	SUBCASE("all-zero counts give exactly zero") {
		const auto est = growth_rate_fit({{1, 0.0}, {2, 0.0}, {3, 0.0}, {4, 0.0}});
		CHECK(est.value == 0.0);
		CHECK(est.growth_factor == 1.0);
	}
	SUBCASE("matrix-power norms reach the leading eigenvalue") {
		std::vector<std::pair<int, double>> pts;
		double v0 = 1.0, v1 = 1.0;
		for (int n = 1; n <= 30; ++n) {
			const double w0 = 2.0 * v0 + v1, w1 = v0 + v1;
			v0 = w0;
			v1 = w1;
			pts.emplace_back(n, v0 + v1);
		}
		CHECK(growth_rate_fit(pts).value == doctest::Approx(kGoldenLog).epsilon(1e-3));
	}
	SUBCASE("slope is invariant under scaling the counts") {
		std::vector<std::pair<int, double>> a, b;
		for (int n = 1; n <= 10; ++n) {
			const double v = std::pow(1.7, n) + n;
			a.emplace_back(n, v);
			b.emplace_back(n, 7.0 * v);
		}
		CHECK(growth_rate_fit(a).value == doctest::Approx(growth_rate_fit(b).value).epsilon(1e-12));
	}
	SUBCASE("validation") {
		CHECK_THROWS_AS(growth_rate_fit({{1, 1.0}, {2, 2.0}, {3, 4.0}}), input_error);
		CHECK_THROWS_AS(growth_rate_fit({{1, 1.0}, {2, -2.0}, {3, 4.0}, {4, 8.0}}), input_error);
		CHECK_THROWS_AS(growth_rate_fit_positive({{1, 1.0}, {2, 0.0}, {3, 4.0}, {4, 8.0}}),
		                input_error);
	}
	SUBCASE("log plus clamps zero") {
		CHECK(log_plus(0.0) == 0.0);
		CHECK(log_plus(-1.0) == 0.0);
		CHECK(log_plus(std::exp(1.0)) == doctest::Approx(1.0));
	}
}

TEST_CASE("pairwise sum matches sequential summation") {
	std::mt19937_64 rng(31);
	std::uniform_real_distribution<double> u(-1.0, 1.0);
	std::vector<double> xs(1000);
	for (auto& x : xs) x = u(rng);
	const double plain = std::accumulate(xs.begin(), xs.end(), 0.0);
	CHECK(pairwise_sum(xs) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("config parsing") {
	std::stringstream ss("# comment\nsystem: cat_map\n  tol :  0.07  # inline\ncap_eps: 0.5 0.25\n");
	const auto cfg = experiment_config::parse(ss);
	CHECK(cfg.require("system") == "cat_map");
	CHECK(cfg.tol() == doctest::Approx(0.07));
	CHECK(cfg.get_doubles("cap_eps", {})[1] == doctest::Approx(0.25));
	CHECK(cfg.get_int("missing", 9) == 9);
	CHECK(!cfg.has("missing"));

	SUBCASE("errors") {
		std::stringstream bad1("no colon here\n");
		CHECK_THROWS_AS(experiment_config::parse(bad1), input_error);
		std::stringstream bad2("a: 1\na: 2\n");
		CHECK_THROWS_AS(experiment_config::parse(bad2), input_error);
		experiment_config c;
		c.set("n", "abc");
		CHECK_THROWS_AS(c.get_int("n", 0), input_error);
		CHECK_THROWS_AS(c.get_double("n", 0.0), input_error);
		CHECK_THROWS_AS(c.require("nope"), input_error);
		c.set("tol", "-1");
		CHECK_THROWS_AS(c.tol(), input_error);
	}
}

TEST_CASE("compare entropies on the cat-map system") {
	const auto rep = compare_entropies(quick_cat_config());
	REQUIRE(rep.h_cat_model.has_value());
	REQUIRE(rep.h_bar.has_value());
	REQUIRE(rep.h_top_capacity.has_value());
	REQUIRE(rep.h_top_volume.has_value());
	CHECK(rep.h_cat_model->value == doctest::Approx(kGoldenLog).epsilon(1e-6));
	CHECK(rep.h_bar->value == doctest::Approx(kGoldenLog).epsilon(0.02));
	CHECK(rep.h_top_volume->value == doctest::Approx(kGoldenLog).epsilon(0.01));
	CHECK(rep.h_top_capacity->value == doctest::Approx(kGoldenLog).epsilon(0.15));

	REQUIRE(rep.verdicts.size() == 4);
	CHECK(rep.verdicts[0].name == "h_cat<=h_bar");
	CHECK(rep.verdicts[1].name == "h_bar<=h_top");
	CHECK(rep.verdicts[2].name == "h_cat<=h_top");
	for (const auto& v : rep.verdicts) {
		CHECK(v.slack == doctest::Approx(v.rhs + v.tol - v.lhs));
		CHECK(v.pass == (v.lhs <= v.rhs + v.tol));
	}
}

TEST_CASE("support-avoiding pair has zero barcode entropy") {
	auto cfg = quick_cat_config();
	cfg.set("system", "support_avoiding");
	const auto rep = compare_entropies(cfg);
	CHECK(!rep.h_cat_model.has_value());
	REQUIRE(rep.h_bar.has_value());
	CHECK(rep.h_bar->value == 0.0);
	CHECK(rep.all_pass()); // 0 <= h_top always
}

TEST_CASE("horseshoe system reports the itinerary model") {
	experiment_config cfg;
	cfg.set("system", "horseshoe");
	cfg.set("tol", "0.05");
	const auto rep = compare_entropies(cfg);
	CHECK(!rep.h_cat_model.has_value());
	REQUIRE(rep.h_bar.has_value());
	CHECK(rep.h_bar->value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
	REQUIRE(rep.h_top_capacity.has_value());
	REQUIRE(rep.verdicts.size() == 1);
	CHECK(rep.verdicts[0].name == "h_bar<=h_top");
}

TEST_CASE("unknown systems and missing keys are rejected") {
	experiment_config cfg;
	cfg.set("system", "pendulum");
	CHECK_THROWS_AS(compare_entropies(cfg), input_error);
	experiment_config empty;
	CHECK_THROWS_AS(compare_entropies(empty), input_error);
}

TEST_CASE("reports serialize deterministically") {
	const auto a = to_json(compare_entropies(quick_cat_config())).dump(2);
	const auto b = to_json(compare_entropies(quick_cat_config())).dump(2);
	CHECK(a == b);
	CHECK(a.find("\"verdicts\"") != std::string::npos);

	std::stringstream est1, est2, ver;
	const auto rep = compare_entropies(quick_cat_config());
	write_estimates_csv(est1, rep);
	write_estimates_csv(est2, rep);
	CHECK(est1.str() == est2.str());
	CHECK(est1.str().find("h_cat_model") != std::string::npos);
	write_verdicts_csv(ver, rep);
	CHECK(ver.str().find("PASS") != std::string::npos);
}

TEST_CASE("sup inf sweep") {
	geodesic_pair base = detail::cat_geodesic_pair();
	std::vector<std::pair<std::string, std::function<barcode(int)>>> family;
	for (long long vy = 1; vy <= 2; ++vy) {
		geodesic_pair p = base;
		p.v2x = 1;
		p.v2y = vy;
		family.emplace_back("pair_1_" + std::to_string(vy),
		                    [p](int n) { return geodesic_pair_barcode(p, n); });
	}
	geodesic_pair fixed = base;
	fixed.automorphism = imatrix::identity(2);
	family.emplace_back("support_avoiding",
	                    [fixed](int n) { return geodesic_pair_barcode(fixed, n); });

	const auto res = sup_inf_sweep(family, {0.5, 0.25}, 16, kGoldenLog, 0.0);
	REQUIRE(res.rows.size() == 3);
	CHECK(res.max_h_bar == doctest::Approx(kGoldenLog).epsilon(0.05));
	CHECK(res.min_h_bar == 0.0);
	CHECK(res.rows.back().running_min == res.min_h_bar);

	std::stringstream csv;
	write_sweep_csv(csv, res);
	CHECK(csv.str().find("support_avoiding") != std::string::npos);

	family.resize(2);
	CHECK_THROWS_AS(sup_inf_sweep(family, {0.5, 0.25}, 16), input_error);
}
