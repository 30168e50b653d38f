#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sympent/geodesics.hpp"
#include "sympent/morse_circle.hpp"

using namespace sympent;

namespace {

trig_poly cosine(int harmonic, double amp = 1.0) {
	trig_poly f;
	f.cos_coeffs.assign(harmonic, 0.0);
	f.cos_coeffs[harmonic - 1] = amp;
	return f;
}

geodesic_pair cat_pair() {
	geodesic_pair p;
	p.v1x = 1;
	p.v1y = 0;
	p.v2x = 0;
	p.v2y = 1;
	p.automorphism = imatrix{2, {{2, 1}, {1, 1}}};
	return p;
}

} // namespace

TEST_CASE("graph pair with a single oscillation") {
	graph_pair gp;
	gp.f2 = cosine(1);
	const auto cx = graph_pair_complex(gp);
	REQUIRE(cx.size() == 2);
	// One max, one min; the two boundary arcs hit the same minimum and
	// cancel over Z/2, so the differential vanishes.
	const auto bc = barcode_of(cx);
	CHECK(bc.infinite == 2);
	CHECK(bc.finite.empty());
}

TEST_CASE("graph pair with two oscillations") {
	graph_pair gp;
	gp.f2 = cosine(2);
	const auto cx = graph_pair_complex(gp);
	REQUIRE(cx.size() == 4);
	const auto bc = barcode_of(cx);
	CHECK(bc.infinite == 2);
	REQUIRE(bc.finite.size() == 1);
	CHECK(to_double(bc.finite[0]) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("graph pair actions are the critical values") {
	graph_pair gp;
	gp.f1 = cosine(1, 0.25);
	gp.f2 = cosine(1, 1.25); // difference is cos(2 pi q)
	const auto cx = graph_pair_complex(gp);
	rat lo(1), hi(-1);
	for (int i = 0; i < cx.size(); ++i) {
		lo = std::min(lo, cx.gen(i).action);
		hi = std::max(hi, cx.gen(i).action);
	}
	CHECK(to_double(lo) == doctest::Approx(-1.0).epsilon(1e-6));
	CHECK(to_double(hi) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("graph pair barcode is invariant under a constant shift") {
	graph_pair gp;
	gp.f2 = cosine(2);
	const auto base = barcode_of(graph_pair_complex(gp));
	gp.f2.a0 = 0.37;
	const auto shifted = barcode_of(graph_pair_complex(gp));
	CHECK(base.infinite == shifted.infinite);
	CHECK(base.finite == shifted.finite);
}

TEST_CASE("degenerate graph pairs are rejected") {
	SUBCASE("equal graphs have no critical points") {
		graph_pair gp;
		gp.f1 = cosine(1);
		gp.f2 = cosine(1);
		CHECK_THROWS_AS(graph_pair_complex(gp), degeneracy_error);
	}
	SUBCASE("flat critical point") {
		graph_pair gp;
		// h = 4 cos(2 pi q) + cos(4 pi q): h' = -8 pi sin(2 pi q)(1 + cos(2 pi q))
		// changes sign at q = 1/2 where h'' vanishes.
		gp.f2.cos_coeffs = {4.0, 1.0};
		CHECK_THROWS_AS(graph_pair_complex(gp), degeneracy_error);
	}
}

TEST_CASE("geodesic intersection counts") {
	const auto p = cat_pair();
	CHECK(geodesic_intersection_count(p, 1) == 1);
	CHECK(geodesic_intersection_count(p, 2) == 2);
	CHECK(geodesic_intersection_count(p, 3) == 5);
	CHECK(geodesic_intersection_count(p, -1) == 2); // inverse automorphism
	CHECK(geodesic_pair_barcode(p, 3).infinite == 5);

	SUBCASE("non-primitive direction") {
		auto q = p;
		q.v2x = 2;
		q.v2y = 2;
		CHECK_THROWS_AS(geodesic_intersection_count(q, 1), input_error);
	}
	SUBCASE("non-unimodular automorphism") {
		auto q = p;
		q.automorphism = imatrix{2, {{2, 0}, {0, 1}}};
		CHECK_THROWS_AS(geodesic_intersection_count(q, 1), input_error);
	}
	SUBCASE("parallel directions") {
		geodesic_pair q;
		q.v2x = 1;
		q.v2y = 0;
		CHECK_THROWS_AS(geodesic_intersection_count(q, 0), parallel_error);
	}
}

TEST_CASE("barcode entropy experiment") {
	const std::vector<double> eps_grid{0.5, 0.25, 0.125};

	SUBCASE("geodesic counts reach the automorphism entropy") {
		const auto p = cat_pair();
		const auto res = barcode_entropy_experiment(
		    [&](int n) { return geodesic_pair_barcode(p, n); }, eps_grid, 20);
		const double target = std::log((3.0 + std::sqrt(5.0)) / 2.0);
		CHECK(res.h_bar.value == doctest::Approx(target).epsilon(1e-2));
		CHECK(res.plateau == doctest::Approx(0.0)); // infinite bars ignore eps
		CHECK(!res.trivial);
	}
	SUBCASE("doubling counts give exactly ln 2") {
		const auto res = barcode_entropy_experiment(
		    [](int n) {
			    barcode bc;
			    bc.infinite = 1 << n;
			    return bc;
		    },
		    eps_grid, 16);
		CHECK(res.h_bar.value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
	}
	SUBCASE("constant barcodes give exactly zero") {
		const auto res = barcode_entropy_experiment(
		    [](int) {
			    barcode bc;
			    bc.infinite = 2;
			    return bc;
		    },
		    eps_grid, 10);
		CHECK(res.h_bar.value == 0.0);
		CHECK(!res.trivial);
	}
	SUBCASE("empty barcodes are flagged trivial") {
		const auto res =
		    barcode_entropy_experiment([](int) { return barcode{}; }, eps_grid, 10);
		CHECK(res.trivial);
		CHECK(res.h_bar.value == 0.0);
	}
	SUBCASE("validation") {
		auto gen = [](int) { return barcode{}; };
		CHECK_THROWS_AS(barcode_entropy_experiment(gen, eps_grid, 5), input_error);
		CHECK_THROWS_AS(barcode_entropy_experiment(gen, {}, 10), input_error);
		CHECK_THROWS_AS(barcode_entropy_experiment(gen, {0.25, 0.5}, 10), input_error);
	}
	SUBCASE("csv output") {
		const auto res = barcode_entropy_experiment(
		    [](int n) {
			    barcode bc;
			    bc.infinite = n;
			    return bc;
		    },
		    {0.5}, 6);
		std::stringstream ss;
		write_bar_experiment_csv(ss, res);
		CHECK(ss.str().substr(0, 20) == "n,epsilon,b_epsilon\n");
		CHECK(ss.str().find("1,0.5,1\n") != std::string::npos);
	}
}
