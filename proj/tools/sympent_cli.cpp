// Command-line front end: reduction of filtered complexes, entropy
// estimators, Crofton checks, and the cross-estimator comparison reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sympent/capacity.hpp"
#include "sympent/config.hpp"
#include "sympent/curves.hpp"
#include "sympent/filtered_complex.hpp"
#include "sympent/geodesics.hpp"
#include "sympent/maps.hpp"
#include "sympent/morse_circle.hpp"
#include "sympent/reduction.hpp"
#include "sympent/report.hpp"
#include "sympent/tomograph.hpp"
#include "sympent/twist.hpp"

using namespace sympent;

namespace {

struct common_opts {
	std::string config_path;
	std::string out_dir = ".";
	long long seed = -1;   // -1: take the config's value
	double tol = -1.0;     // <0: take the config's value
};

void add_common(CLI::App* cmd, common_opts& opts, bool config_required = true) {
	auto* c = cmd->add_option("--config", opts.config_path, "experiment config file");
	if (config_required) c->required();
	cmd->add_option("--out-dir", opts.out_dir, "directory for report artifacts");
	cmd->add_option("--seed", opts.seed, "RNG seed override");
	cmd->add_option("--tol", opts.tol, "inequality tolerance override");
}

experiment_config load_config(const common_opts& opts) {
	experiment_config cfg;
	if (!opts.config_path.empty()) cfg = experiment_config::parse_file(opts.config_path);
	if (opts.seed >= 0) cfg.set("seed", std::to_string(opts.seed));
	if (opts.tol >= 0.0) cfg.set("tol", std::to_string(opts.tol));
	return cfg;
}

std::ofstream open_artifact(const common_opts& opts, const std::string& name) {
	std::filesystem::create_directories(opts.out_dir);
	const auto path = std::filesystem::path(opts.out_dir) / name;
	std::ofstream f(path);
	if (!f) throw input_error("cannot write '" + path.string() + "'");
	return f;
}

// Letters like "A+ B- V2+": vertex name with a trailing sign.
twist_word parse_word(const std::string& text) {
	twist_word word;
	std::istringstream ss(text);
	std::string tok;
	while (ss >> tok) {
		if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
			throw input_error("word letter '" + tok + "' must end in + or -");
		word.push_back({tok.substr(0, tok.size() - 1), tok.back() == '+' ? 1 : -1});
	}
	if (word.empty()) throw input_error("empty twist word");
	return word;
}

map_system map_from_config(const experiment_config& cfg) {
	const std::string system = cfg.require("system");
	if (system == "cat_map" || system == "support_avoiding")
		return map_system{torus_automorphism{cfg.get_int("torus_a", 2), cfg.get_int("torus_b", 1),
		                                     cfg.get_int("torus_c", 1), cfg.get_int("torus_d", 1)}};
	if (system == "horseshoe")
		return map_system{horseshoe_params{cfg.get_double("hs_contraction", 1.0 / 3.0),
		                                   cfg.get_double("hs_stretch", 3.0),
		                                   cfg.get_double("hs_margin", 0.0)}};
	if (system == "identity") return map_system{identity_map_params{}};
	if (system == "annulus")
		return map_system{annulus_twist_params{bump{cfg.get_double("profile_center", 0.5),
		                                            cfg.get_double("profile_width", 0.5),
		                                            cfg.get_double("profile_height", 0.0125)}}};
	throw input_error("unknown system '" + system + "'");
}

// Two-column CSV (q,p), or one of the built-in shapes.
curve load_curve(const experiment_config& cfg, const std::string& key, const std::string& fallback) {
	const std::string spec = cfg.get_string(key, fallback);
	curve c;
	if (spec == "steep") {
		for (double q = 0.0; q <= 1.0 + 1e-9; q += 0.01)
			c.vertices.push_back({q, std::clamp(20.0 * (q - 0.5), -0.9, 0.9)});
		return c;
	}
	if (spec == "vertical") {
		for (double p = -0.9; p <= 0.9 + 1e-9; p += 0.01) c.vertices.push_back({0.5, p});
		return c;
	}
	if (spec == "horizontal") {
		c.vertices = {{0.0, 0.2}, {1.0, 0.2}};
		return c;
	}
	std::ifstream f(spec);
	if (!f) throw input_error("curve '" + spec + "': not a built-in shape and not a readable file");
	std::string line;
	while (std::getline(f, line)) {
		if (line.empty() || line[0] == '#') continue;
		std::replace(line.begin(), line.end(), ',', ' ');
		std::istringstream ls(line);
		double q, p;
		if (!(ls >> q >> p)) throw input_error("curve file '" + spec + "': bad line '" + line + "'");
		c.vertices.push_back({q, p});
	}
	if (c.vertices.size() < 2) throw input_error("curve file '" + spec + "': need >= 2 points");
	return c;
}

void print_estimate(const std::string& name, const entropy_estimate& e) {
	std::cout << name << ": " << e.value << " nats (" << e.value_base2()
	          << " bits), growth factor " << e.growth_factor << ", fit n in [" << e.fit_n_min
	          << ", " << e.fit_n_max << "], residual " << e.residual << "\n";
}

int cmd_persist(const std::string& in_path, const std::string& eps_text,
                const common_opts& opts) {
	std::ifstream f(in_path);
	if (!f) throw input_error("cannot open '" + in_path + "'");
	const auto cx = read_fcx(f);
	const auto basis = reduce(cx);
	const auto bc = barcode_of(cx);
	std::cout << "generators: " << cx.size() << "\n";
	std::cout << "infinite bars: " << bc.infinite << "\n";
	std::cout << "finite bars: " << bc.finite.size() << "\n";
	for (const auto& p : basis.pairs)
		std::cout << "  pair length " << to_string(p.length) << " (|beta| = " << p.beta.size()
		          << ", |gamma| = " << p.gamma.size() << ")\n";
	if (!eps_text.empty())
		std::cout << "b_eps(" << eps_text << "): " << count_b_epsilon(bc, parse_rational(eps_text))
		          << "\n";
	auto csv = open_artifact(opts, "barcode.csv");
	write_barcode_csv(csv, bc);
	return 0;
}

int cmd_catent(int tree_size, const std::string& word_text, const std::string& parity_text,
               int n_max) {
	const auto tree = plumbing_tree::linear(tree_size);
	const auto word = parse_word(word_text);
	const parity par = parity_text == "odd" ? parity::odd : parity::even;
	const auto m = word_homology_action(tree, word, par);
	std::cout << "homology action:\n";
	for (const auto& row : m.a) {
		std::cout << " ";
		for (long long v : row) std::cout << " " << v;
		std::cout << "\n";
	}
	const double rad = spectral_radius(m);
	std::cout << "spectral radius: " << rad << " (ln = " << std::log(rad) << ")\n";
	print_estimate("h_cat (hom growth model)", hom_growth_entropy(tree, word, n_max));
	print_estimate("h_cat (compact model)", compact_model_entropy(tree, word, n_max));
	const auto bound = spectral_lower_bound_check(tree, word, par, n_max);
	std::cout << "ln Rad <= h_cat: " << (bound.ok ? "PASS" : "FAIL") << "\n";
	return bound.ok ? 0 : 1;
}

int cmd_topent(const common_opts& opts) {
	const auto cfg = load_config(opts);
	const auto map = map_from_config(cfg);

	// Horseshoe defaults oversample the expanding y direction.
	const auto schedule =
	    map.is_horseshoe()
	        ? detail::capacity_schedule(cfg, {1.0 / 4, 1.0 / 8}, {4, 5, 6, 7, 8}, 128,
	                                    {20000, 70000})
	        : detail::capacity_schedule(cfg, {1.0 / 16, 1.0 / 32}, {2, 3, 4, 5}, 1024);
	const auto cap = capacity_entropy(map, schedule);
	print_estimate("h_top (capacity)", cap.estimate);
	{
		auto csv = open_artifact(opts, "capacity.csv");
		csv << "eps,grid,k,boxes\n";
		for (const auto& pe : cap.per_eps)
			for (const auto& [k, boxes] : pe.counts)
				csv << pe.eps << "," << pe.grid << "," << k << "," << boxes << "\n";
	}

	if (!map.is_horseshoe()) {
		const auto c = load_curve(cfg, "curve", "horizontal");
		const auto vol =
		    curve_volume_growth(map, c, static_cast<int>(cfg.get_int("curve_n_max", 14)));
		print_estimate("h_top (curve growth)", vol.estimate);
		auto csv = open_artifact(opts, "curve_growth.csv");
		csv << "n,length\n";
		for (const auto& [n, len] : vol.lengths) csv << n << "," << len << "\n";
	}
	return 0;
}

int cmd_crofton(const common_opts& opts) {
	const auto cfg = load_config(opts);
	const auto l2 = load_curve(cfg, "l2", "steep");
	const int d = static_cast<int>(cfg.get_int("d", 3));
	const double eps = cfg.get_double("eps", 0.1);
	const int samples = static_cast<int>(cfg.get_int("samples", 1000));

	const auto t = build_tomograph(d, eps, l2);
	std::vector<double> raw;
	const auto rep = crofton_check(t, l2, samples, cfg.seed(),
	                               static_cast<int>(cfg.get_int("substeps", 8)), &raw);

	nlohmann::json j{{"d", rep.d},
	                 {"r", rep.radius},
	                 {"n_samples", rep.n_samples},
	                 {"integral", rep.integral},
	                 {"stderr", rep.stderr_},
	                 {"volume", rep.volume},
	                 {"ratio", rep.ratio},
	                 {"tangency_fraction", rep.tangency_fraction},
	                 {"transversality_warning", rep.transversality_warning}};
	std::cout << j.dump(2) << "\n";
	open_artifact(opts, "crofton.json") << j.dump(2) << "\n";
	if (cfg.get_int("dump_counts", 0) != 0) {
		auto csv = open_artifact(opts, "crofton_counts.csv");
		csv << "sample,count\n";
		for (size_t i = 0; i < raw.size(); ++i) csv << i << "," << raw[i] << "\n";
	}
	return 0;
}

int cmd_bar(const common_opts& opts) {
	const auto cfg = load_config(opts);
	const std::string system = cfg.get_string("system", "cat_map");

	geodesic_pair pair;
	pair.automorphism = imatrix{2,
	                            {{cfg.get_int("torus_a", 2), cfg.get_int("torus_b", 1)},
	                             {cfg.get_int("torus_c", 1), cfg.get_int("torus_d", 1)}}};
	if (system == "support_avoiding") pair.automorphism = imatrix::identity(2);
	pair.v2x = cfg.get_int("v2x", 0);
	pair.v2y = cfg.get_int("v2y", 1);

	const auto res = barcode_entropy_experiment(
	    [&](int n) { return geodesic_pair_barcode(pair, n); },
	    cfg.get_doubles("bar_eps_grid", {0.5, 0.25, 0.125}),
	    static_cast<int>(cfg.get_int("bar_n_max", 18)));
	print_estimate("h_bar", res.h_bar);
	std::cout << "plateau spread over final eps values: " << res.plateau << "\n";
	if (res.trivial) std::cout << "note: all bar counts were zero\n";
	auto csv = open_artifact(opts, "bar_experiment.csv");
	write_bar_experiment_csv(csv, res);
	return 0;
}

int cmd_compare(const common_opts& opts) {
	const auto cfg = load_config(opts);
	const auto rep = compare_entropies(cfg);
	if (rep.h_cat_model) print_estimate("h_cat", *rep.h_cat_model);
	if (rep.h_bar) print_estimate("h_bar", *rep.h_bar);
	if (rep.h_top_capacity) print_estimate("h_top (capacity)", *rep.h_top_capacity);
	if (rep.h_top_volume) print_estimate("h_top (curve growth)", *rep.h_top_volume);
	for (const auto& v : rep.verdicts)
		std::cout << v.name << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.lhs << " vs "
		          << v.rhs << " + tol " << v.tol << ", slack " << v.slack << ")\n";
	open_artifact(opts, "report.json") << to_json(rep).dump(2) << "\n";
	{
		auto csv = open_artifact(opts, "estimates.csv");
		write_estimates_csv(csv, rep);
	}
	{
		auto csv = open_artifact(opts, "verdicts.csv");
		write_verdicts_csv(csv, rep);
	}
	return rep.all_pass() ? 0 : 1;
}

int cmd_sweep(const common_opts& opts) {
	const auto cfg = load_config(opts);
	imatrix a{2,
	          {{cfg.get_int("torus_a", 2), cfg.get_int("torus_b", 1)},
	           {cfg.get_int("torus_c", 1), cfg.get_int("torus_d", 1)}}};

	std::vector<std::pair<std::string, std::function<barcode(int)>>> family;
	std::istringstream ps(cfg.get_string("pairs", "0,1 1,1 1,2 1,3 2,1"));
	std::string tok;
	while (ps >> tok) {
		const auto comma = tok.find(',');
		if (comma == std::string::npos) throw input_error("pair '" + tok + "' must be 'x,y'");
		geodesic_pair p;
		p.automorphism = a;
		p.v2x = std::stoll(tok.substr(0, comma));
		p.v2y = std::stoll(tok.substr(comma + 1));
		family.emplace_back("pair_" + tok, [p](int n) { return geodesic_pair_barcode(p, n); });
	}
	if (cfg.get_int("include_support_avoiding", 1) != 0) {
		geodesic_pair p; // identity automorphism: the pair never moves
		family.emplace_back("support_avoiding",
		                    [p](int n) { return geodesic_pair_barcode(p, n); });
	}

	std::optional<double> h_top, h_cat;
	if (cfg.get_int("with_estimates", 0) != 0) {
		auto compare_cfg = cfg;
		compare_cfg.set("system", cfg.get_string("system", "cat_map"));
		const auto rep = compare_entropies(compare_cfg);
		if (rep.h_top_capacity) h_top = rep.h_top_capacity->value;
		if (rep.h_cat_model) h_cat = rep.h_cat_model->value;
	}

	const auto res = sup_inf_sweep(family, cfg.get_doubles("bar_eps_grid", {0.5, 0.25, 0.125}),
	                               static_cast<int>(cfg.get_int("bar_n_max", 18)), h_top, h_cat);
	for (const auto& r : res.rows)
		std::cout << r.label << ": h_bar = " << r.h_bar << " (running max " << r.running_max
		          << ", min " << r.running_min << ")\n";
	std::cout << "max h_bar: " << res.max_h_bar << ", min h_bar: " << res.min_h_bar << "\n";
	if (res.h_top) std::cout << "h_top estimate (for comparison only): " << *res.h_top << "\n";
	if (res.h_cat) std::cout << "h_cat estimate (for comparison only): " << *res.h_cat << "\n";
	auto csv = open_artifact(opts, "sweep.csv");
	write_sweep_csv(csv, res);
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"entropy estimators for discrete symplectic dynamics testbeds"};
	app.require_subcommand(1);

	common_opts persist_opts, topent_opts, crofton_opts, bar_opts, compare_opts, sweep_opts;
	std::string persist_in, persist_eps;
	int catent_tree = 2, catent_n_max = 30;
	std::string catent_word = "A+ B-", catent_parity = "even";

	auto* persist = app.add_subcommand("persist", "reduce a filtered complex file");
	persist->add_option("--in", persist_in, "fcx input file")->required();
	persist->add_option("--eps", persist_eps, "report b_eps for this rational threshold");
	add_common(persist, persist_opts, false);

	auto* catent = app.add_subcommand("catent", "categorical entropy of a twist word");
	catent->add_option("--tree", catent_tree, "linear tree size");
	catent->add_option("--word", catent_word, "twist word, e.g. 'A+ B-'");
	catent->add_option("--parity", catent_parity, "even or odd sphere dimension");
	catent->add_option("--n-max", catent_n_max, "iterates for the growth fit");

	auto* topent = app.add_subcommand("topent", "topological entropy estimators");
	add_common(topent, topent_opts);
	auto* crofton = app.add_subcommand("crofton", "Monte-Carlo Crofton check");
	add_common(crofton, crofton_opts);
	auto* bar = app.add_subcommand("bar", "barcode entropy experiment");
	add_common(bar, bar_opts);
	auto* compare = app.add_subcommand("compare", "full inequality-chain report");
	add_common(compare, compare_opts);
	auto* sweep = app.add_subcommand("sweep", "h_bar over a family of pairs");
	add_common(sweep, sweep_opts);

	CLI11_PARSE(app, argc, argv);
	try {
		if (persist->parsed()) return cmd_persist(persist_in, persist_eps, persist_opts);
		if (catent->parsed())
			return cmd_catent(catent_tree, catent_word, catent_parity, catent_n_max);
		if (topent->parsed()) return cmd_topent(topent_opts);
		if (crofton->parsed()) return cmd_crofton(crofton_opts);
		if (bar->parsed()) return cmd_bar(bar_opts);
		if (compare->parsed()) return cmd_compare(compare_opts);
		if (sweep->parsed()) return cmd_sweep(sweep_opts);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
