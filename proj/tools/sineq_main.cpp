#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sineq/core_fns.hpp"
#include "sineq/extremal_search.hpp"
#include "sineq/generators.hpp"
#include "sineq/json_io.hpp"
#include "sineq/manifest.hpp"
#include "sineq/moments.hpp"
#include "sineq/s_inequality.hpp"
#include "sineq/suites.hpp"

namespace {

using nlohmann::ordered_json;

struct LoadedJson {
  nlohmann::json value;
  std::string name;
  std::string digest;
};

LoadedJson load_json_arg(const std::string& arg, const std::string& role) {
  std::string text;
  std::string name;
  if (!arg.empty() && arg.front() == '{') {
    text = arg;
    name = role + ":inline";
  } else {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + role + " file: " + arg);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    name = role + ":" + arg;
  }
  LoadedJson out;
  out.value = nlohmann::json::parse(text);
  out.name = name;
  out.digest = sineq::fnv1a_hex(text);
  return out;
}

// "a:b:step" (inclusive range) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    double a = 0.0, b = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0)) {
      throw std::invalid_argument("bad grid spec '" + spec + "' (want a:b:step)");
    }
    for (double v = a; v <= b + 1e-12; v += step) values.push_back(v);
    return values;
  }
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("bad number '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty grid spec");
  return values;
}

sineq::VerifyMode parse_mode(const std::string& mode) {
  if (mode == "assert") return sineq::VerifyMode::Assert;
  if (mode == "explore") return sineq::VerifyMode::Explore;
  throw std::invalid_argument("mode must be assert or explore");
}

std::string grid_to_string(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ",";
    out += sineq::format_g17(grid[i]);
  }
  return out;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  ~StopWatch() {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    std::cerr << "wall_clock_ms=" << elapsed.count() << " (stderr only, not embedded)\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int cmd_verify(const std::string& measure_arg, const std::string& ideal_arg,
               const std::string& t_spec, int dim, const std::string& mode_str,
               double tol, std::uint64_t seed, const std::string& out_base) {
  const LoadedJson measure_json = load_json_arg(measure_arg, "measure");
  const LoadedJson ideal_json = load_json_arg(ideal_arg, "ideal");
  const sineq::MeasureSpec m = sineq::measure_from_json(measure_json.value);
  const sineq::Ideal ideal = sineq::ideal_from_json(ideal_json.value);
  const std::vector<double> t_grid = parse_grid(t_spec);
  const sineq::VerifyMode mode = parse_mode(mode_str);
  if (dim == 0) dim = sineq::ideal_dim(ideal);

  const auto report = sineq::verify_ideal(m, ideal, dim, t_grid, tol, mode, seed);

  sineq::RunManifest manifest;
  manifest.command = "verify";
  manifest.seed = seed;
  manifest.parameters["measure"] = sineq::measure_to_json(m);
  manifest.parameters["ideal"] = sineq::ideal_to_json(ideal);
  manifest.parameters["t"] = grid_to_string(t_grid);
  manifest.parameters["dim"] = dim;
  manifest.parameters["mode"] = mode_str;
  manifest.parameters["tol"] = tol;
  manifest.input_digests.emplace_back(measure_json.name, measure_json.digest);
  manifest.input_digests.emplace_back(ideal_json.name, ideal_json.digest);

  const std::string ideal_id = sineq::fnv1a_hex(sineq::ideal_to_json(ideal).dump());
  sineq::write_file(out_base + ".json",
                    sineq::report_to_json(report, m, ideal, manifest).dump(2) + "\n");
  sineq::write_file(out_base + ".csv",
                    sineq::report_to_csv(report, m, ideal_id, manifest));

  std::cout << "measure " << m.describe() << "  base_mass "
            << sineq::format_g17(report.base_mass) << "\n";
  for (const auto& rec : report.records) {
    std::cout << "t=" << sineq::format_g17(rec.t) << "  lhs=" << sineq::format_g17(rec.lhs)
              << "  rhs=" << sineq::format_g17(rec.rhs)
              << "  margin=" << sineq::format_g17(rec.margin) << "\n";
  }
  std::cout << "min_margin " << sineq::format_g17(report.min_margin) << "  "
            << (report.pass ? "PASS" : "VIOLATION") << " (mode " << mode_str << ")\n";
  if (mode == sineq::VerifyMode::Explore) return 0;
  return report.pass ? 0 : 1;
}

int cmd_suite(const std::string& name, std::uint64_t seed, const std::string& out_dir,
              int threads) {
  const auto result = sineq::run_suite(name, seed, threads);

  sineq::RunManifest manifest;
  manifest.command = "suite";
  manifest.seed = seed;
  manifest.parameters["suite"] = name;

  sineq::write_file(out_dir + "/" + name + "_summary.json",
                    sineq::suite_to_json(result, manifest).dump(2) + "\n");
  for (const auto& check : result.checks) {
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << "  " << check.detail
              << "\n";
    std::cerr << "check " << check.name << " took " << check.elapsed_ms << " ms\n";
  }
  std::cout << "suite " << name << ": " << (result.all_pass ? "PASS" : "FAIL") << "\n";
  return result.all_pass ? 0 : 1;
}

int cmd_bounds(const std::string& measure_arg, const std::string& mass_spec,
               const std::string& t_spec, const std::string& out_path) {
  const LoadedJson measure_json = load_json_arg(measure_arg, "measure");
  const sineq::MeasureSpec m = sineq::measure_from_json(measure_json.value);
  const std::vector<double> masses = parse_grid(mass_spec);
  const std::vector<double> t_grid = parse_grid(t_spec);
  for (double mass : masses) {
    if (!(mass > 0.0) || mass >= 1.0) {
      throw std::domain_error("bounds: masses must be in (0, 1)");
    }
  }
  for (double t : t_grid) {
    if (!(t >= 1.0)) throw std::domain_error("bounds: t must be >= 1");
  }

  sineq::RunManifest manifest;
  manifest.command = "bounds";
  manifest.parameters["measure"] = sineq::measure_to_json(m);
  manifest.parameters["mass"] = grid_to_string(masses);
  manifest.parameters["t"] = grid_to_string(t_grid);
  manifest.input_digests.emplace_back(measure_json.name, measure_json.digest);

  std::ostringstream csv;
  csv << sineq::manifest_csv_prelude(manifest);
  csv << "family,params,mass,t,bound\n";
  for (double mass : masses) {
    for (double t : t_grid) {
      csv << m.family_name() << "," << m.params_string() << "," << sineq::format_g17(mass)
          << "," << sineq::format_g17(t) << ","
          << sineq::format_g17(sineq::s_bound(m, mass, t)) << "\n";
    }
  }
  sineq::write_file(out_path, csv.str());
  std::cout << "wrote " << masses.size() * t_grid.size() << " bounds to " << out_path
            << "\n";
  return 0;
}

int cmd_lemma1(const std::string& p_spec, int count, std::uint64_t seed, double tol,
               const std::string& out_path) {
  const std::vector<double> p_grid = parse_grid(p_spec);

  sineq::RunManifest manifest;
  manifest.command = "lemma1";
  manifest.seed = seed;
  manifest.parameters["p"] = grid_to_string(p_grid);
  manifest.parameters["count"] = count;
  manifest.parameters["tol"] = tol;

  std::ostringstream csv;
  csv << sineq::manifest_csv_prelude(manifest);
  csv << "p,sample_id,kind,gap\n";
  bool all_ok = true;
  double max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
    const double p = p_grid[pi];
    sineq::Rng rng(sineq::mix_seed(seed, pi));
    for (int i = 0; i < count; ++i) {
      const double gap = sineq::lemma1_gap(p, sineq::random_monotone_step(p, rng));
      max_gap = std::max(max_gap, gap);
      if (!(gap <= tol)) all_ok = false;
      csv << sineq::format_g17(p) << "," << i << ",random," << sineq::format_g17(gap)
          << "\n";
    }
    for (int i = 0; i <= 100; ++i) {
      const double u = 0.005 + 0.99 * static_cast<double>(i) / 100.0;
      const double gap =
          sineq::lemma1_gap(p, sineq::MonotoneStep::indicator(sineq::inv_T(p, u)));
      if (!(std::fabs(gap) <= tol)) all_ok = false;
      csv << sineq::format_g17(p) << "," << i << ",indicator," << sineq::format_g17(gap)
          << "\n";
    }
  }
  sineq::write_file(out_path, csv.str());
  std::cout << "max_gap " << sineq::format_g17(max_gap) << "  "
            << (all_ok ? "PASS" : "VIOLATION") << "\n";
  return all_ok ? 0 : 1;
}

int cmd_phi(double p, const std::string& grid_spec, const std::string& out_path) {
  const std::vector<double> grid = parse_grid(grid_spec);

  sineq::RunManifest manifest;
  manifest.command = "phi";
  manifest.parameters["p"] = p;
  manifest.parameters["v"] = grid_to_string(grid);

  std::ostringstream csv;
  csv << sineq::manifest_csv_prelude(manifest);
  csv << "v,value,d1,d2,inv_d2_d1,inv_d2_d2,f_point\n";
  double min_d2 = std::numeric_limits<double>::infinity();
  double min_curv = std::numeric_limits<double>::infinity();
  double max_curv = -std::numeric_limits<double>::infinity();
  for (double v : grid) {
    const auto stack = sineq::phi_stack(p, v);
    min_d2 = std::min(min_d2, stack.d2);
    min_curv = std::min(min_curv, stack.inv_d2_d2);
    max_curv = std::max(max_curv, stack.inv_d2_d2);
    csv << sineq::format_g17(v) << "," << sineq::format_g17(stack.value) << ","
        << sineq::format_g17(stack.d1) << "," << sineq::format_g17(stack.d2) << ","
        << sineq::format_g17(stack.inv_d2_d1) << "," << sineq::format_g17(stack.inv_d2_d2)
        << "," << sineq::format_g17(stack.f_point) << "\n";
  }
  sineq::write_file(out_path, csv.str());
  std::cout << "p=" << sineq::format_g17(p) << "  min_d2=" << sineq::format_g17(min_d2)
            << "  inv_d2_d2 in [" << sineq::format_g17(min_curv) << ", "
            << sineq::format_g17(max_curv) << "]\n";
  return 0;
}

int cmd_moments(const std::string& measure_arg, const std::string& norm_arg, int n,
                double p, double q, std::size_t n_samples, std::uint64_t seed,
                const std::string& mode_str, const std::string& out_path) {
  const LoadedJson measure_json = load_json_arg(measure_arg, "measure");
  const sineq::MeasureSpec m = sineq::measure_from_json(measure_json.value);
  const LoadedJson norm_json = load_json_arg(norm_arg, "norm");
  const sineq::UnconditionalNorm norm = sineq::norm_from_json(norm_json.value);
  const sineq::VerifyMode mode = parse_mode(mode_str);

  const auto report = sineq::verify_comparison(m, n, norm, p, q, n_samples, seed, mode);

  sineq::RunManifest manifest;
  manifest.command = "moments";
  manifest.seed = seed;
  manifest.parameters["measure"] = sineq::measure_to_json(m);
  manifest.parameters["norm"] = report.norm_desc;
  manifest.parameters["n"] = n;
  manifest.parameters["p"] = p;
  manifest.parameters["q"] = q;
  manifest.parameters["samples"] = n_samples;
  manifest.parameters["mode"] = mode_str;
  manifest.input_digests.emplace_back(measure_json.name, measure_json.digest);

  std::ostringstream csv;
  csv << sineq::manifest_csv_prelude(manifest);
  csv << "family,params,norm,n,p,q,lhs,rhs,constant,slack,stderr\n";
  csv << m.family_name() << "," << m.params_string() << "," << report.norm_desc << "," << n
      << "," << sineq::format_g17(p) << "," << sineq::format_g17(q) << ","
      << sineq::format_g17(report.lhs) << "," << sineq::format_g17(report.rhs) << ","
      << sineq::format_g17(report.constant) << "," << sineq::format_g17(report.slack)
      << "," << sineq::format_g17(report.std_error) << "\n";
  sineq::write_file(out_path, csv.str());

  std::cout << "lhs " << sineq::format_g17(report.lhs) << " <= rhs "
            << sineq::format_g17(report.rhs) << "  slack "
            << sineq::format_g17(report.slack) << "  "
            << (report.holds ? "HOLDS" : "VIOLATION");
  if (report.sharpness_checked) {
    std::cout << "  sharpness_ratio " << sineq::format_g17(report.sharpness_ratio)
              << (report.sharp ? " (attains constant)" : " (OFF constant)");
  }
  std::cout << "\n";
  if (mode == sineq::VerifyMode::Explore) return 0;
  const bool ok = report.holds && (!report.sharpness_checked || report.sharp);
  return ok ? 0 : 1;
}

int cmd_search(const std::string& measure_arg, double mass, double t, int k, int restarts,
               int iters, std::uint64_t seed, const std::string& mode_str,
               const std::string& out_base) {
  const LoadedJson measure_json = load_json_arg(measure_arg, "measure");
  const sineq::MeasureSpec m = sineq::measure_from_json(measure_json.value);

  sineq::SearchConfig cfg{m};
  cfg.target_mass = mass;
  cfg.t = t;
  cfg.breakpoints = k;
  cfg.restarts = restarts;
  cfg.iterations = iters;
  cfg.seed = seed;
  cfg.mode = parse_mode(mode_str);

  const auto result = sineq::search_min_dilation(cfg);

  sineq::RunManifest manifest;
  manifest.command = "search";
  manifest.seed = seed;
  manifest.parameters["measure"] = sineq::measure_to_json(m);
  manifest.parameters["mass"] = mass;
  manifest.parameters["t"] = t;
  manifest.parameters["k"] = k;
  manifest.parameters["restarts"] = restarts;
  manifest.parameters["iterations"] = iters;
  manifest.parameters["mode"] = mode_str;
  manifest.input_digests.emplace_back(measure_json.name, measure_json.digest);

  std::ostringstream csv;
  csv << sineq::manifest_csv_prelude(manifest);
  csv << "iteration,objective,mass_residual,accepted\n";
  for (const auto& entry : result.trace) {
    csv << entry.iteration << "," << sineq::format_g17(entry.objective) << ","
        << sineq::format_g17(entry.mass_residual) << "," << (entry.accepted ? 1 : 0)
        << "\n";
  }
  sineq::write_file(out_base + "_trace.csv", csv.str());
  sineq::write_file(out_base + "_result.json",
                    sineq::search_result_to_json(result, m, manifest).dump(2) + "\n");

  std::cout << "objective " << sineq::format_g17(result.objective) << "  strip "
            << sineq::format_g17(result.strip_objective) << "  gap "
            << sineq::format_g17(result.gap) << "  "
            << (result.status == sineq::SearchStatus::Converged ? "CONVERGED"
                                                                : "BUDGET_EXHAUSTED")
            << (result.anomaly ? "  ANOMALY" : "") << "\n";
  if (cfg.mode == sineq::VerifyMode::Explore) return 0;
  return result.gap >= -1e-7 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-inequality verification toolkit for product measures on ideals"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --threads after the subcommand name

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = auto)")
      ->envname("SINEQ_THREADS");

  std::string measure_arg, ideal_arg, norm_arg = R"({"kind":"ls","s":2})";
  std::string t_spec = "1,1.1,1.25,1.5,2,3,4,8";
  std::string mass_spec = "0.25,0.5";
  std::string mode_str = "assert";
  std::string p_spec = "0.25,0.5,0.75,1";
  std::string grid_spec = "0.001:0.999:0.001";
  std::string out_path;
  std::string suite_name;
  double tol = 1e-8;
  double lemma_tol = 1e-10;
  double phi_p = 1.0;
  double mass = 0.5, t_single = 2.0, mom_p = 2.0, mom_q = 1.0;
  int dim = 0, count = 1000, n = 2, k = 3, restarts = 20, iters = 120;
  std::size_t n_samples = 100000;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "check the dilation bound for one ideal");
  verify->add_option("--measure", measure_arg, "measure JSON (inline or file)")->required();
  verify->add_option("--ideal", ideal_arg, "ideal JSON (inline or file)")->required();
  verify->add_option("--t", t_spec, "dilation grid: list or a:b:step");
  verify->add_option("--dim", dim, "product dimension (default: from ideal)");
  verify->add_option("--mode", mode_str, "assert|explore");
  verify->add_option("--tol", tol, "margin tolerance");
  verify->add_option("--seed", seed, "seed recorded in the report");
  verify->add_option("--out", out_path, "output base path")->default_val("verify_report");

  auto* suite = app.add_subcommand("suite", "run a named acceptance suite");
  suite->add_option("name", suite_name, "core|lemmas|moments|search")->required();
  suite->add_option("--seed", seed, "suite seed");
  suite->add_option("--out", out_path, "output directory")->default_val(".");

  auto* bounds = app.add_subcommand("bounds", "tabulate concentration bounds");
  bounds->add_option("--measure", measure_arg, "measure JSON (inline or file)")->required();
  bounds->add_option("--mass", mass_spec, "mass list");
  bounds->add_option("--t", t_spec, "dilation grid");
  bounds->add_option("--out", out_path, "output CSV path")->default_val("bounds.csv");

  auto* lemma1 = app.add_subcommand("lemma1", "sweep the functional inequality gap");
  lemma1->add_option("--p", p_spec, "exponent list");
  lemma1->add_option("--count", count, "random step functions per exponent");
  lemma1->add_option("--seed", seed, "seed");
  lemma1->add_option("--tol", lemma_tol, "gap tolerance");
  lemma1->add_option("--out", out_path, "output CSV path")->default_val("lemma1.csv");

  auto* phi = app.add_subcommand("phi", "tabulate the transform and its derivatives");
  phi->add_option("--p", phi_p, "exponent")->required();
  phi->add_option("--v", grid_spec, "evaluation grid");
  phi->add_option("--out", out_path, "output CSV path")->default_val("phi.csv");

  auto* moments = app.add_subcommand("moments", "check a moment comparison");
  moments->add_option("--measure", measure_arg, "measure JSON (inline or file)")->required();
  moments->add_option("--norm", norm_arg, "norm JSON (inline or file)");
  moments->add_option("--n", n, "dimension");
  moments->add_option("--p", mom_p, "higher exponent");
  moments->add_option("--q", mom_q, "lower exponent");
  moments->add_option("--N", n_samples, "Monte Carlo samples");
  moments->add_option("--seed", seed, "seed");
  moments->add_option("--mode", mode_str, "assert|explore");
  moments->add_option("--out", out_path, "output CSV path")->default_val("moments.csv");

  auto* search = app.add_subcommand("search", "search for extremal ideals");
  search->add_option("--measure", measure_arg, "measure JSON (inline or file)")->required();
  search->add_option("--mass", mass, "target mass in (0,1)");
  search->add_option("--t", t_single, "dilation factor");
  search->add_option("--k", k, "breakpoint count");
  search->add_option("--restarts", restarts, "restart count");
  search->add_option("--iters", iters, "coordinate sweeps per restart");
  search->add_option("--seed", seed, "seed");
  search->add_option("--mode", mode_str, "assert|explore");
  search->add_option("--out", out_path, "output base path")->default_val("search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  StopWatch watch;
  try {
    if (verify->parsed()) {
      return cmd_verify(measure_arg, ideal_arg, t_spec, dim, mode_str, tol, seed, out_path);
    }
    if (suite->parsed()) return cmd_suite(suite_name, seed, out_path, threads);
    if (bounds->parsed()) return cmd_bounds(measure_arg, mass_spec, t_spec, out_path);
    if (lemma1->parsed()) return cmd_lemma1(p_spec, count, seed, lemma_tol, out_path);
    if (phi->parsed()) return cmd_phi(phi_p, grid_spec, out_path);
    if (moments->parsed()) {
      return cmd_moments(measure_arg, norm_arg, n, mom_p, mom_q, n_samples, seed, mode_str,
                         out_path);
    }
    if (search->parsed()) {
      return cmd_search(measure_arg, mass, t_single, k, restarts, iters, seed, mode_str,
                        out_path);
    }
  } catch (const sineq::UnsupportedAssertionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
