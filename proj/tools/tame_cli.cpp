// Command-line front end: set expressions in, measures, estimates and samples out.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 domain error, 3 search exhausted.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tame/crofton.hpp"
#include "tame/dsl.hpp"
#include "tame/json.hpp"
#include "tame/measure.hpp"
#include "tame/sampler.hpp"

namespace {

using namespace tame;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Context {
 public:
  void load_defs(const std::string& path) {
    if (!path.empty()) env_ = dsl::resolve(dsl::parse_definitions(read_file(path)));
  }

  // "@file.json" reads a BoxComplex document; anything else is an expression.
  BoxComplex set(const std::string& arg) const {
    if (!arg.empty() && arg[0] == '@') {
      json j;
      try {
        j = json::parse(read_file(arg.substr(1)));
      } catch (const json::parse_error& e) {
        throw usage_error(arg.substr(1) + ": " + e.what());
      }
      return box_complex_from_json(j);
    }
    return dsl::evaluate(dsl::parse(arg), env_);
  }

 private:
  dsl::Environment env_;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string item = text.substr(i, j - i);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    if (item == "inf" || item == "+inf") {
      out.push_back(kInf);
    } else if (item == "-inf") {
      out.push_back(-kInf);
    } else {
      double v = 0;
      const char* b = item.data() + (item.starts_with('+') ? 1 : 0);
      auto [ptr, ec] = std::from_chars(b, item.data() + item.size(), v);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
        throw usage_error(std::string("bad number '") + item + "' in " + what + " \"" + text + "\"");
      out.push_back(v);
    }
    i = j + 1;
  }
  return out;
}

std::string yes(bool b) { return b ? "true" : "false"; }

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial-valued measures on box complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tame 0.1.0");
  std::string defs_path;
  app.add_option("--defs", defs_path, "Definitions file with lines 'name = expr'")->check(CLI::ExistingFile);
  Context ctx;

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "mu, Euler characteristic, dimension and class flags");
  std::string m_expr;
  bool m_json = false;
  measure_cmd->add_option("expr", m_expr, "Set expression or @file.json")->required();
  measure_cmd->add_flag("--json", m_json, "Emit the MeasureResult document");
  measure_cmd->callback([&] {
    const auto r = measure(ctx.set(m_expr));
    if (m_json) return print_json(r);
    std::cout << "mu = " << to_string(r.mu) << ", chi = " << to_string(r.mu[0]) << ", dim = " << to_string(r.dim)
              << '\n'
              << "in_Uf = " << yes(r.in_Uf) << ", in_Ub = " << yes(r.in_Ub) << '\n';
  });

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Lexicographic comparison of mu(A) and mu(B)");
  std::string c_a, c_b;
  bool c_json = false;
  compare_cmd->add_option("A", c_a)->required();
  compare_cmd->add_option("B", c_b)->required();
  compare_cmd->add_flag("--json", c_json);
  compare_cmd->callback([&] {
    const XPoly pa = mu(ctx.set(c_a)), pb = mu(ctx.set(c_b));
    const std::string verdict = to_string(lex_compare(pa, pb));
    if (c_json) return print_json({{"order", verdict}, {"mu_a", pa}, {"mu_b", pb}});
    std::cout << verdict << '\n' << "mu(A) = " << to_string(pa) << '\n' << "mu(B) = " << to_string(pb) << '\n';
  });

  // subset
  auto* subset_cmd = app.add_subcommand("subset", "Report whether A is a subset of B");
  std::string s_a, s_b;
  subset_cmd->add_option("A", s_a)->required();
  subset_cmd->add_option("B", s_b)->required();
  subset_cmd->callback([&] {
    const auto a = ctx.set(s_a), b = ctx.set(s_b);
    const bool ab = is_subset(a, b), ba = is_subset(b, a);
    std::cout << (ab && ba ? "equal" : ab ? "proper subset" : ba ? "proper superset" : "neither") << '\n'
              << "A in B: " << yes(ab) << ", B in A: " << yes(ba) << '\n';
  });

  // crofton
  auto* crofton_cmd = app.add_subcommand("crofton", "Monte Carlo estimate of mu_d or mu_{d-1}");
  std::string cr_expr, cr_index;
  std::uint64_t cr_samples = 100000, cr_seed = 1;
  unsigned cr_threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<double> cr_rotate;
  bool cr_json = false;
  crofton_cmd->add_option("expr", cr_expr)->required();
  crofton_cmd->add_option("--index", cr_index, "d or d-1")->required()->check(CLI::IsMember({"d", "d-1"}));
  crofton_cmd->add_option("--samples", cr_samples)->check(CLI::PositiveNumber);
  crofton_cmd->add_option("--seed", cr_seed);
  crofton_cmd->add_option("--threads", cr_threads)->check(CLI::PositiveNumber);
  crofton_cmd->add_option("--rotate", cr_rotate, "Rotate the line frame by this angle in the plane of axes 0 and 1");
  crofton_cmd->add_flag("--json", cr_json, "Emit the CroftonEstimate document");
  crofton_cmd->callback([&] {
    const auto a = ctx.set(cr_expr);
    CroftonEstimate e;
    if (cr_index == "d") {
      e = estimate_volume(a, cr_samples, cr_seed, cr_threads);
    } else {
      CroftonOptions opts;
      opts.threads = cr_threads;
      if (cr_rotate) opts.frame = Rotation::plane(a.ambient_dim(), 0, 1, *cr_rotate);
      e = estimate_codim1(a, cr_samples, cr_seed, opts);
    }
    if (cr_json) return print_json(e);
    const XReal exact = intrinsic_volume(a, e.index);
    std::cout << "mu_" << e.index << " ~ " << format_real(e.estimate) << " +- " << format_real(e.std_error) << " ("
              << e.n_samples << " samples, seed " << e.seed << ")\n"
              << "exact = " << to_string(exact);
    if (exact.is_finite() && e.std_error > 0) std::cout << ", z = " << format_real((e.estimate - exact.value()) / e.std_error);
    std::cout << '\n';
  });

  // find-n
  auto* findn_cmd = app.add_subcommand("find-n", "Least N at which every polynomial is near an integer");
  std::vector<std::string> f_polys;
  double f_eps = 0.05;
  std::uint64_t f_nmax = 1'000'000, f_nstart = 1;
  bool f_json = false;
  findn_cmd->add_option("--poly", f_polys, "Coefficients c0,c1,... lowest degree first")->required();
  findn_cmd->add_option("--epsilon", f_eps)->required();
  findn_cmd->add_option("--nmax", f_nmax);
  findn_cmd->add_option("--nstart", f_nstart);
  findn_cmd->add_flag("--json", f_json);
  findn_cmd->callback([&] {
    std::vector<XPoly> polys;
    for (const auto& p : f_polys) {
      const auto c = parse_numbers(p, "--poly");
      polys.emplace_back(std::vector<XReal>(c.begin(), c.end()));
    }
    const auto r = find_near_integer_N(polys, f_eps, f_nstart, f_nmax);
    if (f_json) {
      json d = json::array();
      for (double v : r.distances) d.push_back(v);
      return print_json({{"N", r.N}, {"distances", d}, {"rational_shortcut", r.rational_shortcut}});
    }
    std::cout << "N = " << r.N << (r.rational_shortcut ? " (rational shortcut)" : "") << '\n';
    for (std::size_t i = 0; i < r.distances.size(); ++i)
      std::cout << "distance[" << i << "] = " << format_real(r.distances[i]) << '\n';
  });

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Finite point set whose counts track mu at a scale N");
  std::vector<std::string> sp_sets, sp_points;
  std::uint64_t sp_m = 10;
  SampleOptions sp_opts;
  bool sp_json = false;
  sample_cmd->add_option("--set", sp_sets, "Bounded set expression (repeatable)")->required();
  sample_cmd->add_option("--point", sp_points, "Forced point x,y,... (repeatable)");
  sample_cmd->add_option("--m", sp_m, "Discrepancy bound is 1/m")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--nmax", sp_opts.N_max);
  sample_cmd->add_option("--nstart", sp_opts.N_start);
  sample_cmd->add_option("--max-points", sp_opts.max_points);
  sample_cmd->add_flag("--json", sp_json, "Emit the SampleResult document");
  sample_cmd->callback([&] {
    std::vector<BoxComplex> sets;
    for (const auto& s : sp_sets) sets.push_back(ctx.set(s));
    std::vector<Point> pts;
    for (const auto& p : sp_points) pts.push_back(parse_numbers(p, "--point"));
    const auto r = build_sample(sets, pts, sp_m, sp_opts);
    if (sp_json) return print_json(r);
    std::cout << "N = " << r.N << ", points = " << r.points.size() << ", epsilon = " << format_real(r.epsilon) << '\n';
    for (std::size_t i = 0; i < r.per_set.size(); ++i)
      std::cout << "set[" << i << "]: count = " << r.per_set[i].count << ", mu(N) = " << format_real(r.per_set[i].mu_at_N)
                << ", discrepancy = " << format_real(r.per_set[i].discrepancy) << '\n';
  });

  // hausdorff
  auto* haus_cmd = app.add_subcommand("hausdorff", "Exact Hausdorff measure and an optional finite-scale ratio");
  std::string h_expr;
  std::size_t h_index = 0;
  bool h_check = false;
  std::uint64_t h_m = 100;
  SampleOptions h_opts;
  haus_cmd->add_option("expr", h_expr)->required();
  haus_cmd->add_option("--index", h_index)->required();
  haus_cmd->add_flag("--check-ratio", h_check);
  haus_cmd->add_option("--m", h_m)->check(CLI::PositiveNumber);
  haus_cmd->add_option("--nmax", h_opts.N_max);
  haus_cmd->add_option("--nstart", h_opts.N_start);
  haus_cmd->callback([&] {
    const auto a = ctx.set(h_expr);
    std::cout << "H^" << h_index << " = " << to_string(hausdorff_measure(a, h_index)) << '\n';
    if (!h_check) return;
    const auto r = hausdorff_ratio_check(a, h_index, h_m, h_opts);
    std::cout << "N = " << r.N << ", count = " << r.count << ", ratio = " << format_real(r.ratio)
              << ", target = " << format_real(r.target) << ", gap = " << format_real(r.gap)
              << ", bound = " << format_real(r.bound) << '\n';
  });

  // export
  auto* export_cmd = app.add_subcommand("export", "Print the canonical BoxComplex document");
  std::string e_expr;
  export_cmd->add_option("expr", e_expr)->required();
  export_cmd->callback([&] { print_json(ctx.set(e_expr)); });

  app.parse_complete_callback([&] { ctx.load_defs(defs_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const unknown_name& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cyclic_definition& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const search_exhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tame::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
