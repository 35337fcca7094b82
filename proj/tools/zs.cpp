#include "zs/io.hpp"
#include "zs/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace zs;

namespace {

struct RunConfig {
  std::string input;
  bool zero = false;
  std::string single_mode;
  std::string random;
  bool complex_type = false;
  int nmax = 4;
  std::optional<double> tol_ode, tol_contour;
  std::string out;
  std::string format = "json";

  // command options
  std::optional<int> psi_index;
  int gap = 1;
  double s_max = 1.0;
  int samples = 51;
  std::vector<std::string> suites;
};

// Exit status for usage and input problems.
struct UsageError : Error {
  using Error::Error;
};

std::vector<double> numbers(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
  }
  return v;
}

Potential load(const RunConfig& c) {
  const int sources = !c.input.empty() + c.zero + !c.single_mode.empty() + !c.random.empty();
  if (sources != 1) throw UsageError("give exactly one of --input, --zero, --single-mode, --random");
  if (!c.input.empty()) return read_potential(c.input);
  if (c.zero) return {};
  if (!c.single_mode.empty()) {
    const auto v = numbers(c.single_mode, "--single-mode value");
    if (v.empty() || v.size() > 2) throw UsageError("--single-mode takes re or re,im");
    return Potential::single_mode({v[0], v.size() == 2 ? v[1] : 0.0});
  }
  const auto v = numbers(c.random, "--random value");
  if (v.size() != 3 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw UsageError("--random takes seed,bandlimit,amplitude");
  return Potential::random(static_cast<std::uint64_t>(v[0]), static_cast<int>(v[1]), v[2], c.complex_type);
}

Tolerances tolerances(const RunConfig& c) {
  Tolerances t;
  if (c.nmax < 1) throw UsageError("--nmax must be at least 1");
  if (c.tol_ode) {
    if (!(*c.tol_ode > 0)) throw UsageError("--tol-ode must be positive");
    // order-16 steps: the per-step ratio scales with the 16th root of the tolerance; 1.2 matches 1e-13
    t.ode_step_ratio = std::clamp(1.2 * std::pow(*c.tol_ode / 1e-13, 1.0 / 16), 0.05, 2.0);
  }
  if (c.tol_contour) {
    if (!(*c.tol_contour > 0)) throw UsageError("--tol-contour must be positive");
    t.contour_rel = *c.tol_contour;
  }
  return t;
}

void emit(const RunConfig& c, const Json& j, const std::function<void(std::ostream&)>& csv) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw UsageError("cannot write " + c.out);
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == "csv")
    csv(os);
  else
    os << dump(j);
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--input", c.input, "potential JSON file");
  app->add_flag("--zero", c.zero, "zero potential");
  app->add_option("--single-mode", c.single_mode, "a e^{2 pi i t} potential, a as re or re,im");
  app->add_option("--random", c.random, "random potential seed,bandlimit,amplitude");
  app->add_flag("--complex", c.complex_type, "draw phi2 independently with --random");
  app->add_option("--nmax", c.nmax, "truncation N");
  app->add_option("--tol-ode", c.tol_ode, "integrator tolerance");
  app->add_option("--tol-contour", c.tol_contour, "relative tolerance of circle quadrature");
  app->add_option("--out", c.out, "output path (stdout when absent)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

int cmd_spectrum(const RunConfig& c) {
  const auto s = compute_spectrum(load(c), c.nmax, tolerances(c));
  emit(c, to_json(s), [&](std::ostream& os) { write_csv(os, s); });
  return 0;
}

int cmd_actions(const RunConfig& c) {
  const auto phi = load(c);
  const auto tol = tolerances(c);
  const auto s = padded_spectrum(phi, c.nmax, 1e-8, tol);
  const auto rules = gamma_rules(s, tol);
  Json rows = Json::array();
  double sum = 0;
  std::ostringstream csv;
  csv << "n,I,alt,limit\n";
  for (int n = -s.N; n <= s.N; ++n) {
    const auto a = action(phi, s, rules[n + s.N], tol);
    sum += a.value.real();
    if (std::abs(n) > c.nmax) continue;
    rows.push_back({{"n", n}, {"I", {a.value.real(), a.value.imag()}}, {"alt", {a.alt.real(), a.alt.imag()}},
                    {"limit", a.limit}});
    csv << n << ',' << format_number(a.value.real()) << ',' << format_number(a.alt.real()) << ','
        << (a.limit ? 1 : 0) << '\n';
  }
  const Json j = {{"N", c.nmax}, {"working_N", s.N}, {"sum_all", sum},
                  {"h_tau", {phi.h_tau().real(), phi.h_tau().imag()}}, {"actions", rows}};
  emit(c, j, [&](std::ostream& os) { os << csv.str(); });
  return 0;
}

int cmd_birkhoff(const RunConfig& c) {
  const auto b = birkhoff_map(load(c), c.nmax, tolerances(c));
  emit(c, to_json(b), [&](std::ostream& os) { write_csv(os, b); });
  return 0;
}

int cmd_psi(const RunConfig& c) {
  const auto tol = tolerances(c);
  const auto s = padded_spectrum(load(c), c.nmax, 1e-8, tol);
  const auto rules = gamma_rules(s, tol);
  std::vector<int> which;
  if (c.psi_index) {
    if (std::abs(*c.psi_index) > c.nmax) throw UsageError("--n must satisfy |n| <= nmax");
    which.push_back(*c.psi_index);
  } else {
    for (int n = -c.nmax; n <= c.nmax; ++n) which.push_back(n);
  }
  std::vector<SigmaSequence> seqs;
  for (int n : which) seqs.push_back(solve_sigma(s, rules, n, tol));
  Json j = Json::array();
  for (const auto& q : seqs) j.push_back(to_json(q));
  emit(c, j, [&](std::ostream& os) {
    for (const auto& q : seqs) {
      os << "# n = " << q.n << '\n';
      write_csv(os, q);
    }
  });
  return 0;
}

int cmd_flow(const RunConfig& c) {
  FlowOptions opt;
  opt.abort_on_breach = false;
  const auto t = flow_X(load(c), c.gap, c.s_max, c.samples, opt, tolerances(c));
  emit(c, to_json(t), [&](std::ostream& os) { write_csv(os, t); });
  if (!t.passed()) {
    std::cerr << "monitor breached: " << t.breach << '\n';
    return 3;
  }
  return 0;
}

int cmd_verify(const RunConfig& c) {
  const auto phi = load(c);
  const auto tol = tolerances(c);
  std::vector<std::string> suites = c.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  Json reports = Json::array();
  const Check* failure = nullptr;
  std::string failed_suite;
  std::vector<SuiteReport> done;
  done.reserve(suites.size());
  for (const auto& name : suites) {
    done.push_back(run_suite(name, phi, c.nmax, tol));
    const auto& r = done.back();
    std::cout << "suite " << r.suite << '\n';
    for (const auto& k : r.checks) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-4s  %-42s  %.3e  (bound %.0e)\n", k.pass() ? "PASS" : "FAIL",
                    k.name.c_str(), k.residual, k.bound);
      std::cout << line;
    }
    for (const auto& note : r.notes) std::cout << "  note  " << note << '\n';
    Json checks = Json::array();
    for (const auto& k : r.checks)
      checks.push_back({{"name", k.name}, {"residual", k.residual}, {"bound", k.bound}, {"pass", k.pass()}});
    reports.push_back({{"suite", r.suite}, {"pass", r.passed()}, {"checks", checks}, {"notes", r.notes}});
    if (!failure && r.first_failure()) {
      failure = r.first_failure();
      failed_suite = r.suite;
    }
  }
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << dump(reports);
  }
  if (failure) {
    std::cerr << "FAIL: " << failed_suite << ": " << failure->name << " residual " << failure->residual
              << " exceeds " << failure->bound << '\n';
    return 3;
  }
  std::cout << "all suites passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral data, Birkhoff coordinates and isospectral flows of periodic Zakharov-Shabat potentials"};
  app.require_subcommand(1);
  RunConfig c;
  auto* spectrum = app.add_subcommand("spectrum", "periodic, Dirichlet and Neumann spectra");
  auto* actions = app.add_subcommand("actions", "actions I_n");
  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff coordinates");
  auto* psi = app.add_subcommand("psi", "zero sequences sigma^n of the psi_n functions");
  auto* flow = app.add_subcommand("flow", "flow moving one Dirichlet eigenvalue");
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  for (auto* s : {spectrum, actions, birkhoff, psi, flow, verify}) add_common(s, c);
  psi->add_option("--n", c.psi_index, "single index n");
  flow->add_option("--gap", c.gap, "gap index n");
  flow->add_option("--s-max", c.s_max, "flow time");
  flow->add_option("--samples", c.samples, "sample count")->check(CLI::Range(5, 100000));
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("--suite", c.suites, "suite name (repeatable)")->check(CLI::IsMember(allowed));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*spectrum) return cmd_spectrum(c);
    if (*actions) return cmd_actions(c);
    if (*birkhoff) return cmd_birkhoff(c);
    if (*psi) return cmd_psi(c);
    if (*flow) return cmd_flow(c);
    return cmd_verify(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const LocalizationError& e) {
    std::cerr << "localization failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  }
}
