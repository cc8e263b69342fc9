#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "connsync/error.hpp"
#include "connsync/fields.hpp"
#include "connsync/generators.hpp"
#include "connsync/graph.hpp"
#include "connsync/laplacian.hpp"
#include "connsync/oracle.hpp"
#include "connsync/rounding.hpp"
#include "connsync/verify.hpp"

namespace {

using namespace connsync;

constexpr int kExitOk = 0;
constexpr int kExitFailedBound = 1;
constexpr int kExitUsage = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

struct GenerateArgs {
  std::string family;
  InstanceSpec spec;
  std::string out;
  std::string field_out;
};

int run_generate(const GenerateArgs& args) {
  InstanceSpec spec = args.spec;
  spec.family = parse_family(args.family);
  const GeneratedInstance inst = generate(spec);
  write_graph_file(inst.graph, args.out);
  if (!args.field_out.empty()) {
    if (!inst.test_field) throw Error("--field-out: family has no test field");
    write_text(args.field_out, write_field(*inst.test_field));
  }
  std::cout << "vertices " << inst.graph.vertex_count() << "\nedges " << inst.graph.edges().size() << '\n';
  return kExitOk;
}

int run_spectrum(const std::string& in, int k, bool plain) {
  const ConnectionGraph g = read_graph_file(in);
  const SpectralResult s = bottom_spectrum(g, plain ? SpectrumKind::plain : SpectrumKind::connection, k);
  std::cout << std::setprecision(12) << "index lambda\n";
  for (Eigen::Index i = 0; i < s.lambdas.size(); ++i) std::cout << i + 1 << ' ' << s.lambdas[i] << '\n';
  return kExitOk;
}

int run_sync(const std::string& in, const std::string& mode_name, bool l1, const std::string& out) {
  SyncMode mode = SyncMode::partial_sphere;
  if (mode_name == "full") {
    mode = SyncMode::full_sphere;
  } else if (mode_name == "od") {
    mode = SyncMode::orthogonal_group;
  } else if (mode_name != "partial") {
    throw CLI::ValidationError("--mode", "expected partial, full or od");
  }
  const ConnectionGraph g = read_graph_file(in);
  const SyncSolution s = synchronize(g, mode);
  const Certificate& c = s.certificate;

  std::cout << std::setprecision(12);
  std::cout << "mode " << to_string(s.mode) << '\n';
  std::cout << "lambdas";
  for (Eigen::Index i = 0; i < c.lambdas.size(); ++i) std::cout << ' ' << c.lambdas[i];
  std::cout << '\n';
  if (mode != SyncMode::partial_sphere) std::cout << "spectral_gap " << c.spectral_gap << '\n';
  std::cout << "achieved " << s.achieved << "\ncertificate " << c.bound << (c.vacuous ? " (vacuous)" : "") << '\n';
  bool failed = !c.vacuous && s.achieved > c.bound + kDefaultSlackTolerance;
  if (l1) {
    std::cout << "achieved_l1 " << s.achieved_l1 << '\n';
    if (s.sweep_best_l1) std::cout << "sweep_best_l1 " << *s.sweep_best_l1 << '\n';
    std::cout << "certificate_l1 " << c.l1_bound << '\n';
    const double checked = s.sweep_best_l1 ? *s.sweep_best_l1 : s.achieved_l1;
    failed = failed || (std::isfinite(c.l1_bound) && checked > c.l1_bound + kDefaultSlackTolerance);
  }
  if (!out.empty()) {
    write_text(out, mode == SyncMode::orthogonal_group ? write_potential(s.potential()) : write_field(s.field()));
  }
  return failed ? kExitFailedBound : kExitOk;
}

int run_oracle(const std::string& in, const std::string& kind_name, int steps) {
  const ConnectionGraph g = read_graph_file(in);
  const ConstantKind kind = parse_constant_kind(kind_name);
  if (g.dim() > 2) throw DimensionError("oracle: only d = 1 (exact) and d = 2 (grid) are supported");
  const OracleResult r = g.dim() == 1 ? brute_force_d1(g, kind) : grid_search_d2(g, kind, steps);
  std::cout << std::setprecision(12) << to_string(r.kind) << ' ' << r.value << '\n';
  if (r.method == OracleMethod::grid) {
    std::cout << "method grid (upper bound) steps " << *r.grid_steps << '\n';
  } else {
    std::cout << "method exact\n";
  }
  return kExitOk;
}

int run_verify(const std::string& in, int trials, std::uint64_t seed, const std::string& report) {
  const ConnectionGraph g = read_graph_file(in);
  TheoremOptions options;
  options.seed = seed;
  const std::vector<BoundReport> reports = check_theorems(g, options);
  std::vector<PropertyCheck> checks = check_lemmas(g, trials, seed);
  checks.push_back(check_appendix(trials, seed));

  std::cout << "fingerprint " << instance_fingerprint(g, seed) << "\n\n" << format_report_table(reports, checks);
  if (!report.empty()) write_text(report, format_report_records(reports, checks));

  bool failed = false;
  for (const BoundReport& r : reports) failed = failed || !r.pass;
  for (const PropertyCheck& c : checks) failed = failed || !c.pass();
  return failed ? kExitFailedBound : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral synchronization on connection graphs"};
  app.require_subcommand(1, 1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated instance");
  generate_cmd->add_option("--family", gen.family, "ring | rainbow | two_cliques_o2 | consistent | outliers")->required();
  generate_cmd->add_option("--n", gen.spec.n, "Vertex count");
  generate_cmd->add_option("--d", gen.spec.dim, "Block dimension");
  generate_cmd->add_option("--p", gen.spec.p, "Edge probability");
  generate_cmd->add_option("--eps", gen.spec.eps, "Outlier fraction");
  generate_cmd->add_option("--m", gen.spec.m, "Clique size (two_cliques_o2)");
  generate_cmd->add_option("--seed", gen.spec.seed, "RNG seed");
  generate_cmd->add_option("--out", gen.out, "Graph output path")->required();
  generate_cmd->add_option("--field-out", gen.field_out, "Test field output path (ring, rainbow)");

  std::string in;
  int k = 1;
  bool plain = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Bottom eigenvalues of a normalized Laplacian");
  spectrum_cmd->add_option("--in", in, "Graph path")->required();
  spectrum_cmd->add_option("--k", k, "Number of eigenvalues")->required()->check(CLI::PositiveNumber);
  spectrum_cmd->add_flag("--plain", plain, "Use the graph Laplacian instead of the connection Laplacian");

  std::string mode;
  bool l1 = false;
  std::string out;
  auto* sync_cmd = app.add_subcommand("sync", "Run a spectral rounding algorithm");
  sync_cmd->add_option("--mode", mode, "partial | full | od")->required();
  sync_cmd->add_option("--in", in, "Graph path")->required();
  sync_cmd->add_flag("--l1", l1, "Also report the unsquared frustration");
  sync_cmd->add_option("--out", out, "Solution output path");

  std::string kind;
  int steps = 32;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force frustration constant");
  oracle_cmd->add_option("--in", in, "Graph path")->required();
  oracle_cmd->add_option("--kind", kind, "eta_g | eta_star_g | nu_g | eta_g_l1 | eta_star_g_l1 | nu_g_l1")->required();
  oracle_cmd->add_option("--steps", steps, "Angle grid size for d = 2");

  int trials = 200;
  std::uint64_t seed = 0;
  std::string report;
  auto* verify_cmd = app.add_subcommand("verify", "Check every bound on an instance");
  verify_cmd->add_option("--in", in, "Graph path")->required();
  verify_cmd->add_option("--trials", trials, "Random fields per lemma")->required()->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", seed, "RNG seed")->required();
  verify_cmd->add_option("--report", report, "Key-value records output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate_cmd) return run_generate(gen);
    if (*spectrum_cmd) return run_spectrum(in, k, plain);
    if (*sync_cmd) return run_sync(in, mode, l1, out);
    if (*oracle_cmd) return run_oracle(in, kind, steps);
    if (*verify_cmd) return run_verify(in, trials, seed, report);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
