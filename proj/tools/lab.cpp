// lab: command-line harness for the tacnode laboratory. Seeded experiments,
// formula grids, cross-checks and the acceptance-suite runner. All file
// output is deterministic given (command, config, seed); timing goes to
// stderr only.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tacnode/acceptance.hpp"
#include "tacnode/aztec.hpp"
#include "tacnode/cone.hpp"
#include "tacnode/densities.hpp"
#include "tacnode/io.hpp"
#include "tacnode/kernels.hpp"
#include "tacnode/sampler.hpp"
#include "tacnode/stats.hpp"

using namespace tacnode;

namespace {

struct CommonOpts {
  int n = 2;
  int rho = 1;
  double beta = 0.0;
  std::uint64_t seed = 1;
  long trials = 10000;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = true) {
  cmd->add_option("--n", o.n, "level / matrix size n");
  cmd->add_option("--rho", o.rho, "overlap size rho");
  cmd->add_option("--beta", o.beta, "shift beta >= 0");
  cmd->add_option("--seed", o.seed, "master seed");
  if (with_trials) cmd->add_option("--trials", o.trials, "sample count");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
}

std::string config_echo(const CommonOpts& o) {
  std::ostringstream os;
  os << "n=" << o.n << " rho=" << o.rho << " beta=" << format_double(o.beta)
     << " trials=" << o.trials << " format=" << o.format;
  return os.str();
}

int write_output(const CommonOpts& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) {
    std::cerr << "lab: cannot open " << o.out << "\n";
    return 1;
  }
  f << content;
  return 0;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << "wall_time_ms=" << ms << "\n";
  }
};

Spectrum parse_vector(const std::string& csv) {
  Spectrum out;
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  out.resize(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out[static_cast<int>(i)] = vals[i];
  return out;
}

int cmd_kernel_grid(const CommonOpts& o, const std::string& kernel, int u1,
                    int u2, double zmin, double zmax, int zcount) {
  if (zcount < 2) {
    std::cerr << "lab kernel-grid: grid count must be >= 2\n";
    return 2;
  }
  ModelParams params(std::max(o.n, o.rho), o.rho, o.beta);
  TacKernel tac(params, std::max(std::abs(u1), std::abs(u2)) + 1);
  std::ostringstream body;
  CsvWriter csv(body);
  FileMeta meta{"kernel-grid",
                config_echo(o) + " kernel=" + kernel + " u1=" + std::to_string(u1) +
                    " u2=" + std::to_string(u2),
                o.seed};
  csv.comment_block(meta);
  csv.row({"u1", "z1", "u2", "z2", "value"});
  double step = (zmax - zmin) / (zcount - 1);
  for (int i = 0; i < zcount; ++i)
    for (int j = 0; j < zcount; ++j) {
      double z1 = zmin + i * step, z2 = zmin + j * step;
      double v = kernel == "minor" ? minor_kernel({u1, z1}, {u2, z2}, o.beta)
                                   : tac({u1, z1}, {u2, z2});
      csv.numeric_row({static_cast<double>(u1), z1, static_cast<double>(u2),
                       z2, v});
    }
  return write_output(o, body.str());
}

int cmd_sample_gue(const CommonOpts& o) {
  ModelParams params(o.n, o.rho, o.beta);
  Rng rng(o.seed);
  std::ostringstream body;
  long total_attempts = 0;
  std::vector<CoupledPairSample> samples;
  for (long t = 0; t < o.trials; ++t) {
    samples.push_back(sample_coupled_pair(params, rng));
    total_attempts += samples.back().attempts;
  }
  double rate = static_cast<double>(o.trials) / static_cast<double>(total_attempts);
  if (rate < 1e-5)
    std::cerr << "lab sample-gue: warning, estimated acceptance rate " << rate
              << " is below 1e-5\n";
  FileMeta meta{"sample-gue", config_echo(o), o.seed};
  if (o.format == "json") {
    nlohmann::json j;
    meta.fill_json(&j);
    j["acceptance_rate_estimate"] = rate;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples) {
      nlohmann::json js;
      js["attempts"] = s.attempts;
      js["x"] = std::vector<double>(s.x_chain.back().data(),
                                    s.x_chain.back().data() + params.n);
      js["y"] = std::vector<double>(s.y_chain.back().data(),
                                    s.y_chain.back().data() + params.n);
      j["samples"].push_back(js);
    }
    body << j.dump(2) << "\n";
  } else {
    CsvWriter csv(body);
    csv.comment_block(meta);
    body << "# acceptance_rate_estimate=" << format_double(rate) << "\n";
    csv.row({"sample", "attempts", "level", "index", "value"});
    long id = 0;
    for (const auto& s : samples) {
      InterlacingChain chain = assemble_chain(s);
      for (const auto& [u, z] : chain.levels)
        for (int i = 0; i < z.size(); ++i)
          csv.numeric_row({static_cast<double>(id), static_cast<double>(s.attempts),
                           static_cast<double>(u), static_cast<double>(i), z[i]});
      ++id;
    }
  }
  return write_output(o, body.str());
}

int cmd_sample_aztec(const CommonOpts& o, double a, long steps, long burnin,
                     long thin, long nsamples) {
  aztec::DiamondRegion region(o.n, o.rho);
  Rng rng(o.seed);
  if (o.format == "svg") {
    aztec::TilingState t = aztec::sample_tiling_mcmc(region, a, steps, rng);
    return write_output(o, aztec::tiling_svg(t));
  }
  std::ostringstream body;
  CsvWriter csv(body);
  FileMeta meta{"sample-aztec",
                config_echo(o) + " a=" + format_double(a) + " steps=" +
                    std::to_string(steps) + " burnin=" + std::to_string(burnin) +
                    " thin=" + std::to_string(thin),
                o.seed};
  csv.comment_block(meta);
  csv.row({"sample", "line", "level", "eta", "red"});
  aztec::TilingState t = aztec::initial_tiling(region);
  for (long s = 0; s < burnin; ++s) aztec::mcmc_step(t, a, rng);
  for (long s = 0; s < nsamples; ++s) {
    for (long k = 0; k < thin; ++k) aztec::mcmc_step(t, a, rng);
    aztec::DotConfiguration d = aztec::extract_dots(t);
    for (size_t line = 0; line < d.eta.size(); ++line)
      for (size_t i = 0; i < d.eta[line].size(); ++i)
        csv.numeric_row({static_cast<double>(s), static_cast<double>(line),
                         static_cast<double>(region.level_of_line(static_cast<int>(line))),
                         static_cast<double>(d.eta[line][i]),
                         d.red[line][i] ? 1.0 : 0.0});
  }
  return write_output(o, body.str());
}

int cmd_enumerate_aztec(const CommonOpts& o, double a) {
  aztec::DiamondRegion region(o.n, o.rho);
  std::ostringstream body;
  if (o.format == "svg") {
    aztec::TilingState t = aztec::initial_tiling(region);
    return write_output(o, aztec::tiling_svg(t));
  }
  FileMeta meta{"enumerate-aztec", config_echo(o) + " a=" + format_double(a),
                o.seed};
  if (o.format == "json") {
    nlohmann::json j;
    meta.fill_json(&j);
    double z = 0.0;
    long count = 0;
    aztec::enumerate_tilings(region, a,
                             [&](const aztec::TilingState&, double w) {
                               z += w;
                               ++count;
                             });
    j["tilings"] = count;
    j["partition_function"] = z;
    aztec::UniformityReport rep = aztec::verify_uniformity(region);
    j["uniform_at_a1"] = rep.uniform;
    j["boundary_groups"] = rep.boundary_groups;
    body << j.dump(2) << "\n";
  } else {
    CsvWriter csv(body);
    csv.comment_block(meta);
    csv.row({"tiling", "verticals", "weight"});
    long id = 0;
    aztec::enumerate_tilings(region, a, [&](const aztec::TilingState& t, double w) {
      csv.numeric_row({static_cast<double>(id++),
                       static_cast<double>(t.vertical_count), w});
    });
  }
  return write_output(o, body.str());
}

int cmd_density(const CommonOpts& o, int u, double zmin, double zmax,
                int zcount, const std::string& at) {
  ModelParams params(o.n, o.rho, o.beta);
  std::ostringstream body;
  CsvWriter csv(body);
  FileMeta meta{"density", config_echo(o) + " u=" + std::to_string(u), o.seed};
  csv.comment_block(meta);
  if (!at.empty()) {
    Spectrum z = sorted_decreasing(parse_vector(at));
    csv.row({"u", "ordered_density"});
    csv.numeric_row({static_cast<double>(u), one_level_density(params, u, z)});
  } else {
    if (zcount < 2) {
      std::cerr << "lab density: grid count must be >= 2\n";
      return 2;
    }
    TacKernel k(params, std::abs(u) + 1);
    csv.row({"u", "z", "intensity"});
    double step = (zmax - zmin) / (zcount - 1);
    for (int i = 0; i < zcount; ++i) {
      double z = zmin + i * step;
      csv.numeric_row({static_cast<double>(u), z, k({u, z}, {u, z})});
    }
  }
  return write_output(o, body.str());
}

int cmd_volume(const CommonOpts& o, int pairs, long samples) {
  ModelParams params(o.n, o.rho, o.beta);
  std::ostringstream body;
  CsvWriter csv(body);
  FileMeta meta{"volume",
                config_echo(o) + " pairs=" + std::to_string(pairs) +
                    " samples=" + std::to_string(samples),
                o.seed};
  csv.comment_block(meta);
  csv.row({"pair", "gamma_coupling", "gamma_linear", "mc_estimate", "mc_stderr",
           "zscore"});
  Rng rng(o.seed);
  for (int p = 0; p < pairs; ++p) {
    auto [x, y] = random_feasible_pair(params, rng);
    double g1 = two_level_gamma(params, x, y, GammaRoute::coupling_matrix);
    double g2 = two_level_gamma(params, x, y, GammaRoute::linear_system);
    McEstimate est = mc_volume(params, x, y, samples, rng);
    double z = est.stderr_ > 0.0 ? (est.value - g1) / est.stderr_ : 0.0;
    csv.numeric_row({static_cast<double>(p), g1, g2, est.value, est.stderr_, z});
  }
  return write_output(o, body.str());
}

int cmd_induction(const CommonOpts& o, int order) {
  ModelParams params(o.n, o.rho, o.beta);
  Rng rng(o.seed);
  std::ostringstream body;
  CsvWriter csv(body);
  FileMeta meta{"induction-check", config_echo(o) + " order=" + std::to_string(order),
                o.seed};
  csv.comment_block(meta);
  csv.row({"trial", "residual"});
  for (int t = 0; t < std::max<long>(1, o.trials); ++t) {
    Spectrum z(params.n + 1), w(params.n + 1);
    for (int i = 0; i < params.n + 1; ++i) {
      z[i] = rng.uniform(-1.5, 1.5);
      w[i] = rng.uniform(-1.5, 1.5);
    }
    z = sorted_decreasing(z);
    w = sorted_decreasing(w);
    csv.numeric_row({static_cast<double>(t),
                     induction_step_check(params, z, w, order)});
  }
  return write_output(o, body.str());
}

int cmd_verify(const CommonOpts& o, bool list, bool fast,
               const std::string& inject, const std::string& report_path) {
  if (list) {
    for (const auto& c : acceptance_criteria())
      std::cout << c.id << "  " << c.name
                << (c.informational ? "  (informational)" : "") << "\n";
    return 0;
  }
  AcceptanceConfig cfg;
  cfg.seed = o.seed;
  cfg.fast = fast;
  cfg.inject_gamma_sign_fault = inject == "gamma-sign";
  nlohmann::json report;
  bool ok = run_acceptance(cfg, std::cout, &report);
  if (!report_path.empty()) {
    nlohmann::json top;
    FileMeta meta{"verify", config_echo(o) + (fast ? " fast=1" : ""), o.seed};
    meta.fill_json(&top);
    top["all_pass"] = ok;
    top["criteria"] = report;
    std::ofstream f(report_path);
    f << top.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Timer timer;
  CLI::App app{"tacnode laboratory: coupled GUE minors and double Aztec diamonds"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string kernel = "tac";
  int u1 = 1, u2 = 1, u = 1;
  double zmin = -3.0, zmax = 3.0;
  int zcount = 25;
  double a = 1.0;
  long steps = 10000, burnin = 2000, thin = 50, nsamples = 100, mc_samples = 200000;
  int pairs = 5, order = 12;
  std::string at, inject, report_path;
  bool list = false, fast = false;

  auto* kg = app.add_subcommand("kernel-grid", "evaluate a kernel on a grid");
  add_common(kg, o, false);
  kg->add_option("--kernel", kernel, "tac or minor")
      ->check(CLI::IsMember({"tac", "minor"}));
  kg->add_option("--u1", u1);
  kg->add_option("--u2", u2);
  kg->add_option("--zmin", zmin);
  kg->add_option("--zmax", zmax);
  kg->add_option("--zcount", zcount);

  auto* sg = app.add_subcommand("sample-gue", "rejection-sample coupled GUE pairs");
  add_common(sg, o);

  auto* sa = app.add_subcommand("sample-aztec", "MCMC tiling samples");
  add_common(sa, o);
  sa->add_option("--a", a, "vertical domino weight");
  sa->add_option("--steps", steps, "flip steps for svg output");
  sa->add_option("--burnin", burnin);
  sa->add_option("--thin", thin);
  sa->add_option("--samples", nsamples);

  auto* ea = app.add_subcommand("enumerate-aztec", "exhaustive tiling enumeration");
  add_common(ea, o, false);
  ea->add_option("--a", a, "vertical domino weight");

  auto* de = app.add_subcommand("density", "level density / intensity grid");
  add_common(de, o, false);
  de->add_option("--u", u, "level index");
  de->add_option("--zmin", zmin);
  de->add_option("--zmax", zmax);
  de->add_option("--zcount", zcount);
  de->add_option("--at", at, "comma-separated positions for the ordered density");

  auto* vo = app.add_subcommand("volume", "closed-form vs Monte Carlo cone volumes");
  add_common(vo, o, false);
  vo->add_option("--pairs", pairs);
  vo->add_option("--samples", mc_samples);

  auto* ic = app.add_subcommand("induction-check", "box-integration identity residuals");
  add_common(ic, o);

  auto* ve = app.add_subcommand("verify", "run the acceptance suite");
  add_common(ve, o, false);
  ve->add_flag("--list", list, "print criterion ids without running");
  ve->add_flag("--fast", fast, "reduced sample counts (smoke run)");
  ve->add_option("--inject-fault", inject,
                 "test hook; 'gamma-sign' flips the volume sign");
  ve->add_option("--report", report_path, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kg->parsed()) return cmd_kernel_grid(o, kernel, u1, u2, zmin, zmax, zcount);
    if (sg->parsed()) return cmd_sample_gue(o);
    if (sa->parsed()) return cmd_sample_aztec(o, a, steps, burnin, thin, nsamples);
    if (ea->parsed()) return cmd_enumerate_aztec(o, a);
    if (de->parsed()) return cmd_density(o, u, zmin, zmax, zcount, at);
    if (vo->parsed()) return cmd_volume(o, pairs, mc_samples);
    if (ic->parsed()) return cmd_induction(o, order);
    if (ve->parsed()) return cmd_verify(o, list, fast, inject, report_path);
  } catch (const std::exception& e) {
    std::cerr << "lab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
