// lqi: sweeps, figure presets, self-validation and Choi diagnostics for the
// phi-parameterized two-qubit spin transformation.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorentzqi/channel.hpp"
#include "lorentzqi/errors.hpp"
#include "lorentzqi/states.hpp"
#include "lorentzqi/sweep.hpp"
#include "lorentzqi/validate.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

lqi::BlochState<double> parse_bloch(const std::string& text) {
  std::array<double, 15> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == v.size()) throw lqi::InvalidSpec("--bloch needs exactly 15 values");
    try {
      std::size_t used = 0;
      v[n] = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw lqi::InvalidSpec("--bloch value '" + item + "' is not a number");
    }
    ++n;
  }
  if (n != v.size()) throw lqi::InvalidSpec("--bloch needs exactly 15 values, got " + std::to_string(n));
  return lqi::BlochState<double>::unflatten(v);
}

void print_report(std::ostream& out, const std::string& label, const lqi::SweepResult& r) {
  const auto& rep = r.report;
  double max_c = 0, max_c_phi = 0, max_s = 0, max_s_phi = 0;
  for (const auto& row : r.rows) {
    if (row.metrics.concurrence > max_c) max_c = row.metrics.concurrence, max_c_phi = row.metrics.phi;
    if (row.metrics.entropy_global > max_s) max_s = row.metrics.entropy_global, max_s_phi = row.metrics.phi;
  }
  out << label << ": " << rep.total_points << " points, " << rep.unphysical_points << " unphysical"
      << ", worst min eigenvalue " << fmt(rep.worst_min_eigenvalue) << " at phi=" << fmt(rep.worst_phi);
  if (rep.worst_param) out << " param=" << fmt(*rep.worst_param);
  out << ", Choi min eigenvalue there " << fmt(rep.choi_min_eigenvalue_at_worst) << "\n"
      << "  max concurrence " << fmt(max_c) << " at phi=" << fmt(max_c_phi) << ", max entropy " << fmt(max_s)
      << " at phi=" << fmt(max_s_phi) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit Bloch-state transformation sweeps and diagnostics"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep phi (and optionally one family parameter)");
  std::string family = "werner", mode_name = "verbatim", format_name = "csv", bloch_text, out_path;
  double x = 1.0, cxx = 0, cyy = 0, czz = 0, p = 0;
  double phi_start = 0.0, phi_end = 6.283185307179586;
  std::size_t steps = 361;
  std::string param_name;
  double param_start = 0, param_end = 1;
  std::size_t param_steps = 0;
  sweep->add_option("--family", family, "State family")
      ->check(CLI::IsMember({"werner", "xstate", "pure", "explicit"}));
  sweep->add_option("--x", x, "Werner parameter");
  sweep->add_option("--cxx", cxx, "X-state c_xx");
  sweep->add_option("--cyy", cyy, "X-state c_yy");
  sweep->add_option("--czz", czz, "X-state c_zz");
  sweep->add_option("--p", p, "Generic pure-state parameter");
  sweep->add_option("--bloch", bloch_text, "15 comma-separated values s1,s2,s3,t1,t2,t3,c11,...,c33");
  sweep->add_option("--phi-start", phi_start, "First phi (radians)");
  sweep->add_option("--phi-end", phi_end, "Last phi (radians, inclusive)");
  sweep->add_option("--steps", steps, "Number of phi points");
  sweep->add_option("--param", param_name, "Secondary grid parameter (x, p, cxx, cyy, czz)");
  sweep->add_option("--param-start", param_start, "Secondary grid start");
  sweep->add_option("--param-end", param_end, "Secondary grid end (inclusive)");
  sweep->add_option("--param-steps", param_steps, "Secondary grid points");
  sweep->add_option("--mode", mode_name, "Channel semantics")->check(CLI::IsMember({"verbatim", "symmetrized", "unitary"}));
  sweep->add_option("--out", out_path, "Output file")->required();
  sweep->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // preset
  auto* preset = app.add_subcommand("preset", "Run a figure preset");
  std::string preset_name, preset_dir = ".", preset_format = "csv";
  preset->add_option("name", preset_name, "fig1 | fig2 | fig3 | fig4 | fig5")->required();
  preset->add_option("--out", preset_dir, "Output directory");
  preset->add_option("--format", preset_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // validate
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  std::string mutation_name = "none";
  validate->add_option("--mutate", mutation_name, "Inject a known fault (smoke check): none | s2-sign")
      ->check(CLI::IsMember({"none", "s2-sign"}));

  // choi
  auto* choi = app.add_subcommand("choi", "Choi-matrix complete-positivity report");
  std::string choi_mode = "verbatim";
  double choi_phi = 0.0;
  choi->add_option("--mode", choi_mode, "Channel semantics")->check(CLI::IsMember({"verbatim", "symmetrized", "unitary"}));
  choi->add_option("--phi", choi_phi, "phi (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kExitUsage;
  }

  try {
    if (*sweep) {
      lqi::SweepSpec spec;
      if (family == "werner") spec.family = lqi::Werner{x};
      if (family == "xstate") spec.family = lqi::XState{cxx, cyy, czz};
      if (family == "pure") spec.family = lqi::GenericPure{p};
      if (family == "explicit") {
        if (bloch_text.empty()) throw lqi::InvalidSpec("--family explicit requires --bloch");
        spec.family = lqi::Explicit{parse_bloch(bloch_text)};
      }
      spec.phi_start = phi_start;
      spec.phi_end = phi_end;
      spec.steps = steps;
      spec.mode = *lqi::parse_channel_mode(mode_name);
      spec.format = *lqi::parse_output_format(format_name);
      spec.output_path = out_path;
      if (!param_name.empty()) {
        if (param_steps < 1) throw lqi::InvalidSpec("--param needs --param-steps >= 1");
        spec.secondary = lqi::SecondaryGrid::uniform(param_name, param_start, param_end, param_steps);
      }
      const auto result = lqi::run_sweep(spec);
      print_report(std::cout, out_path, result);
      return 0;
    }
    if (*preset) {
      lqi::PresetOptions options;
      options.output_dir = preset_dir;
      options.format = *lqi::parse_output_format(preset_format);
      std::filesystem::create_directories(options.output_dir);
      for (const auto& output : lqi::run_preset(preset_name, options)) {
        print_report(std::cout, output.path.string(), output.result);
      }
      return 0;
    }
    if (*validate) {
      return lqi::run_validate(std::cout, *lqi::parse_mutation(mutation_name)) == 0 ? 0 : kExitValidation;
    }
    if (*choi) {
      const auto s = lqi::analyze_choi(*lqi::parse_channel_mode(choi_mode), choi_phi);
      std::cout << "mode " << choi_mode << ", phi " << fmt(choi_phi) << "\n"
                << "choi min eigenvalue " << fmt(s.min_eigenvalue) << "\n"
                << "choi max eigenvalue " << fmt(s.max_eigenvalue) << "\n"
                << "choi trace " << fmt(s.trace) << "\n"
                << "trace-preserving residual " << fmt(s.tp_residual) << "\n"
                << "completely positive " << (s.completely_positive ? "true" : "false") << "\n";
      return 0;
    }
  } catch (const lqi::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const lqi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
