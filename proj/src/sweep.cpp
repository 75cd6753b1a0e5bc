#include "lorentzqi/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <string>
#include <system_error>
#include <thread>

#include <json.hpp>

#include "lorentzqi/errors.hpp"

namespace lqi {

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::string_view extension(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

std::vector<double> linspace(double start, double end, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {start};
  out.reserve(n);
  const double span = end - start;
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(start + span * double(i) / double(n - 1));
  out.push_back(end);
  return out;
}

SecondaryGrid SecondaryGrid::uniform(std::string name, double start, double end, std::size_t steps) {
  return {std::move(name), linspace(start, end, steps)};
}

namespace {

bool family_has_parameter(const StateFamily& family, std::string_view name) {
  if (std::holds_alternative<Werner>(family)) return name == "x";
  if (std::holds_alternative<GenericPure>(family)) return name == "p";
  if (std::holds_alternative<XState>(family)) return name == "cxx" || name == "cyy" || name == "czz";
  return false;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

StateFamily with_parameter(const StateFamily& family, std::string_view name, double value) {
  if (!family_has_parameter(family, name)) {
    throw InvalidSpec("family '" + family_name(family) + "' has no parameter '" + std::string(name) + "'");
  }
  StateFamily out = family;
  if (auto* w = std::get_if<Werner>(&out)) {
    w->x = value;
  } else if (auto* g = std::get_if<GenericPure>(&out)) {
    g->p = value;
  } else if (auto* x = std::get_if<XState>(&out)) {
    if (name == "cxx") x->cxx = value;
    if (name == "cyy") x->cyy = value;
    if (name == "czz") x->czz = value;
  }
  return out;
}

void validate_spec(const SweepSpec& spec) {
  if (!std::isfinite(spec.phi_start) || !std::isfinite(spec.phi_end)) throw InvalidSpec("phi bounds must be finite");
  if (!(spec.phi_start < spec.phi_end)) throw InvalidSpec("phi_start must be < phi_end");
  if (spec.steps < 2) throw InvalidSpec("steps must be >= 2");
  if (spec.secondary) {
    if (spec.secondary->values.empty()) throw InvalidSpec("secondary grid is empty");
    if (!family_has_parameter(spec.family, spec.secondary->name)) {
      throw InvalidSpec("family '" + family_name(spec.family) + "' has no parameter '" + spec.secondary->name + "'");
    }
    for (double v : spec.secondary->values) {
      if (!std::isfinite(v)) throw InvalidSpec("secondary grid value is not finite");
    }
  }
  const std::size_t outer = spec.secondary ? spec.secondary->values.size() : 1;
  if (spec.steps > kMaxGridPoints || outer > kMaxGridPoints / spec.steps) {
    throw InvalidSpec("grid exceeds " + std::to_string(kMaxGridPoints) + " points");
  }
}

std::size_t sweep_thread_count() {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

SweepResult evaluate_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  const std::vector<double> phis = linspace(spec.phi_start, spec.phi_end, spec.steps);
  const std::size_t outer = spec.secondary ? spec.secondary->values.size() : 1;

  // Resolve the family per outer value up front so range errors surface
  // before any work is scheduled.
  std::vector<BlochState<double>> initial;
  initial.reserve(outer);
  for (std::size_t k = 0; k < outer; ++k) {
    const StateFamily f =
        spec.secondary ? with_parameter(spec.family, spec.secondary->name, spec.secondary->values[k]) : spec.family;
    initial.push_back(make_state(f));
  }

  const std::size_t total = spec.grid_size();
  SweepResult result;
  result.rows.resize(total);

  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t k = i / spec.steps;
      const double phi = phis[i % spec.steps];
      const auto transformed = transform_bloch(initial[k], phi, spec.mode);
      SweepRow& row = result.rows[i];
      if (spec.secondary) row.param = spec.secondary->values[k];
      row.metrics = evaluate_metrics(to_density(transformed), phi);
    }
  };

  const std::size_t workers = std::min(sweep_thread_count(), std::max<std::size_t>(1, total / 64));
  if (workers <= 1) {
    evaluate_range(0, total);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (total + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(total, w * chunk);
        const std::size_t end = std::min(total, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          try {
            evaluate_range(begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  PhysicalityReport& report = result.report;
  report.total_points = total;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& m = result.rows[i].metrics;
    if (!m.physical) ++report.unphysical_points;
    if (m.min_eigenvalue < result.rows[worst].metrics.min_eigenvalue) worst = i;
  }
  report.worst_min_eigenvalue = result.rows[worst].metrics.min_eigenvalue;
  report.worst_param = result.rows[worst].param;
  report.worst_phi = result.rows[worst].metrics.phi;
  report.choi_min_eigenvalue_at_worst = analyze_choi(spec.mode, report.worst_phi).min_eigenvalue;
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : result.rows) {
    const auto& m = row.metrics;
    out += format_double(m.phi);
    out += ',';
    if (row.param) out += format_double(*row.param);
    for (double v : {m.concurrence, m.negativity, m.entropy_global, m.entropy_a, m.entropy_b, m.purity,
                     m.min_eigenvalue}) {
      out += ',';
      out += format_double(v);
    }
    out += m.physical ? ",true\n" : ",false\n";
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  using nlohmann::ordered_json;
  ordered_json records = ordered_json::array();
  for (const auto& row : result.rows) {
    const auto& m = row.metrics;
    ordered_json r;
    r["phi"] = m.phi;
    r["param"] = row.param ? ordered_json(*row.param) : ordered_json(nullptr);
    r["concurrence"] = m.concurrence;
    r["negativity"] = m.negativity;
    r["entropy"] = m.entropy_global;
    r["entropy_a"] = m.entropy_a;
    r["entropy_b"] = m.entropy_b;
    r["purity"] = m.purity;
    r["min_eig"] = m.min_eigenvalue;
    r["physical"] = m.physical;
    records.push_back(std::move(r));
  }
  const auto& rep = result.report;
  ordered_json report;
  report["total_points"] = rep.total_points;
  report["unphysical_points"] = rep.unphysical_points;
  report["worst_min_eigenvalue"] = rep.worst_min_eigenvalue;
  report["worst_point"] = {{"param", rep.worst_param ? ordered_json(*rep.worst_param) : ordered_json(nullptr)},
                           {"phi", rep.worst_phi}};
  report["choi_min_eigenvalue_at_worst"] = rep.choi_min_eigenvalue_at_worst;

  ordered_json doc;
  doc["records"] = std::move(records);
  doc["report"] = std::move(report);
  return doc.dump(2) + "\n";
}

std::string serialize(const SweepResult& result, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(result) : to_json(result);
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  if (path.empty()) throw IoError("output path is empty");
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.output_path.empty()) throw IoError("output path is empty");
  SweepResult result = evaluate_sweep(spec);
  write_file_atomically(spec.output_path, serialize(result, spec.format));
  return result;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
const XState kFigureXState{-0.9, -0.8, -0.7};

SweepSpec curve(StateFamily family, const PresetOptions& o) {
  SweepSpec s;
  s.family = family;
  s.phi_start = 0.0;
  s.phi_end = kTwoPi;
  s.steps = o.phi_steps;
  s.mode = ChannelMode::Verbatim;
  s.format = o.format;
  return s;
}

SweepSpec surface(StateFamily family, SecondaryGrid grid, const PresetOptions& o) {
  SweepSpec s = curve(family, o);
  s.secondary = std::move(grid);
  return s;
}

}  // namespace

std::vector<PresetDataset> preset_datasets(std::string_view name, const PresetOptions& o) {
  std::vector<PresetDataset> out;
  if (name == "fig1") {
    out.push_back({"fig1_werner_concurrence", surface(Werner{}, SecondaryGrid::uniform("x", -1, 1, o.param_steps), o)});
  } else if (name == "fig2") {
    out.push_back({"fig2_werner_x1", curve(Werner{1.0}, o)});
    out.push_back({"fig2_xstate", curve(kFigureXState, o)});
    out.push_back({"fig2_werner_xm0.6", curve(Werner{-0.6}, o)});
  } else if (name == "fig3") {
    out.push_back(
        {"fig3_pure_concurrence", surface(GenericPure{}, SecondaryGrid::uniform("p", 0, 1, o.param_steps), o)});
  } else if (name == "fig4") {
    out.push_back({"fig4_pure_concurrence", surface(GenericPure{}, SecondaryGrid{"p", {0.0, 0.6, 1.0}}, o)});
    out.push_back(
        {"fig4_werner_entropy", surface(Werner{}, SecondaryGrid::uniform("x", -1, 1, o.param_steps), o)});
  } else if (name == "fig5") {
    out.push_back({"fig5_werner_x1", curve(Werner{1.0}, o)});
    out.push_back({"fig5_werner_x0.7", curve(Werner{0.7}, o)});
    out.push_back({"fig5_werner_xm0.6", curve(Werner{-0.6}, o)});
    out.push_back({"fig5_xstate", curve(kFigureXState, o)});
  } else {
    throw UnknownPreset("unknown preset '" + std::string(name) + "' (expected fig1..fig5)");
  }
  for (auto& d : out) {
    d.spec.output_path = o.output_dir / (d.name + "." + std::string(extension(o.format)));
  }
  return out;
}

std::vector<PresetOutput> run_preset(std::string_view name, const PresetOptions& options) {
  std::vector<PresetOutput> out;
  for (auto& d : preset_datasets(name, options)) {
    out.push_back({d.name, d.spec.output_path, run_sweep(d.spec)});
  }
  return out;
}

}  // namespace lqi
