#pragma once

// Parameter sweeps over phi (and optionally one family parameter), figure
// presets, and CSV/JSON emission.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzqi/channel.hpp"
#include "lorentzqi/metrics.hpp"
#include "lorentzqi/states.hpp"

namespace lqi {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view name);
std::string_view extension(OutputFormat format);

inline constexpr std::size_t kMaxGridPoints = 1'000'000;
inline constexpr std::string_view kCsvHeader =
    "phi,param,concurrence,negativity,entropy,entropy_a,entropy_b,purity,min_eig,physical";

/// n points from start to end inclusive; the last point is exactly `end`.
std::vector<double> linspace(double start, double end, std::size_t n);

/// Values of one family parameter (x, p, cxx, cyy or czz) for 2-D sweeps.
struct SecondaryGrid {
  std::string name;
  std::vector<double> values;

  static SecondaryGrid uniform(std::string name, double start, double end, std::size_t steps);
};

struct SweepSpec {
  StateFamily family = Werner{1.0};
  double phi_start = 0.0;
  double phi_end = 6.283185307179586;
  std::size_t steps = 361;
  ChannelMode mode = ChannelMode::Verbatim;
  std::optional<SecondaryGrid> secondary;
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::Csv;

  std::size_t grid_size() const { return steps * (secondary ? secondary->values.size() : 1); }
};

struct SweepRow {
  std::optional<double> param;
  MetricsRecord<double> metrics;
};

struct PhysicalityReport {
  std::size_t total_points = 0;
  std::size_t unphysical_points = 0;
  double worst_min_eigenvalue = 0.0;
  std::optional<double> worst_param;
  double worst_phi = 0.0;
  double choi_min_eigenvalue_at_worst = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  PhysicalityReport report;
};

/// Throws InvalidSpec for an empty/oversized grid, phi_start >= phi_end,
/// steps < 2, or a secondary parameter the family does not have.
void validate_spec(const SweepSpec& spec);

/// Family with the named parameter replaced by `value`.
StateFamily with_parameter(const StateFamily& family, std::string_view name, double value);

/// Evaluate every grid point (secondary outer, phi inner). Points may run
/// concurrently; the result order and content do not depend on it.
SweepResult evaluate_sweep(const SweepSpec& spec);

/// evaluate_sweep + atomic write to spec.output_path.
SweepResult run_sweep(const SweepSpec& spec);

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
std::string serialize(const SweepResult& result, OutputFormat format);

/// Write via a temporary sibling file and rename. Throws IoError.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

/// Worker count: THREADS environment override if set and positive, else the
/// hardware concurrency. Never affects output.
std::size_t sweep_thread_count();

// ---------------------------------------------------------------------------
// Presets

struct PresetOptions {
  std::size_t phi_steps = 361;
  std::size_t param_steps = 141;
  std::filesystem::path output_dir = ".";
  OutputFormat format = OutputFormat::Csv;
};

struct PresetDataset {
  std::string name;
  SweepSpec spec;
};

struct PresetOutput {
  std::string name;
  std::filesystem::path path;
  SweepResult result;
};

inline constexpr std::string_view kPresetNames[] = {"fig1", "fig2", "fig3", "fig4", "fig5"};

/// Sweep specs behind a preset. Throws UnknownPreset.
std::vector<PresetDataset> preset_datasets(std::string_view name, const PresetOptions& options = {});

/// Run and write every dataset of a preset to output_dir/<dataset>.<ext>.
std::vector<PresetOutput> run_preset(std::string_view name, const PresetOptions& options = {});

}  // namespace lqi
