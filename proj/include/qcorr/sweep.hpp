#ifndef QCORR_SWEEP_HPP
#define QCORR_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

enum class SweepKnob { D, Delta, B, Gamma };
enum class OutputKind { Discord, Concurrence, Classical, Mutual, Energies };
enum class FileFormat { Csv, Json };

std::string to_string(SweepKnob knob);
std::string to_string(OutputKind kind);
SweepKnob sweep_knob_from_string(const std::string& name);
OutputKind output_kind_from_string(const std::string& name);
ChannelKind channel_kind_from_string(const std::string& name);

// Uniform inclusive grid: steps points from start to stop.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  double at(int i) const;
};

// Parse "start:stop:steps".
GridSpec parse_grid(const std::string& text);

// One batch evaluation: a fixed parameter point, one or two swept knobs,
// and the set of emitted quantities. A channel must be given exactly when
// one of the knobs is gamma.
struct SweepSpec {
  ModelParams fixed;
  SweepKnob knob = SweepKnob::D;
  GridSpec range;
  std::optional<ChannelKind> channel;
  std::optional<SweepKnob> second_knob;
  std::optional<GridSpec> second_range;
  std::vector<OutputKind> outputs = {OutputKind::Discord};
  std::string header_note;  // extra "# note:" comment, e.g. inferred presets

  void validate() const;  // throws std::invalid_argument
};

struct SweepRow {
  std::vector<double> knobs;   // one or two knob values
  std::vector<double> values;  // one entry per output column
};

struct SweepResult {
  std::vector<std::string> columns;  // knob columns then output columns
  std::vector<SweepRow> rows;        // steps (or steps*steps2) rows, grid order
};

// Evaluates the grid with a worker pool (size from QCORR_WORKERS, default
// machine parallelism); the result is independent of the worker count.
// Non-finite values abort with std::runtime_error.
SweepResult run_sweep(const SweepSpec& spec);

// Fixed 9-significant-digit, locale-independent rendering used by every
// emitter so outputs diff cleanly.
std::string format_number(double x);

void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result);
void write_json(std::ostream& os, const SweepSpec& spec, const SweepResult& result);

// Figure presets reproducing the captioned parameter choices; one sweep
// spec (and output file) per curve or surface.
struct FigureCurve {
  std::string label;  // file stem suffix: <preset>_<label>.<ext>
  SweepSpec spec;
};

std::vector<std::string> figure_presets();
std::vector<FigureCurve> figure_curves(const std::string& preset);

// Writes every curve of the preset into out_dir; returns the paths.
std::vector<std::filesystem::path> run_figure(const std::string& preset,
                                              const std::filesystem::path& out_dir,
                                              FileFormat format = FileFormat::Csv);

// One located ground-level crossing with the discord of the ground
// mixture on each side and exactly at the degeneracy point.
struct CrossingReport {
  double value = 0.0;
  std::vector<int> levels_below;
  std::vector<int> levels_above;
  double discord_below = 0.0;
  double discord_at = 0.0;
  double discord_above = 0.0;
};

std::vector<CrossingReport> run_crossings(const ModelParams& fixed, Knob knob,
                                          double lo, double hi);

// Seeded comparison of the X-state closed form against the
// measurement-optimization oracle over random thermal states.
struct OracleCheckResult {
  struct Excess {
    int index = 0;
    ModelParams params;
    double closed_form = 0.0;
    double oracle = 0.0;
  };

  int samples = 0;
  double max_gap = 0.0;
  std::vector<Excess> excesses;  // samples with gap > 1e-3
};

OracleCheckResult run_oracle_check(int n_samples, std::uint64_t seed);

// Worker pool size: QCORR_WORKERS when set to a positive integer,
// otherwise the hardware concurrency (at least 1).
int worker_count();

}  // namespace qcorr

#endif
