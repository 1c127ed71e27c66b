#include "qcorr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qcorr/correlations.hpp"

namespace qcorr {

namespace {

// Strided parallel map over [0, n); rethrows the first worker exception.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const int workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool uses_gamma(const SweepSpec& spec) {
  return spec.knob == SweepKnob::Gamma ||
         (spec.second_knob && *spec.second_knob == SweepKnob::Gamma);
}

ModelParams apply_static_knob(ModelParams p, SweepKnob knob, double value) {
  switch (knob) {
    case SweepKnob::D: p.dm = value; break;
    case SweepKnob::Delta: p.delta = value; break;
    case SweepKnob::B: p.field = value; break;
    case SweepKnob::Gamma: break;  // handled separately
  }
  return p;
}

double clamp_unit(double x) { return x < 0.0 ? 0.0 : x; }

struct RowQuantities {
  DiscordBreakdown breakdown;
  double concurrence = 0.0;
  std::array<double, 8> energies{};
};

RowQuantities evaluate_point(const SweepSpec& spec, double primary,
                             std::optional<double> secondary) {
  ModelParams p = spec.fixed;
  std::optional<double> gamma;

  if (spec.knob == SweepKnob::Gamma)
    gamma = primary;
  else
    p = apply_static_knob(p, spec.knob, primary);
  if (spec.second_knob) {
    if (*spec.second_knob == SweepKnob::Gamma)
      gamma = *secondary;
    else
      p = apply_static_knob(p, *spec.second_knob, *secondary);
  }

  XState x;
  if (gamma) {
    x = (*spec.channel == ChannelKind::Dephasing) ? dephased_pair_state(p, *gamma)
                                                  : depolarized_pair_state(p, *gamma);
  } else {
    x = reduced_pair_state(p);
  }

  RowQuantities q;
  q.breakdown = discord_xstate(x);
  q.concurrence = concurrence_xstate(x);
  q.energies = analytic_spectrum(p).energies;
  return q;
}

std::string knob_column(SweepKnob knob) { return to_string(knob); }

}  // namespace

std::string to_string(SweepKnob knob) {
  switch (knob) {
    case SweepKnob::D: return "d";
    case SweepKnob::Delta: return "delta";
    case SweepKnob::B: return "b";
    case SweepKnob::Gamma: return "gamma";
  }
  return "?";
}

std::string to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::Discord: return "discord";
    case OutputKind::Concurrence: return "concurrence";
    case OutputKind::Classical: return "classical";
    case OutputKind::Mutual: return "mutual";
    case OutputKind::Energies: return "energies";
  }
  return "?";
}

SweepKnob sweep_knob_from_string(const std::string& name) {
  if (name == "d") return SweepKnob::D;
  if (name == "delta") return SweepKnob::Delta;
  if (name == "b") return SweepKnob::B;
  if (name == "gamma") return SweepKnob::Gamma;
  throw std::invalid_argument("unknown knob '" + name + "' (expected d|delta|b|gamma)");
}

OutputKind output_kind_from_string(const std::string& name) {
  if (name == "discord") return OutputKind::Discord;
  if (name == "concurrence") return OutputKind::Concurrence;
  if (name == "classical") return OutputKind::Classical;
  if (name == "mutual") return OutputKind::Mutual;
  if (name == "energies") return OutputKind::Energies;
  throw std::invalid_argument("unknown output '" + name + "'");
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "dephasing") return ChannelKind::Dephasing;
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  throw std::invalid_argument("unknown channel '" + name +
                              "' (expected dephasing|depolarizing)");
}

double GridSpec::at(int i) const {
  if (i == steps - 1) return stop;  // endpoints land exactly on the bounds
  return start + (stop - start) * i / (steps - 1);
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char trailing;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.steps, &trailing) != 3)
    throw std::invalid_argument("range '" + text + "' is not start:stop:steps");
  return g;
}

void SweepSpec::validate() const {
  auto check_grid = [](const GridSpec& g, const char* which) {
    if (!(g.start < g.stop))
      throw std::invalid_argument(std::string(which) + ": start must be < stop");
    if (g.steps < 2) throw std::invalid_argument(std::string(which) + ": steps must be >= 2");
    if (!std::isfinite(g.start) || !std::isfinite(g.stop))
      throw std::invalid_argument(std::string(which) + ": bounds must be finite");
  };
  check_grid(range, "range");
  if (second_knob.has_value() != second_range.has_value())
    throw std::invalid_argument("second knob and second range must be given together");
  if (second_knob) {
    check_grid(*second_range, "second range");
    if (*second_knob == knob) throw std::invalid_argument("second knob repeats the first");
  }
  if (uses_gamma(*this) != channel.has_value())
    throw std::invalid_argument("a channel is required exactly when a knob is gamma");
  if (knob == SweepKnob::Gamma || (second_knob && *second_knob == SweepKnob::Gamma)) {
    const GridSpec& g = (knob == SweepKnob::Gamma) ? range : *second_range;
    if (g.start < 0.0 || g.stop > 1.0)
      throw std::invalid_argument("gamma grid must stay inside [0, 1]");
  }
  if (outputs.empty()) throw std::invalid_argument("at least one output is required");
  if (!(fixed.temp > 0.0)) throw std::invalid_argument("temperature must be > 0");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  SweepResult result;
  result.columns.push_back(knob_column(spec.knob));
  if (spec.second_knob) result.columns.push_back(knob_column(*spec.second_knob));
  for (OutputKind kind : spec.outputs) {
    if (kind == OutputKind::Energies) {
      for (int i = 0; i < 8; ++i) result.columns.push_back("e" + std::to_string(i));
    } else {
      result.columns.push_back(to_string(kind));
    }
  }

  const int inner = spec.second_knob ? spec.second_range->steps : 1;
  const std::size_t total = static_cast<std::size_t>(spec.range.steps) * inner;
  result.rows.resize(total);

  parallel_for(total, [&](std::size_t index) {
    const int i = static_cast<int>(index) / inner;
    const int k = static_cast<int>(index) % inner;
    const double primary = spec.range.at(i);
    std::optional<double> secondary;
    if (spec.second_knob) secondary = spec.second_range->at(k);

    const RowQuantities q = evaluate_point(spec, primary, secondary);

    SweepRow row;
    row.knobs.push_back(primary);
    if (secondary) row.knobs.push_back(*secondary);
    for (OutputKind kind : spec.outputs) {
      switch (kind) {
        case OutputKind::Discord: row.values.push_back(clamp_unit(q.breakdown.discord)); break;
        case OutputKind::Concurrence: row.values.push_back(q.concurrence); break;
        case OutputKind::Classical:
          row.values.push_back(clamp_unit(q.breakdown.classical_correlation));
          break;
        case OutputKind::Mutual:
          row.values.push_back(clamp_unit(q.breakdown.mutual_information));
          break;
        case OutputKind::Energies:
          row.values.insert(row.values.end(), q.energies.begin(), q.energies.end());
          break;
      }
    }
    for (double v : row.values)
      if (!std::isfinite(v))
        throw std::runtime_error("non-finite value in sweep row " + std::to_string(index));
    result.rows[index] = std::move(row);
  });

  return result;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

std::string spec_header(const SweepSpec& spec) {
  std::ostringstream os;
  os << "# params: j=" << format_number(spec.fixed.j)
     << " delta=" << format_number(spec.fixed.delta)
     << " dm=" << format_number(spec.fixed.dm)
     << " field=" << format_number(spec.fixed.field)
     << " temp=" << format_number(spec.fixed.temp) << " knob=" << to_string(spec.knob)
     << " range=" << format_number(spec.range.start) << ":" << format_number(spec.range.stop)
     << ":" << spec.range.steps;
  if (spec.second_knob)
    os << " second_knob=" << to_string(*spec.second_knob)
       << " second_range=" << format_number(spec.second_range->start) << ":"
       << format_number(spec.second_range->stop) << ":" << spec.second_range->steps;
  if (spec.channel) os << " channel=" << to_string(*spec.channel);
  os << " outputs=";
  for (std::size_t i = 0; i < spec.outputs.size(); ++i)
    os << (i ? "," : "") << to_string(spec.outputs[i]);
  return os.str();
}

}  // namespace

void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
  os << spec_header(spec) << "\n";
  if (!spec.header_note.empty()) os << "# note: " << spec.header_note << "\n";
  for (std::size_t c = 0; c < result.columns.size(); ++c)
    os << (c ? "," : "") << result.columns[c];
  os << "\n";
  for (const SweepRow& row : result.rows) {
    std::size_t c = 0;
    for (double k : row.knobs) os << (c++ ? "," : "") << format_number(k);
    for (double v : row.values) os << (c++ ? "," : "") << format_number(v);
    os << "\n";
  }
}

void write_json(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
  (void)spec;  // rows carry the same field names as the CSV columns
  os << "[\n";
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    const SweepRow& row = result.rows[r];
    os << "  {";
    std::size_t c = 0;
    for (double k : row.knobs) {
      os << (c ? ", " : "") << "\"" << result.columns[c] << "\": " << format_number(k);
      ++c;
    }
    for (double v : row.values) {
      os << (c ? ", " : "") << "\"" << result.columns[c] << "\": " << format_number(v);
      ++c;
    }
    os << (r + 1 < result.rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

namespace {

const char kInferredNote[] =
    "curve parameters inferred; the source figure does not state them";

SweepSpec base_spec(double j, double delta, double dm, double field, double temp) {
  SweepSpec spec;
  spec.fixed = {j, delta, dm, field, temp};
  return spec;
}

std::vector<FigureCurve> fig1_curves(double j, const std::vector<std::pair<std::string, double>>& deltas) {
  std::vector<FigureCurve> out;
  for (const auto& [label, delta] : deltas) {
    SweepSpec spec = base_spec(j, delta, 0.0, 0.0, 0.9);
    spec.knob = SweepKnob::D;
    spec.range = {0.0, 6.0, 601};
    spec.header_note = kInferredNote;
    out.push_back({label, spec});
  }
  return out;
}

std::vector<FigureCurve> fig2_curves(double j) {
  std::vector<FigureCurve> out;
  for (const auto& [label, dm] : std::vector<std::pair<std::string, double>>{
           {"d0", 0.0}, {"d1", 1.0}, {"d1p5", 1.5}, {"d2", 2.0}}) {
    SweepSpec spec = base_spec(j, 0.0, dm, 0.0, 0.6);
    spec.knob = SweepKnob::Delta;
    spec.range = {-3.0, 3.0, 601};
    spec.header_note = kInferredNote;
    out.push_back({label, spec});
  }
  return out;
}

std::vector<FigureCurve> fig3_curves(double j, double dm) {
  std::vector<FigureCurve> out;
  for (const auto& [label, delta] : std::vector<std::pair<std::string, double>>{
           {"deltam1", -1.0}, {"deltam0p5", -0.5}, {"delta0p5", 0.5}, {"delta1", 1.0}}) {
    SweepSpec spec = base_spec(j, delta, dm, 0.0, 0.9);
    spec.knob = SweepKnob::B;
    spec.range = {0.0, 4.0, 401};
    spec.header_note = kInferredNote;
    out.push_back({label, spec});
  }
  return out;
}

std::vector<FigureCurve> fig4_curves(double j, ChannelKind channel) {
  std::vector<FigureCurve> out;
  for (const auto& [label, dm] : std::vector<std::pair<std::string, double>>{
           {"d0", 0.0}, {"d1", 1.0}, {"d2", 2.0}, {"d3", 3.0}}) {
    SweepSpec spec = base_spec(j, 1.0, dm, 0.0, 0.5);
    spec.knob = SweepKnob::Gamma;
    spec.range = {0.0, 1.0, 1001};
    spec.channel = channel;
    spec.header_note = kInferredNote;
    out.push_back({label, spec});
  }
  return out;
}

std::vector<FigureCurve> surface_curves(ChannelKind channel) {
  std::vector<FigureCurve> out;
  for (double j : {-1.0, 1.0}) {
    for (OutputKind kind : {OutputKind::Discord, OutputKind::Concurrence}) {
      SweepSpec spec = base_spec(j, 0.5, 0.0, 0.0, 0.5);
      spec.knob = SweepKnob::Gamma;
      spec.range = {0.0, 1.0, 101};
      spec.second_knob = SweepKnob::D;
      spec.second_range = GridSpec{0.0, 6.0, 101};
      spec.channel = channel;
      spec.outputs = {kind};
      const std::string jlab = j < 0 ? "jm1" : "jp1";
      out.push_back({to_string(kind) + "_" + jlab, spec});
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> figure_presets() {
  return {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c",
          "fig3d", "fig4a", "fig4b", "fig4c", "fig4d", "fig5",  "fig6"};
}

std::vector<FigureCurve> figure_curves(const std::string& preset) {
  if (preset == "fig1a") return fig1_curves(-1.0, {{"delta1", 1.0}, {"delta2", 2.0}});
  if (preset == "fig1b") return fig1_curves(1.0, {{"deltam1", -1.0}, {"deltam2", -2.0}});
  if (preset == "fig2a") return fig2_curves(-1.0);
  if (preset == "fig2b") return fig2_curves(1.0);
  if (preset == "fig3a") return fig3_curves(-1.0, 0.0);
  if (preset == "fig3b") return fig3_curves(1.0, 0.0);
  if (preset == "fig3c") return fig3_curves(-1.0, 3.0);
  if (preset == "fig3d") return fig3_curves(1.0, 3.0);
  if (preset == "fig4a") return fig4_curves(-1.0, ChannelKind::Dephasing);
  if (preset == "fig4b") return fig4_curves(1.0, ChannelKind::Dephasing);
  if (preset == "fig4c") return fig4_curves(-1.0, ChannelKind::Depolarizing);
  if (preset == "fig4d") return fig4_curves(1.0, ChannelKind::Depolarizing);
  if (preset == "fig5") return surface_curves(ChannelKind::Dephasing);
  if (preset == "fig6") return surface_curves(ChannelKind::Depolarizing);
  throw std::invalid_argument("unknown figure preset '" + preset + "'");
}

std::vector<std::filesystem::path> run_figure(const std::string& preset,
                                              const std::filesystem::path& out_dir,
                                              FileFormat format) {
  const std::vector<FigureCurve> curves = figure_curves(preset);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const FigureCurve& curve : curves) {
    const SweepResult result = run_sweep(curve.spec);
    const char* ext = format == FileFormat::Csv ? ".csv" : ".json";
    const std::filesystem::path path = out_dir / (preset + "_" + curve.label + ext);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (format == FileFormat::Csv)
      write_csv(os, curve.spec, result);
    else
      write_json(os, curve.spec, result);
    written.push_back(path);
  }
  return written;
}

namespace {

double ground_pair_discord(const std::vector<int>& levels) {
  const Spectrum s = analytic_spectrum(ModelParams{});  // states are fixed
  Matrix rho(8);
  for (int i : levels) rho += (1.0 / levels.size()) * outer(s.states[i], s.states[i]);
  return discord_xstate(XState::from_matrix(partial_trace(rho, {1, 2}), 1e-10)).discord;
}

}  // namespace

std::vector<CrossingReport> run_crossings(const ModelParams& fixed, Knob knob, double lo,
                                          double hi) {
  std::vector<CrossingReport> reports;
  for (double c : find_crossing(fixed, knob, lo, hi)) {
    // 1e-5 clears both the 1e-8 location error and the 1e-9 degeneracy
    // window while staying inside the adjacent linear pieces.
    const double step = 1e-5 * std::max(1.0, std::abs(c));
    CrossingReport r;
    r.value = c;
    r.levels_below = ground_level_set(with_knob(fixed, knob, c - step));
    r.levels_above = ground_level_set(with_knob(fixed, knob, c + step));
    std::vector<int> joint = r.levels_below;
    for (int i : r.levels_above)
      if (std::find(joint.begin(), joint.end(), i) == joint.end()) joint.push_back(i);
    std::sort(joint.begin(), joint.end());
    r.discord_below = ground_pair_discord(r.levels_below);
    r.discord_at = ground_pair_discord(joint);
    r.discord_above = ground_pair_discord(r.levels_above);
    reports.push_back(std::move(r));
  }
  return reports;
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double next_unit(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;  // uniform in [0, 1)
}

ModelParams draw_params(std::mt19937_64& rng) {
  ModelParams p;
  p.j = next_unit(rng) < 0.5 ? -1.0 : 1.0;
  p.delta = -3.0 + 6.0 * next_unit(rng);
  p.dm = -3.0 + 6.0 * next_unit(rng);
  p.field = -2.0 + 4.0 * next_unit(rng);
  p.temp = 0.2 + 2.8 * next_unit(rng);
  return p;
}

}  // namespace

OracleCheckResult run_oracle_check(int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("run_oracle_check: need n_samples >= 1");

  struct Sample {
    ModelParams params;
    double closed = 0.0;
    double oracle = 0.0;
  };
  std::vector<Sample> samples(n_samples);

  parallel_for(n_samples, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x51AF3B1ULL + i)));
    Sample& s = samples[i];
    s.params = draw_params(rng);
    const XState x = reduced_pair_state(s.params);
    s.closed = discord_xstate(x).discord;
    s.oracle = discord_oracle(x.densify()).discord;
  });

  OracleCheckResult out;
  out.samples = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double gap = std::abs(samples[i].closed - samples[i].oracle);
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > 1e-3)
      out.excesses.push_back({i, samples[i].params, samples[i].closed, samples[i].oracle});
  }
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("QCORR_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace qcorr
