// Command-line front end: parameter sweeps, figure presets, ground-state
// crossing reports and closed-form/oracle cross-validation.
//
// Exit codes: 0 ok, 2 usage error, 3 numerical failure, 4 validation failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct ParamFlags {
  double j = 1.0;
  double delta = 0.0;
  double dm = 0.0;
  double field = 0.0;
  double temp = 1.0;
};

void add_param_flags(CLI::App* app, ParamFlags& flags, bool with_temp) {
  app->add_option("--j", flags.j, "Exchange coupling J (+1 antiferro, -1 ferro)");
  app->add_option("--delta", flags.delta, "Anisotropy Delta");
  app->add_option("--dm", flags.dm, "DM interaction strength D");
  app->add_option("--field", flags.field, "Magnetic field B");
  if (with_temp) app->add_option("--temp", flags.temp, "Temperature T (> 0)");
}

std::vector<qcorr::OutputKind> parse_outputs(const std::string& csv) {
  std::vector<qcorr::OutputKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(qcorr::output_kind_from_string(item));
  return out;
}

int cmd_sweep(const ParamFlags& params, const std::string& knob, const std::string& range,
              const std::string& channel, const std::string& second_knob,
              const std::string& second_range, const std::string& outputs,
              const std::string& note, const std::string& out_path,
              const std::string& format) {
  qcorr::SweepSpec spec;
  spec.fixed = {params.j, params.delta, params.dm, params.field, params.temp};
  spec.knob = qcorr::sweep_knob_from_string(knob);
  spec.range = qcorr::parse_grid(range);
  if (!channel.empty()) spec.channel = qcorr::channel_kind_from_string(channel);
  if (!second_knob.empty()) spec.second_knob = qcorr::sweep_knob_from_string(second_knob);
  if (!second_range.empty()) spec.second_range = qcorr::parse_grid(second_range);
  spec.outputs = parse_outputs(outputs);
  spec.header_note = note;
  spec.validate();

  const qcorr::SweepResult result = qcorr::run_sweep(spec);

  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
  if (format == "csv")
    qcorr::write_csv(os, spec, result);
  else if (format == "json")
    qcorr::write_json(os, spec, result);
  else
    throw CLI::ValidationError("--format", "expected csv or json");
  return kExitOk;
}

int cmd_figure(const std::string& preset, const std::string& out_dir) {
  for (const auto& path : qcorr::run_figure(preset, out_dir))
    std::cout << path.string() << "\n";
  return kExitOk;
}

int cmd_crossings(const ParamFlags& params, const std::string& knob,
                  const std::string& range) {
  const qcorr::SweepKnob parsed = qcorr::sweep_knob_from_string(knob);
  if (parsed == qcorr::SweepKnob::Gamma)
    throw CLI::ValidationError("--knob", "crossings take d, delta or b");
  const qcorr::Knob k = parsed == qcorr::SweepKnob::D       ? qcorr::Knob::D
                        : parsed == qcorr::SweepKnob::Delta ? qcorr::Knob::Delta
                                                            : qcorr::Knob::B;
  const qcorr::GridSpec g = qcorr::parse_grid(range);

  qcorr::ModelParams fixed{params.j, params.delta, params.dm, params.field, 1.0};
  const auto reports = qcorr::run_crossings(fixed, k, g.start, g.stop);
  if (reports.empty()) {
    std::cout << "no ground-state crossing in [" << qcorr::format_number(g.start) << ", "
              << qcorr::format_number(g.stop) << "]\n";
    return kExitOk;
  }
  for (const auto& r : reports) {
    auto levels = [](const std::vector<int>& ls) {
      std::string s = "{";
      for (std::size_t i = 0; i < ls.size(); ++i)
        s += (i ? "," : "") + std::string("phi") + std::to_string(ls[i]);
      return s + "}";
    };
    std::cout << knob << " = " << qcorr::format_number(r.value)
              << "  ground " << levels(r.levels_below) << " -> " << levels(r.levels_above)
              << "  discord " << qcorr::format_number(r.discord_below) << " -> "
              << qcorr::format_number(r.discord_at) << " -> "
              << qcorr::format_number(r.discord_above) << "\n";
  }
  return kExitOk;
}

int cmd_oracle_check(int n, std::uint64_t seed) {
  const qcorr::OracleCheckResult result = qcorr::run_oracle_check(n, seed);
  std::cout << "samples: " << result.samples << "\n";
  std::cout << "max |closed-form - oracle|: " << qcorr::format_number(result.max_gap) << "\n";
  for (const auto& e : result.excesses) {
    std::cout << "excess at sample " << e.index << ": j=" << qcorr::format_number(e.params.j)
              << " delta=" << qcorr::format_number(e.params.delta)
              << " dm=" << qcorr::format_number(e.params.dm)
              << " field=" << qcorr::format_number(e.params.field)
              << " temp=" << qcorr::format_number(e.params.temp)
              << " closed=" << qcorr::format_number(e.closed_form)
              << " oracle=" << qcorr::format_number(e.oracle) << "\n";
  }
  if (!result.excesses.empty()) {
    std::cout << result.excesses.size() << " sample(s) above the 1e-3 agreement bound\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal quantum discord toolkit for the three-qubit XXZ+DM ring"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate correlations over a parameter grid");
  ParamFlags sweep_params;
  add_param_flags(sweep, sweep_params, true);
  std::string knob, range, channel, second_knob, second_range, note;
  std::string outputs = "discord";
  std::string out_path, format = "csv";
  sweep->add_option("--knob", knob, "Swept knob: d|delta|b|gamma")->required();
  sweep->add_option("--range", range, "Grid as start:stop:steps")->required();
  sweep->add_option("--channel", channel, "dephasing|depolarizing (required with gamma)");
  sweep->add_option("--second-knob", second_knob, "Optional second knob for surfaces");
  sweep->add_option("--second-range", second_range, "Grid for the second knob");
  sweep->add_option("--outputs", outputs,
                    "Comma list of discord,concurrence,classical,mutual,energies");
  sweep->add_option("--note", note, "Extra '# note:' header comment");
  sweep->add_option("--out", out_path, "Output file path")->required();
  sweep->add_option("--format", format, "csv|json");

  // figure
  auto* figure = app.add_subcommand("figure", "Emit a paper-figure preset as CSV files");
  std::string preset, out_dir = ".";
  figure->add_option("preset", preset, "One of: fig1a fig1b fig2a fig2b fig3a..fig3d fig4a..fig4d fig5 fig6")
      ->required();
  figure->add_option("--out-dir", out_dir, "Directory for the emitted files");

  // crossings
  auto* crossings = app.add_subcommand("crossings", "Locate ground-state crossings");
  ParamFlags crossing_params;
  add_param_flags(crossings, crossing_params, false);
  std::string cknob, crange;
  crossings->add_option("--knob", cknob, "Swept knob: d|delta|b")->required();
  crossings->add_option("--range", crange, "Search interval as start:stop:steps "
                                           "(steps ignored)")->required();

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check",
                                    "Compare closed-form discord against the "
                                    "measurement-optimization oracle");
  int n_samples = 1000;
  std::uint64_t seed = 42;
  oracle->add_option("--n", n_samples, "Number of random thermal states");
  oracle->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed())
      return cmd_sweep(sweep_params, knob, range, channel, second_knob, second_range,
                       outputs, note, out_path, format);
    if (figure->parsed()) return cmd_figure(preset, out_dir);
    if (crossings->parsed()) return cmd_crossings(crossing_params, cknob, crange);
    if (oracle->parsed()) return cmd_oracle_check(n_samples, seed);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
