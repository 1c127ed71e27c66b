#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcorr/sweep.hpp"
#include "test_util.hpp"

using namespace qcorr;
using namespace qcorr::test;

namespace {

SweepSpec basic_spec() {
  SweepSpec spec;
  spec.fixed = {1.0, -1.0, 0.0, 0.0, 0.9};
  spec.knob = SweepKnob::D;
  spec.range = {0.0, 6.0, 601};
  return spec;
}

std::string render_csv(const SweepSpec& spec) {
  std::ostringstream os;
  write_csv(os, spec, run_sweep(spec));
  return os.str();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("grids are uniform and inclusive") {
  SweepSpec spec = basic_spec();
  spec.range = {0.25, 1.75, 2};
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows.front().knobs[0] == 0.25);
  CHECK(r.rows.back().knobs[0] == 1.75);

  spec.range = {0.0, 1.0, 5};
  const SweepResult r5 = run_sweep(spec);
  REQUIRE(r5.rows.size() == 5);
  CHECK(r5.rows[2].knobs[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r5.rows[4].knobs[0] == 1.0);
}

TEST_CASE("surface sweeps emit steps-squared rows in grid order") {
  SweepSpec spec;
  spec.fixed = {-1.0, 0.5, 0.0, 0.0, 0.5};
  spec.knob = SweepKnob::Gamma;
  spec.range = {0.0, 1.0, 4};
  spec.second_knob = SweepKnob::D;
  spec.second_range = GridSpec{0.0, 6.0, 3};
  spec.channel = ChannelKind::Dephasing;
  spec.outputs = {OutputKind::Discord, OutputKind::Concurrence};

  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 12);
  REQUIRE(r.columns.size() == 4);
  CHECK(r.columns[0] == "gamma");
  CHECK(r.columns[1] == "d");
  CHECK(r.rows[0].knobs[0] == 0.0);
  CHECK(r.rows[0].knobs[1] == 0.0);
  CHECK(r.rows[1].knobs[1] == 3.0);  // inner knob advances first
  CHECK(r.rows[3].knobs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("invalid sweep specs are rejected") {
  SweepSpec spec = basic_spec();
  spec.range = {2.0, 1.0, 10};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.range.steps = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.knob = SweepKnob::Gamma;
  spec.range = {0.0, 1.0, 11};  // no channel given
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.channel = ChannelKind::Dephasing;  // channel without a gamma knob
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.knob = SweepKnob::Gamma;
  spec.range = {0.0, 1.5, 11};  // gamma beyond 1
  spec.channel = ChannelKind::Dephasing;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.second_knob = SweepKnob::D;  // second knob without second range
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = basic_spec();
  spec.second_knob = SweepKnob::D;  // repeats the primary knob
  spec.second_range = GridSpec{0.0, 1.0, 3};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("output is byte-identical across worker counts") {
  SweepSpec spec = basic_spec();
  spec.range.steps = 41;
  spec.outputs = {OutputKind::Discord, OutputKind::Concurrence, OutputKind::Mutual,
                  OutputKind::Classical};

  setenv("QCORR_WORKERS", "1", 1);
  const std::string serial = render_csv(spec);
  setenv("QCORR_WORKERS", "5", 1);
  const std::string parallel = render_csv(spec);
  unsetenv("QCORR_WORKERS");
  CHECK(serial == parallel);
  CHECK(render_csv(spec) == serial);
}

TEST_CASE("emitted correlations stay inside [0, 1]") {
  SweepSpec spec;
  spec.fixed = {-1.0, 1.0, 3.0, 0.0, 0.5};
  spec.knob = SweepKnob::Gamma;
  spec.range = {0.0, 1.0, 101};
  spec.channel = ChannelKind::Dephasing;
  spec.outputs = {OutputKind::Discord, OutputKind::Concurrence};
  for (const SweepRow& row : run_sweep(spec).rows)
    for (double v : row.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
}

TEST_CASE("energies output expands to eight stable columns") {
  SweepSpec spec = basic_spec();
  spec.range.steps = 3;
  spec.outputs = {OutputKind::Energies};
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.columns.size() == 9);
  CHECK(r.columns[1] == "e0");
  CHECK(r.columns[8] == "e7");
  // D = 0 row: E0 = 1.5 J Delta = -1.5 at J=1, Delta=-1.
  CHECK(r.rows[0].values[0] == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("number formatting is fixed at nine significant digits") {
  CHECK(format_number(0.3983932542605313) == "0.398393254");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1.5) == "-1.5");
  CHECK(format_number(2.8867513459481287) == "2.88675135");
}

TEST_CASE("csv layout: params comment, note, header, rows") {
  SweepSpec spec = basic_spec();
  spec.range = {0.0, 6.0, 4};
  spec.header_note = "inferred";
  const std::string text = render_csv(spec);

  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# params: j=1 delta=-1 dm=0 field=0 temp=0.9 knob=d range=0:6:4", 0) == 0);
  std::getline(is, line);
  CHECK(line == "# note: inferred");
  std::getline(is, line);
  CHECK(line == "d,discord");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("json rows mirror the csv columns") {
  SweepSpec spec = basic_spec();
  spec.range = {0.0, 6.0, 7};
  spec.outputs = {OutputKind::Discord, OutputKind::Concurrence};

  const SweepResult result = run_sweep(spec);
  std::ostringstream os;
  write_json(os, spec, result);
  const nlohmann::json parsed = nlohmann::json::parse(os.str());

  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 7);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i]["d"].get<double>() ==
          doctest::Approx(result.rows[i].knobs[0]).epsilon(1e-9));
    CHECK(parsed[i]["discord"].get<double>() ==
          doctest::Approx(result.rows[i].values[0]).epsilon(1e-8));
    CHECK(parsed[i].contains("concurrence"));
  }
}

TEST_CASE("figure presets cover the captioned panels") {
  CHECK(figure_presets().size() == 14);
  CHECK(figure_curves("fig1b").size() == 2);
  CHECK(figure_curves("fig2a").size() == 4);
  CHECK(figure_curves("fig4c").front().spec.channel == ChannelKind::Depolarizing);
  const auto fig5 = figure_curves("fig5");
  CHECK(fig5.size() == 4);
  for (const FigureCurve& c : fig5) {
    CHECK(c.spec.second_knob.has_value());
    CHECK(c.spec.outputs.size() == 1);
  }
  CHECK_THROWS_AS(figure_curves("fig9"), std::invalid_argument);
}

TEST_CASE("run_figure and an equivalent explicit sweep write identical bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "qcorr_fig_test";
  std::filesystem::remove_all(dir);
  const auto written = run_figure("fig1a", dir);
  REQUIRE(written.size() == 2);

  const std::vector<FigureCurve> curves = figure_curves("fig1a");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const std::string direct = render_csv(curves[k].spec);
    CHECK(direct == slurp(written[k]));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("fig1b curves rise to the strong-DM plateau") {
  for (const FigureCurve& curve : figure_curves("fig1b")) {
    const SweepResult r = run_sweep(curve.spec);
    CHECK(std::abs(r.rows.back().values[0] - 0.3984) < 1e-3);
  }
}

TEST_CASE("fig4a discord vanishes only at the final grid point") {
  const FigureCurve curve = figure_curves("fig4a")[2];  // D = 2
  const SweepResult r = run_sweep(curve.spec);
  REQUIRE(r.rows.size() == 1001);
  for (std::size_t k = 0; k + 1 < r.rows.size(); ++k) CHECK(r.rows[k].values[0] > 1e-9);
  CHECK(r.rows.back().values[0] < 1e-12);
}

TEST_CASE("crossing report for the ferromagnetic Delta = 2 line") {
  const auto reports = run_crossings({-1.0, 2.0, 0.0, 0.0, 1.0}, Knob::D, 0.0, 6.0);
  REQUIRE(reports.size() == 1);
  const CrossingReport& r = reports.front();
  CHECK(std::abs(r.value - 5.0 / kSqrt3) < 1e-6);
  CHECK(r.levels_below == std::vector<int>{0, 7});
  CHECK(r.levels_above == std::vector<int>{4, 6});
  CHECK(std::abs(r.discord_below) < 1e-9);
  CHECK(std::abs(r.discord_at - 0.3333) < 5e-4);
  CHECK(std::abs(r.discord_above - 0.3984) < 5e-4);
}

TEST_CASE("crossing report for the antiferromagnetic dash line") {
  const auto reports = run_crossings({1.0, -2.0, 0.0, 0.0, 1.0}, Knob::D, 0.0, 6.0);
  REQUIRE(reports.size() == 1);
  CHECK(std::abs(reports.front().value - kSqrt3) < 1e-6);
}

TEST_CASE("no crossing report for the chiral-ground regime") {
  CHECK(run_crossings({1.0, 1.0, 0.0, 0.0, 1.0}, Knob::D, 0.0, 6.0).empty());
}

TEST_CASE("oracle check over a short seeded run") {
  const OracleCheckResult r = run_oracle_check(60, 99);
  CHECK(r.samples == 60);
  CHECK(r.max_gap <= 1e-3);
  CHECK(r.excesses.empty());
  CHECK_THROWS_AS(run_oracle_check(0, 1), std::invalid_argument);
}

TEST_CASE("grid parser") {
  const GridSpec g = parse_grid("-1.5:2.5:21");
  CHECK(g.start == -1.5);
  CHECK(g.stop == 2.5);
  CHECK(g.steps == 21);
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:3:4"), std::invalid_argument);
}
