// Copyright 2026 The nrqae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nrqae/config.hpp"
#include "nrqae/harness.hpp"
#include "nrqae/report.hpp"
#include "test_util.hpp"

using namespace nrqae;
using namespace nrqae::testing;

namespace {

ExperimentConfig exact_config(ProblemSpec p) {
    ExperimentConfig c;
    c.problem = std::move(p);
    return c;
}

double cell_real(const Cell &c) { return std::get<double>(c); }

std::size_t column(const Table &t, const std::string &name) {
    for (std::size_t k = 0; k < t.header.size(); k++)
        if (t.header[k] == name) return k;
    throw std::out_of_range(name);
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
    EXPECT_EQ(format_real(1.0 / 3), "0.333333333333");
    EXPECT_EQ(format_real(2 * kPi / 3), "2.09439510239");
    EXPECT_EQ(format_real(18445), "18445");
    EXPECT_EQ(format_real(1.5e-20), "1.5e-20");
    EXPECT_EQ(format_real(std::nan("")), "nan");
}

TEST(Csv, HeaderRowsAndQuoting) {
    Table t;
    t.header = {"a", "b", "c"};
    t.rows.push_back({std::int64_t{3}, 0.1, std::string("x,y")});
    EXPECT_EQ(to_csv(t), "a,b,c\n3,0.1,\"x,y\"\n");
}

TEST(Svg, PureAndWellFormed) {
    PlotSpec spec{"t <1>", "x", "y", true, true};
    std::vector<PlotSeries> s{{"one", {1, 2, 4}, {1, 0.5, 0.25}}, {"two", {1, 2, 4}, {0.3, 0.0, 0.1}}};
    const std::string a = svg_line_plot(spec, s), b = svg_line_plot(spec, s);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<?xml", 0), 0u);
    EXPECT_NE(a.find("version=\"1.1\""), std::string::npos);
    EXPECT_NE(a.find("t &lt;1&gt;"), std::string::npos);
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = a.find("<polyline", pos)) != std::string::npos; pos++) count++;
    EXPECT_EQ(count, 2u);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
}

TEST(Config, RoundTripsLosslessly) {
    ExperimentConfig c;
    c.problem.qubits = 2;
    c.problem.form = ProblemForm::Vectors;
    c.problem.psi = {1, 0, 0, 0};
    c.problem.phi = {{0.6, 0}, {0.3, 0.2}, {0, 0.4}, {0.5, 0}};
    c.noise = NoiseSpec::of_kind(NoiseKind::Statistical);
    c.noise.seed = 17;
    c.noise.scale = 0.123456789012345678;
    c.shots = 100000;
    c.trials = 7;
    c.seed = 99;
    c.additive_error = 0.01;
    c.s_grid = {1e-3, 1e-2, 0.1};
    c.out = "results";
    const std::string text = dump_config(c);
    const ExperimentConfig back = parse_config(text);
    EXPECT_EQ(dump_config(back), text);
    EXPECT_EQ(back.noise.scale, c.noise.scale);
    EXPECT_EQ(back.problem.phi, c.problem.phi);
    EXPECT_EQ(*back.shots, 100000u);

    ExperimentConfig obs;
    obs.problem.mode = Mode::Observable;
    obs.problem.psi_angle = 0.3;
    obs.problem.observable = "Z";
    EXPECT_EQ(dump_config(parse_config(dump_config(obs))), dump_config(obs));
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("{"), ConfigError);
    EXPECT_THROW(parse_config("{\"version\": 2}"), ConfigError);
    EXPECT_THROW(parse_config("{\"problem\": {}}"), ConfigError);
    EXPECT_THROW(parse_config("{\"version\": 1, \"shotz\": 3}"), ConfigError);
    EXPECT_THROW(parse_config("{\"version\": 1, \"noise\": {\"kind\": \"thermal\"}}"), ConfigError);
    EXPECT_THROW(parse_config("{\"version\": 1, \"problem\": {\"psi_angle\": 0, \"amplitude\": 0.5}}"), ConfigError);
    EXPECT_THROW(validate(parse_config("{\"version\": 1, \"problem\": {\"qubits\": 4}}")), ConfigError);
    EXPECT_THROW(validate(parse_config("{\"version\": 1, \"trials\": 0}")), ConfigError);
    EXPECT_NO_THROW(validate(parse_config("{\"version\": 1}")));
}

TEST(Config, ExampleFileParses) {
    const auto c = load_config(NRQAE_SOURCE_DIR "/configs/example.json");
    EXPECT_NO_THROW(validate(c));
}

TEST(Hoeffding, Examples) {
    EXPECT_EQ(hoeffding_shots(0.01, 0.05), 18445u);
    EXPECT_EQ(hoeffding_shots(0.1, 0.05), 185u);
    EXPECT_EQ(hoeffding_shots(0.5, 2 / std::exp(1.0)), 2u);
    EXPECT_THROW(hoeffding_shots(0, 0.05), std::invalid_argument);
    EXPECT_THROW(hoeffding_shots(0.1, 1), std::invalid_argument);
    for (double eps : {0.3, 0.05, 0.02}) {
        const auto m = hoeffding_shots(eps, 0.1);
        EXPECT_LE(2 * std::exp(-2 * eps * eps * static_cast<double>(m)), 0.1);
        EXPECT_GT(2 * std::exp(-2 * eps * eps * static_cast<double>(m - 1)), 0.1);
    }
}

TEST(Hoeffding, Coverage) {
    EXPECT_GE(hoeffding_coverage(0.3, 0.01, 0.05, 1000, 1), 0.95);
}

TEST(Commands, EstimateExamples) {
    ProblemSpec w;
    w.phi_angle = kPi / 6;
    auto out = cmd_estimate(exact_config(w));
    EXPECT_EQ(out.exit_code, kExitOk);
    EXPECT_NEAR(cell_real(out.table.rows[0][column(out.table, "value")]), 0.75, 1e-9);

    ProblemSpec seventh;
    seventh.form = ProblemForm::ChannelPhase;
    seventh.channel_phase = 2 * kPi / 7;
    out = cmd_estimate(exact_config(seventh));
    EXPECT_NEAR(cell_real(out.table.rows[0][column(out.table, "theta_ch")]), 2 * kPi / 7, 1e-9);

    ProblemSpec same;
    same.psi_angle = same.phi_angle = 0.4;
    out = cmd_estimate(exact_config(same));
    EXPECT_EQ(cell_real(out.table.rows[0][column(out.table, "value")]), 1);
}

TEST(Commands, EstimateFailureExitCode) {
    ProblemSpec w;
    w.phi_angle = kPi / 6;
    auto c = exact_config(w);
    c.shots = 1;
    c.iterations = 0;
    c.trials = 30;
    const auto out = cmd_estimate(c);
    bool any_failed = false;
    for (const auto &row : out.table.rows) any_failed |= std::get<std::string>(row.back()) == "failed";
    EXPECT_EQ(out.exit_code, any_failed ? kExitEstimation : kExitOk);
}

TEST(Commands, SweepDepthExactAndDeterministic) {
    ProblemSpec p;
    p.form = ProblemForm::ChannelPhase;
    p.channel_phase = kPi / 3;
    p.qubits = 2;
    auto c = exact_config(p);
    c.trials = 3;
    auto out = cmd_sweep_depth(c);
    for (const auto &row : out.table.rows) EXPECT_LT(cell_real(row[column(out.table, "abs_error")]), 1e-9);

    c.additive_error = 0.01;
    c.trials = 20;
    const auto a = cmd_sweep_depth(c), b = cmd_sweep_depth(c);
    EXPECT_EQ(to_csv(a.table), to_csv(b.table));
    EXPECT_EQ(*a.svg, *b.svg);
    c.seed = 1;
    EXPECT_NE(to_csv(cmd_sweep_depth(c).table), to_csv(a.table));
}

TEST(Commands, CompareNoiseRuns) {
    ProblemSpec p;
    p.form = ProblemForm::Amplitude;
    p.amplitude = 0.9;
    auto c = exact_config(p);
    EXPECT_THROW(cmd_compare_noise(c), ConfigError);
    c.shots = 100000;
    c.iterations = 4;
    c.trials = 2;
    auto out = cmd_compare_noise(c);
    EXPECT_EQ(out.exit_code, kExitOk);
    ASSERT_TRUE(out.svg.has_value());
    const auto err = column(out.table, "abs_error"), calls = column(out.table, "oracle_calls");
    for (std::size_t k = 0; k < out.table.rows.size(); k += 2) {
        EXPECT_LT(cell_real(out.table.rows[k][err]), 0.02);
        EXPECT_LT(cell_real(out.table.rows[k + 1][err]), 0.02);
        EXPECT_LE(std::get<std::int64_t>(out.table.rows[k + 1][calls]),
                  std::max<std::int64_t>(std::get<std::int64_t>(out.table.rows[k][calls]), 1));
    }
    c.noise = NoiseSpec::of_kind(NoiseKind::Coherent);
    EXPECT_NO_THROW(cmd_compare_noise(c));
}

TEST(Commands, VerifyPerturbation) {
    ProblemSpec p;
    p.form = ProblemForm::ChannelPhase;
    p.channel_phase = 2 * kPi / 3;
    p.qubits = 2;
    auto c = exact_config(p);
    c.noise = NoiseSpec::of_kind(NoiseKind::Pauli);
    c.t_depth = 16;
    const auto out = cmd_verify_perturbation(c);
    EXPECT_EQ(out.exit_code, kExitOk);
    EXPECT_EQ(out.table.rows.size(), 9u);
    ASSERT_TRUE(out.slopes.has_value());
    for (const auto &row : out.slopes->rows) EXPECT_EQ(std::get<std::int64_t>(row.back()), 1);

    ProblemSpec degenerate;
    degenerate.psi_angle = degenerate.phi_angle = 0.2;
    EXPECT_THROW(cmd_verify_perturbation(exact_config(degenerate)), ConfigError);
}

TEST(Commands, PlanShots) {
    ExperimentConfig c;
    const auto out = cmd_plan_shots(c);
    EXPECT_EQ(std::get<std::int64_t>(out.table.rows[0][2]), 18445);
    c.plan_eps = 2;
    EXPECT_THROW(cmd_plan_shots(c), ConfigError);
}

TEST(Outputs, WritesFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "nrqae_outputs_test";
    std::filesystem::remove_all(dir);
    ProblemSpec p;
    p.form = ProblemForm::ChannelPhase;
    p.channel_phase = 1.0;
    write_outputs(cmd_sweep_depth(exact_config(p)), dir.string());
    EXPECT_TRUE(std::filesystem::exists(dir / "sweep-depth.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "sweep-depth.svg"));
    std::filesystem::remove_all(dir);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t k) { hits[k]++; });
    for (int h : hits) EXPECT_EQ(h, 1);
}
