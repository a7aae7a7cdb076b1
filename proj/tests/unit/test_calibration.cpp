#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <pneumo/calibration.hpp>
#include <pneumo/dataset_csv.hpp>
#include <pneumo/errors.hpp>

using namespace pneumo;

namespace {

CalibrationDataset reference() {
    std::ifstream in(PNEUMO_TEST_DATA_DIR "/reference_calibration.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dataset(ss.str());
}

SynthesisConfig quick_config() {
    SynthesisConfig cfg;
    cfg.sim.dt = 2e-5;
    cfg.settle_dp_tol = 1e-3;
    cfg.model.piston.f_coulomb = 0.0;
    return cfg;
}

}  // namespace

TEST(Schedule, UniformLevels) {
    const auto s = build_schedule(4.0, 8);
    const std::vector<double> expected{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    EXPECT_EQ(s.steps, expected);
    EXPECT_EQ(s.preloads, 3);
    ASSERT_EQ(s.series_plan.size(), 4u);
    EXPECT_EQ(s.series_plan[2].orientation_deg, 360);
    EXPECT_EQ(s.series_plan[3].orientation_deg, 180);
    EXPECT_EQ(s.series_plan[3].legs, LegPlan::increasing_then_decreasing);

    const auto t = build_schedule(10.0, 10);
    EXPECT_EQ(t.steps.size(), 10u);
    EXPECT_EQ(t.steps.back(), 10.0);
    for (std::size_t i = 1; i < t.steps.size(); ++i) EXPECT_GT(t.steps[i], t.steps[i - 1]);
}

TEST(Schedule, RejectsTooFewLevels) {
    try {
        build_schedule(4.0, 7);
        FAIL();
    } catch (const ScheduleError& e) {
        EXPECT_STREQ(e.what(), "at least 8 nonzero force levels are required (got 7)");
    }
    EXPECT_THROW(build_schedule(-1.0, 8), ScheduleError);
    auto s = build_schedule(4.0, 8);
    s.series_plan.pop_back();
    EXPECT_THROW(s.validate(), ScheduleError);
}

TEST(Layout, ColumnsInFileOrder) {
    const auto& l = series_layout();
    EXPECT_STREQ(l[X1].column, "X1_0");
    EXPECT_STREQ(l[X4].column, "X4_360");
    EXPECT_EQ(l[X4].direction, Direction::decreasing);
    EXPECT_EQ(l[X6].orientation_deg, 180);
}

TEST(Deflections, ReferenceExamples) {
    const auto ds = reference();
    const auto raw = deflections(ds, DeflectionMode::raw);
    EXPECT_DOUBLE_EQ(raw[X1].back(), 4.701769621);
    const auto zr = deflections(ds, DeflectionMode::zero_referenced);
    EXPECT_NEAR(zr[X1][0], 0.011167707, 1e-12);
    EXPECT_NEAR(zr[X1].back(), 2.340932195, 1e-12);
}

TEST(Synthetic, DeterministicAndOrientationFree) {
    auto cfg = quick_config();
    cfg.model.piston.alpha = 0.0;
    const auto sched = build_schedule(4.0, 8);
    const auto a = run_synthetic_calibration(sched, cfg);
    const auto b = run_synthetic_calibration(sched, cfg);
    EXPECT_EQ(a, b);
    // with no gravity component the orientation does not matter
    EXPECT_EQ(a.series[X1].readings, a.series[X2].readings);
    EXPECT_EQ(a.series[X1].readings, a.series[X3].readings);
    EXPECT_EQ(a.series[X3].readings, a.series[X5].readings);
    ASSERT_EQ(a.force_levels.size(), 8u);
    EXPECT_TRUE(a.series[X1].zero_trail.has_value());
    // the lowest levels leave the piston on its stop; above that readings rise
    for (std::size_t i = 1; i < 8; ++i) {
        EXPECT_GE(a.series[X1].readings[i], a.series[X1].readings[i - 1]);
    }
    EXPECT_GT(a.series[X1].readings.back(), a.series[X1].readings[2]);
}

TEST(Synthetic, ReadingsMatchStaticBalance) {
    auto cfg = quick_config();
    cfg.settle_dp_tol = 1e-5;
    cfg.sim.dt = 1e-5;
    const auto ds = run_synthetic_calibration(build_schedule(4.0, 8), cfg);
    const auto& m = cfg.model;
    // at 4 kgf the piston floats, so p - p_atm balances the load and the weight
    const double load = 4.0 * m.piston.g;
    const double gauge = (load + m.piston.mass * m.piston.g * std::sin(m.piston.alpha)) / m.geometry.area();
    const double expected = m.transducer.v_offset + m.transducer.sensitivity * gauge;
    EXPECT_NEAR(ds.series[X1].readings.back(), expected, 1e-9);
}

TEST(Synthetic, FrictionOpensHysteresis) {
    auto cfg = quick_config();
    cfg.model.piston.f_coulomb = 2.0;
    const auto ds = run_synthetic_calibration(build_schedule(4.0, 8), cfg);
    for (std::size_t i = 0; i < ds.force_levels.size(); ++i) {
        EXPECT_GE(ds.series[X4].readings[i], ds.series[X3].readings[i] - 1e-9);
        EXPECT_GE(ds.series[X6].readings[i], ds.series[X5].readings[i] - 1e-9);
    }
}

TEST(Synthetic, NoiseIsSeeded) {
    auto cfg = quick_config();
    cfg.noise_sigma = 1e-3;
    cfg.seed = 9;
    const auto sched = build_schedule(4.0, 8);
    const auto a = run_synthetic_calibration(sched, cfg);
    const auto b = run_synthetic_calibration(sched, cfg);
    EXPECT_EQ(a, b);
    cfg.seed = 10;
    const auto c = run_synthetic_calibration(sched, cfg);
    EXPECT_NE(a.series[X1].readings, c.series[X1].readings);
}

TEST(DatasetCsv, ParsesReference) {
    const auto ds = reference();
    EXPECT_EQ(ds.force_levels.size(), 8u);
    ASSERT_TRUE(ds.zero_indication);
    EXPECT_DOUBLE_EQ(*ds.zero_indication, 2.341453525);
    EXPECT_DOUBLE_EQ(ds.series[X1].zero_lead, 2.360837426);
    EXPECT_DOUBLE_EQ(*ds.series[X2].zero_trail, 2.354115039);
    EXPECT_FALSE(ds.series[X3].zero_trail.has_value());
    EXPECT_EQ(parse_dataset(serialize_dataset(ds)), ds);
}

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_dataset(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "no error";
}

const char* kHeader = "force_kgf,X1_0,X2_0,X3_360,X4_360,X5_180,X6_180\n";

std::string rows(int n, double step = 0.5) {
    std::string s = "0,1,1,1,1,1,1\n";
    for (int i = 1; i <= n; ++i) s += std::to_string(step * i) + ",2,2,2,2,2,2\n";
    return s + "0,1,1,,,,\n";
}

}  // namespace

TEST(DatasetCsv, Errors) {
    EXPECT_NE(parse_error("").find("missing header"), std::string::npos);
    EXPECT_NE(parse_error("force_kgf,X1_0,X2_0,X3_360,X5_180,X6_180\n").find("missing column X4_360"),
              std::string::npos);
    EXPECT_NE(parse_error(std::string(kHeader) + rows(7)).find("at least 8"), std::string::npos);
    std::string bad = std::string(kHeader) + rows(8);
    bad.replace(bad.find("1.000000"), 8, "0.200000");
    EXPECT_NE(parse_error(bad).find("non-monotonic"), std::string::npos);
    std::string nonnum = std::string(kHeader) + rows(8);
    nonnum.replace(nonnum.find(",2,"), 3, ",x,");
    EXPECT_NE(parse_error(nonnum).find("non-numeric"), std::string::npos);
    EXPECT_NE(parse_error("# colour=blue\n" + std::string(kHeader) + rows(8)).find("colour"),
              std::string::npos);
    EXPECT_EQ(parse_error(std::string(kHeader) + rows(8)), "no error");
}

TEST(DatasetCsv, ColumnOrderAndLineEndings) {
    std::string text = "force_kgf,X6_180,X5_180,X4_360,X3_360,X2_0,X1_0\r\n\r\n";
    text += "0,6,5,4,3,2,1\r\n";
    for (int i = 1; i <= 8; ++i) text += std::to_string(i) + ",16,15,14,13,12,11\r\n";
    text += "0,,,,,2,1\r\n";
    const auto ds = parse_dataset(text);
    EXPECT_EQ(ds.series[X1].zero_lead, 1.0);
    EXPECT_EQ(ds.series[X6].zero_lead, 6.0);
    EXPECT_EQ(ds.series[X6].readings[0], 16.0);
    EXPECT_EQ(*ds.series[X1].zero_trail, 1.0);
}
