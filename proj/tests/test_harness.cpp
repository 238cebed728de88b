#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "snnsim/experiment.hpp"
#include "snnsim/model.hpp"
#include "snnsim/report.hpp"
#include "test_util.hpp"

using namespace snnsim;

TEST_CASE("config defaults parse and validate")
{
    const ExperimentConfig config = parse_experiment_config("");
    CHECK(config.workload == "synthetic");
    CHECK(config.network_size == 100);
    CHECK(config.engine.crossbar_rows == 256);
    CHECK(config.cost.bnp_latency_factor == 1.06);
}

TEST_CASE("config rejects unknown keys and bad values")
{
    CHECK_THROWS_WITH_AS(parse_experiment_config(R"({"networc_size": 50})"),
            doctest::Contains("networc_size"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_experiment_config(R"({"lif": {"v_thresh": 2}})"),
            doctest::Contains("lif.v_thresh"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"network_size": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"fault_rates": [2.0]})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"num_fault_maps": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"policies": ["BnP9"]})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("{nope"), ConfigError);
}

TEST_CASE("overrides reach nested keys and are validated")
{
    const ExperimentConfig config = parse_experiment_config("",
            {"network_size=25", "stdp.lr_post=0.125", "workload=synthetic",
                    "fault_rates=[0.0,0.5]"});
    CHECK(config.network_size == 25);
    CHECK(config.train.stdp.lr_post == 0.125);
    CHECK(config.fault_rates == std::vector<double>{0.0, 0.5});

    CHECK_THROWS_AS(parse_experiment_config("", {"stdp.lr_wrong=1"}), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("", {"no_equals"}), ConfigError);
}

TEST_CASE("config serialization round-trips")
{
    ExperimentConfig config = testutil::small_config();
    config.policies = {PolicyKind::BnP3, PolicyKind::ReExecutionTMR};
    const std::string text = serialize_experiment_config(config);
    const ExperimentConfig back = parse_experiment_config(text);
    CHECK(back.network_size == config.network_size);
    CHECK(back.policies == config.policies);
    CHECK(back.fault_rates == config.fault_rates);
    CHECK(back.synthetic.train_count == config.synthetic.train_count);
}

TEST_CASE("CSV round-trips the sweep result exactly")
{
    SweepResult result;
    result.rows = {
            {PolicyKind::NoMitigation, 100, 0.1, 123456789ull, 0.815, 1.0e-05, 1.0e-06, 1.0},
            {PolicyKind::BnP3, 100, 0.1, 123456789ull, 0.9033333333333333, 1.06e-05,
                    1.6e-06, 1.18},
    };
    const std::string csv = sweep_to_csv(result);
    CHECK(csv.rfind("policy,network,rate,map_seed,accuracy,latency_s,energy_j,area_norm\n",
                  0) == 0);
    CHECK(sweep_from_csv(csv) == result);

    CHECK_THROWS_AS(sweep_from_csv("nope\n"), std::runtime_error);
    CHECK_THROWS_AS(
            sweep_from_csv("policy,network,rate,map_seed,accuracy,latency_s,energy_j,area_norm\n"
                           "BnP3,100,0.1\n"),
            std::runtime_error);
}

TEST_CASE("sweep is deterministic and rate-zero cells agree across policies")
{
    ExperimentConfig config = testutil::small_config();
    config.policies = {PolicyKind::NoMitigation, PolicyKind::BnP2, PolicyKind::BnP3};
    config.fault_rates = {0.0};
    config.num_fault_maps = 1;

    const TrainedModel &model = testutil::small_model();
    const Dataset &test = testutil::small_test_set();

    const SweepResult a = run_sweep(config, model, test);
    const SweepResult b = run_sweep(config, model, test);
    CHECK(sweep_to_csv(a) == sweep_to_csv(b));

    REQUIRE(a.rows.size() == 3);
    CHECK(a.rows[0].accuracy == a.rows[1].accuracy);
    CHECK(a.rows[0].accuracy == a.rows[2].accuracy);
}

TEST_CASE("sweep rows are sorted and complete")
{
    ExperimentConfig config = testutil::small_config();
    config.policies = {PolicyKind::BnP3, PolicyKind::NoMitigation};  // out of order
    config.fault_rates = {0.1, 0.0};                                 // out of order
    config.num_fault_maps = 2;
    config.test_subset = 40;

    const TrainedModel &model = testutil::small_model();
    const SweepResult result =
            run_sweep(config, model, testutil::small_test_set().subset(40));
    REQUIRE(result.rows.size() == 8);
    for (std::size_t k = 1; k < result.rows.size(); ++k) {
        const auto &prev = result.rows[k - 1];
        const auto &row = result.rows[k];
        const bool sorted = prev.policy < row.policy ||
                (prev.policy == row.policy && prev.fault_rate < row.fault_rate) ||
                (prev.policy == row.policy && prev.fault_rate == row.fault_rate &&
                        prev.map_seed < row.map_seed);
        CHECK(sorted);
    }
    // Same (rate, map index) share the map seed across policies.
    CHECK(result.rows[0].map_seed == result.rows[4].map_seed);
}

TEST_CASE("NoMitigation accuracy trends down as the fault rate rises")
{
    ExperimentConfig config = testutil::small_config();
    config.policies = {PolicyKind::NoMitigation};
    config.fault_rates = {0.01, 0.05, 0.1};
    config.num_fault_maps = 3;

    const SweepResult result =
            run_sweep(config, testutil::small_model(), testutil::small_test_set());
    REQUIRE(result.rows.size() == 9);
    double mean[3] = {0, 0, 0};
    for (const auto &row : result.rows) {
        const int r = row.fault_rate == 0.01 ? 0 : (row.fault_rate == 0.05 ? 1 : 2);
        mean[r] += row.accuracy / 3.0;
    }
    // Non-increasing within a 2-point noise tolerance.
    CHECK(mean[1] <= mean[0] + 0.02);
    CHECK(mean[2] <= mean[1] + 0.02);
}

TEST_CASE("SVG plots have one polyline per policy and one bar per policy")
{
    SweepResult result;
    const PolicyKind kinds[3] = {PolicyKind::NoMitigation, PolicyKind::BnP1,
            PolicyKind::ReExecutionTMR};
    const double rates[4] = {0.0, 0.01, 0.05, 0.1};
    for (const PolicyKind kind : kinds) {
        for (const double rate : rates) {
            SweepRow row;
            row.policy = kind;
            row.network = 100;
            row.fault_rate = rate;
            row.map_seed = 1;
            row.accuracy = 0.9 - rate;
            row.latency_s = kind == PolicyKind::ReExecutionTMR ? 3.0e-5 : 1.0e-5;
            row.energy_j = 1.0e-6;
            row.area_norm = 1.0;
            result.rows.push_back(row);
        }
    }

    const auto dir = std::filesystem::temp_directory_path() / "snnsim_svg_tests";
    std::filesystem::remove_all(dir);
    write_svg_plots(result, dir.string());

    std::ifstream in(dir / "accuracy_vs_rate.svg");
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string svg = buffer.str();

    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
            pos = svg.find("<polyline", pos + 1)) {
        polylines += 1;
    }
    CHECK(polylines == 3);
    // 4 points -> 4 "x,y " pairs in each points attribute.
    const std::size_t first_points = svg.find("points=\"");
    REQUIRE(first_points != std::string::npos);
    const std::size_t points_end = svg.find('"', first_points + 8);
    const std::string points = svg.substr(first_points + 8, points_end - first_points - 8);
    std::size_t commas = 0;
    for (const char ch : points) {
        commas += ch == ',' ? 1 : 0;
    }
    CHECK(commas == 4);

    for (const char *name : {"latency.svg", "energy.svg", "area.svg"}) {
        std::ifstream bar_in(dir / name);
        REQUIRE(bar_in.good());
        std::stringstream bar_buffer;
        bar_buffer << bar_in.rdbuf();
        const std::string bar_svg = bar_buffer.str();
        std::size_t bars = 0;
        for (std::size_t pos = bar_svg.find("data-policy=");
                pos != std::string::npos; pos = bar_svg.find("data-policy=", pos + 1)) {
            bars += 1;
        }
        CHECK(bars == 3);
    }

    CHECK_THROWS_AS(write_svg_plots(SweepResult{}, dir.string()), std::invalid_argument);
}

TEST_CASE("model file round-trips through disk")
{
    const TrainedModel &model = testutil::small_model();
    const auto path =
            (std::filesystem::temp_directory_path() / "snnsim_model_rt.json").string();
    save_model(model, path);
    const TrainedModel back = load_model(path);
    CHECK(back.weights == model.weights);
    CHECK(back.theta == model.theta);
    CHECK(back.assignment == model.assignment);
    CHECK(back.stats.wgh_max == model.stats.wgh_max);
    CHECK(back.stats.wgh_hp == model.stats.wgh_hp);
    CHECK(back.stats.histogram == model.stats.histogram);
    CHECK(back.training_seed == model.training_seed);
    CHECK(back.duration == model.duration);
    CHECK(back.max_rate == model.max_rate);

    CHECK_THROWS_WITH_AS(deserialize_model("{}"), doctest::Contains("format"),
            std::runtime_error);
    CHECK_THROWS_WITH_AS(deserialize_model(R"({"format":"snnsim-model","version":2})"),
            doctest::Contains("version"), std::runtime_error);
}
