#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snnsim/cost_model.hpp"
#include "snnsim/dataset.hpp"
#include "snnsim/mitigation.hpp"
#include "snnsim/model.hpp"
#include "snnsim/stdp.hpp"

namespace snnsim {

// Thrown for malformed configuration or CLI usage; the CLI maps it to exit
// code 1 (runtime failures exit 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntheticConfig {
    std::uint64_t seed = 77;
    int train_count = 5000;
    int test_count = 1000;
};

struct ExperimentConfig {
    std::string workload = "synthetic";  // synthetic | mnist | fashion_mnist
    std::string data_dir = "data";
    int network_size = 100;
    int train_subset = 5000;
    int test_subset = 1000;
    std::vector<double> fault_rates = {0.0, 0.01, 0.05, 0.1};
    int num_fault_maps = 10;
    std::vector<PolicyKind> policies = {PolicyKind::NoMitigation, PolicyKind::BnP1,
            PolicyKind::BnP2, PolicyKind::BnP3, PolicyKind::ReExecutionTMR};
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    std::string model_path;
    TrainConfig train;
    EngineConfig engine;
    CostParams cost;
    SyntheticConfig synthetic;

    void validate() const;
};

// Parses a JSON config file over the built-in defaults, then applies
// key=value overrides (dotted paths, e.g. "train.stdp.lr_post=0.1").
// Unknown keys are errors.
ExperimentConfig load_experiment_config(const std::string &path,
        const std::vector<std::string> &overrides = {});
ExperimentConfig parse_experiment_config(const std::string &json_text,
        const std::vector<std::string> &overrides = {});
std::string serialize_experiment_config(const ExperimentConfig &config);

struct SweepRow {
    PolicyKind policy = PolicyKind::NoMitigation;
    int network = 0;
    double fault_rate = 0.0;
    std::uint64_t map_seed = 0;
    double accuracy = 0.0;
    double latency_s = 0.0;
    double energy_j = 0.0;
    double area_norm = 0.0;

    bool operator==(const SweepRow &) const = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    bool operator==(const SweepResult &) const = default;
};

// Loads the configured workload's train/test splits (subsets applied).
std::pair<Dataset, Dataset> load_workload(const ExperimentConfig &config);

// Trains a model per the config, or loads config.model_path when set.
TrainedModel obtain_model(const ExperimentConfig &config, const Dataset &train_data);

// Runs every (policy, fault_rate, fault_map) cell over the test subset and
// returns one row per cell, sorted by (policy, rate, map seed). The map
// seed for a given (rate, map index) is shared across policies so the
// techniques are compared on identical fault patterns. Fully deterministic
// under master_seed; cells may execute on several worker threads.
SweepResult run_sweep(const ExperimentConfig &config, const TrainedModel &model,
        const Dataset &test_data);

} // namespace snnsim
