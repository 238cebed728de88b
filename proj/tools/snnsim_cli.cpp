#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snnsim/dataset.hpp"
#include "snnsim/encoding.hpp"
#include "snnsim/engine.hpp"
#include "snnsim/experiment.hpp"
#include "snnsim/fault_model.hpp"
#include "snnsim/model.hpp"
#include "snnsim/report.hpp"
#include "snnsim/rng.hpp"
#include "snnsim/stdp.hpp"

namespace {

using namespace snnsim;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App *cmd, CommonOpts &opts)
{
    cmd->add_option("--config", opts.config_path, "experiment config JSON");
    cmd->add_option("--set", opts.overrides, "config override key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "override master_seed")
            ->each([&opts](const std::string &) { opts.seed_given = true; });
}

ExperimentConfig resolve_config(const CommonOpts &opts)
{
    ExperimentConfig config = load_experiment_config(opts.config_path, opts.overrides);
    if (opts.seed_given) {
        config.master_seed = opts.seed;
    }
    return config;
}

void write_text(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

nlohmann::json cost_provenance(const CostParams &cost)
{
    return {
            {"base_cycles_per_timestep", cost.base_cycles_per_timestep},
            {"cycle_time", cost.cycle_time},
            {"base_power", cost.base_power},
            {"bnp_latency_factor", cost.bnp_latency_factor},
            {"bnp_energy_factor", cost.bnp_energy_factor},
            {"tmr_factor", cost.tmr_factor},
            {"area_base", cost.area_base},
            {"area_bnp1", cost.area_bnp1},
            {"area_bnp23", cost.area_bnp23},
    };
}

int cmd_train(const CommonOpts &opts, const std::string &out_path)
{
    const ExperimentConfig config = resolve_config(opts);
    auto [train_data, test_data] = load_workload(config);
    std::fprintf(stderr, "training %d neurons on %d images (%s)...\n",
            config.network_size, train_data.count(), config.workload.c_str());
    const TrainedModel model = stdp_train(train_data, config.train, config.master_seed);
    save_model(model, out_path);

    // Quick self-check on the clean model.
    int correct = 0;
    const FaultMap no_faults = empty_fault_map(model.num_inputs(), model.num_neurons());
    const MitigationPolicy nomit;
    for (int i = 0; i < test_data.count(); ++i) {
        const SpikeTrain spikes = encode_poisson(test_data.image(i), model.duration,
                model.max_rate, derive_seed(config.master_seed, stream::kTestEncode, i));
        const InferenceResult run =
                run_inference(model, spikes, no_faults, nomit, config.engine, config.cost);
        correct += run.predicted == test_data.labels[i] ? 1 : 0;
    }
    std::fprintf(stderr, "clean accuracy on %d test images: %.4f\n", test_data.count(),
            static_cast<double>(correct) / test_data.count());
    std::fprintf(stderr, "wgh_max=%d wgh_hp=%d model written to %s\n",
            model.stats.wgh_max, model.stats.wgh_hp, out_path.c_str());
    return 0;
}

int cmd_inject(double rate, std::uint64_t seed, const std::string &dims,
        const std::string &out_path)
{
    const auto x = dims.find('x');
    if (x == std::string::npos) {
        throw ConfigError("--dims must look like ROWSxCOLS, e.g. 784x100");
    }
    int rows = 0;
    int cols = 0;
    try {
        rows = std::stoi(dims.substr(0, x));
        cols = std::stoi(dims.substr(x + 1));
    } catch (const std::exception &) {
        throw ConfigError("--dims must look like ROWSxCOLS, e.g. 784x100");
    }
    const FaultMap map = generate_fault_map(rows, cols, rate, seed);
    write_text(out_path, serialize_fault_map(map));
    std::fprintf(stderr, "fault map: %zu synapse bit flips, %zu faulty neurons -> %s\n",
            map.synapse_flips.size(), map.neuron_faults.size(), out_path.c_str());
    return 0;
}

int cmd_run(const CommonOpts &opts, const std::string &model_path,
        const std::string &map_path, double rate, const std::string &policy_name,
        const std::string &out_path)
{
    ExperimentConfig config = resolve_config(opts);
    if (!model_path.empty()) {
        config.model_path = model_path;
    }
    auto [train_data, test_data] = load_workload(config);
    const TrainedModel model = obtain_model(config, train_data);
    const PolicyKind kind = policy_kind_from_string(policy_name);

    int correct = 0;
    CostReport cost;
    FaultMap map = empty_fault_map(model.num_inputs(), model.num_neurons());
    if (!map_path.empty()) {
        std::ifstream in(map_path, std::ios::binary);
        if (!in) {
            throw ConfigError("cannot open fault map '" + map_path + "'");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        map = deserialize_fault_map(buffer.str());
    } else if (rate > 0.0 && kind != PolicyKind::ReExecutionTMR) {
        map = generate_fault_map(model.num_inputs(), model.num_neurons(), rate,
                derive_seed(config.master_seed, stream::kFaultMap));
    }

    for (int i = 0; i < test_data.count(); ++i) {
        const SpikeTrain spikes = encode_poisson(test_data.image(i), model.duration,
                model.max_rate, derive_seed(config.master_seed, stream::kTestEncode, i));
        if (kind == PolicyKind::ReExecutionTMR) {
            const TmrResult run = run_tmr(model, spikes, rate, config.engine, config.cost,
                    derive_seed(config.master_seed, stream::kTmrExec, i));
            correct += run.predicted == test_data.labels[i] ? 1 : 0;
            cost = run.cost;
        } else {
            const MitigationPolicy policy = make_policy(kind, model.stats);
            const InferenceResult run =
                    run_inference(model, spikes, map, policy, config.engine, config.cost);
            correct += run.predicted == test_data.labels[i] ? 1 : 0;
            cost = run.cost;
        }
    }

    nlohmann::json report{
            {"policy", policy_name},
            {"network", model.num_neurons()},
            {"fault_rate", map_path.empty() ? rate : map.fault_rate},
            {"test_images", test_data.count()},
            {"accuracy", static_cast<double>(correct) / test_data.count()},
            {"latency_s", cost.latency},
            {"energy_j", cost.energy},
            {"area_norm", cost.area},
            {"cycles", cost.cycles},
            {"tiles", cost.tiles},
            {"cost_params", cost_provenance(config.cost)},
    };
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        write_text(out_path, text);
    }
    return 0;
}

int cmd_sweep(const CommonOpts &opts, const std::string &out_dir)
{
    const ExperimentConfig config = resolve_config(opts);
    auto [train_data, test_data] = load_workload(config);
    const TrainedModel model = obtain_model(config, train_data);
    std::fprintf(stderr, "sweep: %zu policies x %zu rates x %d maps over %d images\n",
            config.policies.size(), config.fault_rates.size(), config.num_fault_maps,
            test_data.count());
    const SweepResult result = run_sweep(config, model, test_data);

    std::filesystem::create_directories(out_dir);
    write_csv(result, out_dir + "/sweep.csv");
    // Resolved config (cost params included) rides along for provenance.
    write_text(out_dir + "/config.json", serialize_experiment_config(config));
    std::fprintf(stderr, "wrote %s/sweep.csv (%zu rows)\n", out_dir.c_str(),
            result.rows.size());
    return 0;
}

int cmd_report(const std::string &in_path, const std::string &out_dir,
        const std::string &format)
{
    const SweepResult result = read_csv(in_path);
    std::filesystem::create_directories(out_dir);
    if (format == "csv") {
        write_csv(result, out_dir + "/sweep.csv");
    } else if (format == "svg") {
        write_svg_plots(result, out_dir);
    } else {
        throw ConfigError("--format must be csv or svg");
    }
    std::fprintf(stderr, "report written to %s\n", out_dir.c_str());
    return 0;
}

int cmd_datagen(int train_count, int test_count, std::uint64_t seed,
        const std::string &out_dir)
{
    std::filesystem::create_directories(out_dir);
    const Dataset train = make_synthetic_dataset(train_count, derive_seed(seed, 1));
    const Dataset test = make_synthetic_dataset(test_count, derive_seed(seed, 2));
    save_dataset(train, out_dir + "/train-images-idx3-ubyte",
            out_dir + "/train-labels-idx1-ubyte");
    save_dataset(test, out_dir + "/t10k-images-idx3-ubyte",
            out_dir + "/t10k-labels-idx1-ubyte");
    std::fprintf(stderr, "wrote %d train / %d test images to %s\n", train_count,
            test_count, out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"SNN accelerator soft-error simulator"};
    app.require_subcommand(1);

    CommonOpts train_opts;
    std::string train_out = "model.json";
    CLI::App *train = app.add_subcommand("train", "train the clean SNN model");
    add_common(train, train_opts);
    train->add_option("--out", train_out, "output model file");

    double inject_rate = 0.0;
    std::uint64_t inject_seed = 1;
    std::string inject_dims = "784x100";
    std::string inject_out = "fault_map.json";
    CLI::App *inject = app.add_subcommand("inject", "sample and write a fault map");
    inject->add_option("--rate", inject_rate, "fault rate in [0,1]")->required();
    inject->add_option("--seed", inject_seed, "map seed");
    inject->add_option("--dims", inject_dims, "crossbar dims ROWSxCOLS");
    inject->add_option("--out", inject_out, "output fault map file");

    CommonOpts run_opts;
    std::string run_model;
    std::string run_map;
    double run_rate = 0.0;
    std::string run_policy = "NoMitigation";
    std::string run_out;
    CLI::App *run = app.add_subcommand("run", "evaluate one policy on the test subset");
    add_common(run, run_opts);
    run->add_option("--model", run_model, "trained model file (else train per config)");
    run->add_option("--map", run_map, "fault map file (overrides --rate)");
    run->add_option("--rate", run_rate, "fault rate for a generated map");
    run->add_option("--policy", run_policy,
            "NoMitigation|BnP1|BnP2|BnP3|ReExecutionTMR");
    run->add_option("--out", run_out, "also write the JSON report here");

    CommonOpts sweep_opts;
    std::string sweep_out = "out";
    CLI::App *sweep = app.add_subcommand("sweep", "run the full experiment sweep");
    add_common(sweep, sweep_opts);
    sweep->add_option("--out", sweep_out, "output directory");

    std::string report_in;
    std::string report_out = "out";
    std::string report_format = "svg";
    CLI::App *report = app.add_subcommand("report", "render plots from a sweep CSV");
    report->add_option("--in", report_in, "sweep CSV file")->required();
    report->add_option("--out", report_out, "output directory");
    report->add_option("--format", report_format, "csv or svg");

    int datagen_train = 5000;
    int datagen_test = 1000;
    std::uint64_t datagen_seed = 77;
    std::string datagen_out = "data/synthetic";
    CLI::App *datagen =
            app.add_subcommand("datagen", "write the synthetic IDX dataset to disk");
    datagen->add_option("--train", datagen_train, "training image count");
    datagen->add_option("--test", datagen_test, "test image count");
    datagen->add_option("--seed", datagen_seed, "dataset seed");
    datagen->add_option("--out", datagen_out, "output directory");

    try {
        app.parse(argc, argv);
        if (*train) {
            return cmd_train(train_opts, train_out);
        }
        if (*inject) {
            return cmd_inject(inject_rate, inject_seed, inject_dims, inject_out);
        }
        if (*run) {
            return cmd_run(run_opts, run_model, run_map, run_rate, run_policy, run_out);
        }
        if (*sweep) {
            return cmd_sweep(sweep_opts, sweep_out);
        }
        if (*report) {
            return cmd_report(report_in, report_out, report_format);
        }
        if (*datagen) {
            return cmd_datagen(datagen_train, datagen_test, datagen_seed, datagen_out);
        }
        return 1;
    } catch (const CLI::ParseError &err) {
        return app.exit(err) == 0 ? 0 : 1;
    } catch (const ConfigError &err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return 1;
    } catch (const std::exception &err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
}
