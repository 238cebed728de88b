#include "snnsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "snnsim/encoding.hpp"
#include "snnsim/engine.hpp"
#include "snnsim/rng.hpp"

namespace snnsim {

using nlohmann::json;

void ExperimentConfig::validate() const
{
    if (workload != "synthetic" && workload != "mnist" && workload != "fashion_mnist") {
        throw ConfigError("config: workload must be synthetic, mnist, or fashion_mnist");
    }
    if (network_size <= 0) {
        throw ConfigError("config: network_size must be positive");
    }
    if (train_subset <= 0 || test_subset <= 0) {
        throw ConfigError("config: train_subset and test_subset must be positive");
    }
    for (double rate : fault_rates) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw ConfigError("config: fault_rates entries must be in [0,1]");
        }
    }
    if (fault_rates.empty() || policies.empty()) {
        throw ConfigError("config: fault_rates and policies must be nonempty");
    }
    if (num_fault_maps < 1) {
        throw ConfigError("config: num_fault_maps must be >= 1");
    }
    if (workers < 0) {
        throw ConfigError("config: workers must be >= 0");
    }
    try {
        train.lif.validate();
        engine.validate();
        cost.validate();
    } catch (const std::invalid_argument &err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
}

namespace {

json default_config_json()
{
    const ExperimentConfig d;
    json j;
    j["workload"] = d.workload;
    j["data_dir"] = d.data_dir;
    j["network_size"] = d.network_size;
    j["train_subset"] = d.train_subset;
    j["test_subset"] = d.test_subset;
    j["fault_rates"] = d.fault_rates;
    {
        json names = json::array();
        for (PolicyKind p : d.policies) {
            names.push_back(to_string(p));
        }
        j["policies"] = names;
    }
    j["num_fault_maps"] = d.num_fault_maps;
    j["master_seed"] = d.master_seed;
    j["workers"] = d.workers;
    j["model_path"] = d.model_path;
    j["duration"] = d.train.duration;
    j["max_rate"] = d.train.max_rate;
    j["label_subset"] = d.train.label_subset;
    j["lif"] = {
            {"v_threshold", d.train.lif.v_threshold},
            {"v_reset", d.train.lif.v_reset},
            {"v_rest", d.train.lif.v_rest},
            {"leak_amount", d.train.lif.leak_amount},
            {"t_refractory", d.train.lif.t_refractory},
            {"inhibition_strength", d.train.lif.inhibition_strength},
            {"theta_plus", d.train.lif.theta_plus},
            {"theta_decay", d.train.lif.theta_decay},
    };
    j["stdp"] = {
            {"w_limit", d.train.stdp.w_limit},
            {"w_init_min", d.train.stdp.w_init_min},
            {"w_init_max", d.train.stdp.w_init_max},
            {"lr_post", d.train.stdp.lr_post},
            {"lr_pre", d.train.stdp.lr_pre},
            {"tau_pre", d.train.stdp.tau_pre},
            {"tau_post", d.train.stdp.tau_post},
            {"mu", d.train.stdp.mu},
            {"norm_target", d.train.stdp.norm_target},
            {"epochs", d.train.stdp.epochs},
    };
    j["engine"] = {
            {"crossbar_rows", d.engine.crossbar_rows},
            {"crossbar_cols", d.engine.crossbar_cols},
            {"reset_fault_detect_cycles", d.engine.reset_fault_detect_cycles},
    };
    j["cost"] = {
            {"base_cycles_per_timestep", d.cost.base_cycles_per_timestep},
            {"cycle_time", d.cost.cycle_time},
            {"base_power", d.cost.base_power},
            {"bnp_latency_factor", d.cost.bnp_latency_factor},
            {"bnp_energy_factor", d.cost.bnp_energy_factor},
            {"tmr_factor", d.cost.tmr_factor},
            {"area_base", d.cost.area_base},
            {"area_bnp1", d.cost.area_bnp1},
            {"area_bnp23", d.cost.area_bnp23},
    };
    j["synthetic"] = {
            {"seed", d.synthetic.seed},
            {"train_count", d.synthetic.train_count},
            {"test_count", d.synthetic.test_count},
    };
    return j;
}

void merge_checked(json &base, const json &overlay, const std::string &prefix)
{
    for (const auto &[key, value] : overlay.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        auto it = base.find(key);
        if (it == base.end()) {
            throw ConfigError("config: unknown key '" + path + "'");
        }
        if (it->is_object() && value.is_object()) {
            merge_checked(*it, value, path);
        } else {
            if (it->type() != value.type() &&
                    !(it->is_number() && value.is_number())) {
                throw ConfigError("config: key '" + path + "' has wrong type");
            }
            *it = value;
        }
    }
}

void apply_override(json &base, const std::string &spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("config: override '" + spec + "' is not key=value");
    }
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error &) {
        value = raw;  // bare strings may stay unquoted
    }

    // "a.b.c=v" becomes the patch {a:{b:{c:v}}}; merging validates every
    // segment against the schema.
    std::vector<std::string> segments;
    std::istringstream keys(path);
    std::string key;
    while (std::getline(keys, key, '.')) {
        if (key.empty()) {
            throw ConfigError("config: override '" + spec + "' has an empty key segment");
        }
        segments.push_back(key);
    }
    if (segments.empty()) {
        throw ConfigError("config: override '" + spec + "' has an empty key");
    }
    json nested = std::move(value);
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        json wrapper;
        wrapper[*it] = std::move(nested);
        nested = std::move(wrapper);
    }
    merge_checked(base, nested, "");
}

template <typename T>
T get_as(const json &j, const char *key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &err) {
        throw ConfigError(std::string("config: key '") + key + "': " + err.what());
    }
}

ExperimentConfig config_from_json(const json &j)
{
    ExperimentConfig c;
    c.workload = get_as<std::string>(j, "workload");
    c.data_dir = get_as<std::string>(j, "data_dir");
    c.network_size = get_as<int>(j, "network_size");
    c.train_subset = get_as<int>(j, "train_subset");
    c.test_subset = get_as<int>(j, "test_subset");
    c.fault_rates = get_as<std::vector<double>>(j, "fault_rates");
    c.policies.clear();
    for (const auto &name : j.at("policies")) {
        try {
            c.policies.push_back(policy_kind_from_string(name.get<std::string>()));
        } catch (const std::runtime_error &err) {
            throw ConfigError(std::string("config: ") + err.what());
        }
    }
    c.num_fault_maps = get_as<int>(j, "num_fault_maps");
    c.master_seed = get_as<std::uint64_t>(j, "master_seed");
    c.workers = get_as<int>(j, "workers");
    c.model_path = get_as<std::string>(j, "model_path");
    c.train.num_neurons = c.network_size;
    c.train.duration = get_as<int>(j, "duration");
    c.train.max_rate = get_as<double>(j, "max_rate");
    c.train.label_subset = get_as<int>(j, "label_subset");

    const json &lif = j.at("lif");
    c.train.lif.v_threshold = get_as<double>(lif, "v_threshold");
    c.train.lif.v_reset = get_as<double>(lif, "v_reset");
    c.train.lif.v_rest = get_as<double>(lif, "v_rest");
    c.train.lif.leak_amount = get_as<double>(lif, "leak_amount");
    c.train.lif.t_refractory = get_as<int>(lif, "t_refractory");
    c.train.lif.inhibition_strength = get_as<double>(lif, "inhibition_strength");
    c.train.lif.theta_plus = get_as<double>(lif, "theta_plus");
    c.train.lif.theta_decay = get_as<double>(lif, "theta_decay");

    const json &stdp = j.at("stdp");
    c.train.stdp.w_limit = get_as<double>(stdp, "w_limit");
    c.train.stdp.w_init_min = get_as<double>(stdp, "w_init_min");
    c.train.stdp.w_init_max = get_as<double>(stdp, "w_init_max");
    c.train.stdp.lr_post = get_as<double>(stdp, "lr_post");
    c.train.stdp.lr_pre = get_as<double>(stdp, "lr_pre");
    c.train.stdp.tau_pre = get_as<double>(stdp, "tau_pre");
    c.train.stdp.tau_post = get_as<double>(stdp, "tau_post");
    c.train.stdp.mu = get_as<double>(stdp, "mu");
    c.train.stdp.norm_target = get_as<double>(stdp, "norm_target");
    c.train.stdp.epochs = get_as<int>(stdp, "epochs");

    const json &engine = j.at("engine");
    c.engine.crossbar_rows = get_as<int>(engine, "crossbar_rows");
    c.engine.crossbar_cols = get_as<int>(engine, "crossbar_cols");
    c.engine.reset_fault_detect_cycles = get_as<int>(engine, "reset_fault_detect_cycles");

    const json &cost = j.at("cost");
    c.cost.base_cycles_per_timestep = get_as<double>(cost, "base_cycles_per_timestep");
    c.cost.cycle_time = get_as<double>(cost, "cycle_time");
    c.cost.base_power = get_as<double>(cost, "base_power");
    c.cost.bnp_latency_factor = get_as<double>(cost, "bnp_latency_factor");
    c.cost.bnp_energy_factor = get_as<double>(cost, "bnp_energy_factor");
    c.cost.tmr_factor = get_as<double>(cost, "tmr_factor");
    c.cost.area_base = get_as<double>(cost, "area_base");
    c.cost.area_bnp1 = get_as<double>(cost, "area_bnp1");
    c.cost.area_bnp23 = get_as<double>(cost, "area_bnp23");

    const json &synth = j.at("synthetic");
    c.synthetic.seed = get_as<std::uint64_t>(synth, "seed");
    c.synthetic.train_count = get_as<int>(synth, "train_count");
    c.synthetic.test_count = get_as<int>(synth, "test_count");

    c.validate();
    return c;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string &json_text,
        const std::vector<std::string> &overrides)
{
    json base = default_config_json();
    if (!json_text.empty()) {
        json overlay;
        try {
            overlay = json::parse(json_text);
        } catch (const json::parse_error &err) {
            throw ConfigError(std::string("config: malformed JSON: ") + err.what());
        }
        merge_checked(base, overlay, "");
    }
    for (const std::string &spec : overrides) {
        apply_override(base, spec);
    }
    return config_from_json(base);
}

ExperimentConfig load_experiment_config(const std::string &path,
        const std::vector<std::string> &overrides)
{
    if (path.empty()) {
        return parse_experiment_config("", overrides);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str(), overrides);
}

std::string serialize_experiment_config(const ExperimentConfig &config)
{
    // Round-trips through the JSON schema so emitted configs reload
    // identically.
    json j = default_config_json();
    json overlay;
    overlay["workload"] = config.workload;
    overlay["data_dir"] = config.data_dir;
    overlay["network_size"] = config.network_size;
    overlay["train_subset"] = config.train_subset;
    overlay["test_subset"] = config.test_subset;
    overlay["fault_rates"] = config.fault_rates;
    {
        json names = json::array();
        for (PolicyKind p : config.policies) {
            names.push_back(to_string(p));
        }
        overlay["policies"] = names;
    }
    overlay["num_fault_maps"] = config.num_fault_maps;
    overlay["master_seed"] = config.master_seed;
    overlay["workers"] = config.workers;
    overlay["model_path"] = config.model_path;
    overlay["duration"] = config.train.duration;
    overlay["max_rate"] = config.train.max_rate;
    overlay["label_subset"] = config.train.label_subset;
    overlay["lif"] = {
            {"v_threshold", config.train.lif.v_threshold},
            {"v_reset", config.train.lif.v_reset},
            {"v_rest", config.train.lif.v_rest},
            {"leak_amount", config.train.lif.leak_amount},
            {"t_refractory", config.train.lif.t_refractory},
            {"inhibition_strength", config.train.lif.inhibition_strength},
            {"theta_plus", config.train.lif.theta_plus},
            {"theta_decay", config.train.lif.theta_decay},
    };
    overlay["stdp"] = {
            {"w_limit", config.train.stdp.w_limit},
            {"w_init_min", config.train.stdp.w_init_min},
            {"w_init_max", config.train.stdp.w_init_max},
            {"lr_post", config.train.stdp.lr_post},
            {"lr_pre", config.train.stdp.lr_pre},
            {"tau_pre", config.train.stdp.tau_pre},
            {"tau_post", config.train.stdp.tau_post},
            {"mu", config.train.stdp.mu},
            {"norm_target", config.train.stdp.norm_target},
            {"epochs", config.train.stdp.epochs},
    };
    overlay["engine"] = {
            {"crossbar_rows", config.engine.crossbar_rows},
            {"crossbar_cols", config.engine.crossbar_cols},
            {"reset_fault_detect_cycles", config.engine.reset_fault_detect_cycles},
    };
    overlay["cost"] = {
            {"base_cycles_per_timestep", config.cost.base_cycles_per_timestep},
            {"cycle_time", config.cost.cycle_time},
            {"base_power", config.cost.base_power},
            {"bnp_latency_factor", config.cost.bnp_latency_factor},
            {"bnp_energy_factor", config.cost.bnp_energy_factor},
            {"tmr_factor", config.cost.tmr_factor},
            {"area_base", config.cost.area_base},
            {"area_bnp1", config.cost.area_bnp1},
            {"area_bnp23", config.cost.area_bnp23},
    };
    overlay["synthetic"] = {
            {"seed", config.synthetic.seed},
            {"train_count", config.synthetic.train_count},
            {"test_count", config.synthetic.test_count},
    };
    merge_checked(j, overlay, "");
    return j.dump(2) + "\n";
}

std::pair<Dataset, Dataset> load_workload(const ExperimentConfig &config)
{
    Dataset train;
    Dataset test;
    if (config.workload == "synthetic") {
        train = make_synthetic_dataset(config.synthetic.train_count,
                derive_seed(config.synthetic.seed, 1));
        test = make_synthetic_dataset(config.synthetic.test_count,
                derive_seed(config.synthetic.seed, 2));
    } else {
        const std::string dir = config.data_dir + "/" +
                (config.workload == "mnist" ? "mnist" : "fashion_mnist");
        try {
            train = load_dataset(dir + "/train-images-idx3-ubyte",
                    dir + "/train-labels-idx1-ubyte");
            test = load_dataset(dir + "/t10k-images-idx3-ubyte",
                    dir + "/t10k-labels-idx1-ubyte");
        } catch (const std::runtime_error &err) {
            throw ConfigError(std::string(err.what()) +
                    " (run scripts/fetch_mnist.sh or use the synthetic workload)");
        }
    }
    if (config.train_subset > train.count() || config.test_subset > test.count()) {
        throw ConfigError("config: train/test subset exceeds dataset size");
    }
    return {train.subset(config.train_subset), test.subset(config.test_subset)};
}

TrainedModel obtain_model(const ExperimentConfig &config, const Dataset &train_data)
{
    if (!config.model_path.empty()) {
        return load_model(config.model_path);
    }
    return stdp_train(train_data, config.train, config.master_seed);
}

namespace {

struct Cell {
    std::size_t policy_rank = 0;
    PolicyKind policy = PolicyKind::NoMitigation;
    std::size_t rate_index = 0;
    double rate = 0.0;
    int map_index = 0;
    std::uint64_t map_seed = 0;
};

SweepRow evaluate_cell(const Cell &cell, const ExperimentConfig &config,
        const TrainedModel &model, const Dataset &test_data,
        const std::vector<SpikeTrain> &encoded)
{
    SweepRow row;
    row.policy = cell.policy;
    row.network = model.num_neurons();
    row.fault_rate = cell.rate;
    row.map_seed = cell.map_seed;

    int correct = 0;
    CostReport cost;
    if (cell.policy == PolicyKind::ReExecutionTMR) {
        for (int i = 0; i < test_data.count(); ++i) {
            const TmrResult run = run_tmr(model, encoded[i], cell.rate, config.engine,
                    config.cost, derive_seed(cell.map_seed, i));
            correct += run.predicted == test_data.labels[i] ? 1 : 0;
            cost = run.cost;
        }
    } else {
        const MitigationPolicy policy = make_policy(cell.policy, model.stats);
        const FaultMap map = generate_fault_map(model.num_inputs(), model.num_neurons(),
                cell.rate, cell.map_seed);
        for (int i = 0; i < test_data.count(); ++i) {
            const InferenceResult run = run_inference(model, encoded[i], map, policy,
                    config.engine, config.cost);
            correct += run.predicted == test_data.labels[i] ? 1 : 0;
            cost = run.cost;
        }
    }
    row.accuracy = static_cast<double>(correct) / test_data.count();
    row.latency_s = cost.latency;
    row.energy_j = cost.energy;
    row.area_norm = cost.area;
    return row;
}

} // namespace

SweepResult run_sweep(const ExperimentConfig &config, const TrainedModel &model,
        const Dataset &test_data)
{
    config.validate();
    if (test_data.count() == 0) {
        throw ConfigError("run_sweep: empty test set");
    }

    // Test inputs are encoded once and shared read-only across cells, so
    // every policy sees the same presentations.
    std::vector<SpikeTrain> encoded;
    encoded.reserve(test_data.count());
    for (int i = 0; i < test_data.count(); ++i) {
        encoded.push_back(encode_poisson(test_data.image(i), model.duration,
                model.max_rate, derive_seed(config.master_seed, stream::kTestEncode, i)));
    }

    std::vector<Cell> cells;
    const std::uint64_t map_root = derive_seed(config.master_seed, stream::kFaultMap);
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        for (std::size_t r = 0; r < config.fault_rates.size(); ++r) {
            for (int m = 0; m < config.num_fault_maps; ++m) {
                Cell cell;
                cell.policy_rank = p;
                cell.policy = config.policies[p];
                cell.rate_index = r;
                cell.rate = config.fault_rates[r];
                cell.map_index = m;
                // Shared across policies: techniques face identical maps.
                cell.map_seed = derive_seed(map_root, r, m);
                cells.push_back(cell);
            }
        }
    }

    SweepResult result;
    result.rows.resize(cells.size());

    unsigned worker_count = config.workers > 0
            ? static_cast<unsigned>(config.workers)
            : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, cells.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cells.size() || failed.load()) {
                return;
            }
            try {
                result.rows[k] =
                        evaluate_cell(cells[k], config, model, test_data, encoded);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    if (worker_count <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            threads.emplace_back(work);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        if (a.policy != b.policy) return a.policy < b.policy;
        if (a.fault_rate != b.fault_rate) return a.fault_rate < b.fault_rate;
        return a.map_seed < b.map_seed;
    });
    return result;
}

} // namespace snnsim
