#include "ngle/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ngle/io.hpp"

namespace ngle {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

int effective_threads(const CliConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<double> parse_rate_list(const std::string& text) {
    std::vector<double> rates;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        rates.push_back(std::stod(item));
    }
    return rates;
}

ordered_json network_json(const CliConfig& cfg) {
    ordered_json j;
    const std::string type = lower(cfg.net_type);
    if (type == "rg" || type == "er") {
        j["type"] = "rg";
        j["n"] = cfg.n;
        j["p"] = cfg.p;
    } else if (type == "sw" || type == "ws") {
        j["type"] = "sw";
        j["n"] = cfg.n;
        j["k"] = cfg.k;
        j["rp"] = cfg.rp;
    } else {
        j["type"] = "sf";
        j["n"] = cfg.n;
        j["m0"] = cfg.m0;
        j["m"] = cfg.m;
    }
    return j;
}

ordered_json game_json(const CliConfig& cfg) {
    return ordered_json{{"error_rate", cfg.error_rate},
                        {"error_mode", lower(cfg.error_mode)},
                        {"vocab_size", cfg.vocab_size},
                        {"max_iterations", cfg.max_iterations}};
}

ordered_json outcome_counts_json(
    const std::array<std::uint64_t, kOutcomeKinds>& counts) {
    return ordered_json{
        {"failure_no_error", counts[0]},
        {"consensus", counts[1]},
        {"failure_with_error", counts[2]},
        {"pseudo_consensus", counts[3]},
    };
}

std::filesystem::path out_path(const CliConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

struct InstanceStats {
    double average_degree;
    double average_path_length;
    double clustering_coefficient;
};

InstanceStats stats_of(const Graph& g) {
    return {average_degree(g), average_path_length(g),
            clustering_coefficient(g)};
}

} // namespace

NetworkSpec CliConfig::network_spec() const {
    const std::string type = lower(net_type);
    NetworkSpec spec;
    if (type == "rg" || type == "er")
        spec.variant = ErdosRenyi{n, p};
    else if (type == "sw" || type == "ws")
        spec.variant = WattsStrogatz{n, k, rp};
    else if (type == "sf" || type == "ba")
        spec.variant = BarabasiAlbert{n, m0, m};
    else
        throw std::invalid_argument("unknown network type: " + net_type);
    return spec;
}

ErrorMode CliConfig::mode() const {
    const std::string m_ = lower(error_mode);
    if (m_ == "learning") return ErrorMode::Learning;
    if (m_ == "persistent") return ErrorMode::Persistent;
    throw std::invalid_argument("error_mode must be learning or persistent");
}

GameConfig CliConfig::game_config() const {
    GameConfig cfg;
    cfg.error_rate = error_rate;
    cfg.vocab = Vocabulary(vocab_size);
    cfg.error_mode = mode();
    cfg.max_iterations = max_iterations;
    return cfg;
}

ExperimentPlan CliConfig::plan() const {
    ExperimentPlan plan;
    plan.network = network_spec();
    if (!error_rates.empty()) plan.error_rates = error_rates;
    plan.trials = trials;
    plan.error_mode = mode();
    plan.base_seed = seed;
    plan.max_iterations = max_iterations;
    plan.vocab_size = vocab_size;
    plan.threshold_step = threshold_step;
    plan.fixed_graph_per_trial = fixed_graph;
    plan.threads = effective_threads(*this);
    return plan;
}

void CliConfig::validate() const {
    if (graph_in.empty()) network_spec().validate();
    game_config().validate(force);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(threshold_step > 0.0))
        throw std::invalid_argument("threshold_step must be positive");
    for (double r : error_rates)
        if (!(r >= 0.0 && r <= (force ? 1.0 : 0.5)))
            throw std::invalid_argument(
                "error_rates entries must be in [0, 0.5] (use --force to "
                "explore beyond)");
}

void apply_config_line(CliConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "network.type")
        cfg.net_type = value;
    else if (key == "network.n")
        cfg.n = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "network.p")
        cfg.p = std::stod(value);
    else if (key == "network.k")
        cfg.k = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "network.rp")
        cfg.rp = std::stod(value);
    else if (key == "network.m0")
        cfg.m0 = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "network.m")
        cfg.m = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "game.error_rate")
        cfg.error_rate = std::stod(value);
    else if (key == "game.error_mode")
        cfg.error_mode = value;
    else if (key == "game.vocab_size")
        cfg.vocab_size = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "game.max_iterations")
        cfg.max_iterations = std::stoull(value);
    else if (key == "experiment.trials")
        cfg.trials = std::stoi(value);
    else if (key == "experiment.error_rates")
        cfg.error_rates = parse_rate_list(value);
    else if (key == "experiment.threshold_step")
        cfg.threshold_step = std::stod(value);
    else if (key == "seed")
        cfg.seed = std::stoull(value);
    else if (key == "out") {
        cfg.out_dir = value;
        cfg.out_dir_set = true;
    } else
        throw std::invalid_argument("unknown config key: " + key);
}

void apply_config_file(CliConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        apply_config_line(cfg, strip(line.substr(0, eq)),
                          strip(line.substr(eq + 1)));
    }
}

int cmd_net_stats(const CliConfig& cfg) {
    cfg.validate();
    std::vector<InstanceStats> instances;

    if (!cfg.graph_in.empty()) {
        const Graph g = load_edge_list(cfg.graph_in);
        if (!is_connected(g))
            throw std::runtime_error("imported graph is disconnected");
        if (!cfg.graph_out.empty()) save_edge_list(g, cfg.graph_out);
        instances.push_back(stats_of(g));
    } else {
        const NetworkSpec spec = cfg.network_spec();
        instances.resize(cfg.trials);
        parallel_for_index(cfg.trials, effective_threads(cfg),
                           [&](std::size_t i) {
                               RandomStream rng(
                                   derive_seed(cfg.seed, kSeedGraph, i));
                               const Graph g = generate(spec, rng);
                               if (i == 0 && !cfg.graph_out.empty())
                                   save_edge_list(g, cfg.graph_out);
                               instances[i] = stats_of(g);
                           });
    }

    ordered_json j;
    j["network"] = cfg.graph_in.empty()
                       ? network_json(cfg)
                       : ordered_json{{"type", "file"}, {"path", cfg.graph_in}};
    j["seed"] = cfg.seed;
    j["instances"] = ordered_json::array();
    double deg = 0, apl = 0, cc = 0;
    for (const auto& s : instances) {
        j["instances"].push_back(
            {{"average_degree", s.average_degree},
             {"average_path_length", s.average_path_length},
             {"clustering_coefficient", s.clustering_coefficient}});
        deg += s.average_degree;
        apl += s.average_path_length;
        cc += s.clustering_coefficient;
    }
    const double count = static_cast<double>(instances.size());
    j["mean"] = {{"average_degree", deg / count},
                 {"average_path_length", apl / count},
                 {"clustering_coefficient", cc / count}};

    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (cfg.out_dir_set)
        write_file(out_path(cfg, "net_stats.json").string(), text);
    return 0;
}

int cmd_run(const CliConfig& cfg) {
    cfg.validate();
    Graph g = [&] {
        if (!cfg.graph_in.empty()) return load_edge_list(cfg.graph_in);
        RandomStream graph_rng(derive_seed(cfg.seed, kSeedGraph, 0));
        return generate(cfg.network_spec(), graph_rng);
    }();
    if (!cfg.graph_out.empty()) save_edge_list(g, cfg.graph_out);

    RandomStream game_rng(derive_seed(cfg.seed, kSeedGame, 0));
    const GameConfig game = cfg.game_config();
    const RunResult result = run_recorded(g, game, game_rng);

    std::ostringstream csv;
    write_trajectory_csv(result.series, csv);
    write_file(out_path(cfg, "run_trajectory.csv").string(), csv.str());

    ordered_json j;
    j["network"] = cfg.graph_in.empty()
                       ? network_json(cfg)
                       : ordered_json{{"type", "file"}, {"path", cfg.graph_in}};
    j["game"] = game_json(cfg);
    j["seed"] = cfg.seed;
    j["converged"] = result.converged;
    if (result.converged)
        j["convergence_iteration"] = *result.convergence_iteration;
    else
        j["convergence_iteration"] = nullptr;
    j["iterations"] = result.iterations;
    j["max_distinct_words"] = result.max_distinct_words;
    j["final_total_words"] = result.final_total_words;
    j["final_distinct_words"] = result.final_distinct_words;
    j["outcome_counts"] = outcome_counts_json(result.outcome_counts);
    write_file(out_path(cfg, "run_summary.json").string(), j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const CliConfig& cfg) {
    cfg.validate();
    ExperimentPlan plan = cfg.plan();
    if (std::find(plan.error_rates.begin(), plan.error_rates.end(), 0.0) ==
        plan.error_rates.end())
        throw std::invalid_argument(
            "sweep requires the rho = 0 baseline in the rate list");
    const SweepResult sweep = run_sweep(plan);

    std::ostringstream csv;
    write_sweep_csv(sweep, csv);
    write_file(out_path(cfg, "sweep.csv").string(), csv.str());

    std::ostringstream inc;
    write_increments_csv(sweep, inc);
    write_file(out_path(cfg, "sweep_increments.csv").string(), inc.str());

    for (std::size_t i = 0; i < sweep.per_rho.size(); ++i) {
        const auto& agg = sweep.per_rho[i];
        std::ostringstream series;
        write_trajectory_csv(agg.mean_series, series);
        write_file(out_path(cfg, "sweep_series_rho_" + format_fixed(agg.rho) +
                                     ".csv")
                       .string(),
                   series.str());
    }

    ordered_json j;
    j["network"] = network_json(cfg);
    j["error_mode"] = lower(cfg.error_mode);
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["positive_increments"] = sweep.positive_increments;
    j["negative_increments"] = sweep.negative_increments;
    j["interval_histogram"] = {
        {"(-inf,-0.2)", sweep.interval_counts[0]},
        {"[-0.2,-0.1)", sweep.interval_counts[1]},
        {"[-0.1,0)", sweep.interval_counts[2]},
        {"[0,0.1)", sweep.interval_counts[3]},
        {"[0.1,0.2)", sweep.interval_counts[4]},
        {"[0.2,+inf)", sweep.interval_counts[5]},
    };
    if (sweep.max_distinct_fit) {
        j["max_distinct_fit"] = {{"slope", sweep.max_distinct_fit->slope},
                                 {"intercept", sweep.max_distinct_fit->intercept},
                                 {"r_squared", sweep.max_distinct_fit->r_squared}};
    } else {
        j["max_distinct_fit"] = nullptr;
    }
    ordered_json censored = ordered_json::array();
    for (std::size_t i = 0; i < sweep.per_rho.size(); ++i)
        if (sweep.per_rho[i].converged_trials < sweep.per_rho[i].trials)
            censored.push_back(sweep.per_rho[i].rho);
    j["rates_with_unconverged_trials"] = censored;
    write_file(out_path(cfg, "sweep_summary.json").string(), j.dump(2) + "\n");
    return 0;
}

int cmd_threshold(const CliConfig& cfg) {
    CliConfig forced = cfg;
    forced.error_mode = "persistent"; // the threshold study has no
                                      // error-prevention strategy
    forced.validate();
    ExperimentPlan plan = forced.plan();
    plan.record_series = false;
    const ThresholdResult result = find_threshold(plan);

    std::ostringstream csv;
    write_threshold_csv(result, csv);
    write_file(out_path(forced, "threshold.csv").string(), csv.str());

    ordered_json j;
    j["network"] = network_json(forced);
    j["seed"] = forced.seed;
    j["trials"] = forced.trials;
    j["threshold_step"] = forced.threshold_step;
    j["thresholds"] = ordered_json::array();
    for (double t : result.thresholds)
        j["thresholds"].push_back(std::isnan(t) ? ordered_json(nullptr)
                                                : ordered_json(t));
    j["censored_trials"] = result.censored_trials;
    j["box"] = {{"median", result.box.median},
                {"q1", result.box.q1},
                {"q3", result.box.q3},
                {"whisker_low", result.box.whisker_low},
                {"whisker_high", result.box.whisker_high},
                {"outliers", result.box.outliers}};
    write_file(out_path(forced, "threshold_summary.json").string(),
               j.dump(2) + "\n");
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    CliConfig cfg;

    // Config file first, flags override.
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config")
                apply_config_file(cfg, argv[i + 1]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"Naming-game-with-learning-errors simulator"};
    app.require_subcommand(1);
    std::string config_path; // consumed above; declared so CLI11 accepts it

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value)");
        sub->add_option("--seed", cfg.seed, "base seed");
        sub->add_option("--net", cfg.net_type, "network type: rg|sw|sf");
        sub->add_option("--n", cfg.n, "number of nodes");
        sub->add_option("--p", cfg.p, "rg edge probability");
        sub->add_option("--k", cfg.k, "sw neighbors per side");
        sub->add_option("--rp", cfg.rp, "sw rewiring probability");
        sub->add_option("--m0", cfg.m0, "sf initial nodes");
        sub->add_option("--m", cfg.m, "sf edges per added node");
        sub->add_option("--rho", cfg.error_rate, "error rate");
        sub->add_option("--mode", cfg.error_mode,
                        "error mode: learning|persistent");
        sub->add_option("--max-iter", cfg.max_iterations, "iteration cap");
        sub->add_option("--trials", cfg.trials, "independent trials");
        sub->add_option("--vocab", cfg.vocab_size, "vocabulary size");
        sub->add_option("--rates", [&cfg](const std::vector<std::string>& v) {
            cfg.error_rates = parse_rate_list(v.back());
            return true;
        }, "comma-separated error rates (sweep)");
        sub->add_option("--threshold-step", cfg.threshold_step,
                        "threshold scan step");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
        sub->add_option("--graph-in", cfg.graph_in, "edge-list file to load");
        sub->add_option("--graph-out", cfg.graph_out,
                        "write the (first) graph instance");
        sub->add_flag("--force", cfg.force, "allow error rates above 0.5");
        sub->add_flag("--fixed-graph", cfg.fixed_graph,
                      "threshold: reuse one graph per trial");
        auto* out = sub->add_option("--out", cfg.out_dir, "output directory");
        out->each([&cfg](const std::string&) { cfg.out_dir_set = true; });
    };

    auto* net_stats = app.add_subcommand(
        "net-stats", "generate instances and report their statistics");
    auto* run_cmd = app.add_subcommand("run", "single seeded game run");
    auto* sweep = app.add_subcommand("sweep", "error-rate sweep with averages");
    auto* threshold =
        app.add_subcommand("threshold", "per-trial error-rate threshold scan");
    for (CLI::App* sub : {net_stats, run_cmd, sweep, threshold})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (net_stats->parsed()) return cmd_net_stats(cfg);
        if (run_cmd->parsed()) return cmd_run(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (threshold->parsed()) return cmd_threshold(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace ngle
