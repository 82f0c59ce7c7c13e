// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failures. The desk tier runs everything that finishes in
// minutes; --tier full adds the long threshold reproduction.
//
// Usage: ngle_acceptance [--tier desk|full] [--criterion N] [--ngle-bin PATH]
//                        [--threads N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ngle/experiment.hpp"
#include "ngle/io.hpp"

using namespace ngle;
namespace fs = std::filesystem;

namespace {

int g_threads = 2;
std::string g_ngle_bin;
constexpr std::uint64_t kAcceptanceSeed = 0x5eedbea7;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

NetworkSpec er(NodeId n, double p) {
    NetworkSpec s;
    s.variant = ErdosRenyi{n, p};
    return s;
}
NetworkSpec ws(NodeId n, std::uint32_t k, double rp) {
    NetworkSpec s;
    s.variant = WattsStrogatz{n, k, rp};
    return s;
}
NetworkSpec ba(NodeId n, std::uint32_t m0, std::uint32_t m) {
    NetworkSpec s;
    s.variant = BarabasiAlbert{n, m0, m};
    return s;
}

GameConfig game(double rho, ErrorMode mode, std::uint32_t vocab = 10'000,
                std::uint64_t cap = 10'000'000) {
    GameConfig cfg;
    cfg.error_rate = rho;
    cfg.vocab = Vocabulary(vocab);
    cfg.error_mode = mode;
    cfg.max_iterations = cap;
    return cfg;
}

ExperimentPlan paper_plan(const NetworkSpec& net, ErrorMode mode,
                          std::uint64_t seed_salt) {
    ExperimentPlan plan;
    plan.network = net;
    plan.trials = 20;
    plan.error_mode = mode;
    plan.base_seed = derive_seed(kAcceptanceSeed, seed_salt);
    plan.record_series = false;
    plan.threads = g_threads;
    return plan;
}

// ---------------------------------------------------------------- criterion 1

struct TableRow {
    const char* name;
    NetworkSpec spec;
    double degree;
    double apl;
    double cc;
    bool exact_degree;
    double er_p; // > 0 marks the random-graph rows
};

Check topology_statistics() {
    const std::vector<TableRow> table = {
        {"RG/0.03", er(2000, 0.03), 59.97, 2.1305, 0.0300, false, 0.03},
        {"RG/0.05", er(2000, 0.05), 99.96, 1.9564, 0.0500, false, 0.05},
        {"RG/0.1", er(2000, 0.1), 199.92, 1.9000, 0.1000, false, 0.1},
        {"SW/20/0.1", ws(2000, 20, 0.1), 40.00, 2.8251, 0.5360, true, 0},
        {"SW/20/0.2", ws(2000, 20, 0.2), 40.00, 2.6963, 0.3806, true, 0},
        {"SW/20/0.3", ws(2000, 20, 0.3), 40.00, 2.6133, 0.2597, true, 0},
        {"SF/25", ba(2000, 26, 25), 49.66, 2.2312, 0.0760, false, 0},
        {"SF/50", ba(2000, 51, 50), 98.69, 1.9725, 0.1217, false, 0},
        {"SF/75", ba(2000, 76, 75), 147.10, 1.9273, 0.1602, false, 0},
        {"SW/40/0.1", ws(2000, 40, 0.1), 80.00, 2.4499, 0.5457, true, 0},
        {"SW/40/0.2", ws(2000, 40, 0.2), 80.00, 2.2367, 0.3894, true, 0},
        {"SW/40/0.3", ws(2000, 40, 0.3), 80.00, 2.1291, 0.2718, true, 0},
    };

    Check check;
    const int instances = 20;
    for (std::size_t row = 0; row < table.size(); ++row) {
        const TableRow& ref = table[row];
        std::vector<double> degs(instances), apls(instances), ccs(instances);
        parallel_for_index(instances, g_threads, [&](std::size_t i) {
            RandomStream rng(derive_seed(kAcceptanceSeed, 1, row, i));
            const Graph g = generate(ref.spec, rng);
            degs[i] = average_degree(g);
            apls[i] = average_path_length(g);
            ccs[i] = clustering_coefficient(g);
        });
        const auto mean = [&](const std::vector<double>& v) {
            double s = 0;
            for (double x : v) s += x;
            return s / v.size();
        };
        const double deg = mean(degs), apl = mean(apls), cc = mean(ccs);

        if (ref.exact_degree) {
            check.expect(std::abs(deg - ref.degree) < 1e-9,
                         std::string(ref.name) + " degree not exact");
        } else {
            check.expect(std::abs(deg / ref.degree - 1.0) <= 0.01,
                         std::string(ref.name) + " degree off >1%");
        }
        check.expect(std::abs(apl / ref.apl - 1.0) <= 0.03,
                     std::string(ref.name) + " path length off >3%");
        if (ref.er_p > 0.0) {
            check.expect(std::abs(cc / ref.er_p - 1.0) <= 0.05,
                         std::string(ref.name) + " clustering off >5% of p");
        } else {
            check.expect(std::abs(cc / ref.cc - 1.0) <= 0.10,
                         std::string(ref.name) + " clustering off >10%");
        }
    }
    if (check.ok) check.detail << "12 settings x 20 instances match";
    return check;
}

// ---------------------------------------------------------------- criterion 2

Check error_free_reduction() {
    Check check;
    const std::vector<std::pair<const char*, NetworkSpec>> nets = {
        {"RG/0.1@2000", er(2000, 0.1)},   {"SW/20/0.1@2000", ws(2000, 20, 0.1)},
        {"SF/50@2000", ba(2000, 51, 50)}, {"RG/0.1@100", er(100, 0.1)},
        {"SW/5/0.3@100", ws(100, 5, 0.3)}, {"SF/5@100", ba(100, 6, 5)},
    };
    for (std::size_t ni = 0; ni < nets.size(); ++ni) {
        for (std::uint64_t trial = 0; trial < 2; ++trial) {
            RandomStream graph_rng(derive_seed(kAcceptanceSeed, 2, ni, trial));
            const Graph g = generate(nets[ni].second, graph_rng);
            RandomStream rng(derive_seed(kAcceptanceSeed, 2, ni, trial, 1));
            const RunResult r = run(g, game(0.0, ErrorMode::Learning), rng);
            const std::string tag = nets[ni].first;
            check.expect(r.converged, tag + " did not converge");
            check.expect(
                r.outcome_counts[static_cast<int>(
                    OutcomeKind::FailureWithError)] == 0,
                tag + " saw failure-with-error at rho=0");
            check.expect(r.outcome_counts[static_cast<int>(
                             OutcomeKind::PseudoConsensus)] == 0,
                         tag + " saw pseudo consensus at rho=0");
            check.expect(r.final_total_words == g.num_nodes(),
                         tag + " final total != n");
            check.expect(r.final_distinct_words == 1, tag + " distinct != 1");
        }
    }
    if (check.ok) check.detail << "6 networks x 2 runs, all clean and converged";
    return check;
}

// ---------------------------------------------------------------- criterion 3

Check single_step_oracle() {
    // Analytic law for two inexperienced neighbors with distinct single
    // words (V=10, rho=0.5): P(pseudo) = rho/(V-1), P(error failure) =
    // rho(V-2)/(V-1).
    const Graph g = Graph::from_edges(2, {{0, 1}});
    const GameConfig cfg = game(0.5, ErrorMode::Learning, 10);
    const int steps = 1'000'000;
    RandomStream rng(derive_seed(kAcceptanceSeed, 3));
    std::int64_t pseudo = 0, wrong = 0;
    for (int i = 0; i < steps; ++i) {
        GameState st;
        st.agents.resize(2);
        st.agents[0].memory = {1};
        st.agents[1].memory = {2};
        const Outcome o = step(st, g, cfg, rng);
        if (o.kind == OutcomeKind::PseudoConsensus) ++pseudo;
        if (o.kind == OutcomeKind::FailureWithError) ++wrong;
    }
    Check check;
    const auto within3sigma = [&](std::int64_t count, double p) {
        const double sigma = std::sqrt(p * (1 - p) / steps);
        return std::abs(static_cast<double>(count) / steps - p) < 3 * sigma;
    };
    const double p_pseudo = 0.5 / 9.0;
    const double p_wrong = 0.5 * 8.0 / 9.0;
    check.expect(within3sigma(pseudo, p_pseudo),
                 "pseudo-consensus frequency beyond 3 sigma");
    check.expect(within3sigma(wrong, p_wrong),
                 "failure-with-error frequency beyond 3 sigma");
    check.detail << "pseudo " << static_cast<double>(pseudo) / steps
                 << " vs " << p_pseudo << ", wrong "
                 << static_cast<double>(wrong) / steps << " vs " << p_wrong;
    return check;
}

// ---------------------------------------------------------------- criterion 4

Check census_oracle() {
    Check check;
    const double rhos[] = {0.0, 0.1, 0.5};
    int config_index = 0;
    for (double rho : rhos) {
        for (ErrorMode mode : {ErrorMode::Learning, ErrorMode::Persistent}) {
            RandomStream graph_rng(
                derive_seed(kAcceptanceSeed, 4, config_index));
            const Graph g = generate(er(50, 0.15), graph_rng);
            const GameConfig cfg = game(rho, mode, 10'000, 10'000);
            GameState st = init_state(g);
            WordCensus census(cfg.vocab.size);
            StepDelta delta;
            RandomStream rng(derive_seed(kAcceptanceSeed, 4, config_index, 1));
            for (int i = 0; i < 10'000; ++i) {
                step(st, g, cfg, rng, &delta);
                census_apply(census, delta);
                const WordCensus truth = census_recount(st, cfg.vocab.size);
                if (census.total != truth.total ||
                    census.distinct != truth.distinct ||
                    census.multiplicity != truth.multiplicity) {
                    check.expect(false,
                                 "census diverged at step " + std::to_string(i));
                    break;
                }
            }
            ++config_index;
        }
    }
    if (check.ok)
        check.detail << "6 configs x 10000 steps, census == recount throughout";
    return check;
}

// ---------------------------------------------------------------- criterion 5

Check memory_cost_ordering() {
    Check check;
    std::vector<double> means;
    const double rhos[] = {0.01, 0.1, 0.5};
    for (std::size_t i = 0; i < 3; ++i) {
        const RhoAggregate agg =
            run_trials(paper_plan(er(2000, 0.05), ErrorMode::Learning, 5),
                       rhos[i], i);
        check.expect(agg.converged_trials == agg.trials,
                     "unconverged learning-mode trial at rho=" +
                         std::to_string(rhos[i]));
        means.push_back(agg.mean_max_distinct_words);
    }
    check.expect(means[0] < means[1] && means[1] < means[2],
                 "max distinct words not strictly increasing in rho");
    check.detail << "mean max distinct words: " << means[0] << " < "
                 << means[1] << " < " << means[2];
    return check;
}

// ---------------------------------------------------------------- criterion 6

Check linearity() {
    Check check;
    const std::pair<const char*, NetworkSpec> nets[] = {
        {"RG/0.05", er(2000, 0.05)}, {"SF/50", ba(2000, 51, 50)}};
    for (std::size_t ni = 0; ni < 2; ++ni) {
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < 5; ++i) {
            const double rho = 0.1 * (i + 1);
            const RhoAggregate agg = run_trials(
                paper_plan(nets[ni].second, ErrorMode::Learning, 6 + ni), rho,
                i);
            points.emplace_back(rho, agg.mean_max_distinct_words);
        }
        const LinearFit fit = linear_fit(points);
        check.expect(fit.slope > 0.0,
                     std::string(nets[ni].first) + " slope not positive");
        check.expect(fit.r_squared >= 0.95,
                     std::string(nets[ni].first) + " r^2 below 0.95 (" +
                         std::to_string(fit.r_squared) + ")");
        check.detail << (ni ? "; " : "") << nets[ni].first
                     << " r^2=" << fit.r_squared << " slope=" << fit.slope;
    }
    return check;
}

// ---------------------------------------------------------------- criterion 7

Check increment_statistics() {
    Check check;
    const std::pair<const char*, NetworkSpec> nets[] = {
        {"RG/0.1", er(2000, 0.1)},
        {"RG/0.05", er(2000, 0.05)},
        {"SF/50", ba(2000, 51, 50)}};

    int within = 0, total = 0;
    for (std::size_t ni = 0; ni < 3; ++ni) {
        ExperimentPlan plan =
            paper_plan(nets[ni].second, ErrorMode::Learning, 7 + ni);
        const SweepResult sweep = run_sweep(plan);
        int positive = 0, count = 0;
        for (std::size_t i = 0; i < sweep.increments.size(); ++i) {
            if (sweep.per_rho[i].rho == 0.0) continue;
            check.expect(!std::isnan(sweep.increments[i]),
                         std::string(nets[ni].first) + " unconverged cell");
            if (std::isnan(sweep.increments[i])) continue;
            ++count;
            ++total;
            if (sweep.increments[i] > 0) ++positive;
            if (sweep.increments[i] > -0.2 && sweep.increments[i] < 0.2)
                ++within;
        }
        if (ni == 0) {
            // the reference data has 23 of 23 positive here
            check.expect(positive >= static_cast<int>(0.75 * count),
                         "RG/0.1: fewer than 75% positive increments (" +
                             std::to_string(positive) + "/" +
                             std::to_string(count) + ")");
            check.detail << "RG/0.1 positives " << positive << "/" << count;
        }
    }
    check.expect(within >= static_cast<int>(std::ceil(0.9 * total)),
                 "fewer than 90% of increments inside (-0.2, 0.2): " +
                     std::to_string(within) + "/" + std::to_string(total));
    check.detail << "; within (-0.2,0.2): " << within << "/" << total;
    return check;
}

// ---------------------------------------------------------------- criterion 8

Check threshold_surrogate() {
    Check check;
    int converged_low = 0, converged_high = 0;
    for (int which = 0; which < 2; ++which) {
        const double rho = which == 0 ? 0.001 : 0.05;
        std::vector<char> converged(20, 0);
        ExperimentPlan plan =
            paper_plan(er(2000, 0.05), ErrorMode::Persistent, 8);
        parallel_for_index(20, g_threads, [&](std::size_t trial) {
            RandomStream graph_rng(
                derive_seed(plan.base_seed, kSeedGraph, which, trial));
            const Graph g = generate(plan.network, graph_rng);
            RandomStream rng(
                derive_seed(plan.base_seed, kSeedGame, which, trial));
            converged[trial] =
                run(g, game(rho, ErrorMode::Persistent), rng).converged ? 1 : 0;
        });
        const int count = static_cast<int>(
            std::count(converged.begin(), converged.end(), 1));
        (which == 0 ? converged_low : converged_high) = count;
    }
    check.expect(converged_low >= 18,
                 "rho=0.001 converged in only " +
                     std::to_string(converged_low) + "/20 trials");
    check.expect(converged_high == 0,
                 "rho=0.05 converged in " + std::to_string(converged_high) +
                     "/20 trials (expected none)");
    check.detail << "persistent RG/0.05: rho=0.001 " << converged_low
                 << "/20 converged, rho=0.05 " << converged_high << "/20";
    return check;
}

Check threshold_full() {
    Check check;
    struct Band {
        const char* name;
        NetworkSpec spec;
        double lo, hi;
    };
    const Band bands[] = {{"RG/0.05", er(2000, 0.05), 0.0055, 0.0075},
                          {"SF/50", ba(2000, 51, 50), 0.0062, 0.0080}};
    for (std::size_t bi = 0; bi < 2; ++bi) {
        ExperimentPlan plan =
            paper_plan(bands[bi].spec, ErrorMode::Persistent, 80 + bi);
        const ThresholdResult r = find_threshold(plan);
        check.expect(r.censored_trials.empty(),
                     std::string(bands[bi].name) + " had censored trials");
        check.expect(
            r.box.median >= bands[bi].lo && r.box.median <= bands[bi].hi,
            std::string(bands[bi].name) + " median " +
                std::to_string(r.box.median) + " outside [" +
                std::to_string(bands[bi].lo) + ", " +
                std::to_string(bands[bi].hi) + "]");
        check.detail << (bi ? "; " : "") << bands[bi].name << " median "
                     << r.box.median << " iqr [" << r.box.q1 << ", " << r.box.q3
                     << "]";
    }
    return check;
}

// ---------------------------------------------------------------- criterion 9

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli_command(const std::string& args) {
    const std::string cmd = g_ngle_bin + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

Check determinism() {
    Check check;

    // Library level: permuted trial execution (worker scheduling) leaves
    // aggregates bit-identical.
    ExperimentPlan plan;
    plan.network = er(100, 0.1);
    plan.trials = 8;
    plan.base_seed = derive_seed(kAcceptanceSeed, 9);
    plan.max_iterations = 1'000'000;
    plan.vocab_size = 1000;
    plan.threads = 1;
    const RhoAggregate serial = run_trials(plan, 0.1, 1);
    plan.threads = 4;
    const RhoAggregate threaded = run_trials(plan, 0.1, 1);
    bool equal = serial.mean_convergence_iterations ==
                     threaded.mean_convergence_iterations &&
                 serial.stddev_convergence_iterations ==
                     threaded.stddev_convergence_iterations &&
                 serial.mean_max_distinct_words ==
                     threaded.mean_max_distinct_words &&
                 serial.mean_series.size() == threaded.mean_series.size();
    if (equal)
        for (std::size_t i = 0; i < serial.mean_series.size(); ++i)
            equal = equal &&
                    serial.mean_series[i].iteration ==
                        threaded.mean_series[i].iteration &&
                    serial.mean_series[i].total_words ==
                        threaded.mean_series[i].total_words &&
                    serial.mean_series[i].distinct_words ==
                        threaded.mean_series[i].distinct_words &&
                    serial.mean_series[i].success_rate ==
                        threaded.mean_series[i].success_rate;
    check.expect(equal, "trial aggregates depend on worker count");

    // Binary level: identical invocations produce byte-identical files.
    if (g_ngle_bin.empty()) {
        check.expect(false, "--ngle-bin not provided");
        return check;
    }
    const fs::path base =
        fs::temp_directory_path() /
        ("ngle_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    const fs::path a = base / "a", b = base / "b", c = base / "c";
    fs::create_directories(a);
    fs::create_directories(b);
    fs::create_directories(c);

    const std::string common =
        " --net rg --n 300 --p 0.05 --rho 0.1 --seed 77 --max-iter 1000000"
        " --vocab 1000";
    check.expect(run_cli_command("run" + common + " --out " + a.string()) == 0,
                 "first run invocation failed");
    check.expect(run_cli_command("run" + common + " --out " + b.string()) == 0,
                 "second run invocation failed");
    for (const char* name : {"run_trajectory.csv", "run_summary.json"}) {
        check.expect(!read_file(a / name).empty(),
                     std::string(name) + " is empty");
        check.expect(read_file(a / name) == read_file(b / name),
                     std::string(name) + " differs between identical runs");
    }

    // Sweep with different worker counts: identical aggregates on disk.
    const std::string sweep_common =
        " --net rg --n 100 --p 0.1 --trials 4 --rates 0,0.1,0.2 --seed 5"
        " --max-iter 1000000 --vocab 1000";
    check.expect(run_cli_command("sweep" + sweep_common + " --threads 1 --out " +
                                 a.string()) == 0,
                 "sweep (1 thread) failed");
    check.expect(run_cli_command("sweep" + sweep_common + " --threads 4 --out " +
                                 c.string()) == 0,
                 "sweep (4 threads) failed");
    for (const char* name : {"sweep.csv", "sweep_increments.csv",
                             "sweep_summary.json"}) {
        check.expect(!read_file(a / name).empty(),
                     std::string(name) + " is empty");
        check.expect(read_file(a / name) == read_file(c / name),
                     std::string(name) + " depends on worker count");
    }

    fs::remove_all(base);
    if (check.ok) check.detail << "library and CLI outputs byte-identical";
    return check;
}

} // namespace

int main(int argc, char** argv) {
    std::string tier = "desk";
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--tier" && i + 1 < argc) tier = argv[++i];
        else if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (arg == "--ngle-bin" && i + 1 < argc) g_ngle_bin = argv[++i];
        else if (arg == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
        else {
            std::cerr << "unknown argument: " << arg << "\n";
            return 2;
        }
    }

    struct Criterion {
        int id;
        const char* name;
        bool long_tier;
        std::function<Check()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "topology statistics vs reference table", false,
         topology_statistics},
        {2, "rho=0 reduction to the error-free game", false,
         error_free_reduction},
        {3, "single-step outcome probabilities", false, single_step_oracle},
        {4, "incremental census equals recount", false, census_oracle},
        {5, "memory cost grows with the error rate", false,
         memory_cost_ordering},
        {6, "max distinct words linear in the error rate", false, linearity},
        {7, "convergence-time increment statistics", false,
         increment_statistics},
        {8, "threshold surrogate: convergence collapses above the band", false,
         threshold_surrogate},
        {8, "threshold reproduction: medians in the reference bands", true,
         threshold_full},
        {9, "bit-level determinism of runs and files", false, determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only) continue;
        if (criterion.long_tier && tier != "full" && only == 0) {
            std::cout << "[SKIP] criterion-" << criterion.id << ": "
                      << criterion.name << " (run with --tier full)\n";
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criterion.fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::cout << (result.ok ? "[PASS]" : "[FAIL]") << " criterion-"
                  << criterion.id << ": " << criterion.name << " ("
                  << result.detail.str() << ") [" << static_cast<int>(seconds)
                  << "s]\n"
                  << std::flush;
        if (!result.ok) ++failures;
    }
    return failures;
}
