#include "ngle/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ngle {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> studied_error_rates() {
    std::vector<double> rates{0.0};
    for (int i = 1; i <= 9; ++i) rates.push_back(i * 0.001);
    for (int i = 1; i <= 9; ++i) rates.push_back(i * 0.01);
    for (int i = 1; i <= 5; ++i) rates.push_back(i * 0.1);
    return rates;
}

GameConfig ExperimentPlan::game_config(double rho) const {
    GameConfig cfg;
    cfg.error_rate = rho;
    cfg.vocab = Vocabulary(vocab_size);
    cfg.error_mode = error_mode;
    cfg.max_iterations = max_iterations;
    return cfg;
}

void ExperimentPlan::validate() const {
    network.validate();
    if (trials < 1) throw std::invalid_argument("plan: trials must be >= 1");
    if (error_rates.empty())
        throw std::invalid_argument("plan: error_rates must not be empty");
    if (!(threshold_step > 0.0))
        throw std::invalid_argument("plan: threshold_step must be positive");
    for (double r : error_rates) game_config(r).validate(true);
}

void parallel_for_index(std::size_t count, int threads,
                        const std::function<void(std::size_t)>& fn) {
    const int workers =
        std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

struct TrialData {
    RunResult result;
};

// Value a trial contributes to the averaged series at iteration t:
// its own row while running, the terminal plateau once converged.
TimeSeriesRow contribution(const RunResult& r, std::uint64_t t, double n) {
    if (r.converged && t >= *r.convergence_iteration)
        return {t, n, 1.0, 1.0};
    const auto it = std::lower_bound(
        r.series.begin(), r.series.end(), t,
        [](const TimeSeriesRow& row, std::uint64_t x) { return row.iteration < x; });
    if (it == r.series.end() || it->iteration != t)
        throw std::logic_error("trial series missing shared sample point");
    return *it;
}

} // namespace

RhoAggregate run_trials(const ExperimentPlan& plan, double rho,
                        std::size_t rho_index) {
    plan.validate();
    const GameConfig cfg = plan.game_config(rho);
    cfg.validate(true);

    const SampleSchedule schedule = SampleSchedule::up_to(plan.max_iterations);
    std::vector<TrialData> trials(plan.trials);

    parallel_for_index(plan.trials, plan.threads, [&](std::size_t trial) {
        RandomStream graph_rng(
            derive_seed(plan.base_seed, kSeedGraph, rho_index, trial));
        const Graph g = generate(plan.network, graph_rng);
        RandomStream game_rng(
            derive_seed(plan.base_seed, kSeedGame, rho_index, trial));
        Sampler sampler =
            plan.record_series ? Sampler(&schedule) : Sampler();
        trials[trial].result = run(g, cfg, game_rng, std::move(sampler));
    });

    RhoAggregate agg;
    agg.rho = rho;
    agg.trials = plan.trials;
    agg.per_trial.reserve(plan.trials);

    double sum_conv = 0.0, sum_conv_sq = 0.0, sum_max_distinct = 0.0;
    std::uint64_t latest_end = 0;
    for (const auto& t : trials) {
        const RunResult& r = t.result;
        TrialSummary s;
        s.converged = r.converged;
        s.convergence_iteration = r.convergence_iteration.value_or(0);
        s.max_distinct_words = r.max_distinct_words;
        s.outcome_counts = r.outcome_counts;
        agg.per_trial.push_back(s);

        if (r.converged) {
            ++agg.converged_trials;
            const auto c = static_cast<double>(*r.convergence_iteration);
            sum_conv += c;
            sum_conv_sq += c * c;
        }
        sum_max_distinct += r.max_distinct_words;
        latest_end = std::max(latest_end, r.iterations);
    }

    agg.mean_max_distinct_words = sum_max_distinct / plan.trials;
    if (agg.converged_trials > 0) {
        const double k = agg.converged_trials;
        agg.mean_convergence_iterations = sum_conv / k;
        agg.stddev_convergence_iterations =
            k > 1 ? std::sqrt(std::max(
                        0.0, (sum_conv_sq - sum_conv * sum_conv / k) / (k - 1)))
                  : 0.0;
    } else {
        agg.mean_convergence_iterations = kNaN;
        agg.stddev_convergence_iterations = kNaN;
    }

    if (plan.record_series) {
        const double n = static_cast<double>(plan.network.num_nodes());
        for (std::uint64_t t : schedule.points()) {
            if (t > latest_end) break;
            double total = 0.0, distinct = 0.0, rate = 0.0;
            for (const auto& trial : trials) {
                const TimeSeriesRow row = contribution(trial.result, t, n);
                total += row.total_words;
                distinct += row.distinct_words;
                rate += row.success_rate;
            }
            agg.mean_series.push_back({t, total / plan.trials,
                                       distinct / plan.trials,
                                       rate / plan.trials});
        }
        // Final plateau row if every trial ended before the cap.
        if (agg.mean_series.empty() ||
            agg.mean_series.back().iteration < latest_end) {
            double total = 0.0, distinct = 0.0, rate = 0.0;
            for (const auto& trial : trials) {
                const TimeSeriesRow row =
                    contribution(trial.result, latest_end, n);
                total += row.total_words;
                distinct += row.distinct_words;
                rate += row.success_rate;
            }
            agg.mean_series.push_back({latest_end, total / plan.trials,
                                       distinct / plan.trials,
                                       rate / plan.trials});
        }
    }
    return agg;
}

std::vector<double> increment_table(const std::vector<RhoAggregate>& per_rho) {
    if (per_rho.empty())
        throw std::invalid_argument("increment_table: no aggregates");
    const auto baseline =
        std::find_if(per_rho.begin(), per_rho.end(),
                     [](const RhoAggregate& a) { return a.rho == 0.0; });
    if (baseline == per_rho.end())
        throw std::invalid_argument("increment_table: no rho = 0 baseline");
    if (baseline->converged_trials == 0)
        throw std::invalid_argument(
            "increment_table: baseline did not converge");
    const double t0 = baseline->mean_convergence_iterations;

    std::vector<double> increments;
    increments.reserve(per_rho.size());
    for (const auto& agg : per_rho) {
        if (agg.rho == 0.0)
            increments.push_back(0.0);
        else if (agg.converged_trials == 0)
            increments.push_back(kNaN);
        else
            increments.push_back(agg.mean_convergence_iterations / t0 - 1.0);
    }
    return increments;
}

std::array<int, 6> interval_histogram(const std::vector<double>& increments) {
    std::array<int, 6> bins{};
    for (double v : increments) {
        if (std::isnan(v))
            throw std::invalid_argument("interval_histogram: NaN increment");
        if (v < -0.2)
            ++bins[0];
        else if (v < -0.1)
            ++bins[1];
        else if (v < 0.0)
            ++bins[2];
        else if (v < 0.1)
            ++bins[3];
        else if (v < 0.2)
            ++bins[4];
        else
            ++bins[5];
    }
    return bins;
}

LinearFit linear_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("linear_fit: needs at least 3 points");
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("linear_fit: all x values equal");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r_squared = 0.0; // constant response: no variance explained
    } else {
        double ss_res = 0.0;
        for (auto [x, y] : points) {
            const double e = y - (fit.slope * x + fit.intercept);
            ss_res += e * e;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

SweepResult run_sweep(const ExperimentPlan& plan) {
    plan.validate();
    SweepResult sweep;
    sweep.per_rho.reserve(plan.error_rates.size());
    for (std::size_t i = 0; i < plan.error_rates.size(); ++i)
        sweep.per_rho.push_back(run_trials(plan, plan.error_rates[i], i));

    sweep.increments = increment_table(sweep.per_rho);
    std::vector<double> defined;
    for (std::size_t i = 0; i < sweep.increments.size(); ++i) {
        const double inc = sweep.increments[i];
        if (sweep.per_rho[i].rho == 0.0 || std::isnan(inc)) continue;
        defined.push_back(inc);
        if (inc > 0.0) ++sweep.positive_increments;
        if (inc < 0.0) ++sweep.negative_increments;
    }
    sweep.interval_counts = interval_histogram(defined);

    std::vector<std::pair<double, double>> fit_points;
    for (const auto& agg : sweep.per_rho)
        if (agg.rho >= 0.1) fit_points.emplace_back(agg.rho,
                                                    agg.mean_max_distinct_words);
    if (fit_points.size() >= 3) sweep.max_distinct_fit = linear_fit(fit_points);
    return sweep;
}

BoxSummary box_summary(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("box_summary: no values");
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double p) {
        const double pos = p * (values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - lo;
        if (lo + 1 >= values.size()) return values.back();
        return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
    };
    BoxSummary box;
    box.median = quantile(0.5);
    box.q1 = quantile(0.25);
    box.q3 = quantile(0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_low = box.q3;
    box.whisker_high = box.q1;
    bool any_inside = false;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            box.outliers.push_back(v);
        } else {
            if (!any_inside) {
                box.whisker_low = v;
                any_inside = true;
            }
            box.whisker_high = v;
        }
    }
    if (!any_inside) { // degenerate: fences exclude everything
        box.whisker_low = box.q1;
        box.whisker_high = box.q3;
    }
    return box;
}

ThresholdResult find_threshold(const ExperimentPlan& plan,
                               const AttemptRunner& runner) {
    plan.validate();
    if (plan.error_mode != ErrorMode::Persistent)
        throw std::invalid_argument(
            "find_threshold: requires the persistent error mode");

    ThresholdResult result;
    result.thresholds.assign(plan.trials, kNaN);
    std::vector<char> censored(plan.trials, 0);

    parallel_for_index(plan.trials, plan.threads, [&](std::size_t trial) {
        for (int attempt = 0;; ++attempt) {
            const double rho = attempt * plan.threshold_step;
            if (rho > 0.5) { // scanned the whole admissible range
                censored[trial] = 1;
                return;
            }
            if (!runner(rho, static_cast<int>(trial), attempt)) {
                result.thresholds[trial] = rho;
                return;
            }
        }
    });

    std::vector<double> ok;
    for (int t = 0; t < plan.trials; ++t) {
        if (censored[t])
            result.censored_trials.push_back(t);
        else
            ok.push_back(result.thresholds[t]);
    }
    if (!ok.empty()) result.box = box_summary(std::move(ok));
    return result;
}

ThresholdResult find_threshold(const ExperimentPlan& plan) {
    const AttemptRunner real = [&plan](double rho, int trial, int attempt) {
        const std::uint64_t graph_attempt =
            plan.fixed_graph_per_trial ? 0 : static_cast<std::uint64_t>(attempt);
        RandomStream graph_rng(derive_seed(plan.base_seed, kSeedGraph,
                                           static_cast<std::uint64_t>(trial),
                                           graph_attempt));
        const Graph g = generate(plan.network, graph_rng);
        RandomStream game_rng(derive_seed(plan.base_seed, kSeedGame,
                                          static_cast<std::uint64_t>(trial),
                                          static_cast<std::uint64_t>(attempt)));
        GameConfig cfg = plan.game_config(rho);
        return run(g, cfg, game_rng).converged;
    };
    return find_threshold(plan, real);
}

} // namespace ngle
