#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ngle/experiment.hpp"
#include "ngle/io.hpp"

namespace py = pybind11;
using namespace ngle;

namespace {

NetworkSpec make_er(NodeId n, double p) {
    NetworkSpec s;
    s.variant = ErdosRenyi{n, p};
    return s;
}
NetworkSpec make_ws(NodeId n, std::uint32_t k, double rp) {
    NetworkSpec s;
    s.variant = WattsStrogatz{n, k, rp};
    return s;
}
NetworkSpec make_ba(NodeId n, std::uint32_t m0, std::uint32_t m) {
    NetworkSpec s;
    s.variant = BarabasiAlbert{n, m0, m};
    return s;
}

py::dict run_result_dict(const RunResult& r) {
    py::dict d;
    d["converged"] = r.converged;
    d["convergence_iteration"] =
        r.converged ? py::cast(*r.convergence_iteration) : py::none();
    d["iterations"] = r.iterations;
    d["max_distinct_words"] = r.max_distinct_words;
    d["final_total_words"] = r.final_total_words;
    d["final_distinct_words"] = r.final_distinct_words;
    py::dict counts;
    counts["failure_no_error"] = r.outcome_counts[0];
    counts["consensus"] = r.outcome_counts[1];
    counts["failure_with_error"] = r.outcome_counts[2];
    counts["pseudo_consensus"] = r.outcome_counts[3];
    d["outcome_counts"] = counts;
    py::list series;
    for (const auto& row : r.series)
        series.append(py::make_tuple(row.iteration, row.total_words,
                                     row.distinct_words, row.success_rate));
    d["series"] = series;
    return d;
}

} // namespace

PYBIND11_MODULE(_ngle, m) {
    m.doc() = "Naming game with learning errors: network generation, game "
              "dynamics, sweeps and threshold scans";

    py::class_<Graph>(m, "Graph")
        .def_property_readonly("n", &Graph::num_nodes)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("degree", &Graph::degree, py::arg("node"))
        .def("neighbors",
             [](const Graph& g, NodeId v) {
                 const auto nb = g.neighbors(v);
                 return std::vector<NodeId>(nb.begin(), nb.end());
             },
             py::arg("node"))
        .def("has_edge", &Graph::has_edge)
        .def("edge_list", &Graph::edge_list)
        .def("average_degree", [](const Graph& g) { return average_degree(g); })
        .def("average_path_length",
             [](const Graph& g) { return average_path_length(g); })
        .def("clustering_coefficient",
             [](const Graph& g) { return clustering_coefficient(g); })
        .def("is_connected", [](const Graph& g) { return is_connected(g); })
        .def_static("from_edges", &Graph::from_edges, py::arg("n"),
                    py::arg("edges"))
        .def("to_edge_list_text", [](const Graph& g) {
            std::ostringstream os;
            write_edge_list(g, os);
            return os.str();
        });

    py::class_<NetworkSpec>(m, "NetworkSpec")
        .def_property_readonly("label", &NetworkSpec::label)
        .def_property_readonly("n", &NetworkSpec::num_nodes);
    m.def("erdos_renyi", &make_er, py::arg("n"), py::arg("p"));
    m.def("watts_strogatz", &make_ws, py::arg("n"), py::arg("k"),
          py::arg("rp"));
    m.def("barabasi_albert", &make_ba, py::arg("n"), py::arg("m0"),
          py::arg("m"));
    m.def(
        "generate",
        [](const NetworkSpec& spec, std::uint64_t seed) {
            RandomStream rng(seed);
            return generate(spec, rng);
        },
        py::arg("spec"), py::arg("seed"));

    py::enum_<ErrorMode>(m, "ErrorMode")
        .value("LEARNING", ErrorMode::Learning)
        .value("PERSISTENT", ErrorMode::Persistent);

    m.def(
        "run_game",
        [](const Graph& g, double error_rate, ErrorMode mode,
           std::uint32_t vocab_size, std::uint64_t max_iterations,
           std::uint64_t seed, bool record_series) {
            GameConfig cfg;
            cfg.error_rate = error_rate;
            cfg.vocab = Vocabulary(vocab_size);
            cfg.error_mode = mode;
            cfg.max_iterations = max_iterations;
            cfg.validate(true);
            RandomStream rng(seed);
            py::gil_scoped_release release;
            const RunResult r = record_series
                                    ? run_recorded(g, cfg, rng)
                                    : run(g, cfg, rng);
            py::gil_scoped_acquire acquire;
            return run_result_dict(r);
        },
        py::arg("graph"), py::arg("error_rate") = 0.0,
        py::arg("mode") = ErrorMode::Learning, py::arg("vocab_size") = 10'000,
        py::arg("max_iterations") = 10'000'000, py::arg("seed") = 1,
        py::arg("record_series") = true);

    py::class_<ExperimentPlan>(m, "ExperimentPlan")
        .def(py::init<>())
        .def_readwrite("network", &ExperimentPlan::network)
        .def_readwrite("error_rates", &ExperimentPlan::error_rates)
        .def_readwrite("trials", &ExperimentPlan::trials)
        .def_readwrite("error_mode", &ExperimentPlan::error_mode)
        .def_readwrite("base_seed", &ExperimentPlan::base_seed)
        .def_readwrite("max_iterations", &ExperimentPlan::max_iterations)
        .def_readwrite("vocab_size", &ExperimentPlan::vocab_size)
        .def_readwrite("threshold_step", &ExperimentPlan::threshold_step)
        .def_readwrite("fixed_graph_per_trial",
                       &ExperimentPlan::fixed_graph_per_trial)
        .def_readwrite("record_series", &ExperimentPlan::record_series)
        .def_readwrite("threads", &ExperimentPlan::threads);

    m.def("studied_error_rates", &studied_error_rates);

    m.def(
        "run_trials",
        [](const ExperimentPlan& plan, double rho, std::size_t rho_index) {
            py::gil_scoped_release release;
            const RhoAggregate agg = run_trials(plan, rho, rho_index);
            py::gil_scoped_acquire acquire;
            py::dict d;
            d["rho"] = agg.rho;
            d["trials"] = agg.trials;
            d["converged_trials"] = agg.converged_trials;
            d["mean_convergence_iterations"] = agg.mean_convergence_iterations;
            d["stddev_convergence_iterations"] =
                agg.stddev_convergence_iterations;
            d["mean_max_distinct_words"] = agg.mean_max_distinct_words;
            py::list series;
            for (const auto& row : agg.mean_series)
                series.append(py::make_tuple(row.iteration, row.total_words,
                                             row.distinct_words,
                                             row.success_rate));
            d["mean_series"] = series;
            return d;
        },
        py::arg("plan"), py::arg("rho"), py::arg("rho_index") = 0);

    m.def(
        "run_sweep",
        [](const ExperimentPlan& plan) {
            py::gil_scoped_release release;
            const SweepResult sweep = run_sweep(plan);
            py::gil_scoped_acquire acquire;
            py::dict d;
            py::list per_rho;
            for (const auto& agg : sweep.per_rho) {
                py::dict a;
                a["rho"] = agg.rho;
                a["converged_trials"] = agg.converged_trials;
                a["mean_convergence_iterations"] =
                    agg.mean_convergence_iterations;
                a["mean_max_distinct_words"] = agg.mean_max_distinct_words;
                per_rho.append(a);
            }
            d["per_rho"] = per_rho;
            d["increments"] = sweep.increments;
            d["positive_increments"] = sweep.positive_increments;
            d["negative_increments"] = sweep.negative_increments;
            d["interval_histogram"] = std::vector<int>(
                sweep.interval_counts.begin(), sweep.interval_counts.end());
            if (sweep.max_distinct_fit) {
                d["max_distinct_fit"] = py::make_tuple(
                    sweep.max_distinct_fit->slope,
                    sweep.max_distinct_fit->intercept,
                    sweep.max_distinct_fit->r_squared);
            } else {
                d["max_distinct_fit"] = py::none();
            }
            return d;
        },
        py::arg("plan"));

    m.def("linear_fit", [](const std::vector<std::pair<double, double>>& pts) {
        const LinearFit f = linear_fit(pts);
        return py::make_tuple(f.slope, f.intercept, f.r_squared);
    });

    m.def("interval_histogram", [](const std::vector<double>& increments) {
        const auto bins = interval_histogram(increments);
        return std::vector<int>(bins.begin(), bins.end());
    });

    m.def(
        "find_threshold",
        [](const ExperimentPlan& plan) {
            py::gil_scoped_release release;
            const ThresholdResult r = find_threshold(plan);
            py::gil_scoped_acquire acquire;
            py::dict d;
            d["thresholds"] = r.thresholds;
            d["censored_trials"] = r.censored_trials;
            py::dict box;
            box["median"] = r.box.median;
            box["q1"] = r.box.q1;
            box["q3"] = r.box.q3;
            box["whisker_low"] = r.box.whisker_low;
            box["whisker_high"] = r.box.whisker_high;
            box["outliers"] = r.box.outliers;
            d["box"] = box;
            return d;
        },
        py::arg("plan"));
}
