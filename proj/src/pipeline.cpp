#include "qspectral/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qspectral/graph.hpp"
#include "qspectral/hill_climb.hpp"
#include "qspectral/indicator.hpp"
#include "qspectral/laplacian.hpp"
#include "qspectral/metrics.hpp"
#include "qspectral/spectrum.hpp"

namespace qspectral {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Fn>
auto stage(RunReport& report, const std::string& name, Fn&& fn) {
    const auto start = Clock::now();
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            report.timings_ms[name] = ms_since(start);
        } else {
            auto value = fn();
            report.timings_ms[name] = ms_since(start);
            return value;
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("stage " + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error("stage " + name + ": " + e.what());
    }
}

int log2_exact(int v) {
    int n = 0;
    while ((1 << n) < v) ++n;
    if ((1 << n) != v)
        throw std::invalid_argument("dataset size is not a power of two");
    return n;
}

Dataset make_dataset(const RunParams& params) {
    if (params.kind == DatasetKind::file) return load_dataset(params.csv_path);
    return generate_dataset(params.kind, params.n, params.seed, params.gen);
}

std::vector<int> truncate_labels(const std::vector<int>& labels, int original_n) {
    return {labels.begin(), labels.begin() + original_n};
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

double RunParams::lambda_threshold() const { return std::ldexp(1.0, -lambda_exp); }

RunReport run_pipeline(const RunParams& params) {
    RunReport report;
    report.params = params;
    report.backend_id = "qspectral-" + backend_name(params.backend) + "-sim";

    const Dataset data = stage(report, "dataset", [&] { return make_dataset(params); });
    report.points = data.points.topRows(data.original_n);

    const SimilarityGraph graph =
        stage(report, "graph", [&] { return build_knn_graph(data, params.d); });
    const ComponentLabeling comps =
        stage(report, "components", [&] { return connected_components(graph); });
    report.component_labels = truncate_labels(comps.labels, data.original_n);

    const Laplacian lap =
        stage(report, "laplacian", [&] { return build_laplacian(graph); });

    const int n = log2_exact(data.n_points());
    RegisterLayout layout = default_layout(n);
    if (params.t_override > 0) layout.t = params.t_override;
    if (params.t_prime_override > 0) layout.t_prime = params.t_prime_override;

    const ThresholdOracle oracle{params.lambda_threshold(), layout.t};

    const QuantumState psi_pe = stage(report, "qpe", [&] {
        const QuantumState psi0 = prepare_entangled_state(layout, params.backend);
        return apply_qpe(psi0, lap.rescaled, layout);
    });

    const CountingResult counting = stage(report, "counting", [&] {
        return quantum_counting(psi_pe, oracle, layout.t_prime, params.backend);
    });
    report.k = counting.k_estimate;
    if (report.k < 1)
        throw std::runtime_error("stage counting: no eigenvalues below threshold");

    const DensityMatrix rho = stage(report, "grover", [&] {
        const int r = grover_iteration_count(report.k, data.n_points());
        return reduced_density(grover_run(psi_pe, oracle, r));
    });

    const ClimbResult climb = stage(report, "hill_climb", [&] {
        ClimbConfig cfg;
        cfg.restarts = params.restarts;
        cfg.seed = params.seed;
        cfg.shots = params.shots;
        return hill_climb(rho, report.k, cfg);
    });
    report.objective_value = climb.value;
    report.labels = truncate_labels(climb.partition.labels, data.original_n);
    report.ari_vs_components =
        adjusted_rand_index(report.labels, report.component_labels);
    return report;
}

RunReport run_baseline(const RunParams& params, BaselineMethod method) {
    RunReport report;
    report.params = params;
    report.backend_id = "classical-baseline";
    report.baseline_method =
        method == BaselineMethod::kmeans_raw ? "kmeans_raw" : "classical_spectral";

    const Dataset data = stage(report, "dataset", [&] { return make_dataset(params); });
    report.points = data.points.topRows(data.original_n);

    const SimilarityGraph graph =
        stage(report, "graph", [&] { return build_knn_graph(data, params.d); });
    const ComponentLabeling comps =
        stage(report, "components", [&] { return connected_components(graph); });
    report.component_labels = truncate_labels(comps.labels, data.original_n);

    const Laplacian lap =
        stage(report, "laplacian", [&] { return build_laplacian(graph); });

    // Cluster count from the dense spectrum, matching the counting stage.
    const int k = stage(report, "spectrum", [&] {
        const Spectrum s = eigen_decompose(lap.rescaled);
        int count = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s.values(i) < params.lambda_threshold()) ++count;
        return count;
    });
    report.k = k;
    if (k < 1) throw std::runtime_error("stage spectrum: no eigenvalues below threshold");

    const Partition partition = stage(report, "baseline", [&] {
        if (method == BaselineMethod::kmeans_raw)
            return kmeans(data.points, k, params.seed);
        return classical_spectral_cluster(lap, k, params.seed);
    });

    report.labels = truncate_labels(partition.labels, data.original_n);
    report.baseline_labels = report.labels;
    report.ari_vs_components =
        adjusted_rand_index(report.labels, report.component_labels);
    report.baseline_ari_vs_components = report.ari_vs_components;
    return report;
}

std::string report_to_json(const RunReport& report, bool include_timings) {
    nlohmann::ordered_json j;
    j["params"] = {
        {"kind", dataset_kind_name(report.params.kind)},
        {"csv_path", report.params.csv_path},
        {"n", report.params.n},
        {"d", report.params.d},
        {"lambda_exp", report.params.lambda_exp},
        {"backend", backend_name(report.params.backend)},
        {"seed", report.params.seed},
        {"shots", report.params.shots},
        {"restarts", report.params.restarts},
    };
    j["backend_id"] = report.backend_id;
    j["k"] = report.k;
    j["objective_value"] = report.objective_value;
    j["labels"] = report.labels;
    j["component_labels"] = report.component_labels;
    j["ari_vs_components"] = report.ari_vs_components;
    if (report.baseline_labels) {
        j["baseline_method"] = report.baseline_method;
        j["baseline_labels"] = *report.baseline_labels;
        j["baseline_ari_vs_components"] = report.baseline_ari_vs_components;
    }
    if (include_timings) j["timings_ms"] = report.timings_ms;
    return j.dump(2);
}

void export_report(const RunReport& report, ReportFormat format,
                   const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_report: cannot write " + path);

    switch (format) {
        case ReportFormat::json:
            out << report_to_json(report) << '\n';
            return;
        case ReportFormat::csv: {
            out.precision(17);
            for (std::size_t i = 0; i < report.labels.size(); ++i) {
                const double x = report.points(i, 0);
                const double y = report.points.cols() > 1 ? report.points(i, 1) : 0.0;
                out << x << ',' << y << ',' << report.labels[i] << '\n';
            }
            return;
        }
        case ReportFormat::svg: {
            const int width = 640, height = 480, margin = 20;
            double x0 = report.points.col(0).minCoeff();
            double x1 = report.points.col(0).maxCoeff();
            double y0 = 0.0, y1 = 1.0;
            if (report.points.cols() > 1) {
                y0 = report.points.col(1).minCoeff();
                y1 = report.points.col(1).maxCoeff();
            }
            if (x1 <= x0) x1 = x0 + 1.0;
            if (y1 <= y0) y1 = y0 + 1.0;
            out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
                << "\" height=\"" << height << "\">\n";
            for (std::size_t i = 0; i < report.labels.size(); ++i) {
                const double px = report.points(i, 0);
                const double py = report.points.cols() > 1 ? report.points(i, 1) : 0.5;
                const double sx =
                    margin + (px - x0) / (x1 - x0) * (width - 2 * margin);
                const double sy =
                    height - margin - (py - y0) / (y1 - y0) * (height - 2 * margin);
                const char* color = kPalette[report.labels[i] % 8];
                out << "  <circle cx=\"" << sx << "\" cy=\"" << sy
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
            out << "</svg>\n";
            return;
        }
    }
}

}  // namespace qspectral
