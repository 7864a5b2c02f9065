#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qspectral/dataset.hpp"
#include "qspectral/qsim.hpp"

namespace qspectral {

struct RunParams {
    DatasetKind kind = DatasetKind::moons;
    std::string csv_path;  // used when kind == file
    int n = 256;
    int d = 8;
    int lambda_exp = 9;  // threshold = 2^-lambda_exp
    Backend backend = Backend::ideal;
    std::uint64_t seed = 7;
    int shots = 0;  // 0 = exact expectation values
    int restarts = 10;
    int t_override = 0;        // 0 = default layout formula
    int t_prime_override = 0;  // 0 = |dk| < 0.5 sizing rule
    GeneratorParams gen;

    double lambda_threshold() const;
};

enum class BaselineMethod { kmeans_raw, classical_spectral };

struct RunReport {
    RunParams params;
    int k = 1;
    double objective_value = 0.0;
    std::vector<int> labels;            // length = original (pre-pad) N
    std::vector<int> component_labels;  // graph components, same length
    std::optional<std::vector<int>> baseline_labels;
    std::string baseline_method;
    double ari_vs_components = 0.0;
    double baseline_ari_vs_components = 0.0;
    std::map<std::string, double> timings_ms;
    std::string backend_id;
    Eigen::MatrixXd points;  // original points, for csv/svg export
};

/// Full quantum pipeline: graph -> Laplacian -> entangled state -> QPE ->
/// counting -> Grover -> reduced density -> hill climb -> partition.
/// Stage failures rethrow with the stage name attached.
RunReport run_pipeline(const RunParams& params);

/// Classical reference runs over the same dataset/graph.
RunReport run_baseline(const RunParams& params, BaselineMethod method);

enum class ReportFormat { json, csv, svg };

void export_report(const RunReport& report, ReportFormat format,
                   const std::string& path);

/// JSON body with timings stripped; equal configs produce equal strings.
std::string report_to_json(const RunReport& report, bool include_timings = true);

}  // namespace qspectral
