#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qspectral/metrics.hpp"
#include "qspectral/pipeline.hpp"
#include "qspectral/spectrum.hpp"
#include "qspectral/laplacian.hpp"
#include "qspectral/graph.hpp"

using namespace qspectral;

namespace {

// 64 points in two well-separated groups of 32 identical points each.
// With d=32 the mutual kNN graph is two K_32 cliques, whose rescaled
// eigenvalues {0, 0.5} are exactly representable with t=4.
std::string write_clique_csv() {
    const std::string path = "pipeline_cliques.csv";
    std::ofstream out(path);
    for (int g = 0; g < 2; ++g)
        for (int i = 0; i < 32; ++i) out << g * 10.0 << "," << 0.0 << "\n";
    return path;
}

RunParams clique_params(const std::string& csv, Backend backend) {
    RunParams p;
    p.kind = DatasetKind::file;
    p.csv_path = csv;
    p.n = 64;
    p.d = 32;
    p.lambda_exp = 2;  // threshold 0.25 marks only the zero eigenvalues
    p.t_override = 4;
    p.backend = backend;
    p.seed = 5;
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("pipeline recovers the clique components on both backends") {
    const std::string csv = write_clique_csv();
    std::vector<std::vector<int>> labels;
    for (Backend backend : {Backend::ideal, Backend::dense}) {
        const RunReport report = run_pipeline(clique_params(csv, backend));
        CHECK(report.k == 2);
        // r = 5 Grover iterations leave sin^2(11 theta / 2) = 0.857 of the
        // weight on the component eigenvectors; the component partition
        // still maximizes the objective.
        CHECK(report.objective_value >= 0.85);
        CHECK(report.objective_value <= 1.0);
        CHECK(report.ari_vs_components == doctest::Approx(1.0));
        CHECK(report.labels.size() == 64);
        labels.push_back(report.labels);
    }
    CHECK(labels[0] == labels[1]);
    std::remove(csv.c_str());
}

TEST_CASE("report_to_json without timings is reproducible byte-for-byte") {
    const std::string csv = write_clique_csv();
    const RunReport a = run_pipeline(clique_params(csv, Backend::ideal));
    const RunReport b = run_pipeline(clique_params(csv, Backend::ideal));
    CHECK(report_to_json(a, false) == report_to_json(b, false));
    // Timings vary between runs but the payload must not.
    CHECK(report_to_json(a, false).find("timings") == std::string::npos);
    CHECK(report_to_json(a, true).find("timings") != std::string::npos);
    std::remove(csv.c_str());
}

TEST_CASE("moons defaults give two clusters matching the components") {
    RunParams p;  // moons, N=256, d=8, lambda 2^-9, ideal, seed 7
    const RunReport report = run_pipeline(p);
    CHECK(report.k == 2);
    CHECK(report.ari_vs_components == doctest::Approx(1.0));
    CHECK(report.backend_id == "qspectral-ideal-sim");

    // Reported k must equal the dense count of eigenvalues below threshold.
    const Dataset data = generate_dataset(p.kind, p.n, p.seed, p.gen);
    const Laplacian lap = build_laplacian(build_knn_graph(data, p.d));
    const Spectrum s = eigen_decompose(lap.rescaled);
    int below = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s.values(i) < p.lambda_threshold()) ++below;
    CHECK(report.k == below);
}

TEST_CASE("export formats") {
    const std::string csv = write_clique_csv();
    const RunReport report = run_pipeline(clique_params(csv, Backend::ideal));

    export_report(report, ReportFormat::json, "pipeline_out.json");
    const std::string json = slurp("pipeline_out.json");
    CHECK(json.find("\"k\"") != std::string::npos);
    CHECK(json.find("\"labels\"") != std::string::npos);

    export_report(report, ReportFormat::csv, "pipeline_out.csv");
    std::ifstream cf("pipeline_out.csv");
    std::string line, first;
    int rows = 0;
    while (std::getline(cf, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (rows == 0) first = line;
        ++rows;
    }
    CHECK(rows == 64);
    CHECK(std::count(first.begin(), first.end(), ',') == 2);  // x,y,label

    export_report(report, ReportFormat::svg, "pipeline_out.svg");
    const std::string svg = slurp("pipeline_out.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++circles;
        pos += 7;
    }
    CHECK(circles == 64);

    for (const char* f : {"pipeline_out.json", "pipeline_out.csv",
                          "pipeline_out.svg"})
        std::remove(f);
    std::remove(csv.c_str());
}

TEST_CASE("baseline runs label the clique dataset perfectly") {
    const std::string csv = write_clique_csv();
    const RunParams p = clique_params(csv, Backend::ideal);
    const RunReport spectral = run_baseline(p, BaselineMethod::classical_spectral);
    CHECK(spectral.baseline_labels.has_value());
    CHECK(spectral.baseline_ari_vs_components == doctest::Approx(1.0));
    const RunReport raw = run_baseline(p, BaselineMethod::kmeans_raw);
    CHECK(raw.baseline_ari_vs_components == doctest::Approx(1.0));
    std::remove(csv.c_str());
}

TEST_CASE("stage failures carry the stage name") {
    RunParams p;
    p.kind = DatasetKind::file;
    p.csv_path = "definitely_missing_file.csv";
    CHECK_THROWS_WITH_AS(run_pipeline(p), doctest::Contains("stage dataset"),
                         std::runtime_error);
    RunParams bad_n;
    bad_n.n = 100;  // not a power of two
    CHECK_THROWS_AS(run_pipeline(bad_n), std::invalid_argument);
}
