#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qspectral/graph.hpp"
#include "qspectral/laplacian.hpp"
#include "qspectral/pipeline.hpp"

namespace {

using namespace qspectral;

struct CommonOpts {
    std::string kind = "moons";
    std::string csv;
    int n = 256;
    int d = 8;
    int lambda_exp = 9;
    std::string backend = "ideal";
    std::uint64_t seed = 7;
    int shots = 0;
    int restarts = 10;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--kind", opts.kind, "dataset kind: moons|blobs|rings|file");
    cmd->add_option("--csv", opts.csv, "input CSV when --kind file");
    cmd->add_option("--n", opts.n, "number of points (power of two)");
    cmd->add_option("--d", opts.d, "neighborhood parameter");
    cmd->add_option("--lambda-exp", opts.lambda_exp,
                    "threshold exponent e, lambda = 2^-e");
    cmd->add_option("--backend", opts.backend, "ideal|dense");
    cmd->add_option("--seed", opts.seed, "master seed");
    cmd->add_option("--shots", opts.shots, "shots per expectation (0 = exact)");
    cmd->add_option("--restarts", opts.restarts, "hill-climb restarts");
    cmd->add_option("--out", opts.out, "output path");
    cmd->add_option("--format", opts.format, "json|csv|svg");
}

RunParams to_params(const CommonOpts& opts) {
    RunParams p;
    p.kind = parse_dataset_kind(opts.kind);
    p.csv_path = opts.csv;
    p.n = opts.n;
    p.d = opts.d;
    p.lambda_exp = opts.lambda_exp;
    p.backend = parse_backend(opts.backend);
    p.seed = opts.seed;
    p.shots = opts.shots;
    p.restarts = opts.restarts;
    return p;
}

ReportFormat to_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "svg") return ReportFormat::svg;
    throw std::invalid_argument("unknown format: " + name);
}

void emit(const RunReport& report, const CommonOpts& opts) {
    if (opts.out.empty()) {
        std::cout << report_to_json(report) << "\n";
    } else {
        export_report(report, to_format(opts.format), opts.out);
        std::cout << "wrote " << opts.out << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum spectral clustering simulator"};
    app.require_subcommand(1);

    CommonOpts gen_opts, graph_opts, cluster_opts, count_opts, base_opts, bench_opts;
    std::string base_method = "classical_spectral";

    auto* gen = app.add_subcommand("gen-data", "generate a dataset CSV");
    add_common(gen, gen_opts);
    auto* graph_cmd = app.add_subcommand("graph", "build the mutual kNN graph");
    add_common(graph_cmd, graph_opts);
    auto* cluster = app.add_subcommand("cluster", "run the full quantum pipeline");
    add_common(cluster, cluster_opts);
    auto* count = app.add_subcommand("count", "run quantum counting only");
    add_common(count, count_opts);
    auto* baseline = app.add_subcommand("baseline", "run a classical baseline");
    add_common(baseline, base_opts);
    baseline->add_option("--method", base_method, "kmeans_raw|classical_spectral");
    auto* bench = app.add_subcommand("bench", "wall-clock trend over sizes");
    add_common(bench, bench_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            const RunParams p = to_params(gen_opts);
            const Dataset data =
                generate_dataset(p.kind, p.n, p.seed, p.gen);
            const std::string out =
                gen_opts.out.empty() ? "dataset.csv" : gen_opts.out;
            save_dataset_csv(data, out);
            std::cout << "wrote " << out << "\n";
        } else if (graph_cmd->parsed()) {
            const RunParams p = to_params(graph_opts);
            const Dataset data = p.kind == DatasetKind::file
                                     ? load_dataset(p.csv_path)
                                     : generate_dataset(p.kind, p.n, p.seed, p.gen);
            const SimilarityGraph g = build_knn_graph(data, p.d);
            const ComponentLabeling comps = connected_components(g);
            std::cout << "nodes=" << g.n_nodes << " edges=" << g.edges.size()
                      << " components=" << comps.count << "\n";
            if (!graph_opts.out.empty()) {
                export_edge_list(g, graph_opts.out);
                std::cout << "wrote " << graph_opts.out << "\n";
            }
        } else if (cluster->parsed()) {
            emit(run_pipeline(to_params(cluster_opts)), cluster_opts);
        } else if (count->parsed()) {
            const RunReport report = run_pipeline(to_params(count_opts));
            std::cout << "k=" << report.k << "\n";
        } else if (baseline->parsed()) {
            const BaselineMethod method = base_method == "kmeans_raw"
                                              ? BaselineMethod::kmeans_raw
                                              : BaselineMethod::classical_spectral;
            emit(run_baseline(to_params(base_opts), method), base_opts);
        } else if (bench->parsed()) {
            for (int n : {16, 32, 64, 128, 256}) {
                RunParams p = to_params(bench_opts);
                p.n = n;
                p.kind = DatasetKind::blobs;
                const auto start = std::chrono::steady_clock::now();
                const RunReport report = run_pipeline(p);
                const double ms = std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
                std::cout << "n=" << n << " k=" << report.k << " wall_ms=" << ms
                          << "\n";
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
