#include "qspectral/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qspectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void clip_to_bbox(Eigen::MatrixXd& pts, const Eigen::MatrixXd& bbox) {
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        for (Eigen::Index c = 0; c < pts.cols(); ++c)
            pts(i, c) = std::clamp(pts(i, c), bbox(0, c), bbox(1, c));
}

// Jittered lattice along a circular band: `rows` radial rows, arc from
// arc_lo*pi to arc_hi*pi, radius 1 +- width. Dense, evenly covered bands
// keep the mutual kNN graph connected with a healthy Fiedler value.
Eigen::MatrixXd band_arc(int count, int rows, double width, double arc_lo,
                         double arc_hi, double jitter, double cx, double cy,
                         double radius, bool flip, std::mt19937_64& rng) {
    Eigen::MatrixXd pts(count, 2);
    const int cols = std::max(1, count / rows);
    const double sgn = flip ? -1.0 : 1.0;
    for (int i = 0; i < count; ++i) {
        const int col = std::min(i / rows, cols - 1);
        const int row = i % rows;
        double t = arc_lo + (arc_hi - arc_lo) * (col + 0.5) / cols;
        double r = 1.0 - width + 2.0 * width * (row + 0.5) / rows;
        t += uniform(rng, -jitter, jitter) * (arc_hi - arc_lo) / cols;
        r += uniform(rng, -jitter, jitter) * 2.0 * width / rows;
        pts(i, 0) = cx + sgn * radius * r * std::cos(t * kPi);
        pts(i, 1) = cy + sgn * radius * r * std::sin(t * kPi);
    }
    return pts;
}

// Jittered square grid filling a blob of half-side `radius`.
Eigen::MatrixXd grid_blob(int count, double cx, double cy, double radius,
                          double jitter, std::mt19937_64& rng) {
    Eigen::MatrixXd pts(count, 2);
    const int side = static_cast<int>(std::ceil(std::sqrt(double(count))));
    int placed = 0;
    for (int gx = 0; gx < side && placed < count; ++gx) {
        for (int gy = 0; gy < side && placed < count; ++gy) {
            double x = (gx + 0.5) / side * 2.0 - 1.0;
            double y = (gy + 0.5) / side * 2.0 - 1.0;
            x += uniform(rng, -jitter, jitter) * 2.0 / side;
            y += uniform(rng, -jitter, jitter) * 2.0 / side;
            pts(placed, 0) = cx + x * radius;
            pts(placed, 1) = cy + y * radius;
            ++placed;
        }
    }
    return pts;
}

Eigen::MatrixXd bbox2d(double x0, double x1, double y0, double y1) {
    Eigen::MatrixXd b(2, 2);
    b << x0, y0, x1, y1;
    return b;
}

std::vector<std::pair<double, double>> blob_centers(int count) {
    static const std::vector<std::pair<double, double>> fixed = {
        {-3.0, 0.0}, {4.0, 0.0}, {1.0, 4.5}, {-4.5, 4.5}};
    if (count <= static_cast<int>(fixed.size()))
        return {fixed.begin(), fixed.begin() + count};
    std::vector<std::pair<double, double>> centers;
    for (int i = 0; i < count; ++i) {
        const double a = 2.0 * kPi * i / count;
        centers.emplace_back(1.0 + 5.0 * std::cos(a), 2.0 + 3.0 * std::sin(a));
    }
    return centers;
}

}  // namespace

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

Dataset generate_dataset(DatasetKind kind, int n_points, std::int64_t seed,
                         const GeneratorParams& params) {
    if (!is_power_of_two(n_points))
        throw std::invalid_argument(
            "generate_dataset: n_points must be a power of two, got " +
            std::to_string(n_points));
    if (kind == DatasetKind::file)
        throw std::invalid_argument("generate_dataset: kind 'file' needs load_dataset");

    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    Dataset data;
    data.seed = seed;
    data.kind = kind;
    data.original_n = n_points;

    switch (kind) {
        case DatasetKind::moons: {
            const int n1 = n_points / 2;
            Eigen::MatrixXd a =
                band_arc(n1, params.band_rows, params.band_width, params.arc_lo,
                         params.arc_hi, params.jitter, 0.0, 0.0, 1.0, false, rng);
            Eigen::MatrixXd b =
                band_arc(n_points - n1, params.band_rows, params.band_width,
                         params.arc_lo, params.arc_hi, params.jitter, 1.0, 0.5,
                         1.0, true, rng);
            data.points.resize(n_points, 2);
            data.points << a, b;
            data.bbox = bbox2d(-1.5, 2.5, -1.0, 1.5);
            break;
        }
        case DatasetKind::blobs: {
            const auto centers = blob_centers(std::max(1, params.centers));
            const int k = static_cast<int>(centers.size());
            data.points.resize(n_points, 2);
            int offset = 0;
            for (int c = 0; c < k; ++c) {
                const int m = n_points / k + (c < n_points % k ? 1 : 0);
                data.points.middleRows(offset, m) = grid_blob(
                    m, centers[c].first, centers[c].second, params.blob_radius,
                    params.jitter, rng);
                offset += m;
            }
            data.bbox = bbox2d(-6.0, 8.0, -2.0, 6.0);
            break;
        }
        case DatasetKind::rings: {
            const int k = std::max(1, params.n_rings);
            data.points.resize(n_points, 2);
            int offset = 0;
            for (int c = 0; c < k; ++c) {
                const int m = n_points / k + (c < n_points % k ? 1 : 0);
                const double radius = 0.6 + 0.7 * c;
                data.points.middleRows(offset, m) =
                    band_arc(m, params.band_rows, 0.15 / radius, 0.0, 2.0,
                             params.jitter, 0.0, 0.0, radius, false, rng);
                offset += m;
            }
            data.bbox = bbox2d(-2.1, 2.1, -2.1, 2.1);
            break;
        }
        case DatasetKind::file:
            break;
    }
    clip_to_bbox(data.points, data.bbox);
    return data;
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    int width = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error("load_dataset: non-numeric cell at row " +
                                         std::to_string(line_no) + ", column " +
                                         std::to_string(col) + ": '" + cell + "'");
            }
        }
        if (row.empty()) continue;
        if (width < 0) width = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != width)
            throw std::runtime_error("load_dataset: ragged row " +
                                     std::to_string(line_no) + " (" +
                                     std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(width) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("load_dataset: empty file " + path);

    const int n = static_cast<int>(rows.size());
    const int m = width;
    Dataset data;
    data.kind = DatasetKind::file;
    data.original_n = n;

    std::int64_t padded = 1;
    while (padded < n) padded <<= 1;

    data.points.resize(padded, m);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) data.points(i, c) = rows[i][c];

    if (padded > n) {
        // Duplicate the point farthest from the centroid; a tiny offset
        // keeps padded rows distinct without moving them off the cluster.
        Eigen::RowVectorXd centroid =
            data.points.topRows(n).colwise().mean();
        int far = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double dist = (data.points.row(i) - centroid).squaredNorm();
            if (dist > best) {
                best = dist;
                far = i;
            }
        }
        for (int i = n; i < padded; ++i) {
            data.points.row(i) =
                data.points.row(far).array() + 1e-9 * (i - n + 1);
            data.pad_indices.push_back(i);
        }
    }

    data.bbox.resize(2, m);
    data.bbox.row(0) = data.points.colwise().minCoeff();
    data.bbox.row(1) = data.points.colwise().maxCoeff();
    return data;
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_dataset_csv: cannot write " + path);
    out << "# kind=" << dataset_kind_name(data.kind) << " seed=" << data.seed
        << "\n";
    out.precision(17);
    for (int i = 0; i < data.n_points(); ++i) {
        for (int c = 0; c < data.dim(); ++c) {
            if (c) out << ',';
            out << data.points(i, c);
        }
        out << '\n';
    }
}

DatasetKind parse_dataset_kind(const std::string& name) {
    if (name == "moons") return DatasetKind::moons;
    if (name == "blobs") return DatasetKind::blobs;
    if (name == "rings") return DatasetKind::rings;
    if (name == "file") return DatasetKind::file;
    throw std::invalid_argument("unknown dataset kind: " + name);
}

std::string dataset_kind_name(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::moons: return "moons";
        case DatasetKind::blobs: return "blobs";
        case DatasetKind::rings: return "rings";
        case DatasetKind::file: return "file";
    }
    return "file";
}

}  // namespace qspectral
