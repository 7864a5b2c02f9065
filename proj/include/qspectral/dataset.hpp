#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qspectral {

enum class DatasetKind { moons, blobs, rings, file };

/// Generator knobs. Defaults are tuned so the bundled shapes stay
/// connected under a mutual 8-nearest-neighbor graph at N = 256.
struct GeneratorParams {
    // moons / rings: band placement
    int band_rows = 4;          // radial rows of the point lattice
    double band_width = 0.32;   // radial half-width of each band
    double arc_lo = 0.1;        // arc range as a fraction of pi (moons)
    double arc_hi = 0.9;
    double jitter = 0.3;        // lattice jitter, fraction of cell size
    // blobs
    int centers = 3;
    double blob_radius = 1.5;   // half-side of each jittered-grid blob
    // rings
    int n_rings = 2;
};

/// A point cloud of N = 2^n points in M dimensions.
struct Dataset {
    Eigen::MatrixXd points;     // N x M
    std::int64_t seed = 0;
    DatasetKind kind = DatasetKind::file;
    Eigen::MatrixXd bbox;       // 2 x M: row 0 = lower bounds, row 1 = upper
    int original_n = 0;         // row count before power-of-two padding
    std::vector<int> pad_indices;

    int n_points() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
};

bool is_power_of_two(std::int64_t v);

Dataset generate_dataset(DatasetKind kind, int n_points, std::int64_t seed,
                         const GeneratorParams& params = {});

/// Reads a CSV point cloud (one point per row, '#' lines skipped) and pads
/// to the next power of two by duplicating the point farthest from the
/// centroid, offset by 1e-9 per coordinate.
Dataset load_dataset(const std::string& path);

void save_dataset_csv(const Dataset& data, const std::string& path);

DatasetKind parse_dataset_kind(const std::string& name);
std::string dataset_kind_name(DatasetKind kind);

}  // namespace qspectral
