#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heightnorm {

inline constexpr std::size_t kMeasurementCount = 59;

// Fixed measurement order. Only the first five are named; the rest are
// positional columns m05..m58.
inline constexpr std::size_t kBustGirth = 0;
inline constexpr std::size_t kWaistGirth = 1;
inline constexpr std::size_t kHipGirth = 2;
inline constexpr std::size_t kBackWidth = 3;
inline constexpr std::size_t kOutseam = 4;

const std::array<std::string, kMeasurementCount>& measurement_names();

/// Dense row-major matrix, subjects x measurements.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct Tp90Result {
    std::vector<double> per_measurement;
    double overall = 0.0;  // mean of per_measurement
};

/// 1-based rank of the 90th percentile among n ascending values: ceil(0.9 n).
std::size_t tp90_rank(std::size_t n);

/// Nearest-rank 90th percentile of each column. Throws Error(domain) on an
/// empty matrix or a negative/non-finite entry.
Tp90Result tp90(const Matrix& abs_errors);

/// |pred - gt| element-wise; shapes must match.
Matrix absolute_errors(const Matrix& pred, const Matrix& gt);

struct LossWeights {
    double vertices = 10.0;
    double shape = 1.0;
    double measurements = 1.0;

    void validate() const;
};

/// w1 * mean|dV| + w2 * mean|d beta| + w3 * mean|dM|.
double bmn_loss(std::span<const double> pred_vertices, std::span<const double> gt_vertices,
                std::span<const double> pred_shape, std::span<const double> gt_shape,
                std::span<const double> pred_measurements, std::span<const double> gt_measurements,
                const LossWeights& w = {});

/// Numeric CSV; a non-numeric first row is treated as a header.
Matrix read_csv_matrix(const std::filesystem::path& path);

}  // namespace heightnorm
