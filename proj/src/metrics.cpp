#include "heightnorm/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "heightnorm/error.hpp"

namespace heightnorm {

const std::array<std::string, kMeasurementCount>& measurement_names() {
    static const auto names = [] {
        std::array<std::string, kMeasurementCount> n;
        n[kBustGirth] = "bust_girth";
        n[kWaistGirth] = "waist_girth";
        n[kHipGirth] = "hip_girth";
        n[kBackWidth] = "back_width";
        n[kOutseam] = "outseam";
        for (std::size_t i = 5; i < kMeasurementCount; ++i) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "m%02zu", i);
            n[i] = buf;
        }
        return n;
    }();
    return names;
}

std::size_t tp90_rank(std::size_t n) { return (9 * n + 9) / 10; }

Tp90Result tp90(const Matrix& abs_errors) {
    if (abs_errors.rows == 0 || abs_errors.cols == 0) {
        throw Error(ErrorKind::domain, "error matrix is empty");
    }
    if (abs_errors.values.size() != abs_errors.rows * abs_errors.cols) {
        throw Error(ErrorKind::domain, "error matrix storage does not match its shape");
    }
    for (double v : abs_errors.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::domain, "errors must be finite and nonnegative");
        }
    }

    const std::size_t rank = tp90_rank(abs_errors.rows);
    Tp90Result out;
    out.per_measurement.resize(abs_errors.cols);
    const auto cols = static_cast<long>(abs_errors.cols);
#pragma omp parallel for schedule(static)
    for (long c = 0; c < cols; ++c) {
        std::vector<double> column(abs_errors.rows);
        for (std::size_t r = 0; r < abs_errors.rows; ++r) {
            column[r] = abs_errors(r, static_cast<std::size_t>(c));
        }
        std::nth_element(column.begin(), column.begin() + static_cast<long>(rank - 1), column.end());
        out.per_measurement[static_cast<std::size_t>(c)] = column[rank - 1];
    }
    out.overall = std::accumulate(out.per_measurement.begin(), out.per_measurement.end(), 0.0) /
                  static_cast<double>(out.per_measurement.size());
    return out;
}

Matrix absolute_errors(const Matrix& pred, const Matrix& gt) {
    if (pred.rows != gt.rows || pred.cols != gt.cols) {
        throw Error(ErrorKind::domain, "prediction and ground-truth shapes differ");
    }
    Matrix out(pred.rows, pred.cols);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = std::abs(pred.values[i] - gt.values[i]);
    }
    return out;
}

void LossWeights::validate() const {
    if (!(vertices >= 0.0 && shape >= 0.0 && measurements >= 0.0)) {
        throw Error(ErrorKind::domain, "loss weights must be nonnegative");
    }
    if (vertices == 0.0 && shape == 0.0 && measurements == 0.0) {
        throw Error(ErrorKind::domain, "loss weights must not all be zero");
    }
}

namespace {
double mean_abs_diff(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::domain, std::string(what) + ": prediction and target sizes differ");
    }
    if (a.empty()) {
        throw Error(ErrorKind::domain, std::string(what) + ": empty tensors");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return sum / static_cast<double>(a.size());
}
}  // namespace

double bmn_loss(std::span<const double> pred_vertices, std::span<const double> gt_vertices,
                std::span<const double> pred_shape, std::span<const double> gt_shape,
                std::span<const double> pred_measurements, std::span<const double> gt_measurements,
                const LossWeights& w) {
    w.validate();
    return w.vertices * mean_abs_diff(pred_vertices, gt_vertices, "vertices") +
           w.shape * mean_abs_diff(pred_shape, gt_shape, "shape") +
           w.measurements * mean_abs_diff(pred_measurements, gt_measurements, "measurements");
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return out;
}

bool parse_number(const std::string& s, double& v) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    return ec == std::errc{} && ptr == end;
}
}  // namespace

Matrix read_csv_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open " + path.string());
    }
    Matrix m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto cells = split_csv(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells.size() && numeric; ++i) {
            numeric = parse_number(cells[i], row[i]);
        }
        if (!numeric) {
            if (m.rows == 0 && line_no == 1) {
                continue;  // header
            }
            throw Error(ErrorKind::schema, path.string() + ":" + std::to_string(line_no) +
                                               ": non-numeric value");
        }
        if (m.rows == 0) {
            m.cols = row.size();
        } else if (row.size() != m.cols) {
            throw Error(ErrorKind::schema, path.string() + ":" + std::to_string(line_no) +
                                               ": expected " + std::to_string(m.cols) + " columns");
        }
        m.values.insert(m.values.end(), row.begin(), row.end());
        ++m.rows;
    }
    return m;
}

}  // namespace heightnorm
