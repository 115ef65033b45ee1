#pragma once

// Test-only reference computations, written independently of the library's
// implementation paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "heightnorm/landmarks.hpp"
#include "heightnorm/transform.hpp"

namespace oracle {

using heightnorm::JointArray;
using heightnorm::JointId;
using heightnorm::Landmarks2D;

inline Landmarks2D random_landmarks(std::mt19937_64& rng, std::size_t count, double lo = 0.0,
                                    double hi = 512.0) {
    std::uniform_real_distribution<double> coord(lo, hi);
    Landmarks2D lm;
    for (std::size_t i = 0; i < count && i < heightnorm::kJointCount; ++i) {
        lm.set(heightnorm::kAllJoints[i], {coord(rng), coord(rng), 1.0});
    }
    return lm;
}

/// Weighted sum of squared distances, straight from the definition.
inline double weighted_sse(double s, double tx, double ty, const Landmarks2D& src,
                           const Landmarks2D& dst, const JointArray<double>& w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < heightnorm::kJointCount; ++i) {
        if (w[i] == 0.0) continue;
        const auto j = static_cast<JointId>(i);
        const double ex = s * src.at(j).x + tx - dst.at(j).x;
        const double ey = s * src.at(j).y + ty - dst.at(j).y;
        sum += w[i] * (ex * ex + ey * ey);
    }
    return sum;
}

inline double weighted_rms(double s, double tx, double ty, const Landmarks2D& src,
                           const Landmarks2D& dst, const JointArray<double>& w) {
    double total = 0.0;
    for (double wi : w) total += wi;
    return std::sqrt(weighted_sse(s, tx, ty, src, dst, w) / total);
}

struct Minimum {
    std::array<double, 3> x{};
    double value = 0.0;
};

/// Nelder-Mead over (s, tx, ty) minimizing the weighted SSE.
inline Minimum nelder_mead(const Landmarks2D& src, const Landmarks2D& dst,
                           const JointArray<double>& w, std::array<double, 3> start = {1.0, 0.0, 0.0}) {
    using P = std::array<double, 3>;
    auto f = [&](const P& p) { return weighted_sse(p[0], p[1], p[2], src, dst, w); };
    std::array<P, 4> simplex{start, start, start, start};
    simplex[1][0] += 0.5;
    simplex[2][1] += 50.0;
    simplex[3][2] += 50.0;
    std::array<double, 4> fv{};
    for (int i = 0; i < 4; ++i) fv[i] = f(simplex[i]);

    for (int iter = 0; iter < 20000; ++iter) {
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::array<P, 4> s2;
        std::array<double, 4> f2{};
        for (int i = 0; i < 4; ++i) {
            s2[i] = simplex[order[i]];
            f2[i] = fv[order[i]];
        }
        simplex = s2;
        fv = f2;
        if (std::abs(fv[3] - fv[0]) <= 1e-15 * (1.0 + std::abs(fv[0]))) {
            double size = 0.0;
            for (int i = 1; i < 4; ++i)
                for (int k = 0; k < 3; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[0][k]));
            if (size < 1e-12) break;
        }
        P centroid{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) centroid[k] += simplex[i][k] / 3.0;
        auto along = [&](double t) {
            P p;
            for (int k = 0; k < 3; ++k) p[k] = centroid[k] + t * (simplex[3][k] - centroid[k]);
            return p;
        };
        const P xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const P xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[3] = xe;
                fv[3] = fe;
            } else {
                simplex[3] = xr;
                fv[3] = fr;
            }
        } else if (fr < fv[2]) {
            simplex[3] = xr;
            fv[3] = fr;
        } else {
            const P xc = fr < fv[3] ? along(-0.5) : along(0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[3])) {
                simplex[3] = xc;
                fv[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int k = 0; k < 3; ++k) simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best]};
}

/// Nearest-rank 90th percentile by counting: the smallest value v with
/// at least 90% of the entries <= v.
inline double tp90_by_counting(const std::vector<double>& column) {
    const std::size_t n = column.size();
    double best = INFINITY;
    for (double v : column) {
        std::size_t at_or_below = 0;
        for (double u : column) at_or_below += u <= v ? 1 : 0;
        if (at_or_below * 10 >= 9 * n) best = std::min(best, v);
    }
    return best;
}

/// Bilinear sample of a 2x2 gray patch [a b; c d] at (u, v) in [0,1]^2,
/// rounded half up.
inline std::uint8_t bilinear_2x2(double a, double b, double c, double d, double u, double v) {
    const double value = a * (1 - u) * (1 - v) + b * u * (1 - v) + c * (1 - u) * v + d * u * v;
    return static_cast<std::uint8_t>(std::floor(value + 0.5));
}

}  // namespace oracle
