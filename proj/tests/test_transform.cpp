#include <doctest.h>

#include <cmath>
#include <random>

#include "heightnorm/error.hpp"
#include "heightnorm/transform.hpp"
#include "oracles.hpp"

using namespace heightnorm;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected heightnorm::Error");
    return ErrorKind::io;
}

Landmarks2D map_points(const Landmarks2D& src, auto&& fn) {
    Landmarks2D out;
    for (JointId j : src.joints()) {
        const Keypoint& kp = src.at(j);
        const Vec2 q = fn(kp.position());
        out.set(j, {q.x, q.y, 1.0});
    }
    return out;
}

}  // namespace

TEST_CASE("scale+translation fit: identity and pure scaling") {
    std::mt19937_64 rng(1);
    const Landmarks2D src = oracle::random_landmarks(rng, 10);

    const FitReport same = fit_scale_translation(src, src);
    CHECK(same.transform.a() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(same.transform.tx()) < 1e-10);
    CHECK(std::abs(same.transform.ty()) < 1e-10);
    CHECK(same.rms_residual < 1e-10);
    CHECK(same.points_used == 10);

    const Landmarks2D twice = map_points(src, [](Vec2 p) { return 2.0 * p; });
    const FitReport r = fit_scale_translation(src, twice);
    CHECK(r.transform.a() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.transform.d() == r.transform.a());
    CHECK(r.transform.b() == 0.0);
    CHECK(r.transform.c() == 0.0);
    CHECK(std::abs(r.transform.tx()) < 1e-9);
    CHECK(std::abs(r.transform.ty()) < 1e-9);
}

TEST_CASE("scale+translation fit recovers the generator and ignores an invisible outlier") {
    std::mt19937_64 rng(7);
    Landmarks2D src = oracle::random_landmarks(rng, 8);
    Landmarks2D dst = map_points(src, [](Vec2 p) { return Vec2{1.7 * p.x + 30.0, 1.7 * p.y - 12.0}; });
    Keypoint hidden = src.at(JointId::l_elbow);
    hidden.visibility = 0.0;
    src.set(JointId::l_elbow, hidden);
    dst.set(JointId::l_elbow, {-9000.0, 4000.0, 1.0});

    const FitReport r = fit_scale_translation(src, dst);
    CHECK(r.points_used == 7);
    CHECK(r.weights[index_of(JointId::l_elbow)] == 0.0);
    CHECK(std::abs(r.transform.a() - 1.7) <= 1e-9 * 1.7);
    CHECK(std::abs(r.transform.tx() - 30.0) <= 1e-9 * 30.0);
    CHECK(std::abs(r.transform.ty() + 12.0) <= 1e-9 * 12.0);

    // Grid search around the solution never beats the closed form.
    Landmarks2D noisy = dst;
    std::normal_distribution<double> jitter(0.0, 3.0);
    for (JointId j : noisy.joints()) {
        Keypoint kp = noisy.at(j);
        kp.x += jitter(rng);
        kp.y += jitter(rng);
        noisy.set(j, kp);
    }
    const FitReport fit = fit_scale_translation(src, noisy);
    const double best = oracle::weighted_sse(fit.transform.a(), fit.transform.tx(), fit.transform.ty(),
                                             src, noisy, fit.weights);
    double grid_min = INFINITY;
    for (int i = -50; i < 50; ++i) {
        for (int k = -50; k < 50; ++k) {
            for (int m = -50; m < 50; ++m) {
                grid_min = std::min(grid_min, oracle::weighted_sse(fit.transform.a() + i * 1e-4,
                                                                   fit.transform.tx() + k * 1e-2,
                                                                   fit.transform.ty() + m * 1e-2,
                                                                   src, noisy, fit.weights));
            }
        }
    }
    CHECK(best <= grid_min * (1.0 + 1e-12));
}

TEST_CASE("scale+translation fit error paths") {
    std::mt19937_64 rng(3);
    Landmarks2D src = oracle::random_landmarks(rng, 5);

    SUBCASE("fewer than two usable points") {
        Landmarks2D sparse;
        sparse.set(JointId::neck, src.at(JointId::neck));
        sparse.set(JointId::head_top, {1.0, 2.0, 0.3});
        CHECK(kind_of([&] { fit_scale_translation(sparse, src); }) ==
              ErrorKind::insufficient_correspondence);
        try {
            fit_scale_translation(sparse, src);
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("found 1") != std::string::npos);
        }
    }
    SUBCASE("coincident points") {
        Landmarks2D same;
        for (JointId j : src.joints()) same.set(j, {5.0, 5.0, 1.0});
        CHECK(kind_of([&] { fit_scale_translation(same, src); }) == ErrorKind::degenerate_configuration);
    }
    SUBCASE("mirrored target gives a negative scale") {
        const Landmarks2D flipped = map_points(src, [](Vec2 p) { return -1.0 * p; });
        CHECK(kind_of([&] { fit_scale_translation(src, flipped); }) ==
              ErrorKind::degenerate_configuration);
    }
    SUBCASE("joints absent from the target are not used") {
        Landmarks2D dst;
        dst.set(JointId::head_top, src.at(JointId::head_top));
        CHECK(kind_of([&] { fit_scale_translation(src, dst); }) ==
              ErrorKind::insufficient_correspondence);
    }
}

TEST_CASE("full affine fit") {
    std::mt19937_64 rng(11);
    const Landmarks2D src = oracle::random_landmarks(rng, 10);

    const FitReport id = fit_full_affine(src, src);
    const auto ident = AffineTransform2D::identity();
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(id.transform.m[i] - ident.m[i]) < 1e-9);
    }

    const auto gen = AffineTransform2D::affine(1.2, 0.1, 5.0, -0.05, 0.9, -3.0);
    const Landmarks2D dst = map_points(src, [&](Vec2 p) { return gen.apply(p); });
    const FitReport r = fit_full_affine(src, dst);
    CHECK(r.transform.kind == TransformKind::full_affine);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(r.transform.m[i] - gen.m[i]) <= 1e-9);
    }

    Landmarks2D line;
    line.set(JointId::neck, {0.0, 0.0, 1.0});
    line.set(JointId::pelvis, {10.0, 20.0, 1.0});
    line.set(JointId::head_top, {-3.0, -6.0, 1.0});
    CHECK(kind_of([&] { fit_full_affine(line, line); }) == ErrorKind::degenerate_configuration);

    Landmarks2D two;
    two.set(JointId::neck, {0.0, 0.0, 1.0});
    two.set(JointId::pelvis, {10.0, 20.0, 1.0});
    CHECK(kind_of([&] { fit_full_affine(two, two); }) == ErrorKind::insufficient_correspondence);

    // Far from the origin is still well conditioned after centring.
    const Landmarks2D shifted = map_points(src, [](Vec2 p) { return Vec2{p.x + 1e6, p.y - 1e6}; });
    CHECK_NOTHROW(fit_full_affine(shifted, src));
}

TEST_CASE("apply_to_points and composition") {
    Landmarks2D pts;
    pts.set(JointId::neck, {3.0, 4.0, 0.25});
    CHECK(apply_to_points(AffineTransform2D::identity(), pts) == pts);
    const Landmarks2D out = apply_to_points(AffineTransform2D::scale_translate(2.0, 0.0, 0.0), pts);
    CHECK(out.at(JointId::neck) == Keypoint{6.0, 8.0, 0.25});

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t1 = AffineTransform2D::affine(u(rng), u(rng), 10 * u(rng), u(rng), u(rng), 10 * u(rng));
        const auto t2 = AffineTransform2D::affine(u(rng), u(rng), 10 * u(rng), u(rng), u(rng), 10 * u(rng));
        const Landmarks2D p = oracle::random_landmarks(rng, 15, -50.0, 50.0);
        const Landmarks2D two_step = apply_to_points(t2, apply_to_points(t1, p));
        const Landmarks2D composed = apply_to_points(compose(t2, t1), p);
        for (JointId j : kAllJoints) {
            CHECK(norm(two_step.at(j).position() - composed.at(j).position()) <= 1e-12 * 1e3);
        }
    }
    CHECK(compose(AffineTransform2D::scale_translate(2, 1, 1), AffineTransform2D::scale_translate(3, 0, 1)).kind ==
          TransformKind::scale_translate);
}

TEST_CASE("inverse round trip and singular transforms") {
    const auto t = AffineTransform2D::affine(1.5, 0.2, 7.0, -0.3, 0.8, -2.0);
    const auto back = compose(t.inverse(), t);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(back.m[i] - AffineTransform2D::identity().m[i]) < 1e-12);
    }
    CHECK(kind_of([] { AffineTransform2D::affine(0, 0, 1, 0, 0, 1).inverse(); }) == ErrorKind::geometry);
}

TEST_CASE("weighted residual") {
    Landmarks2D a;
    a.set(JointId::neck, {1.0, 1.0, 1.0});
    JointArray<double> w{};
    w[index_of(JointId::neck)] = 1.0;
    CHECK(residual(AffineTransform2D::identity(), a, a, w) == 0.0);
    Landmarks2D b;
    b.set(JointId::neck, {4.0, 5.0, 1.0});
    CHECK(residual(AffineTransform2D::identity(), a, b, w) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(kind_of([&] { residual(AffineTransform2D::identity(), a, b, JointArray<double>{}); }) ==
          ErrorKind::domain);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> wd(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Landmarks2D src = oracle::random_landmarks(rng, 15);
        const Landmarks2D dst = oracle::random_landmarks(rng, 15);
        JointArray<double> ws{};
        for (double& x : ws) x = wd(rng);
        const auto t = AffineTransform2D::scale_translate(0.8, 3.0, -4.0);
        CHECK(residual(t, src, dst, ws) ==
              doctest::Approx(oracle::weighted_rms(0.8, 3.0, -4.0, src, dst, ws)).epsilon(1e-12));
    }
}

TEST_CASE("scale+translation properties") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> vis(0.5, 1.0);
    std::uniform_real_distribution<double> scale(0.2, 4.0);
    std::uniform_real_distribution<double> shift(-200.0, 200.0);
    std::normal_distribution<double> noise(0.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

    for (int trial = 0; trial < 120; ++trial) {
        Landmarks2D src = oracle::random_landmarks(rng, 15);
        const double s = scale(rng), tx = shift(rng), ty = shift(rng);
        Landmarks2D dst;
        for (JointId j : kAllJoints) {
            Keypoint kp = src.at(j);
            kp.visibility = vis(rng);
            if (trial % 3 == 0 && index_of(j) % 4 == 0) kp.visibility = 0.2;
            src.set(j, kp);
            dst.set(j, {s * kp.x + tx + noise(rng), s * kp.y + ty + noise(rng), 1.0});
        }
        const FitReport fit = fit_scale_translation(src, dst);
        const auto& T = fit.transform;
        const double base = oracle::weighted_sse(T.a(), T.tx(), T.ty(), src, dst, fit.weights);

        // Optimality against perturbations of norm 1e-3.
        for (int k = 0; k < 20; ++k) {
            const double th = angle(rng), ph = std::acos(2.0 * std::uniform_real_distribution<double>(0, 1)(rng) - 1.0);
            const double ds = 1e-3 * std::cos(ph);
            const double dx = 1e-3 * std::sin(ph) * std::cos(th);
            const double dy = 1e-3 * std::sin(ph) * std::sin(th);
            CHECK(oracle::weighted_sse(T.a() + ds, T.tx() + dx, T.ty() + dy, src, dst, fit.weights) >=
                  base * (1.0 - 1e-14));
        }

        // Invisible joints can move anywhere without changing the fit.
        Landmarks2D moved_src = src;
        Landmarks2D moved_dst = dst;
        for (JointId j : kAllJoints) {
            if (src.at(j).visibility < kDefaultVisibilityThreshold) {
                moved_src.set(j, {shift(rng), shift(rng), src.at(j).visibility});
                moved_dst.set(j, {shift(rng), shift(rng), 1.0});
            }
        }
        CHECK(fit_scale_translation(moved_src, moved_dst).transform == T);

        // Weight scaling invariance (threshold 0 so scaling keeps every point).
        Landmarks2D halved = src;
        for (JointId j : kAllJoints) {
            Keypoint kp = src.at(j);
            kp.visibility *= 0.5;
            halved.set(j, kp);
        }
        const auto full = fit_scale_translation(src, dst, 0.0).transform;
        const auto half = fit_scale_translation(halved, dst, 0.0).transform;
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(full.m[i] - half.m[i]) <= 1e-12 * std::max(1.0, std::abs(full.m[i])));
        }

        // Independent iterative minimizer reaches the same residual.
        const auto nm = oracle::nelder_mead(src, dst, fit.weights);
        const double rms_nm = oracle::weighted_rms(nm.x[0], nm.x[1], nm.x[2], src, dst, fit.weights);
        CHECK(std::abs(fit.rms_residual - rms_nm) <= 1e-9);
        CHECK(fit.rms_residual <= rms_nm + 1e-9);
    }
}

TEST_CASE("exact recovery of noiseless generators") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Landmarks2D src = oracle::random_landmarks(rng, 6 + trial % 9);
        const double s = 0.3 + 3.0 * (u(rng) + 1.0), tx = 300 * u(rng), ty = 300 * u(rng);
        const auto gen_st = AffineTransform2D::scale_translate(s, tx, ty);
        const FitReport st = fit_scale_translation(src, apply_to_points(gen_st, src));
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(st.transform.m[i] - gen_st.m[i]) <= 1e-9 * std::max(1.0, std::abs(gen_st.m[i])));
        }
        const auto gen = AffineTransform2D::affine(1 + 0.5 * u(rng), 0.3 * u(rng), 100 * u(rng),
                                                   0.3 * u(rng), 1 + 0.5 * u(rng), 100 * u(rng));
        const FitReport af = fit_full_affine(src, apply_to_points(gen, src));
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(af.transform.m[i] - gen.m[i]) <= 1e-9 * std::max(1.0, std::abs(gen.m[i])));
        }
    }
}

TEST_CASE("fit report JSON shape") {
    std::mt19937_64 rng(4);
    const Landmarks2D src = oracle::random_landmarks(rng, 5);
    const auto doc = fit_report_to_json(fit_scale_translation(src, src));
    CHECK(doc["kind"] == "scale_translate");
    CHECK(doc["matrix"].size() == 2);
    CHECK(doc["matrix"][0].size() == 3);
    CHECK(doc["points_used"] == 5);
    CHECK(doc.contains("rms_residual"));
}
