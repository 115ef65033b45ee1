#include <doctest.h>

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "heightnorm/error.hpp"
#include "heightnorm/skeleton.hpp"

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

// Drillis-Contini body segment ratios (fraction of standing height), typed in
// from the published table.
constexpr double kDcKnee = 0.285;
constexpr double kDcHip = 0.530;
constexpr double kDcShoulder = 0.818;
constexpr double kDcAnkle = 0.039;
constexpr double kDcShoulderWidth = 0.259;

}  // namespace

TEST_CASE("built-in templates carry every joint with head_top at unit height") {
    for (Gender g : {Gender::female, Gender::male, Gender::neutral}) {
        const SkeletonTemplate& t = builtin_template(g);
        CHECK(t.gender == g);
        CHECK(t.at(JointId::head_top) == Vec3{0.0, 1.0, 0.0});
        CHECK_NOTHROW(t.validate());
        for (JointId j : kAllJoints) {
            CHECK(t.at(j).y >= 0.0);
            CHECK(t.at(j).z == 0.0);
        }
    }
}

TEST_CASE("built-in proportions follow the Drillis-Contini table") {
    const SkeletonTemplate& t = builtin_template(Gender::neutral);
    CHECK(t.at(JointId::l_knee).y == doctest::Approx(kDcKnee).epsilon(1e-12));
    CHECK(t.at(JointId::r_hip).y == doctest::Approx(kDcHip).epsilon(1e-12));
    CHECK(t.at(JointId::pelvis).y == doctest::Approx(kDcHip).epsilon(1e-12));
    CHECK(t.at(JointId::l_shoulder).y == doctest::Approx(kDcShoulder).epsilon(1e-12));
    CHECK(t.at(JointId::r_ankle).y == doctest::Approx(kDcAnkle).epsilon(1e-12));
    CHECK(t.at(JointId::l_shoulder).x - t.at(JointId::r_shoulder).x ==
          doctest::Approx(kDcShoulderWidth).epsilon(1e-12));

    // 45 degree abduction: the upper arm drops as much as it spreads.
    const Vec3 s = t.at(JointId::l_shoulder);
    const Vec3 e = t.at(JointId::l_elbow);
    CHECK(e.x - s.x == doctest::Approx(s.y - e.y).epsilon(1e-12));
    CHECK(e.x > s.x);
}

TEST_CASE("built-in templates are mirror symmetric") {
    for (Gender g : {Gender::female, Gender::male, Gender::neutral}) {
        const SkeletonTemplate& t = builtin_template(g);
        for (JointId j : kAllJoints) {
            const Vec3 a = t.at(j);
            const Vec3 b = t.at(mirror_joint(j));
            CHECK(std::abs(a.x + b.x) <= 1e-9);
            CHECK(std::abs(a.y - b.y) <= 1e-9);
            CHECK(std::abs(a.z - b.z) <= 1e-9);
        }
    }
}

TEST_CASE("template files load and validate") {
    const std::string text = template_to_json(builtin_template(Gender::female));
    const SkeletonTemplate t = load_template(text);
    CHECK(t.gender == Gender::female);
    CHECK(t.joints == builtin_template(Gender::female).joints);

    SUBCASE("missing pelvis is a schema error") {
        auto doc = nlohmann::json::parse(text);
        doc["joints"].erase("pelvis");
        CHECK(kind_of([&] { load_template(doc.dump()); }) == ErrorKind::schema);
    }
    SUBCASE("head_top off unit height is a validation error") {
        auto doc = nlohmann::json::parse(text);
        doc["joints"]["head_top"] = {0.0, 0.9, 0.0};
        CHECK(kind_of([&] { load_template(doc.dump()); }) == ErrorKind::validation);
        doc["joints"]["head_top"] = {0.0, 1.0 + 5e-7, 0.0};
        CHECK_NOTHROW(load_template(doc.dump()));
    }
    SUBCASE("duplicate joint is a schema error") {
        std::string dup = text;
        const auto pos = dup.find("\"neck\"");
        REQUIRE(pos != std::string::npos);
        dup.insert(pos, "\"neck\": [0, 0.8, 0],\n");
        CHECK(kind_of([&] { load_template(dup); }) == ErrorKind::schema);
    }
    SUBCASE("unknown joint and malformed coordinates are schema errors") {
        auto doc = nlohmann::json::parse(text);
        doc["joints"]["nose"] = {0.0, 0.95, 0.0};
        CHECK(kind_of([&] { load_template(doc.dump()); }) == ErrorKind::schema);
        doc = nlohmann::json::parse(text);
        doc["joints"]["neck"] = {0.0, 0.8};
        CHECK(kind_of([&] { load_template(doc.dump()); }) == ErrorKind::schema);
        CHECK(kind_of([&] { load_template("{not json"); }) == ErrorKind::schema);
    }
    SUBCASE("joints below the floor are rejected") {
        auto doc = nlohmann::json::parse(text);
        doc["joints"]["l_ankle"] = {0.1, -0.01, 0.0};
        CHECK(kind_of([&] { load_template(doc.dump()); }) == ErrorKind::validation);
    }
}

TEST_CASE("reference skeleton scales the template by subject height") {
    const SkeletonTemplate& t = builtin_template(Gender::neutral);
    const Skeleton3D s = build_reference_skeleton({70.0, Gender::neutral}, t);
    CHECK(s.root == JointId::pelvis);
    CHECK(s.at(JointId::head_top) == Vec3{0.0, 70.0, 0.0});
    CHECK(s.at(JointId::l_knee).y == doctest::Approx(19.95).epsilon(1e-12));

    CHECK(kind_of([&] { build_reference_skeleton({0.0, Gender::neutral}, t); }) == ErrorKind::domain);
    CHECK(kind_of([&] { build_reference_skeleton({-3.0, Gender::neutral}, t); }) == ErrorKind::domain);
    CHECK(kind_of([&] { build_reference_skeleton({108.5, Gender::neutral}, t); }) == ErrorKind::domain);
    CHECK_NOTHROW(build_reference_skeleton({108.0, Gender::neutral}, t));
}

TEST_CASE("template gender compatibility") {
    CHECK_NOTHROW(build_reference_skeleton({66.0, Gender::male}, builtin_template(Gender::neutral)));
    CHECK_NOTHROW(build_reference_skeleton({66.0, Gender::female}, builtin_template(Gender::female)));
    CHECK(kind_of([] {
              build_reference_skeleton({66.0, Gender::female}, builtin_template(Gender::male));
          }) == ErrorKind::validation);
}

TEST_CASE("skeleton properties: linearity, symmetry, height realization") {
    for (double h = 1.0; h <= 54.0; h += 0.75) {
        for (Gender g : {Gender::female, Gender::male, Gender::neutral}) {
            const Skeleton3D a = build_reference_skeleton({h, g}, builtin_template(g));
            const Skeleton3D b = build_reference_skeleton({2.0 * h, g}, builtin_template(g));
            for (JointId j : kAllJoints) {
                CHECK(b.at(j) == 2.0 * a.at(j));
                const Vec3 m = a.at(mirror_joint(j));
                CHECK(a.at(j).y == m.y);
                CHECK(a.at(j).z == m.z);
                CHECK(a.at(j).x == -m.x);
            }
            CHECK(std::abs(a.at(JointId::head_top).y - h) <= 1e-9);
        }
    }
}
