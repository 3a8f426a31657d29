#include "searchlight/aim.hpp"

#include <doctest.h>

using namespace searchlight;

TEST_CASE("arc angles of compass and diagonal directions") {
    CHECK(ArcAngle::of_direction({1, 0}).sign() == 0);
    CHECK(ArcAngle::of_direction({0, 1}) == ArcAngle::from_pi(ratio(1, 2)));
    CHECK(ArcAngle::of_direction({0, -1}) == ArcAngle::from_pi(ratio(3, 2)));
    CHECK(ArcAngle::of_direction({1, 1}) == ArcAngle::from_pi(ratio(1, 4)));
    CHECK(ArcAngle::of_direction({-1, 1}) == ArcAngle::from_pi(ratio(3, 4)));
    CHECK(ArcAngle::of_direction({-1, -1}) == ArcAngle::from_pi(ratio(5, 4)));
    CHECK(ArcAngle::of_direction({1, -1}) == ArcAngle::from_pi(ratio(7, 4)));
}

TEST_CASE("arctangent sum identity") {
    CHECK(ArcAngle::from_atan(ratio(1, 2)) + ArcAngle::from_atan(ratio(1, 3)) ==
          ArcAngle::from_pi(ratio(1, 4)));
}

TEST_CASE("angles order counterclockwise around the circle") {
    auto a0 = ArcAngle::of_direction({1, 0});
    auto a45 = ArcAngle::of_direction({1, 1});
    auto a90 = ArcAngle::of_direction({0, 1});
    auto d12 = ArcAngle::of_direction({2, 1});
    auto d21 = ArcAngle::of_direction({1, 2});
    CHECK(a0 < d12);
    CHECK(d12 < a45);
    CHECK(a45 < d21);
    CHECK(d21 < a90);
    CHECK(ArcAngle::of_direction({-1, 1}) < ArcAngle::of_direction({-1, -1}));
    CHECK(ArcAngle::of_direction({-1, -1}) < ArcAngle::of_direction({0, -1}));
}

TEST_CASE("mixed arctangent and pi-multiple comparisons") {
    CHECK(ArcAngle::from_atan(ratio(1, 2)) > ArcAngle::from_pi(ratio(1, 7)));
    CHECK(ArcAngle::from_atan(ratio(1, 4)) > ArcAngle::from_pi(ratio(1, 13)));
    CHECK(ArcAngle::from_atan(ratio(1, 4)) < ArcAngle::from_pi(ratio(1, 12)));
}

TEST_CASE("counterclockwise sweep extents") {
    auto a45 = ArcAngle::of_direction({1, 1});
    auto a315 = ArcAngle::of_direction({1, -1});
    CHECK(ccw_sweep(a315, a45) == ArcAngle::from_pi(ratio(1, 2)));
    CHECK(ccw_sweep(a45, a45).sign() == 0);
    auto wrap = ccw_sweep(ArcAngle::of_direction({1, 2}), ArcAngle::of_direction({2, 1}));
    CHECK(wrap.to_double() > 5.63);
    CHECK(wrap.to_double() < 5.65);
}

TEST_CASE("aim angles flip handedness with the guard axis") {
    CHECK(aim_angle(Axis::Y, {0, -1}) == ArcAngle::from_pi(ratio(1, 2)));
    CHECK(aim_angle(Axis::X, {0, -1}) == ArcAngle::from_pi(ratio(3, 2)));
}

TEST_CASE("rotation durations at full speed") {
    Duration d{ArcAngle::from_pi(ratio(3, 2))};
    CHECK(d.seconds() == ratio(3, 4));
    Duration q{ArcAngle::from_pi(ratio(1, 2))};
    CHECK(q.seconds() == ratio(1, 4));
}
