#include <gtest/gtest.h>

#include <random>

#include "gms/example_scene.hpp"
#include "gms/scene.hpp"

namespace gms {
namespace {

Scene one_unit(std::vector<Channel> channels, SampleType type = SampleType::Float32) {
  Scene s;
  s.name = "s";
  s.freq = 100.0;
  s.sample_type = type;
  s.units.push_back({"u", std::move(channels)});
  return s;
}

bool mentions(const std::vector<Violation>& vs, std::string_view element, std::string_view text) {
  for (const auto& v : vs)
    if (v.element.find(element) != std::string::npos && v.rule.find(text) != std::string::npos)
      return true;
  return false;
}

TEST(TrackCount, TabulatedValues) {
  EXPECT_EQ(track_count(Dimension::Space3Dxyz), 3u);
  EXPECT_EQ(track_count(Dimension::Scalar0D), 1u);
  EXPECT_EQ(track_count(Dimension::Plane2Dxy), 2u);
  const std::size_t expected[] = {1, 1, 1, 1, 2, 2, 2, 3};
  for (std::uint16_t code = 0; code < 8; ++code)
    EXPECT_EQ(track_count(static_cast<Dimension>(code)), expected[code]) << code;
}

TEST(TrackCount, IllegalCodeThrows) {
  for (std::uint16_t code : {8, 9, 1000, 0xFFFF}) {
    try {
      track_count(static_cast<Dimension>(code));
      FAIL() << code;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IllegalDimension);
    }
  }
}

TEST(VariableTypes, Classes) {
  EXPECT_EQ(variable_class(VariableType::Position), VariableClass::Extensive);
  EXPECT_EQ(variable_class(VariableType::Force), VariableClass::Intensive);
  EXPECT_EQ(variable_class(VariableType::Angle), VariableClass::Extensive);
  EXPECT_EQ(variable_class(VariableType::Torque), VariableClass::Intensive);
  EXPECT_FALSE(is_reserved(VariableType::Position));
  EXPECT_FALSE(is_reserved(VariableType::Force));
  EXPECT_TRUE(is_reserved(VariableType::Velocity));
  EXPECT_FALSE(is_reserved(static_cast<VariableType>(6)));
}

TEST(SceneTrackCount, ReferenceScene) {
  // By hand: Pianist 8x1 + StickSource 3 + Light 2 + Dancer 16x3 + Juggler 2x3 + Fluid 10x1.
  const std::size_t by_hand = 8 * 1 + 1 * 3 + 1 * 2 + 16 * 3 + 2 * 3 + 10 * 1;
  ASSERT_EQ(by_hand, 77u);
  EXPECT_EQ(scene_track_count(make_example_scene({.fluid_mass_count = 10})), by_hand);
  EXPECT_EQ(scene_track_count(make_example_scene({.fluid_mass_count = 1})), 68u);
}

TEST(SceneTrackCount, SmallScenes) {
  EXPECT_EQ(scene_track_count(one_unit({{"c", Dimension::Scalar0D, VariableType::Position}})), 1u);
  Scene s = one_unit({{"a", Dimension::Space3Dxyz, VariableType::Position}});
  s.units.push_back({"v", {{"b", Dimension::Space3Dxyz, VariableType::Position}}});
  EXPECT_EQ(scene_track_count(s), 6u);
}

TEST(FrameSizes, ByteSizeAndStride) {
  auto table = make_example_scene({.fluid_mass_count = 10, .sample_type = SampleType::Float32});
  EXPECT_EQ(frame_byte_size(table), 308u);
  EXPECT_EQ(padded_frame_stride(table), 308u);
  table.block_size = 128;
  EXPECT_EQ(padded_frame_stride(table), 384u);
  table.block_size = 512;
  EXPECT_EQ(padded_frame_stride(table), 512u);

  EXPECT_EQ(frame_byte_size(one_unit({{"c", Dimension::Scalar0D, VariableType::Position}},
                                     SampleType::Float64)),
            8u);
  Scene six = one_unit({{"a", Dimension::Space3Dxyz, VariableType::Position},
                        {"b", Dimension::Space3Dxyz, VariableType::Force}},
                       SampleType::Long);
  EXPECT_EQ(frame_byte_size(six), 24u);
}

TEST(FrameSizes, StrideProperties) {
  std::mt19937 rng(3);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t frame = 4 * (1 + rng() % 500);
    std::uint32_t block = rng() % 3 == 0 ? 0 : 1 + rng() % 5000;
    auto stride = padded_frame_stride(frame, block);
    ASSERT_GE(stride, frame);
    if (block == 0) {
      ASSERT_EQ(stride, frame);
    } else {
      ASSERT_EQ(stride % block, 0u);
      ASSERT_LT(stride - frame, block);
      ASSERT_EQ(stride == frame, frame % block == 0);
    }
  }
}

TEST(SceneTrackCount, SplittingUnitsIsAdditive) {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::vector<Channel> channels;
    auto n = 2 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i)
      channels.push_back({"c" + std::to_string(i), static_cast<Dimension>(rng() % 8),
                          VariableType::Position});
    auto whole = one_unit(channels);
    auto cut = 1 + rng() % (n - 1);
    Scene split = whole;
    split.units = {{"a", {channels.begin(), channels.begin() + static_cast<long>(cut)}},
                   {"b", {channels.begin() + static_cast<long>(cut), channels.end()}}};
    ASSERT_EQ(scene_track_count(whole), scene_track_count(split));
  }
}

TEST(Validate, ReferenceSceneHasOnlyReservedTypeAdvisories) {
  ExampleSpec spec{.fluid_mass_count = 10, .frame_count = 3};
  auto doc = make_example_document(spec);
  auto violations = validate_scene(doc.scene, &doc.frames);
  EXPECT_FALSE(has_fatal(violations));
  // BL2 uses Angle, FL1..FL10 use Velocity.
  EXPECT_EQ(violations.size(), 11u);
  for (const auto& v : violations) EXPECT_EQ(v.severity, Severity::Advisory) << v.message();
}

TEST(Validate, WellFormedSceneIsClean) {
  auto s = one_unit({{"c", Dimension::Plane2Dzx, VariableType::Force}});
  FrameMatrix frames(0, 2);
  EXPECT_TRUE(validate_scene(s, &frames).empty());
}

TEST(Validate, ZeroFrequency) {
  auto s = one_unit({{"c", Dimension::Scalar0D, VariableType::Position}});
  s.freq = 0.0;
  auto vs = validate_scene(s);
  ASSERT_TRUE(has_fatal(vs));
  EXPECT_TRUE(mentions(vs, "scene", "freq must be positive"));
  s.freq = std::nan("");
  EXPECT_TRUE(mentions(validate_scene(s), "scene", "freq must be positive"));
}

TEST(Validate, FrameWidthMismatch) {
  Scene s = one_unit({{"a", Dimension::Space3Dxyz, VariableType::Position},
                      {"b", Dimension::Space3Dxyz, VariableType::Position}});
  s.frame_count = 1;
  FrameMatrix frames(1, 5);
  auto vs = validate_scene(s, &frames);
  EXPECT_TRUE(mentions(vs, "frames", "5 tracks per frame, scene declares 6"));
}

TEST(Validate, StructuralRules) {
  Scene s = one_unit({{"c", Dimension::Scalar0D, VariableType::Position},
                      {"c", Dimension::Scalar0D, VariableType::Position},
                      {"", Dimension::Scalar0D, VariableType::Position}});
  s.units.push_back({"u", {}});
  s.scale = 0.0;
  auto vs = validate_scene(s);
  EXPECT_TRUE(mentions(vs, "u.c", "not unique in its unit"));
  EXPECT_TRUE(mentions(vs, "u.", "must not be empty"));
  EXPECT_TRUE(mentions(vs, "unit 'u'", "not unique in the scene"));
  EXPECT_TRUE(mentions(vs, "unit 'u'", "at least one channel"));
  EXPECT_TRUE(mentions(vs, "scene", "scale must be finite and nonzero"));

  Scene empty;
  empty.freq = 10;
  EXPECT_TRUE(mentions(validate_scene(empty), "scene", "at least one unit"));
}

TEST(Validate, SameChannelNameInDifferentUnitsIsFine) {
  Scene s = one_unit({{"c", Dimension::Scalar0D, VariableType::Position}});
  s.units.push_back({"v", {{"c", Dimension::Scalar0D, VariableType::Position}}});
  EXPECT_TRUE(validate_scene(s).empty());
}

TEST(Validate, IllegalCodes) {
  Scene s = one_unit({{"c", static_cast<Dimension>(8), static_cast<VariableType>(9)}});
  auto vs = validate_scene(s);
  EXPECT_TRUE(mentions(vs, "u.c", "dimension code 8"));
  EXPECT_TRUE(mentions(vs, "u.c", "variable type code 9"));
}

TEST(Validate, AdvisoryFrequencyBand) {
  auto s = one_unit({{"c", Dimension::Scalar0D, VariableType::Position}});
  s.freq = 0.5;
  auto vs = validate_scene(s);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].severity, Severity::Advisory);
  s.freq = 20000.0;
  EXPECT_FALSE(has_fatal(validate_scene(s)));
  EXPECT_EQ(validate_scene(s).size(), 1u);
}

TEST(Validate, SampleRange) {
  Scene s = one_unit({{"c", Dimension::Scalar0D, VariableType::Position}}, SampleType::Long);
  s.frame_count = 1;
  s.scale = 0.001;
  FrameMatrix ok(1, 1, {2000000.0});
  EXPECT_TRUE(validate_scene(s, &ok).empty());
  FrameMatrix big(1, 1, {3000000.0});
  EXPECT_TRUE(mentions(validate_scene(s, &big), "frames", "out of range for Long"));
  FrameMatrix inf(1, 1, {INFINITY});
  EXPECT_TRUE(mentions(validate_scene(s, &inf), "frames", "not finite"));
  s.sample_type = SampleType::Float32;
  s.scale = 1.0;
  FrameMatrix huge(1, 1, {1e300});
  EXPECT_TRUE(has_fatal(validate_scene(s, &huge)));
}

TEST(Validate, IsPureAndIdempotent) {
  auto doc = make_example_document({.fluid_mass_count = 4, .frame_count = 5, .freq = 0.1});
  auto a = validate_scene(doc.scene, &doc.frames);
  auto b = validate_scene(doc.scene, &doc.frames);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

}  // namespace
}  // namespace gms
