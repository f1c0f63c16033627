#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "gms/example_scene.hpp"
#include "gms/signal.hpp"

namespace gms {
namespace {

GmsDocument ramp(std::size_t frames, double freq = 1000.0, std::size_t tracks = 1) {
  GmsDocument doc;
  doc.scene.name = "ramp";
  doc.scene.freq = freq;
  doc.scene.sample_type = SampleType::Float64;
  doc.scene.frame_count = static_cast<std::uint32_t>(frames);
  Unit unit{"u", {}};
  for (std::size_t t = 0; t < tracks; ++t)
    unit.channels.push_back({"c" + std::to_string(t), Dimension::Scalar0D, VariableType::Position});
  doc.scene.units.push_back(unit);
  doc.frames = FrameMatrix(frames, tracks);
  for (std::size_t f = 0; f < frames; ++f)
    for (std::size_t t = 0; t < tracks; ++t) doc.frames.at(f, t) = static_cast<double>(f * 10 + t);
  return doc;
}

std::vector<double> column(const GmsDocument& doc, std::size_t t = 0) {
  std::vector<double> out;
  for (std::size_t f = 0; f < doc.frames.frame_count(); ++f) out.push_back(doc.frames.at(f, t));
  return out;
}

TEST(Decimate, GestureToVisualRate) {
  auto doc = ramp(1000, 1000.0);
  auto out = decimate(doc, 10);
  EXPECT_EQ(out.scene.freq, 100.0);
  EXPECT_EQ(out.scene.frame_count, 100u);
  EXPECT_EQ(out.frames.frame_count(), 100u);
}

TEST(Decimate, FactorOneIsIdentity) {
  auto doc = make_example_document({.fluid_mass_count = 2, .frame_count = 17});
  EXPECT_EQ(decimate(doc, 1), doc);
  EXPECT_EQ(smooth_decimate(doc, 1), doc);
}

TEST(Decimate, KeepsEveryKthFrame) {
  auto out = decimate(ramp(7), 3);
  EXPECT_EQ(column(out), (std::vector<double>{0, 30, 60}));
  EXPECT_EQ(out.scene.frame_count, 3u);
}

TEST(Decimate, ZeroFactor) {
  try {
    decimate(ramp(4), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroFactor);
  }
  EXPECT_THROW(smooth_decimate(ramp(4), 0), Error);
}

TEST(Decimate, MetadataUnchanged) {
  auto doc = make_example_document({.fluid_mass_count = 3, .frame_count = 20,
                                    .sample_type = SampleType::Long, .scale = 0.001,
                                    .block_size = 64});
  auto out = decimate(doc, 4);
  EXPECT_EQ(out.scene.units, doc.scene.units);
  EXPECT_EQ(out.scene.sample_type, doc.scene.sample_type);
  EXPECT_EQ(out.scene.scale, doc.scene.scale);
  EXPECT_EQ(out.scene.block_size, doc.scene.block_size);
  EXPECT_EQ(out.scene.name, doc.scene.name);
}

TEST(Decimate, ComposesMultiplicatively) {
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    std::uint32_t a = 1 + rng() % 5;
    std::uint32_t b = 1 + rng() % 5;
    auto doc = ramp(a * b * (1 + rng() % 10), 960.0, 1 + rng() % 3);
    auto twice = decimate(decimate(doc, a), b);
    auto once = decimate(doc, a * b);
    ASSERT_EQ(twice.frames, once.frames);
    ASSERT_EQ(twice.scene.frame_count, once.scene.frame_count);
    ASSERT_DOUBLE_EQ(twice.scene.freq, once.scene.freq);
  }
}

TEST(Decimate, SamplesAreCopiedBitwise) {
  std::mt19937_64 rng(1);
  auto doc = ramp(50);
  for (std::size_t f = 0; f < 50; ++f) doc.frames.at(f, 0) = std::bit_cast<double>(rng() >> 2);
  auto out = decimate(doc, 7);
  for (std::size_t k = 0; k < out.frames.frame_count(); ++k)
    EXPECT_EQ(std::bit_cast<std::uint64_t>(out.frames.at(k, 0)),
              std::bit_cast<std::uint64_t>(doc.frames.at(k * 7, 0)));
}

TEST(Decimate, SineIsUndistorted) {
  const double rate = 1000.0;
  const double hz = 5.0;
  auto doc = ramp(1000, rate);
  for (std::size_t f = 0; f < 1000; ++f)
    doc.frames.at(f, 0) = std::sin(2 * std::numbers::pi * hz * static_cast<double>(f) / rate);
  auto out = decimate(doc, 10);
  for (std::size_t k = 0; k < out.frames.frame_count(); ++k) {
    double t = static_cast<double>(k) / out.scene.freq;
    double analytic = std::sin(2 * std::numbers::pi * hz * t);
    EXPECT_NEAR(out.frames.at(k, 0), analytic, 1e-9 * std::max(1.0, std::fabs(analytic)));
  }
}

TEST(SmoothDecimate, WindowMeans) {
  auto doc = ramp(4);
  for (std::size_t f = 0; f < 4; ++f) doc.frames.at(f, 0) = 2.0 * static_cast<double>(f);
  EXPECT_EQ(column(smooth_decimate(doc, 2)), (std::vector<double>{1, 5}));
}

TEST(SmoothDecimate, ConstantStaysConstant) {
  auto doc = ramp(23);
  for (std::size_t f = 0; f < 23; ++f) doc.frames.at(f, 0) = 0.375;
  for (std::uint32_t k : {1u, 2u, 5u, 23u, 40u})
    for (double v : column(smooth_decimate(doc, k))) EXPECT_EQ(v, 0.375);
}

TEST(SmoothDecimate, LastWindowIsClipped) {
  auto out = smooth_decimate(ramp(7), 3);  // values 0,10,...,60
  EXPECT_EQ(column(out), (std::vector<double>{10, 40, 60}));
  EXPECT_EQ(out.scene.frame_count, 3u);
}

TEST(SmoothDecimate, RampStaysRamp) {
  // Window k of a ramp x_f = 10 f has mean 10 (k factor + (factor - 1) / 2).
  for (std::uint32_t factor : {2u, 3u, 4u, 8u}) {
    auto out = smooth_decimate(ramp(factor * 12), factor);
    for (std::size_t k = 0; k < 12; ++k)
      EXPECT_DOUBLE_EQ(out.frames.at(k, 0), 10.0 * (k * factor + (factor - 1) / 2.0));
  }
}

TEST(SliceTrack, DancerPointZ) {
  auto doc = make_example_document({.fluid_mass_count = 10, .frame_count = 2});
  // Declaration order: PK1..PK8 (8), SS (3), LS (2), then DP1 starts at column 13.
  auto slice = slice_track(doc, {"Dancer", "DP1", 2});
  ASSERT_EQ(slice.samples.size(), 2u);
  EXPECT_EQ(slice.samples[0], doc.frames.at(0, 15));
  EXPECT_EQ(slice.samples[1], doc.frames.at(1, 15));
  EXPECT_EQ(slice.freq, doc.scene.freq);
  EXPECT_EQ(track_column(doc.scene, {"Dancer", "DP1", 2}), 15u);
}

TEST(SliceTrack, HandBuiltFixture) {
  GmsDocument doc;
  doc.scene.freq = 10;
  doc.scene.frame_count = 2;
  doc.scene.units = {{"A", {{"p", Dimension::Plane2Dyz, VariableType::Position}}},
                     {"B", {{"q", Dimension::Space3Dxyz, VariableType::Force}}}};
  doc.frames = FrameMatrix(2, 5, {0, 1, 2, 3, 4, 10, 11, 12, 13, 14});
  EXPECT_EQ(slice_track(doc, {"B", "q", 2}).samples, (std::vector<double>{4, 14}));
  EXPECT_EQ(slice_track(doc, {"A", "p", 1}).samples, (std::vector<double>{1, 11}));
}

TEST(SliceTrack, WholeScalarSignal) {
  auto doc = ramp(5);
  EXPECT_EQ(slice_track(doc, {"u", "c0", 0}).samples, column(doc));
}

TEST(SliceTrack, Errors) {
  auto doc = make_example_document({.fluid_mass_count = 1, .frame_count = 1});
  try {
    slice_track(doc, {"Juggler", "BL1", 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxisOutOfRange);
  }
  try {
    slice_track(doc, {"Juggler", "BL3", 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPath);
  }
}

TEST(TrackStats, Examples) {
  auto a = track_stats(std::vector<double>{3, 3, 3});
  EXPECT_EQ(a.min, 3);
  EXPECT_EQ(a.max, 3);
  EXPECT_EQ(a.mean, 3);
  EXPECT_EQ(a.rms, 3);
  auto b = track_stats(std::vector<double>{-1, 1});
  EXPECT_EQ(b.min, -1);
  EXPECT_EQ(b.max, 1);
  EXPECT_EQ(b.mean, 0);
  EXPECT_EQ(b.rms, 1);
  auto c = track_stats(std::vector<double>{0, 0, 0, 4});
  EXPECT_EQ(c.min, 0);
  EXPECT_EQ(c.max, 4);
  EXPECT_EQ(c.mean, 1);
  EXPECT_EQ(c.rms, 2);
}

TEST(TrackStats, EmptyIsAnError) {
  try {
    track_stats(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySignal);
  }
}

TEST(TrackStats, OrderingProperties) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(3.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> xs(1 + rng() % 50);
    for (auto& x : xs) x = noise(rng);
    auto s = track_stats(xs);
    ASSERT_LE(s.min, s.mean + 1e-12);
    ASSERT_LE(s.mean, s.max + 1e-12);
    ASSERT_GE(s.rms + 1e-12, std::fabs(s.mean));
  }
}

TEST(ClassifyRate, Bands) {
  using V = std::vector<RateBand>;
  EXPECT_EQ(classify_rate(50), (V{RateBand::Visual, RateBand::Gesture}));
  EXPECT_EQ(classify_rate(3000), (V{RateBand::Gesture}));
  EXPECT_EQ(classify_rate(20000), (V{RateBand::Audio}));
  EXPECT_EQ(classify_rate(100), (V{RateBand::Visual, RateBand::Gesture}));
  EXPECT_EQ(classify_rate(100.5), (V{RateBand::Gesture}));
  EXPECT_EQ(classify_rate(0.5), (V{RateBand::Visual}));
  EXPECT_EQ(classify_rate(10000), (V{RateBand::Gesture, RateBand::Audio}));
  EXPECT_EQ(classify_rate(50000), V{});
  EXPECT_EQ(describe_bands(classify_rate(50)), "visual+gesture");
}

}  // namespace
}  // namespace gms
