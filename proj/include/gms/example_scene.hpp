#ifndef GMS_EXAMPLE_SCENE_HPP
#define GMS_EXAMPLE_SCENE_HPP

// Reference multi-performer scene: a pianist on 8 keys, a 3D stick, a 2D force
// pad, a 16-point dancer, a juggler's ball (position + rotation), and a fluid
// of n one-dimensional masses, all sharing one sampling rate.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "gms/codec.hpp"
#include "gms/error.hpp"
#include "gms/scene.hpp"

namespace gms {

struct ExampleSpec {
  std::uint32_t fluid_mass_count = 10;
  std::uint32_t frame_count = 1000;
  double freq = 1000.0;
  SampleType sample_type = SampleType::Float64;
  double scale = 1.0;
  std::uint32_t block_size = 0;
};

inline Scene make_example_scene(const ExampleSpec& spec) {
  if (spec.fluid_mass_count < 1) {
    throw Error(ErrorCode::Validation, "fluid mass count must be at least 1");
  }
  Scene scene;
  scene.name = "GestureScene";
  scene.frame_count = spec.frame_count;
  scene.freq = spec.freq;
  scene.sample_type = spec.sample_type;
  scene.scale = spec.scale;
  scene.block_size = spec.block_size;

  auto numbered = [](const std::string& prefix, std::uint32_t count, Dimension dim,
                     VariableType type) {
    std::vector<Channel> channels;
    for (std::uint32_t i = 1; i <= count; ++i)
      channels.push_back({prefix + std::to_string(i), dim, type});
    return channels;
  };

  scene.units.push_back(
      {"Pianist", numbered("PK", 8, Dimension::Axis1Dz, VariableType::Position)});
  scene.units.push_back({"StickSource", {{"SS", Dimension::Space3Dxyz, VariableType::Position}}});
  scene.units.push_back({"Light", {{"LS", Dimension::Plane2Dxy, VariableType::Force}}});
  scene.units.push_back(
      {"Dancer", numbered("DP", 16, Dimension::Space3Dxyz, VariableType::Position)});
  // The 6D ball is split into a position channel and a rotation channel.
  scene.units.push_back({"Juggler",
                         {{"BL1", Dimension::Space3Dxyz, VariableType::Position},
                          {"BL2", Dimension::Space3Dxyz, VariableType::Angle}}});
  scene.units.push_back({"Fluid", numbered("FL", spec.fluid_mass_count, Dimension::Scalar0D,
                                           VariableType::Velocity)});
  return scene;
}

/// Synthetic signal: column k at frame f is sin(2*pi*(0.5 + 0.1*k) * f / freq),
/// multiplied by 10 on intensive (force-like) channels.
inline GmsDocument make_example_document(const ExampleSpec& spec) {
  GmsDocument doc;
  doc.scene = make_example_scene(spec);
  auto columns = track_columns(doc.scene);
  doc.frames = FrameMatrix(spec.frame_count, columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& channel = doc.scene.units[columns[k].unit].channels[columns[k].channel];
    double gain = variable_class(channel.type) == VariableClass::Intensive ? 10.0 : 1.0;
    double hz = 0.5 + 0.1 * static_cast<double>(k);
    for (std::uint32_t f = 0; f < spec.frame_count; ++f) {
      double t = static_cast<double>(f) / spec.freq;
      doc.frames.at(f, k) = gain * std::sin(2.0 * std::numbers::pi * hz * t);
    }
  }
  return doc;
}

}  // namespace gms

#endif  // GMS_EXAMPLE_SCENE_HPP
