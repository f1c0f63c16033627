#ifndef GMS_SCENE_HPP
#define GMS_SCENE_HPP

// Scene / unit / channel / track vocabulary, derived sizes, and structural
// validation. A scene carries exactly one sampling frequency for all tracks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gms/error.hpp"

namespace gms {

// Enumeration codes are part of the file format and never change.

enum class Dimension : std::uint16_t {
  Scalar0D = 0,
  Axis1Dx = 1,
  Axis1Dy = 2,
  Axis1Dz = 3,
  Plane2Dxy = 4,
  Plane2Dyz = 5,
  Plane2Dzx = 6,  // some literature spells this plane "2Dzy"; axes are stored z then x
  Space3Dxyz = 7,
};

enum class VariableType : std::uint16_t {
  Position = 0,
  Force = 1,
  // Reserved: accepted on read, reported as advisory by validation.
  Angle = 2,
  Velocity = 3,
  Acceleration = 4,
  Torque = 5,
};

enum class VariableClass { Extensive, Intensive };

enum class SampleType : std::uint16_t {
  Float32 = 0,
  Float64 = 1,
  Long = 2,
};

constexpr bool is_legal(Dimension d) { return static_cast<std::uint16_t>(d) <= 7; }
constexpr bool is_legal(VariableType t) { return static_cast<std::uint16_t>(t) <= 5; }
constexpr bool is_legal(SampleType t) { return static_cast<std::uint16_t>(t) <= 2; }

constexpr bool is_reserved(VariableType t) {
  return is_legal(t) && t != VariableType::Position && t != VariableType::Force;
}

inline std::size_t track_count(Dimension d) {
  switch (d) {
    case Dimension::Scalar0D:
    case Dimension::Axis1Dx:
    case Dimension::Axis1Dy:
    case Dimension::Axis1Dz: return 1;
    case Dimension::Plane2Dxy:
    case Dimension::Plane2Dyz:
    case Dimension::Plane2Dzx: return 2;
    case Dimension::Space3Dxyz: return 3;
  }
  throw Error(ErrorCode::IllegalDimension,
              "dimension code " + std::to_string(static_cast<unsigned>(d)) + " is not defined");
}

/// One letter per track, in storage order ("s" for a pure scalar).
constexpr std::string_view axis_labels(Dimension d) {
  switch (d) {
    case Dimension::Scalar0D: return "s";
    case Dimension::Axis1Dx: return "x";
    case Dimension::Axis1Dy: return "y";
    case Dimension::Axis1Dz: return "z";
    case Dimension::Plane2Dxy: return "xy";
    case Dimension::Plane2Dyz: return "yz";
    case Dimension::Plane2Dzx: return "zx";
    case Dimension::Space3Dxyz: return "xyz";
  }
  return "";
}

constexpr std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Scalar0D: return "Scalar0D";
    case Dimension::Axis1Dx: return "Axis1Dx";
    case Dimension::Axis1Dy: return "Axis1Dy";
    case Dimension::Axis1Dz: return "Axis1Dz";
    case Dimension::Plane2Dxy: return "Plane2Dxy";
    case Dimension::Plane2Dyz: return "Plane2Dyz";
    case Dimension::Plane2Dzx: return "Plane2Dzx";
    case Dimension::Space3Dxyz: return "Space3Dxyz";
  }
  return "?";
}

constexpr std::string_view to_string(VariableType t) {
  switch (t) {
    case VariableType::Position: return "Position";
    case VariableType::Force: return "Force";
    case VariableType::Angle: return "Angle";
    case VariableType::Velocity: return "Velocity";
    case VariableType::Acceleration: return "Acceleration";
    case VariableType::Torque: return "Torque";
  }
  return "?";
}

constexpr std::string_view to_string(SampleType t) {
  switch (t) {
    case SampleType::Float32: return "Float32";
    case SampleType::Float64: return "Float64";
    case SampleType::Long: return "Long";
  }
  return "?";
}

constexpr std::string_view to_string(VariableClass c) {
  return c == VariableClass::Extensive ? "extensive" : "intensive";
}

inline VariableClass variable_class(VariableType t) {
  switch (t) {
    case VariableType::Position:
    case VariableType::Angle:
    case VariableType::Velocity:
    case VariableType::Acceleration: return VariableClass::Extensive;
    case VariableType::Force:
    case VariableType::Torque: return VariableClass::Intensive;
  }
  throw Error(ErrorCode::UnknownVariableType,
              "variable type code " + std::to_string(static_cast<unsigned>(t)) + " is not defined");
}

inline std::size_t byte_width(SampleType t) {
  switch (t) {
    case SampleType::Float32: return 4;
    case SampleType::Float64: return 8;
    case SampleType::Long: return 4;
  }
  throw Error(ErrorCode::UnknownSampleType,
              "sample type code " + std::to_string(static_cast<unsigned>(t)) + " is not defined");
}

template <typename Enum>
std::optional<Enum> enum_from_name(std::string_view name, Enum last) {
  for (std::uint16_t code = 0; code <= static_cast<std::uint16_t>(last); ++code) {
    if (to_string(static_cast<Enum>(code)) == name) return static_cast<Enum>(code);
  }
  return std::nullopt;
}

struct Channel {
  std::string name;
  Dimension dimension = Dimension::Scalar0D;
  VariableType type = VariableType::Position;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct Unit {
  std::string name;
  std::vector<Channel> channels;

  friend bool operator==(const Unit&, const Unit&) = default;
};

struct Scene {
  std::string name;
  std::uint32_t frame_count = 0;
  double freq = 0.0;  // Hz
  SampleType sample_type = SampleType::Float32;
  double scale = 1.0;  // stored sample * scale = physical value
  std::uint32_t block_size = 0;
  std::vector<Unit> units;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Physical sample values, frame-major: every track of frame 0, then frame 1...
class FrameMatrix {
 public:
  FrameMatrix() = default;
  FrameMatrix(std::size_t frames, std::size_t tracks)
      : frames_(frames), tracks_(tracks), values_(frames * tracks, 0.0) {}
  FrameMatrix(std::size_t frames, std::size_t tracks, std::vector<double> values)
      : frames_(frames), tracks_(tracks), values_(std::move(values)) {
    if (values_.size() != frames_ * tracks_) {
      throw Error(ErrorCode::WidthMismatch, "frame matrix holds " + std::to_string(values_.size()) +
                                                " values, expected " +
                                                std::to_string(frames_ * tracks_));
    }
  }

  std::size_t frame_count() const noexcept { return frames_; }
  std::size_t track_count() const noexcept { return tracks_; }

  double& at(std::size_t frame, std::size_t track) { return values_[frame * tracks_ + track]; }
  double at(std::size_t frame, std::size_t track) const { return values_[frame * tracks_ + track]; }

  std::span<double> frame(std::size_t f) { return std::span(values_).subspan(f * tracks_, tracks_); }
  std::span<const double> frame(std::size_t f) const {
    return std::span(values_).subspan(f * tracks_, tracks_);
  }

  void append_frame(std::span<const double> values) {
    if (values.size() != tracks_) {
      throw Error(ErrorCode::WidthMismatch, "frame has " + std::to_string(values.size()) +
                                                " tracks, expected " + std::to_string(tracks_));
    }
    values_.insert(values_.end(), values.begin(), values.end());
    ++frames_;
  }

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const FrameMatrix&, const FrameMatrix&) = default;

 private:
  std::size_t frames_ = 0;
  std::size_t tracks_ = 0;
  std::vector<double> values_;
};

inline std::size_t track_count(const Channel& channel) { return track_count(channel.dimension); }

inline std::size_t scene_track_count(const Scene& scene) {
  std::size_t total = 0;
  for (const auto& unit : scene.units)
    for (const auto& channel : unit.channels) total += track_count(channel);
  return total;
}

inline std::uint64_t frame_byte_size(const Scene& scene) {
  return static_cast<std::uint64_t>(scene_track_count(scene)) * byte_width(scene.sample_type);
}

inline std::uint64_t padded_frame_stride(std::uint64_t frame_bytes, std::uint32_t block_size) {
  if (block_size == 0) return frame_bytes;
  return (frame_bytes + block_size - 1) / block_size * block_size;
}

inline std::uint64_t padded_frame_stride(const Scene& scene) {
  return padded_frame_stride(frame_byte_size(scene), scene.block_size);
}

/// Where one track column comes from.
struct TrackRef {
  std::size_t unit = 0;
  std::size_t channel = 0;
  std::size_t axis = 0;
};

/// Columns in storage order: units, then channels, then axes.
inline std::vector<TrackRef> track_columns(const Scene& scene) {
  std::vector<TrackRef> columns;
  for (std::size_t u = 0; u < scene.units.size(); ++u)
    for (std::size_t c = 0; c < scene.units[u].channels.size(); ++c)
      for (std::size_t a = 0; a < track_count(scene.units[u].channels[c]); ++a)
        columns.push_back({u, c, a});
  return columns;
}

enum class Severity { Fatal, Advisory };

struct Violation {
  Severity severity = Severity::Fatal;
  std::string element;  // e.g. "scene", "unit 'Dancer'", "frames"
  std::string rule;

  std::string message() const {
    return std::string(severity == Severity::Fatal ? "error" : "advisory") + ": " + element +
           ": " + rule;
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline bool has_fatal(std::span<const Violation> violations) {
  for (const auto& v : violations)
    if (v.severity == Severity::Fatal) return true;
  return false;
}

/// Gesture sampling band used for the advisory frequency check.
inline constexpr double kGestureBandLowHz = 1.0;
inline constexpr double kGestureBandHighHz = 10000.0;

/// True when `physical` can be stored under the scene's sample type and scale.
inline bool representable(double physical, SampleType type, double scale) {
  double stored = physical / scale;
  switch (type) {
    case SampleType::Float64: return std::isfinite(stored);
    case SampleType::Float32:
      return std::isfinite(stored) && std::isfinite(static_cast<float>(stored));
    case SampleType::Long: {
      if (!std::isfinite(stored)) return false;
      double rounded = std::nearbyint(stored);
      return rounded >= -2147483648.0 && rounded <= 2147483647.0;
    }
  }
  return false;
}

/// Every broken invariant of `scene` (and of `frames`, when given). Empty means
/// valid. Advisory entries never make a scene unwritable.
inline std::vector<Violation> validate_scene(const Scene& scene,
                                             const FrameMatrix* frames = nullptr) {
  std::vector<Violation> out;
  auto fatal = [&](std::string element, std::string rule) {
    out.push_back({Severity::Fatal, std::move(element), std::move(rule)});
  };
  auto advise = [&](std::string element, std::string rule) {
    out.push_back({Severity::Advisory, std::move(element), std::move(rule)});
  };

  if (scene.name.size() > 0xFFFF) fatal("scene", "name longer than 65535 bytes");
  if (!std::isfinite(scene.freq) || scene.freq <= 0.0) {
    fatal("scene", "freq must be positive");
  } else if (scene.freq < kGestureBandLowHz || scene.freq > kGestureBandHighHz) {
    advise("scene", "freq " + std::to_string(scene.freq) +
                        " Hz lies outside the gesture band of 1 Hz to 10 kHz");
  }
  if (!std::isfinite(scene.scale) || scene.scale == 0.0) {
    fatal("scene", "scale must be finite and nonzero");
  }
  bool types_ok = is_legal(scene.sample_type);
  if (!types_ok) {
    fatal("scene", "sample type code " +
                       std::to_string(static_cast<unsigned>(scene.sample_type)) + " is not defined");
  }
  if (scene.units.empty()) fatal("scene", "must declare at least one unit");

  std::set<std::string> unit_names;
  for (const auto& unit : scene.units) {
    std::string element = "unit '" + unit.name + "'";
    if (unit.name.empty()) fatal(element, "name must not be empty");
    if (unit.name.size() > 0xFFFF) fatal(element, "name longer than 65535 bytes");
    if (!unit_names.insert(unit.name).second) fatal(element, "name is not unique in the scene");
    if (unit.channels.empty()) fatal(element, "must declare at least one channel");

    std::set<std::string> channel_names;
    for (const auto& channel : unit.channels) {
      std::string ce = "channel '" + unit.name + "." + channel.name + "'";
      if (channel.name.empty()) fatal(ce, "name must not be empty");
      if (channel.name.size() > 0xFFFF) fatal(ce, "name longer than 65535 bytes");
      if (!channel_names.insert(channel.name).second) fatal(ce, "name is not unique in its unit");
      if (!is_legal(channel.dimension)) {
        types_ok = false;
        fatal(ce, "dimension code " + std::to_string(static_cast<unsigned>(channel.dimension)) +
                      " is not defined");
      }
      if (!is_legal(channel.type)) {
        fatal(ce, "variable type code " + std::to_string(static_cast<unsigned>(channel.type)) +
                      " is not defined");
      } else if (is_reserved(channel.type)) {
        advise(ce, "variable type " + std::string(to_string(channel.type)) +
                       " is reserved in format version 0.1");
      }
    }
  }

  if (frames && types_ok) {
    auto tracks = scene_track_count(scene);
    if (frames->track_count() != tracks) {
      fatal("frames", "frame matrix has " + std::to_string(frames->track_count()) +
                          " tracks per frame, scene declares " + std::to_string(tracks));
    }
    if (frames->frame_count() != scene.frame_count) {
      fatal("frames", "frame matrix has " + std::to_string(frames->frame_count()) +
                          " frames, scene declares " + std::to_string(scene.frame_count));
    }
    bool scale_ok = std::isfinite(scene.scale) && scene.scale != 0.0;
    auto values = frames->values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto where = "frame " + std::to_string(i / std::max<std::size_t>(1, frames->track_count())) +
                   " track " + std::to_string(i % std::max<std::size_t>(1, frames->track_count()));
      if (!std::isfinite(values[i])) {
        fatal("frames", where + " is not finite");
        break;
      }
      if (scale_ok && !representable(values[i], scene.sample_type, scene.scale)) {
        fatal("frames", where + " is out of range for " +
                            std::string(to_string(scene.sample_type)) + " storage at this scale");
        break;
      }
    }
  }
  return out;
}

}  // namespace gms

#endif  // GMS_SCENE_HPP
