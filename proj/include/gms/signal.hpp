#ifndef GMS_SIGNAL_HPP
#define GMS_SIGNAL_HPP

// Operations over decoded signals: integer-factor decimation, track slicing,
// per-track statistics and sampling-rate band classification.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gms/codec.hpp"
#include "gms/error.hpp"
#include "gms/scene.hpp"

namespace gms {

namespace detail {

inline void check_factor(std::uint32_t factor) {
  if (factor == 0) throw Error(ErrorCode::ZeroFactor, "decimation factor must be at least 1");
}

inline GmsDocument with_frames(const GmsDocument& doc, FrameMatrix frames, std::uint32_t factor) {
  GmsDocument out;
  out.version = doc.version;
  out.scene = doc.scene;
  out.scene.frame_count = static_cast<std::uint32_t>(frames.frame_count());
  out.scene.freq = doc.scene.freq / factor;
  out.frames = std::move(frames);
  out.unknown_chunks = doc.unknown_chunks;
  return out;
}

}  // namespace detail

/// Keeps frames 0, factor, 2*factor, ... and divides the frequency by factor.
/// No filtering: retained samples are bit-identical to the input.
inline GmsDocument decimate(const GmsDocument& doc, std::uint32_t factor) {
  detail::check_factor(factor);
  const auto& in = doc.frames;
  FrameMatrix out(0, in.track_count());
  for (std::size_t f = 0; f < in.frame_count(); f += factor) out.append_frame(in.frame(f));
  return detail::with_frames(doc, std::move(out), factor);
}

/// Boxcar-filtered decimation: output frame k is the mean of input frames
/// [k*factor, (k+1)*factor), the last window clipped to the signal end.
inline GmsDocument smooth_decimate(const GmsDocument& doc, std::uint32_t factor) {
  detail::check_factor(factor);
  const auto& in = doc.frames;
  auto tracks = in.track_count();
  FrameMatrix out(0, tracks);
  std::vector<double> acc(tracks);
  for (std::size_t start = 0; start < in.frame_count(); start += factor) {
    auto stop = std::min<std::size_t>(start + factor, in.frame_count());
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t f = start; f < stop; ++f)
      for (std::size_t t = 0; t < tracks; ++t) acc[t] += in.at(f, t);
    for (auto& v : acc) v /= static_cast<double>(stop - start);
    out.append_frame(acc);
  }
  return detail::with_frames(doc, std::move(out), factor);
}

struct ChannelPath {
  std::string unit;
  std::string channel;
  std::size_t axis = 0;

  friend bool operator==(const ChannelPath&, const ChannelPath&) = default;
};

struct TrackSlice {
  ChannelPath path;
  std::vector<double> samples;
  double freq = 0.0;
};

/// Column index of `path` in a frame of `scene`.
inline std::size_t track_column(const Scene& scene, const ChannelPath& path) {
  std::size_t column = 0;
  for (const auto& unit : scene.units) {
    for (const auto& channel : unit.channels) {
      auto width = track_count(channel);
      if (unit.name == path.unit && channel.name == path.channel) {
        if (path.axis >= width) {
          throw Error(ErrorCode::AxisOutOfRange,
                      "axis " + std::to_string(path.axis) + " of " + path.unit + "." +
                          path.channel + " (" + std::to_string(width) + " tracks)");
        }
        return column + path.axis;
      }
      column += width;
    }
  }
  throw Error(ErrorCode::UnknownPath, "no channel " + path.unit + "." + path.channel);
}

inline TrackSlice slice_track(const GmsDocument& doc, const ChannelPath& path) {
  auto column = track_column(doc.scene, path);
  TrackSlice slice{path, {}, doc.scene.freq};
  slice.samples.reserve(doc.frames.frame_count());
  for (std::size_t f = 0; f < doc.frames.frame_count(); ++f)
    slice.samples.push_back(doc.frames.at(f, column));
  return slice;
}

struct TrackStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double rms = 0.0;
};

inline TrackStats track_stats(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySignal, "statistics of an empty track");
  TrackStats s{samples[0], samples[0], 0.0, 0.0};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : samples) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    sum += x;
    sum_sq += x * x;
  }
  auto n = static_cast<double>(samples.size());
  s.mean = sum / n;
  s.rms = std::sqrt(sum_sq / n);
  return s;
}

inline TrackStats track_stats(const TrackSlice& slice) { return track_stats(slice.samples); }

enum class RateBand { Visual, Gesture, Audio };

constexpr std::string_view to_string(RateBand band) {
  switch (band) {
    case RateBand::Visual: return "visual";
    case RateBand::Gesture: return "gesture";
    case RateBand::Audio: return "audio";
  }
  return "?";
}

struct BandRange {
  double low;
  double high;
  bool low_inclusive;
};

// Advisory and overlapping. Visual is (0, 100], gesture [1, 10k], audio [10k, 40k].
constexpr BandRange band_range(RateBand band) {
  switch (band) {
    case RateBand::Visual: return {0.0, 100.0, false};
    case RateBand::Gesture: return {1.0, 10000.0, true};
    case RateBand::Audio: return {10000.0, 40000.0, true};
  }
  return {0.0, 0.0, false};
}

inline std::vector<RateBand> classify_rate(double freq) {
  std::vector<RateBand> bands;
  for (auto band : {RateBand::Visual, RateBand::Gesture, RateBand::Audio}) {
    auto r = band_range(band);
    bool above = r.low_inclusive ? freq >= r.low : freq > r.low;
    if (above && freq <= r.high) bands.push_back(band);
  }
  return bands;
}

/// "visual+gesture", or "none" outside every band.
inline std::string describe_bands(const std::vector<RateBand>& bands) {
  if (bands.empty()) return "none";
  std::string out;
  for (auto band : bands) {
    if (!out.empty()) out += "+";
    out += to_string(band);
  }
  return out;
}

}  // namespace gms

#endif  // GMS_SIGNAL_HPP
