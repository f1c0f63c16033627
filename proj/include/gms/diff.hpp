#ifndef GMS_DIFF_HPP
#define GMS_DIFF_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gms/codec.hpp"
#include "gms/csv.hpp"
#include "gms/scene.hpp"

namespace gms {

struct SampleMismatch {
  std::size_t frame = 0;
  std::size_t track = 0;
  double a = 0.0;
  double b = 0.0;
};

struct DiffReport {
  std::vector<std::string> structural;  // any entry makes the documents differ
  std::vector<std::string> notes;       // storage-only differences, informational
  std::vector<SampleMismatch> samples;  // the first `limit` sample mismatches
  std::size_t sample_mismatch_count = 0;
  double max_abs_difference = 0.0;

  bool equal() const { return structural.empty() && sample_mismatch_count == 0; }
};

/// Compares the signal content of two documents. Structure means the scene
/// name, frequency, frame count and the unit/channel tree. Sample type, scale,
/// block size and unknown chunks are storage choices and only produce notes,
/// so a file and its re-quantized twin can be compared sample by sample.
inline DiffReport diff_documents(const GmsDocument& a, const GmsDocument& b, double tolerance,
                                 std::size_t limit = 10) {
  DiffReport r;
  const auto& sa = a.scene;
  const auto& sb = b.scene;
  if (sa.name != sb.name) r.structural.push_back("scene name '" + sa.name + "' vs '" + sb.name + "'");
  if (sa.freq != sb.freq) {
    r.structural.push_back("freq " + format_double(sa.freq) + " vs " + format_double(sb.freq));
  }
  if (sa.frame_count != sb.frame_count) {
    r.structural.push_back("nbFrame " + std::to_string(sa.frame_count) + " vs " +
                           std::to_string(sb.frame_count));
  }
  if (sa.units.size() != sb.units.size()) {
    r.structural.push_back("unit count " + std::to_string(sa.units.size()) + " vs " +
                           std::to_string(sb.units.size()));
  }
  for (std::size_t u = 0; u < std::min(sa.units.size(), sb.units.size()); ++u) {
    const auto& ua = sa.units[u];
    const auto& ub = sb.units[u];
    if (ua.name != ub.name) {
      r.structural.push_back("unit " + std::to_string(u) + " '" + ua.name + "' vs '" + ub.name + "'");
    }
    if (ua.channels.size() != ub.channels.size()) {
      r.structural.push_back("unit '" + ua.name + "' channel count " +
                             std::to_string(ua.channels.size()) + " vs " +
                             std::to_string(ub.channels.size()));
    }
    for (std::size_t c = 0; c < std::min(ua.channels.size(), ub.channels.size()); ++c) {
      const auto& ca = ua.channels[c];
      const auto& cb = ub.channels[c];
      if (ca != cb) {
        r.structural.push_back("channel " + ua.name + "." + ca.name + " [" +
                               std::string(to_string(ca.dimension)) + ", " +
                               std::string(to_string(ca.type)) + "] vs " + ub.name + "." + cb.name +
                               " [" + std::string(to_string(cb.dimension)) + ", " +
                               std::string(to_string(cb.type)) + "]");
      }
    }
  }

  if (sa.sample_type != sb.sample_type) {
    r.notes.push_back("sample type " + std::string(to_string(sa.sample_type)) + " vs " +
                      std::string(to_string(sb.sample_type)));
  }
  if (sa.scale != sb.scale) {
    r.notes.push_back("scale " + format_double(sa.scale) + " vs " + format_double(sb.scale));
  }
  if (sa.block_size != sb.block_size) {
    r.notes.push_back("blockSize " + std::to_string(sa.block_size) + " vs " +
                      std::to_string(sb.block_size));
  }
  if (a.unknown_chunks != b.unknown_chunks) r.notes.push_back("unknown chunks differ");

  if (!r.structural.empty()) return r;
  if (a.frames.track_count() != b.frames.track_count() ||
      a.frames.frame_count() != b.frames.frame_count()) {
    r.structural.push_back("frame matrix shape differs");
    return r;
  }
  for (std::size_t f = 0; f < a.frames.frame_count(); ++f) {
    for (std::size_t t = 0; t < a.frames.track_count(); ++t) {
      double va = a.frames.at(f, t);
      double vb = b.frames.at(f, t);
      double d = std::fabs(va - vb);
      r.max_abs_difference = std::max(r.max_abs_difference, d);
      if (!(d <= tolerance)) {
        if (r.samples.size() < limit) r.samples.push_back({f, t, va, vb});
        ++r.sample_mismatch_count;
      }
    }
  }
  return r;
}

}  // namespace gms

#endif  // GMS_DIFF_HPP
