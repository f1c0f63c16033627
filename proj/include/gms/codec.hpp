#ifndef GMS_CODEC_HPP
#define GMS_CODEC_HPP

// Whole-file GMS encoding and decoding.
//
// Layout, all multi-byte fields big-endian:
//
//   FORM <ULONG size> "GMS "
//     VERS  USHORT major, USHORT minor
//     SCEN  USHORT nameLen, name, ULONG nbFrame, FLOAT64 freq, USHORT dataType,
//           FLOAT64 scale, ULONG blockSize
//     UNIT  USHORT nameLen, name            (one per unit, followed by its CHANs)
//     CHAN  USHORT nameLen, name, USHORT dimension, USHORT type
//     ...   unknown chunks, preserved verbatim
//     FRAM  nbFrame strides; each stride is one frame zero-padded to a
//           multiple of blockSize
//
// The reader also accepts the form type "GSM ".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gms/bytes.hpp"
#include "gms/chunk.hpp"
#include "gms/error.hpp"
#include "gms/scene.hpp"

namespace gms {

struct Version {
  std::uint16_t major = 0;
  std::uint16_t minor = 1;

  friend bool operator==(const Version&, const Version&) = default;
};

inline constexpr Version kFormatVersion{0, 1};
inline constexpr ChunkId kFormType{"GMS "};
inline constexpr ChunkId kLegacyFormType{"GSM "};

struct GmsDocument {
  Version version = kFormatVersion;
  Scene scene;
  FrameMatrix frames;
  std::vector<RawChunk> unknown_chunks;

  friend bool operator==(const GmsDocument&, const GmsDocument&) = default;
};

/// Raised when a scene or its frames fail validation before writing.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorCode::Validation, summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
      if (v.severity != Severity::Fatal) continue;
      if (!out.empty()) out += "; ";
      out += v.element + ": " + v.rule;
    }
    return out;
  }

  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Sample conversion

inline void store_sample(double physical, SampleType type, double scale,
                         std::span<std::uint8_t> out) {
  double stored = physical / scale;
  switch (type) {
    case SampleType::Float32:
      store_be<float>(static_cast<float>(stored), out.first<4>());
      return;
    case SampleType::Float64:
      store_be<double>(stored, out.first<8>());
      return;
    case SampleType::Long:
      store_be<std::int32_t>(static_cast<std::int32_t>(std::nearbyint(stored)), out.first<4>());
      return;
  }
  throw Error(ErrorCode::UnknownSampleType, "cannot store sample");
}

inline double load_sample(std::span<const std::uint8_t> in, SampleType type, double scale) {
  switch (type) {
    case SampleType::Float32: return static_cast<double>(load_be<float>(in.first<4>())) * scale;
    case SampleType::Float64: return load_be<double>(in.first<8>()) * scale;
    case SampleType::Long: return static_cast<double>(load_be<std::int32_t>(in.first<4>())) * scale;
  }
  throw Error(ErrorCode::UnknownSampleType, "cannot load sample");
}

/// Fills `stride` with one frame: samples in track order, then zero padding.
inline void encode_frame(std::span<const double> frame, const Scene& scene,
                         std::span<std::uint8_t> stride) {
  auto width = byte_width(scene.sample_type);
  std::fill(stride.begin(), stride.end(), std::uint8_t{0});
  for (std::size_t t = 0; t < frame.size(); ++t)
    store_sample(frame[t], scene.sample_type, scene.scale, stride.subspan(t * width, width));
}

inline void decode_frame(std::span<const std::uint8_t> stride, const Scene& scene,
                         std::span<double> frame) {
  auto width = byte_width(scene.sample_type);
  for (std::size_t t = 0; t < frame.size(); ++t)
    frame[t] = load_sample(stride.subspan(t * width, width), scene.sample_type, scene.scale);
}

// ---------------------------------------------------------------------------
// Chunk payloads

namespace detail {

inline Bytes scene_payload(const Scene& scene) {
  ByteWriter w;
  w.put_name(scene.name)
      .put(scene.frame_count)
      .put(scene.freq)
      .put(static_cast<std::uint16_t>(scene.sample_type))
      .put(scene.scale)
      .put(scene.block_size);
  return std::move(w).take();
}

inline Bytes unit_payload(const Unit& unit) {
  ByteWriter w;
  w.put_name(unit.name);
  return std::move(w).take();
}

inline Bytes channel_payload(const Channel& channel) {
  ByteWriter w;
  w.put_name(channel.name)
      .put(static_cast<std::uint16_t>(channel.dimension))
      .put(static_cast<std::uint16_t>(channel.type));
  return std::move(w).take();
}

inline void warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

// Trailing bytes inside a known chunk are tolerated for forward compatibility.
inline void check_consumed(const ByteReader& r, const ChunkHeader& h,
                           std::vector<std::string>* warnings) {
  if (r.remaining() != 0) {
    warn(warnings, "chunk '" + h.id.str() + "' at byte offset " + std::to_string(h.offset) +
                       " has " + std::to_string(r.remaining()) + " unread trailing bytes");
  }
}

}  // namespace detail

/// Everything before the frame payload.
struct DocumentPrefix {
  Version version = kFormatVersion;
  Scene scene;
  std::vector<RawChunk> unknown_chunks;
  ChunkHeader frames_header;
};

/// Reads and checks the 12-byte FORM header. Returns the absolute end of the
/// FORM payload.
template <ByteSource Source>
std::uint64_t read_form_header(Source& source) {
  std::array<std::uint8_t, 12> raw{};
  auto start = source.position();
  auto got = source.read(raw);
  if (got >= 4 && !std::equal(raw.begin(), raw.begin() + 4, ids::kForm.bytes().begin())) {
    throw Error(ErrorCode::BadMagic, "file does not start with 'FORM'", start);
  }
  if (got < raw.size()) {
    throw Error(ErrorCode::Truncated, "FORM header needs 12 bytes, " + std::to_string(got) +
                                          " present", start);
  }
  auto size = load_be<std::uint32_t>(std::span<const std::uint8_t>(raw).subspan<4, 4>());
  auto type = std::span<const std::uint8_t>(raw).subspan<8, 4>();
  bool known_type = std::equal(type.begin(), type.end(), kFormType.bytes().begin()) ||
                    std::equal(type.begin(), type.end(), kLegacyFormType.bytes().begin());
  if (!known_type) {
    throw Error(ErrorCode::BadMagic, "FORM type is not 'GMS '", start + 8, "FORM");
  }
  if (size < 4) throw Error(ErrorCode::Structure, "FORM size smaller than its type", start + 4);
  return start + 8 + size;
}

/// Consumes chunks up to and including the FRAM header, leaving the scanner
/// at the first frame byte.
template <ByteSource Source>
DocumentPrefix read_prefix(ChunkScanner<Source>& scanner, std::vector<std::string>* warnings) {
  DocumentPrefix prefix;
  bool seen_any = false;
  bool seen_version = false;
  bool seen_scene = false;

  while (auto header = scanner.next_header()) {
    const auto& h = *header;
    bool first = !seen_any;
    seen_any = true;

    if (h.id == ids::kFrames) {
      if (!seen_scene) {
        throw Error(ErrorCode::Structure, "FRAM appears before SCEN", h.offset, "FRAM");
      }
      if (!seen_version) {
        detail::warn(warnings, "no VERS chunk; assuming version 0.1");
      }
      prefix.frames_header = h;
      auto stride = padded_frame_stride(prefix.scene);
      auto expected = static_cast<std::uint64_t>(prefix.scene.frame_count) * stride;
      if (h.size != expected) {
        throw Error(ErrorCode::Structure,
                    "FRAM holds " + std::to_string(h.size) + " bytes but nbFrame " +
                        std::to_string(prefix.scene.frame_count) + " x stride " +
                        std::to_string(stride) + " = " + std::to_string(expected),
                    h.offset, "FRAM");
      }
      return prefix;
    }

    auto payload = scanner.read_payload(h);
    ByteReader r(payload, h.payload_offset(), h.id.str());

    if (h.id == ids::kVersion) {
      if (!first) {
        throw Error(ErrorCode::Structure,
                    seen_version ? "more than one VERS chunk" : "VERS must be the first chunk",
                    h.offset, "VERS");
      }
      seen_version = true;
      prefix.version.major = r.get<std::uint16_t>();
      prefix.version.minor = r.get<std::uint16_t>();
      if (prefix.version.major > kFormatVersion.major) {
        throw Error(ErrorCode::UnsupportedVersion,
                    "version " + std::to_string(prefix.version.major) + "." +
                        std::to_string(prefix.version.minor) + " is newer than 0.x",
                    h.offset, "VERS");
      }
      detail::check_consumed(r, h, warnings);
    } else if (h.id == ids::kScene) {
      if (seen_scene) throw Error(ErrorCode::Structure, "more than one SCEN chunk", h.offset, "SCEN");
      seen_scene = true;
      auto& s = prefix.scene;
      s.name = r.get_name();
      s.frame_count = r.get<std::uint32_t>();
      s.freq = r.get<double>();
      auto type_offset = r.offset();
      s.sample_type = static_cast<SampleType>(r.get<std::uint16_t>());
      if (!is_legal(s.sample_type)) {
        throw Error(ErrorCode::UnknownSampleType,
                    "dataType code " + std::to_string(static_cast<unsigned>(s.sample_type)) +
                        " is not defined",
                    type_offset, "SCEN");
      }
      s.scale = r.get<double>();
      s.block_size = r.get<std::uint32_t>();
      detail::check_consumed(r, h, warnings);
    } else if (h.id == ids::kUnit) {
      if (!seen_scene) throw Error(ErrorCode::Structure, "UNIT appears before SCEN", h.offset, "UNIT");
      prefix.scene.units.push_back({r.get_name(), {}});
      detail::check_consumed(r, h, warnings);
    } else if (h.id == ids::kChannel) {
      Channel channel;
      channel.name = r.get_name();
      if (prefix.scene.units.empty()) {
        throw Error(ErrorCode::Structure,
                    "orphan channel '" + channel.name + "' declared before any UNIT", h.offset,
                    "CHAN");
      }
      auto dim_offset = r.offset();
      channel.dimension = static_cast<Dimension>(r.get<std::uint16_t>());
      if (!is_legal(channel.dimension)) {
        throw Error(ErrorCode::IllegalDimension,
                    "channel '" + channel.name + "' has unknown dimension code " +
                        std::to_string(static_cast<unsigned>(channel.dimension)),
                    dim_offset, "CHAN");
      }
      auto type_offset = r.offset();
      channel.type = static_cast<VariableType>(r.get<std::uint16_t>());
      if (!is_legal(channel.type)) {
        throw Error(ErrorCode::UnknownVariableType,
                    "channel '" + channel.name + "' has unknown type code " +
                        std::to_string(static_cast<unsigned>(channel.type)),
                    type_offset, "CHAN");
      }
      prefix.scene.units.back().channels.push_back(std::move(channel));
      detail::check_consumed(r, h, warnings);
    } else if (h.id == ids::kForm) {
      throw Error(ErrorCode::Structure, "nested FORM is not supported", h.offset, "FORM");
    } else {
      if (first) {
        detail::warn(warnings, "no VERS chunk; assuming version 0.1");
        seen_version = true;  // the warning is issued once
      }
      detail::warn(warnings, "skipping unknown chunk '" + h.id.str() + "' at byte offset " +
                                 std::to_string(h.offset));
      prefix.unknown_chunks.push_back({h.id, std::move(payload)});
    }
  }
  throw Error(ErrorCode::Structure, seen_scene ? "missing FRAM chunk" : "missing SCEN chunk",
              scanner.source().position());
}

// ---------------------------------------------------------------------------
// Streaming reader

/// Lazily decodes frames from an open FRAM payload. Single consumer.
template <ByteSource Source>
class FrameStream {
 public:
  FrameStream(ChunkScanner<Source> scanner, DocumentPrefix prefix)
      : scanner_(std::move(scanner)),
        prefix_(std::move(prefix)),
        tracks_(scene_track_count(prefix_.scene)),
        stride_(padded_frame_stride(prefix_.scene)),
        buffer_(static_cast<std::size_t>(stride_)) {}

  const Scene& scene() const noexcept { return prefix_.scene; }
  Version version() const noexcept { return prefix_.version; }
  const std::vector<RawChunk>& unknown_chunks() const noexcept { return prefix_.unknown_chunks; }
  std::uint64_t stride() const noexcept { return stride_; }
  std::size_t track_count() const noexcept { return tracks_; }
  std::uint32_t remaining() const noexcept { return prefix_.scene.frame_count - index_; }

  /// Offset of the next frame relative to the start of the FRAM payload.
  std::uint64_t next_frame_offset() const noexcept { return index_ * stride_; }

  /// Absolute offset of the FRAM payload in the underlying source.
  std::uint64_t payload_offset() const noexcept { return prefix_.frames_header.payload_offset(); }

  /// Decodes the next frame into `out` (track_count() values). Returns false
  /// once every frame has been read.
  bool read_next_frame(std::span<double> out) {
    if (remaining() == 0) return false;
    if (out.size() != tracks_) {
      throw Error(ErrorCode::WidthMismatch, "output holds " + std::to_string(out.size()) +
                                                " tracks, frame has " + std::to_string(tracks_));
    }
    auto at = scanner_.source().position();
    auto got = scanner_.source().read(buffer_);
    if (got != buffer_.size()) {
      throw Error(ErrorCode::Truncated,
                  "frame " + std::to_string(index_) + " needs " + std::to_string(stride_) +
                      " bytes, " + std::to_string(got) + " remain",
                  at, "FRAM");
    }
    decode_frame(buffer_, prefix_.scene, out);
    ++index_;
    return true;
  }

  std::optional<std::vector<double>> read_next_frame() {
    std::vector<double> frame(tracks_);
    if (!read_next_frame(frame)) return std::nullopt;
    return frame;
  }

  ChunkScanner<Source>& scanner() { return scanner_; }

 private:
  ChunkScanner<Source> scanner_;
  DocumentPrefix prefix_;
  std::size_t tracks_;
  std::uint64_t stride_;
  Bytes buffer_;
  std::uint32_t index_ = 0;
};

template <ByteSource Source>
FrameStream<Source> open_frame_stream(Source source, std::vector<std::string>* warnings = nullptr) {
  auto form_end = read_form_header(source);
  ChunkScanner<Source> scanner(std::move(source), form_end);
  auto prefix = read_prefix(scanner, warnings);
  return FrameStream<Source>(std::move(scanner), std::move(prefix));
}

/// Stream over bytes the caller keeps alive. The buffer may be shorter than
/// the FORM declares; missing frames surface as truncation errors on read.
inline FrameStream<SpanSource> open_frame_stream(ByteView bytes,
                                                 std::vector<std::string>* warnings = nullptr) {
  return open_frame_stream(SpanSource(bytes), warnings);
}

inline FrameStream<StreamSource> open_frame_stream(std::istream& in,
                                                   std::vector<std::string>* warnings = nullptr) {
  return open_frame_stream(StreamSource(in), warnings);
}

// ---------------------------------------------------------------------------
// Whole-document decode

inline GmsDocument decode_document(ByteView bytes, std::vector<std::string>* warnings = nullptr) {
  SpanSource source(bytes);
  auto form_end = read_form_header(source);
  if (form_end > bytes.size()) {
    throw Error(ErrorCode::Truncated,
                "FORM declares " + std::to_string(form_end - 8) + " bytes but file holds " +
                    std::to_string(bytes.size() - 8),
                4, "FORM");
  }
  if (form_end < bytes.size()) {
    detail::warn(warnings, std::to_string(bytes.size() - form_end) +
                               " trailing bytes after FORM ignored");
  }

  ChunkScanner<SpanSource> scanner(std::move(source), form_end);
  auto prefix = read_prefix(scanner, warnings);
  const auto& h = prefix.frames_header;
  auto payload = bytes.subspan(static_cast<std::size_t>(h.payload_offset()), h.size);
  scanner.source().skip(h.size);
  scanner.skip_pad(h);

  GmsDocument doc;
  doc.version = prefix.version;
  doc.unknown_chunks = std::move(prefix.unknown_chunks);
  doc.scene = std::move(prefix.scene);

  auto tracks = scene_track_count(doc.scene);
  auto stride = padded_frame_stride(doc.scene);
  doc.frames = FrameMatrix(doc.scene.frame_count, tracks);
  // A scene without tracks has zero-width frames; nothing to decode.
  for (std::uint32_t f = 0; tracks > 0 && f < doc.scene.frame_count; ++f) {
    decode_frame(payload.subspan(static_cast<std::size_t>(f * stride),
                                 static_cast<std::size_t>(stride)),
                 doc.scene, doc.frames.frame(f));
  }

  if (auto extra = scanner.next_header()) {
    throw Error(ErrorCode::Structure,
                extra->id == ids::kFrames ? "more than one FRAM chunk"
                                          : "chunk '" + extra->id.str() + "' follows FRAM",
                extra->offset, extra->id.str());
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Writing

/// Growable in-memory sink.
class VectorSink {
 public:
  void write(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  std::uint64_t position() const { return out_.size(); }
  void patch(std::uint64_t at, ByteView bytes) {
    std::copy(bytes.begin(), bytes.end(), out_.begin() + static_cast<std::ptrdiff_t>(at));
  }
  void flush() {}

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

/// Sink over a std::ostream. Seekable streams are back-patched in place;
/// others are buffered in memory until flush().
class OStreamSink {
 public:
  explicit OStreamSink(std::ostream& out) : out_(&out) {
    auto pos = out_->tellp();
    seekable_ = pos != std::streampos(-1);
    if (seekable_) start_ = pos;
  }

  void write(ByteView bytes) {
    if (seekable_) {
      out_->write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
      check();
    } else {
      buffer_.write(bytes);
    }
    written_ += bytes.size();
  }

  std::uint64_t position() const { return written_; }

  void patch(std::uint64_t at, ByteView bytes) {
    if (!seekable_) {
      buffer_.patch(at, bytes);
      return;
    }
    auto end = out_->tellp();
    out_->seekp(start_ + static_cast<std::streamoff>(at));
    out_->write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
    out_->seekp(end);
    check();
  }

  void flush() {
    if (!seekable_) {
      out_->write(reinterpret_cast<const char*>(buffer_.bytes().data()),
                  static_cast<std::streamsize>(buffer_.bytes().size()));
    }
    out_->flush();
    check();
  }

 private:
  void check() const {
    if (!*out_) throw Error(ErrorCode::Io, "write failed");
  }

  std::ostream* out_;
  bool seekable_ = false;
  std::streampos start_{};
  VectorSink buffer_;
  std::uint64_t written_ = 0;
};

template <typename S>
concept ByteSink = requires(S& s, ByteView bytes, std::uint64_t at) {
  s.write(bytes);
  { s.position() } -> std::convertible_to<std::uint64_t>;
  s.patch(at, bytes);
  s.flush();
};

/// Writes a GMS file frame by frame. The header is emitted on construction
/// with placeholder sizes; finalize() back-patches nbFrame and every size
/// that depends on the frame count.
template <ByteSink Sink>
class FrameWriter {
 public:
  FrameWriter(Sink sink, Scene scene, std::vector<RawChunk> unknown_chunks = {})
      : sink_(std::move(sink)), scene_(std::move(scene)) {
    auto violations = validate_scene(scene_);
    if (has_fatal(violations)) throw ValidationError(std::move(violations));
    tracks_ = scene_track_count(scene_);
    stride_ = padded_frame_stride(scene_);
    scene_.frame_count = 0;
    stride_buffer_.resize(static_cast<std::size_t>(stride_));

    Bytes head;
    append_chunk_header(head, ids::kForm, 0);
    head.insert(head.end(), kFormType.bytes().begin(), kFormType.bytes().end());

    ByteWriter version;
    version.put(kFormatVersion.major).put(kFormatVersion.minor);
    append_chunk(head, ids::kVersion, version.bytes());

    // nbFrame sits right after the SCEN header and the name field.
    frame_count_at_ = head.size() + 8 + 2 + scene_.name.size();
    append_chunk(head, ids::kScene, detail::scene_payload(scene_));

    for (const auto& unit : scene_.units) {
      append_chunk(head, ids::kUnit, detail::unit_payload(unit));
      for (const auto& channel : unit.channels)
        append_chunk(head, ids::kChannel, detail::channel_payload(channel));
    }
    for (const auto& chunk : unknown_chunks) append_chunk(head, chunk.id, chunk.payload);

    frames_size_at_ = head.size() + 4;
    append_chunk_header(head, ids::kFrames, 0);
    sink_.write(head);
  }

  std::size_t track_count() const noexcept { return tracks_; }
  std::uint64_t stride() const noexcept { return stride_; }
  std::uint32_t frames_written() const noexcept { return scene_.frame_count; }
  std::uint64_t bytes_written() const { return sink_.position(); }

  /// Appends one frame of physical values. Returns the total bytes written.
  std::uint64_t append_frame(std::span<const double> frame) {
    check_open();
    check_frame(frame, 0);
    check_capacity(1);
    write_frame(frame);
    return bytes_written();
  }

  /// Appends every frame of `frames`, or nothing if any frame is unwritable.
  std::uint64_t append_frames(const FrameMatrix& frames) {
    check_open();
    if (frames.track_count() != tracks_ && frames.frame_count() > 0) {
      throw Error(ErrorCode::WidthMismatch, "frames have " + std::to_string(frames.track_count()) +
                                                " tracks, scene declares " +
                                                std::to_string(tracks_));
    }
    for (std::size_t f = 0; f < frames.frame_count(); ++f) check_frame(frames.frame(f), f);
    check_capacity(frames.frame_count());
    for (std::size_t f = 0; f < frames.frame_count(); ++f) write_frame(frames.frame(f));
    return bytes_written();
  }

  /// Fixes up sizes and flushes. May be called once.
  void finalize() {
    if (finalized_) throw Error(ErrorCode::FinalizeTwice, "writer already finalized");
    finalized_ = true;
    auto frames_size = static_cast<std::uint64_t>(scene_.frame_count) * stride_;
    if (frames_size % 2 != 0) {
      const std::uint8_t pad = 0;
      sink_.write(ByteView(&pad, 1));
    }
    auto form_size = sink_.position() - 8;
    if (form_size > kMaxChunkPayload) {
      throw Error(ErrorCode::Oversize, "file exceeds the 4 GiB FORM limit");
    }
    sink_.patch(4, encode_primitive(static_cast<std::uint32_t>(form_size)));
    sink_.patch(frame_count_at_, encode_primitive(scene_.frame_count));
    sink_.patch(frames_size_at_, encode_primitive(static_cast<std::uint32_t>(frames_size)));
    sink_.flush();
  }

  const Sink& sink() const& { return sink_; }
  Sink take_sink() && { return std::move(sink_); }

 private:
  void check_open() const {
    if (finalized_) throw Error(ErrorCode::FinalizeTwice, "writer already finalized");
  }

  void check_frame(std::span<const double> frame, std::size_t index) const {
    if (frame.size() != tracks_) {
      throw Error(ErrorCode::WidthMismatch, "frame has " + std::to_string(frame.size()) +
                                                " tracks, scene declares " +
                                                std::to_string(tracks_));
    }
    for (std::size_t t = 0; t < frame.size(); ++t) {
      if (!representable(frame[t], scene_.sample_type, scene_.scale)) {
        throw Error(ErrorCode::SampleOutOfRange,
                    "frame " + std::to_string(index) + " track " + std::to_string(t) +
                        " cannot be stored as " + std::string(to_string(scene_.sample_type)));
      }
    }
  }

  void check_capacity(std::uint64_t more) const {
    auto frames = scene_.frame_count + more;
    if (frames > 0xFFFFFFFFull || frames * stride_ > kMaxChunkPayload) {
      throw Error(ErrorCode::Oversize, "FRAM payload would exceed 4 GiB");
    }
  }

  void write_frame(std::span<const double> frame) {
    encode_frame(frame, scene_, stride_buffer_);
    sink_.write(stride_buffer_);
    ++scene_.frame_count;
  }

  Sink sink_;
  Scene scene_;
  std::size_t tracks_ = 0;
  std::uint64_t stride_ = 0;
  std::uint64_t frame_count_at_ = 0;
  std::uint64_t frames_size_at_ = 0;
  Bytes stride_buffer_;
  bool finalized_ = false;
};

inline Bytes encode_document(const GmsDocument& doc) {
  auto violations = validate_scene(doc.scene, &doc.frames);
  if (has_fatal(violations)) throw ValidationError(std::move(violations));
  FrameWriter writer(VectorSink{}, doc.scene, doc.unknown_chunks);
  writer.append_frames(doc.frames);
  writer.finalize();
  return std::move(writer).take_sink().take();
}

// ---------------------------------------------------------------------------
// Layout verification

/// Structural pass over raw bytes that does not go through the decoder: FORM
/// size, every chunk size, pad bytes, and the FRAM size against nbFrame x
/// stride. Returns problems; empty means the byte layout is self-consistent.
inline std::vector<std::string> verify_layout(ByteView bytes) {
  std::vector<std::string> problems;
  if (bytes.size() < 12) return {"file shorter than a FORM header"};
  auto form_size = load_be<std::uint32_t>(bytes.subspan<4, 4>());
  if (form_size != bytes.size() - 8) {
    problems.push_back("FORM size " + std::to_string(form_size) + " but " +
                       std::to_string(bytes.size() - 8) + " bytes follow the size field");
  }

  std::optional<Scene> scene;
  std::uint64_t tracks = 0;
  std::size_t at = 12;
  while (at < bytes.size()) {
    if (bytes.size() - at < 8) {
      problems.push_back("partial chunk header at offset " + std::to_string(at));
      break;
    }
    std::string id(bytes.begin() + static_cast<std::ptrdiff_t>(at),
                   bytes.begin() + static_cast<std::ptrdiff_t>(at + 4));
    auto size = load_be<std::uint32_t>(bytes.subspan(at + 4).first<4>());
    if (at + 8 + size + (size % 2) > bytes.size()) {
      problems.push_back("chunk '" + id + "' at offset " + std::to_string(at) + " overruns file");
      break;
    }
    auto payload = bytes.subspan(at + 8, size);
    if (size % 2 != 0 && bytes[at + 8 + size] != 0) {
      problems.push_back("chunk '" + id + "' pad byte is not zero");
    }
    try {
      ByteReader r(payload);
      if (id == "SCEN") {
        Scene s;
        s.name = r.get_name();
        s.frame_count = r.get<std::uint32_t>();
        s.freq = r.get<double>();
        s.sample_type = static_cast<SampleType>(r.get<std::uint16_t>());
        s.scale = r.get<double>();
        s.block_size = r.get<std::uint32_t>();
        scene = s;
      } else if (id == "CHAN") {
        r.get_name();
        tracks += track_count(static_cast<Dimension>(r.get<std::uint16_t>()));
      } else if (id == "FRAM") {
        if (!scene) {
          problems.push_back("FRAM precedes SCEN");
        } else {
          auto stride = padded_frame_stride(tracks * byte_width(scene->sample_type),
                                            scene->block_size);
          if (size != scene->frame_count * stride) {
            problems.push_back("FRAM size " + std::to_string(size) + " != nbFrame " +
                               std::to_string(scene->frame_count) + " x stride " +
                               std::to_string(stride));
          }
        }
      }
    } catch (const Error& e) {
      problems.push_back("chunk '" + id + "' at offset " + std::to_string(at) + ": " + e.what());
    }
    at += 8 + size + (size % 2);
  }
  return problems;
}

}  // namespace gms

#endif  // GMS_CODEC_HPP
