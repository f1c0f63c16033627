#ifndef GMS_CHUNK_HPP
#define GMS_CHUNK_HPP

// IFF chunk framing: 4-byte id, ULONG payload size, payload, and one zero pad
// byte after odd-sized payloads. The size never counts the header or the pad.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gms/bytes.hpp"
#include "gms/error.hpp"

namespace gms {

class ChunkId {
 public:
  constexpr ChunkId() = default;

  /// Throws MalformedId unless `text` is exactly four printable ASCII bytes.
  constexpr ChunkId(std::string_view text) {  // NOLINT(google-explicit-constructor)
    if (text.size() != 4) throw_bad_length(text.size());
    for (std::size_t i = 0; i < 4; ++i) bytes_[i] = static_cast<std::uint8_t>(text[i]);
    check();
  }

  static ChunkId from_bytes(ByteView raw, std::uint64_t offset = 0) {
    ChunkId id;
    std::copy_n(raw.begin(), 4, id.bytes_.begin());
    id.check(offset);
    return id;
  }

  static constexpr bool printable(std::uint8_t b) { return b >= 0x20 && b <= 0x7E; }

  std::string str() const { return {bytes_.begin(), bytes_.end()}; }
  constexpr const std::array<std::uint8_t, 4>& bytes() const { return bytes_; }

  friend constexpr bool operator==(const ChunkId&, const ChunkId&) = default;

 private:
  constexpr void check(std::uint64_t offset = 0) const {
    for (auto b : bytes_)
      if (!printable(b)) throw_malformed(b, offset);
  }

  [[noreturn]] static void throw_bad_length(std::size_t n) {
    throw Error(ErrorCode::MalformedId, "chunk id must be 4 bytes, got " + std::to_string(n));
  }

  [[noreturn]] static void throw_malformed(std::uint8_t b, std::uint64_t offset) {
    constexpr char digits[] = "0123456789ABCDEF";
    std::string hex = "0x";
    hex += digits[b >> 4];
    hex += digits[b & 0xF];
    throw Error(ErrorCode::MalformedId, "non-printable byte " + hex + " in chunk id", offset);
  }

  std::array<std::uint8_t, 4> bytes_{' ', ' ', ' ', ' '};
};

namespace ids {
inline constexpr ChunkId kForm{"FORM"};
inline constexpr ChunkId kVersion{"VERS"};
inline constexpr ChunkId kScene{"SCEN"};
inline constexpr ChunkId kUnit{"UNIT"};
inline constexpr ChunkId kChannel{"CHAN"};
inline constexpr ChunkId kFrames{"FRAM"};
}  // namespace ids

inline bool is_known(const ChunkId& id) {
  return id == ids::kForm || id == ids::kVersion || id == ids::kScene || id == ids::kUnit ||
         id == ids::kChannel || id == ids::kFrames;
}

struct RawChunk {
  ChunkId id;
  Bytes payload;

  std::uint32_t declared_size() const { return static_cast<std::uint32_t>(payload.size()); }

  friend bool operator==(const RawChunk&, const RawChunk&) = default;
};

inline constexpr std::uint64_t kMaxChunkPayload = std::numeric_limits<std::uint32_t>::max();

inline void append_chunk_header(Bytes& out, const ChunkId& id, std::uint64_t size) {
  if (size > kMaxChunkPayload) {
    throw Error(ErrorCode::Oversize, "chunk '" + id.str() + "' payload of " +
                                         std::to_string(size) + " bytes does not fit ULONG");
  }
  out.insert(out.end(), id.bytes().begin(), id.bytes().end());
  auto size_be = encode_primitive(static_cast<std::uint32_t>(size));
  out.insert(out.end(), size_be.begin(), size_be.end());
}

/// Appends a complete chunk, including the pad byte for odd payloads.
inline void append_chunk(Bytes& out, const ChunkId& id, ByteView payload) {
  append_chunk_header(out, id, payload.size());
  out.insert(out.end(), payload.begin(), payload.end());
  if (payload.size() % 2 != 0) out.push_back(0);
}

inline Bytes write_chunk(const ChunkId& id, ByteView payload) {
  Bytes out;
  out.reserve(8 + payload.size() + 1);
  append_chunk(out, id, payload);
  return out;
}

struct ChunkHeader {
  ChunkId id;
  std::uint32_t size = 0;
  std::uint64_t offset = 0;  // absolute offset of the id's first byte

  std::uint64_t payload_offset() const { return offset + 8; }
  bool padded() const { return size % 2 != 0; }
};

/// Sequential reader over the chunks of one region. With a limit, the region
/// ends at that absolute position and a chunk that would overrun it is a
/// truncation error; without one, the region ends at a clean end-of-source.
template <ByteSource Source>
class ChunkScanner {
 public:
  explicit ChunkScanner(Source source, std::optional<std::uint64_t> limit = std::nullopt)
      : source_(std::move(source)), limit_(limit) {}

  /// Reads the next header, leaving the source at the start of its payload.
  std::optional<ChunkHeader> next_header() {
    auto at = source_.position();
    if (limit_ && at >= *limit_) return std::nullopt;
    std::array<std::uint8_t, 8> raw{};
    auto got = source_.read(raw);
    if (got == 0 && !limit_) return std::nullopt;
    if (got < raw.size()) {
      throw Error(ErrorCode::Truncated,
                  "chunk header needs 8 bytes, " + std::to_string(got) + " remain", at);
    }
    ChunkHeader header;
    header.id = ChunkId::from_bytes(ByteView(raw).first(4), at);
    header.size = load_be<std::uint32_t>(std::span<const std::uint8_t>(raw).subspan<4, 4>());
    header.offset = at;
    if (limit_) {
      auto available = *limit_ - source_.position();
      if (header.size + (header.padded() ? 1u : 0u) > available) {
        throw Error(ErrorCode::Truncated,
                    "chunk declares " + std::to_string(header.size) + " bytes but only " +
                        std::to_string(available) + " remain",
                    at, header.id.str());
      }
    }
    return header;
  }

  /// Reads the payload of the header just returned, then its pad byte.
  Bytes read_payload(const ChunkHeader& header) {
    Bytes payload(header.size);
    if (source_.read(payload) != payload.size()) {
      throw Error(ErrorCode::Truncated, "payload ends early", header.payload_offset(),
                  header.id.str());
    }
    skip_pad(header);
    return payload;
  }

  void skip_payload(const ChunkHeader& header) {
    if (source_.skip(header.size) != header.size) {
      throw Error(ErrorCode::Truncated, "payload ends early", header.payload_offset(),
                  header.id.str());
    }
    skip_pad(header);
  }

  /// Consumes the pad byte after an odd payload the caller read directly.
  void skip_pad(const ChunkHeader& header) {
    if (!header.padded()) return;
    std::array<std::uint8_t, 1> pad{};
    if (source_.read(pad) != 1) {
      throw Error(ErrorCode::Truncated, "missing pad byte after odd-sized chunk",
                  header.payload_offset() + header.size, header.id.str());
    }
  }

  std::optional<RawChunk> next() {
    auto header = next_header();
    if (!header) return std::nullopt;
    return RawChunk{header->id, read_payload(*header)};
  }

  Source& source() { return source_; }
  std::optional<std::uint64_t> limit() const { return limit_; }

 private:
  Source source_;
  std::optional<std::uint64_t> limit_;
};

/// Every chunk in `region`, which must consist of whole chunks only.
inline std::vector<RawChunk> scan_chunks(ByteView region, std::uint64_t base = 0) {
  ChunkScanner scanner(SpanSource(region, base), base + region.size());
  std::vector<RawChunk> chunks;
  while (auto chunk = scanner.next()) chunks.push_back(std::move(*chunk));
  return chunks;
}

}  // namespace gms

#endif  // GMS_CHUNK_HPP
