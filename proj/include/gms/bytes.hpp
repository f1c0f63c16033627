#ifndef GMS_BYTES_HPP
#define GMS_BYTES_HPP

// Big-endian primitive encoding and the byte sources the chunk scanner reads
// from. Nothing in here knows about GMS semantics.

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <istream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "gms/error.hpp"

namespace gms {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// The five on-disk primitive kinds: USHORT, LONG, ULONG, FLOAT32, FLOAT64.
template <typename T>
concept Primitive = std::same_as<T, std::uint16_t> || std::same_as<T, std::int32_t> ||
                    std::same_as<T, std::uint32_t> || std::same_as<T, float> ||
                    std::same_as<T, double>;

namespace detail {

template <std::size_t N>
struct unsigned_of;
template <>
struct unsigned_of<2> { using type = std::uint16_t; };
template <>
struct unsigned_of<4> { using type = std::uint32_t; };
template <>
struct unsigned_of<8> { using type = std::uint64_t; };

}  // namespace detail

/// Writes `value` most-significant byte first into `out`, which must hold
/// exactly sizeof(T) bytes.
template <Primitive T>
constexpr void store_be(T value, std::span<std::uint8_t, sizeof(T)> out) {
  using U = typename detail::unsigned_of<sizeof(T)>::type;
  auto bits = std::bit_cast<U>(value);
  for (std::size_t i = sizeof(T); i-- > 0;) {
    out[i] = static_cast<std::uint8_t>(bits & 0xFFu);
    bits = static_cast<U>(bits >> 8);
  }
}

template <Primitive T>
constexpr T load_be(std::span<const std::uint8_t, sizeof(T)> in) {
  using U = typename detail::unsigned_of<sizeof(T)>::type;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits = static_cast<U>((bits << 8) | in[i]);
  return std::bit_cast<T>(bits);
}

template <Primitive T>
std::array<std::uint8_t, sizeof(T)> encode_primitive(T value) {
  std::array<std::uint8_t, sizeof(T)> out{};
  store_be<T>(value, out);
  return out;
}

template <Primitive T>
T decode_primitive(ByteView bytes) {
  if (bytes.size() != sizeof(T)) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(sizeof(T)) +
                                               " bytes, got " + std::to_string(bytes.size()));
  }
  return load_be<T>(bytes.first<sizeof(T)>());
}

/// Append-only big-endian writer over a growable buffer.
class ByteWriter {
 public:
  template <Primitive T>
  ByteWriter& put(T value) {
    auto encoded = encode_primitive(value);
    buffer_.insert(buffer_.end(), encoded.begin(), encoded.end());
    return *this;
  }

  ByteWriter& put_bytes(ByteView bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
    return *this;
  }

  /// USHORT length followed by the raw UTF-8 bytes, no terminator.
  ByteWriter& put_name(std::string_view name) {
    if (name.size() > 0xFFFF) {
      throw Error(ErrorCode::Oversize,
                  "name of " + std::to_string(name.size()) + " bytes exceeds 65535");
    }
    put(static_cast<std::uint16_t>(name.size()));
    buffer_.insert(buffer_.end(), name.begin(), name.end());
    return *this;
  }

  const Bytes& bytes() const& { return buffer_; }
  Bytes take() && { return std::move(buffer_); }

 private:
  Bytes buffer_;
};

/// Bounds-checked big-endian cursor over a byte view. `base` is the absolute
/// file offset of the first byte, used only for error messages.
class ByteReader {
 public:
  explicit ByteReader(ByteView data, std::uint64_t base = 0, std::string context = {})
      : data_(data), base_(base), context_(std::move(context)) {}

  template <Primitive T>
  T get() {
    return load_be<T>(take(sizeof(T)).template first<sizeof(T)>());
  }

  std::string get_name() {
    auto length = get<std::uint16_t>();
    auto raw = take(length);
    return {reinterpret_cast<const char*>(raw.data()), raw.size()};
  }

  ByteView take(std::size_t count) {
    if (remaining() < count) {
      throw Error(ErrorCode::Truncated,
                  "need " + std::to_string(count) + " bytes, " + std::to_string(remaining()) +
                      " remain",
                  offset(), context_);
    }
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::uint64_t offset() const noexcept { return base_ + pos_; }

 private:
  ByteView data_;
  std::uint64_t base_;
  std::string context_;
  std::size_t pos_ = 0;
};

/// Anything the chunk scanner can pull bytes from.
template <typename S>
concept ByteSource = requires(S& s, std::span<std::uint8_t> out, std::uint64_t n) {
  { s.read(out) } -> std::same_as<std::size_t>;
  { s.skip(n) } -> std::same_as<std::uint64_t>;
  { s.position() } -> std::same_as<std::uint64_t>;
};

/// Byte source over memory the caller keeps alive.
class SpanSource {
 public:
  explicit SpanSource(ByteView data, std::uint64_t base = 0) : data_(data), base_(base) {}

  std::size_t read(std::span<std::uint8_t> out) {
    auto n = std::min(out.size(), data_.size() - pos_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out.begin());
    pos_ += n;
    return n;
  }

  std::uint64_t skip(std::uint64_t count) {
    auto n = std::min<std::uint64_t>(count, data_.size() - pos_);
    pos_ += static_cast<std::size_t>(n);
    return n;
  }

  std::uint64_t position() const noexcept { return base_ + pos_; }

 private:
  ByteView data_;
  std::uint64_t base_;
  std::size_t pos_ = 0;
};

/// Byte source over a std::istream. Does not seek; skipping reads and discards.
class StreamSource {
 public:
  explicit StreamSource(std::istream& in) : in_(&in) {}

  std::size_t read(std::span<std::uint8_t> out) {
    in_->read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size()));
    auto n = static_cast<std::size_t>(in_->gcount());
    pos_ += n;
    return n;
  }

  std::uint64_t skip(std::uint64_t count) {
    std::array<std::uint8_t, 4096> scratch{};
    std::uint64_t done = 0;
    while (done < count) {
      auto want = static_cast<std::size_t>(std::min<std::uint64_t>(scratch.size(), count - done));
      auto got = read(std::span(scratch).first(want));
      done += got;
      if (got < want) break;
    }
    return done;
  }

  std::uint64_t position() const noexcept { return pos_; }

 private:
  std::istream* in_;
  std::uint64_t pos_ = 0;
};

static_assert(ByteSource<SpanSource>);
static_assert(ByteSource<StreamSource>);

}  // namespace gms

#endif  // GMS_BYTES_HPP
