#ifndef GMS_ERROR_HPP
#define GMS_ERROR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gms {

enum class ErrorCode {
  LengthMismatch,
  Oversize,
  Truncated,
  MalformedId,
  BadMagic,
  UnsupportedVersion,
  Structure,
  IllegalDimension,
  UnknownVariableType,
  UnknownSampleType,
  Validation,
  SampleOutOfRange,
  WidthMismatch,
  FinalizeTwice,
  ZeroFactor,
  UnknownPath,
  AxisOutOfRange,
  EmptySignal,
  ManifestMismatch,
  CsvSyntax,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::Oversize: return "oversize";
    case ErrorCode::Truncated: return "truncated";
    case ErrorCode::MalformedId: return "malformed-id";
    case ErrorCode::BadMagic: return "bad-magic";
    case ErrorCode::UnsupportedVersion: return "unsupported-version";
    case ErrorCode::Structure: return "structure";
    case ErrorCode::IllegalDimension: return "illegal-dimension";
    case ErrorCode::UnknownVariableType: return "unknown-variable-type";
    case ErrorCode::UnknownSampleType: return "unknown-sample-type";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::SampleOutOfRange: return "sample-out-of-range";
    case ErrorCode::WidthMismatch: return "width-mismatch";
    case ErrorCode::FinalizeTwice: return "finalize-twice";
    case ErrorCode::ZeroFactor: return "zero-factor";
    case ErrorCode::UnknownPath: return "unknown-path";
    case ErrorCode::AxisOutOfRange: return "axis-out-of-range";
    case ErrorCode::EmptySignal: return "empty-signal";
    case ErrorCode::ManifestMismatch: return "manifest-mismatch";
    case ErrorCode::CsvSyntax: return "csv-syntax";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library. Decode failures carry the absolute
/// byte offset and, when known, the id of the chunk being read.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::uint64_t> offset = std::nullopt, std::string chunk = {})
      : std::runtime_error(format(code, message, offset, chunk)),
        code_(code),
        offset_(offset),
        chunk_(std::move(chunk)) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::uint64_t> offset() const noexcept { return offset_; }
  const std::string& chunk() const noexcept { return chunk_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::optional<std::uint64_t> offset, const std::string& chunk) {
    std::string out(to_string(code));
    out += ": ";
    out += message;
    if (!chunk.empty()) out += " [chunk '" + chunk + "']";
    if (offset) out += " at byte offset " + std::to_string(*offset);
    return out;
  }

  ErrorCode code_;
  std::optional<std::uint64_t> offset_;
  std::string chunk_;
};

}  // namespace gms

#endif  // GMS_ERROR_HPP
