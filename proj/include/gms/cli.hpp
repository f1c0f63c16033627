#ifndef GMS_CLI_HPP
#define GMS_CLI_HPP

// The `gms` command-line tool. Reports go to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 semantic failure (validation, mismatch, bad
// arguments), 2 I/O failure. `info` and `validate` report a file that fails
// to decode as a semantic failure (1), because judging the file is their
// job; the other commands treat an undecodable input as 2.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gms/codec.hpp"
#include "gms/csv.hpp"
#include "gms/diff.hpp"
#include "gms/example_scene.hpp"
#include "gms/signal.hpp"

namespace gms::cli {

enum Exit : int { kOk = 0, kSemantic = 1, kIo = 2 };

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  return bytes;
}

inline std::string read_text(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

inline void write_file(const std::filesystem::path& path, ByteView data) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

inline std::filesystem::path manifest_path(std::filesystem::path csv) {
  return csv.replace_extension(".manifest");
}

inline std::string lower_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

inline std::optional<SampleType> parse_sample_type(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "float32") return SampleType::Float32;
  if (name == "float64") return SampleType::Float64;
  if (name == "long") return SampleType::Long;
  return std::nullopt;
}

/// Optional overrides of the storage parameters when writing.
struct StorageOptions {
  std::string sample_type;
  std::optional<double> scale;
  std::optional<std::uint32_t> block_size;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--sample-type", sample_type, "Sample storage: float32, float64 or long");
    cmd.add_option("--scale", scale, "Stored sample x scale = physical value");
    cmd.add_option("--block-size", block_size, "Frame alignment in bytes (0 = none)");
  }

  void apply(Scene& scene) const {
    if (!sample_type.empty()) {
      auto type = parse_sample_type(sample_type);
      if (!type) throw Error(ErrorCode::Validation, "unknown sample type '" + sample_type + "'");
      scene.sample_type = *type;
    }
    if (scale) scene.scale = *scale;
    if (block_size) scene.block_size = *block_size;
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;

  int fail(int code, const std::string& message) const {
    err << "gms: " << message << "\n";
    return code;
  }
};

inline void print_warnings(const Context& ctx, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) ctx.err << "gms: warning: " << w << "\n";
}

inline std::string format_hz(double hz) { return format_double(hz) + " Hz"; }

// ---------------------------------------------------------------------------

inline int cmd_info(const Context& ctx, const std::string& path, bool stats) {
  Bytes bytes;
  try {
    bytes = read_file(path);
  } catch (const Error& e) {
    return ctx.fail(kIo, e.what());
  }
  GmsDocument doc;
  std::vector<std::string> warnings;
  try {
    doc = decode_document(bytes, &warnings);
  } catch (const Error& e) {
    return ctx.fail(kSemantic, path + ": " + e.what());
  }
  print_warnings(ctx, warnings);

  const auto& s = doc.scene;
  std::size_t channels = 0;
  for (const auto& u : s.units) channels += u.channels.size();
  auto& o = ctx.out;
  o << "file:        " << path << "\n"
    << "version:     " << doc.version.major << "." << doc.version.minor << "\n"
    << "scene:       " << s.name << "\n"
    << "freq:        " << format_hz(s.freq) << " [" << describe_bands(classify_rate(s.freq))
    << "]\n"
    << "sample type: " << to_string(s.sample_type) << " (" << byte_width(s.sample_type)
    << " bytes)\n"
    << "scale:       " << format_double(s.scale) << "\n"
    << "block size:  " << s.block_size << " (frame " << frame_byte_size(s) << " bytes, stride "
    << padded_frame_stride(s) << " bytes)\n"
    << "frames:      " << s.frame_count << "\n"
    << "duration:    " << format_double(s.frame_count / s.freq) << " s\n"
    << "units:       " << s.units.size() << "\n"
    << "channels:    " << channels << "\n"
    << "tracks:      " << scene_track_count(s) << "\n";
  if (!doc.unknown_chunks.empty()) o << "unknown:     " << doc.unknown_chunks.size() << " chunks\n";
  for (const auto& u : s.units) {
    std::size_t tracks = 0;
    for (const auto& c : u.channels) tracks += track_count(c);
    o << "unit " << u.name << " (" << u.channels.size() << " channels, " << tracks
      << " tracks)\n";
    for (const auto& c : u.channels) {
      o << "  " << std::left << std::setw(12) << c.name << std::setw(11) << to_string(c.dimension)
        << std::setw(13) << to_string(c.type) << to_string(variable_class(c.type))
        << (is_reserved(c.type) ? " (reserved)" : "") << "\n";
    }
  }
  if (stats) {
    o << "track statistics (min max mean rms):\n";
    auto columns = track_columns(s);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      o << "  " << track_label(s, columns[k]);
      if (doc.frames.frame_count() == 0) {
        o << " (no samples)\n";
        continue;
      }
      const auto& ref = columns[k];
      auto slice = slice_track(doc, {s.units[ref.unit].name,
                                     s.units[ref.unit].channels[ref.channel].name, ref.axis});
      auto st = track_stats(slice);
      o << " " << format_double(st.min) << " " << format_double(st.max) << " "
        << format_double(st.mean) << " " << format_double(st.rms) << "\n";
    }
  }
  return kOk;
}

inline int cmd_validate(const Context& ctx, const std::string& path, bool strict) {
  Bytes bytes;
  try {
    bytes = read_file(path);
  } catch (const Error& e) {
    return ctx.fail(kIo, e.what());
  }
  GmsDocument doc;
  std::vector<std::string> warnings;
  try {
    doc = decode_document(bytes, &warnings);
  } catch (const Error& e) {
    ctx.out << "error: " << e.what() << "\n";
    return kSemantic;
  }

  bool fatal = false;
  bool advisory = false;
  for (const auto& problem : verify_layout(bytes)) {
    ctx.out << "error: layout: " << problem << "\n";
    fatal = true;
  }
  for (const auto& w : warnings) {
    ctx.out << "advisory: " << w << "\n";
    advisory = true;
  }
  for (const auto& v : validate_scene(doc.scene, &doc.frames)) {
    ctx.out << v.message() << "\n";
    (v.severity == Severity::Fatal ? fatal : advisory) = true;
  }
  if (fatal || (strict && advisory)) return kSemantic;
  return kOk;
}

inline int cmd_create_example(const Context& ctx, const ExampleSpec& spec,
                              const std::string& out_path) {
  Bytes bytes;
  try {
    bytes = encode_document(make_example_document(spec));
  } catch (const Error& e) {
    return ctx.fail(kSemantic, e.what());
  }
  try {
    write_file(out_path, bytes);
  } catch (const Error& e) {
    return ctx.fail(kIo, e.what());
  }
  return kOk;
}

/// Loads a .gms or .csv (+ manifest) input. Throws on failure.
inline GmsDocument load_any(const Context& ctx, const std::filesystem::path& path) {
  auto ext = lower_extension(path);
  if (ext == ".csv") return read_csv(read_text(path), read_text(manifest_path(path)));
  std::vector<std::string> warnings;
  auto doc = decode_document(read_file(path), &warnings);
  print_warnings(ctx, warnings);
  return doc;
}

/// Maps a library error to the exit-code contract.
inline int error_exit(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Io:
    case ErrorCode::Truncated:
    case ErrorCode::MalformedId:
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::Structure:
    case ErrorCode::IllegalDimension:
    case ErrorCode::UnknownVariableType:
    case ErrorCode::UnknownSampleType:
    case ErrorCode::CsvSyntax: return kIo;
    default: return kSemantic;
  }
}

inline int cmd_convert(const Context& ctx, const std::string& in, const std::string& out,
                       const StorageOptions& storage) {
  auto in_ext = lower_extension(in);
  auto out_ext = lower_extension(out);
  for (const auto& ext : {in_ext, out_ext}) {
    if (ext != ".gms" && ext != ".csv") {
      return ctx.fail(kSemantic, "cannot infer format from extension '" + ext +
                                     "' (expected .gms or .csv)");
    }
  }
  try {
    auto doc = load_any(ctx, in);
    storage.apply(doc.scene);
    if (out_ext == ".csv") {
      auto violations = validate_scene(doc.scene, &doc.frames);
      if (has_fatal(violations)) throw ValidationError(std::move(violations));
      auto exported = write_csv(doc);
      write_file(out, exported.csv);
      write_file(manifest_path(out), exported.manifest);
    } else {
      write_file(out, encode_document(doc));
    }
  } catch (const Error& e) {
    return ctx.fail(error_exit(e), e.what());
  }
  return kOk;
}

inline int cmd_resample(const Context& ctx, const std::string& in, const std::string& out,
                        std::uint32_t factor, bool smooth) {
  if (factor == 0) return ctx.fail(kSemantic, "--factor must be at least 1");
  try {
    auto doc = load_any(ctx, in);
    auto result = smooth ? smooth_decimate(doc, factor) : decimate(doc, factor);
    write_file(out, encode_document(result));
    auto before = classify_rate(doc.scene.freq);
    auto after = classify_rate(result.scene.freq);
    ctx.out << "rate:   " << format_hz(doc.scene.freq) << " -> " << format_hz(result.scene.freq)
            << (smooth ? " (boxcar)" : "") << "\n"
            << "frames: " << doc.scene.frame_count << " -> " << result.scene.frame_count << "\n"
            << "bands:  " << describe_bands(before) << " -> " << describe_bands(after) << "\n";
    for (auto band : after) {
      if (std::find(before.begin(), before.end(), band) == before.end())
        ctx.out << "entered " << to_string(band) << " band\n";
    }
    for (auto band : before) {
      if (std::find(after.begin(), after.end(), band) == after.end())
        ctx.out << "left " << to_string(band) << " band\n";
    }
  } catch (const Error& e) {
    return ctx.fail(error_exit(e), e.what());
  }
  return kOk;
}

inline int cmd_diff(const Context& ctx, const std::string& a_path, const std::string& b_path,
                    double tolerance) {
  GmsDocument a;
  GmsDocument b;
  try {
    a = load_any(ctx, a_path);
    b = load_any(ctx, b_path);
  } catch (const Error& e) {
    return ctx.fail(kIo, e.what());
  }
  auto report = diff_documents(a, b, tolerance);
  for (const auto& s : report.structural) ctx.out << "structure: " << s << "\n";
  for (const auto& n : report.notes) ctx.out << "note: " << n << "\n";
  for (const auto& m : report.samples) {
    ctx.out << "sample: frame " << m.frame << " track " << m.track << ": "
            << format_double(m.a) << " vs " << format_double(m.b) << "\n";
  }
  if (report.sample_mismatch_count > report.samples.size()) {
    ctx.out << "... " << report.sample_mismatch_count - report.samples.size()
            << " more sample mismatches\n";
  }
  if (report.structural.empty()) {
    ctx.out << "max |difference|: " << format_double(report.max_abs_difference) << "\n";
  }
  ctx.out << (report.equal() ? "equal" : "different") << " (tolerance "
          << format_double(tolerance) << ")\n";
  return report.equal() ? kOk : kSemantic;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Create, inspect, validate, convert and resample GMS gesture files", "gms"};
  app.require_subcommand(1);

  std::string file;
  std::string second;
  std::string output;

  bool stats = false;
  auto* info = app.add_subcommand("info", "Print the scene structure and metadata");
  info->add_option("FILE", file)->required();
  info->add_flag("--stats", stats, "Also print per-track min/max/mean/rms");

  bool strict = false;
  auto* validate = app.add_subcommand("validate", "Check a file against every format rule");
  validate->add_option("FILE", file)->required();
  validate->add_flag("--strict", strict, "Treat advisory diagnostics as errors");

  ExampleSpec spec;
  StorageOptions example_storage;
  auto* create = app.add_subcommand("create-example", "Write the reference gesture scene");
  create->add_option("--fluid-n", spec.fluid_mass_count, "Number of fluid masses")
      ->check(CLI::PositiveNumber);
  create->add_option("--frames", spec.frame_count, "Number of frames");
  create->add_option("--freq", spec.freq, "Sampling frequency in Hz");
  create->add_option("OUT", output)->required();
  example_storage.add_to(*create);

  StorageOptions convert_storage;
  auto* convert = app.add_subcommand("convert", "Convert between .gms and .csv by extension");
  convert->add_option("IN", file)->required();
  convert->add_option("OUT", output)->required();
  convert_storage.add_to(*convert);

  std::uint32_t factor = 1;
  bool smooth = false;
  auto* resample = app.add_subcommand("resample", "Lower the sampling rate by an integer factor");
  resample->add_option("IN", file)->required();
  resample->add_option("OUT", output)->required();
  resample->add_option("--factor", factor, "Keep every k-th frame")->required();
  resample->add_flag("--smooth", smooth, "Average each window instead of picking one frame");

  double tolerance = 0.0;
  auto* diff = app.add_subcommand("diff", "Compare two files sample by sample");
  diff->add_option("A", file)->required();
  diff->add_option("B", second)->required();
  diff->add_option("--tolerance", tolerance, "Largest accepted |a - b| per sample")
      ->check(CLI::NonNegativeNumber);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gms: " << e.what() << "\n";
    return kSemantic;
  }

  if (info->parsed()) return cmd_info(ctx, file, stats);
  if (validate->parsed()) return cmd_validate(ctx, file, strict);
  if (create->parsed()) {
    try {
      Scene probe;
      probe.sample_type = spec.sample_type;
      probe.scale = spec.scale;
      probe.block_size = spec.block_size;
      example_storage.apply(probe);
      spec.sample_type = probe.sample_type;
      spec.scale = probe.scale;
      spec.block_size = probe.block_size;
    } catch (const Error& e) {
      return ctx.fail(kSemantic, e.what());
    }
    return cmd_create_example(ctx, spec, output);
  }
  if (convert->parsed()) return cmd_convert(ctx, file, output, convert_storage);
  if (resample->parsed()) return cmd_resample(ctx, file, output, factor, smooth);
  if (diff->parsed()) return cmd_diff(ctx, file, second, tolerance);
  return kSemantic;
}

}  // namespace gms::cli

#endif  // GMS_CLI_HPP
