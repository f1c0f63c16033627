#ifndef GMS_CSV_HPP
#define GMS_CSV_HPP

// CSV interchange. The CSV holds one header row of "unit.channel.axis" cells
// and one row per frame of physical values in shortest round-trip decimal
// form. Everything else about the scene travels in a JSON sidecar manifest.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gms/codec.hpp"
#include "gms/error.hpp"
#include "gms/scene.hpp"
#include "json.hpp"

namespace gms {

inline constexpr std::string_view kManifestFormat = "gms-csv-manifest";

struct CsvExport {
  std::string csv;
  std::string manifest;
};

inline std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, end};
}

inline std::string track_label(const Scene& scene, const TrackRef& ref) {
  const auto& unit = scene.units[ref.unit];
  const auto& channel = unit.channels[ref.channel];
  return unit.name + "." + channel.name + "." + axis_labels(channel.dimension)[ref.axis];
}

namespace detail {

inline std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Splits CSV text into rows of cells (RFC 4180 quoting). A trailing newline
/// does not produce an empty row.
inline std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      cell += c;
    }
  }
  if (quoted) throw Error(ErrorCode::CsvSyntax, "unterminated quoted cell");
  if (row_open) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline SampleType sample_type_from_name(const std::string& name) {
  auto type = enum_from_name(name, SampleType::Long);
  if (!type) throw Error(ErrorCode::ManifestMismatch, "unknown sample type '" + name + "'");
  return *type;
}

}  // namespace detail

inline std::string write_manifest(const Scene& scene) {
  nlohmann::ordered_json m;
  m["format"] = kManifestFormat;
  m["version"] = std::to_string(kFormatVersion.major) + "." + std::to_string(kFormatVersion.minor);
  m["scene"] = {{"name", scene.name},
                {"frame_count", scene.frame_count},
                {"freq", scene.freq},
                {"sample_type", to_string(scene.sample_type)},
                {"scale", scene.scale},
                {"block_size", scene.block_size}};
  auto units = nlohmann::ordered_json::array();
  for (const auto& unit : scene.units) {
    auto channels = nlohmann::ordered_json::array();
    for (const auto& c : unit.channels) {
      channels.push_back(
          {{"name", c.name}, {"dimension", to_string(c.dimension)}, {"type", to_string(c.type)}});
    }
    units.push_back({{"name", unit.name}, {"channels", std::move(channels)}});
  }
  m["units"] = std::move(units);
  return m.dump(2) + "\n";
}

inline Scene read_manifest(std::string_view text) {
  try {
    auto m = nlohmann::json::parse(text);
    if (m.value("format", "") != kManifestFormat) {
      throw Error(ErrorCode::ManifestMismatch, "not a GMS CSV manifest");
    }
    const auto& s = m.at("scene");
    Scene scene;
    scene.name = s.at("name").get<std::string>();
    scene.frame_count = s.at("frame_count").get<std::uint32_t>();
    scene.freq = s.at("freq").get<double>();
    scene.sample_type = detail::sample_type_from_name(s.at("sample_type").get<std::string>());
    scene.scale = s.at("scale").get<double>();
    scene.block_size = s.at("block_size").get<std::uint32_t>();
    for (const auto& u : m.at("units")) {
      Unit unit{u.at("name").get<std::string>(), {}};
      for (const auto& c : u.at("channels")) {
        auto dim_name = c.at("dimension").get<std::string>();
        auto type_name = c.at("type").get<std::string>();
        auto dim = enum_from_name(dim_name, Dimension::Space3Dxyz);
        auto type = enum_from_name(type_name, VariableType::Torque);
        if (!dim) throw Error(ErrorCode::IllegalDimension, "unknown dimension '" + dim_name + "'");
        if (!type) {
          throw Error(ErrorCode::UnknownVariableType, "unknown variable type '" + type_name + "'");
        }
        unit.channels.push_back({c.at("name").get<std::string>(), *dim, *type});
      }
      scene.units.push_back(std::move(unit));
    }
    return scene;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ManifestMismatch, std::string("manifest: ") + e.what());
  }
}

inline CsvExport write_csv(const GmsDocument& doc) {
  CsvExport out;
  auto columns = track_columns(doc.scene);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) out.csv += ',';
    out.csv += detail::csv_quote(track_label(doc.scene, columns[k]));
  }
  out.csv += '\n';
  for (std::size_t f = 0; f < doc.frames.frame_count(); ++f) {
    auto frame = doc.frames.frame(f);
    for (std::size_t t = 0; t < frame.size(); ++t) {
      if (t) out.csv += ',';
      out.csv += format_double(frame[t]);
    }
    out.csv += '\n';
  }
  out.manifest = write_manifest(doc.scene);
  return out;
}

/// Rebuilds a document from CSV text and its manifest. Column count, header
/// labels and row count must all agree with the manifest.
inline GmsDocument read_csv(std::string_view csv, std::string_view manifest) {
  GmsDocument doc;
  doc.scene = read_manifest(manifest);
  auto columns = track_columns(doc.scene);
  auto rows = detail::csv_rows(csv);
  if (rows.empty()) throw Error(ErrorCode::CsvSyntax, "missing header row");

  const auto& header = rows.front();
  if (header.size() != columns.size()) {
    throw Error(ErrorCode::ManifestMismatch,
                "CSV has " + std::to_string(header.size()) + " columns, manifest declares " +
                    std::to_string(columns.size()) + " tracks");
  }
  for (std::size_t k = 0; k < columns.size(); ++k) {
    auto expected = track_label(doc.scene, columns[k]);
    if (header[k] != expected) {
      throw Error(ErrorCode::ManifestMismatch, "column " + std::to_string(k) + " is '" +
                                                   header[k] + "', manifest expects '" +
                                                   expected + "'");
    }
  }
  auto body = rows.size() - 1;
  if (body != doc.scene.frame_count) {
    throw Error(ErrorCode::ManifestMismatch, "CSV has " + std::to_string(body) +
                                                 " rows, manifest declares " +
                                                 std::to_string(doc.scene.frame_count) +
                                                 " frames");
  }

  doc.frames = FrameMatrix(body, columns.size());
  for (std::size_t r = 0; r < body; ++r) {
    const auto& row = rows[r + 1];
    if (row.size() != columns.size()) {
      throw Error(ErrorCode::ManifestMismatch, "row " + std::to_string(r + 2) + " has " +
                                                   std::to_string(row.size()) + " cells");
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto& cell = row[k];
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::CsvSyntax, "row " + std::to_string(r + 2) + " column " +
                                              std::to_string(k) + ": '" + cell +
                                              "' is not a number");
      }
      doc.frames.at(r, k) = value;
    }
  }
  return doc;
}

}  // namespace gms

#endif  // GMS_CSV_HPP
