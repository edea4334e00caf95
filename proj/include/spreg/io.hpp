#pragma once

// Label-map and report files.
//
// Label maps: 16-bit binary PGM (P5, maxval 65535, big-endian samples),
// 16-bit grayscale PNG, or CSV (one image row per line, comma separated, no
// header). Loading also accepts 8-bit PGM/PNG and ASCII P2. Saving PGM or
// PNG fails with Overflow for labels above 65535.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spreg/core.hpp"
#include "spreg/synth.hpp"

namespace spreg {

enum class LabelFormat { Pgm16, PngGray16, Csv };

std::string_view to_string(LabelFormat format);
/// Accepts "pgm16", "png_gray16", "csv".
std::optional<LabelFormat> parse_label_format(std::string_view name);
/// .pgm, .png or .csv (case-insensitive). Throws UnsupportedFormat otherwise.
LabelFormat format_from_path(const std::filesystem::path& path);

LabelMap load_label_map(const std::filesystem::path& path, LabelFormat format);
LabelMap load_label_map(const std::filesystem::path& path);
void save_label_map(const LabelMap& map, const std::filesystem::path& path, LabelFormat format);
void save_label_map(const LabelMap& map, const std::filesystem::path& path);

/// Intensity image for the quadtree generator, from PGM or PNG.
GrayImage load_gray_image(const std::filesystem::path& path);
void save_gray_image(const GrayImage& image, const std::filesystem::path& path);

/// Decimal text that parses back to exactly `v` and carries at least six
/// significant digits ("1.000000", "0.98245614035087714").
std::string format_number(double v);

struct ReportRecord {
  std::string input_id;
  std::size_t n_superpixels = 0;
  double circularity_mean = 0.0;
  double src = 0.0;
  double solidity_mean = 0.0;
  double vxy_mean = 0.0;
  double contour_smoothness_mean = 0.0;
  std::optional<double> ue;
  std::optional<double> br;
  int eps = 0;
  std::size_t n_ground_truths = 0;
  double noise_amplitude = 0.0;
  int noise_rounds = 0;
  std::uint64_t noise_seed = 0;
  int seeds = 0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

/// Header row plus one row per record; missing UE/BR are empty cells.
std::string report_csv(const std::vector<ReportRecord>& records);
/// JSON array of objects keyed by the field names above; missing UE/BR are null.
std::string report_json(const std::vector<ReportRecord>& records);
std::vector<ReportRecord> parse_report_csv(std::string_view text);
std::vector<ReportRecord> parse_report_json(std::string_view text);

/// Writes CSV or JSON depending on the extension; throws UnsupportedFormat
/// for anything else.
void write_report(const std::vector<ReportRecord>& records, const std::filesystem::path& path);
std::vector<ReportRecord> read_report(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace spreg
