#include "spreg/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <csetjmp>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>
#include <png.h>

#include "json.hpp"

#include "spreg/error.hpp"

namespace spreg {

namespace {

constexpr std::uint32_t kMax16 = 65535;

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::CorruptFile, path.string() + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Grayscale raster as read from disk, before it becomes labels or intensities.
struct Raster {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::uint32_t maxval = 0;
  std::vector<std::uint32_t> values;
};

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) corrupt(path, "cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, path.string() + ": cannot open for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error(ErrorCode::InvalidArgument, path.string() + ": write failed");
}

// ---- PGM -------------------------------------------------------------------

class PnmCursor {
 public:
  PnmCursor(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) : b_(bytes), path_(path) {}

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(b_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t number() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) corrupt(path_, "expected a number in header");
    std::uint64_t v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + static_cast<std::uint64_t>(b_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) corrupt(path_, "header value too large");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  const std::vector<std::uint8_t>& b_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

Raster read_pgm(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_bytes(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    corrupt(path, "not a P5/P2 PGM file");
  }
  const bool binary = bytes[1] == '5';
  PnmCursor cur(bytes, path);
  cur.advance(2);
  Raster r;
  const std::uint64_t w = cur.number();
  const std::uint64_t h = cur.number();
  r.maxval = static_cast<std::uint32_t>(cur.number());
  if (w == 0 || h == 0) corrupt(path, "zero image dimension");
  if (w > std::numeric_limits<std::int32_t>::max() || h > std::numeric_limits<std::int32_t>::max()) {
    corrupt(path, "image dimension too large");
  }
  if (r.maxval == 0 || r.maxval > kMax16) corrupt(path, fmt::format("invalid maxval {}", r.maxval));
  r.width = static_cast<std::int32_t>(w);
  r.height = static_cast<std::int32_t>(h);
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  r.values.resize(n);

  if (!binary) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t v = cur.number();
      if (v > r.maxval) corrupt(path, "sample exceeds maxval");
      r.values[i] = static_cast<std::uint32_t>(v);
    }
    return r;
  }

  // Exactly one whitespace byte separates the header from the raster.
  if (cur.pos() >= bytes.size() || !std::isspace(bytes[cur.pos()])) corrupt(path, "malformed header");
  cur.advance(1);
  const std::size_t sample = r.maxval > 255 ? 2 : 1;
  if (bytes.size() - cur.pos() < n * sample) corrupt(path, "truncated raster");
  const std::uint8_t* p = bytes.data() + cur.pos();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = sample == 2 ? (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
    if (v > r.maxval) corrupt(path, "sample exceeds maxval");
    r.values[i] = v;
  }
  return r;
}

void write_pgm16(const std::filesystem::path& path, std::int32_t w, std::int32_t h,
                 const std::vector<std::uint32_t>& values) {
  std::string out = fmt::format("P5\n{} {}\n{}\n", w, h, kMax16);
  const std::size_t header = out.size();
  out.resize(header + values.size() * 2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[header + 2 * i] = static_cast<char>((values[i] >> 8) & 0xff);
    out[header + 2 * i + 1] = static_cast<char>(values[i] & 0xff);
  }
  write_bytes(path, out.data(), out.size());
}

// ---- PNG -------------------------------------------------------------------

struct PngMemReader {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* r = static_cast<PngMemReader*>(png_get_io_ptr(png));
  if (r->bytes->size() - r->pos < len) png_error(png, "unexpected end of data");
  std::copy_n(r->bytes->data() + r->pos, len, out);
  r->pos += len;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_no_flush(png_structp) {}

struct PngDecoded {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int depth = 0;
  std::vector<std::uint8_t> data;
  std::vector<png_bytep> rows;
};

// Every libpng call lives here so the longjmp target frame holds no C++
// objects; results land in caller-owned storage. Returns an error message or
// nullptr.
const char* decode_png(png_structp png, png_infop info, PngMemReader* reader, PngDecoded* out) {
  if (setjmp(png_jmpbuf(png))) return "invalid PNG data";
  png_set_read_fn(png, reader, png_mem_read);
  png_read_info(png, info);
  int color = 0;
  png_get_IHDR(png, info, &out->width, &out->height, &out->depth, &color, nullptr, nullptr, nullptr);
  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA) return "expected a grayscale PNG";
  if (out->width > static_cast<png_uint_32>(std::numeric_limits<std::int32_t>::max()) ||
      out->height > static_cast<png_uint_32>(std::numeric_limits<std::int32_t>::max())) {
    return "image dimension too large";
  }
  if (out->depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  out->data.resize(rowbytes * out->height);
  out->rows.resize(out->height);
  for (png_uint_32 y = 0; y < out->height; ++y) out->rows[y] = out->data.data() + y * rowbytes;
  png_read_image(png, out->rows.data());
  png_read_end(png, nullptr);
  return nullptr;
}

Raster read_png(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_bytes(path);
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) corrupt(path, "not a PNG file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    corrupt(path, "libpng initialisation failed");
  }
  PngMemReader reader{&bytes, 0};
  PngDecoded dec;
  const char* err = decode_png(png, info, &reader, &dec);
  png_destroy_read_struct(&png, &info, nullptr);
  if (err) corrupt(path, err);

  Raster r;
  r.width = static_cast<std::int32_t>(dec.width);
  r.height = static_cast<std::int32_t>(dec.height);
  const bool wide = dec.depth == 16;
  r.maxval = wide ? kMax16 : 255;
  r.values.resize(static_cast<std::size_t>(dec.width) * dec.height);
  for (png_uint_32 y = 0; y < dec.height; ++y) {
    const std::uint8_t* row = dec.rows[y];
    for (png_uint_32 x = 0; x < dec.width; ++x) {
      r.values[static_cast<std::size_t>(y) * dec.width + x] =
          wide ? (static_cast<std::uint32_t>(row[2 * x]) << 8) | row[2 * x + 1] : row[x];
    }
  }
  return r;
}

bool encode_png16(png_structp png, png_infop info, std::vector<std::uint8_t>* encoded, png_uint_32 w, png_uint_32 h,
                  png_bytep* rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_write_fn(png, encoded, png_mem_write, png_no_flush);
  png_set_IHDR(png, info, w, h, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  return true;
}

void write_png16(const std::filesystem::path& path, std::int32_t w, std::int32_t h,
                 const std::vector<std::uint32_t>& values) {
  const auto rowbytes = static_cast<std::size_t>(w) * 2;
  std::vector<std::uint8_t> data(rowbytes * static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < values.size(); ++i) {
    data[2 * i] = static_cast<std::uint8_t>((values[i] >> 8) & 0xff);
    data[2 * i + 1] = static_cast<std::uint8_t>(values[i] & 0xff);
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (std::size_t y = 0; y < rows.size(); ++y) rows[y] = data.data() + y * rowbytes;

  std::vector<std::uint8_t> encoded;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  const bool ok = png && info &&
                  encode_png16(png, info, &encoded, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h),
                               rows.data());
  png_destroy_write_struct(&png, &info);
  if (!ok) throw Error(ErrorCode::InvalidArgument, path.string() + ": PNG encoding failed");
  write_bytes(path, encoded.data(), encoded.size());
}

// ---- CSV label grids ---------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t next = line.find(sep, start);
    out.push_back(line.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start));
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
  }
  while (!out.empty() && trim(out.back()).empty()) out.pop_back();
  return out;
}

LabelMap read_csv_labels(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const std::vector<std::string_view> lines = lines_of(text);
  if (lines.empty()) corrupt(path, "empty CSV");
  std::vector<std::uint32_t> labels;
  std::size_t width = 0;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::vector<std::string_view> cells = split(lines[row], ',');
    if (row == 0) width = cells.size();
    if (cells.size() != width) {
      corrupt(path, fmt::format("row {} has {} values, expected {}", row + 1, cells.size(), width));
    }
    for (std::string_view cell : cells) {
      cell = trim(cell);
      std::uint32_t v = 0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
        corrupt(path, fmt::format("row {}: invalid label '{}'", row + 1, cell));
      }
      labels.push_back(v);
    }
  }
  if (width > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) corrupt(path, "too many columns");
  return LabelMap(static_cast<std::int32_t>(width), static_cast<std::int32_t>(lines.size()), std::move(labels));
}

void write_csv_labels(const LabelMap& map, const std::filesystem::path& path) {
  std::string out;
  for (std::int32_t y = 0; y < map.height(); ++y) {
    for (std::int32_t x = 0; x < map.width(); ++x) {
      if (x > 0) out += ',';
      out += fmt::format("{}", map.at(x, y));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

std::vector<std::uint32_t> checked_16bit(const LabelMap& map) {
  const std::uint32_t top = map.max_label();
  if (top > kMax16) {
    throw Error(ErrorCode::Overflow, fmt::format("label {} does not fit a 16-bit container", top));
  }
  return {map.labels().begin(), map.labels().end()};
}

// ---- reports -----------------------------------------------------------------

const std::vector<std::string> kReportColumns = {
    "input_id", "n_superpixels", "circularity_mean", "src",          "solidity_mean",
    "vxy_mean", "contour_smoothness_mean", "ue",     "br",           "eps",
    "n_ground_truths", "noise_amplitude", "noise_rounds", "noise_seed", "seeds",
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 style record splitting, enough for the report files written here.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::CorruptFile, "unterminated quoted field");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

template <typename T>
T parse_field(const std::string& s, const char* name) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::CorruptFile, fmt::format("report field {}: cannot parse '{}'", name, s));
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s, const char* name) {
  if (s.empty()) return std::nullopt;
  return parse_field<double>(s, name);
}

nlohmann::json to_json(const ReportRecord& r) {
  nlohmann::json j;
  j["input_id"] = r.input_id;
  j["n_superpixels"] = r.n_superpixels;
  j["circularity_mean"] = r.circularity_mean;
  j["src"] = r.src;
  j["solidity_mean"] = r.solidity_mean;
  j["vxy_mean"] = r.vxy_mean;
  j["contour_smoothness_mean"] = r.contour_smoothness_mean;
  j["ue"] = r.ue ? nlohmann::json(*r.ue) : nlohmann::json(nullptr);
  j["br"] = r.br ? nlohmann::json(*r.br) : nlohmann::json(nullptr);
  j["eps"] = r.eps;
  j["n_ground_truths"] = r.n_ground_truths;
  j["noise_amplitude"] = r.noise_amplitude;
  j["noise_rounds"] = r.noise_rounds;
  j["noise_seed"] = r.noise_seed;
  j["seeds"] = r.seeds;
  return j;
}

ReportRecord from_json(const nlohmann::json& j) {
  ReportRecord r;
  r.input_id = j.at("input_id").get<std::string>();
  r.n_superpixels = j.at("n_superpixels").get<std::size_t>();
  r.circularity_mean = j.at("circularity_mean").get<double>();
  r.src = j.at("src").get<double>();
  r.solidity_mean = j.at("solidity_mean").get<double>();
  r.vxy_mean = j.at("vxy_mean").get<double>();
  r.contour_smoothness_mean = j.at("contour_smoothness_mean").get<double>();
  if (!j.at("ue").is_null()) r.ue = j.at("ue").get<double>();
  if (!j.at("br").is_null()) r.br = j.at("br").get<double>();
  r.eps = j.at("eps").get<int>();
  r.n_ground_truths = j.at("n_ground_truths").get<std::size_t>();
  r.noise_amplitude = j.at("noise_amplitude").get<double>();
  r.noise_rounds = j.at("noise_rounds").get<int>();
  r.noise_seed = j.at("noise_seed").get<std::uint64_t>();
  r.seeds = j.at("seeds").get<int>();
  return r;
}

}  // namespace

std::string_view to_string(LabelFormat format) {
  switch (format) {
    case LabelFormat::Pgm16: return "pgm16";
    case LabelFormat::PngGray16: return "png_gray16";
    case LabelFormat::Csv: return "csv";
  }
  return "unknown";
}

std::optional<LabelFormat> parse_label_format(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "pgm16") return LabelFormat::Pgm16;
  if (n == "png_gray16") return LabelFormat::PngGray16;
  if (n == "csv") return LabelFormat::Csv;
  return std::nullopt;
}

LabelFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".pgm") return LabelFormat::Pgm16;
  if (ext == ".png") return LabelFormat::PngGray16;
  if (ext == ".csv") return LabelFormat::Csv;
  throw Error(ErrorCode::UnsupportedFormat, path.string() + ": unknown label-map extension '" + ext + "'");
}

LabelMap load_label_map(const std::filesystem::path& path, LabelFormat format) {
  if (format == LabelFormat::Csv) return read_csv_labels(path);
  Raster r = format == LabelFormat::Pgm16 ? read_pgm(path) : read_png(path);
  return LabelMap(r.width, r.height, std::move(r.values));
}

LabelMap load_label_map(const std::filesystem::path& path) { return load_label_map(path, format_from_path(path)); }

void save_label_map(const LabelMap& map, const std::filesystem::path& path, LabelFormat format) {
  if (map.empty()) throw Error(ErrorCode::EmptyMap, "cannot save an empty label map");
  switch (format) {
    case LabelFormat::Pgm16: write_pgm16(path, map.width(), map.height(), checked_16bit(map)); return;
    case LabelFormat::PngGray16: write_png16(path, map.width(), map.height(), checked_16bit(map)); return;
    case LabelFormat::Csv: write_csv_labels(map, path); return;
  }
}

void save_label_map(const LabelMap& map, const std::filesystem::path& path) {
  save_label_map(map, path, format_from_path(path));
}

GrayImage load_gray_image(const std::filesystem::path& path) {
  const LabelFormat format = format_from_path(path);
  if (format == LabelFormat::Csv) {
    throw Error(ErrorCode::UnsupportedFormat, path.string() + ": intensity images must be PGM or PNG");
  }
  const Raster r = format == LabelFormat::Pgm16 ? read_pgm(path) : read_png(path);
  GrayImage img;
  img.width = r.width;
  img.height = r.height;
  img.values.assign(r.values.begin(), r.values.end());
  return img;
}

void save_gray_image(const GrayImage& image, const std::filesystem::path& path) {
  if (image.values.empty()) throw Error(ErrorCode::EmptyInput, "cannot save an empty image");
  const std::vector<std::uint32_t> values(image.values.begin(), image.values.end());
  switch (format_from_path(path)) {
    case LabelFormat::Pgm16: write_pgm16(path, image.width, image.height, values); return;
    case LabelFormat::PngGray16: write_png16(path, image.width, image.height, values); return;
    case LabelFormat::Csv:
      throw Error(ErrorCode::UnsupportedFormat, path.string() + ": intensity images must be PGM or PNG");
  }
}

std::string format_number(double v) {
  std::string s = fmt::format("{:.6f}", v);
  double back = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), back);
  if (back == v) return s;
  return fmt::format("{:.17g}", v);
}

std::string report_csv(const std::vector<ReportRecord>& records) {
  std::string out;
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kReportColumns[i];
  }
  out += '\n';
  for (const ReportRecord& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_quote(r.input_id), r.n_superpixels,
                       format_number(r.circularity_mean), format_number(r.src), format_number(r.solidity_mean),
                       format_number(r.vxy_mean), format_number(r.contour_smoothness_mean),
                       r.ue ? format_number(*r.ue) : "", r.br ? format_number(*r.br) : "", r.eps,
                       r.n_ground_truths, format_number(r.noise_amplitude), r.noise_rounds, r.noise_seed, r.seeds);
  }
  return out;
}

std::vector<ReportRecord> parse_report_csv(std::string_view text) {
  const auto rows = parse_csv_records(text);
  if (rows.empty() || rows.front() != kReportColumns) {
    throw Error(ErrorCode::CorruptFile, "report CSV header does not match");
  }
  std::vector<ReportRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != kReportColumns.size()) {
      throw Error(ErrorCode::CorruptFile, fmt::format("report row {} has {} fields", i + 1, f.size()));
    }
    ReportRecord r;
    r.input_id = f[0];
    r.n_superpixels = parse_field<std::size_t>(f[1], "n_superpixels");
    r.circularity_mean = parse_field<double>(f[2], "circularity_mean");
    r.src = parse_field<double>(f[3], "src");
    r.solidity_mean = parse_field<double>(f[4], "solidity_mean");
    r.vxy_mean = parse_field<double>(f[5], "vxy_mean");
    r.contour_smoothness_mean = parse_field<double>(f[6], "contour_smoothness_mean");
    r.ue = parse_optional(f[7], "ue");
    r.br = parse_optional(f[8], "br");
    r.eps = parse_field<int>(f[9], "eps");
    r.n_ground_truths = parse_field<std::size_t>(f[10], "n_ground_truths");
    r.noise_amplitude = parse_field<double>(f[11], "noise_amplitude");
    r.noise_rounds = parse_field<int>(f[12], "noise_rounds");
    r.noise_seed = parse_field<std::uint64_t>(f[13], "noise_seed");
    r.seeds = parse_field<int>(f[14], "seeds");
    out.push_back(std::move(r));
  }
  return out;
}

std::string report_json(const std::vector<ReportRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRecord& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<ReportRecord> parse_report_json(std::string_view text) {
  std::vector<ReportRecord> out;
  try {
    const nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw Error(ErrorCode::CorruptFile, "report JSON must be an array");
    for (const auto& j : arr) out.push_back(from_json(j));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptFile, std::string("report JSON: ") + e.what());
  }
  return out;
}

void write_report(const std::vector<ReportRecord>& records, const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".csv") {
    write_text_file(path, report_csv(records));
  } else if (ext == ".json") {
    write_text_file(path, report_json(records));
  } else {
    throw Error(ErrorCode::UnsupportedFormat, path.string() + ": reports are written as .csv or .json");
  }
}

std::vector<ReportRecord> read_report(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".csv") return parse_report_csv(read_text_file(path));
  if (ext == ".json") return parse_report_json(read_text_file(path));
  throw Error(ErrorCode::UnsupportedFormat, path.string() + ": reports are read from .csv or .json");
}

std::string read_text_file(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_bytes(path, text.data(), text.size());
}

}  // namespace spreg
