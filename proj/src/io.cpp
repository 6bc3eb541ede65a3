#include "gazesynth/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace gazesynth {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  for (auto& c : cells) {
    while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.remove_prefix(1);
    while (!c.empty() && (c.back() == ' ' || c.back() == '\t' || c.back() == '\r')) c.remove_suffix(1);
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell == "NaN" || cell == "nan" || cell == "NAN") return kNaN;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || end != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  return v;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  std::optional<std::size_t> column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  }
};

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed row, expected " +
                    std::to_string(table.header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    table.rows.emplace_back(cells.begin(), cells.end());
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty()) throw IoError(path.string() + ": empty file");
  return table;
}

double cell_number(const CsvTable& t, std::size_t row, std::size_t col, const fs::path& path, bool allow_missing) {
  const std::string& cell = t.rows[row][col];
  if (cell.empty() && allow_missing) return kNaN;
  const auto v = parse_number(cell);
  if (!v || (!allow_missing && std::isnan(*v))) {
    throw IoError(path.string() + ":" + std::to_string(t.line_numbers[row]) + ": malformed value '" + cell +
                  "' in column " + t.header[col]);
  }
  return *v;
}

std::size_t require_column(const CsvTable& t, std::string_view name, const fs::path& path) {
  const auto c = t.column(name);
  if (!c) throw IoError(path.string() + ": missing column '" + std::string(name) + "'");
  return *c;
}

struct LayoutColumns {
  std::string_view time;
  std::string_view gaze_x;
  std::string_view gaze_y;
  std::string_view tgt_x;
  std::string_view tgt_y;
  std::string_view validity;  // empty when the layout has none
};

LayoutColumns layout_for(FormatTag format) {
  switch (format) {
    case FormatTag::canonical:
      return {"t_ms", "gaze_x_dva", "gaze_y_dva", "tgt_x_dva", "tgt_y_dva", ""};
    case FormatTag::eyelink_export:
      return {"n", "x", "y", "xT", "yT", "val"};
    case FormatTag::vr_export:
      return {"n", "lx", "ly", "xT", "yT", ""};
  }
  throw IoError("unknown format tag");
}

}  // namespace

FormatTag parse_format_tag(std::string_view tag) {
  if (tag == "canonical") return FormatTag::canonical;
  if (tag == "eyelink-export") return FormatTag::eyelink_export;
  if (tag == "vr-export") return FormatTag::vr_export;
  throw IoError("unknown format tag '" + std::string(tag) + "'");
}

std::string_view format_tag_name(FormatTag tag) {
  switch (tag) {
    case FormatTag::canonical:
      return "canonical";
    case FormatTag::eyelink_export:
      return "eyelink-export";
    case FormatTag::vr_export:
      return "vr-export";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw IoError("cannot format number");
  return {buf, end};
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (!fs::is_directory(dir)) throw IoError("output directory does not exist: " + dir.string());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GazeRecording read_recording(const fs::path& path, FormatTag format, double nominal_rate_hz,
                             std::string recording_id) {
  const CsvTable t = read_csv(path);
  const LayoutColumns cols = layout_for(format);
  const auto time_col = t.column(cols.time);
  if (!time_col && format == FormatTag::canonical) require_column(t, cols.time, path);
  const std::size_t gx = require_column(t, cols.gaze_x, path);
  const std::size_t gy = require_column(t, cols.gaze_y, path);
  const std::size_t tx = require_column(t, cols.tgt_x, path);
  const std::size_t ty = require_column(t, cols.tgt_y, path);
  const auto val = cols.validity.empty() ? std::nullopt : t.column(cols.validity);

  if (t.rows.empty()) throw IoError(path.string() + ": zero usable samples");
  if (!(nominal_rate_hz > 0.0)) throw IoError(path.string() + ": nominal rate must be > 0");

  GazeSamples s;
  const std::size_t n = t.rows.size();
  s.t_ms.resize(n);
  s.gaze_x.resize(n);
  s.gaze_y.resize(n);
  s.tgt_x.resize(n);
  s.tgt_y.resize(n);
  std::size_t usable = 0;
  for (std::size_t r = 0; r < n; ++r) {
    s.t_ms[r] = time_col ? cell_number(t, r, *time_col, path, false)
                         : static_cast<double>(r) * (1000.0 / nominal_rate_hz);
    s.gaze_x[r] = cell_number(t, r, gx, path, true);
    s.gaze_y[r] = cell_number(t, r, gy, path, true);
    s.tgt_x[r] = cell_number(t, r, tx, path, false);
    s.tgt_y[r] = cell_number(t, r, ty, path, false);
    if (val) {
      const double flag = cell_number(t, r, *val, path, true);
      if (std::isnan(flag) || flag != 0.0) {
        s.gaze_x[r] = kNaN;
        s.gaze_y[r] = kNaN;
      }
    }
    if (!std::isnan(s.gaze_x[r]) && !std::isnan(s.gaze_y[r])) ++usable;
  }
  if (usable == 0) throw IoError(path.string() + ": zero usable samples");
  if (recording_id.empty()) recording_id = path.stem().string();
  try {
    return GazeRecording(std::move(recording_id), nominal_rate_hz, std::move(s));
  } catch (const ValidationError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string recording_csv(const GazeRecording& rec) {
  std::string out = "t_ms,gaze_x_dva,gaze_y_dva,tgt_x_dva,tgt_y_dva\n";
  out.reserve(rec.size() * 48);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    out += format_double(rec.t_ms()[i]);
    out += ',';
    out += format_double(rec.gaze_x()[i]);
    out += ',';
    out += format_double(rec.gaze_y()[i]);
    out += ',';
    out += format_double(rec.tgt_x()[i]);
    out += ',';
    out += format_double(rec.tgt_y()[i]);
    out += '\n';
  }
  return out;
}

void write_recording(const GazeRecording& rec, const fs::path& path) { write_text_atomic(path, recording_csv(rec)); }

CorpusManifest read_manifest(const fs::path& path) {
  const CsvTable t = read_csv(path);
  const std::size_t id = require_column(t, "recording_id", path);
  const std::size_t p = require_column(t, "path", path);
  const std::size_t tag = require_column(t, "format_tag", path);
  const std::size_t rate = require_column(t, "rate_hz", path);
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

  CorpusManifest m;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ManifestEntry e;
    e.recording_id = t.rows[r][id];
    if (e.recording_id.empty() || !seen.insert(e.recording_id).second) {
      throw IoError(path.string() + ":" + std::to_string(t.line_numbers[r]) + ": empty or duplicate recording_id '" +
                    e.recording_id + "'");
    }
    fs::path entry_path = t.rows[r][p];
    e.path = entry_path.is_absolute() ? entry_path : base / entry_path;
    e.format = parse_format_tag(t.rows[r][tag]);
    e.rate_hz = cell_number(t, r, rate, path, false);
    m.entries.push_back(std::move(e));
  }
  return m;
}

void write_manifest(const CorpusManifest& manifest, const fs::path& path) {
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::string out = "recording_id,path,format_tag,rate_hz\n";
  for (const auto& e : manifest.entries) {
    fs::path rel = e.path.lexically_relative(base);
    if (rel.empty() || rel.native().starts_with("..")) rel = e.path;
    out += e.recording_id + "," + rel.generic_string() + "," + std::string(format_tag_name(e.format)) + "," +
           format_double(e.rate_hz) + "\n";
  }
  write_text_atomic(path, out);
}

std::string quality_table_csv(std::vector<QualityRow> rows) {
  if (rows.empty()) throw IoError("quality table has no rows");
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.recording_id < b.recording_id; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].recording_id == rows[i - 1].recording_id) {
      throw IoError("duplicate recording_id '" + rows[i].recording_id + "' in quality table");
    }
  }
  std::string out = "recording_id,acc_h,acc_v,acc_c,prec_h,prec_v,prec_c,temporal_prec_ms,n_fixations_used\n";
  for (const auto& r : rows) {
    const auto& q = r.quality;
    out += r.recording_id;
    for (double v : {q.acc_h, q.acc_v, q.acc_c, q.prec_h, q.prec_v, q.prec_c, q.temporal_prec_ms}) {
      out += ',';
      out += format_double(v);
    }
    out += ',' + std::to_string(q.n_fixations_used) + '\n';
  }
  return out;
}

void write_quality_table(std::vector<QualityRow> rows, const fs::path& path) {
  write_text_atomic(path, quality_table_csv(std::move(rows)));
}

std::vector<QualityRow> read_quality_table(const fs::path& path) {
  const CsvTable t = read_csv(path);
  const std::size_t id = require_column(t, "recording_id", path);
  const char* names[] = {"acc_h", "acc_v", "acc_c", "prec_h", "prec_v", "prec_c", "temporal_prec_ms"};
  std::size_t cols[7];
  for (std::size_t c = 0; c < 7; ++c) cols[c] = require_column(t, names[c], path);
  const std::size_t nfix = require_column(t, "n_fixations_used", path);

  std::vector<QualityRow> rows;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    QualityRow row;
    row.recording_id = t.rows[r][id];
    double v[7];
    for (std::size_t c = 0; c < 7; ++c) v[c] = cell_number(t, r, cols[c], path, false);
    row.quality = {v[0], v[1], v[2], v[3], v[4], v[5], v[6], 0};
    const double nf = cell_number(t, r, nfix, path, false);
    if (nf < 0.0 || nf != std::floor(nf)) {
      throw IoError(path.string() + ":" + std::to_string(t.line_numbers[r]) + ": n_fixations_used must be a count");
    }
    row.quality.n_fixations_used = static_cast<std::size_t>(nf);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": quality table has no rows");
  return rows;
}

std::string summary_csv_header() {
  return "feature,min,d10,d20,d30,d40,d50,d60,d70,d80,d90,median,mean,max\n";
}

std::string summary_csv_rows(const std::vector<FeatureSummary>& summary, std::string_view prefix) {
  std::string out;
  for (const auto& s : summary) {
    if (!prefix.empty()) {
      out += prefix;
      out += ',';
    }
    out += s.feature + "," + format_double(s.min);
    for (double d : s.deciles) out += "," + format_double(d);
    out += "," + format_double(s.median) + "," + format_double(s.mean) + "," + format_double(s.max) + "\n";
  }
  return out;
}

}  // namespace gazesynth
