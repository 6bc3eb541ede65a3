#pragma once

// File formats.
//
//   recording CSV  t_ms,gaze_x_dva,gaze_y_dva,tgt_x_dva,tgt_y_dva
//                  missing gaze is an empty cell (NaN/nan also accepted)
//   quality table  recording_id,acc_h,acc_v,acc_c,prec_h,prec_v,prec_c,
//                  temporal_prec_ms,n_fixations_used
//   manifest       recording_id,path,format_tag,rate_hz
//
// Numbers are written in shortest round-trip form, so write then read is
// exact. Every file is written to a temporary sibling and renamed.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gazesynth/assess.hpp"
#include "gazesynth/recording.hpp"

namespace gazesynth {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FormatTag {
  canonical,
  /// Desktop tracker export: n (ms), x, y, val (non-zero = invalid), xT, yT.
  eyelink_export,
  /// Headset export: n (ms), lx, ly (left eye), xT, yT. Missing eye data
  /// appears as NaN.
  vr_export,
};

FormatTag parse_format_tag(std::string_view tag);
std::string_view format_tag_name(FormatTag tag);

std::string format_double(double v);

/// Replaces path atomically with content (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

/// Reads and validates a recording. Timestamps missing from an external
/// layout are synthesised as i * 1000 / rate from 0. The id defaults to
/// the file stem.
GazeRecording read_recording(const std::filesystem::path& path, FormatTag format, double nominal_rate_hz,
                             std::string recording_id = {});

std::string recording_csv(const GazeRecording& rec);
void write_recording(const GazeRecording& rec, const std::filesystem::path& path);

struct ManifestEntry {
  std::string recording_id;
  std::filesystem::path path;
  FormatTag format = FormatTag::canonical;
  double rate_hz = 0.0;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

/// Relative paths resolve against the manifest's directory.
CorpusManifest read_manifest(const std::filesystem::path& path);
/// Paths are written relative to the manifest's directory when possible.
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);

struct QualityRow {
  std::string recording_id;
  QualityVector quality;
};

/// Rows are sorted by recording_id. Throws IoError on an empty table or a
/// duplicate id.
std::string quality_table_csv(std::vector<QualityRow> rows);
void write_quality_table(std::vector<QualityRow> rows, const std::filesystem::path& path);
std::vector<QualityRow> read_quality_table(const std::filesystem::path& path);

/// Header line with its newline. A non-empty prefix becomes a leading column.
std::string summary_csv_header();
std::string summary_csv_rows(const std::vector<FeatureSummary>& summary, std::string_view prefix = {});

}  // namespace gazesynth
