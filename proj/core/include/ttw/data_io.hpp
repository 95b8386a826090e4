#pragma once

#include "ttw/pipeline.hpp"
#include "ttw/trainer.hpp"
#include "ttw/types.hpp"

#include <map>
#include <string>

namespace ttw {

struct LoadOptions {
  bool z_normalize = false;  // per-series zero mean / unit variance
};

struct LoadManifest {
  std::size_t rows = 0;
  std::size_t length = 0;                 // after any interpolation
  std::map<int, std::size_t> class_histogram;
  bool interpolated = false;              // rows had unequal lengths
  char delimiter = '\0';
};

/// Loads a UCR-style delimited file: each row is a class label followed by
/// the sample values; comma or tab delimited (auto-detected, must be
/// consistent). Rows of unequal length are linearly interpolated to the
/// maximum length. Integral labels keep their values; otherwise labels map
/// to dense ids in first-seen order.
Dataset load_ucr(const std::string& path, LoadManifest* manifest = nullptr,
                 const LoadOptions& options = {});

/// Linear resample onto `target_length` uniform positions across [1, L];
/// endpoints are preserved exactly and matching lengths return the input.
std::vector<double> interpolate_to_length(const std::vector<double>& values,
                                          std::size_t target_length);

enum class OutputFormat { kCsv, kJson };

/// JSON: one document {centroid, synchronized, warps, coefficients,
/// loss_trace, config} at `path`, numbers round-trip exact. CSV: sibling
/// files <stem>.centroid.csv (one row), .synchronized.csv and .warps.csv
/// (one row per series) and .loss.csv (one value per line).
void save_result(const AlignmentResult& result, const TrainConfig& config,
                 const std::string& path, OutputFormat format);

/// Reads back a JSON document written by save_result.
AlignmentResult load_result_json(const std::string& path, TrainConfig* config = nullptr);

/// Reports as JSON (CSV is not defined for reports).
void save_reports_json(const std::vector<AveragingReport>& reports, const std::string& path);
void save_report_json(const ClassificationReport& report, const std::string& path);
void save_tune_json(const TuneResult& tuned, const std::string& path);

/// Candidate series for `eval`: a JSON document with a "centroid" (or
/// "values") array, or a delimited text row of plain numbers.
std::vector<double> load_candidate(const std::string& path);

}  // namespace ttw
