#include "ttw/data_io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ttw {

namespace {

using nlohmann::json;

std::string location(std::size_t row, std::size_t column) {
  return "row " + std::to_string(row) + ", column " + std::to_string(column);
}

double parse_number(const std::string& token, std::size_t row, std::size_t column) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError("unparseable value '" + token + "' at " + location(row, column));
  }
  if (!std::isfinite(value)) {
    throw ValidationError("non-finite value at " + location(row, column));
  }
  return value;
}

std::vector<std::string> split_row(const std::string& line, char delimiter) {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream stream(line);
  while (std::getline(stream, token, delimiter)) tokens.push_back(token);
  return tokens;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index n = 0; n < m.rows(); ++n) {
    json row = json::array();
    for (Index t = 0; t < m.cols(); ++t) row.push_back(m(n, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw IoError("expected a nonempty array of rows");
  const Index n = static_cast<Index>(rows.size());
  const Index t = static_cast<Index>(rows.front().size());
  Matrix m(n, t);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != t) throw IoError("ragged matrix rows in document");
    for (Index j = 0; j < t; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

json config_to_json(const TrainConfig& config) {
  return json{{"k", config.k},
              {"iterations", config.iterations},
              {"step_size", config.step_size},
              {"beta1", config.beta1},
              {"beta2", config.beta2},
              {"epsilon", config.epsilon},
              {"window_half_width", config.window_half_width},
              {"seed", config.seed},
              {"exact_gradient", config.exact_gradient},
              {"stop_tolerance", config.stop_tolerance}};
}

TrainConfig config_from_json(const json& j) {
  TrainConfig config;
  config.k = j.at("k").get<Index>();
  config.iterations = j.at("iterations").get<int>();
  config.step_size = j.at("step_size").get<double>();
  config.beta1 = j.at("beta1").get<double>();
  config.beta2 = j.at("beta2").get<double>();
  config.epsilon = j.at("epsilon").get<double>();
  config.window_half_width = j.at("window_half_width").get<int>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.exact_gradient = j.at("exact_gradient").get<bool>();
  config.stop_tolerance = j.at("stop_tolerance").get<double>();
  return config;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

// %.17g round-trips doubles exactly.
void append_number(std::string& out, double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  out += buffer;
}

std::string csv_rows(const Matrix& m) {
  std::string out;
  for (Index n = 0; n < m.rows(); ++n) {
    for (Index t = 0; t < m.cols(); ++t) {
      if (t) out += ',';
      append_number(out, m(n, t));
    }
    out += '\n';
  }
  return out;
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (t) out += ',';
    append_number(out, values[t]);
  }
  out += '\n';
  return out;
}

std::string csv_column(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    append_number(out, v);
    out += '\n';
  }
  return out;
}

std::string sibling_path(const std::string& path, const std::string& name) {
  std::string stem = path;
  if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".csv") {
    stem.resize(stem.size() - 4);
  }
  return stem + "." + name + ".csv";
}

}  // namespace

std::vector<double> interpolate_to_length(const std::vector<double>& values,
                                          std::size_t target_length) {
  if (values.size() == target_length) return values;
  if (values.size() < 2 || target_length < 2) {
    throw ValidationError("interpolation requires at least 2 samples");
  }
  std::vector<double> out(target_length);
  const double scale =
      static_cast<double>(values.size() - 1) / static_cast<double>(target_length - 1);
  for (std::size_t i = 0; i < target_length; ++i) {
    const double pos = static_cast<double>(i) * scale;  // 0-based source position
    const std::size_t lo = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double frac = pos - static_cast<double>(lo);
    out[i] = frac == 0.0 ? values[lo] : values[lo] + frac * (values[lo + 1] - values[lo]);
  }
  out.front() = values.front();
  out.back() = values.back();
  return out;
}

Dataset load_ucr(const std::string& path, LoadManifest* manifest, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::vector<std::string> label_tokens;
  std::vector<std::vector<double>> rows;
  char delimiter = '\0';

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (delimiter == '\0') {
      if (line.find('\t') != std::string::npos) {
        delimiter = '\t';
      } else if (line.find(',') != std::string::npos) {
        delimiter = ',';
      } else {
        throw ValidationError("row " + std::to_string(line_number) +
                              " has no delimiter (comma or tab expected)");
      }
    }
    const char other = delimiter == ',' ? '\t' : ',';
    if (line.find(other) != std::string::npos) {
      throw ValidationError("inconsistent delimiter at row " + std::to_string(line_number));
    }

    const std::vector<std::string> tokens = split_row(line, delimiter);
    if (tokens.size() < 3) {
      throw ValidationError("row " + std::to_string(line_number) +
                            " has fewer than 2 values after the label");
    }
    label_tokens.push_back(tokens.front());
    std::vector<double> values;
    values.reserve(tokens.size() - 1);
    for (std::size_t c = 1; c < tokens.size(); ++c) {
      values.push_back(parse_number(tokens[c], line_number, c + 1));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ValidationError("'" + path + "' contains no data rows");

  // Integral labels keep their values; otherwise map first-seen to 0,1,2,...
  std::vector<int> labels(rows.size());
  bool all_integral = true;
  for (const auto& token : label_tokens) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || std::floor(v) != v ||
        std::abs(v) > 2e9) {
      all_integral = false;
      break;
    }
  }
  if (all_integral) {
    for (std::size_t n = 0; n < rows.size(); ++n) {
      double v = 0.0;
      std::from_chars(label_tokens[n].data(), label_tokens[n].data() + label_tokens[n].size(), v);
      labels[n] = static_cast<int>(v);
    }
  } else {
    std::map<std::string, int> ids;
    for (std::size_t n = 0; n < rows.size(); ++n) {
      const auto [it, inserted] = ids.emplace(label_tokens[n], static_cast<int>(ids.size()));
      labels[n] = it->second;
    }
  }

  std::size_t max_length = 0;
  bool equal_lengths = true;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) equal_lengths = false;
    max_length = std::max(max_length, row.size());
  }
  if (!equal_lengths) {
    for (auto& row : rows) row = interpolate_to_length(row, max_length);
  }

  if (options.z_normalize) {
    for (auto& row : rows) {
      double mean = 0.0;
      for (double v : row) mean += v;
      mean /= static_cast<double>(row.size());
      double var = 0.0;
      for (double v : row) var += (v - mean) * (v - mean);
      var /= static_cast<double>(row.size());
      const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
      for (double& v : row) v = (v - mean) * scale;
    }
  }

  Dataset dataset;
  dataset.series = std::move(rows);
  dataset.labels = std::move(labels);
  validate_dataset(dataset);

  if (manifest) {
    manifest->rows = dataset.size();
    manifest->length = dataset.length();
    manifest->interpolated = !equal_lengths;
    manifest->delimiter = delimiter;
    manifest->class_histogram.clear();
    for (int label : dataset.labels) manifest->class_histogram[label] += 1;
  }
  return dataset;
}

void save_result(const AlignmentResult& result, const TrainConfig& config,
                 const std::string& path, OutputFormat format) {
  if (result.loss_trace.empty()) throw ValidationError("alignment result has an empty loss trace");
  if (format == OutputFormat::kJson) {
    json doc{{"centroid", result.centroid},
             {"synchronized", matrix_to_json(result.synchronized)},
             {"warps", matrix_to_json(result.warps)},
             {"coefficients", matrix_to_json(result.coefficients)},
             {"loss_trace", result.loss_trace},
             {"config", config_to_json(config)}};
    write_text_file(path, doc.dump(2) + "\n");
    return;
  }
  write_text_file(sibling_path(path, "centroid"), csv_row(result.centroid));
  write_text_file(sibling_path(path, "synchronized"), csv_rows(result.synchronized));
  write_text_file(sibling_path(path, "warps"), csv_rows(result.warps));
  write_text_file(sibling_path(path, "loss"), csv_column(result.loss_trace));
}

AlignmentResult load_result_json(const std::string& path, TrainConfig* config) {
  const json doc = read_json_file(path);
  AlignmentResult result;
  result.centroid = doc.at("centroid").get<std::vector<double>>();
  result.synchronized = matrix_from_json(doc.at("synchronized"));
  result.warps = matrix_from_json(doc.at("warps"));
  result.coefficients = matrix_from_json(doc.at("coefficients"));
  result.loss_trace = doc.at("loss_trace").get<std::vector<double>>();
  if (config) *config = config_from_json(doc.at("config"));
  return result;
}

void save_reports_json(const std::vector<AveragingReport>& reports, const std::string& path) {
  json list = json::array();
  for (const auto& report : reports) {
    list.push_back(json{{"method", report.method},
                        {"class", report.class_label},
                        {"per_set_dtw_sum", report.per_set_dtw_sum},
                        {"mean_dtw_sum", report.mean_dtw_sum},
                        {"config", config_to_json(report.config_used)}});
  }
  write_text_file(path, list.dump(2) + "\n");
}

void save_report_json(const ClassificationReport& report, const std::string& path) {
  json doc{{"labels", report.model.labels},
           {"per_class_k", report.model.per_class_k},
           {"tuning", report.model.tuning},
           {"centroids", report.model.centroids},
           {"accuracy", report.accuracy},
           {"confusion", report.confusion}};
  write_text_file(path, doc.dump(2) + "\n");
}

void save_tune_json(const TuneResult& tuned, const std::string& path) {
  json doc{{"grid", tuned.grid}, {"scores", tuned.scores}, {"best_k", tuned.best_k}};
  write_text_file(path, doc.dump(2) + "\n");
}

std::vector<double> load_candidate(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    const json doc = read_json_file(path);
    if (doc.contains("centroid")) return doc.at("centroid").get<std::vector<double>>();
    if (doc.contains("values")) return doc.at("values").get<std::vector<double>>();
    if (doc.is_array()) return doc.get<std::vector<double>>();
    throw ValidationError("'" + path + "' has no centroid/values array");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  if (line.empty()) throw ValidationError("'" + path + "' contains no candidate row");
  const char delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
  const std::vector<std::string> tokens = split_row(line, delimiter);
  std::vector<double> values;
  values.reserve(tokens.size());
  for (std::size_t c = 0; c < tokens.size(); ++c) {
    values.push_back(parse_number(tokens[c], 1, c + 1));
  }
  return values;
}

}  // namespace ttw
