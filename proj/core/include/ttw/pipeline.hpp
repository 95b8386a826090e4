#pragma once

#include "ttw/trainer.hpp"
#include "ttw/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ttw {

/// Pointwise mean of the (unaligned) series.
std::vector<double> average_avg(const Dataset& dataset);

/// Trains the warps and returns the centroid of the synchronized series,
/// with full diagnostics.
struct TtwAverage {
  std::vector<double> centroid;
  AlignmentResult alignment;
};
TtwAverage average_ttw(const Dataset& dataset, const TrainConfig& config);

inline std::vector<Index> default_k_grid() { return {1, 2, 4, 8, 16}; }

struct TuneResult {
  Index best_k = 1;
  std::vector<Index> grid;
  std::vector<double> scores;  // dtw_sum per grid entry
};

/// Trains once per grid K, scores each centroid by its dtw_sum against the
/// split, returns the argmin (ties -> the smaller K, grid order preserved).
TuneResult tune_k(const Dataset& train_split, const std::vector<Index>& grid,
                  const TrainConfig& base_config);

struct AveragingReport {
  std::string method;  // "ttw" | "avg"
  int class_label = 0;
  std::vector<double> per_set_dtw_sum;
  double mean_dtw_sum = 0.0;
  TrainConfig config_used;
};

struct ExperimentConfig {
  int sets_per_class = 10;
  int set_size = 10;
  std::vector<std::string> methods = {"ttw", "avg"};
  std::uint64_t seed = 0;
  bool with_replacement = false;   // required when a class is smaller than set_size
  std::vector<Index> tune_grid;    // nonempty: tune K per set over this grid
};

/// Per class: samples sets_per_class sets of set_size series (seeded), runs
/// every method on each set and records dtw_sum of the produced centroid
/// against the set. One report per (class, method).
std::vector<AveragingReport> averaging_experiment(const Dataset& dataset,
                                                  const ExperimentConfig& experiment,
                                                  const TrainConfig& base_config);

struct ClassificationModel {
  std::vector<int> labels;                      // ascending class labels
  std::vector<std::vector<double>> centroids;   // one per class
  std::vector<Index> per_class_k;
  std::string tuning;                           // "accuracy" | "dtw_sum"
};

/// Fits one TTW centroid per class on `train`. K is validated per class on
/// `val` by nearest-centroid accuracy (greedy pass over classes in label
/// order, other classes fixed at their current centroids). With an empty
/// validation set, falls back to dtw_sum-based tune_k per class.
ClassificationModel fit_nearest_centroid(const Dataset& train, const Dataset& val,
                                         const std::vector<Index>& grid,
                                         const TrainConfig& base_config);

struct ClassificationReport {
  ClassificationModel model;
  double accuracy = 0.0;
  std::vector<std::vector<long>> confusion;  // true class x assigned class
};

/// Assigns each test series to the nearest centroid by DTW distance
/// (ties -> lowest class index) and scores against the true labels.
ClassificationReport classify(const ClassificationModel& model, const Dataset& test);

/// Seeded stratified split: per class (label order), a shuffled `fraction`
/// of the members goes to the first part, the rest to the second.
std::pair<Dataset, Dataset> split_stratified(const Dataset& dataset, double fraction,
                                             std::uint64_t seed);

}  // namespace ttw
