#include "ttw/pipeline.hpp"

#include "ttw/dtw.hpp"
#include "ttw/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ttw {

namespace {

// Unbiased bounded draw; keeps sampling reproducible across standard
// libraries (std::uniform_int_distribution is implementation-defined).
std::size_t bounded_draw(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t span = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = span - span % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return static_cast<std::size_t>(v % n);
}

void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[bounded_draw(rng, i)]);
  }
}

std::vector<std::size_t> class_member_indices(const Dataset& dataset, int label) {
  std::vector<std::size_t> members;
  for (std::size_t n = 0; n < dataset.labels.size(); ++n) {
    if (dataset.labels[n] == label) members.push_back(n);
  }
  return members;
}

Dataset subset_by_indices(const Dataset& dataset, const std::vector<std::size_t>& indices) {
  Dataset out;
  out.series.reserve(indices.size());
  for (std::size_t i : indices) {
    out.series.push_back(dataset.series[i]);
    if (dataset.has_labels()) out.labels.push_back(dataset.labels[i]);
  }
  return out;
}

std::size_t nearest_centroid_index(std::span<const double> series,
                                   const std::vector<std::vector<double>>& centroids) {
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = dtw_cost(series, centroids[c]);
    if (d < best_distance) {  // strict: ties keep the lowest class index
      best_distance = d;
      best = c;
    }
  }
  return best;
}

double nearest_centroid_accuracy(const std::vector<std::vector<double>>& centroids,
                                 const std::vector<int>& labels, const Dataset& test) {
  std::vector<std::size_t> assigned(test.size());
  parallel::for_each_index(test.size(), [&](std::size_t n) {
    assigned[n] = nearest_centroid_index(test.series[n], centroids);
  });
  std::size_t correct = 0;
  for (std::size_t n = 0; n < test.size(); ++n) {
    if (labels[assigned[n]] == test.labels[n]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace

std::vector<double> average_avg(const Dataset& dataset) {
  validate_dataset(dataset);
  std::vector<double> mean(dataset.length(), 0.0);
  for (const auto& row : dataset.series) {
    for (std::size_t t = 0; t < row.size(); ++t) mean[t] += row[t];
  }
  const double inv = 1.0 / static_cast<double>(dataset.size());
  for (double& v : mean) v *= inv;
  return mean;
}

TtwAverage average_ttw(const Dataset& dataset, const TrainConfig& config) {
  TtwAverage out;
  out.alignment = train(dataset, config);
  out.centroid = out.alignment.centroid;
  return out;
}

TuneResult tune_k(const Dataset& train_split, const std::vector<Index>& grid,
                  const TrainConfig& base_config) {
  if (grid.empty()) throw ValidationError("tune_k grid is empty");
  TuneResult result;
  result.grid = grid;
  result.scores.reserve(grid.size());
  double best_score = std::numeric_limits<double>::infinity();
  for (Index k : grid) {
    TrainConfig config = base_config;
    config.k = k;
    const TtwAverage avg = average_ttw(train_split, config);
    const double score = dtw_sum(avg.centroid, train_split);
    result.scores.push_back(score);
    if (score < best_score || (score == best_score && k < result.best_k)) {
      best_score = score;
      result.best_k = k;
    }
  }
  return result;
}

std::vector<AveragingReport> averaging_experiment(const Dataset& dataset,
                                                  const ExperimentConfig& experiment,
                                                  const TrainConfig& base_config) {
  validate_dataset(dataset);
  if (experiment.sets_per_class < 1) throw ValidationError("sets_per_class must be >= 1");
  if (experiment.set_size < 1) throw ValidationError("set_size must be >= 1");
  if (experiment.methods.empty()) throw ValidationError("no averaging methods selected");
  for (const auto& method : experiment.methods) {
    if (method != "ttw" && method != "avg") {
      throw ValidationError("unknown averaging method '" + method + "'");
    }
  }

  // Unlabeled datasets are treated as a single class 0.
  std::vector<int> labels = dataset.has_labels() ? class_labels(dataset) : std::vector<int>{0};
  std::mt19937_64 rng(experiment.seed);
  const std::size_t set_size = static_cast<std::size_t>(experiment.set_size);

  std::vector<AveragingReport> reports;
  for (int label : labels) {
    std::vector<std::size_t> members;
    if (dataset.has_labels()) {
      members = class_member_indices(dataset, label);
    } else {
      members.resize(dataset.size());
      for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
    }
    if (members.size() < set_size && !experiment.with_replacement) {
      throw ValidationError("class " + std::to_string(label) + " has only " +
                            std::to_string(members.size()) + " members; set_size is " +
                            std::to_string(experiment.set_size) +
                            " (enable with_replacement to allow this)");
    }

    std::vector<AveragingReport> class_reports;
    for (const auto& method : experiment.methods) {
      AveragingReport report;
      report.method = method;
      report.class_label = label;
      report.config_used = base_config;
      class_reports.push_back(std::move(report));
    }

    for (int set = 0; set < experiment.sets_per_class; ++set) {
      std::vector<std::size_t> chosen;
      chosen.reserve(set_size);
      if (experiment.with_replacement) {
        for (std::size_t i = 0; i < set_size; ++i) {
          chosen.push_back(members[bounded_draw(rng, members.size())]);
        }
      } else {
        std::vector<std::size_t> pool = members;
        shuffle_indices(pool, rng);
        chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(set_size));
      }
      const Dataset subset = subset_by_indices(dataset, chosen);

      for (std::size_t m = 0; m < experiment.methods.size(); ++m) {
        std::vector<double> centroid;
        if (experiment.methods[m] == "avg") {
          centroid = average_avg(subset);
        } else {
          TrainConfig config = base_config;
          if (!experiment.tune_grid.empty()) {
            config.k = tune_k(subset, experiment.tune_grid, base_config).best_k;
          }
          centroid = average_ttw(subset, config).centroid;
        }
        class_reports[m].per_set_dtw_sum.push_back(dtw_sum(centroid, subset));
      }
    }

    for (auto& report : class_reports) {
      double total = 0.0;
      for (double v : report.per_set_dtw_sum) total += v;
      report.mean_dtw_sum = total / static_cast<double>(report.per_set_dtw_sum.size());
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

ClassificationModel fit_nearest_centroid(const Dataset& train, const Dataset& val,
                                         const std::vector<Index>& grid,
                                         const TrainConfig& base_config) {
  validate_dataset(train);
  if (!train.has_labels()) throw ValidationError("training dataset has no labels");
  if (grid.empty()) throw ValidationError("K grid is empty");

  ClassificationModel model;
  model.labels = class_labels(train);
  const std::size_t n_classes = model.labels.size();

  std::vector<Dataset> class_sets;
  class_sets.reserve(n_classes);
  for (int label : model.labels) {
    Dataset subset = series_of_class(train, label);
    if (subset.series.empty()) {
      throw ValidationError("class " + std::to_string(label) + " has no training members");
    }
    class_sets.push_back(std::move(subset));
  }

  if (val.series.empty()) {
    // No validation data: per-class dtw_sum tuning.
    model.tuning = "dtw_sum";
    for (std::size_t c = 0; c < n_classes; ++c) {
      const TuneResult tuned = tune_k(class_sets[c], grid, base_config);
      TrainConfig config = base_config;
      config.k = tuned.best_k;
      model.per_class_k.push_back(tuned.best_k);
      model.centroids.push_back(average_ttw(class_sets[c], config).centroid);
    }
    return model;
  }

  validate_dataset(val);
  if (!val.has_labels()) throw ValidationError("validation dataset has no labels");
  for (int label : val.labels) {
    if (!std::binary_search(model.labels.begin(), model.labels.end(), label)) {
      throw ValidationError("validation label " + std::to_string(label) +
                            " is not a training class");
    }
  }

  // One centroid per (class, K); the greedy pass below swaps them in and out.
  model.tuning = "accuracy";
  std::vector<std::vector<std::vector<double>>> candidates(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (Index k : grid) {
      TrainConfig config = base_config;
      config.k = k;
      candidates[c].push_back(average_ttw(class_sets[c], config).centroid);
    }
  }

  std::vector<std::size_t> chosen(n_classes, 0);  // grid indices, start at grid[0]
  auto centroid_choice = [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<double>> centroids;
    centroids.reserve(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) centroids.push_back(candidates[c][pick[c]]);
    return centroids;
  };
  for (std::size_t c = 0; c < n_classes; ++c) {
    double best_accuracy = -1.0;
    std::size_t best_choice = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<std::size_t> trial = chosen;
      trial[c] = g;
      const double accuracy = nearest_centroid_accuracy(centroid_choice(trial), model.labels, val);
      if (accuracy > best_accuracy) {  // strict: ties keep the earlier grid entry
        best_accuracy = accuracy;
        best_choice = g;
      }
    }
    chosen[c] = best_choice;
  }

  for (std::size_t c = 0; c < n_classes; ++c) {
    model.per_class_k.push_back(grid[chosen[c]]);
    model.centroids.push_back(candidates[c][chosen[c]]);
  }
  return model;
}

ClassificationReport classify(const ClassificationModel& model, const Dataset& test) {
  if (model.centroids.empty()) throw ValidationError("model has no centroids");
  validate_dataset(test);
  if (!test.has_labels()) throw ValidationError("test dataset has no labels");

  ClassificationReport report;
  report.model = model;
  const std::size_t n_classes = model.centroids.size();
  report.confusion.assign(n_classes, std::vector<long>(n_classes, 0));

  std::vector<std::size_t> assigned(test.size());
  parallel::for_each_index(test.size(), [&](std::size_t n) {
    assigned[n] = nearest_centroid_index(test.series[n], model.centroids);
  });

  std::size_t correct = 0;
  for (std::size_t n = 0; n < test.size(); ++n) {
    const auto it = std::find(model.labels.begin(), model.labels.end(), test.labels[n]);
    if (it == model.labels.end()) {
      throw ValidationError("test label " + std::to_string(test.labels[n]) +
                            " is not a fitted class");
    }
    const std::size_t truth = static_cast<std::size_t>(it - model.labels.begin());
    report.confusion[truth][assigned[n]] += 1;
    if (truth == assigned[n]) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return report;
}

std::pair<Dataset, Dataset> split_stratified(const Dataset& dataset, double fraction,
                                             std::uint64_t seed) {
  validate_dataset(dataset);
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ValidationError("split fraction must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::pair<Dataset, Dataset> parts;

  std::vector<int> labels = dataset.has_labels() ? class_labels(dataset) : std::vector<int>{0};
  for (int label : labels) {
    std::vector<std::size_t> members;
    if (dataset.has_labels()) {
      members = class_member_indices(dataset, label);
    } else {
      members.resize(dataset.size());
      for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
    }
    shuffle_indices(members, rng);
    const std::size_t first_count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      Dataset& target = (i < first_count) ? parts.first : parts.second;
      target.series.push_back(dataset.series[members[i]]);
      if (dataset.has_labels()) target.labels.push_back(dataset.labels[members[i]]);
    }
  }
  return parts;
}

}  // namespace ttw
