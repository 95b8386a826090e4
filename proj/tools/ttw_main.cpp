// ttw: multi-series alignment, DTW averaging and nearest-centroid
// classification from the command line. Batch-oriented: reads UCR-style
// delimited files, writes CSV/JSON.

#include "ttw/data_io.hpp"
#include "ttw/dtw.hpp"
#include "ttw/parallel.hpp"
#include "ttw/pipeline.hpp"
#include "ttw/trainer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

struct CommonOptions {
  std::string input;
  std::string output;
  std::string format = "json";
  long k = 8;
  int iters = 100;
  double lr = 0.01;
  int window = 10;
  std::uint64_t seed = 0;
  bool znorm = false;
  bool exact_grad = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_output) {
  cmd->add_option("--input", opt.input, "input dataset (UCR-style delimited file)")->required();
  auto* output = cmd->add_option("--output", opt.output, "output file path");
  if (needs_output) output->required();
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--k", opt.k, "DST components")->capture_default_str();
  cmd->add_option("--iters", opt.iters, "training iterations")->capture_default_str();
  cmd->add_option("--lr", opt.lr, "Adam step size")->capture_default_str();
  cmd->add_option("--window", opt.window, "sinc window half-width")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "seed for sampling/splits")->capture_default_str();
  cmd->add_flag("--znorm", opt.znorm, "z-normalize each series at ingestion");
  cmd->add_flag("--exact-grad", opt.exact_grad, "differentiate through the centroid");
  cmd->add_flag("--quiet", opt.quiet, "suppress standard-output chatter");
}

ttw::TrainConfig train_config(const CommonOptions& opt) {
  ttw::TrainConfig config;
  config.k = opt.k;
  config.iterations = opt.iters;
  config.step_size = opt.lr;
  config.window_half_width = opt.window;
  config.seed = opt.seed;
  config.exact_gradient = opt.exact_grad;
  config.validate();
  return config;
}

ttw::OutputFormat output_format(const CommonOptions& opt) {
  return opt.format == "csv" ? ttw::OutputFormat::kCsv : ttw::OutputFormat::kJson;
}

// Loss progress every 10 iterations, to stderr so stdout stays parseable.
ttw::IterationCallback progress(const CommonOptions& opt) {
  if (opt.quiet) return {};
  const int total = opt.iters;
  return [total](int iteration, double loss) {
    if (iteration % 10 == 0 || iteration == 1 || iteration == total) {
      std::fprintf(stderr, "iter %d/%d loss %.6g\n", iteration, total, loss);
    }
  };
}

ttw::Dataset load_input(const CommonOptions& opt, ttw::LoadManifest* manifest = nullptr) {
  ttw::LoadOptions options;
  options.z_normalize = opt.znorm;
  return ttw::load_ucr(opt.input, manifest, options);
}

std::vector<ttw::Index> parse_grid(const std::vector<long>& raw) {
  if (raw.empty()) return ttw::default_k_grid();
  return {raw.begin(), raw.end()};
}

int run(int argc, char** argv) {
  CLI::App app{"trainable time warping: align, average and classify time-series"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string method = "ttw";
  std::string test_path;
  std::string candidate_path;
  std::vector<long> grid_raw;
  int sets_per_class = 10;
  int set_size = 10;
  bool with_replacement = false;
  bool tune = false;
  double val_fraction = 0.5;

  CLI::App* average = app.add_subcommand("average", "average a dataset into one centroid");
  add_common(average, opt, true);
  average->add_option("--method", method, "averaging method")
      ->check(CLI::IsMember({"ttw", "avg"}))
      ->capture_default_str();

  CLI::App* align = app.add_subcommand("align", "synchronize the series and save warps");
  add_common(align, opt, true);

  CLI::App* classify_cmd = app.add_subcommand("classify", "nearest-centroid classification");
  add_common(classify_cmd, opt, false);
  classify_cmd->add_option("--test", test_path, "labeled test dataset")->required();
  classify_cmd->add_option("--grid", grid_raw, "K grid (default 1 2 4 8 16)");
  classify_cmd->add_option("--val-fraction", val_fraction,
                           "training fraction held out to validate K")
      ->capture_default_str();

  CLI::App* tune_cmd = app.add_subcommand("tune-k", "score the K grid on a dataset");
  add_common(tune_cmd, opt, false);
  tune_cmd->add_option("--grid", grid_raw, "K grid (default 1 2 4 8 16)");

  CLI::App* experiment = app.add_subcommand("experiment", "per-class set-averaging comparison");
  add_common(experiment, opt, false);
  experiment->add_option("--sets-per-class", sets_per_class)->capture_default_str();
  experiment->add_option("--set-size", set_size)->capture_default_str();
  experiment->add_flag("--with-replacement", with_replacement,
                       "allow classes smaller than the set size");
  experiment->add_flag("--tune", tune, "tune K per set over the grid");
  experiment->add_option("--grid", grid_raw, "K grid for --tune");

  CLI::App* eval = app.add_subcommand("eval", "dtw_sum of a candidate against a dataset");
  add_common(eval, opt, false);
  eval->add_option("--candidate", candidate_path, "candidate series (JSON or one CSV row)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are validation failures
  }

  try {
    if (*average) {
      const ttw::Dataset dataset = load_input(opt);
      const ttw::TrainConfig config = train_config(opt);
      if (method == "avg") {
        ttw::AlignmentResult result;
        result.centroid = ttw::average_avg(dataset);
        result.synchronized = ttw::dataset_matrix(dataset);
        result.warps = ttw::coefficients_to_warps(
            ttw::Matrix::Zero(result.synchronized.rows(), 1),
            ttw::DstBasis(result.synchronized.cols(), 1));
        result.coefficients = ttw::Matrix::Zero(result.synchronized.rows(), 1);
        result.loss_trace = {ttw::within_group_loss(result.synchronized).value};
        ttw::save_result(result, config, opt.output, output_format(opt));
      } else {
        const ttw::AlignmentResult result = ttw::train(dataset, config, progress(opt));
        ttw::save_result(result, config, opt.output, output_format(opt));
      }
      if (!opt.quiet) std::printf("wrote %s\n", opt.output.c_str());
      return 0;
    }

    if (*align) {
      const ttw::Dataset dataset = load_input(opt);
      const ttw::TrainConfig config = train_config(opt);
      const ttw::AlignmentResult result = ttw::train(dataset, config, progress(opt));
      ttw::save_result(result, config, opt.output, output_format(opt));
      if (!opt.quiet) {
        std::printf("final loss %.6g (%zu clamped samples, %zu boundary deviations)\n",
                    result.loss_trace.back(), result.projection.clamped_samples,
                    result.projection.boundary_violations);
        std::printf("wrote %s\n", opt.output.c_str());
      }
      return 0;
    }

    if (*classify_cmd) {
      const ttw::Dataset train_set = load_input(opt);
      ttw::LoadOptions load_options;
      load_options.z_normalize = opt.znorm;
      const ttw::Dataset test_set = ttw::load_ucr(test_path, nullptr, load_options);
      const ttw::TrainConfig config = train_config(opt);
      const auto [fit_part, val_part] =
          ttw::split_stratified(train_set, 1.0 - val_fraction, opt.seed);
      const ttw::ClassificationModel model =
          ttw::fit_nearest_centroid(fit_part, val_part, parse_grid(grid_raw), config);
      const ttw::ClassificationReport report = ttw::classify(model, test_set);
      if (!opt.output.empty()) ttw::save_report_json(report, opt.output);
      if (!opt.quiet) {
        std::printf("accuracy %.4f (tuning: %s)\n", report.accuracy, model.tuning.c_str());
        for (std::size_t c = 0; c < model.labels.size(); ++c) {
          std::printf("class %d: K=%ld\n", model.labels[c],
                      static_cast<long>(model.per_class_k[c]));
        }
        std::printf("confusion (rows: true, cols: assigned):\n");
        for (const auto& row : report.confusion) {
          for (std::size_t j = 0; j < row.size(); ++j) {
            std::printf(j + 1 == row.size() ? "%ld\n" : "%ld ", row[j]);
          }
        }
      }
      return 0;
    }

    if (*tune_cmd) {
      const ttw::Dataset dataset = load_input(opt);
      const ttw::TrainConfig config = train_config(opt);
      const ttw::TuneResult tuned = ttw::tune_k(dataset, parse_grid(grid_raw), config);
      if (!opt.output.empty()) ttw::save_tune_json(tuned, opt.output);
      if (!opt.quiet) {
        for (std::size_t i = 0; i < tuned.grid.size(); ++i) {
          std::printf("K=%ld dtw_sum=%.17g\n", static_cast<long>(tuned.grid[i]),
                      tuned.scores[i]);
        }
        std::printf("best K=%ld\n", static_cast<long>(tuned.best_k));
      }
      return 0;
    }

    if (*experiment) {
      const ttw::Dataset dataset = load_input(opt);
      const ttw::TrainConfig config = train_config(opt);
      ttw::ExperimentConfig setup;
      setup.sets_per_class = sets_per_class;
      setup.set_size = set_size;
      setup.seed = opt.seed;
      setup.with_replacement = with_replacement;
      if (tune) setup.tune_grid = parse_grid(grid_raw);
      const auto reports = ttw::averaging_experiment(dataset, setup, config);
      if (!opt.output.empty()) ttw::save_reports_json(reports, opt.output);
      if (!opt.quiet) {
        for (const auto& report : reports) {
          std::printf("class %d %-3s mean dtw_sum %.6g over %zu sets\n", report.class_label,
                      report.method.c_str(), report.mean_dtw_sum,
                      report.per_set_dtw_sum.size());
        }
      }
      return 0;
    }

    if (*eval) {
      const ttw::Dataset dataset = load_input(opt);
      const std::vector<double> candidate = ttw::load_candidate(candidate_path);
      std::printf("%.17g\n", ttw::dtw_sum(candidate, dataset));
      return 0;
    }
  } catch (const ttw::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ttw::parallel::set_max_workers(0);  // honor TTW_THREADS (0 = auto)
  return run(argc, argv);
}
