#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gca/algorithms.hpp"
#include "gca/classify.hpp"
#include "gca/dataset.hpp"

namespace gca {

struct TransferTask {
  std::string source_name;
  std::string target_name;
  int trials = 30;
  std::optional<int> samples_per_class;  // default rule applies when unset
  std::uint64_t seed = 0;

  void validate() const;
};

/// Per-class source sampling count: 8 for DSLR sources, 20 otherwise,
/// unless overridden by the task.
int default_samples_per_class(const TransferTask& task);

struct EvalReport {
  TransferTask task;
  Method method = Method::kNa;
  HyperParams params;
  ClassifierKind classifier = ClassifierKind::kLinearOneVsRest;
  int subspace_dim = 20;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  std::vector<double> per_trial;
  // frozen decisions, recorded for reproducibility
  std::string covariance_convention =
      "pairwise_scatter per-pair normalized (GCA family); empirical "
      "covariance (CORAL)";
  std::string standardization = "joint (sampled source + full target)";
};

struct ProtocolOptions {
  ClassifierKind classifier = ClassifierKind::kLinearOneVsRest;
  double ridge_reg = 1e-3;
  int subspace_dim = 20;
};

/// One full pass of the randomized evaluation protocol: per trial,
/// sample the labeled source training set, standardize jointly, fit the
/// adaptation on sampled source + target features, classify the target.
/// Target labels are consumed only by the final accuracy computation.
std::vector<EvalReport> run_protocol(const DomainDataset& source,
                                     const DomainDataset& target,
                                     const TransferTask& task,
                                     const std::vector<Method>& methods,
                                     const std::vector<HyperParams>& grid,
                                     const ProtocolOptions& options = {});

/// Fit a single adaptation model on full data (no trial sampling).
AdaptationModel fit_adaptation(Method method, const DomainDataset& source,
                               const Eigen::MatrixXd& target_features,
                               const HyperParams& params, int subspace_dim);

void emit_report_json(const std::vector<EvalReport>& reports,
                      const std::string& path);
void emit_report_csv(const std::vector<EvalReport>& reports,
                     const std::string& path);
std::string reports_to_json(const std::vector<EvalReport>& reports);
std::vector<EvalReport> reports_from_json(const std::string& json_text);
std::vector<EvalReport> load_reports_json(const std::string& path);

struct SweepRow {
  Method method;
  HyperParams best_params;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double improvement_pct = 0.0;  // vs the reference method's best mean
};

/// Best grid point per method (max mean accuracy, ties to the smallest
/// (t, gamma, mu) lexicographically) with percentage improvement over
/// the named reference method.
std::vector<SweepRow> sweep_summary(const std::vector<EvalReport>& reports,
                                    Method reference);

std::string format_sweep_table(const std::vector<SweepRow>& rows,
                               Method reference);

}  // namespace gca
