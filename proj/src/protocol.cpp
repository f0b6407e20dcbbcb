#include "gca/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "gca/rng.hpp"

namespace gca {

void TransferTask::validate() const {
  if (source_name == target_name) {
    throw ContractError("source and target domains must differ");
  }
  if (trials < 1) {
    throw ContractError("trials must be >= 1");
  }
  if (samples_per_class && *samples_per_class < 1) {
    throw ContractError("samples-per-class must be >= 1");
  }
}

int default_samples_per_class(const TransferTask& task) {
  if (task.samples_per_class) return *task.samples_per_class;
  return task.source_name == "dslr" ? 8 : 20;
}

AdaptationModel fit_adaptation(Method method, const DomainDataset& source,
                               const Eigen::MatrixXd& target_features,
                               const HyperParams& params, int subspace_dim) {
  AdaptationModel model;
  model.method = method;
  model.params = params;
  switch (method) {
    case Method::kNa:
      model.transform = no_adaptation(source.dim());
      return model;
    case Method::kCoral:
      model.transform = coral(source, target_features, params.eps);
      return model;
    case Method::kSa:
      model.transform = subspace_alignment(source, target_features,
                                           subspace_dim);
      return model;
    case Method::kBaselineS:
      model.transform = pca_baseline(source, target_features, subspace_dim,
                                     PcaSide::kSourceBasis);
      return model;
    case Method::kBaselineT:
      model.transform = pca_baseline(source, target_features, subspace_dim,
                                     PcaSide::kTargetBasis);
      return model;
    case Method::kGca1:
      return gca1(source, target_features, params);
    case Method::kGca2:
      return gca2(source, target_features, params);
    case Method::kCascadedGca2:
      return cascaded_gca2(source, target_features, params);
    case Method::kGca3:
      return gca3(source, target_features, params);
    case Method::kCascadedGca3:
      return cascaded_gca3(source, target_features, params);
  }
  throw ContractError("unknown method");
}

namespace {

std::vector<int> sample_training_indices(const DomainDataset& source,
                                         int per_class, Rng& rng) {
  const Eigen::VectorXi& labels = source.labels_or_throw();
  const int num_classes = source.num_classes();
  std::vector<int> chosen;
  for (int c = 0; c < num_classes; ++c) {
    std::vector<int> members;
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      if (labels(i) == c) members.push_back(static_cast<int>(i));
    }
    if (members.empty()) {
      std::ostringstream os;
      os << "source class " << c << " has no samples";
      throw ContractError(os.str());
    }
    // Fisher-Yates prefix shuffle
    const int take = std::min<int>(per_class, static_cast<int>(members.size()));
    for (int j = 0; j < take; ++j) {
      const int swap_with =
          j + rng.uniform_int(static_cast<int>(members.size()) - j);
      std::swap(members[j], members[swap_with]);
      chosen.push_back(members[j]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct TrialContext {
  DomainDataset train_source;   // standardized sampled source, with labels
  Eigen::MatrixXd target_feats; // standardized full target features
};

TrialContext make_trial(const DomainDataset& source,
                        const DomainDataset& target, int per_class,
                        std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  std::vector<int> idx = sample_training_indices(source, per_class, rng);
  Eigen::MatrixXd feats(static_cast<Eigen::Index>(idx.size()), source.dim());
  Eigen::VectorXi labs(static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) {
    feats.row(static_cast<Eigen::Index>(i)) = source.features.row(idx[i]);
    labs(static_cast<Eigen::Index>(i)) = source.labels_or_throw()(idx[i]);
  }
  Eigen::MatrixXd joint(feats.rows() + target.num_samples(), source.dim());
  joint.topRows(feats.rows()) = feats;
  joint.bottomRows(target.num_samples()) = target.features;
  Standardizer st = fit_standardizer(joint);
  return TrialContext{
      DomainDataset(apply_standardizer(st, feats), labs, source.domain_name),
      apply_standardizer(st, target.features)};
}

double run_method_on_trial(Method method, const HyperParams& params,
                           const TrialContext& trial,
                           const DomainDataset& target,
                           const ProtocolOptions& options) {
  AdaptationModel model = fit_adaptation(method, trial.train_source,
                                         trial.target_feats, params,
                                         options.subspace_dim);
  Eigen::MatrixXd adapted = adapt_features(model, trial.train_source.features);
  Eigen::MatrixXd target_mapped =
      map_target_features(model, trial.target_feats);
  ClassifierModel clf =
      train(options.classifier, adapted, trial.train_source.labels_or_throw(),
            options.ridge_reg);
  return accuracy(predict(clf, target_mapped), target.labels_or_throw());
}

void finalize_stats(EvalReport& report) {
  const auto n = static_cast<double>(report.per_trial.size());
  report.mean_accuracy =
      std::accumulate(report.per_trial.begin(), report.per_trial.end(), 0.0) /
      n;
  double ss = 0.0;
  for (double a : report.per_trial) {
    ss += (a - report.mean_accuracy) * (a - report.mean_accuracy);
  }
  report.std_accuracy = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

std::vector<EvalReport> run_protocol(const DomainDataset& source,
                                     const DomainDataset& target,
                                     const TransferTask& task,
                                     const std::vector<Method>& methods,
                                     const std::vector<HyperParams>& grid,
                                     const ProtocolOptions& options) {
  task.validate();
  if (methods.empty()) throw ContractError("no methods given");
  if (grid.empty()) throw ContractError("empty hyperparameter grid");
  if (!target.labels) {
    throw ContractError("target dataset has no labels to evaluate against");
  }
  const int per_class = default_samples_per_class(task);

  std::vector<EvalReport> reports;
  for (Method method : methods) {
    for (const HyperParams& params : grid) {
      EvalReport report;
      report.task = task;
      report.method = method;
      report.params = params;
      report.classifier = options.classifier;
      report.subspace_dim = options.subspace_dim;
      report.per_trial.resize(static_cast<size_t>(task.trials));
      reports.push_back(std::move(report));
    }
  }

  for (int trial = 0; trial < task.trials; ++trial) {
    // trial sampling depends only on (seed, trial), never on the
    // method/grid under evaluation
    TrialContext ctx = make_trial(
        source, target, per_class,
        split_seed(task.seed, static_cast<std::uint64_t>(trial)));
    size_t r = 0;
    for (Method method : methods) {
      for (const HyperParams& params : grid) {
        reports[r].per_trial[static_cast<size_t>(trial)] =
            run_method_on_trial(method, params, ctx, target, options);
        ++r;
      }
    }
  }
  for (EvalReport& report : reports) finalize_stats(report);
  return reports;
}

namespace {

using nlohmann::json;

json params_to_json(const HyperParams& p) {
  return json{{"t", p.t},         {"gamma", p.gamma},
              {"mu", p.mu},       {"k", p.k},
              {"bandwidth", p.bandwidth}, {"sigma", p.sigma},
              {"eps", p.eps},     {"num_kept", p.num_kept},
              {"kernel_ablation", p.kernel_ablation}};
}

HyperParams params_from_json(const json& j) {
  HyperParams p;
  p.t = j.at("t");
  p.gamma = j.at("gamma");
  p.mu = j.at("mu");
  p.k = j.at("k");
  p.bandwidth = j.at("bandwidth");
  p.sigma = j.at("sigma");
  p.eps = j.at("eps");
  p.num_kept = j.value("num_kept", 20);
  p.kernel_ablation = j.value("kernel_ablation", false);
  return p;
}

json report_to_json(const EvalReport& r) {
  json task{{"source", r.task.source_name},
            {"target", r.task.target_name},
            {"trials", r.task.trials},
            {"seed", r.task.seed}};
  if (r.task.samples_per_class) {
    task["samples_per_class"] = *r.task.samples_per_class;
  }
  return json{{"task", task},
              {"method", method_name(r.method)},
              {"params", params_to_json(r.params)},
              {"classifier", classifier_name(r.classifier)},
              {"subspace_dim", r.subspace_dim},
              {"mean_accuracy", r.mean_accuracy},
              {"std_accuracy", r.std_accuracy},
              {"per_trial", r.per_trial},
              {"metadata",
               {{"covariance", r.covariance_convention},
                {"standardization", r.standardization},
                {"samples_per_class_used", default_samples_per_class(r.task)}}}};
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  const json& task = j.at("task");
  r.task.source_name = task.at("source");
  r.task.target_name = task.at("target");
  r.task.trials = task.at("trials");
  r.task.seed = task.at("seed");
  if (task.contains("samples_per_class")) {
    r.task.samples_per_class = task.at("samples_per_class").get<int>();
  }
  r.method = method_from_name(j.at("method"));
  r.params = params_from_json(j.at("params"));
  r.classifier = classifier_from_name(j.at("classifier"));
  r.subspace_dim = j.at("subspace_dim");
  r.mean_accuracy = j.at("mean_accuracy");
  r.std_accuracy = j.at("std_accuracy");
  r.per_trial = j.at("per_trial").get<std::vector<double>>();
  return r;
}

}  // namespace

std::string reports_to_json(const std::vector<EvalReport>& reports) {
  json arr = json::array();
  for (const EvalReport& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<EvalReport> reports_from_json(const std::string& json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError(std::string("cannot parse report JSON: ") + e.what());
  }
  std::vector<EvalReport> out;
  try {
    for (const json& j : arr) out.push_back(report_from_json(j));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

std::vector<EvalReport> load_reports_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return reports_from_json(buf.str());
}

void emit_report_json(const std::vector<EvalReport>& reports,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path);
  out << reports_to_json(reports);
}

void emit_report_csv(const std::vector<EvalReport>& reports,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path);
  out << "source,target,method,classifier,t,gamma,mu,k,bandwidth,sigma,eps,"
         "trials,seed,mean_accuracy,std_accuracy,per_trial\n";
  char buf[40];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const EvalReport& r : reports) {
    out << r.task.source_name << ',' << r.task.target_name << ','
        << method_name(r.method) << ',' << classifier_name(r.classifier) << ','
        << fmt(r.params.t) << ',' << fmt(r.params.gamma) << ','
        << fmt(r.params.mu) << ',' << r.params.k << ','
        << fmt(r.params.bandwidth) << ',' << fmt(r.params.sigma) << ','
        << fmt(r.params.eps) << ',' << r.task.trials << ',' << r.task.seed
        << ',' << fmt(r.mean_accuracy) << ',' << fmt(r.std_accuracy) << ',';
    for (size_t i = 0; i < r.per_trial.size(); ++i) {
      if (i) out << ';';
      out << fmt(r.per_trial[i]);
    }
    out << '\n';
  }
}

std::vector<SweepRow> sweep_summary(const std::vector<EvalReport>& reports,
                                    Method reference) {
  if (reports.empty()) throw ContractError("no reports to summarize");

  auto better = [](const EvalReport& a, const EvalReport& b) {
    if (a.mean_accuracy != b.mean_accuracy) {
      return a.mean_accuracy > b.mean_accuracy;
    }
    return std::make_tuple(a.params.t, a.params.gamma, a.params.mu) <
           std::make_tuple(b.params.t, b.params.gamma, b.params.mu);
  };

  std::vector<Method> order;
  std::vector<const EvalReport*> best;
  for (const EvalReport& r : reports) {
    auto it = std::find(order.begin(), order.end(), r.method);
    if (it == order.end()) {
      order.push_back(r.method);
      best.push_back(&r);
    } else {
      const size_t i = static_cast<size_t>(it - order.begin());
      if (better(r, *best[i])) best[i] = &r;
    }
  }

  const EvalReport* ref = nullptr;
  for (size_t i = 0; i < order.size(); ++i) {
    if (order[i] == reference) ref = best[i];
  }
  if (ref == nullptr) {
    throw ContractError("reference method " + method_name(reference) +
                        " absent from the reports");
  }

  std::vector<SweepRow> rows;
  for (size_t i = 0; i < order.size(); ++i) {
    SweepRow row;
    row.method = order[i];
    row.best_params = best[i]->params;
    row.mean_accuracy = best[i]->mean_accuracy;
    row.std_accuracy = best[i]->std_accuracy;
    row.improvement_pct = 100.0 *
                          (best[i]->mean_accuracy - ref->mean_accuracy) /
                          ref->mean_accuracy;
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_table(const std::vector<SweepRow>& rows,
                               Method reference) {
  std::ostringstream os;
  os << "method          best_t  best_gamma  best_mu  mean_acc  std_acc  "
        "improvement_vs_"
     << method_name(reference) << "\n";
  char line[256];
  for (const SweepRow& row : rows) {
    std::snprintf(line, sizeof line,
                  "%-15s %6.3f  %10.3f  %7.3f  %8.4f  %7.4f  %+.2f%%\n",
                  method_name(row.method).c_str(), row.best_params.t,
                  row.best_params.gamma, row.best_params.mu,
                  row.mean_accuracy, row.std_accuracy, row.improvement_pct);
    os << line;
  }
  return os.str();
}

}  // namespace gca
