#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gca/dataio.hpp"
#include "gca/protocol.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gca;

struct CommonOpts {
  std::string source;
  std::string target;
  std::string data_root;
  std::vector<std::string> methods{"GCA1"};
  HyperParams params;
  int trials = 30;
  std::uint64_t seed = 0;
  int samples_per_class = 0;  // 0 -> default rule
  std::string classifier = "ridge";
  int subspace_dim = 20;
  std::string format = "json";
  std::string out;
};

void add_hyper_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--t", o.params.t, "Geodesic weight in [0,1]");
  cmd->add_option("--gamma", o.params.gamma, "Cascaded weight in [0,1]");
  cmd->add_option("--mu", o.params.mu, "Geometry/statistics balance");
  cmd->add_option("--k", o.params.k, "kNN graph neighbors");
  cmd->add_option("--bandwidth", o.params.bandwidth,
                  "kNN kernel bandwidth (0 = median heuristic)");
  cmd->add_option("--sigma", o.params.sigma, "Diffusion kernel scale");
  cmd->add_option("--eps", o.params.eps, "SPD regularization eps");
  cmd->add_option("--classifier", o.classifier,
                  "Classifier: ncm or ridge");
  cmd->add_option("--subspace-dim", o.subspace_dim,
                  "Subspace dimension for SA/B-S/B-T");
}

void add_task_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--source", o.source, "Source domain name or CSV path")
      ->required();
  cmd->add_option("--target", o.target, "Target domain name or CSV path")
      ->required();
  cmd->add_option("--data-root", o.data_root,
                  "Directory holding <domain>.csv files");
  cmd->add_option("--trials", o.trials, "Randomized trials");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--samples-per-class", o.samples_per_class,
                  "Labeled source samples per class (0 = protocol default)");
  cmd->add_option("--format", o.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Report output path");
}

std::string resolve_path(const std::string& name, const std::string& root) {
  if (fs::exists(name)) return name;
  if (!root.empty()) {
    fs::path candidate = fs::path(root) / (name + ".csv");
    if (fs::exists(candidate)) return candidate.string();
  }
  throw DataError("cannot resolve dataset '" + name + "' (searched: " + name +
                  (root.empty() ? "" : ", " + (fs::path(root) / (name + ".csv")).string()) +
                  "); pass a CSV path or --data-root");
}

std::string domain_key(const std::string& name) {
  return fs::path(name).stem().string();
}

TransferTask make_task(const CommonOpts& o) {
  TransferTask task;
  task.source_name = domain_key(o.source);
  task.target_name = domain_key(o.target);
  task.trials = o.trials;
  task.seed = o.seed;
  if (o.samples_per_class > 0) task.samples_per_class = o.samples_per_class;
  return task;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> methods;
  for (const std::string& name : names) {
    methods.push_back(method_from_name(name));
  }
  return methods;
}

void write_reports(const std::vector<EvalReport>& reports,
                   const CommonOpts& o) {
  if (o.out.empty()) {
    for (const EvalReport& r : reports) {
      std::printf("%s->%s  %-14s t=%.3f gamma=%.3f mu=%.3f  acc=%.4f +/- %.4f\n",
                  r.task.source_name.c_str(), r.task.target_name.c_str(),
                  method_name(r.method).c_str(), r.params.t, r.params.gamma,
                  r.params.mu, r.mean_accuracy, r.std_accuracy);
    }
    return;
  }
  if (o.format == "csv") {
    emit_report_csv(reports, o.out);
  } else {
    emit_report_json(reports, o.out);
  }
  std::printf("wrote %zu report(s) to %s\n", reports.size(), o.out.c_str());
}

int run_adapt(const CommonOpts& o) {
  DomainDataset source =
      load_features_csv(resolve_path(o.source, o.data_root));
  DomainDataset target =
      load_features_csv(resolve_path(o.target, o.data_root));
  if (!target.labels) {
    throw DataError("adapt needs target labels to report accuracy");
  }
  Method method = parse_methods(o.methods).front();

  Eigen::MatrixXd joint(source.num_samples() + target.num_samples(),
                        source.dim());
  joint.topRows(source.num_samples()) = source.features;
  joint.bottomRows(target.num_samples()) = target.features;
  Standardizer st = fit_standardizer(joint);
  DomainDataset src_std = apply_standardizer(st, source);
  Eigen::MatrixXd tgt_feats = apply_standardizer(st, target.features);

  AdaptationModel model = fit_adaptation(method, src_std, tgt_feats, o.params,
                                         o.subspace_dim);
  ClassifierModel clf = train(classifier_from_name(o.classifier),
                              adapt_features(model, src_std.features),
                              src_std.labels_or_throw());
  const double acc = accuracy(predict(clf, map_target_features(model, tgt_feats)),
                              target.labels_or_throw());
  std::printf("%s  %s->%s  accuracy=%.4f\n", method_name(method).c_str(),
              source.domain_name.c_str(), target.domain_name.c_str(), acc);
  return 0;
}

int run_protocol_cmd(const CommonOpts& o) {
  DomainDataset source =
      load_features_csv(resolve_path(o.source, o.data_root));
  DomainDataset target =
      load_features_csv(resolve_path(o.target, o.data_root));
  ProtocolOptions options;
  options.classifier = classifier_from_name(o.classifier);
  options.subspace_dim = o.subspace_dim;
  std::vector<EvalReport> reports =
      run_protocol(source, target, make_task(o), parse_methods(o.methods),
                   {o.params}, options);
  write_reports(reports, o);
  return 0;
}

int run_sweep(CommonOpts& o, const std::vector<double>& ts,
              const std::vector<double>& gammas,
              const std::vector<double>& mus,
              const std::string& reference) {
  DomainDataset source =
      load_features_csv(resolve_path(o.source, o.data_root));
  DomainDataset target =
      load_features_csv(resolve_path(o.target, o.data_root));
  std::vector<HyperParams> grid;
  const std::vector<double> t_vals = ts.empty() ? std::vector<double>{o.params.t} : ts;
  const std::vector<double> g_vals =
      gammas.empty() ? std::vector<double>{o.params.gamma} : gammas;
  const std::vector<double> m_vals =
      mus.empty() ? std::vector<double>{o.params.mu} : mus;
  for (double t : t_vals) {
    for (double g : g_vals) {
      for (double m : m_vals) {
        HyperParams p = o.params;
        p.t = t;
        p.gamma = g;
        p.mu = m;
        grid.push_back(p);
      }
    }
  }
  ProtocolOptions options;
  options.classifier = classifier_from_name(o.classifier);
  options.subspace_dim = o.subspace_dim;
  std::vector<EvalReport> reports =
      run_protocol(source, target, make_task(o), parse_methods(o.methods),
                   grid, options);
  write_reports(reports, o);
  std::cout << format_sweep_table(
      sweep_summary(reports, method_from_name(reference)),
      method_from_name(reference));
  return 0;
}

int run_synth(const SyntheticShiftSpec& spec, double shift0,
              const std::string& out_source, const std::string& out_target) {
  SyntheticShiftSpec full = spec;
  if (shift0 != 0.0) {
    full.mean_shift = Eigen::VectorXd::Zero(spec.dim);
    full.mean_shift(0) = shift0;
  }
  auto [source, target] = generate_synthetic_shift(full);
  save_features_csv(out_source, source);
  save_features_csv(out_target, target);
  std::printf("wrote %s (%ldx%ld) and %s (%ldx%ld)\n", out_source.c_str(),
              static_cast<long>(source.num_samples()),
              static_cast<long>(source.dim()), out_target.c_str(),
              static_cast<long>(target.num_samples()),
              static_cast<long>(target.dim()));
  return 0;
}

int run_report(const std::vector<std::string>& inputs,
               const std::string& reference, const CommonOpts& o) {
  std::vector<EvalReport> reports;
  for (const std::string& path : inputs) {
    std::vector<EvalReport> chunk = load_reports_json(path);
    reports.insert(reports.end(), chunk.begin(), chunk.end());
  }
  if (!o.out.empty()) {
    write_reports(reports, o);
  }
  std::cout << format_sweep_table(
      sweep_summary(reports, method_from_name(reference)),
      method_from_name(reference));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain adaptation via geometric means on the SPD manifold"};
  app.require_subcommand(1);

  CommonOpts adapt_opts, proto_opts, sweep_opts, report_opts;
  std::vector<double> sweep_t, sweep_gamma, sweep_mu;
  std::string sweep_ref = "CORAL";
  std::string report_ref = "CORAL";
  std::vector<std::string> report_inputs;

  CLI::App* adapt = app.add_subcommand(
      "adapt", "Single adaptation run on full data; prints accuracy");
  add_task_flags(adapt, adapt_opts);
  add_hyper_flags(adapt, adapt_opts);
  adapt_opts.classifier = "ncm";
  adapt->add_option("--method", adapt_opts.methods,
                    "Adaptation method (NA, CORAL, SA, B-S, B-T, GCA1, GCA2, "
                    "GCA3, Cascaded-GCA2, Cascaded-GCA3)");

  CLI::App* protocol = app.add_subcommand(
      "protocol", "Randomized-trial evaluation protocol for one task");
  add_task_flags(protocol, proto_opts);
  add_hyper_flags(protocol, proto_opts);
  protocol->add_option("--method", proto_opts.methods,
                       "Methods to evaluate (repeatable)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Hyperparameter grid sweep over t/gamma/mu");
  add_task_flags(sweep, sweep_opts);
  add_hyper_flags(sweep, sweep_opts);
  sweep->add_option("--method", sweep_opts.methods,
                    "Methods to evaluate (repeatable)");
  sweep->add_option("--t-grid", sweep_t, "t values to sweep");
  sweep->add_option("--gamma-grid", sweep_gamma, "gamma values to sweep");
  sweep->add_option("--mu-grid", sweep_mu, "mu values to sweep");
  sweep->add_option("--reference", sweep_ref,
                    "Reference method for the improvement column");

  SyntheticShiftSpec spec;
  double shift0 = 0.0;
  std::string synth_source = "synthetic_source.csv";
  std::string synth_target = "synthetic_target.csv";
  CLI::App* synth =
      app.add_subcommand("synth", "Generate synthetic shifted domains to CSV");
  synth->add_option("--dim", spec.dim, "Feature dimension");
  synth->add_option("--classes", spec.num_classes, "Number of classes");
  synth->add_option("--n-source", spec.n_source, "Source samples");
  synth->add_option("--n-target", spec.n_target, "Target samples");
  synth->add_option("--rotation", spec.covariance_rotation_angle,
                    "Target covariance rotation (radians)");
  synth->add_option("--shift", shift0, "Target mean shift along axis 0");
  synth->add_option("--noise", spec.noise_scale, "Class noise scale");
  synth->add_option("--spacing", spec.class_spacing, "Class mean spacing");
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("--out-source", synth_source, "Source CSV path");
  synth->add_option("--out-target", synth_target, "Target CSV path");

  CLI::App* report = app.add_subcommand(
      "report", "Re-aggregate saved per-trial JSON reports");
  report->add_option("input", report_inputs, "JSON report files")
      ->required()
      ->expected(-1);
  report->add_option("--reference", report_ref,
                     "Reference method for the improvement column");
  report->add_option("--out", report_opts.out, "Re-emitted report path");
  report->add_option("--format", report_opts.format,
                     "Re-emitted report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*adapt) return run_adapt(adapt_opts);
    if (*protocol) return run_protocol_cmd(proto_opts);
    if (*sweep) {
      return run_sweep(sweep_opts, sweep_t, sweep_gamma, sweep_mu, sweep_ref);
    }
    if (*synth) return run_synth(spec, shift0, synth_source, synth_target);
    if (*report) return run_report(report_inputs, report_ref, report_opts);
  } catch (const gca::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gca::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const gca::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
