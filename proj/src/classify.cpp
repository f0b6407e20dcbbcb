#include "gca/classify.hpp"

#include <sstream>

namespace gca {

Standardizer fit_standardizer(const Eigen::MatrixXd& features) {
  if (features.rows() < 1) {
    throw ContractError("cannot fit a standardizer on an empty matrix");
  }
  Standardizer s;
  s.means = features.colwise().mean();
  Eigen::MatrixXd centered = features.rowwise() - s.means;
  s.stds = (centered.array().square().colwise().mean()).sqrt().max(kStdFloor);
  return s;
}

Eigen::MatrixXd apply_standardizer(const Standardizer& s,
                                   const Eigen::MatrixXd& features) {
  if (features.cols() != s.means.cols()) {
    throw ContractError("standardizer dimension does not match data");
  }
  return (features.rowwise() - s.means).array().rowwise() / s.stds.array();
}

DomainDataset apply_standardizer(const Standardizer& s,
                                 const DomainDataset& data) {
  return DomainDataset(apply_standardizer(s, data.features), data.labels,
                       data.domain_name);
}

ClassifierKind classifier_from_name(const std::string& name) {
  if (name == "ncm" || name == "nearest-class-mean") {
    return ClassifierKind::kNearestClassMean;
  }
  if (name == "ridge" || name == "linear-one-vs-rest") {
    return ClassifierKind::kLinearOneVsRest;
  }
  throw ContractError("unknown classifier: " + name +
                      " (expected 'ncm' or 'ridge')");
}

std::string classifier_name(ClassifierKind kind) {
  return kind == ClassifierKind::kNearestClassMean ? "ncm" : "ridge";
}

ClassifierModel train(ClassifierKind kind, const Eigen::MatrixXd& features,
                      const Eigen::VectorXi& labels, double reg) {
  if (features.rows() != labels.size()) {
    throw ContractError("feature/label count mismatch");
  }
  if (reg < 0.0) {
    throw ContractError("ridge regularization must be nonnegative");
  }
  const int num_classes = labels.maxCoeff() + 1;
  if (labels.minCoeff() < 0 || num_classes < 2) {
    throw ContractError("labels must cover at least classes 0 and 1");
  }
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(num_classes);
  for (Eigen::Index i = 0; i < labels.size(); ++i) counts(labels(i))++;
  for (int c = 0; c < num_classes; ++c) {
    if (counts(c) == 0) {
      std::ostringstream os;
      os << "class " << c << " has no training samples";
      throw ContractError(os.str());
    }
  }

  ClassifierModel model;
  model.kind = kind;
  model.num_classes = num_classes;
  const Eigen::Index dim = features.cols();

  if (kind == ClassifierKind::kNearestClassMean) {
    model.centroids = Eigen::MatrixXd::Zero(num_classes, dim);
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      model.centroids.row(labels(i)) += features.row(i);
    }
    for (int c = 0; c < num_classes; ++c) {
      model.centroids.row(c) /= counts(c);
    }
    return model;
  }

  // Ridge one-vs-rest with a bias column, one closed-form solve shared
  // across classes.
  Eigen::MatrixXd z(features.rows(), dim + 1);
  z.leftCols(dim) = features;
  z.col(dim).setOnes();
  Eigen::MatrixXd gram = z.transpose() * z;
  gram.diagonal().array() += reg;
  Eigen::MatrixXd targets(features.rows(), num_classes);
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    for (int c = 0; c < num_classes; ++c) {
      targets(i, c) = labels(i) == c ? 1.0 : -1.0;
    }
  }
  Eigen::MatrixXd solution = gram.ldlt().solve(z.transpose() * targets);
  model.weights = solution.topRows(dim).transpose();
  model.bias = solution.row(dim).transpose();
  return model;
}

Eigen::VectorXi predict(const ClassifierModel& model,
                        const Eigen::MatrixXd& features) {
  Eigen::MatrixXd scores;
  if (model.kind == ClassifierKind::kNearestClassMean) {
    if (features.cols() != model.centroids.cols()) {
      throw ContractError("prediction dimension does not match classifier");
    }
    scores.resize(features.rows(), model.num_classes);
    for (int c = 0; c < model.num_classes; ++c) {
      scores.col(c) =
          -(features.rowwise() - model.centroids.row(c)).rowwise().squaredNorm();
    }
  } else {
    if (features.cols() != model.weights.cols()) {
      throw ContractError("prediction dimension does not match classifier");
    }
    scores = features * model.weights.transpose();
    scores.rowwise() += model.bias.transpose();
  }
  Eigen::VectorXi out(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    int best = 0;
    for (int c = 1; c < model.num_classes; ++c) {
      if (scores(i, c) > scores(i, best)) best = c;  // ties keep lowest index
    }
    out(i) = best;
  }
  return out;
}

double accuracy(const Eigen::VectorXi& predicted, const Eigen::VectorXi& truth) {
  if (predicted.size() != truth.size() || predicted.size() == 0) {
    throw ContractError("accuracy needs equally sized, non-empty vectors");
  }
  return static_cast<double>((predicted.array() == truth.array()).count()) /
         static_cast<double>(truth.size());
}

}  // namespace gca
