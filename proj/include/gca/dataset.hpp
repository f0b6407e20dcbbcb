#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "gca/errors.hpp"

namespace gca {

/// Feature matrix (samples x dimensions) with optional integer labels.
struct DomainDataset {
  Eigen::MatrixXd features;
  std::optional<Eigen::VectorXi> labels;
  std::string domain_name;

  DomainDataset() = default;
  DomainDataset(Eigen::MatrixXd feats, std::optional<Eigen::VectorXi> labs = {},
                std::string name = {});

  Eigen::Index num_samples() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }

  /// Number of classes implied by the labels (max label + 1).
  int num_classes() const;

  /// Throws if labels are absent.
  const Eigen::VectorXi& labels_or_throw() const;
};

}  // namespace gca
