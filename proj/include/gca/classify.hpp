#pragma once

#include <Eigen/Dense>

#include "gca/dataset.hpp"

namespace gca {

inline constexpr double kStdFloor = 1e-12;

/// Per-dimension zero-mean unit-std scaling, population convention
/// (divide by n); degenerate dimensions floored at kStdFloor.
struct Standardizer {
  Eigen::RowVectorXd means;
  Eigen::RowVectorXd stds;
};

Standardizer fit_standardizer(const Eigen::MatrixXd& features);
Eigen::MatrixXd apply_standardizer(const Standardizer& s,
                                   const Eigen::MatrixXd& features);
DomainDataset apply_standardizer(const Standardizer& s,
                                 const DomainDataset& data);

enum class ClassifierKind { kNearestClassMean, kLinearOneVsRest };

ClassifierKind classifier_from_name(const std::string& name);
std::string classifier_name(ClassifierKind kind);

/// Nearest-class-mean centroids or per-class ridge scorers; ties break
/// to the lowest class index.
struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::kNearestClassMean;
  int num_classes = 0;
  Eigen::MatrixXd centroids;  // num_classes x dim (nearest-class-mean)
  Eigen::MatrixXd weights;    // num_classes x dim (one-vs-rest)
  Eigen::VectorXd bias;       // num_classes
};

ClassifierModel train(ClassifierKind kind, const Eigen::MatrixXd& features,
                      const Eigen::VectorXi& labels, double reg = 1e-3);

Eigen::VectorXi predict(const ClassifierModel& model,
                        const Eigen::MatrixXd& features);

double accuracy(const Eigen::VectorXi& predicted,
                const Eigen::VectorXi& truth);

}  // namespace gca
