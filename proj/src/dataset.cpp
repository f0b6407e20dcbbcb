#include "gca/dataset.hpp"

#include <sstream>
#include <utility>

namespace gca {

DomainDataset::DomainDataset(Eigen::MatrixXd feats,
                             std::optional<Eigen::VectorXi> labs,
                             std::string name)
    : features(std::move(feats)), labels(std::move(labs)),
      domain_name(std::move(name)) {
  if (features.rows() < 2 || features.cols() < 1) {
    std::ostringstream os;
    os << "dataset '" << domain_name << "' needs at least 2 samples and 1 "
       << "dimension, got " << features.rows() << "x" << features.cols();
    throw ContractError(os.str());
  }
  if (!features.allFinite()) {
    std::ostringstream os;
    os << "dataset '" << domain_name << "' contains non-finite entries";
    throw ContractError(os.str());
  }
  if (labels) {
    if (labels->size() != features.rows()) {
      std::ostringstream os;
      os << "dataset '" << domain_name << "': " << labels->size()
         << " labels for " << features.rows() << " samples";
      throw ContractError(os.str());
    }
    if (labels->minCoeff() < 0) {
      throw ContractError("dataset '" + domain_name + "' has negative labels");
    }
  }
}

int DomainDataset::num_classes() const {
  return labels_or_throw().maxCoeff() + 1;
}

const Eigen::VectorXi& DomainDataset::labels_or_throw() const {
  if (!labels) {
    throw ContractError("dataset '" + domain_name + "' has no labels");
  }
  return *labels;
}

}  // namespace gca
