#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "gca/dataset.hpp"

namespace gca {

/// CSV with a required header row; the column named `label_column`
/// (default "label") carries integer class labels, every other column is
/// a feature in order.
DomainDataset load_features_csv(const std::string& path,
                                const std::string& label_column = "label");

/// Writes f0..f{d-1}(,label) with round-trip-exact decimal formatting.
void save_features_csv(const std::string& path, const DomainDataset& data);

/// Desk-scale verification data: Gaussian class blobs, with the target
/// cloud rotated in the first two coordinates and shifted.
struct SyntheticShiftSpec {
  int dim = 10;
  int num_classes = 3;
  int n_source = 200;
  int n_target = 200;
  Eigen::VectorXd mean_shift;              // zero-padded/truncated to dim
  double covariance_rotation_angle = 0.0;  // radians, coords (0,1) plane
  double noise_scale = 1.0;
  double class_spacing = 4.0;  // collinear class means along axis 0
  std::uint64_t seed = 0;
};

std::pair<DomainDataset, DomainDataset> generate_synthetic_shift(
    const SyntheticShiftSpec& spec);

}  // namespace gca
