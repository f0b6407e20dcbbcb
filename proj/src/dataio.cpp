#include "gca/dataio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gca/rng.hpp"

namespace gca {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& field, int line_no, size_t col,
                    const std::string& col_name) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    std::ostringstream os;
    os << "line " << line_no << ", column " << col + 1 << " ('" << col_name
       << "'): cannot parse '" << field << "' as a number";
    throw DataError(os.str());
  }
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "line " << line_no << ", column " << col + 1 << " ('" << col_name
       << "'): non-finite value '" << field << "'";
    throw DataError(os.str());
  }
  return value;
}

}  // namespace

DomainDataset load_features_csv(const std::string& path,
                                const std::string& label_column) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(path + ": empty file, expected a header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  std::ptrdiff_t label_col = -1;
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j] == label_column) {
      label_col = static_cast<std::ptrdiff_t>(j);
      break;
    }
  }
  const size_t num_cols = header.size();
  const size_t feat_cols = label_col >= 0 ? num_cols - 1 : num_cols;
  if (feat_cols == 0) {
    throw DataError(path + ": no feature columns");
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != num_cols) {
      std::ostringstream os;
      os << path << ": line " << line_no << " has " << fields.size()
         << " fields, expected " << num_cols;
      throw DataError(os.str());
    }
    std::vector<double> row;
    row.reserve(feat_cols);
    for (size_t j = 0; j < num_cols; ++j) {
      const double v = parse_double(fields[j], line_no, j, header[j]);
      if (static_cast<std::ptrdiff_t>(j) == label_col) {
        const int lab = static_cast<int>(std::lround(v));
        if (std::abs(v - lab) > 1e-9 || lab < 0) {
          std::ostringstream os;
          os << path << ": line " << line_no
             << ": label must be a nonnegative integer, got " << fields[j];
          throw DataError(os.str());
        }
        labels.push_back(lab);
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) {
    throw DataError(path + ": need at least 2 data rows");
  }

  Eigen::MatrixXd features(rows.size(), feat_cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < feat_cols; ++j) {
      features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  std::optional<Eigen::VectorXi> label_vec;
  if (label_col >= 0) {
    label_vec = Eigen::VectorXi(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
      (*label_vec)(static_cast<Eigen::Index>(i)) = labels[i];
    }
  }
  return DomainDataset(std::move(features), std::move(label_vec),
                       std::filesystem::path(path).stem().string());
}

void save_features_csv(const std::string& path, const DomainDataset& data) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write file: " + path);
  }
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    if (j) out << ',';
    out << 'f' << j;
  }
  if (data.labels) out << ",label";
  out << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < data.num_samples(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", data.features(i, j));
      out << buf;
    }
    if (data.labels) out << ',' << (*data.labels)(i);
    out << '\n';
  }
}

std::pair<DomainDataset, DomainDataset> generate_synthetic_shift(
    const SyntheticShiftSpec& spec) {
  if (spec.dim < 2) throw ContractError("synthetic dim must be >= 2");
  if (spec.num_classes < 2) throw ContractError("need at least 2 classes");
  if (spec.n_source < 2 || spec.n_target < 2) {
    throw ContractError("need at least 2 samples per domain");
  }
  if (!(spec.noise_scale > 0.0)) {
    throw ContractError("noise_scale must be positive");
  }
  if (!(spec.class_spacing > 0.0)) {
    throw ContractError("class_spacing must be positive");
  }

  Eigen::MatrixXd means =
      Eigen::MatrixXd::Zero(spec.num_classes, spec.dim);
  for (int c = 0; c < spec.num_classes; ++c) {
    means(c, 0) = (c - (spec.num_classes - 1) / 2.0) * spec.class_spacing;
  }
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(spec.dim, spec.dim);
  rot(0, 0) = std::cos(spec.covariance_rotation_angle);
  rot(0, 1) = -std::sin(spec.covariance_rotation_angle);
  rot(1, 0) = std::sin(spec.covariance_rotation_angle);
  rot(1, 1) = std::cos(spec.covariance_rotation_angle);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(spec.dim);
  for (Eigen::Index j = 0;
       j < std::min<Eigen::Index>(spec.mean_shift.size(), spec.dim); ++j) {
    shift(j) = spec.mean_shift(j);
  }

  auto sample_domain = [&](int n, Rng& rng, bool is_target) {
    Eigen::MatrixXd feats(n, spec.dim);
    Eigen::VectorXi labels(n);
    for (int i = 0; i < n; ++i) {
      const int c = i % spec.num_classes;  // balanced classes
      labels(i) = c;
      Eigen::VectorXd x = means.row(c).transpose();
      for (int j = 0; j < spec.dim; ++j) {
        x(j) += spec.noise_scale * rng.normal();
      }
      if (is_target) {
        x = rot * x + shift;
      }
      feats.row(i) = x.transpose();
    }
    return std::make_pair(std::move(feats), std::move(labels));
  };

  Rng source_rng(split_seed(spec.seed, 0));
  Rng target_rng(split_seed(spec.seed, 1));
  auto [sf, sl] = sample_domain(spec.n_source, source_rng, false);
  auto [tf, tl] = sample_domain(spec.n_target, target_rng, true);
  return {DomainDataset(std::move(sf), std::move(sl), "synthetic-source"),
          DomainDataset(std::move(tf), std::move(tl), "synthetic-target")};
}

}  // namespace gca
