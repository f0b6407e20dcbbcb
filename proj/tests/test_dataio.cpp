#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gca/covariance.hpp"
#include "gca/dataio.hpp"
#include "test_util.hpp"

using namespace gca;
using namespace gca::test;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) const {
    std::ofstream out(path);
    out << text;
  }
};

}  // namespace

TEST_CASE("load_features_csv parses a labeled file") {
  TempFile f("gca_io_basic.csv");
  f.write("f0,f1,f2,label\n1.5,-2,0.25,0\n0,1e3,3,1\n");
  DomainDataset data = load_features_csv(f.path);
  REQUIRE(data.num_samples() == 2);
  REQUIRE(data.dim() == 3);
  CHECK(data.features(0, 0) == 1.5);
  CHECK(data.features(0, 1) == -2.0);
  CHECK(data.features(1, 1) == 1000.0);
  REQUIRE(data.labels.has_value());
  CHECK((*data.labels)(0) == 0);
  CHECK((*data.labels)(1) == 1);
}

TEST_CASE("label column may sit anywhere and may be absent") {
  TempFile f("gca_io_order.csv");
  f.write("label,a,b\n2,1,2\n0,3,4\n");
  DomainDataset data = load_features_csv(f.path);
  CHECK(data.dim() == 2);
  CHECK((*data.labels)(0) == 2);
  CHECK(data.features(1, 0) == 3.0);

  TempFile g("gca_io_unlabeled.csv");
  g.write("a,b\n1,2\n3,4\n");
  DomainDataset unl = load_features_csv(g.path);
  CHECK_FALSE(unl.labels.has_value());
  CHECK(unl.dim() == 2);
}

TEST_CASE("malformed input names the offending location") {
  TempFile nan_file("gca_io_nan.csv");
  nan_file.write("a,b,label\n1,nan,0\n2,3,1\n");
  try {
    load_features_csv(nan_file.path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);  // data line 2 of the file
    CHECK(msg.find("b") != std::string::npos);
  }

  TempFile ragged("gca_io_ragged.csv");
  ragged.write("a,b,label\n1,2,0\n1,0\n");
  CHECK_THROWS_AS(load_features_csv(ragged.path), DataError);

  TempFile junk("gca_io_junk.csv");
  junk.write("a,b,label\n1,zzz,0\n2,3,1\n");
  CHECK_THROWS_AS(load_features_csv(junk.path), DataError);

  CHECK_THROWS_AS(load_features_csv("/nonexistent/gca_io_missing.csv"),
                  DataError);

  TempFile one("gca_io_one_row.csv");
  one.write("a,label\n1,0\n");
  CHECK_THROWS_AS(load_features_csv(one.path), DataError);
}

TEST_CASE("save then load round-trips exactly") {
  Rng rng(191);
  Eigen::MatrixXd feats = random_gaussian(rng, 17, 5);
  feats(0, 0) = 1.0 / 3.0;
  feats(3, 2) = 1e-17;
  Eigen::VectorXi labels(17);
  for (int i = 0; i < 17; ++i) labels(i) = i % 3;
  DomainDataset data(feats, labels, "roundtrip");

  TempFile f("gca_io_roundtrip.csv");
  save_features_csv(f.path, data);
  DomainDataset back = load_features_csv(f.path);
  REQUIRE(back.num_samples() == 17);
  REQUIRE(back.dim() == 5);
  CHECK((back.features - feats).cwiseAbs().maxCoeff() == 0.0);
  CHECK(*back.labels == labels);
}

TEST_CASE("synthetic generator is deterministic and shape-correct") {
  SyntheticShiftSpec spec;
  spec.seed = 42;
  spec.covariance_rotation_angle = 0.7;
  spec.mean_shift = Eigen::VectorXd::Constant(1, 2.0);
  auto [s1, t1] = generate_synthetic_shift(spec);
  auto [s2, t2] = generate_synthetic_shift(spec);
  CHECK(s1.features == s2.features);
  CHECK(t1.features == t2.features);
  CHECK(*s1.labels == *s2.labels);
  CHECK(*t1.labels == *t2.labels);

  CHECK(s1.num_samples() == 200);
  CHECK(t1.num_samples() == 200);
  CHECK(s1.dim() == 10);
  CHECK(s1.labels->minCoeff() == 0);
  CHECK(s1.labels->maxCoeff() == 2);
  // balanced classes
  for (int c = 0; c < 3; ++c) {
    int count = 0;
    for (int i = 0; i < 200; ++i) count += (*s1.labels)(i) == c;
    CHECK(count >= 66);
  }

  SyntheticShiftSpec other = spec;
  other.seed = 43;
  auto [s3, t3] = generate_synthetic_shift(other);
  CHECK(s1.features != s3.features);
}

TEST_CASE("zero shift and zero rotation leave domains distribution-equal") {
  SyntheticShiftSpec spec;
  spec.seed = 7;
  spec.n_source = 2000;
  spec.n_target = 2000;
  auto [src, tgt] = generate_synthetic_shift(spec);
  // Different draws, same distribution: means and covariances agree to
  // sampling error.
  Eigen::RowVectorXd gap =
      src.features.colwise().mean() - tgt.features.colwise().mean();
  CHECK(gap.cwiseAbs().maxCoeff() < 0.2);
  Eigen::MatrixXd cs = empirical_covariance(src.features).matrix();
  Eigen::MatrixXd ct = empirical_covariance(tgt.features).matrix();
  CHECK(rel_error(cs, ct) < 0.15);
}

TEST_CASE("rotation angle moves mass into the second coordinate") {
  SyntheticShiftSpec spec;
  spec.seed = 11;
  spec.covariance_rotation_angle = 1.5707963267948966;  // 90 degrees
  auto [src, tgt] = generate_synthetic_shift(spec);
  // class means lie along axis 0 in the source, axis 1 in the target
  const double src_spread0 = empirical_covariance(src.features).matrix()(0, 0);
  const double src_spread1 = empirical_covariance(src.features).matrix()(1, 1);
  const double tgt_spread0 = empirical_covariance(tgt.features).matrix()(0, 0);
  const double tgt_spread1 = empirical_covariance(tgt.features).matrix()(1, 1);
  CHECK(src_spread0 > 3.0 * src_spread1);
  CHECK(tgt_spread1 > 3.0 * tgt_spread0);
}
