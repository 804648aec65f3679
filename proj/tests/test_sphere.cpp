#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "ski/rng.hpp"
#include "ski/sphere.hpp"
#include "test_helpers.hpp"

using ski::PointSet;

namespace {

PointSet from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return PointSet(m);
}

}  // namespace

TEST_CASE("derived rng streams are stable and distinct") {
  ski::Rng a = ski::Rng::derive(7, 1, 2, 3);
  ski::Rng b = ski::Rng::derive(7, 1, 2, 3);
  ski::Rng c = ski::Rng::derive(7, 1, 2, 4);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  CHECK(ski::Rng::derive(7, 1, 2, 3).next_u64() != c.next_u64());
}

TEST_CASE("rng uniform stays in [0,1) and index stays in range") {
  ski::Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.index(17) < 17);
  }
}

TEST_CASE("rng normal has near-standard moments") {
  ski::Rng rng(4);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = rng.normal();
    s += v;
    s2 += v * v;
  }
  CHECK(std::fabs(s / n) < 0.01);
  CHECK(std::fabs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("rng shuffle permutes without loss") {
  ski::Rng rng(5);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  rng.shuffle(v);
  std::set<int> seen(v.begin(), v.end());
  CHECK(seen.size() == 10);
}

TEST_CASE("geodesic distance on axis-aligned pairs") {
  Eigen::VectorXd x(3), y(3), z(3);
  x << 1, 0, 0;
  y << -1, 0, 0;
  z << 0, 1, 0;
  CHECK(ski::geodesic_dist(x, x) == doctest::Approx(0.0));
  CHECK(ski::geodesic_dist(x, y) == doctest::Approx(M_PI));
  CHECK(ski::geodesic_dist(x, z) == doctest::Approx(M_PI / 2));
}

TEST_CASE("geodesic distance is a metric on random triples") {
  ski::Rng rng(11);
  PointSet pts = ski::uniform_sample(2, 3000, 12);
  const Eigen::MatrixXd& m = pts.mat();
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd a = m.row(static_cast<Eigen::Index>(rng.index(3000)));
    Eigen::VectorXd b = m.row(static_cast<Eigen::Index>(rng.index(3000)));
    Eigen::VectorXd c = m.row(static_cast<Eigen::Index>(rng.index(3000)));
    double ab = ski::geodesic_dist(a, b);
    CHECK(ab == ski::geodesic_dist(b, a));
    CHECK(ab <= ski::geodesic_dist(a, c) + ski::geodesic_dist(c, b) + 1e-12);
  }
}

TEST_CASE("separation radius of three equally spaced equator points") {
  const double g = 2.0 * M_PI / 3.0;
  PointSet pts = from_rows({{1, 0, 0},
                            {std::cos(g), std::sin(g), 0},
                            {std::cos(2 * g), std::sin(2 * g), 0}});
  CHECK(ski::separation_radius(pts) == doctest::Approx(M_PI / 3).epsilon(1e-12));
  CHECK(oracle::separation(pts) == doctest::Approx(M_PI / 3).epsilon(1e-12));
}

TEST_CASE("separation radius handles duplicates and small sets") {
  PointSet two = from_rows({{0, 0, 1}, {0, 1, 0}});
  CHECK(ski::separation_radius(two) == doctest::Approx(M_PI / 4));
  PointSet dup = from_rows({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(ski::separation_radius(dup) == doctest::Approx(0.0));
  PointSet one = from_rows({{1, 0, 0}});
  CHECK_THROWS(ski::separation_radius(one));
}

TEST_CASE("separation radius never increases when a point is added") {
  ski::Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    PointSet base = ski::uniform_sample(2, 30, 100 + t);
    PointSet extra = ski::uniform_sample(2, 1, 900 + t);
    CHECK(ski::separation_radius(base.concat(extra)) <=
          ski::separation_radius(base) + 1e-15);
  }
}

TEST_CASE("mesh norm estimate matches brute force and known poles case") {
  PointSet poles = from_rows({{0, 0, 1}, {0, 0, -1}});
  PointSet cand = ski::spiral_points(10000);
  double h = ski::mesh_norm_estimate(poles, cand);
  CHECK(h == doctest::Approx(M_PI / 2).epsilon(0.05));
  CHECK(h == doctest::Approx(oracle::mesh_norm(poles, cand)).epsilon(1e-14));

  PointSet north = from_rows({{0, 0, 1}});
  PointSet south = from_rows({{0, 0, -1}});
  CHECK(ski::mesh_norm_estimate(north, south) == doctest::Approx(M_PI));
  CHECK(ski::mesh_norm_estimate(poles, poles) == doctest::Approx(0.0));
}

TEST_CASE("mesh norm estimate grows with more candidates") {
  PointSet pts = ski::uniform_sample(2, 40, 31);
  PointSet few = ski::spiral_points(100);
  PointSet many = few.concat(ski::spiral_points(400));
  CHECK(ski::mesh_norm_estimate(pts, few) <=
        ski::mesh_norm_estimate(pts, many) + 1e-15);
}

TEST_CASE("quality metrics of antipodal pair and loaded design") {
  PointSet poles = from_rows({{0, 0, 1}, {0, 0, -1}});
  ski::QualityMetrics q = ski::quality_metrics(poles, ski::spiral_points(20000));
  CHECK(q.separation == doctest::Approx(M_PI / 2));
  CHECK(q.mesh_norm == doctest::Approx(M_PI / 2).epsilon(0.03));
  CHECK(q.mesh_ratio == doctest::Approx(1.0).epsilon(0.03));

  PointSet design =
      ski::load_design(design_dir() + "/design_s2_t025_n00328.txt");
  ski::QualityMetrics dq = ski::quality_metrics(design);
  CHECK(dq.count == 328);
  CHECK(dq.mesh_ratio > 1.0);
  CHECK(dq.mesh_ratio < 3.0);
  // regression anchor for the shipped file
  CHECK(dq.separation == doctest::Approx(0.0747208149).epsilon(1e-6));
}

TEST_CASE("spiral points follow the arccos parametrization") {
  PointSet one = ski::spiral_points(1);
  CHECK(one.mat()(0, 2) == doctest::Approx(std::cos(M_PI / 2)));

  PointSet big = ski::spiral_points(10000);
  // first point: polar angle arccos(1 - 1/10000)
  CHECK(big.mat()(0, 2) == doctest::Approx(1.0 - 1.0 / 10000).epsilon(1e-12));
  for (Eigen::Index i = 0; i < big.mat().rows(); i += 997)
    CHECK(big.mat().row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform samples are unit norm, reproducible, and centered") {
  PointSet a = ski::uniform_sample(50, 1000, 77);
  PointSet b = ski::uniform_sample(50, 1000, 77);
  CHECK(a.mat() == b.mat());
  for (Eigen::Index i = 0; i < a.mat().rows(); i += 111)
    CHECK(a.mat().row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));

  const int n = 100000;
  PointSet s = ski::uniform_sample(2, n, 3);
  Eigen::VectorXd mean = s.mat().colwise().mean();
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(mean[k]) < 5.0 / std::sqrt(n));
}

TEST_CASE("z rotations match their closed forms") {
  Eigen::Matrix3d id = ski::rotation_z(0);
  CHECK((id - Eigen::Matrix3d::Identity()).norm() == doctest::Approx(0.0));

  Eigen::Vector3d v(0.3, -0.4, 0.866);
  Eigen::Vector3d half_turn = ski::rotation_z(10) * v;
  CHECK(half_turn.x() == doctest::Approx(-v.x()).epsilon(1e-14));
  CHECK(half_turn.y() == doctest::Approx(-v.y()).epsilon(1e-14));
  CHECK(half_turn.z() == doctest::Approx(v.z()));

  Eigen::Vector3d quarter = ski::rotation_z(5) * v;
  CHECK(quarter.x() == doctest::Approx(-v.y()));
  CHECK(quarter.y() == doctest::Approx(v.x()));

  for (int k : {1, 3, 9, 17}) {
    Eigen::Matrix3d r = ski::rotation_z(k);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-14);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("point set files load, renormalize, and reject bad input") {
  const std::string path = "/tmp/ski_test_points.txt";
  {
    std::ofstream out(path);
    out << "# two axis points\n1 0 0\n\n0 1.0000000001 0\n";
  }
  PointSet pts = ski::load_design(path);
  CHECK(pts.size() == 2);
  CHECK(pts.mat().row(1).norm() == doctest::Approx(1.0).epsilon(1e-15));

  {
    std::ofstream out(path);
    out << "";
  }
  CHECK_THROWS(ski::load_design(path));

  {
    std::ofstream out(path);
    out << "1 0 0\n0 1\n";  // inconsistent width
  }
  CHECK_THROWS(ski::load_design(path));

  {
    std::ofstream out(path);
    out << "1 0 0\n0 2 0\n";  // far from unit norm
  }
  CHECK_THROWS_WITH_AS(ski::load_design(path),
                       doctest::Contains("line 2"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("subset and concat keep rows in order") {
  PointSet pts = ski::uniform_sample(2, 6, 55);
  PointSet sub = pts.subset({4, 1});
  CHECK(sub.size() == 2);
  CHECK(sub.mat().row(0) == pts.mat().row(4));
  CHECK(sub.mat().row(1) == pts.mat().row(1));
  PointSet cat = sub.concat(pts.subset({0}));
  CHECK(cat.size() == 3);
  CHECK(cat.mat().row(2) == pts.mat().row(0));
}
