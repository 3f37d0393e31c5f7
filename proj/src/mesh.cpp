#include "bkvg/mesh.hpp"

#include <cmath>
#include <numeric>

#include "bkvg/error.hpp"

namespace bkvg {

void MeshSpec::validate() const {
  if (node_count < 16) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 16 nodes");
  if (!(grading_ratio > 0.0 && grading_ratio <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "grading ratio must lie in (0,1]");
  if (layout == MeshLayout::LogUniform && grading_ratio == 1.0)
    throw Error(ErrorCode::InvalidArgument, "log-uniform mesh needs ratio < 1");
}

std::vector<double> MeshSpec::spacings() const {
  validate();
  if (layout != MeshLayout::GradedSpacing) throw Error(ErrorCode::InvalidArgument, "spacings need a graded mesh");
  const int m = node_count + 1;
  std::vector<double> h(m);
  double w = 1.0;
  for (int k = 0; k < m; ++k) {
    h[k] = w;
    w /= grading_ratio;
  }
  double total = std::accumulate(h.begin(), h.end(), 0.0);
  for (double& x : h) x /= total;
  return h;
}

std::vector<double> MeshSpec::nodes() const {
  validate();
  std::vector<double> x;
  if (layout == MeshLayout::LogUniform) {
    const double lr = std::log(grading_ratio);
    x.resize(node_count);
    for (int j = 0; j < node_count; ++j) x[j] = std::exp(lr * double(node_count - 1 - j));
    return x;
  }
  std::vector<double> h = spacings();
  if (!interior_only) x.push_back(0.0);
  double s = 0.0;
  for (int k = 0; k < node_count; ++k) {
    s += h[k];
    x.push_back(s);
  }
  if (!interior_only) x.push_back(1.0);
  return x;
}

MeshSpec MeshSpec::refined() const {
  MeshSpec m = *this;
  m.grading_ratio = std::sqrt(grading_ratio);
  m.node_count = layout == MeshLayout::LogUniform ? 2 * node_count - 1 : 2 * node_count;
  return m;
}

MeshSpec default_bvp_mesh() {
  MeshSpec m;
  m.node_count = 2000;
  m.grading_ratio = std::exp(-36.0 / 1999.0);
  m.interior_only = false;
  m.layout = MeshLayout::LogUniform;
  return m;
}

MeshSpec default_range_mesh(int node_count) {
  MeshSpec m;
  m.node_count = node_count;
  m.grading_ratio = std::pow(0.995, 1024.0 / node_count);
  return m;
}

}  // namespace bkvg
