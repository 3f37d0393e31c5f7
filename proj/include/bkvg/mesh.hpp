#pragma once

#include <vector>

namespace bkvg {

enum class MeshLayout {
  GradedSpacing,  // spacings h_k proportional to r^{-k}, k = 0 next to x = 0
  LogUniform,     // x_j = r^{n-1-j}: uniform in t = -ln x, truncated at x_min = r^{n-1}
};

struct MeshSpec {
  int node_count = 1024;
  double grading_ratio = 1.0;
  bool interior_only = true;
  MeshLayout layout = MeshLayout::GradedSpacing;

  void validate() const;
  // GradedSpacing: the interior nodes (plus 0 and 1 unless interior_only).
  // LogUniform: all n nodes x_min .. 1.
  std::vector<double> nodes() const;
  // Spacing between consecutive points including the endpoints 0 and 1 (GradedSpacing only).
  std::vector<double> spacings() const;
  // Halves every spacing in the graded profile: n -> 2n, r -> sqrt(r).
  MeshSpec refined() const;
};

MeshSpec default_bvp_mesh();
// Graded mesh used for numerical-range sweeps; ratio 0.995 at 1024 nodes,
// scaled so the grading profile is preserved under refinement.
MeshSpec default_range_mesh(int node_count = 1024);

}  // namespace bkvg
