#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bkvg {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // deterministic; no timings
};

enum class VerifyLevel { Quick, Full };

constexpr std::uint64_t kVerifySeed = 0x5eed2024ULL;
constexpr double kGammaSet[] = {0.5, 1.0, 2.0, 5.0};

CriterionResult check_inner_products(std::uint64_t seed = kVerifySeed);
CriterionResult check_kernels();
CriterionResult check_constants();
CriterionResult check_friedrichs_inverse();
CriterionResult check_accretivity_boundary(std::uint64_t seed = kVerifySeed);
CriterionResult check_closability_boundary();
CriterionResult check_b_matrix_and_order(std::uint64_t seed = kVerifySeed);
CriterionResult check_lower_bound();
CriterionResult check_sector_classification();

// Criteria 1-9; Quick skips 5, 8 and 9.
std::vector<CriterionResult> run_verification(VerifyLevel level = VerifyLevel::Full);

}  // namespace bkvg
