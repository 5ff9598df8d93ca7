#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vrcap/grpo.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

struct CheckOptions {
  int gradient_instances = 100;
  double gradient_tolerance = 1e-5;
  int advantage_groups = 10000;
  int reward_cases = 2000;
  std::uint64_t seed = 0;
  // Test hook: applied to every analytic gradient before comparison.
  std::function<void(std::span<double>)> gradient_fault;
};

struct CheckItem {
  std::string name;
  bool passed = false;
  double metric = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  double max_gradient_rel_error = 0.0;
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::string to_text() const;
};

/// ||a - b|| / max(||a||, ||b||, 1e-12).
double relative_error(std::span<const double> a, std::span<const double> b);

/// Random sparse instance for gradient checks.
struct GradientInstance {
  PolicyParams params;
  std::vector<ContextFeatures> steps;
  std::vector<TokenId> tokens;
};
GradientInstance random_gradient_instance(int V, int F, int max_len, std::uint64_t seed);

/// Central differences of f at params.theta.
std::vector<double> finite_difference(const std::function<double(const PolicyParams&)>& f,
                                      PolicyParams params, double h = 1e-5);

CheckReport run_checks(const Vocabulary& vocab, const CheckOptions& options);

}  // namespace vrcap
