#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "purfit/tables.hpp"

namespace purfit {

// Sum of p * log(p/q) in nats, with 0*log0 = 0. Infinite when p puts mass
// where q has none.
double kl_divergence(const JointTable& p, const JointTable& q);

// Shannon entropy in nats.
double entropy(const JointTable& p);

// Per-profile disparity diagnostics against a reference sensitive profile.
// difference is y-major over (y, s); ratio is per s for a designated
// positive outcome. Entries for zero-mass s-profiles are undefined.
struct DisparityReport {
  std::size_t s0 = 0;                // flat sensitive-profile index
  std::size_t response_cells = 0;
  std::size_t sensitive_cells = 0;
  std::vector<double> difference;    // [y * sensitive_cells + s]; empty if not computed
  std::vector<double> ratio;         // [s]; empty if not computed
  std::size_t y_pos = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint8_t> defined; // per s

  double difference_at(std::size_t y, std::size_t s) const {
    return difference[y * sensitive_cells + s];
  }
};

// p(y|s) - p(y|s0) for every (y, s); exactly 0 at s = s0.
DisparityReport attributable_disparity(const JointTable& p, std::size_t s0);
DisparityReport attributable_disparity(const JointTable& p,
                                       std::span<const std::string> s0_profile);

// p(y_pos|s) / p(y_pos|s0) per sensitive profile; 1 at s0.
DisparityReport disparity_ratio(const JointTable& p, std::size_t y_pos, std::size_t s0);
DisparityReport disparity_ratio(const JointTable& p, const std::string& y_pos,
                                std::span<const std::string> s0_profile);

// max over (y, s) of |p(y|s) - p(y)|, skipping zero-mass s-profiles.
double parity_residual(const JointTable& p);

// KL divergence of the test (Y, X)-marginal from the predicted one.
double utility_error(const JointTable& f_test, const JointTable& p_pred);

}  // namespace purfit
