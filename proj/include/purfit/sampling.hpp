#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "purfit/tables.hpp"

namespace purfit {

struct SampleSpec {
  std::uint64_t sample_size = 0;  // N
  std::uint64_t seed = 0;
  std::uint32_t replicates = 1;
};

// Multinomial sampling of N records per replicate: inverse-CDF draws over
// the flat cell index. Replicate r consumes the stream make_stream(seed, r),
// so replicates are independent and individually reproducible.
std::vector<CountTable> sample_counts(const JointTable& q, const SampleSpec& spec);

// Per-record Bernoulli(test_fraction) assignment, realized cell by cell in
// flat-index order on the stream make_stream(seed). Train and test totals
// always sum to the input total.
std::pair<CountTable, CountTable> train_test_split(const CountTable& counts,
                                                   double test_fraction,
                                                   std::uint64_t seed);

enum class FallbackPolicy {
  response_marginal,  // unseen (s, x): use the trained Y-marginal
  uniform_response,   // unseen (s, x): uniform over Y
};

struct Prediction {
  JointTable table;
  // Predictor profiles present in test but absent from training, served by
  // the fallback policy.
  std::size_t fallback_profiles = 0;
  double fallback_mass = 0.0;
  FallbackPolicy policy = FallbackPolicy::response_marginal;
};

// Natural classifier: p_pred(y, s, x) = q_train(y | s, x) * f_test(s, x).
Prediction natural_prediction(const JointTable& q_train, const JointTable& f_test,
                              FallbackPolicy policy = FallbackPolicy::response_marginal);

}  // namespace purfit
