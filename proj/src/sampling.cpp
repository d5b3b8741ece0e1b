#include "purfit/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "purfit/errors.hpp"
#include "purfit/rng.hpp"

namespace purfit {

std::vector<CountTable> sample_counts(const JointTable& q, const SampleSpec& spec) {
  if (spec.sample_size == 0) throw ArgumentError("sample size must be at least 1");
  if (spec.replicates == 0) throw ArgumentError("replicates must be at least 1");

  std::vector<double> cumulative(q.size());
  double acc = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    acc += q[a];
    cumulative[a] = acc;
  }
  cumulative.back() = std::max(cumulative.back(), 1.0);

  std::vector<CountTable> out;
  out.reserve(spec.replicates);
  for (std::uint32_t r = 0; r < spec.replicates; ++r) {
    auto gen = make_stream(spec.seed, r);
    std::vector<std::uint64_t> counts(q.size(), 0);
    for (std::uint64_t i = 0; i < spec.sample_size; ++i) {
      const double u = unit_double(gen);
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      counts[static_cast<std::size_t>(it - cumulative.begin())] += 1;
    }
    out.emplace_back(q.schema(), std::move(counts));
  }
  return out;
}

std::pair<CountTable, CountTable> train_test_split(const CountTable& counts,
                                                   double test_fraction,
                                                   std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ArgumentError("test fraction must lie strictly between 0 and 1");
  if (counts.total() < 2) throw ArgumentError("need at least 2 records to split");

  auto gen = make_stream(seed);
  std::vector<std::uint64_t> train(counts.size(), 0);
  std::vector<std::uint64_t> test(counts.size(), 0);
  for (std::size_t a = 0; a < counts.size(); ++a) {
    for (std::uint64_t i = 0; i < counts[a]; ++i) {
      if (unit_double(gen) < test_fraction)
        test[a] += 1;
      else
        train[a] += 1;
    }
  }
  return {CountTable(counts.schema(), std::move(train)),
          CountTable(counts.schema(), std::move(test))};
}

Prediction natural_prediction(const JointTable& q_train, const JointTable& f_test,
                              FallbackPolicy policy) {
  if (!same_schema(q_train.schema(), f_test.schema()))
    throw ArgumentError("train and test tables use different schemas");
  const auto& schema = q_train.schema();

  const auto predictor_subset = schema->realism_subset();
  ConditionalTable cond =
      conditional(q_train, schema->response_subset(), predictor_subset);
  MarginalTable test_pred = marginalize(f_test, predictor_subset);
  MarginalTable y_marg = marginalize(q_train, schema->response_subset());
  const MarginalLayout pred_layout(schema, predictor_subset);

  const std::size_t y_cells = schema->response_cells();
  std::size_t fallback_profiles = 0;
  double fallback_mass = 0.0;
  std::vector<double> values(schema->cell_count(), 0.0);
  std::vector<std::uint8_t> fallback_counted(test_pred.size(), 0);

  for (std::size_t a = 0; a < values.size(); ++a) {
    const std::size_t sx = pred_layout.project(a);
    const double mass = test_pred[sx];
    if (mass == 0.0) continue;
    const std::size_t y = schema->digit(a, 0);
    if (cond.defined(sx)) {
      values[a] = cond.value(y, sx) * mass;
    } else {
      if (!fallback_counted[sx]) {
        fallback_counted[sx] = 1;
        fallback_profiles += 1;
        fallback_mass += mass;
      }
      const double slice = policy == FallbackPolicy::response_marginal
                               ? y_marg[y]
                               : 1.0 / static_cast<double>(y_cells);
      values[a] = slice * mass;
    }
  }
  return {JointTable(schema, std::move(values)), fallback_profiles, fallback_mass, policy};
}

}  // namespace purfit
