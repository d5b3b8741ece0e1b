#include "purfit/metrics.hpp"

#include <cmath>

#include "purfit/errors.hpp"

namespace purfit {

double kl_divergence(const JointTable& p, const JointTable& q) {
  if (!same_schema(p.schema(), q.schema()))
    throw ArgumentError("KL divergence needs tables over the same schema");
  double sum = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    const double pa = p[a];
    if (pa == 0.0) continue;
    if (q[a] == 0.0) return std::numeric_limits<double>::infinity();
    sum += pa * std::log(pa / q[a]);
  }
  return sum < 0.0 ? 0.0 : sum;  // clamp rounding noise at the p = q fixpoint
}

double entropy(const JointTable& p) {
  double h = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p[a] > 0.0) h -= p[a] * std::log(p[a]);
  return h < 0.0 ? 0.0 : h;
}

namespace {

// Conditional p(y|s) as a dense (y, s) array plus the s-marginal mask.
struct ResponseGivenSensitive {
  std::vector<double> cond;            // [y * s_cells + s]
  std::vector<std::uint8_t> defined;   // per s
  std::vector<double> y_marg;
  std::size_t y_cells = 0;
  std::size_t s_cells = 0;
};

ResponseGivenSensitive response_given_sensitive(const JointTable& p) {
  const auto& schema = p.schema();
  ResponseGivenSensitive out;
  out.y_cells = schema->response_cells();
  out.s_cells = schema->protected_cells();

  MarginalTable ys = marginalize(p, schema->parity_subset());
  MarginalTable s = marginalize(p, schema->protected_subset());
  MarginalTable y = marginalize(p, schema->response_subset());

  out.cond.assign(out.y_cells * out.s_cells, 0.0);
  out.defined.assign(out.s_cells, 0);
  out.y_marg = y.values();
  for (std::size_t si = 0; si < out.s_cells; ++si) {
    if (s[si] <= 0.0) continue;
    out.defined[si] = 1;
    for (std::size_t yi = 0; yi < out.y_cells; ++yi)
      out.cond[yi * out.s_cells + si] = ys[yi * out.s_cells + si] / s[si];
  }
  return out;
}

}  // namespace

DisparityReport attributable_disparity(const JointTable& p, std::size_t s0) {
  auto c = response_given_sensitive(p);
  if (s0 >= c.s_cells) throw ArgumentError("reference sensitive profile out of range");
  if (!c.defined[s0])
    throw ArgumentError("reference sensitive profile has zero mass");

  DisparityReport report;
  report.s0 = s0;
  report.response_cells = c.y_cells;
  report.sensitive_cells = c.s_cells;
  report.defined = c.defined;
  report.difference.assign(c.y_cells * c.s_cells, 0.0);
  for (std::size_t y = 0; y < c.y_cells; ++y) {
    const double ref = c.cond[y * c.s_cells + s0];
    for (std::size_t s = 0; s < c.s_cells; ++s) {
      if (!c.defined[s]) continue;
      report.difference[y * c.s_cells + s] =
          (s == s0) ? 0.0 : c.cond[y * c.s_cells + s] - ref;
    }
  }
  return report;
}

DisparityReport attributable_disparity(const JointTable& p,
                                       std::span<const std::string> s0_profile) {
  MarginalLayout s_layout(p.schema(), p.schema()->protected_subset());
  return attributable_disparity(p, s_layout.index_of(s0_profile));
}

DisparityReport disparity_ratio(const JointTable& p, std::size_t y_pos, std::size_t s0) {
  auto c = response_given_sensitive(p);
  if (s0 >= c.s_cells) throw ArgumentError("reference sensitive profile out of range");
  if (y_pos >= c.y_cells) throw ArgumentError("positive outcome out of range");
  if (!c.defined[s0]) throw ArgumentError("reference sensitive profile has zero mass");
  const double denom = c.cond[y_pos * c.s_cells + s0];
  if (denom <= 0.0)
    throw ArgumentError("positive outcome has zero probability in the reference profile");

  DisparityReport report;
  report.s0 = s0;
  report.y_pos = y_pos;
  report.response_cells = c.y_cells;
  report.sensitive_cells = c.s_cells;
  report.defined = c.defined;
  report.ratio.assign(c.s_cells, 0.0);
  for (std::size_t s = 0; s < c.s_cells; ++s) {
    if (!c.defined[s]) continue;
    report.ratio[s] = (s == s0) ? 1.0 : c.cond[y_pos * c.s_cells + s] / denom;
  }
  return report;
}

DisparityReport disparity_ratio(const JointTable& p, const std::string& y_pos,
                                std::span<const std::string> s0_profile) {
  MarginalLayout s_layout(p.schema(), p.schema()->protected_subset());
  return disparity_ratio(p, p.schema()->category_index(0, y_pos),
                         s_layout.index_of(s0_profile));
}

double parity_residual(const JointTable& p) {
  auto c = response_given_sensitive(p);
  double worst = 0.0;
  for (std::size_t s = 0; s < c.s_cells; ++s) {
    if (!c.defined[s]) continue;
    for (std::size_t y = 0; y < c.y_cells; ++y) {
      const double diff = std::abs(c.cond[y * c.s_cells + s] - c.y_marg[y]);
      if (diff > worst) worst = diff;
    }
  }
  return worst;
}

double utility_error(const JointTable& f_test, const JointTable& p_pred) {
  if (!same_schema(f_test.schema(), p_pred.schema()))
    throw ArgumentError("utility error needs tables over the same schema");
  const auto subset = f_test.schema()->utility_subset();
  MarginalTable test = marginalize(f_test, subset);
  MarginalTable pred = marginalize(p_pred, subset);
  double sum = 0.0;
  for (std::size_t m = 0; m < test.size(); ++m) {
    const double t = test[m];
    if (t == 0.0) continue;
    if (pred[m] == 0.0) return std::numeric_limits<double>::infinity();
    sum += t * std::log(t / pred[m]);
  }
  return sum < 0.0 ? 0.0 : sum;
}

}  // namespace purfit
