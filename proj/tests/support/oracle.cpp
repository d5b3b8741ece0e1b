#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace purfit::testing {

namespace {

// Gaussian elimination with partial pivoting; returns false on a singular
// system instead of throwing so the caller can fall back to plain gradient.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-14) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return true;
}

struct DualProblem {
  std::vector<std::vector<double>> rows;  // D x M binary coefficient matrix
  std::vector<double> targets;            // b
  std::vector<double> reference;          // q0
};

// q(lambda) via log-sum-exp.
std::vector<double> candidate(const DualProblem& prob, const std::vector<double>& lambda) {
  const std::size_t m_cells = prob.reference.size();
  std::vector<double> logits(m_cells);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m_cells; ++a) {
    double l = std::log(prob.reference[a]);
    for (std::size_t m = 0; m < prob.rows.size(); ++m)
      l += prob.rows[m][a] * lambda[m];
    logits[a] = l;
    max_logit = std::max(max_logit, l);
  }
  double z = 0.0;
  for (double l : logits) z += std::exp(l - max_logit);
  std::vector<double> q(m_cells);
  for (std::size_t a = 0; a < m_cells; ++a) q[a] = std::exp(logits[a] - max_logit) / z;
  return q;
}

double dual_value(const DualProblem& prob, const std::vector<double>& lambda) {
  const std::size_t m_cells = prob.reference.size();
  double max_logit = -std::numeric_limits<double>::infinity();
  std::vector<double> logits(m_cells);
  for (std::size_t a = 0; a < m_cells; ++a) {
    double l = std::log(prob.reference[a]);
    for (std::size_t m = 0; m < prob.rows.size(); ++m)
      l += prob.rows[m][a] * lambda[m];
    logits[a] = l;
    max_logit = std::max(max_logit, l);
  }
  double z = 0.0;
  for (double l : logits) z += std::exp(l - max_logit);
  double value = -(std::log(z) + max_logit);
  for (std::size_t m = 0; m < lambda.size(); ++m) value += lambda[m] * prob.targets[m];
  return value;
}

std::vector<double> gradient(const DualProblem& prob, const std::vector<double>& q) {
  std::vector<double> g(prob.rows.size());
  for (std::size_t m = 0; m < prob.rows.size(); ++m) {
    double expect = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) expect += prob.rows[m][a] * q[a];
    g[m] = prob.targets[m] - expect;
  }
  return g;
}

}  // namespace

std::vector<double> kl_projection_oracle(const JointTable& reference,
                                         const ConstraintSet& set,
                                         double gradient_tolerance,
                                         std::size_t max_iterations) {
  const std::size_t m_cells = reference.size();
  DualProblem prob;
  prob.reference = reference.values();
  for (double v : prob.reference)
    if (!(v > 0.0))
      throw std::invalid_argument("oracle requires a strictly positive reference");

  for (const auto& c : set.constraints()) {
    const auto& layout = c.target.layout();
    for (std::size_t m = 0; m < c.target.size(); ++m) {
      if (!(c.target[m] > 0.0))
        throw std::invalid_argument("oracle requires strictly positive targets");
      std::vector<double> row(m_cells, 0.0);
      for (std::size_t a = 0; a < m_cells; ++a)
        if (layout.project(a) == m) row[a] = 1.0;
      prob.rows.push_back(std::move(row));
      prob.targets.push_back(c.target[m]);
    }
  }

  const std::size_t dim = prob.rows.size();
  std::vector<double> lambda(dim, 0.0);
  std::vector<double> q = candidate(prob, lambda);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    const std::vector<double> grad = gradient(prob, q);
    double grad_norm = 0.0;
    for (double g : grad) grad_norm = std::max(grad_norm, std::abs(g));
    if (grad_norm <= gradient_tolerance) return q;

    // Covariance Cov_q(C) = A diag(q) A^T - (A q)(A q)^T, damped for the
    // redundant rows.
    std::vector<double> expect(dim, 0.0);
    for (std::size_t m = 0; m < dim; ++m)
      for (std::size_t a = 0; a < m_cells; ++a) expect[m] += prob.rows[m][a] * q[a];
    std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < m_cells; ++a)
          acc += prob.rows[i][a] * prob.rows[j][a] * q[a];
        acc -= expect[i] * expect[j];
        cov[i][j] = acc;
        cov[j][i] = acc;
      }
      cov[i][i] += 1e-12;
    }

    std::vector<double> direction;
    if (!solve_dense(cov, grad, direction)) direction = grad;

    // Backtracking line search on the concave dual.
    const double base = dual_value(prob, lambda);
    double step = 1.0;
    std::vector<double> trial(dim);
    bool moved = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t m = 0; m < dim; ++m) trial[m] = lambda[m] + step * direction[m];
      if (dual_value(prob, trial) > base) {
        lambda = trial;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      // Newton direction stalled; try raw gradient before giving up.
      step = 1.0;
      for (int halvings = 0; halvings < 60 && !moved; ++halvings) {
        for (std::size_t m = 0; m < dim; ++m) trial[m] = lambda[m] + step * grad[m];
        if (dual_value(prob, trial) > base) {
          lambda = trial;
          moved = true;
        }
        step *= 0.5;
      }
      if (!moved) return q;  // numerically at the optimum
    }
    q = candidate(prob, lambda);
  }
  return q;
}

double gamma_q(double a, double x) {
  // Series / continued-fraction split of the regularized incomplete gamma.
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double log_gamma = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, return 1 - P.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - log_gamma);
    return 1.0 - p;
  }
  // Q(a,x) by Lentz continued fraction.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma) * h;
}

double chi_square_tail(double statistic, double dof) {
  return gamma_q(dof / 2.0, statistic / 2.0);
}

}  // namespace purfit::testing
