#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>

namespace raml {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Probability vector constrained to the strict interior of the simplex.
// Inputs violating the bound are rejected, not clamped: the entropy Hessian
// diag(1/p) and log p diverge at the boundary and silent clamping would mask
// exactly the failures these checks exist to find.
class SimplexPoint {
 public:
  explicit SimplexPoint(Vec probs);

  const Vec& probs() const noexcept { return probs_; }
  Eigen::Index dim() const noexcept { return probs_.size(); }

 private:
  Vec probs_;
};

// KL(p || q) for strictly interior points.
double kl(const SimplexPoint& p, const SimplexPoint& q);

// Twice differentiable strictly convex potential on an open domain.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;
  virtual void check_domain(const Vec& x) const = 0;  // throws on violation
  virtual std::string name() const = 0;
};

// F(p) = tau * sum_i p_i log p_i on the positive orthant. Its gradient map
// (transfer) is f(p) = tau (log p + 1); restricted to the simplex the Bregman
// divergence is tau * KL.
class NegEntropyPotential final : public Potential {
 public:
  explicit NegEntropyPotential(double tau);
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  void check_domain(const Vec& x) const override;
  std::string name() const override;
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

// F(s) = tau * logsumexp(s / tau) on all of R^n; the convex conjugate of the
// negative entropy potential. Its transfer is the softmax of s / tau.
class LogSumExpPotential final : public Potential {
 public:
  explicit LogSumExpPotential(double tau);
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  void check_domain(const Vec& x) const override;
  std::string name() const override;
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

// F(x) = ||x||^2 / 2; the symmetric reference case.
class QuadraticPotential final : public Potential {
 public:
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  void check_domain(const Vec& x) const override;
  std::string name() const override;
};

// D_F(p || q) = F(p) - F(q) - (p - q)' grad F(q).
double bregman(const Potential& F, const Vec& p, const Vec& q);

// Entropy transfer f_tau(p) = tau (log p + 1). Left inverse of lse_transfer
// up to the logit gauge (softmax ignores constant shifts).
Vec entropy_transfer(const Vec& p, double tau);

// softmax(s / tau) as a strictly interior simplex point. Shift invariant.
SimplexPoint lse_transfer(const Vec& s, double tau);

// Hessian of tau * logsumexp(. / tau) at r:
//   (1/tau) (Diag(u) - u u') with u = softmax(r / tau).
// Rows sum to zero; positive semidefinite.
Mat lse_hessian(const Vec& r, double tau);

// The same quadratic form two ways: delta' H delta via the matrix, and
// (1/tau) Var_{y ~ softmax(r/tau)}[delta(y)] via the moment identity. The two
// must agree to rounding.
struct QuadFormVariance {
  double quad_form = 0.0;
  double scaled_variance = 0.0;
};
QuadFormVariance quad_form_as_variance(const Vec& delta, const Vec& r, double tau);

// Checks that a divergence between simplex points equals the conjugate
// divergence between their transferred images, in both directions:
//   D_F(p || q) = D_F*(f(q) || f(p))   and   D_F(q || p) = D_F*(f(p) || f(q))
// with F = negative entropy, F* = scaled log-sum-exp, f = entropy_transfer.
struct DualDivergenceReport {
  double forward_lhs = 0.0, forward_rhs = 0.0;
  double reverse_lhs = 0.0, reverse_rhs = 0.0;
  double max_discrepancy = 0.0;
  double transfer_inverse_error = 0.0;  // || f*(f(p)) - p ||_inf
};
DualDivergenceReport dual_divergence_check(const SimplexPoint& p,
                                           const SimplexPoint& q, double tau);

// Checks D_F*tau(s || r) = tau * KL(softmax(r/tau) || softmax(s/tau)), each
// side computed from its own definition.
struct TemperedKlReport {
  double lhs = 0.0, rhs = 0.0, discrepancy = 0.0;
};
TemperedKlReport tempered_kl_check(const Vec& s, const Vec& r, double tau);

// Midpoint-Taylor certificate for the gap between the two divergence
// directions: finds alpha, beta in [0, 1/2] with
//
//   D_F(q || p) - G = g_a(alpha),   G = F(p) + F(q) - 2 F((p+q)/2)
//   D_F(p || q) - G = g_b(beta),
//   g_a(t) = (1/4) (q-p)' H_F((1-t) p + t q) (q-p),
//   g_b(t) = (1/4) (p-q)' H_F((1-t) q + t p) (p-q),
//
// so that D_F(q||p) = D_F(p||q) + g_a(alpha) - g_b(beta) holds exactly. The
// solver brackets a sign change of the continuous map g - target on [0, 1/2]
// and bisects; existence is guaranteed by Taylor's theorem, so a missing
// bracket indicates an implementation fault and is reported, not asserted.
struct Prop1Certificate {
  bool found = false;
  double alpha = 0.0, beta = 0.0;
  double residual_a = 0.0, residual_b = 0.0;  // |g(t*) - target|
  double quad_a = 0.0, quad_b = 0.0;          // g_a(alpha), g_b(beta)
  double equality_error = 0.0;  // |D(q||p) - D(p||q) - (quad_a - quad_b)|
  std::string failure;          // non-empty when no bracket was found
};
Prop1Certificate prop1_certificate(const Potential& F, const Vec& p, const Vec& q);

// For p = softmax(s/tau), q = softmax(r/tau) with s != r, checks the strict
// bound KL(p || q) < KL(q || p) + ||s - r||^2 / tau^2, the variance form of
// the gap at the certified interpolants, and the ingredients the bound rests
// on (transferred images differ by at most 2 in sup norm and have squared
// norm at most 1).
struct Prop2Report {
  double kl_p_q = 0.0, kl_q_p = 0.0;
  double norm_bound = 0.0;  // ||s - r||^2 / tau^2
  bool inequality_holds = false;
  double variance_gap_error = 0.0;  // |tau (KL(p||q)-KL(q||p)) - (quad_a - quad_b)|
  double transfer_diff_inf = 0.0;
  double transfer_norm_sq = 0.0;
  bool ingredients_hold = false;
  Prop1Certificate certificate;
};
Prop2Report prop2_inequality_check(const Vec& s, const Vec& r, double tau);

}  // namespace raml
