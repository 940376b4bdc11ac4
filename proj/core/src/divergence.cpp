#include "raml/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace raml {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
}

// Stable softmax of s / tau as an Eigen vector.
Vec softmax_scaled(const Vec& s, double tau) {
  const Vec scaled = s / tau;
  const double peak = scaled.maxCoeff();
  Vec u = (scaled.array() - peak).exp();
  u /= u.sum();
  return u;
}

double lse_scaled(const Vec& s, double tau) {
  const Vec scaled = s / tau;
  const double peak = scaled.maxCoeff();
  return peak + std::log((scaled.array() - peak).exp().sum());
}

}  // namespace

SimplexPoint::SimplexPoint(Vec probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2)
    throw std::invalid_argument("simplex point needs at least two coordinates");
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || !(p > 0.0))
      throw std::invalid_argument("simplex point must be strictly interior");
  }
  if (std::abs(probs_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("simplex point must sum to 1");
}

double kl(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("kl requires equal dimensions");
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.dim(); ++i)
    s += p.probs()[i] * (std::log(p.probs()[i]) - std::log(q.probs()[i]));
  return s;
}

NegEntropyPotential::NegEntropyPotential(double tau) : tau_(tau) { check_tau(tau); }

double NegEntropyPotential::value(const Vec& x) const {
  check_domain(x);
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * std::log(x[i]);
  return tau_ * s;
}

Vec NegEntropyPotential::gradient(const Vec& x) const {
  check_domain(x);
  return tau_ * (x.array().log() + 1.0).matrix();
}

Mat NegEntropyPotential::hessian(const Vec& x) const {
  check_domain(x);
  return (tau_ * x.array().inverse()).matrix().asDiagonal();
}

void NegEntropyPotential::check_domain(const Vec& x) const {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !(x[i] > 0.0))
      throw std::domain_error("negative entropy potential requires strictly positive coordinates");
}

std::string NegEntropyPotential::name() const { return "neg_entropy"; }

LogSumExpPotential::LogSumExpPotential(double tau) : tau_(tau) { check_tau(tau); }

double LogSumExpPotential::value(const Vec& x) const {
  check_domain(x);
  return tau_ * lse_scaled(x, tau_);
}

Vec LogSumExpPotential::gradient(const Vec& x) const {
  check_domain(x);
  return softmax_scaled(x, tau_);
}

Mat LogSumExpPotential::hessian(const Vec& x) const {
  check_domain(x);
  const Vec u = softmax_scaled(x, tau_);
  Mat h = -(u * u.transpose());
  h.diagonal() += u;
  return h / tau_;
}

void LogSumExpPotential::check_domain(const Vec& x) const {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw std::domain_error("log-sum-exp potential requires finite coordinates");
}

std::string LogSumExpPotential::name() const { return "log_sum_exp"; }

double QuadraticPotential::value(const Vec& x) const { return 0.5 * x.squaredNorm(); }
Vec QuadraticPotential::gradient(const Vec& x) const { return x; }
Mat QuadraticPotential::hessian(const Vec& x) const {
  return Mat::Identity(x.size(), x.size());
}
void QuadraticPotential::check_domain(const Vec& x) const {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw std::domain_error("quadratic potential requires finite coordinates");
}
std::string QuadraticPotential::name() const { return "quadratic"; }

double bregman(const Potential& F, const Vec& p, const Vec& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("bregman requires equal dimensions");
  F.check_domain(p);
  F.check_domain(q);
  return F.value(p) - F.value(q) - (p - q).dot(F.gradient(q));
}

Vec entropy_transfer(const Vec& p, double tau) {
  check_tau(tau);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p[i] > 0.0))
      throw std::domain_error("entropy transfer requires strictly positive coordinates");
  return tau * (p.array().log() + 1.0).matrix();
}

SimplexPoint lse_transfer(const Vec& s, double tau) {
  check_tau(tau);
  return SimplexPoint(softmax_scaled(s, tau));
}

Mat lse_hessian(const Vec& r, double tau) {
  check_tau(tau);
  const Vec u = softmax_scaled(r, tau);
  Mat h = -(u * u.transpose());
  h.diagonal() += u;
  return h / tau;
}

QuadFormVariance quad_form_as_variance(const Vec& delta, const Vec& r, double tau) {
  if (delta.size() != r.size())
    throw std::invalid_argument("quad form requires equal dimensions");
  check_tau(tau);
  QuadFormVariance out;
  out.quad_form = delta.dot(lse_hessian(r, tau) * delta);
  const Vec u = softmax_scaled(r, tau);
  const double mean = u.dot(delta);
  double var = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double centered = delta[i] - mean;
    var += u[i] * centered * centered;
  }
  out.scaled_variance = var / tau;
  return out;
}

DualDivergenceReport dual_divergence_check(const SimplexPoint& p, const SimplexPoint& q,
                                           double tau) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("dual divergence check requires equal dimensions");
  check_tau(tau);
  const NegEntropyPotential F(tau);
  const LogSumExpPotential G(tau);
  const Vec fp = entropy_transfer(p.probs(), tau);
  const Vec fq = entropy_transfer(q.probs(), tau);

  DualDivergenceReport rep;
  rep.forward_lhs = bregman(F, p.probs(), q.probs());
  rep.forward_rhs = bregman(G, fq, fp);
  rep.reverse_lhs = bregman(F, q.probs(), p.probs());
  rep.reverse_rhs = bregman(G, fp, fq);
  rep.max_discrepancy = std::max(std::abs(rep.forward_lhs - rep.forward_rhs),
                                 std::abs(rep.reverse_lhs - rep.reverse_rhs));
  rep.transfer_inverse_error =
      (lse_transfer(fp, tau).probs() - p.probs()).cwiseAbs().maxCoeff();
  return rep;
}

TemperedKlReport tempered_kl_check(const Vec& s, const Vec& r, double tau) {
  if (s.size() != r.size())
    throw std::invalid_argument("tempered kl check requires equal dimensions");
  check_tau(tau);
  const LogSumExpPotential G(tau);
  TemperedKlReport rep;
  rep.lhs = bregman(G, s, r);
  rep.rhs = tau * kl(lse_transfer(r, tau), lse_transfer(s, tau));
  rep.discrepancy = std::abs(rep.lhs - rep.rhs);
  return rep;
}

namespace {

// Locates t in [0, 1/2] with g(t) = target for a continuous g: accepts a grid
// point outright when it already matches to rounding, otherwise brackets a
// sign change and bisects to machine resolution.
struct InterpolantSolve {
  bool found = false;
  double t = 0.0;
  double residual = 0.0;
  double g_at_zero = 0.0;
  double g_at_half = 0.0;
};

template <typename G>
InterpolantSolve solve_interpolant(const G& g, double target) {
  constexpr int kGrid = 64;
  InterpolantSolve out;
  const double scale = std::max(1.0, std::abs(target));

  double prev_t = 0.0;
  double prev_v = g(0.0);
  out.g_at_zero = prev_v;
  out.g_at_half = g(0.5);
  if (std::abs(prev_v - target) <= 1e-12 * scale) {
    out.found = true;
    out.t = 0.0;
    out.residual = std::abs(prev_v - target);
    return out;
  }
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = 0.5 * static_cast<double>(i) / kGrid;
    const double v = g(t);
    if (std::abs(v - target) <= 1e-12 * scale) {
      out.found = true;
      out.t = t;
      out.residual = std::abs(v - target);
      return out;
    }
    if ((prev_v - target) * (v - target) < 0.0) {
      lo = prev_t;
      hi = t;
      bracketed = true;
      break;
    }
    prev_t = t;
    prev_v = v;
  }
  if (!bracketed) return out;

  double flo = g(lo) - target;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = g(mid) - target;
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (flo * fmid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  out.found = true;
  out.t = 0.5 * (lo + hi);
  out.residual = std::abs(g(out.t) - target);
  return out;
}

}  // namespace

Prop1Certificate prop1_certificate(const Potential& F, const Vec& p, const Vec& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("certificate requires equal dimensions");
  if ((p - q).cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("certificate requires p != q");
  F.check_domain(p);
  F.check_domain(q);

  const Vec delta = q - p;
  const Vec mid = 0.5 * (p + q);
  const double gap = F.value(p) + F.value(q) - 2.0 * F.value(mid);
  const double d_qp = bregman(F, q, p);
  const double d_pq = bregman(F, p, q);
  const double target_a = d_qp - gap;
  const double target_b = d_pq - gap;

  const auto g_a = [&](double alpha) {
    const Vec x = (1.0 - alpha) * p + alpha * q;
    return 0.25 * delta.dot(F.hessian(x) * delta);
  };
  const auto g_b = [&](double beta) {
    const Vec x = (1.0 - beta) * q + beta * p;
    return 0.25 * delta.dot(F.hessian(x) * delta);
  };

  Prop1Certificate cert;
  const InterpolantSolve sa = solve_interpolant(g_a, target_a);
  const InterpolantSolve sb = solve_interpolant(g_b, target_b);
  if (!sa.found || !sb.found) {
    cert.found = false;
    cert.failure = "certificate failed: no bracket on [0, 1/2] (g(0)=" +
                   std::to_string(sa.found ? sb.g_at_zero : sa.g_at_zero) +
                   ", g(1/2)=" + std::to_string(sa.found ? sb.g_at_half : sa.g_at_half) +
                   ", target=" + std::to_string(sa.found ? target_b : target_a) + ")";
    return cert;
  }
  cert.found = true;
  cert.alpha = sa.t;
  cert.beta = sb.t;
  cert.residual_a = sa.residual;
  cert.residual_b = sb.residual;
  cert.quad_a = g_a(sa.t);
  cert.quad_b = g_b(sb.t);
  cert.equality_error = std::abs(d_qp - d_pq - (cert.quad_a - cert.quad_b));
  return cert;
}

Prop2Report prop2_inequality_check(const Vec& s, const Vec& r, double tau) {
  if (s.size() != r.size())
    throw std::invalid_argument("inequality check requires equal dimensions");
  check_tau(tau);
  if ((s - r).cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("inequality check requires s != r");

  Prop2Report rep;
  const SimplexPoint p = lse_transfer(s, tau);
  const SimplexPoint q = lse_transfer(r, tau);
  rep.kl_p_q = kl(p, q);
  rep.kl_q_p = kl(q, p);
  rep.norm_bound = (s - r).squaredNorm() / (tau * tau);
  rep.inequality_holds = rep.kl_p_q < rep.kl_q_p + rep.norm_bound;

  // The certificate for the conjugate potential pins the interpolants the
  // variance form and the norm bound are stated at.
  const LogSumExpPotential G(tau);
  rep.certificate = prop1_certificate(G, s, r);
  if (rep.certificate.found) {
    rep.variance_gap_error =
        std::abs(tau * (rep.kl_p_q - rep.kl_q_p) -
                 (rep.certificate.quad_a - rep.certificate.quad_b));
    const Vec a = (1.0 - rep.certificate.alpha) * s + rep.certificate.alpha * r;
    const Vec b = (1.0 - rep.certificate.beta) * r + rep.certificate.beta * s;
    const Vec ua = lse_transfer(a, tau).probs();
    const Vec ub = lse_transfer(b, tau).probs();
    rep.transfer_diff_inf = (ua - ub).cwiseAbs().maxCoeff();
    rep.transfer_norm_sq = std::max(ua.squaredNorm(), ub.squaredNorm());
    rep.ingredients_hold = rep.transfer_diff_inf <= 2.0 && rep.transfer_norm_sq <= 1.0 + 1e-15;
  }
  return rep;
}

}  // namespace raml
