#include "proxpair/norm.hpp"

#include "proxpair/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace proxpair {

NormSpec::NormSpec(Kind kind, double p, int dim, std::vector<double> weights)
    : kind_(kind), p_(p), dim_(dim), weights_(std::move(weights)) {
  if (dim_ <= 0) throw InvalidArgument("norm: dim must be positive");
  if (kind_ == Kind::finite && !(p_ >= 1.0 && std::isfinite(p_))) {
    throw InvalidArgument("norm: p must be a finite number >= 1 (use linf for infinity)");
  }
  if (!weights_.empty()) {
    if (static_cast<int>(weights_.size()) != dim_) {
      throw InvalidArgument("norm: weights length " + std::to_string(weights_.size()) +
                            " does not match dim " + std::to_string(dim_));
    }
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("norm: weights must be positive");
    }
  }
}

NormSpec NormSpec::lp(double p, int dim, std::vector<double> weights) {
  return NormSpec(Kind::finite, p, dim, std::move(weights));
}

NormSpec NormSpec::linf(int dim, std::vector<double> weights) {
  return NormSpec(Kind::infinity, 0.0, dim, std::move(weights));
}

Vector NormSpec::to_scaled(const Vector& v) const {
  if (weights_.empty()) return v;
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = weights_[static_cast<std::size_t>(i)] * v[i];
  return out;
}

Vector NormSpec::from_scaled(const Vector& v) const {
  if (weights_.empty()) return v;
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] / weights_[static_cast<std::size_t>(i)];
  return out;
}

Points NormSpec::to_scaled(const Points& pts) const {
  if (weights_.empty()) return pts;
  Points out = pts;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) out.row(i) *= weights_[static_cast<std::size_t>(i)];
  return out;
}

double NormSpec::l2_lower() const {
  const double n = dim_;
  double c = 1.0;
  if (is_infinity()) {
    c = 1.0 / std::sqrt(n);
  } else if (p_ > 2.0) {
    c = std::pow(n, 1.0 / p_ - 0.5);
  }
  double wmin = 1.0;
  if (!weights_.empty()) wmin = *std::min_element(weights_.begin(), weights_.end());
  return c * wmin;
}

double NormSpec::l2_upper() const {
  const double n = dim_;
  double c = 1.0;
  if (!is_infinity() && p_ < 2.0) c = std::pow(n, 1.0 / p_ - 0.5);
  double wmax = 1.0;
  if (!weights_.empty()) wmax = *std::max_element(weights_.begin(), weights_.end());
  return c * wmax;
}

double plain_norm(const Vector& v, const NormSpec& spec) {
  if (v.size() == 0) return 0.0;
  if (spec.is_infinity()) return v.cwiseAbs().maxCoeff();
  const double p = spec.p();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

Vector plain_norm_gradient(const Vector& v, const NormSpec& spec) {
  Vector g = Vector::Zero(v.size());
  const double nv = plain_norm(v, spec);
  if (nv == 0.0) return g;
  if (spec.is_infinity()) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    g[arg] = v[arg] > 0 ? 1.0 : -1.0;
    return g;
  }
  const double p = spec.p();
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) g[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) / nv;
    g[i] = (v[i] >= 0 ? 1.0 : -1.0) * std::pow(a, p - 1.0);
  }
  return g;
}

double norm(const Vector& v, const NormSpec& spec) {
  require_same_dim(v.size(), spec.dim(), "norm");
  if (!v.allFinite()) throw InvalidArgument("norm: vector has non-finite entries");
  return plain_norm(spec.to_scaled(v), spec);
}

namespace {

// Dual of the unweighted p-norm is the unweighted q-norm, 1/p + 1/q = 1.
NormSpec dual_plain(const NormSpec& spec) {
  if (spec.is_infinity()) return NormSpec::lp(1.0, spec.dim());
  if (spec.p() == 1.0) return NormSpec::linf(spec.dim());
  return NormSpec::lp(spec.p() / (spec.p() - 1.0), spec.dim());
}

}  // namespace

double dual_norm(const Vector& u, const NormSpec& spec) {
  require_same_dim(u.size(), spec.dim(), "dual_norm");
  // <u, x> = <W^{-1} u, W x>, so the dual in original coordinates is ||W^{-1} u||_q.
  return plain_norm(spec.from_scaled(u), dual_plain(spec));
}

Vector dual_maximizer(const Vector& u, const NormSpec& spec) {
  require_same_dim(u.size(), spec.dim(), "dual_maximizer");
  const Vector v = spec.from_scaled(u);
  Vector x = Vector::Zero(u.size());
  if (v.cwiseAbs().maxCoeff() == 0.0) {
    // Any unit vector maximizes the zero functional.
    x[0] = 1.0;
    return spec.from_scaled(x);
  }
  if (spec.is_infinity()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) x[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
  } else if (spec.p() == 1.0) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        arg = i;
      }
    }
    x[arg] = v[arg] > 0 ? 1.0 : -1.0;
  } else {
    const NormSpec q = dual_plain(spec);
    const double nq = plain_norm(v, q);
    const double qe = q.p();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      x[i] = (v[i] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(v[i]) / nq, qe - 1.0);
    }
  }
  return spec.from_scaled(x);
}

ConvexityVerdict is_strictly_convex(const NormSpec& spec) {
  ConvexityVerdict out;
  if (spec.strictly_convex()) {
    out.status = ConvexityVerdict::Status::strictly_convex;
    return out;
  }
  // Flat faces of the polyhedral unit balls, written in scaled coordinates.
  const int n = spec.dim();
  Vector c1 = Vector::Zero(n);
  Vector c2 = Vector::Zero(n);
  if (spec.is_infinity()) {
    c1[0] = 1.0;
    c1[1] = 1.0;
    c2[0] = 1.0;
    c2[1] = -1.0;
  } else {
    c1[0] = 1.0;
    c2[1] = 1.0;
  }
  c1 = spec.from_scaled(c1);
  c2 = spec.from_scaled(c2);
  const Vector mid = 0.5 * (c1 + c2);
  const bool ok = std::abs(norm(c1, spec) - 1.0) <= kNormEqualityTol &&
                  std::abs(norm(c2, spec) - 1.0) <= kNormEqualityTol &&
                  std::abs(norm(mid, spec) - 1.0) <= kNormEqualityTol &&
                  norm(c1 - c2, spec) > kSegmentThreshold;
  if (ok) {
    out.status = ConvexityVerdict::Status::not_strictly_convex;
    out.witness = std::make_pair(c1, c2);
  }
  return out;
}

}  // namespace proxpair
