#pragma once

// Rotation-group primitives on 3x3 matrices.
//
// Skew matrices follow the upper-triangular layout
//
//        [  0   a   b ]
//    Ω = [ -a   0   c ]      hat(a, b, c) = Ω,  vee(Ω) = (a, b, c)
//        [ -b  -c   0 ]
//
// which differs from the cross-product hat by component order and sign.
// Norms agree, so anything built from ‖vee(Ω)‖ is layout-independent.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hipjerk/error.hpp"

namespace hipjerk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kRotationTolerance = 1e-9;
inline constexpr double kSkewTolerance = 1e-9;
/// Below this rotation angle exp/log use series for the Rodrigues coefficients.
inline constexpr double kSmallAngle = 1e-4;
/// Within this distance of π the logarithm reads the axis from the symmetric part.
inline constexpr double kNearPi = 1e-4;

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(const Vec3& upper) : upper_(upper) {}

  /// Reads the strictly-upper entries after checking |M + Mᵀ| <= tol elementwise.
  static SkewMatrix from_matrix(const Mat3& m, double tol = kSkewTolerance) {
    if (!m.allFinite()) throw Error(ErrorCode::NotSkew, "matrix has non-finite entries");
    const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
      throw Error(ErrorCode::NotSkew, "max |M + M^T| = " + std::to_string(asym));
    }
    return SkewMatrix(Vec3(m(0, 1), m(0, 2), m(1, 2)));
  }

  const Vec3& upper() const { return upper_; }

  Mat3 matrix() const {
    Mat3 m;
    // clang-format off
    m <<            0,  upper_[0],  upper_[1],
           -upper_[0],          0,  upper_[2],
           -upper_[1], -upper_[2],          0;
    // clang-format on
    return m;
  }

  /// Rotation angle when this is the generator of a rotation.
  double angle() const { return upper_.norm(); }

  SkewMatrix operator*(double s) const { return SkewMatrix(upper_ * s); }
  SkewMatrix operator/(double s) const { return SkewMatrix(upper_ / s); }

  friend bool operator==(const SkewMatrix& lhs, const SkewMatrix& rhs) {
    return lhs.upper_ == rhs.upper_;
  }

 private:
  Vec3 upper_ = Vec3::Zero();
};

class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::Identity()) {}

  static bool satisfies_invariants(const Mat3& m, double tol = kRotationTolerance) {
    if (!m.allFinite()) return false;
    const double ortho = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
    return ortho <= tol && std::abs(m.determinant() - 1.0) <= tol;
  }

  static RotationMatrix from_matrix(const Mat3& m, double tol = kRotationTolerance) {
    if (!satisfies_invariants(m, tol)) {
      throw Error(ErrorCode::NotRotation, "matrix is not special orthogonal");
    }
    return RotationMatrix(m);
  }

  /// For matrices that are rotations by construction (closed-form products of rotations).
  static RotationMatrix unchecked(const Mat3& m) { return RotationMatrix(m); }

  const Mat3& matrix() const { return m_; }
  double operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }

  friend RotationMatrix operator*(const RotationMatrix& lhs, const RotationMatrix& rhs) {
    return RotationMatrix(lhs.m_ * rhs.m_);
  }

  friend bool operator==(const RotationMatrix& lhs, const RotationMatrix& rhs) {
    return lhs.m_ == rhs.m_;
  }

 private:
  explicit RotationMatrix(const Mat3& m) : m_(m) {}

  Mat3 m_;
};

inline SkewMatrix hat(const Vec3& v) {
  if (!all_finite(v)) throw Error(ErrorCode::InvalidInput, "hat: non-finite component");
  return SkewMatrix(v);
}

inline Vec3 vee(const SkewMatrix& omega) { return omega.upper(); }

inline Vec3 vee(const Mat3& m, double tol = kSkewTolerance) {
  return SkewMatrix::from_matrix(m, tol).upper();
}

/// Rodrigues formula R = I + (sin θ / θ) Ω + ((1 - cos θ) / θ²) Ω².
inline RotationMatrix exp_so3(const SkewMatrix& omega) {
  if (!all_finite(omega.upper())) {
    throw Error(ErrorCode::InvalidInput, "exp_so3: non-finite generator");
  }
  const Mat3 w = omega.matrix();
  const double theta = omega.angle();
  double a = 0.0;
  double b = 0.0;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
  } else {
    const double half_sin = std::sin(0.5 * theta);
    a = std::sin(theta) / theta;
    b = 2.0 * half_sin * half_sin / (theta * theta);
  }
  return RotationMatrix::unchecked(Mat3::Identity() + a * w + b * w * w);
}

struct LogResult {
  SkewMatrix omega;
  double angle = 0.0;
  /// Set when the rotation is a half turn and the axis sign came from the tie-break.
  bool tie_break = false;
};

namespace detail {

// Cross-product hat of a unit axis scaled by angle, returned in the upper-triangular layout.
inline SkewMatrix from_axis_angle(const Vec3& axis, double angle) {
  const Vec3 r = axis * angle;
  // [r]x has (0,1) = -r_z, (0,2) = r_y, (1,2) = -r_x.
  return SkewMatrix(Vec3(-r.z(), r.y(), -r.x()));
}

}  // namespace detail

/// Principal logarithm with the angle in [0, π]. At exactly π the axis is
/// read from (R + Rᵀ)/2 and its sign chosen so the largest-magnitude
/// component is non-negative.
inline LogResult log_so3_detail(const Mat3& r) {
  const double tr = r.trace();
  if (!(tr >= -1.0 - 1e-6 && tr <= 3.0 + 1e-6) || !r.allFinite()) {
    throw Error(ErrorCode::NotRotation, "log_so3: trace " + std::to_string(tr) + " out of range");
  }
  const Mat3 anti = 0.5 * (r - r.transpose());
  // Standard axis scaled by sin θ.
  const Vec3 sin_axis(anti(2, 1), anti(0, 2), anti(1, 0));
  const double s = sin_axis.norm();
  const double c = std::clamp(0.5 * (tr - 1.0), -1.0, 1.0);
  const double theta = std::atan2(s, c);

  LogResult out;
  out.angle = theta;
  if (theta < kSmallAngle) {
    const double scale = 1.0 + theta * theta / 6.0;
    out.omega = SkewMatrix(Vec3(anti(0, 1), anti(0, 2), anti(1, 2)) * scale);
    return out;
  }
  if (std::numbers::pi - theta > kNearPi) {
    out.omega = SkewMatrix(Vec3(anti(0, 1), anti(0, 2), anti(1, 2)) * (theta / s));
    return out;
  }

  // (R + Rᵀ)/2 = cos θ I + (1 - cos θ) a aᵀ
  const Mat3 sym = 0.5 * (r + r.transpose());
  const Mat3 outer = (sym - c * Mat3::Identity()) / (1.0 - c);
  Eigen::Index pivot = 0;
  outer.diagonal().maxCoeff(&pivot);
  Vec3 axis = outer.col(pivot) / std::sqrt(std::max(outer(pivot, pivot), 0.0));
  axis.normalize();

  const double along = axis.dot(sin_axis);
  if (std::abs(along) > 1e-12) {
    if (along < 0.0) axis = -axis;
  } else {
    Eigen::Index largest = 0;
    axis.cwiseAbs().maxCoeff(&largest);
    if (axis[largest] < 0.0) axis = -axis;
    out.tie_break = true;
  }
  out.omega = detail::from_axis_angle(axis, theta);
  return out;
}

inline SkewMatrix log_so3(const RotationMatrix& r) { return log_so3_detail(r.matrix()).omega; }

inline SkewMatrix log_so3(const Mat3& r) { return log_so3_detail(r).omega; }

}  // namespace hipjerk
