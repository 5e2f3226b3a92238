#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "hipjerk/error.hpp"
#include "hipjerk/so3.hpp"

namespace hipjerk {

/// One orientation sample as emitted by the device, in degrees.
/// Nominal ranges: yaw [0, 360), pitch [-180, 180), roll [-90, 90].
struct AngleTriple {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;

  bool is_finite() const {
    return std::isfinite(yaw) && std::isfinite(pitch) && std::isfinite(roll);
  }

  bool in_nominal_range() const {
    return yaw >= 0.0 && yaw < 360.0 && pitch >= -180.0 && pitch < 180.0 && roll >= -90.0 &&
           roll <= 90.0;
  }

  friend bool operator==(const AngleTriple&, const AngleTriple&) = default;
};

enum class Axis { X = 0, Y = 1, Z = 2 };

enum class EulerFrame {
  Intrinsic,  // each rotation about the already-rotated body axis
  Extrinsic,  // each rotation about the fixed reference axis
};

/// Axis order for the (yaw, pitch, roll) triple. The default is intrinsic
/// Z-Y'-X'': yaw about Z, then pitch about the new Y, then roll about the new X.
class EulerConvention {
 public:
  constexpr EulerConvention() = default;

  EulerConvention(std::array<Axis, 3> axes, EulerFrame frame) : axes_(axes), frame_(frame) {
    if (axes[0] == axes[1] || axes[1] == axes[2]) {
      throw Error(ErrorCode::InvalidInput, "Euler convention repeats an axis consecutively");
    }
  }

  /// Accepts "ZYX", "intrinsic:ZYX" or "extrinsic:xyz" (case-insensitive).
  static EulerConvention parse(std::string_view text) {
    EulerFrame frame = EulerFrame::Intrinsic;
    std::string lowered;
    for (char ch : text) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    std::string_view rest = lowered;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      const auto prefix = rest.substr(0, colon);
      if (prefix == "intrinsic") {
        frame = EulerFrame::Intrinsic;
      } else if (prefix == "extrinsic") {
        frame = EulerFrame::Extrinsic;
      } else {
        throw Error(ErrorCode::InvalidInput, "unknown Euler frame '" + std::string(prefix) + "'");
      }
      rest = rest.substr(colon + 1);
    }
    if (rest.size() != 3) {
      throw Error(ErrorCode::InvalidInput, "Euler convention needs three axes: '" + std::string(text) + "'");
    }
    std::array<Axis, 3> axes{};
    for (std::size_t i = 0; i < 3; ++i) {
      switch (rest[i]) {
        case 'x': axes[i] = Axis::X; break;
        case 'y': axes[i] = Axis::Y; break;
        case 'z': axes[i] = Axis::Z; break;
        default:
          throw Error(ErrorCode::InvalidInput, "bad axis letter in '" + std::string(text) + "'");
      }
    }
    return EulerConvention(axes, frame);
  }

  /// All twelve axis orders in both frames.
  static std::array<EulerConvention, 24> all() {
    constexpr std::array<std::string_view, 12> orders = {"XYZ", "XZY", "YXZ", "YZX", "ZXY", "ZYX",
                                                         "XYX", "XZX", "YXY", "YZY", "ZXZ", "ZYZ"};
    std::array<EulerConvention, 24> out{};
    for (std::size_t i = 0; i < orders.size(); ++i) {
      out[2 * i] = parse("intrinsic:" + std::string(orders[i]));
      out[2 * i + 1] = parse("extrinsic:" + std::string(orders[i]));
    }
    return out;
  }

  std::string name() const {
    std::string s = frame_ == EulerFrame::Intrinsic ? "intrinsic:" : "extrinsic:";
    for (Axis a : axes_) s.push_back("XYZ"[static_cast<int>(a)]);
    return s;
  }

  const std::array<Axis, 3>& axes() const { return axes_; }
  EulerFrame frame() const { return frame_; }
  bool is_tait_bryan() const { return axes_[0] != axes_[2]; }

  friend bool operator==(const EulerConvention&, const EulerConvention&) = default;

 private:
  std::array<Axis, 3> axes_ = {Axis::Z, Axis::Y, Axis::X};
  EulerFrame frame_ = EulerFrame::Intrinsic;
};

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline RotationMatrix axis_rotation(Axis axis, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Mat3 m;
  switch (axis) {
    case Axis::X: m << 1, 0, 0, 0, c, -s, 0, s, c; break;
    case Axis::Y: m << c, 0, s, 0, 1, 0, -s, 0, c; break;
    case Axis::Z: m << c, -s, 0, s, c, 0, 0, 0, 1; break;
  }
  return RotationMatrix::unchecked(m);
}

inline RotationMatrix euler_to_rotation(const AngleTriple& angles,
                                        const EulerConvention& convention = {}) {
  if (!angles.is_finite()) throw Error(ErrorCode::InvalidInput, "euler_to_rotation: non-finite angle");
  const auto& ax = convention.axes();
  const RotationMatrix first = axis_rotation(ax[0], angles.yaw * kDegToRad);
  const RotationMatrix second = axis_rotation(ax[1], angles.pitch * kDegToRad);
  const RotationMatrix third = axis_rotation(ax[2], angles.roll * kDegToRad);
  if (convention.frame() == EulerFrame::Intrinsic) return first * second * third;
  return third * second * first;
}

struct EulerDecomposition {
  AngleTriple angles;
  /// Middle angle at a singular configuration; only the composite rotation is meaningful.
  bool gimbal_lock = false;
};

namespace detail {

// Decompose R = R_i(a) R_j(b) R_k(c) for intrinsic order (i, j, k), radians.
inline std::array<double, 3> intrinsic_angles(const Mat3& r, int i, int j, int k_last,
                                              bool& gimbal) {
  const bool tait_bryan = i != k_last;
  const int k = 3 - i - j;  // the axis not among {i, j}
  // +1 when (i, j, k) is a cyclic permutation of (0, 1, 2).
  const double eps = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  constexpr double lock_cos = 1e-6 * kDegToRad;
  if (tait_bryan) {
    const double cb = std::hypot(r(i, i), r(i, j));
    b = std::atan2(eps * r(i, k), cb);
    gimbal = cb < lock_cos;
    if (!gimbal) {
      a = std::atan2(-eps * r(j, k), r(k, k));
      c = std::atan2(-eps * r(i, j), r(i, i));
    }
  } else {
    const double sb = std::hypot(r(i, j), r(i, k));
    b = std::atan2(sb, r(i, i));
    gimbal = sb < lock_cos;
    if (!gimbal) {
      a = std::atan2(r(j, i), -eps * r(k, i));
      c = std::atan2(r(i, j), eps * r(i, k));
    }
  }
  if (gimbal) {
    // c := 0, so R = R_i(a) R_j(b) and column j is R_i(a) e_j.
    a = std::atan2(eps * r(k, j), r(j, j));
    c = 0.0;
  }
  return {a, b, c};
}

inline double wrap_degrees_0_360(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w = 0.0;
  return w;
}

}  // namespace detail

/// Inverse of euler_to_rotation. Yaw is reported in [0, 360).
inline EulerDecomposition rotation_to_euler(const RotationMatrix& rotation,
                                            const EulerConvention& convention = {}) {
  const auto& ax = convention.axes();
  const int i0 = static_cast<int>(ax[0]);
  const int i1 = static_cast<int>(ax[1]);
  const int i2 = static_cast<int>(ax[2]);
  EulerDecomposition out;
  std::array<double, 3> rad{};
  if (convention.frame() == EulerFrame::Intrinsic) {
    rad = detail::intrinsic_angles(rotation.matrix(), i0, i1, i2, out.gimbal_lock);
  } else {
    // Extrinsic (i, j, k) with (a, b, c) equals intrinsic (k, j, i) with (c, b, a).
    const auto rev = detail::intrinsic_angles(rotation.matrix(), i2, i1, i0, out.gimbal_lock);
    rad = {rev[2], rev[1], rev[0]};
  }
  out.angles = {detail::wrap_degrees_0_360(rad[0] * kRadToDeg), rad[1] * kRadToDeg,
                rad[2] * kRadToDeg};
  return out;
}

}  // namespace hipjerk
