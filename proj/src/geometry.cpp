#include "sogdd/geometry.hpp"

#include <cmath>

#include "sogdd/errors.hpp"

namespace sogdd {

namespace {
constexpr double kSingularTolerance = 1e-12;
}

double distance(const Point2& a, const Point2& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::identity: return "identity";
    case TransformKind::rotation: return "rotation";
    case TransformKind::iso_scale: return "iso-scale";
    case TransformKind::aniso_scale: return "aniso-scale";
    case TransformKind::shear: return "shear";
  }
  return "unknown";
}

AffineTransform::AffineTransform(std::array<double, 4> linear, Point2 translation,
                                 TransformKind kind)
    : linear_(linear), translation_(translation), kind_(kind) {
  if (!(std::abs(determinant()) > kSingularTolerance)) {
    throw ParameterError("affine transform is not invertible");
  }
}

AffineTransform AffineTransform::identity() { return {{1, 0, 0, 1}, {}, TransformKind::identity}; }

AffineTransform AffineTransform::rotation(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {{c, -s, s, c}, {}, TransformKind::rotation};
}

AffineTransform AffineTransform::iso_scale(double factor) {
  return {{factor, 0, 0, factor}, {}, TransformKind::iso_scale};
}

AffineTransform AffineTransform::aniso_scale(double sx, double sy) {
  return {{sx, 0, 0, sy}, {}, TransformKind::aniso_scale};
}

AffineTransform AffineTransform::shear(double c) {
  return {{1, c, 0, 1}, {}, TransformKind::shear};
}

Point2 AffineTransform::apply(const Point2& p) const noexcept {
  return {linear_[0] * p.x + linear_[1] * p.y + translation_.x,
          linear_[2] * p.x + linear_[3] * p.y + translation_.y};
}

AffineTransform AffineTransform::inverse() const {
  const double det = determinant();
  const std::array<double, 4> inv{linear_[3] / det, -linear_[1] / det, -linear_[2] / det,
                                  linear_[0] / det};
  const Point2 t{-(inv[0] * translation_.x + inv[1] * translation_.y),
                 -(inv[2] * translation_.x + inv[3] * translation_.y)};
  return {inv, t, kind_};
}

AffineTransform AffineTransform::translated(const Point2& shift) const {
  return {linear_, {translation_.x + shift.x, translation_.y + shift.y}, kind_};
}

Homography::Homography(std::array<double, 9> m) : m_(m) {
  if (m_[8] == 0.0 || !std::isfinite(m_[8])) {
    throw ParameterError("homography: H[2][2] must be nonzero");
  }
  const double scale = m_[8];
  for (double& v : m_) v /= scale;
  const double det = m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) -
                     m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
                     m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  if (!(std::abs(det) > kSingularTolerance)) {
    throw ParameterError("homography is not invertible");
  }
}

Homography Homography::identity() { return Homography({1, 0, 0, 0, 1, 0, 0, 0, 1}); }

Homography Homography::from_affine(const AffineTransform& t) {
  const auto& a = t.linear();
  return Homography({a[0], a[1], t.translation().x, a[2], a[3], t.translation().y, 0, 0, 1});
}

Point2 Homography::project(const Point2& p) const {
  const double u = m_[0] * p.x + m_[1] * p.y + m_[2];
  const double v = m_[3] * p.x + m_[4] * p.y + m_[5];
  const double w = m_[6] * p.x + m_[7] * p.y + m_[8];
  if (std::abs(w) <= kSingularTolerance) {
    throw ProjectionError("homography maps point to infinity");
  }
  return {u / w, v / w};
}

}  // namespace sogdd
