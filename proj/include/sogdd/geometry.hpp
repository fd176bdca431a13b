/**
 * @file geometry.hpp
 * @brief Planar transforms used to generate deformed images and map ground truth.
 */
#pragma once

#include <array>
#include <string_view>

namespace sogdd {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(const Point2& a, const Point2& b) noexcept;

enum class TransformKind { identity, rotation, iso_scale, aniso_scale, shear };

std::string_view to_string(TransformKind kind) noexcept;

/// p' = linear * p + translation, in pixel-centre coordinates.
class AffineTransform {
 public:
  /// Throws ParameterError when |det(linear)| <= 1e-12.
  AffineTransform(std::array<double, 4> linear, Point2 translation,
                  TransformKind kind = TransformKind::identity);

  static AffineTransform identity();
  static AffineTransform rotation(double radians);
  static AffineTransform iso_scale(double factor);
  static AffineTransform aniso_scale(double sx, double sy);
  /// x' = x + c*y
  static AffineTransform shear(double c);

  Point2 apply(const Point2& p) const noexcept;
  AffineTransform inverse() const;
  /// Same linear part, translation increased by `shift`.
  AffineTransform translated(const Point2& shift) const;

  const std::array<double, 4>& linear() const noexcept { return linear_; }
  const Point2& translation() const noexcept { return translation_; }
  TransformKind kind() const noexcept { return kind_; }
  double determinant() const noexcept { return linear_[0] * linear_[3] - linear_[1] * linear_[2]; }

 private:
  std::array<double, 4> linear_;  // row-major 2x2
  Point2 translation_;
  TransformKind kind_;
};

/// 3x3 projective transform, normalised so that H[2][2] == 1.
class Homography {
 public:
  /// Throws ParameterError for a singular matrix or H[2][2] == 0.
  explicit Homography(std::array<double, 9> rowmajor);

  static Homography identity();
  static Homography from_affine(const AffineTransform& t);

  /// (u', v', w') = H (u, v, 1); returns (u'/w', v'/w').
  /// Throws ProjectionError when |w'| <= 1e-12.
  Point2 project(const Point2& p) const;

  double operator()(int row, int col) const noexcept { return m_[row * 3 + col]; }
  const std::array<double, 9>& matrix() const noexcept { return m_; }

 private:
  std::array<double, 9> m_;
};

}  // namespace sogdd
