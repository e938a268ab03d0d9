#pragma once

#include <cmath>
#include <numbers>

namespace hetbeam {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle into [0, 360).
inline double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

/// Signed smallest difference a - b, in (-180, 180].
inline double angle_diff_deg(double a, double b) {
  double d = std::fmod(a - b, 360.0);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

/// Unit vector for a math-convention angle (counter-clockwise from +x).
inline Vec2 unit_from_angle_deg(double deg) {
  const double r = deg_to_rad(deg);
  return {std::cos(r), std::sin(r)};
}

/// Unit vector for a compass bearing (clockwise from +y), the convention of
/// the motion model: displacement = chord * (sin b, cos b).
inline Vec2 unit_from_bearing_deg(double deg) {
  const double r = deg_to_rad(deg);
  return {std::sin(r), std::cos(r)};
}

}  // namespace hetbeam
