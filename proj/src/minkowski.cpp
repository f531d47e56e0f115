#include "lorhelix/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lorhelix/error.hpp"

namespace lorhelix {

LorentzVector::LorentzVector(double x1, double x2, double x3) : c_{x1, x2, x3} {
  if (!std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(x3)) {
    throw Error(ErrorCode::NonFinite, "LorentzVector component is not finite");
  }
}

double LorentzVector::coordinate_norm() const noexcept {
  return std::sqrt(c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2]);
}

LorentzVector& LorentzVector::operator+=(const LorentzVector& o) {
  return *this = LorentzVector(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]);
}

LorentzVector& LorentzVector::operator-=(const LorentzVector& o) {
  return *this = LorentzVector(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2]);
}

LorentzVector& LorentzVector::operator*=(double k) {
  return *this = LorentzVector(k * c_[0], k * c_[1], k * c_[2]);
}

LorentzVector operator+(LorentzVector a, const LorentzVector& b) { return a += b; }
LorentzVector operator-(LorentzVector a, const LorentzVector& b) { return a -= b; }
LorentzVector operator*(double k, LorentzVector v) { return v *= k; }
LorentzVector operator*(LorentzVector v, double k) { return v *= k; }
LorentzVector operator/(LorentzVector v, double k) { return v *= 1.0 / k; }

std::ostream& operator<<(std::ostream& os, const LorentzVector& v) {
  return os << '(' << v.x1() << ", " << v.x2() << ", " << v.x3() << ')';
}

double metric(const LorentzVector& u, const LorentzVector& v) noexcept {
  return -u.x1() * v.x1() + u.x2() * v.x2() + u.x3() * v.x3();
}

double pseudo_norm(const LorentzVector& v) noexcept { return std::sqrt(std::abs(metric(v, v))); }

LorentzVector lorentz_cross(const LorentzVector& u, const LorentzVector& v) {
  return {u.x2() * v.x3() - u.x3() * v.x2(),
          u.x1() * v.x3() - u.x3() * v.x1(),
          -(u.x1() * v.x2() - u.x2() * v.x1())};
}

double gram_determinant(const LorentzVector& u, const LorentzVector& v) noexcept {
  const double uv = metric(u, v);
  return metric(u, u) * metric(v, v) - uv * uv;
}

CausalCharacter causal_character(const LorentzVector& v, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "causal tolerance must be positive");
  const double q = metric(v, v);
  if (v.is_zero() || q > tol) return {Causal::Spacelike, q};
  if (q < -tol) return {Causal::Timelike, q};
  return {Causal::Null, q};
}

const char* to_string(Causal c) noexcept {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Timelike: return "timelike";
    case Causal::Null: return "null";
  }
  return "?";
}

const char* to_string(AngleCase c) noexcept {
  switch (c) {
    case AngleCase::SpacelikeSpan: return "spacelike-span";
    case AngleCase::TimelikeSpanSpacelikePair: return "timelike-span-spacelike-pair";
    case AngleCase::SpacelikeTimelikePair: return "spacelike-timelike-pair";
    case AngleCase::TimelikePair: return "timelike-pair";
  }
  return "?";
}

LorentzAngle lorentz_angle(const LorentzVector& x, const LorentzVector& y, double tol) {
  if (x.is_zero() || y.is_zero()) throw Error(ErrorCode::NullInput, "lorentz_angle of a zero vector");
  const auto cx = causal_character(x, tol);
  const auto cy = causal_character(y, tol);
  if (cx.tag == Causal::Null || cy.tag == Causal::Null) {
    throw Error(ErrorCode::NullInput, "lorentz_angle is undefined for null vectors");
  }

  const double g = metric(x, y);
  const double norms = pseudo_norm(x) * pseudo_norm(y);
  const double ratio = std::abs(g) / norms;

  if (cx.tag == Causal::Spacelike && cy.tag == Causal::Spacelike) {
    // g(X x Y, X x Y) = -Gram; a spacelike normal means a timelike plane.
    const LorentzVector normal = lorentz_cross(x, y);
    const double scale = std::max(1.0, x.coordinate_norm() * x.coordinate_norm() *
                                           y.coordinate_norm() * y.coordinate_norm());
    if (metric(normal, normal) > tol * scale) {
      return {std::acosh(std::max(1.0, ratio)), AngleCase::TimelikeSpanSpacelikePair};
    }
    return {std::acos(std::min(1.0, ratio)), AngleCase::SpacelikeSpan};
  }
  if (cx.tag == Causal::Timelike && cy.tag == Causal::Timelike) {
    if (g > 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "timelike vectors lie in opposite time cones; no angle is defined");
    }
    return {std::acosh(std::max(1.0, -g / norms)), AngleCase::TimelikePair};
  }
  return {std::asinh(ratio), AngleCase::SpacelikeTimelikePair};
}

}  // namespace lorhelix
