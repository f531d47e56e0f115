#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lorhelix {

/// A real interval, open at infinite ends and at poles.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool closed = false;

  bool contains(double s) const noexcept;
  bool bounded() const noexcept;
  Interval intersect(const Interval& other) const noexcept;
};

enum class Family { Constant, RationalMinus, RationalPlus, Reciprocal, Tabulated };

/// Curvature or torsion as a function of arclength.
///
/// Named families:
///   Constant(c)            c
///   RationalMinus(a, b)    b / (a^2 - s^2)   on |s| < |a|   (b defaults to a)
///   RationalPlus(a, b)     b / (a^2 + s^2)                  (b defaults to a)
///   Reciprocal(h)          h / s             on s > 0
///   Tabulated              monotone cubic Hermite (PCHIP) through samples
///
/// Values are immutable; copies share tabulated data.
class ScalarFunction {
 public:
  static ScalarFunction constant(double c);
  static ScalarFunction rational_minus(double a, std::optional<double> numerator = {});
  static ScalarFunction rational_plus(double a, std::optional<double> numerator = {});
  static ScalarFunction reciprocal(double h);
  static ScalarFunction tabulated(std::vector<double> s, std::vector<double> values);

  /// Parses "const:c", "ratminus:a[,b]", "ratplus:a[,b]", "recip:h" or "table:<csv path>".
  static ScalarFunction parse(std::string_view descriptor);
  /// Two-column CSV (s,value); header optional; s strictly increasing.
  static ScalarFunction load_csv(std::istream& in);
  static ScalarFunction load_csv(const std::filesystem::path& path);

  /// Restricts the domain to its intersection with `d`.
  ScalarFunction restricted_to(const Interval& d) const;

  double operator()(double s) const;
  double derivative(double s) const;

  Family family() const noexcept { return family_; }
  const Interval& domain() const noexcept { return domain_; }
  std::string descriptor() const;

  /// Antiderivative with the family's canonical constant (0 at s = 0, or at
  /// s = 1 for Reciprocal, or at the first node for Tabulated).
  double antiderivative(double s) const;
  /// Solves antiderivative(s) = value on the domain. Throws Error(OutOfRange).
  double inverse_antiderivative(double value) const;

 private:
  struct Table;

  ScalarFunction(Family f, double p, double q, Interval d);

  void require_in_domain(double s) const;

  Family family_;
  double p_ = 0.0;  // c, a or h
  double q_ = 0.0;  // numerator b for the rational families
  Interval domain_;
  std::shared_ptr<const Table> table_;
};

/// The default reference point of theta: 0 if in the domain, 1 for domains
/// (0, inf), the midpoint otherwise.
double default_reference(const ScalarFunction& kappa);

/// theta(s) = integral of kappa from the reference point to s.
double theta_of_s(const ScalarFunction& kappa, double s, std::optional<double> reference = {});

/// Inverse of theta_of_s. Throws Error(OutOfRange) for unreachable theta.
double s_of_theta(const ScalarFunction& kappa, double theta, std::optional<double> reference = {});

/// Intrinsic equations of a spacelike curve plus the sign epsilon = g(N, N).
struct IntrinsicPair {
  ScalarFunction kappa;
  ScalarFunction tau;
  int epsilon = -1;
  std::optional<double> reference;

  double theta_reference() const;
  Interval domain() const noexcept { return kappa.domain().intersect(tau.domain()); }
  /// Throws unless epsilon is +-1 and kappa > 0 across a domain scan.
  void validate() const;
};

/// 1001 strictly interior points of `d` (endpoints included when closed).
/// Unbounded domains are clipped to a window of width 10 around the finite end or 0.
std::vector<double> domain_scan(const Interval& d, std::size_t count = 1001);

/// tau / kappa if it is constant within 1e-10 across the domain scan,
/// std::nullopt otherwise.
std::optional<double> ratio(const IntrinsicPair& pair);

}  // namespace lorhelix
