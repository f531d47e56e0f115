#include "lorhelix/intrinsics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "lorhelix/error.hpp"

namespace lorhelix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "cannot parse " + std::string(what) + " from '" +
                                           std::string(text) + "'");
  }
  return value;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

// --- Interval --------------------------------------------------------------

bool Interval::contains(double s) const noexcept {
  if (!std::isfinite(s)) return false;
  if (closed) return s >= lo && s <= hi;
  return s > lo && s < hi;
}

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

Interval Interval::intersect(const Interval& other) const noexcept {
  Interval r;
  r.lo = std::max(lo, other.lo);
  r.hi = std::min(hi, other.hi);
  // A closed table restricted by an open family domain is treated as open.
  r.closed = closed && other.closed;
  if (!std::isfinite(other.lo) && !std::isfinite(other.hi)) r.closed = closed;
  if (!std::isfinite(lo) && !std::isfinite(hi)) r.closed = other.closed;
  return r;
}

// --- Tabulated data --------------------------------------------------------

struct ScalarFunction::Table {
  std::vector<double> s;
  std::vector<double> v;
  std::vector<double> cumulative;  // integral from s.front() to s[i]
  boost::math::interpolators::pchip<std::vector<double>> spline;

  Table(std::vector<double> grid, std::vector<double> values)
      : s(grid), v(values), spline(std::move(grid), std::move(values)) {
    cumulative.assign(s.size(), 0.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
      cumulative[i] = cumulative[i - 1] + segment_integral(i - 1, s[i]);
    }
  }

  // The interpolant is cubic on each segment, so 15-point Kronrod is exact.
  double segment_integral(std::size_t i, double upper) const {
    if (upper == s[i]) return 0.0;
    auto f = [this](double x) { return spline(x); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, s[i], upper, 0);
  }

  std::size_t segment_of(double x) const {
    auto it = std::upper_bound(s.begin(), s.end(), x);
    if (it == s.begin()) return 0;
    const auto idx = static_cast<std::size_t>(it - s.begin()) - 1;
    return std::min(idx, s.size() - 2);
  }

  double integral_to(double x) const {
    const auto i = segment_of(x);
    return cumulative[i] + segment_integral(i, x);
  }
};

// --- ScalarFunction --------------------------------------------------------

ScalarFunction::ScalarFunction(Family f, double p, double q, Interval d)
    : family_(f), p_(p), q_(q), domain_(d) {}

ScalarFunction ScalarFunction::constant(double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "constant must be finite");
  return ScalarFunction(Family::Constant, c, 0.0, Interval{});
}

ScalarFunction ScalarFunction::rational_minus(double a, std::optional<double> numerator) {
  const double b = numerator.value_or(a);
  if (!std::isfinite(a) || a == 0.0 || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "ratminus needs a finite nonzero a");
  }
  return ScalarFunction(Family::RationalMinus, a, b, Interval{-std::abs(a), std::abs(a), false});
}

ScalarFunction ScalarFunction::rational_plus(double a, std::optional<double> numerator) {
  const double b = numerator.value_or(a);
  if (!std::isfinite(a) || a == 0.0 || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "ratplus needs a finite nonzero a");
  }
  return ScalarFunction(Family::RationalPlus, a, b, Interval{});
}

ScalarFunction ScalarFunction::reciprocal(double h) {
  if (!std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "recip needs a finite h");
  return ScalarFunction(Family::Reciprocal, h, 0.0, Interval{0.0, kInf, false});
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> s, std::vector<double> values) {
  if (s.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "tabulated grid and values differ in length");
  }
  if (s.size() < 4) throw Error(ErrorCode::InvalidArgument, "tabulated function needs >= 4 points");
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated samples must be finite");
    }
    if (i > 0 && !(s[i] > s[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated grid must be strictly increasing");
    }
    has_pos = has_pos || values[i] > 0.0;
    has_neg = has_neg || values[i] < 0.0;
  }
  if (has_pos && has_neg) {
    throw Error(ErrorCode::InvalidArgument, "tabulated function must be single-signed");
  }
  Interval d{s.front(), s.back(), true};
  ScalarFunction f(Family::Tabulated, 0.0, 0.0, d);
  f.table_ = std::make_shared<const Table>(std::move(s), std::move(values));
  return f;
}

ScalarFunction ScalarFunction::parse(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "function descriptor needs 'family:params': '" +
                                           std::string(descriptor) + "'");
  }
  const auto family = descriptor.substr(0, colon);
  const auto args = descriptor.substr(colon + 1);
  if (family == "table") return load_csv(std::filesystem::path(std::string(args)));

  std::vector<double> values;
  std::size_t start = 0;
  while (start <= args.size()) {
    const auto comma = args.find(',', start);
    const auto piece = args.substr(start, comma == std::string_view::npos ? args.npos : comma - start);
    values.push_back(parse_double(piece, "function parameter"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (values.size() < lo || values.size() > hi) {
      throw Error(ErrorCode::ParseError, "wrong parameter count in '" + std::string(descriptor) + "'");
    }
  };
  if (family == "const") {
    want(1, 1);
    return constant(values[0]);
  }
  if (family == "ratminus") {
    want(1, 2);
    return rational_minus(values[0], values.size() == 2 ? std::optional(values[1]) : std::nullopt);
  }
  if (family == "ratplus") {
    want(1, 2);
    return rational_plus(values[0], values.size() == 2 ? std::optional(values[1]) : std::nullopt);
  }
  if (family == "recip") {
    want(1, 1);
    return reciprocal(values[0]);
  }
  throw Error(ErrorCode::ParseError, "unknown function family '" + std::string(family) + "'");
}

ScalarFunction ScalarFunction::load_csv(std::istream& in) {
  std::vector<double> s;
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected two columns");
    }
    const std::string_view view(line);
    if (s.empty() && v.empty() && lineno == 1) {
      // Header row: first field does not parse as a number.
      double probe = 0.0;
      const auto first = view.substr(0, comma);
      const auto [ptr, ec] = std::from_chars(first.data(), first.data() + first.size(), probe);
      if (ec != std::errc()) continue;
    }
    s.push_back(parse_double(view.substr(0, comma), "s"));
    v.push_back(parse_double(view.substr(comma + 1), "value"));
  }
  return tabulated(std::move(s), std::move(v));
}

ScalarFunction ScalarFunction::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return load_csv(in);
}

ScalarFunction ScalarFunction::restricted_to(const Interval& d) const {
  ScalarFunction f = *this;
  f.domain_ = domain_.intersect(d);
  if (!(f.domain_.lo < f.domain_.hi)) throw Error(ErrorCode::OutOfDomain, "empty domain");
  return f;
}

void ScalarFunction::require_in_domain(double s) const {
  if (!domain_.contains(s)) {
    throw Error(ErrorCode::OutOfDomain,
                "s = " + shortest(s) + " is outside the domain of " + descriptor());
  }
}

double ScalarFunction::operator()(double s) const {
  require_in_domain(s);
  switch (family_) {
    case Family::Constant: return p_;
    case Family::RationalMinus: return q_ / (p_ * p_ - s * s);
    case Family::RationalPlus: return q_ / (p_ * p_ + s * s);
    case Family::Reciprocal: return p_ / s;
    case Family::Tabulated: return table_->spline(s);
  }
  return 0.0;
}

double ScalarFunction::derivative(double s) const {
  require_in_domain(s);
  switch (family_) {
    case Family::Constant: return 0.0;
    case Family::RationalMinus: {
      const double d = p_ * p_ - s * s;
      return 2.0 * q_ * s / (d * d);
    }
    case Family::RationalPlus: {
      const double d = p_ * p_ + s * s;
      return -2.0 * q_ * s / (d * d);
    }
    case Family::Reciprocal: return -p_ / (s * s);
    case Family::Tabulated: return table_->spline.prime(s);
  }
  return 0.0;
}

double ScalarFunction::antiderivative(double s) const {
  require_in_domain(s);
  switch (family_) {
    case Family::Constant: return p_ * s;
    case Family::RationalMinus: return q_ / p_ * std::atanh(s / p_);
    case Family::RationalPlus: return q_ / p_ * std::atan(s / p_);
    case Family::Reciprocal: return p_ * std::log(s);
    case Family::Tabulated: return table_->integral_to(s);
  }
  return 0.0;
}

double ScalarFunction::inverse_antiderivative(double value) const {
  auto out_of_range = [&] {
    return Error(ErrorCode::OutOfRange,
                 "antiderivative value " + shortest(value) + " is not reached by " + descriptor());
  };
  double s = 0.0;
  switch (family_) {
    case Family::Constant:
      if (p_ == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot invert a zero constant");
      s = value / p_;
      break;
    case Family::RationalMinus:
      s = p_ * std::tanh(value * p_ / q_);
      break;
    case Family::RationalPlus: {
      const double u = value * p_ / q_;
      if (!(std::abs(u) < std::numbers::pi / 2)) throw out_of_range();
      s = p_ * std::tan(u);
      break;
    }
    case Family::Reciprocal:
      s = std::exp(value / p_);
      break;
    case Family::Tabulated: {
      const auto& t = *table_;
      const double total = t.cumulative.back();
      const bool increasing = total >= 0.0;
      const double lo = increasing ? 0.0 : total;
      const double hi = increasing ? total : 0.0;
      if (value < lo || value > hi) throw out_of_range();
      // Locate the segment whose cumulative range brackets the value.
      std::size_t i = 0;
      while (i + 2 < t.s.size() &&
             (increasing ? t.cumulative[i + 1] < value : t.cumulative[i + 1] > value)) {
        ++i;
      }
      auto f = [&](double x) { return t.cumulative[i] + t.segment_integral(i, x) - value; };
      const double fa = f(t.s[i]);
      const double fb = f(t.s[i + 1]);
      if (fa == 0.0) {
        s = t.s[i];
      } else if (fb == 0.0) {
        s = t.s[i + 1];
      } else {
        std::uintmax_t iters = 200;
        const auto tol = boost::math::tools::eps_tolerance<double>(52);
        const auto [a, b] = boost::math::tools::toms748_solve(f, t.s[i], t.s[i + 1], fa, fb, tol, iters);
        s = 0.5 * (a + b);
      }
      break;
    }
  }
  if (!domain_.contains(s)) throw out_of_range();
  return s;
}

std::string ScalarFunction::descriptor() const {
  switch (family_) {
    case Family::Constant: return "const:" + shortest(p_);
    case Family::RationalMinus:
      return q_ == p_ ? "ratminus:" + shortest(p_) : "ratminus:" + shortest(p_) + "," + shortest(q_);
    case Family::RationalPlus:
      return q_ == p_ ? "ratplus:" + shortest(p_) : "ratplus:" + shortest(p_) + "," + shortest(q_);
    case Family::Reciprocal: return "recip:" + shortest(p_);
    case Family::Tabulated:
      return "table:" + std::to_string(table_->s.size()) + "pts[" + shortest(table_->s.front()) +
             "," + shortest(table_->s.back()) + "]";
  }
  return "?";
}

// --- theta -----------------------------------------------------------------

double default_reference(const ScalarFunction& kappa) {
  const auto& d = kappa.domain();
  if (d.contains(0.0)) return 0.0;
  if (d.lo == 0.0 && d.contains(1.0) && !std::isfinite(d.hi)) return 1.0;
  if (d.bounded()) return 0.5 * (d.lo + d.hi);
  if (std::isfinite(d.lo)) return d.lo + 1.0;
  return d.hi - 1.0;
}

double theta_of_s(const ScalarFunction& kappa, double s, std::optional<double> reference) {
  const double ref = reference.value_or(default_reference(kappa));
  if (!kappa.domain().contains(s)) {
    throw Error(ErrorCode::OutOfDomain, "theta_of_s: s = " + shortest(s) + " outside domain");
  }
  return kappa.antiderivative(s) - kappa.antiderivative(ref);
}

double s_of_theta(const ScalarFunction& kappa, double theta, std::optional<double> reference) {
  const double ref = reference.value_or(default_reference(kappa));
  if (!std::isfinite(theta)) throw Error(ErrorCode::OutOfRange, "theta is not finite");
  return kappa.inverse_antiderivative(theta + kappa.antiderivative(ref));
}

// --- IntrinsicPair / ratio -------------------------------------------------

double IntrinsicPair::theta_reference() const { return reference.value_or(default_reference(kappa)); }

std::vector<double> domain_scan(const Interval& d, std::size_t count) {
  double lo = d.lo;
  double hi = d.hi;
  bool closed = d.closed;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -5.0;
    hi = 5.0;
    closed = true;
  } else if (!std::isfinite(hi)) {
    hi = lo + 10.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 10.0;
  }
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = closed ? static_cast<double>(k) / static_cast<double>(count - 1)
                            : static_cast<double>(k + 1) / static_cast<double>(count + 1);
    pts[k] = lo + (hi - lo) * t;
  }
  return pts;
}

void IntrinsicPair::validate() const {
  if (epsilon != 1 && epsilon != -1) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
  }
  const auto d = domain();
  if (!(d.lo < d.hi)) throw Error(ErrorCode::OutOfDomain, "kappa and tau domains do not overlap");
  for (double s : domain_scan(d)) {
    if (!(kappa(s) > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "kappa must be positive on the domain (fails at s = " +
                                                  shortest(s) + ")");
    }
  }
}

std::optional<double> ratio(const IntrinsicPair& pair) {
  const auto pts = domain_scan(pair.domain());
  double lo = kInf;
  double hi = -kInf;
  for (double s : pts) {
    const double r = pair.tau(s) / pair.kappa(s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double ref = pair.theta_reference();
  const double at_ref = pair.tau(ref) / pair.kappa(ref);
  if (hi - lo > 1e-10 * std::max(1.0, std::abs(at_ref))) return std::nullopt;
  return at_ref;
}

}  // namespace lorhelix
