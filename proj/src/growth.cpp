// Copyright 2026 The Liouville Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liouville/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

// LadderSpline pieces on [n, n+1]: linear 7n*x + n^3 up to the midpoint,
// then a C1 monotone Hermite cubic meeting the next linear piece with
// matching slope.  Midpoint slopes stay far below the secant slope
// 6n^2 + 27n + 16, so the cubic is monotone by the Fritsch-Carlson box.
struct LadderPiece {
  double n;
  double y0, y1, m0, m1;  // Hermite data on [n + 1/2, n + 1]
};

LadderPiece ladder_piece(double n) {
  LadderPiece p;
  p.n = n;
  p.y0 = 7.0 * n * (n + 0.5) + n * n * n;
  double n1 = n + 1.0;
  p.y1 = 7.0 * n1 * n1 + n1 * n1 * n1;
  p.m0 = 7.0 * n;
  p.m1 = 7.0 * n1;
  return p;
}

double ladder_value(double x) {
  double n = std::floor(x);
  if (x >= n + 1.0) n += 1.0;  // guard against floor(x) == x - 1 roundoff
  if (n < 1.0) n = 1.0;
  if (x <= n + 0.5) return 7.0 * n * x + n * n * n;
  LadderPiece p = ladder_piece(n);
  const double L = 0.5;
  double t = (x - (n + 0.5)) / L;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  double h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t);
  double h11 = t * t * (t - 1);
  return h00 * p.y0 + h10 * L * p.m0 + h01 * p.y1 + h11 * L * p.m1;
}

double ladder_derivative(double x) {
  double n = std::floor(x);
  if (x >= n + 1.0) n += 1.0;
  if (n < 1.0) n = 1.0;
  if (x <= n + 0.5) return 7.0 * n;
  LadderPiece p = ladder_piece(n);
  const double L = 0.5;
  double t = (x - (n + 0.5)) / L;
  double d00 = 6 * t * (t - 1);
  double d10 = (1 - t) * (1 - 3 * t);
  double d01 = 6 * t * (1 - t);
  double d11 = t * (3 * t - 2);
  return (d00 * p.y0 + d01 * p.y1) / L + d10 * p.m0 + d11 * p.m1;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Power: return "power";
    case Family::PowerLog: return "powerlog";
    case Family::LadderSpline: return "ladderspline";
    case Family::Tabulated: return "tabulated";
  }
  return "unknown";
}

GrowthFunction GrowthFunction::power(double C, double k) {
  if (!(C > 0.0) || !(k >= 0.0))
    throw std::invalid_argument("power: need C > 0 and k >= 0");
  GrowthFunction g;
  g.family_ = Family::Power;
  g.C_ = C;
  g.p_ = k;
  return g;
}

GrowthFunction GrowthFunction::powerlog(double C, double p, double q) {
  if (!(C > 0.0) || !(p >= 0.0))
    throw std::invalid_argument("powerlog: need C > 0 and p >= 0");
  GrowthFunction g;
  g.family_ = Family::PowerLog;
  g.C_ = C;
  g.p_ = p;
  g.q_ = q;
  return g;
}

GrowthFunction GrowthFunction::ladder_spline() {
  GrowthFunction g;
  g.family_ = Family::LadderSpline;
  return g;
}

GrowthFunction GrowthFunction::tabulated(std::vector<double> xs,
                                         std::vector<double> ys) {
  GrowthFunction g;
  g.family_ = Family::Tabulated;
  for (double y : ys)
    if (!(y >= 0.0))
      throw std::invalid_argument("tabulated: values must be nonnegative");
  g.table_ = std::make_shared<const PiecewiseLinear>(
      PiecewiseLinear::from_points(std::move(xs), std::move(ys)));
  return g;
}

GrowthFunction GrowthFunction::from_json(const nlohmann::json& d) {
  if (!d.is_object() || !d.contains("family") || !d["family"].is_string())
    throw std::invalid_argument("descriptor: object with \"family\" required");
  std::string fam = d["family"].get<std::string>();
  auto num = [&](const char* key) {
    if (!d.contains(key) || !d[key].is_number())
      throw std::invalid_argument(std::string("descriptor: missing numeric \"") +
                                  key + "\"");
    return d[key].get<double>();
  };
  if (fam == "power") return power(num("C"), num("k"));
  if (fam == "powerlog") return powerlog(num("C"), num("p"), num("q"));
  if (fam == "ladderspline") return ladder_spline();
  if (fam == "tabulated") {
    if (!d.contains("points") || !d["points"].is_array())
      throw std::invalid_argument("descriptor: tabulated needs \"points\"");
    std::vector<double> xs, ys;
    for (const auto& pt : d["points"]) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
          !pt[1].is_number())
        throw std::invalid_argument("descriptor: points must be [x, y] pairs");
      xs.push_back(pt[0].get<double>());
      ys.push_back(pt[1].get<double>());
    }
    return tabulated(std::move(xs), std::move(ys));
  }
  throw std::invalid_argument("descriptor: unknown family \"" + fam + "\"");
}

nlohmann::ordered_json GrowthFunction::to_json() const {
  nlohmann::ordered_json d;
  d["family"] = family_name(family_);
  switch (family_) {
    case Family::Power:
      d["C"] = C_;
      d["k"] = p_;
      break;
    case Family::PowerLog:
      d["C"] = C_;
      d["p"] = p_;
      d["q"] = q_;
      break;
    case Family::LadderSpline:
      break;
    case Family::Tabulated: {
      auto pts = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < table_->xs().size(); ++i)
        pts.push_back({table_->xs()[i], table_->ys()[i]});
      d["points"] = pts;
      break;
    }
  }
  return d;
}

double GrowthFunction::operator()(double x) const {
  switch (family_) {
    case Family::Power:
      return C_ * std::pow(x, p_);
    case Family::PowerLog:
      return C_ * std::pow(x, p_) * std::pow(1.0 + std::log(x), q_);
    case Family::LadderSpline:
      if (x < 1.0) throw std::domain_error("ladder_spline: x < 1");
      return ladder_value(x);
    case Family::Tabulated:
      return (*table_)(x);
  }
  throw std::logic_error("unreachable");
}

double GrowthFunction::derivative(double x) const {
  switch (family_) {
    case Family::Power:
      return C_ * p_ * std::pow(x, p_ - 1.0);
    case Family::PowerLog: {
      double u = 1.0 + std::log(x);
      return C_ * std::pow(x, p_ - 1.0) * std::pow(u, q_ - 1.0) *
             (p_ * u + q_);
    }
    case Family::LadderSpline:
      if (x < 1.0) throw std::domain_error("ladder_spline: x < 1");
      return ladder_derivative(x);
    case Family::Tabulated:
      return table_->slope_left(x);
  }
  throw std::logic_error("unreachable");
}

double GrowthFunction::domain_start() const {
  return family_ == Family::Tabulated ? table_->x_min() : 1.0;
}

double GrowthFunction::domain_end() const {
  return family_ == Family::Tabulated ? table_->x_max() : kInfinity;
}

bool GrowthFunction::has_unbounded_domain() const {
  return family_ != Family::Tabulated;
}

double GrowthFunction::infimum() const {
  switch (family_) {
    case Family::Power:
      return C_;
    case Family::PowerLog: {
      if (p_ == 0.0) return q_ >= 0.0 ? C_ : 0.0;
      if (p_ + q_ >= 0.0) return C_;
      // interior minimum at u = -q/p, i.e. x = exp(-q/p - 1)
      double u = -q_ / p_;
      return C_ * std::exp(p_ * (u - 1.0)) * std::pow(u, q_);
    }
    case Family::LadderSpline:
      return 8.0;  // value at x = 1
    case Family::Tabulated:
      return *std::min_element(table_->ys().begin(), table_->ys().end());
  }
  throw std::logic_error("unreachable");
}

std::optional<LiminfCert> GrowthFunction::liminf_x2() const {
  switch (family_) {
    case Family::Power:
      if (p_ < 2.0) return LiminfCert{true, 0.0};
      if (p_ == 2.0) return LiminfCert{true, C_};
      return LiminfCert{false, 0.0};
    case Family::PowerLog:
      if (p_ < 2.0) return LiminfCert{true, 0.0};
      if (p_ == 2.0) {
        if (q_ < 0.0) return LiminfCert{true, 0.0};
        if (q_ == 0.0) return LiminfCert{true, C_};
        return LiminfCert{false, 0.0};
      }
      return LiminfCert{false, 0.0};
    case Family::LadderSpline:
      // Psi(x) >= Psi(n) = 7n^2 + n^3 on [n, n+1], so Psi/x^2 -> infinity.
      return LiminfCert{false, 0.0};
    case Family::Tabulated:
      return std::nullopt;
  }
  throw std::logic_error("unreachable");
}

double GrowthFunction::monotone_start() const {
  switch (family_) {
    case Family::Power:
      return 1.0;
    case Family::PowerLog:
      if (p_ == 0.0) return q_ >= 0.0 ? 1.0 : kInfinity;
      if (p_ + q_ >= 0.0) return 1.0;
      return std::exp(-q_ / p_ - 1.0);
    case Family::LadderSpline:
      return 1.0;
    case Family::Tabulated:
      return table_->x_min();  // from_points enforced nondecreasing data
  }
  throw std::logic_error("unreachable");
}

bool GrowthFunction::nondecreasing_from_start() const {
  return monotone_start() <= domain_start();
}

std::optional<double> GrowthFunction::convexity_threshold() const {
  switch (family_) {
    case Family::Power:
      if (p_ == 0.0 || p_ >= 1.0) return 1.0;
      return std::nullopt;  // 0 < k < 1: concave everywhere
    case Family::PowerLog: {
      // Second-derivative sign is that of
      //   g(u) = p(p-1) u^2 + q(2p-1) u + q(q-1),  u = 1 + log x >= 1.
      double a = p_ * (p_ - 1.0);
      double b = q_ * (2.0 * p_ - 1.0);
      double c = q_ * (q_ - 1.0);
      if (p_ == 0.0) {
        if (q_ == 0.0) return 1.0;  // constant
        return std::nullopt;        // -qu + q(q-1): eventually negative
      }
      if (p_ == 1.0) {
        if (q_ == 0.0) return 1.0;  // linear
        if (q_ < 0.0) return std::nullopt;
        double root = (1.0 - q_);  // q u + q(q-1) >= 0 for u >= 1-q
        double u0 = std::max(1.0, root);
        return std::exp(u0 - 1.0);
      }
      if (p_ < 1.0) return std::nullopt;  // leading coefficient negative
      double disc = b * b - 4.0 * a * c;
      double u0 = 1.0;
      if (disc >= 0.0) {
        double root = (-b + std::sqrt(disc)) / (2.0 * a);
        u0 = std::max(u0, root);
      }
      return std::exp(u0 - 1.0);
    }
    case Family::LadderSpline:
      // Each period's cubic raises the slope far above 7(n+1) and brings it
      // back, so the second derivative changes sign on every [n, n+1].
      return std::nullopt;
    case Family::Tabulated: {
      const auto& xs = table_->xs();
      const auto& ys = table_->ys();
      double prev = -kInfinity;
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double s = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
        if (s < prev - 1e-12 * (1.0 + std::fabs(prev))) return std::nullopt;
        prev = s;
      }
      return xs.front();  // convex on the tabulated range only
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<TailModel> GrowthFunction::derivative_tail() const {
  switch (family_) {
    case Family::Power:
      if (p_ == 0.0) return std::nullopt;
      return TailModel{p_ - 1.0, 0.0, C_ * p_};
    case Family::PowerLog:
      if (p_ == 0.0) {
        if (q_ <= 0.0) return std::nullopt;
        return TailModel{-1.0, q_ - 1.0, C_ * q_};
      }
      return TailModel{p_ - 1.0, q_, C_ * p_};
    case Family::LadderSpline:
      return std::nullopt;  // slope oscillates between 7n and order n^2
    case Family::Tabulated:
      return std::nullopt;
  }
  throw std::logic_error("unreachable");
}

Divergence GrowthFunction::divergence_verdict() const {
  switch (family_) {
    case Family::Power:
      // 1/Psi' ~ x^{1-k}: diverges iff k <= 2 (k = 0 trivially, Psi' == 0).
      return p_ <= 2.0 ? Divergence::Diverges : Divergence::Converges;
    case Family::PowerLog:
      if (p_ < 2.0) return Divergence::Diverges;
      if (p_ == 2.0) return q_ <= 1.0 ? Divergence::Diverges
                                      : Divergence::Converges;
      return Divergence::Converges;
    case Family::LadderSpline:
      // On [n, n+1/2] the slope is exactly 7n, so the integral dominates
      // sum 1/(14n), which diverges.
      return Divergence::Diverges;
    case Family::Tabulated:
      return Divergence::Unknown;
  }
  throw std::logic_error("unreachable");
}

std::optional<double> GrowthFunction::reciprocal_derivative_tail_bound(
    double X) const {
  if (divergence_verdict() != Divergence::Converges) return std::nullopt;
  if (X < domain_start())
    throw std::domain_error("reciprocal_derivative_tail_bound: X below domain");
  if (family_ == Family::Power) {
    // exact: integral of x^{1-k} / (C k)
    return std::pow(X, 2.0 - p_) / (C_ * p_ * (p_ - 2.0));
  }
  // PowerLog, p > 2 or (p == 2 and q > 1).
  double X_formula = 1.0;
  auto formula = [&](double Y) {
    double u = 1.0 + std::log(Y);
    if (p_ == 2.0)  // q > 1 here
      return std::pow(u, 1.0 - q_) / (2.0 * C_ * (q_ - 1.0));
    if (q_ >= 0.0)
      return std::pow(Y, 2.0 - p_) /
             (C_ * p_ * (p_ - 2.0) * std::pow(u, q_));
    return 4.0 * std::pow(u, -q_) * std::pow(Y, 2.0 - p_) /
           (C_ * p_ * (p_ - 2.0));
  };
  if (q_ < 0.0) {
    // formula valid once p*u >= 2|q| and u >= 2|q|/(p-2)
    double u_min = std::max({1.0, -2.0 * q_ / p_, -2.0 * q_ / (p_ - 2.0)});
    X_formula = std::exp(u_min - 1.0);
  }
  double Xp = std::max(X, X_formula);
  double bound = formula(Xp);
  if (Xp > X) {
    QuadResult gap = integrate(
        [this](double x) { return 1.0 / derivative(x); }, X, Xp, 1e-12);
    bound += gap.value + gap.error;
  }
  return bound;
}

std::optional<GrowthFunction::PowerMinorant>
GrowthFunction::certified_power_minorant() const {
  if (family_ == Family::LadderSpline) {
    PowerMinorant m;
    m.c = 1.0;
    m.s = 3.0;
    m.note =
        "x^3 <= value(n) = 7n^2 + n^3 on [n, n+1] since 7n^2 >= "
        "3n^2 + 3n + 1 for n >= 1, and the spline is nondecreasing";
    return m;
  }
  return std::nullopt;
}

MonotoneFn GrowthFunction::as_monotone() const {
  if (!nondecreasing_from_start())
    throw std::logic_error(
        "as_monotone: function decreases somewhere on its domain");
  if (family_ == Family::Tabulated)
    return MonotoneFn::from_piecewise("tabulated", *table_);
  GrowthFunction copy = *this;
  std::function<double(double)> tail;
  if (divergence_verdict() == Divergence::Converges)
    tail = [copy](double X) {
      return *copy.reciprocal_derivative_tail_bound(X);
    };
  return MonotoneFn::from_closed_form(
      family_name(family_), [copy](double x) { return copy(x); },
      [copy](double x) { return copy.derivative(x); }, domain_start(),
      kInfinity, std::move(tail));
}

const PiecewiseLinear& GrowthFunction::table() const {
  if (!table_) throw std::logic_error("table: not a tabulated function");
  return *table_;
}

}  // namespace liouville
