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

#include "liouville/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

constexpr const char* kDimensionNote =
    "the verdict is dimension-free: failure witnesses extend to any ambient "
    "dimension through product fields";

// Smallest X at which the closed-form reciprocal tail bound of a PowerLog
// derivative applies directly (no quadrature through small derivatives).
double powerlog_formula_start(double p, double q) {
  if (q >= 0.0) return 1.0;
  double u_min = std::max({1.0, -2.0 * q / p, -2.0 * q / (p - 2.0)});
  return std::exp(u_min - 1.0);
}

void sanity_check_minorant(const GrowthFunction& psi, const MonotoneFn& h) {
  double a = psi.domain_start();
  double b = std::isfinite(psi.domain_end()) ? psi.domain_end() : a + 63.0;
  for (int i = 0; i <= 4096; ++i) {
    double x = a + (b - a) * i / 4096.0;
    double hv = h(x);
    double pv = psi(x);
    if (hv > pv + 1e-9 * (1.0 + std::fabs(pv)))
      throw std::logic_error("classifier: witness exceeds the growth bound");
    if (hv < -1e-12)
      throw std::logic_error("classifier: witness goes negative");
  }
}

MinorantWitness self_witness(const GrowthFunction& psi) {
  auto bound = psi.reciprocal_derivative_tail_bound(psi.domain_start());
  if (!bound)
    throw std::logic_error("self_witness: no certified tail bound available");
  MinorantWitness w{psi.as_monotone(), "the growth bound itself", *bound, {}};
  w.descriptor["kind"] = "growth_self";
  return w;
}

MinorantWitness spliced_witness(const GrowthFunction& psi) {
  // Used when Psi' vanishes somewhere at or after the domain start: run a
  // ramp below the global infimum and jump onto Psi past the flat region,
  // where the closed-form tail bound is valid.
  double lo = psi.domain_start();
  double x_splice = powerlog_formula_start(psi.param_p(), psi.param_q());
  x_splice = std::max(x_splice, lo * 2.0);
  double inf = psi.infimum();
  if (!(inf > 0.0))
    throw std::logic_error("spliced_witness: needs a positive infimum");
  double bottom = 0.5 * inf, top = inf;
  double slope = (top - bottom) / (x_splice - lo);
  auto tail_bound = psi.reciprocal_derivative_tail_bound(x_splice);
  if (!tail_bound)
    throw std::logic_error("spliced_witness: no certified tail bound");

  GrowthFunction copy = psi;
  double ramp_roughness = (x_splice - lo) / slope;
  auto recip = [copy, lo, x_splice, slope, ramp = ramp_roughness](double X) {
    if (X <= x_splice)
      return (x_splice - X) / slope + *copy.reciprocal_derivative_tail_bound(x_splice);
    return *copy.reciprocal_derivative_tail_bound(X);
  };
  MinorantWitness w{
      MonotoneFn::spliced_ramp(
          "ramp+" + family_name(psi.family()), lo, x_splice, bottom, top,
          [copy](double x) { return copy(x); },
          [copy](double x) { return copy.derivative(x); }, recip),
      "ramp below the infimum, then the growth bound",
      ramp_roughness + *tail_bound,
      {}};
  w.descriptor["kind"] = "spliced_growth";
  w.descriptor["x_splice"] = x_splice;
  w.descriptor["ramp_bottom"] = bottom;
  w.descriptor["ramp_top"] = top;
  return w;
}

MinorantWitness power_witness(const GrowthFunction::PowerMinorant& m) {
  MinorantWitness w{MonotoneFn::power(m.c, m.s),
                    "certified power minorant; " + m.note,
                    1.0 / (m.c * m.s * (m.s - 2.0)),
                    {}};
  w.descriptor["kind"] = "power";
  w.descriptor["c"] = m.c;
  w.descriptor["s"] = m.s;
  return w;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::SatisfiesP: return "SatisfiesP";
    case Status::FailsP: return "FailsP";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

const char* route_name(Route r) {
  switch (r) {
    case Route::TrivialInfimum: return "trivial_infimum";
    case Route::QuadraticLiminf: return "quadratic_liminf";
    case Route::ConvexTail: return "convex_tail";
    case Route::MinorantWitness: return "minorant_witness";
    case Route::Evidence: return "evidence";
  }
  return "unknown";
}

ClassificationReport classify(const GrowthFunction& psi) {
  ClassificationReport rep;
  rep.verdict.dimension_note = kDimensionNote;
  auto cert = [&rep](nlohmann::ordered_json c) {
    rep.certificates.push_back(std::move(c));
  };

  if (!psi.has_unbounded_domain()) {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.route = Route::Evidence;
    rep.notes.push_back(
        "tabulated data covers a finite range; the property concerns all "
        "large radii and cannot be certified from it");
    auto thr = psi.convexity_threshold();
    rep.notes.push_back(thr ? "slopes are nondecreasing on the tabulated range"
                            : "slopes are not monotone on the tabulated range");
    rep.evidence = divergence_protocol(psi, psi.domain_end()).to_json();
    return rep;
  }

  double inf = psi.infimum();
  cert({{"name", "infimum"}, {"value", inf}});
  if (inf == 0.0) {
    rep.verdict.status = Status::SatisfiesP;
    rep.verdict.route = Route::TrivialInfimum;
    rep.notes.push_back(
        "the growth bound dips to zero, so admissible energies vanish and "
        "only constants qualify");
    return rep;
  }

  if (auto lim = psi.liminf_x2(); lim && lim->finite) {
    rep.verdict.status = Status::SatisfiesP;
    rep.verdict.route = Route::QuadraticLiminf;
    cert({{"name", "liminf_x2"}, {"finite", true}, {"value", lim->value}});
    // numeric illustration of the chain at concrete radii
    if (psi.nondecreasing_from_start()) {
      double C = 2.0 * std::max(lim->value, 1.0);
      double R = 4.0, Rn = 64.0;
      if (psi(Rn) <= C * Rn * Rn) {
        LiminfChainCheck chk = liminf_chain_check(psi.as_monotone(), C, R, Rn);
        cert({{"name", "liminf_chain_demo"},
              {"C", C},
              {"R", R},
              {"R_n", Rn},
              {"integral", chk.integral},
              {"chord_bound", chk.chord_bound},
              {"holds", chk.holds}});
      }
    }
    return rep;
  }
  if (auto lim = psi.liminf_x2(); lim && !lim->finite)
    cert({{"name", "liminf_x2"}, {"finite", false}});

  auto thr = psi.convexity_threshold();
  double mono = psi.monotone_start();
  if (thr && std::isfinite(mono)) {
    double x0 = std::max({*thr, mono, psi.domain_start()});
    cert({{"name", "convexity_threshold"}, {"value", *thr}});
    cert({{"name", "monotone_start"}, {"value", mono}});
    Divergence verdict = psi.divergence_verdict();
    if (verdict == Divergence::Diverges) {
      rep.verdict.status = Status::SatisfiesP;
      rep.verdict.route = Route::ConvexTail;
      cert({{"name", "divergence_verdict"},
            {"value", "diverges"},
            {"basis", "family tail algebra"}});
      auto tail = psi.derivative_tail();
      if (tail)
        cert({{"name", "derivative_tail"},
              {"exponent", tail->exponent},
              {"log_exponent", tail->log_exponent},
              {"scale", tail->scale}});
      rep.notes.push_back(
          "convex past x0 = " + format_double(x0) +
          " with a divergent reciprocal-derivative integral at infinity");
      return rep;
    }
    if (verdict == Divergence::Converges) {
      rep.verdict.status = Status::FailsP;
      rep.verdict.route = Route::ConvexTail;
      cert({{"name", "divergence_verdict"},
            {"value", "converges"},
            {"basis", "family tail algebra"}});
      bool clean_start = psi.nondecreasing_from_start() &&
                         psi.derivative(psi.domain_start()) > 0.0;
      MinorantWitness w = clean_start ? self_witness(psi) : spliced_witness(psi);
      sanity_check_minorant(psi, w.h);
      cert({{"name", "roughness_total_upper_bound"},
            {"value", w.roughness_upper_bound}});
      rep.witness = std::move(w);
      return rep;
    }
  }

  if (auto m = psi.certified_power_minorant()) {
    rep.verdict.status = Status::FailsP;
    rep.verdict.route = Route::MinorantWitness;
    MinorantWitness w = power_witness(*m);
    sanity_check_minorant(psi, w.h);
    cert({{"name", "power_minorant"},
          {"c", m->c},
          {"s", m->s},
          {"note", m->note}});
    cert({{"name", "roughness_total_upper_bound"},
          {"value", w.roughness_upper_bound}});
    rep.witness = std::move(w);
    if (psi.family() == Family::LadderSpline)
      rep.notes.push_back(
          "midpoint-to-integer joins use a C1 monotone cubic; any "
          "nondecreasing completion of the linear pieces admits the same "
          "minorant, so the verdict does not depend on that choice");
    return rep;
  }

  rep.verdict.status = Status::Inconclusive;
  rep.verdict.route = Route::Evidence;
  rep.notes.push_back("no certificate applies; reporting partial integrals");
  rep.evidence = divergence_protocol(psi, 1024.0).to_json();
  return rep;
}

nlohmann::ordered_json ClassificationReport::to_json() const {
  nlohmann::ordered_json out;
  out["status"] = status_name(verdict.status);
  out["route"] = route_name(verdict.route);
  out["dimension_note"] = verdict.dimension_note;
  if (witness) {
    nlohmann::ordered_json w;
    w["description"] = witness->description;
    w["roughness_upper_bound"] = witness->roughness_upper_bound;
    w["descriptor"] = witness->descriptor;
    out["witness"] = w;
  }
  out["certificates"] = certificates;
  if (evidence) out["evidence"] = *evidence;
  out["notes"] = notes;
  return out;
}

MinorantWitness witness_from_json(const GrowthFunction& psi,
                                  const nlohmann::json& descriptor) {
  if (!descriptor.is_object() || !descriptor.contains("kind"))
    throw std::invalid_argument("witness descriptor: \"kind\" required");
  std::string kind = descriptor["kind"].get<std::string>();
  if (kind == "growth_self") return self_witness(psi);
  if (kind == "spliced_growth") return spliced_witness(psi);
  if (kind == "power") {
    GrowthFunction::PowerMinorant m;
    m.c = descriptor.at("c").get<double>();
    m.s = descriptor.at("s").get<double>();
    m.note = "rebuilt from report descriptor";
    if (!(m.c > 0.0) || !(m.s > 2.0))
      throw std::invalid_argument("witness descriptor: need c > 0, s > 2");
    MinorantWitness w = power_witness(m);
    sanity_check_minorant(psi, w.h);
    return w;
  }
  throw std::invalid_argument("witness descriptor: unknown kind \"" + kind +
                              "\"");
}

LiminfChainCheck liminf_chain_check(const MonotoneFn& h, double C, double R,
                                 double R_n, double tol) {
  if (!(R_n > R)) throw std::invalid_argument("liminf_chain_check: R_n <= R");
  if (!(C > 0.0)) throw std::invalid_argument("liminf_chain_check: C <= 0");
  LiminfChainCheck out;
  out.premise_ok = h(R_n) <= C * R_n * R_n + tol * (1.0 + C * R_n * R_n);
  out.chord_bound = (R_n - R) * (R_n - R) / (C * R_n * R_n);
  RoughnessResult rr = roughness_integral(h, R, R_n);
  out.integral = rr.value;
  out.holds = out.premise_ok &&
              out.integral >= out.chord_bound - tol * (1.0 + out.chord_bound) -
                                  rr.error;
  return out;
}

Prop4Check convex_tail_reduction_check(const GrowthFunction& psi, const MonotoneFn& h,
                                double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("convex_tail_reduction_check: a >= b");
  Prop4Check out;
  double pa = psi(a), pb = psi(b);
  out.endpoints_match =
      std::fabs(h(a) - pa) <= tol * (1.0 + std::fabs(pa)) &&
      std::fabs(h(b) - pb) <= tol * (1.0 + std::fabs(pb));
  RoughnessResult ps = roughness_integral(psi, a, b);
  RoughnessResult hs = roughness_integral(h, a, b);
  out.psi_side = ps.value;
  out.minorant_side = hs.value;
  out.holds = out.endpoints_match &&
              out.psi_side <= out.minorant_side + tol * (1.0 + out.psi_side) +
                                  ps.error + hs.error;
  return out;
}

double find_R1(const GrowthFunction& psi, const MonotoneFn& h, double R0,
               double cap) {
  if (!(cap > R0)) throw std::invalid_argument("find_R1: cap <= R0");
  double target = psi(R0);
  if (h(R0) >= target) return R0;
  double hi_limit = std::isfinite(h.hi()) ? std::min(cap, h.hi()) : cap;
  if (h(hi_limit) < target) return kInfinity;
  double lo = R0, hi = hi_limit;
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace liouville
