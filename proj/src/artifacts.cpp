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

#include "liouville/artifacts.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "liouville/util.hpp"

namespace liouville {

namespace fs = std::filesystem;

namespace {

struct ArtifactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json options_json(const RunOptions& o) {
  nlohmann::ordered_json out;
  out["tol"] = o.tol;
  out["seed"] = o.seed;
  out["grid"] = o.grid;
  out["rmax"] = o.rmax;
  out["dim"] = o.dim;
  return out;
}

RunOptions options_from_json(const nlohmann::json& j) {
  RunOptions o;
  o.tol = j.at("tol").get<double>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.grid = j.at("grid").get<int>();
  o.rmax = j.at("rmax").get<double>();
  o.dim = j.at("dim").get<int>();
  return o;
}

SynthesisOptions synthesis_options(const RunOptions& o) {
  SynthesisOptions s;
  s.dim = o.dim;
  s.tol = o.tol;
  s.extent = std::max(16.0, o.rmax + 8.0);
  s.mu_range = 64.0;
  return s;
}

std::vector<double> export_axis(double rmax, int points) {
  std::vector<double> axis(points);
  for (int i = 0; i < points; ++i)
    axis[i] = -rmax + 2.0 * rmax * static_cast<double>(i) / (points - 1);
  return axis;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactError("cannot open " + path.string() + " for write");
  out << content;
  if (!out) throw ArtifactError("short write to " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || end != s.c_str() + s.size())
    throw ArtifactError("malformed number \"" + s + "\" in csv");
  return v;
}

std::string fields_header(int dim) {
  std::string h;
  for (int d = 1; d <= dim; ++d) h += "x" + std::to_string(d) + ",";
  return h + "phi,sigma";
}

void write_fields_csv(const fs::path& path, const CounterexampleFields& f,
                      const std::vector<double>& axis) {
  const int N = f.dimension();
  std::ostringstream out;
  out << fields_header(N) << "\n";
  const std::size_t g = axis.size();
  std::size_t rows = 1;
  for (int d = 0; d < N; ++d) rows *= g;
  std::vector<double> pt(N);
  for (std::size_t flat = 0; flat < rows; ++flat) {
    std::size_t rest = flat;
    for (int d = N - 1; d >= 0; --d) {
      pt[d] = axis[rest % g];
      rest /= g;
    }
    for (int d = 0; d < N; ++d) out << format_double(pt[d]) << ",";
    out << format_double(f.phi(pt)) << "," << format_double(f.sigma(pt))
        << "\n";
  }
  write_text(path, out.str());
}

void write_profile_csv(const fs::path& path, const CounterexampleFields& f,
                       double rmax) {
  std::ostringstream out;
  out << "r,mu_prime,I,sigma,phi_axis\n";
  const int rows = 512;
  double lo = -(rmax + 2.0), hi = rmax + 2.0;
  std::vector<double> pt(f.dimension(), 0.0);
  for (int i = 0; i <= rows; ++i) {
    double r = lo + (hi - lo) * static_cast<double>(i) / rows;
    pt.back() = r;
    out << format_double(r) << "," << format_double(f.mu_prime(r)) << ","
        << format_double(f.tail(r)) << "," << format_double(f.sigma_axial(r))
        << "," << format_double(f.phi(pt)) << "\n";
  }
  write_text(path, out.str());
}

struct LoadedCsv {
  std::vector<double> phi, sigma;  // flat, last dim fastest
};

LoadedCsv load_fields_csv(const fs::path& path, int dim,
                          const std::vector<double>& axis) {
  std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ArtifactError("fields.csv: empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != fields_header(dim))
    throw ArtifactError("fields.csv: unexpected header \"" + line + "\"");
  const std::size_t g = axis.size();
  std::size_t rows = 1;
  for (int d = 0; d < dim; ++d) rows *= g;
  LoadedCsv csv;
  csv.phi.reserve(rows);
  csv.sigma.reserve(rows);
  std::size_t flat = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (flat >= rows) throw ArtifactError("fields.csv: too many rows");
    auto cols = split(line, ',');
    if (cols.size() != static_cast<std::size_t>(dim) + 2)
      throw ArtifactError("fields.csv: wrong column count");
    std::size_t rest = flat;
    double expected[3];
    for (int d = dim - 1; d >= 0; --d) {
      expected[d] = axis[rest % g];
      rest /= g;
    }
    for (int d = 0; d < dim; ++d) {
      double got = parse_double(cols[d]);
      if (std::fabs(got - expected[d]) > 1e-9 * (1.0 + std::fabs(expected[d])))
        throw ArtifactError("fields.csv: grid coordinates drifted");
    }
    double phi = parse_double(cols[dim]);
    double sigma = parse_double(cols[dim + 1]);
    if (!std::isfinite(phi) || !std::isfinite(sigma))
      throw ArtifactError("fields.csv: non-finite value");
    csv.phi.push_back(phi);
    csv.sigma.push_back(sigma);
    ++flat;
  }
  if (flat != rows) throw ArtifactError("fields.csv: row count mismatch");
  return csv;
}

template <unsigned N>
void expand_gauss(std::vector<double>& xs, std::vector<double>& ws) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      xs.push_back(0.0);
      ws.push_back(w[i]);
    } else {
      xs.push_back(-a[i]);
      ws.push_back(w[i]);
      xs.push_back(a[i]);
      ws.push_back(w[i]);
    }
  }
}

// Transverse integral of phi^2 * dsigma at a fixed axial station, over
// [-rmax, rmax] per transverse dimension.
double station_flux(const FieldSet& f, double axial, double rmax) {
  const int N = f.dimension();
  std::vector<double> pt(N);
  pt[N - 1] = axial;
  if (N == 1) return f.phi(pt) * f.phi(pt) * f.dsigma_dxn(pt);
  std::vector<double> xs, ws;
  expand_gauss<32>(xs, ws);
  double total = 0.0;
  if (N == 2) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      pt[0] = rmax * xs[i];
      double phi = f.phi(pt);
      total += ws[i] * rmax * phi * phi * f.dsigma_dxn(pt);
    }
    return total;
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      pt[0] = rmax * xs[i];
      pt[1] = rmax * xs[j];
      double phi = f.phi(pt);
      total += ws[i] * ws[j] * rmax * rmax * phi * phi * f.dsigma_dxn(pt);
    }
  return total;
}

}  // namespace

ClassifyOutcome run_classify(const nlohmann::json& descriptor,
                             const RunOptions& opts) {
  GrowthFunction psi = GrowthFunction::from_json(descriptor);
  ClassificationReport rep = classify(psi);
  ClassifyOutcome out;
  out.document["tool"] = kToolName;
  out.document["version"] = kToolVersion;
  out.document["command"] = "classify";
  out.document["descriptor"] = psi.to_json();
  out.document["options"] = options_json(opts);
  nlohmann::ordered_json body = rep.to_json();
  for (auto& [key, value] : body.items()) out.document[key] = std::move(value);
  switch (rep.verdict.status) {
    case Status::SatisfiesP: out.exit_code = kExitSatisfies; break;
    case Status::FailsP: out.exit_code = kExitFails; break;
    case Status::Inconclusive: out.exit_code = kExitInconclusive; break;
  }
  return out;
}

SynthesizeOutcome run_synthesize(const nlohmann::json& descriptor,
                                 const RunOptions& opts,
                                 const std::string& out_dir) {
  GrowthFunction psi = GrowthFunction::from_json(descriptor);
  ClassificationReport rep = classify(psi);
  SynthesizeOutcome out;
  if (rep.verdict.status != Status::FailsP || !rep.witness) {
    out.exit_code = kExitRefusal;
    out.refusal_reason =
        std::string("synthesis refused: classification is ") +
        status_name(rep.verdict.status) +
        "; counterexample fields exist only when the property fails";
    return out;
  }

  SynthesisOptions sopts = synthesis_options(opts);
  auto fields = std::make_shared<const CounterexampleFields>(
      synthesize(psi, *rep.witness, sopts));

  int g = std::clamp(opts.grid, 2, opts.dim == 3 ? 33 : 129);
  std::vector<double> axis = export_axis(opts.rmax, g);

  fs::create_directories(out_dir);
  write_fields_csv(fs::path(out_dir) / "fields.csv", *fields, axis);
  write_profile_csv(fs::path(out_dir) / "profile.csv", *fields, opts.rmax);

  nlohmann::ordered_json& man = out.manifest;
  man["tool"] = kToolName;
  man["version"] = kToolVersion;
  man["command"] = "synthesize";
  man["descriptor"] = psi.to_json();
  man["options"] = options_json(opts);
  man["export_grid"] = g;
  man["classification"] = {{"status", status_name(rep.verdict.status)},
                           {"route", route_name(rep.verdict.route)}};
  man["witness"] = {{"description", rep.witness->description},
                    {"roughness_upper_bound",
                     rep.witness->roughness_upper_bound},
                    {"descriptor", rep.witness->descriptor}};
  man["m"] = fields->m();
  man["profile"] = {{"kind", "gaussian"},
                    {"ambient_dim", fields->dimension()}};
  man["flux_constant"] = fields->flux_constant();
  man["tail_cut"] = fields->tail_fn().x_max();
  man["tail_error"] = fields->tail_error();
  man["mu_error"] = fields->mu_error();
  man["artifacts"] = {{"fields", "fields.csv"}, {"profile", "profile.csv"}};
  man["notes"] = rep.notes;
  write_text(fs::path(out_dir) / "manifest.json", man.dump(2) + "\n");
  out.exit_code = kExitOk;
  return out;
}

CsvAdjustedFields::CsvAdjustedFields(
    std::shared_ptr<const CounterexampleFields> exact, std::vector<double> axis,
    std::vector<double> phi_ratio, std::vector<double> sigma_ratio)
    : exact_(std::move(exact)),
      axis_(std::move(axis)),
      phi_ratio_(std::move(phi_ratio)),
      sigma_ratio_(std::move(sigma_ratio)) {
  std::size_t rows = 1;
  for (int d = 0; d < exact_->dimension(); ++d) rows *= axis_.size();
  if (phi_ratio_.size() != rows || sigma_ratio_.size() != rows)
    throw std::invalid_argument("CsvAdjustedFields: table size mismatch");
}

int CsvAdjustedFields::dimension() const { return exact_->dimension(); }

double CsvAdjustedFields::interp(const std::vector<double>& table,
                                 std::span<const double> x) const {
  const int N = dimension();
  const std::size_t g = axis_.size();
  std::size_t cell[3];
  double t[3];
  for (int d = 0; d < N; ++d) {
    double v = std::clamp(x[d], axis_.front(), axis_.back());
    auto it = std::upper_bound(axis_.begin(), axis_.end(), v);
    std::size_t k = static_cast<std::size_t>(it - axis_.begin());
    k = k == 0 ? 0 : std::min(k - 1, g - 2);
    cell[d] = k;
    t[d] = (v - axis_[k]) / (axis_[k + 1] - axis_[k]);
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << N); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (int d = 0; d < N; ++d) {
      bool high = corner & (1 << d);
      w *= high ? t[d] : 1.0 - t[d];
      flat = flat * g + (cell[d] + (high ? 1 : 0));
    }
    acc += w * table[flat];
  }
  return acc;
}

double CsvAdjustedFields::interp_dlast(const std::vector<double>& table,
                                       std::span<const double> x) const {
  const int N = dimension();
  const std::size_t g = axis_.size();
  std::size_t cell[3];
  double t[3], width_last = 1.0;
  for (int d = 0; d < N; ++d) {
    double v = std::clamp(x[d], axis_.front(), axis_.back());
    auto it = std::upper_bound(axis_.begin(), axis_.end(), v);
    std::size_t k = static_cast<std::size_t>(it - axis_.begin());
    k = k == 0 ? 0 : std::min(k - 1, g - 2);
    cell[d] = k;
    t[d] = (v - axis_[k]) / (axis_[k + 1] - axis_[k]);
    if (d == N - 1) width_last = axis_[k + 1] - axis_[k];
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << N); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (int d = 0; d < N; ++d) {
      bool high = corner & (1 << d);
      if (d == N - 1)
        w *= (high ? 1.0 : -1.0) / width_last;
      else
        w *= high ? t[d] : 1.0 - t[d];
      flat = flat * g + (cell[d] + (high ? 1 : 0));
    }
    acc += w * table[flat];
  }
  return acc;
}

double CsvAdjustedFields::phi(std::span<const double> x) const {
  return exact_->phi(x) * interp(phi_ratio_, x);
}

double CsvAdjustedFields::sigma(std::span<const double> x) const {
  return exact_->sigma(x) * interp(sigma_ratio_, x);
}

double CsvAdjustedFields::dsigma_dxn(std::span<const double> x) const {
  return exact_->dsigma_dxn(x) * interp(sigma_ratio_, x) +
         exact_->sigma(x) * interp_dlast(sigma_ratio_, x);
}

double CsvAdjustedFields::max_ratio_deviation() const {
  double dev = 0.0;
  for (double r : phi_ratio_) dev = std::max(dev, std::fabs(r - 1.0));
  for (double r : sigma_ratio_) dev = std::max(dev, std::fabs(r - 1.0));
  return dev;
}

VerifyOutcome run_verify(const std::string& out_dir, const RunOptions& opts,
                         const std::vector<std::string>& checks) {
  VerifyOutcome out;
  auto wanted = [&checks](const char* name) {
    return checks.empty() ||
           std::find(checks.begin(), checks.end(), name) != checks.end();
  };
  out.report["tool"] = kToolName;
  out.report["version"] = kToolVersion;
  out.report["command"] = "verify";
  out.report["source"] = out_dir;

  std::shared_ptr<const CounterexampleFields> exact;
  std::shared_ptr<const CsvAdjustedFields> csv;
  GrowthFunction psi = GrowthFunction::power(1.0, 3.0);  // replaced on load
  RunOptions mopts;
  try {
    nlohmann::json man =
        nlohmann::json::parse(read_text(fs::path(out_dir) / "manifest.json"));
    psi = GrowthFunction::from_json(man.at("descriptor"));
    MinorantWitness witness =
        witness_from_json(psi, man.at("witness").at("descriptor"));
    mopts = options_from_json(man.at("options"));
    int g = man.at("export_grid").get<int>();
    if (g < 2 || g > 1024) throw ArtifactError("manifest: bad export_grid");
    exact = std::make_shared<const CounterexampleFields>(
        synthesize(psi, witness, synthesis_options(mopts)));
    std::vector<double> axis = export_axis(mopts.rmax, g);
    LoadedCsv data =
        load_fields_csv(fs::path(out_dir) / "fields.csv", mopts.dim, axis);
    std::size_t rows = data.phi.size();
    std::vector<double> phi_ratio(rows), sigma_ratio(rows);
    std::vector<double> pt(mopts.dim);
    for (std::size_t flat = 0; flat < rows; ++flat) {
      std::size_t rest = flat;
      for (int d = mopts.dim - 1; d >= 0; --d) {
        pt[d] = axis[rest % axis.size()];
        rest /= axis.size();
      }
      phi_ratio[flat] = data.phi[flat] / exact->phi(pt);
      sigma_ratio[flat] = data.sigma[flat] / exact->sigma(pt);
    }
    csv = std::make_shared<const CsvAdjustedFields>(
        exact, std::move(axis), std::move(phi_ratio), std::move(sigma_ratio));
  } catch (const std::exception& e) {
    out.exit_code = kExitArtifactBad;
    out.report["error"] = e.what();
    out.report["all_pass"] = false;
    return out;
  }

  auto rows = nlohmann::ordered_json::array();
  bool all_pass = true;
  Box box = Box::cube(mopts.dim, -mopts.rmax, mopts.rmax);
  try {
    if (wanted("flux")) {
      double base = station_flux(*csv, 0.0, mopts.rmax);
      double dev = 0.0;
      for (int i = 0; i <= 8; ++i) {
        double u = -mopts.rmax + 2.0 * mopts.rmax * i / 8.0;
        dev = std::max(dev,
                       std::fabs(station_flux(*csv, u, mopts.rmax) / base - 1.0));
      }
      bool pass = dev <= opts.tol;
      rows.push_back({{"name", "flux"},
                      {"value", dev},
                      {"threshold", opts.tol},
                      {"comparison", "<="},
                      {"pass", pass}});
      all_pass = all_pass && pass;
    }
    if (wanted("weak_residual")) {
      double res = weak_residual(*csv, 20, box, opts.seed);
      bool pass = res <= opts.tol;
      rows.push_back({{"name", "weak_residual"},
                      {"value", res},
                      {"threshold", opts.tol},
                      {"comparison", "<="},
                      {"pass", pass}});
      all_pass = all_pass && pass;
    }
    if (wanted("energy")) {
      bool pass = true;
      auto detail = nlohmann::ordered_json::array();
      for (double R : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        EnergyReport er = energy_quadrature(*exact, psi, R);
        pass = pass && er.chain_holds;
        detail.push_back(er.to_json());
      }
      rows.push_back({{"name", "energy"},
                      {"pass", pass},
                      {"radii", detail}});
      all_pass = all_pass && pass;
    }
    if (wanted("caccioppoli")) {
      CaccioppoliReport cr = caccioppoli_check(*exact, 2.0, 16.0);
      bool pass = cr.holds && cr.identity_residual <= 1e-8;
      auto row = cr.to_json();
      row["name"] = "caccioppoli";
      row["pass"] = pass;
      rows.push_back(row);
      all_pass = all_pass && pass;
    }
    if (wanted("nonconstancy")) {
      NonconstancyReport nr = nonconstancy_check(*csv, box);
      // The oscillation scale is construction-dependent, so the bar is a
      // noise floor: anything a flat sigma plus roundoff could fake fails.
      double floor = 1e6 * std::numeric_limits<double>::epsilon() *
                     (1.0 + nr.sigma_abs_max);
      bool pass = nr.sigma_osc > floor && nr.sigma_monotone && nr.phi_min > 0.0;
      rows.push_back({{"name", "nonconstancy"},
                      {"sigma_osc", nr.sigma_osc},
                      {"sigma_monotone", nr.sigma_monotone},
                      {"phi_min", nr.phi_min},
                      {"threshold", floor},
                      {"comparison", ">="},
                      {"pass", pass}});
      all_pass = all_pass && pass;
    }
  } catch (const std::exception& e) {
    rows.push_back({{"name", "exception"}, {"pass", false}, {"error", e.what()}});
    all_pass = false;
  }

  out.report["checks"] = rows;
  out.report["all_pass"] = all_pass;
  out.exit_code = all_pass ? kExitOk : kExitVerifyFail;
  return out;
}

std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc) {
  std::vector<std::string> errors;
  std::function<void(const nlohmann::json&, const nlohmann::json&,
                     std::string)>
      walk = [&](const nlohmann::json& sch, const nlohmann::json& node,
                 std::string path) {
        if (sch.contains("type")) {
          std::string type = sch["type"].get<std::string>();
          bool ok = (type == "object" && node.is_object()) ||
                    (type == "array" && node.is_array()) ||
                    (type == "string" && node.is_string()) ||
                    (type == "number" && node.is_number()) ||
                    (type == "integer" && node.is_number_integer()) ||
                    (type == "boolean" && node.is_boolean());
          if (!ok) {
            errors.push_back(path + ": expected " + type);
            return;
          }
        }
        if (sch.contains("enum")) {
          bool ok = false;
          for (const auto& v : sch["enum"]) ok = ok || v == node;
          if (!ok) errors.push_back(path + ": value not in enum");
        }
        if (sch.contains("required"))
          for (const auto& key : sch["required"])
            if (!node.contains(key.get<std::string>()))
              errors.push_back(path + ": missing required key " +
                               key.get<std::string>());
        if (sch.contains("properties") && node.is_object())
          for (const auto& [key, sub] : sch["properties"].items())
            if (node.contains(key)) walk(sub, node.at(key), path + "/" + key);
        if (sch.contains("minItems") && node.is_array() &&
            node.size() < sch["minItems"].get<std::size_t>())
          errors.push_back(path + ": fewer than minItems elements");
        if (sch.contains("items") && node.is_array())
          for (std::size_t i = 0; i < node.size(); ++i)
            walk(sch["items"], node[i], path + "/" + std::to_string(i));
      };
  walk(schema, doc, "");
  return errors;
}

}  // namespace liouville
