// Copyright 2026 The ALPN Authors
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

#include "alpn/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace alpn::io {
namespace {

using Json = nlohmann::ordered_json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character.
    throw FormatError(line_column(text, e.byte > 0 ? e.byte - 1 : 0),
                      "malformed JSON");
  }
}

const Json& field(const Json& obj, const std::string& name,
                  const std::string& where) {
  if (!obj.is_object()) throw FormatError(where, "expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw FormatError(where + "/" + name, "missing field");
  }
  return *it;
}

double number(const Json& value, const std::string& where,
              bool allow_null = false) {
  if (allow_null && value.is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (!value.is_number()) throw FormatError(where, "expected a number");
  return value.get<double>();
}

std::uint64_t count(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned()) {
    throw FormatError(where, "expected a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

Vector vector_field(const Json& value, const std::string& where,
                    bool allow_null = false) {
  if (!value.is_array()) throw FormatError(where, "expected an array");
  Vector out(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        number(value[i], where + "/" + std::to_string(i), allow_null);
  }
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void check_version(const Json& doc, std::string_view expected) {
  const Json& version = field(doc, "format_version", "");
  if (!version.is_string()) {
    throw FormatError("/format_version", "expected a string");
  }
  if (version.get<std::string>() != expected) {
    throw VersionError("/format_version",
                       "unsupported version '" + version.get<std::string>() +
                           "', expected '" + std::string(expected) + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

Json residuals_json(const ResidualBundle& r) {
  Json out;
  out["primal_eq"] = r.primal_eq;
  out["primal_cone"] = r.primal_cone;
  out["dual_cone"] = r.dual_cone;
  out["complementarity"] = r.complementarity;
  out["duality_gap"] = r.duality_gap;
  return out;
}

ResidualBundle residuals_from(const Json& j, const std::string& where) {
  ResidualBundle r;
  r.primal_eq = number(field(j, "primal_eq", where), where + "/primal_eq");
  r.primal_cone = number(field(j, "primal_cone", where), where + "/primal_cone");
  r.dual_cone = number(field(j, "dual_cone", where), where + "/dual_cone");
  r.complementarity =
      number(field(j, "complementarity", where), where + "/complementarity");
  r.duality_gap = number(field(j, "duality_gap", where), where + "/duality_gap");
  return r;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string instance_to_string(const SocpInstance& instance,
                               const std::optional<Provenance>& provenance) {
  Json doc;
  doc["format_version"] = kInstanceFormat;
  doc["m"] = instance.num_rows();
  doc["dims"] = instance.cone().block_dims();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < instance.A().rows(); ++i) {
    rows.push_back(vector_json(instance.A().row(i).transpose()));
  }
  doc["A"] = std::move(rows);
  doc["b"] = vector_json(instance.b());
  doc["c"] = vector_json(instance.c());
  if (provenance) {
    Json prov;
    prov["seed"] = provenance->seed;
    prov["x_tilde"] = vector_json(provenance->x_tilde);
    prov["s_tilde"] = vector_json(provenance->s_tilde);
    doc["provenance"] = std::move(prov);
  }
  return doc.dump(1) + "\n";
}

InstanceFile instance_from_string(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) throw FormatError("", "expected a JSON object");
  check_version(doc, kInstanceFormat);

  const std::uint64_t m = count(field(doc, "m", ""), "/m");
  const Json& dims_json = field(doc, "dims", "");
  if (!dims_json.is_array() || dims_json.empty()) {
    throw FormatError("/dims", "expected a nonempty array");
  }
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dims_json.size(); ++i) {
    const std::string where = "/dims/" + std::to_string(i);
    const std::uint64_t d = count(dims_json[i], where);
    if (d == 0) throw FormatError(where, "block dimension must be positive");
    dims.push_back(d);
  }
  ConeStructure cone(dims);
  const auto n = static_cast<Eigen::Index>(cone.dim());

  const Json& rows = field(doc, "A", "");
  if (!rows.is_array()) throw FormatError("/A", "expected an array of rows");
  if (rows.size() != m) {
    throw FormatError("/A", "has " + std::to_string(rows.size()) +
                                " rows but m = " + std::to_string(m));
  }
  Matrix a(static_cast<Eigen::Index>(m), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "/A/" + std::to_string(i);
    const Vector row = vector_field(rows[i], where);
    if (row.size() != n) {
      throw FormatError(where, "has " + std::to_string(row.size()) +
                                   " entries but dims sum to " +
                                   std::to_string(n));
    }
    a.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  Vector b = vector_field(field(doc, "b", ""), "/b");
  if (static_cast<std::uint64_t>(b.size()) != m) {
    throw FormatError("/b", "length " + std::to_string(b.size()) +
                                " differs from m = " + std::to_string(m));
  }
  Vector c = vector_field(field(doc, "c", ""), "/c");
  if (c.size() != n) {
    throw FormatError("/c", "length " + std::to_string(c.size()) +
                                " differs from n = " + std::to_string(n));
  }

  std::optional<Provenance> provenance;
  if (const auto it = doc.find("provenance"); it != doc.end() && !it->is_null()) {
    Provenance p;
    p.seed = count(field(*it, "seed", "/provenance"), "/provenance/seed");
    p.x_tilde = vector_field(field(*it, "x_tilde", "/provenance"),
                             "/provenance/x_tilde");
    p.s_tilde = vector_field(field(*it, "s_tilde", "/provenance"),
                             "/provenance/s_tilde");
    if (p.x_tilde.size() != n || p.s_tilde.size() != n) {
      throw FormatError("/provenance", "interior points must have n entries");
    }
    provenance = std::move(p);
  }

  try {
    return {SocpInstance(std::move(a), std::move(b), std::move(c), std::move(cone)),
            std::move(provenance)};
  } catch (const std::invalid_argument& e) {
    throw FormatError("", e.what());
  }
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return instance_from_string(text);
  } catch (const VersionError& e) {
    throw VersionError(path.string() + ": " + e.location(), e.detail());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.location(), e.detail());
  }
}

SocpInstance read_instance(const std::filesystem::path& path) {
  return read_instance_file(path).instance;
}

void write_instance(const SocpInstance& instance,
                    const std::filesystem::path& path,
                    const std::optional<Provenance>& provenance) {
  write_file(path, instance_to_string(instance, provenance));
}

ReportFormat report_format_from_string(std::string_view name) {
  if (name == "structured" || name == "json") return ReportFormat::kStructured;
  if (name == "csv-log" || name == "csv") return ReportFormat::kCsvLog;
  throw std::invalid_argument("unknown report format '" + std::string(name) +
                              "' (expected structured or csv-log)");
}

std::string report_to_string(const SolveReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsvLog) {
    std::string out(kCsvLogHeader);
    out += '\n';
    for (const IterationRecord& r : report.log) {
      out += std::to_string(r.k) + ',' + format_double(r.gamma) + ',' +
             format_double(r.zeta) + ',' + format_double(r.b_dist) + ',' +
             std::to_string(r.cuts_total) + ',' +
             std::to_string(r.qp_inner_iters) + '\n';
    }
    return out;
  }

  Json doc;
  doc["format_version"] = kReportFormat;
  doc["status"] = to_string(report.status);
  doc["message"] = report.message;
  doc["objective"] = report.objective;
  doc["x"] = vector_json(report.x);
  if (report.certificate) {
    Json cert;
    cert["y"] = vector_json(report.certificate->y);
    cert["eta"] = vector_json(report.certificate->eta);
    cert["source_iteration"] = report.certificate->source_iteration;
    cert["residuals"] = residuals_json(report.certificate->residuals);
    doc["certificate"] = std::move(cert);
  } else {
    doc["certificate"] = nullptr;
  }
  doc["residuals"] = residuals_json(report.residuals);
  doc["iterations"] = report.iterations;
  doc["wall_time_seconds"] = report.wall_time_seconds;
  doc["initial_gamma"] = report.initial_gamma;
  doc["gamma_escalations"] = report.gamma_escalations;
  Json planes;
  planes["initial"] = report.initial_hyperplanes;
  planes["final"] = report.final_hyperplanes;
  planes["final_cut_count"] = report.final_cut_count;
  doc["hyperplanes"] = std::move(planes);
  Json log = Json::array();
  for (const IterationRecord& r : report.log) {
    Json row;
    row["k"] = r.k;
    row["gamma"] = r.gamma;
    row["zeta"] = r.zeta;
    row["b_dist"] = r.b_dist;
    row["cuts_total"] = r.cuts_total;
    row["qp_inner_iters"] = r.qp_inner_iters;
    row["gamma_next"] = r.gamma_next;
    row["step_norm"] = r.step_norm;
    row["cuts_added"] = r.cuts_added;
    row["primal_residual"] = r.primal_residual;
    log.push_back(std::move(row));
  }
  doc["log"] = std::move(log);
  return doc.dump(1) + "\n";
}

SolveReport report_from_string(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) throw FormatError("", "expected a JSON object");
  check_version(doc, kReportFormat);

  SolveReport r;
  const Json& status = field(doc, "status", "");
  if (!status.is_string()) throw FormatError("/status", "expected a string");
  try {
    r.status = status_from_string(status.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError("/status", e.what());
  }
  if (const auto it = doc.find("message"); it != doc.end() && it->is_string()) {
    r.message = it->get<std::string>();
  }
  r.objective = number(field(doc, "objective", ""), "/objective", true);
  r.x = vector_field(field(doc, "x", ""), "/x", true);
  const Json& cert = field(doc, "certificate", "");
  if (!cert.is_null()) {
    DualCertificate c;
    c.y = vector_field(field(cert, "y", "/certificate"), "/certificate/y");
    c.eta = vector_field(field(cert, "eta", "/certificate"), "/certificate/eta");
    c.source_iteration = count(field(cert, "source_iteration", "/certificate"),
                               "/certificate/source_iteration");
    c.residuals = residuals_from(field(cert, "residuals", "/certificate"),
                                 "/certificate/residuals");
    r.certificate = std::move(c);
  }
  r.residuals = residuals_from(field(doc, "residuals", ""), "/residuals");
  r.iterations = count(field(doc, "iterations", ""), "/iterations");
  r.wall_time_seconds =
      number(field(doc, "wall_time_seconds", ""), "/wall_time_seconds");
  r.initial_gamma = number(field(doc, "initial_gamma", ""), "/initial_gamma");
  r.gamma_escalations =
      count(field(doc, "gamma_escalations", ""), "/gamma_escalations");
  const Json& planes = field(doc, "hyperplanes", "");
  r.initial_hyperplanes =
      count(field(planes, "initial", "/hyperplanes"), "/hyperplanes/initial");
  r.final_hyperplanes =
      count(field(planes, "final", "/hyperplanes"), "/hyperplanes/final");
  const Json& per_block = field(planes, "final_cut_count", "/hyperplanes");
  if (!per_block.is_array()) {
    throw FormatError("/hyperplanes/final_cut_count", "expected an array");
  }
  for (std::size_t i = 0; i < per_block.size(); ++i) {
    r.final_cut_count.push_back(
        count(per_block[i], "/hyperplanes/final_cut_count/" + std::to_string(i)));
  }
  const Json& log = field(doc, "log", "");
  if (!log.is_array()) throw FormatError("/log", "expected an array");
  for (std::size_t i = 0; i < log.size(); ++i) {
    const std::string where = "/log/" + std::to_string(i);
    const Json& row = log[i];
    IterationRecord rec;
    rec.k = count(field(row, "k", where), where + "/k");
    rec.gamma = number(field(row, "gamma", where), where + "/gamma");
    rec.zeta = number(field(row, "zeta", where), where + "/zeta");
    rec.b_dist = number(field(row, "b_dist", where), where + "/b_dist");
    rec.cuts_total = count(field(row, "cuts_total", where), where + "/cuts_total");
    rec.qp_inner_iters =
        count(field(row, "qp_inner_iters", where), where + "/qp_inner_iters");
    rec.gamma_next =
        number(field(row, "gamma_next", where), where + "/gamma_next", true);
    rec.step_norm = number(field(row, "step_norm", where), where + "/step_norm");
    rec.cuts_added = count(field(row, "cuts_added", where), where + "/cuts_added");
    rec.primal_residual =
        number(field(row, "primal_residual", where), where + "/primal_residual");
    r.log.push_back(std::move(rec));
  }
  if (r.log.size() != r.iterations) {
    throw FormatError("/log", "length differs from iterations");
  }
  return r;
}

void write_report(const SolveReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  write_file(path, report_to_string(report, format));
}

SolveReport read_report(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return report_from_string(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.location(), e.detail());
  }
}

}  // namespace alpn::io
