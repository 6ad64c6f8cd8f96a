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

// Instance and report files.
//
// Both formats are JSON documents tagged with a format_version string. Doubles
// are written in the shortest decimal form that parses back to the same bits,
// so write -> read is exact. See docs/file-formats.md for worked examples.

#ifndef ALPN_IO_HPP_
#define ALPN_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "alpn/model.hpp"

namespace alpn::io {

inline constexpr std::string_view kInstanceFormat = "alpn-socp/1";
inline constexpr std::string_view kReportFormat = "alpn-report/1";
inline constexpr std::string_view kCsvLogHeader =
    "k,gamma,zeta,b_dist,cuts_total,qp_inner_iters";

/// Malformed input. `location()` is "line L, column C" for syntax errors and
/// a JSON pointer such as "/A/3" for shape or type errors.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string location, std::string detail)
      : std::runtime_error(location.empty() ? detail : location + ": " + detail),
        location_(std::move(location)),
        detail_(std::move(detail)) {}
  const std::string& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string location_;
  std::string detail_;
};

/// Version tag other than kInstanceFormat / kReportFormat.
class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

struct Provenance {
  std::uint64_t seed = 0;
  Vector x_tilde;
  Vector s_tilde;
};

struct InstanceFile {
  SocpInstance instance;
  std::optional<Provenance> provenance;
};

std::string instance_to_string(const SocpInstance& instance,
                               const std::optional<Provenance>& provenance = {});
InstanceFile instance_from_string(std::string_view text);

/// Throws std::runtime_error on I/O failure and FormatError on bad content.
InstanceFile read_instance_file(const std::filesystem::path& path);
SocpInstance read_instance(const std::filesystem::path& path);
void write_instance(const SocpInstance& instance,
                    const std::filesystem::path& path,
                    const std::optional<Provenance>& provenance = {});

enum class ReportFormat { kStructured, kCsvLog };

/// Parses "structured" / "json" or "csv-log" / "csv".
ReportFormat report_format_from_string(std::string_view name);

std::string report_to_string(const SolveReport& report, ReportFormat format);
/// Structured reports only. Per-iteration hyperplane normals and dual
/// estimates are not part of the file and come back empty.
SolveReport report_from_string(std::string_view text);
void write_report(const SolveReport& report, const std::filesystem::path& path,
                  ReportFormat format);
SolveReport read_report(const std::filesystem::path& path);

/// Shortest round-trip decimal form of `value`.
std::string format_double(double value);

}  // namespace alpn::io

#endif  // ALPN_IO_HPP_
