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

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "alpn/generator.hpp"
#include "alpn/solver.hpp"
#include "test_support.hpp"

namespace alpn {
namespace {

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) ++lines;
  return lines;
}

TEST(InstanceIoTest, RoundTripIsBitExact) {
  const GeneratedInstance g = generate(6, {1, 3, 5}, 12);
  const io::Provenance prov{g.seed, g.x_tilde, g.s_tilde};
  const io::InstanceFile back =
      io::instance_from_string(io::instance_to_string(g.instance, prov));
  EXPECT_EQ(back.instance.A(), g.instance.A());
  EXPECT_EQ(back.instance.b(), g.instance.b());
  EXPECT_EQ(back.instance.c(), g.instance.c());
  EXPECT_EQ(back.instance.cone(), g.instance.cone());
  ASSERT_TRUE(back.provenance.has_value());
  EXPECT_EQ(back.provenance->seed, 12u);
  EXPECT_EQ(back.provenance->x_tilde, g.x_tilde);
}

TEST(InstanceIoTest, FileRoundTrip) {
  const auto dir = testing::scratch_dir("io");
  const GeneratedInstance g = generate(3, {2, 2}, 1);
  io::write_instance(g.instance, dir / "inst.json");
  const SocpInstance back = io::read_instance(dir / "inst.json");
  EXPECT_EQ(back.A(), g.instance.A());
  EXPECT_FALSE(io::read_instance_file(dir / "inst.json").provenance.has_value());
  std::filesystem::remove_all(dir);
}

TEST(InstanceIoTest, ShapeMismatchNamesField) {
  const std::string text = R"({"format_version": "alpn-socp/1", "m": 1,
    "dims": [2, 1], "A": [[1, 0]], "b": [1], "c": [0, 1]})";
  try {
    io::instance_from_string(text);
    FAIL() << "expected a format error";
  } catch (const io::VersionError&) {
    FAIL() << "not a version problem";
  } catch (const io::FormatError& e) {
    EXPECT_EQ(e.location().rfind("/A", 0), 0u) << e.what();
  }
}

TEST(InstanceIoTest, VersionMismatch) {
  const std::string text = R"({"format_version": "alpn-socp/2", "m": 1,
    "dims": [2], "A": [[1, 0]], "b": [1], "c": [0, 1]})";
  EXPECT_THROW(io::instance_from_string(text), io::VersionError);
}

TEST(InstanceIoTest, SyntaxErrorReportsLine) {
  const std::string text = "{\n \"format_version\": \"alpn-socp/1\",\n \"m\": ,\n}";
  try {
    io::instance_from_string(text);
    FAIL() << "expected a format error";
  } catch (const io::FormatError& e) {
    EXPECT_NE(e.location().find("line 3"), std::string::npos) << e.what();
  }
}

TEST(InstanceIoTest, MissingAndMistypedFields) {
  EXPECT_THROW(io::instance_from_string(
                   R"({"format_version": "alpn-socp/1", "m": 1, "dims": [2]})"),
               io::FormatError);
  EXPECT_THROW(io::instance_from_string(
                   R"({"format_version": "alpn-socp/1", "m": 1, "dims": [2],
                       "A": [[1, "x"]], "b": [1], "c": [0, 1]})"),
               io::FormatError);
  EXPECT_THROW(io::read_instance("/nonexistent/alpn/instance.json"),
               std::runtime_error);
}

TEST(ReportIoTest, StructuredRoundTrip) {
  const GeneratedInstance g = generate(4, {3, 3, 1}, 6);
  const SolveReport r = solve(g.instance);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const std::string text = io::report_to_string(r, io::ReportFormat::kStructured);
  EXPECT_NE(text.find("\"status\": \"optimal\""), std::string::npos);
  const SolveReport back = io::report_from_string(text);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.x, r.x);
  EXPECT_EQ(back.objective, r.objective);
  EXPECT_EQ(back.iterations, r.iterations);
  EXPECT_EQ(back.final_hyperplanes, r.final_hyperplanes);
  EXPECT_EQ(back.final_cut_count, r.final_cut_count);
  ASSERT_TRUE(back.certificate.has_value());
  EXPECT_EQ(back.certificate->y, r.certificate->y);
  ASSERT_EQ(back.log.size(), r.log.size());
  for (std::size_t k = 0; k < r.log.size(); ++k) {
    EXPECT_EQ(back.log[k].gamma, r.log[k].gamma);
    EXPECT_EQ(back.log[k].zeta, r.log[k].zeta);
    EXPECT_EQ(back.log[k].qp_inner_iters, r.log[k].qp_inner_iters);
  }
  EXPECT_EQ(io::report_to_string(back, io::ReportFormat::kStructured), text);
}

TEST(ReportIoTest, CsvLogRowsAndMonotoneGamma) {
  const GeneratedInstance g = generate(5, {4, 4, 4}, 2);
  const SolveReport r = solve(g.instance);
  const std::string csv = io::report_to_string(r, io::ReportFormat::kCsvLog);
  EXPECT_EQ(count_lines(csv), r.iterations + 1);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, io::kCsvLogHeader);
  double previous = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string k;
    std::string gamma;
    std::getline(fields, k, ',');
    std::getline(fields, gamma, ',');
    const double value = std::stod(gamma);
    EXPECT_LE(value, previous);
    previous = value;
  }
}

TEST(ReportIoTest, CsvOfFiveIterations) {
  SolveReport r;
  r.status = SolveStatus::kIterationLimit;
  for (std::size_t k = 0; k < 5; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.gamma = 5.0 - static_cast<double>(k);
    r.log.push_back(rec);
  }
  r.iterations = 5;
  EXPECT_EQ(count_lines(io::report_to_string(r, io::ReportFormat::kCsvLog)), 6u);
}

TEST(ReportIoTest, FormatNames) {
  EXPECT_EQ(io::report_format_from_string("structured"), io::ReportFormat::kStructured);
  EXPECT_EQ(io::report_format_from_string("csv-log"), io::ReportFormat::kCsvLog);
  EXPECT_THROW(io::report_format_from_string("xml"), std::invalid_argument);
}

TEST(ReportIoTest, RejectsWrongVersion) {
  EXPECT_THROW(io::report_from_string(R"({"format_version": "alpn-report/9"})"),
               io::VersionError);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

}  // namespace
}  // namespace alpn
