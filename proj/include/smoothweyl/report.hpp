#pragma once

// Tabular reports rendered as CSV, JSON or Markdown. Output is a pure
// function of the report contents.

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "smoothweyl/arc_params.hpp"
#include "smoothweyl/fracparts.hpp"
#include "smoothweyl/smooth_spectrum.hpp"
#include "smoothweyl/table1.hpp"

namespace smoothweyl {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class Format { Csv, Json, Markdown };

Format parse_format(std::string_view name);

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json summary = Json::object();
  bool pass = true;

  void add_row(std::vector<Json> cells);
};

std::string render(const Report& report, Format format);
Json to_json(const Report& report);

/// Shortest text that reads back to the same double.
std::string format_number(double x);

Json to_json(const MinorArcParams& p);
Json to_json(const Section5Verdict& v);
Json to_json(const CrossoverVerdict& v);
Json to_json(const VerificationReport& r);
Json to_json(const BoundEvaluation& b);
Json to_json(const RationalApprox& r);
Json to_json(const ArcVerdict& v);

}  // namespace smoothweyl
