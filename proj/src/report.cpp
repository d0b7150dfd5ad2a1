#include "smoothweyl/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace smoothweyl {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "md") return Format::Markdown;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (csv, json, md)");
}

void Report::add_row(std::vector<Json> cells) {
  if (cells.size() != columns.size()) {
    throw std::logic_error("report row width does not match its columns");
  }
  rows.push_back(std::move(cells));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int digits = 6; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string cell_text(const Json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_float()) return format_number(cell.get<double>());
  return cell.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

Json to_json(const Report& report) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = report.command;
  doc["pass"] = report.pass;
  if (!report.summary.empty()) doc["summary"] = report.summary;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string render(const Report& report, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json:
      out << to_json(report).dump(2) << '\n';
      break;
    case Format::Csv:
      for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(report.columns[i]);
      }
      out << '\n';
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out << (i ? "," : "") << csv_escape(cell_text(row[i]));
        }
        out << '\n';
      }
      break;
    case Format::Markdown:
      out << "### " << report.command << (report.pass ? " (pass)" : " (FAIL)") << "\n\n|";
      for (const auto& c : report.columns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t i = 0; i < report.columns.size(); ++i) out << " --- |";
      out << '\n';
      for (const auto& row : report.rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell_text(cell) << " |";
        out << '\n';
      }
      break;
  }
  return out.str();
}

Json to_json(const MinorArcParams& p) {
  return Json{{"k", p.k},
              {"tau", p.tau},
              {"tau_witness_w", p.tau_witness_w},
              {"sigma", p.sigma},
              {"sigma_witness_t", p.sigma_witness_t},
              {"lambda", p.lambda},
              {"rho", p.rho},
              {"provenance", std::string(to_string(p.provenance))}};
}

Json to_json(const Section5Verdict& v) {
  return Json{{"k", v.k},
              {"lhs", v.lhs},
              {"middle", v.middle},
              {"rhs", v.rhs},
              {"first_holds", v.first_holds},
              {"second_holds", v.second_holds},
              {"rho", v.rho},
              {"nu", v.nu},
              {"nu_valid", v.nu_valid},
              {"pass", v.pass()}};
}

Json to_json(const CrossoverVerdict& v) {
  return Json{{"k", v.k},
              {"S", v.S},
              {"k_times_k_minus_1", v.vinogradov},
              {"winner", v.smooth_bound_wins ? "smooth-weyl" : "vinogradov"}};
}

Json to_json(const VerificationReport& r) {
  Json rows = Json::array();
  for (const auto& c : r.rows) {
    rows.push_back(Json{{"k", c.k},
                        {"printed", c.printed},
                        {"recomputed", c.recomputed},
                        {"deviation", c.deviation},
                        {"pass", c.pass}});
  }
  return Json{{"column", r.column}, {"pass", r.pass}, {"rows", std::move(rows)}};
}

Json to_json(const BoundEvaluation& b) {
  return Json{{"k", b.k},
              {"P", b.P},
              {"M", b.M},
              {"q", b.q},
              {"t", b.t},
              {"delta_t", b.delta_t},
              {"eps", b.eps},
              {"R", b.R},
              {"m_term", b.m_term},
              {"main_term", b.main_term},
              {"value", b.value},
              {"dominant_term", b.dominant_term == BoundTerm::MTerm ? "M" : "main"}};
}

Json to_json(const RationalApprox& r) {
  return Json{{"a", r.a.get_str()}, {"q", r.q.get_str()}, {"quality", r.quality}};
}

Json to_json(const ArcVerdict& v) {
  return Json{{"verdict", v.major ? "major" : "minor"},
              {"a", v.witness.a.get_str()},
              {"q", v.witness.q.get_str()},
              {"quality", v.witness.quality},
              {"P", v.P},
              {"k", v.k},
              {"Q", v.Q},
              {"threshold", v.threshold},
              {"Q_in_range", v.Q_in_range}};
}

}  // namespace smoothweyl
