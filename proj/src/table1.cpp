#include "smoothweyl/table1.hpp"

#include <algorithm>
#include <boost/crc.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace smoothweyl {

namespace detail {
extern const std::string_view kTable1Csv;
}

namespace {

constexpr std::uint32_t kTable1Crc32 = 0x4f3f332c;
constexpr std::string_view kTable1Header = "k,two_w,delta_2w,T,t,delta_t,S";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

int parse_int(std::string_view s, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("malformed integer for ") + what + ": '" +
                                std::string(s) + "'");
  }
  return value;
}

Rational pow10(int d) {
  Rational r = 1;
  for (int i = 0; i < d; ++i) r *= 10;
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

Decimal::Decimal(std::string text) : text_(std::move(text)) {
  std::string_view s = text_;
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  const auto dot = s.find('.');
  const auto int_part = s.substr(0, dot);
  const auto frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  auto all_digits = [](std::string_view p) {
    return std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (int_part.empty() || !all_digits(int_part) || !all_digits(frac_part) ||
      (dot != std::string_view::npos && frac_part.empty())) {
    throw std::invalid_argument("malformed decimal '" + text_ + "'");
  }
  decimals_ = static_cast<int>(frac_part.size());
  value_ = std::stod(text_);
}

Rational Decimal::exact() const {
  // A leading 0 would make cpp_int read the digits as octal.
  std::string digits;
  bool negative = false;
  for (char c : text_) {
    if (c == '-') {
      negative = true;
    } else if (c != '.' && !(c == '0' && digits.empty())) {
      digits.push_back(c);
    }
  }
  if (digits.empty()) return Rational(0);
  const Rational magnitude = Rational(boost::multiprecision::cpp_int(digits)) / pow10(decimals_);
  return negative ? Rational(-magnitude) : magnitude;
}

std::string_view table1_csv() { return detail::kTable1Csv; }

std::uint32_t table1_recorded_crc32() { return kTable1Crc32; }

std::uint32_t crc32_of(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::vector<Table1Row> parse_table1_csv(std::string_view csv) {
  const auto lines = lines_of(csv);
  if (lines.empty() || lines.front() != kTable1Header) {
    throw std::invalid_argument("table CSV must start with header '" + std::string(kTable1Header) +
                                "'");
  }
  std::vector<Table1Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 7) {
      throw std::invalid_argument("table CSV line " + std::to_string(i + 1) + " has " +
                                  std::to_string(f.size()) + " fields, expected 7");
    }
    Table1Row r;
    r.k = parse_int(f[0], "k");
    r.two_w = parse_int(f[1], "two_w");
    r.delta_2w = Decimal(std::string(f[2]));
    r.T = Decimal(std::string(f[3]));
    r.t = parse_int(f[4], "t");
    r.delta_t = Decimal(std::string(f[5]));
    r.S = Decimal(std::string(f[6]));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string serialize_table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << kTable1Header << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << r.two_w << ',' << r.delta_2w.text() << ',' << r.T.text() << ',' << r.t
        << ',' << r.delta_t.text() << ',' << r.S.text() << '\n';
  }
  return out.str();
}

std::vector<Table1Row> load_table1() {
  const auto csv = table1_csv();
  if (crc32_of(csv) != kTable1Crc32) {
    throw TableChecksumError("embedded parameter table fails its CRC-32 check");
  }
  auto rows = parse_table1_csv(csv);
  std::set<int> seen;
  for (const auto& r : rows) {
    if (r.k < 6 || r.k > 20 || !seen.insert(r.k).second) {
      throw TableChecksumError("embedded table has an invalid or repeated k = " +
                               std::to_string(r.k));
    }
    if (r.two_w % 2 != 0 || r.t % 2 != 0 || r.t <= r.k + 1) {
      throw TableChecksumError("embedded table row k = " + std::to_string(r.k) +
                               " violates its order constraints");
    }
  }
  if (rows.size() != 15) throw TableChecksumError("embedded table must have 15 rows");
  return rows;
}

const Table1Row& table1_row(int k) {
  static const std::vector<Table1Row> rows = load_table1();
  auto it = std::find_if(rows.begin(), rows.end(), [k](const Table1Row& r) { return r.k == k; });
  if (it == rows.end()) {
    throw std::out_of_range("no table row for k = " + std::to_string(k) + " (table covers 6..20)");
  }
  return *it;
}

ExponentTable row_exponent_table(const Table1Row& row) {
  ExponentTable table(row.k);
  table.add(row.two_w, row.delta_2w.value());
  table.add(row.t, row.delta_t.value());
  return table;
}

ExponentTable read_exponent_table_csv(std::istream& in, int k) {
  ExponentTable table(k);
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "k,t,delta_t") {
        throw std::invalid_argument("exponent table must start with header 'k,t,delta_t'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 3) {
      throw std::invalid_argument("exponent table line " + std::to_string(line_no) +
                                  ": expected 3 fields");
    }
    if (parse_int(f[0], "k") != k) continue;
    const Decimal t{std::string(f[1])};
    const Decimal d{std::string(f[2])};
    table.add(t.value(), d.value());
  }
  if (table.empty()) {
    throw std::invalid_argument("exponent table has no rows for k = " + std::to_string(k));
  }
  return table;
}

ExponentTable read_exponent_table_csv(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open exponent table '" + path + "'");
  return read_exponent_table_csv(in, k);
}

bool rounds_up_to(const Rational& recomputed, const Decimal& printed) {
  const Rational p = printed.exact();
  return recomputed <= p && p - recomputed < 1 / pow10(printed.decimals());
}

namespace {

template <class Recompute>
VerificationReport verify_column(const std::vector<Table1Row>& rows, std::string column,
                                 const Decimal Table1Row::*printed, Recompute recompute) {
  VerificationReport report;
  report.column = std::move(column);
  report.pass = !rows.empty();
  for (const auto& r : rows) {
    const Rational exact = recompute(r);
    const Decimal& p = r.*printed;
    ColumnCheck c;
    c.k = r.k;
    c.printed = p.text();
    c.recomputed = to_double(exact);
    c.deviation = to_double(p.exact() - exact);
    c.pass = rounds_up_to(exact, p);
    report.pass = report.pass && c.pass;
    report.rows.push_back(std::move(c));
  }
  return report;
}

}  // namespace

VerificationReport verify_T_column(const std::vector<Table1Row>& rows) {
  return verify_column(rows, "T", &Table1Row::T, [](const Table1Row& r) {
    const Rational denom = Rational(r.k) - 2 * r.delta_2w.exact();
    if (denom <= 0) throw std::domain_error("k - 2 Delta_2w must be positive");
    return Rational(r.two_w) * r.two_w / denom;
  });
}

VerificationReport verify_S_column(const std::vector<Table1Row>& rows) {
  return verify_column(rows, "S", &Table1Row::S, [](const Table1Row& r) {
    return Rational(r.t) + (1 + r.delta_t.exact()) * r.T.exact() / 2;
  });
}

}  // namespace smoothweyl
