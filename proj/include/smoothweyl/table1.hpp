#pragma once

// The published parameter table for 6 <= k <= 20, kept as decimal strings so
// that every printed digit survives a load/serialise cycle unchanged.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "smoothweyl/exponents.hpp"

namespace smoothweyl {

using Rational = boost::multiprecision::cpp_rational;

/// A decimal as printed: the text is authoritative, the numeric views are
/// derived from it.
class Decimal {
public:
  Decimal() = default;
  explicit Decimal(std::string text);

  const std::string& text() const { return text_; }
  /// Digits after the decimal point.
  int decimals() const { return decimals_; }
  double value() const { return value_; }
  Rational exact() const;

  bool operator==(const Decimal& other) const { return text_ == other.text_; }

private:
  std::string text_;
  int decimals_ = 0;
  double value_ = 0.0;
};

struct Table1Row {
  int k = 0;
  int two_w = 0;
  Decimal delta_2w;
  Decimal T;
  int t = 0;
  Decimal delta_t;
  Decimal S;
};

class TableChecksumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The embedded CSV asset, byte for byte.
std::string_view table1_csv();
/// CRC-32 recorded for the embedded asset.
std::uint32_t table1_recorded_crc32();
std::uint32_t crc32_of(std::string_view bytes);

/// Parses a table in the embedded CSV layout
/// (header k,two_w,delta_2w,T,t,delta_t,S).
std::vector<Table1Row> parse_table1_csv(std::string_view csv);
std::string serialize_table1_csv(const std::vector<Table1Row>& rows);

/// Parses the embedded asset after checking its CRC-32.
std::vector<Table1Row> load_table1();
const Table1Row& table1_row(int k);

/// The two tabulated exponents of a row, (2w, Delta_2w) and (t, Delta_t).
ExponentTable row_exponent_table(const Table1Row& row);

/// User-supplied exponent table with columns k,t,delta_t. Only rows for the
/// requested k are kept. The order column is the moment order 2w, not w.
ExponentTable read_exponent_table_csv(std::istream& in, int k);
ExponentTable read_exponent_table_csv(const std::string& path, int k);

struct ColumnCheck {
  int k = 0;
  std::string printed;
  double recomputed = 0.0;
  double deviation = 0.0;  // printed - recomputed
  bool pass = false;
};

struct VerificationReport {
  std::string column;
  std::vector<ColumnCheck> rows;
  bool pass = false;
};

/// Recomputes 4w^2/(k - 2 Delta_2w) exactly and checks the printed value is
/// that number rounded up in its last printed digit.
VerificationReport verify_T_column(const std::vector<Table1Row>& rows);
/// Same check for t + (1 + Delta_t) T / 2 with T as printed.
VerificationReport verify_S_column(const std::vector<Table1Row>& rows);

/// Round-up semantics: recomputed <= printed and printed - recomputed < 10^{-d}.
bool rounds_up_to(const Rational& recomputed, const Decimal& printed);

}  // namespace smoothweyl
