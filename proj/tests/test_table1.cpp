#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>

#include "smoothweyl/table1.hpp"

using namespace smoothweyl;

namespace {

std::uint32_t crc32_bitwise(std::string_view bytes) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (unsigned char c : bytes) {
    crc ^= c;
    for (int i = 0; i < 8; ++i) crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

// Decimal text to an integer count of 10^-d units.
__int128 scaled(const std::string& text, int d) {
  __int128 v = 0;
  int after = -1;
  for (char c : text) {
    if (c == '.') {
      after = 0;
      continue;
    }
    v = v * 10 + (c - '0');
    if (after >= 0) ++after;
  }
  for (int i = std::max(after, 0); i < d; ++i) v *= 10;
  return v;
}

// printed >= num/den > printed - 10^-d, all in units of 10^-d.
bool rounds_up(__int128 printed_units, __int128 num, __int128 den) {
  return printed_units * den >= num && (printed_units - 1) * den < num;
}

}  // namespace

TEST_CASE("embedded table rows") {
  const auto rows = load_table1();
  REQUIRE(rows.size() == 15);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].k == static_cast<int>(6 + i));

  const auto& r6 = table1_row(6);
  CHECK(r6.two_w == 10);
  CHECK(r6.delta_2w.text() == "1.724697");
  CHECK(r6.T.text() == "39.2064");
  CHECK(r6.t == 22);
  CHECK(r6.delta_t.text() == "0.086042");
  CHECK(r6.S.text() == "43.2899");

  const auto& r13 = table1_row(13);
  CHECK(r13.two_w == 24);
  CHECK(r13.delta_2w.text() == "3.755717");
  CHECK(r13.T.text() == "104.9455");
  CHECK(r13.t == 60);
  CHECK(r13.delta_t.text() == "0.239277");
  CHECK(r13.S.text() == "125.0283");

  for (const auto& r : rows) {
    CHECK(r.two_w % 2 == 0);
    CHECK(r.t % 2 == 0);
    CHECK(r.t > r.k + 1);
    CHECK(r.delta_2w.decimals() == 6);
    CHECK(r.delta_t.decimals() == 6);
    CHECK(r.T.decimals() == 4);
    CHECK(r.S.decimals() == 4);
  }
  CHECK_THROWS_AS(table1_row(5), std::out_of_range);
}

TEST_CASE("checksum") {
  CHECK(crc32_of(table1_csv()) == table1_recorded_crc32());
  CHECK(crc32_bitwise(table1_csv()) == table1_recorded_crc32());
  CHECK(crc32_of("123456789") == 0xCBF43926u);
  std::string altered(table1_csv());
  altered[altered.find("39.2064")] = '4';
  CHECK(crc32_of(altered) != table1_recorded_crc32());
}

TEST_CASE("round trip keeps every digit") {
  const auto rows = load_table1();
  const std::string text = serialize_table1_csv(rows);
  CHECK(text == table1_csv());
  const auto again = parse_table1_csv(text);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].delta_2w == rows[i].delta_2w);
    CHECK(again[i].T == rows[i].T);
    CHECK(again[i].delta_t == rows[i].delta_t);
    CHECK(again[i].S == rows[i].S);
  }
}

TEST_CASE("malformed table text") {
  CHECK_THROWS_AS(parse_table1_csv("k,2w,delta_2w,T,t,delta_t,S\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_table1_csv("k,two_w,delta_2w,T,t,delta_t,S\n6,10,1.7x,39.2,22,0.08,43.2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_table1_csv("k,two_w,delta_2w,T,t,delta_t,S\n6,10,1.7\n"),
                  std::invalid_argument);
}

TEST_CASE("decimal parsing") {
  CHECK(Decimal("0.086042").exact() == Rational(86042, 1000000));
  CHECK(Decimal("039.2064").exact() == Rational(392064, 10000));
  CHECK(Decimal("7").exact() == 7);
  CHECK(Decimal("-1.50").exact() == Rational(-3, 2));
  CHECK(Decimal("-1.50").decimals() == 2);
  CHECK_THROWS_AS(Decimal("1."), std::invalid_argument);
  CHECK_THROWS_AS(Decimal(".5"), std::invalid_argument);
  CHECK_THROWS_AS(Decimal("1e3"), std::invalid_argument);
}

TEST_CASE("column checks against integer recomputation") {
  const auto rows = load_table1();
  const auto T = verify_T_column(rows);
  const auto S = verify_S_column(rows);
  CHECK(T.pass);
  CHECK(S.pass);
  REQUIRE(T.rows.size() == 15);
  REQUIRE(S.rows.size() == 15);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    // T' = (2w)^2 / (k - 2 Delta), Delta in 1e-6 units; T in 1e-4 units.
    const __int128 den_T = __int128(r.k) * 1000000 - 2 * scaled(r.delta_2w.text(), 6);
    const __int128 num_T = __int128(r.two_w) * r.two_w * 1000000 * 10000;
    CHECK(rounds_up(scaled(r.T.text(), 4), num_T, den_T));
    CHECK(T.rows[i].pass);
    CHECK(T.rows[i].deviation >= 0.0);
    CHECK(T.rows[i].deviation < 1e-4);

    // S' = t + (1 + Delta_t) T / 2 = (2t 10^10 + (10^6 + Dt)(T)) / (2 10^10).
    const __int128 num_S = 2 * __int128(r.t) * 10000000000LL +
                           (1000000 + scaled(r.delta_t.text(), 6)) * scaled(r.T.text(), 4);
    const __int128 den_S = 2 * __int128(10000000000LL);
    CHECK(rounds_up(scaled(r.S.text(), 4), num_S * 10000, den_S));
    CHECK(S.rows[i].pass);
    CHECK(S.rows[i].deviation < 1e-4);
  }
  CHECK(T.rows[0].recomputed == doctest::Approx(39.20636899623));
  CHECK(T.rows[14].recomputed == doctest::Approx(169.17476456121));
  CHECK(S.rows[0].recomputed == doctest::Approx(43.2898985344));
  CHECK(S.rows[4].recomputed == doctest::Approx(89.885400512));
  CHECK(S.rows[7].recomputed == doctest::Approx(125.02827220175));
}

TEST_CASE("a perturbed exponent flips the verdict") {
  for (const double shift : {1e-3, -1e-3}) {
    for (std::size_t i = 0; i < 15; ++i) {
      auto rows = load_table1();
      const Rational moved = rows[i].delta_2w.exact() + Rational(shift > 0 ? 1 : -1, 1000);
      // Six decimals keep the perturbation exact.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", moved.convert_to<double>());
      rows[i].delta_2w = Decimal(buf);
      const auto report = verify_T_column(rows);
      CHECK_FALSE(report.pass);
      CHECK_FALSE(report.rows[i].pass);
    }
  }
}

TEST_CASE("round-up semantics") {
  CHECK(rounds_up_to(Rational(392064, 10000), Decimal("39.2064")));
  CHECK(rounds_up_to(Rational(3920631, 100000), Decimal("39.2064")));
  CHECK_FALSE(rounds_up_to(Rational(3920641, 100000), Decimal("39.2064")));
  CHECK_FALSE(rounds_up_to(Rational(392063, 10000), Decimal("39.2064")));
}

TEST_CASE("user exponent tables") {
  std::istringstream in(
      "k,t,delta_t\n"
      "# orders are moment orders 2w\n"
      "6,10,1.724697\n"
      "\n"
      "7,12,2.0\n"
      "6,22,0.086042\n");
  const auto table = read_exponent_table_csv(in, 6);
  CHECK(table.entries().size() == 2);
  CHECK(table.t_min() == 10.0);
  CHECK(table.t_max() == 22.0);

  std::istringstream none("k,t,delta_t\n7,12,2.0\n");
  CHECK_THROWS_AS(read_exponent_table_csv(none, 6), std::invalid_argument);
  std::istringstream bad_header("k,w,delta\n6,10,1.0\n");
  CHECK_THROWS_AS(read_exponent_table_csv(bad_header, 6), std::invalid_argument);
  CHECK_THROWS_AS(read_exponent_table_csv(std::string("/nonexistent/table.csv"), 6),
                  std::invalid_argument);

  const auto row = row_exponent_table(table1_row(6));
  CHECK(row.lookup(10.0) == 1.724697);
  CHECK(row.lookup(22.0) == 0.086042);
}
