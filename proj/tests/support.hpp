#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "autonarm/dataset.hpp"
#include "autonarm/metrics.hpp"
#include "autonarm/rules.hpp"

namespace testing {

using namespace autonarm;

// {(2,r),(5,r),(7,g),(9,b)} with A declared over [0, 10].
inline TransactionDatabase toy_db() {
  std::vector<Attribute> attrs{{"A", AttributeKind::Numeric, 0.0, 10.0, {}},
                               {"B", AttributeKind::Categorical, 0, 0, {"r", "g", "b"}}};
  return TransactionDatabase(attrs, {2, 0, 5, 0, 7, 1, 9, 2});
}

// Rule A in [1, 6] => B = r on toy_db().
inline Rule toy_rule() {
  return Rule{{Condition{0, NumericInterval{1.0, 6.0}}}, {Condition{1, CategoryEquals{0}}}};
}

// Random mixed-type table; numeric values drawn from a small grid so that
// interval endpoints often coincide with cells.
inline TransactionDatabase random_db(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> cells(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    names.push_back("c" + std::to_string(c));
    const bool categorical = gen() % 3 == 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (categorical) {
        cells[r].push_back(std::string(1, static_cast<char>('a' + gen() % 3)));
      } else {
        cells[r].push_back(std::to_string(static_cast<int>(gen() % 9)) + ".5");
      }
    }
  }
  return TransactionDatabase::from_text(names, cells);
}

// Bolts-sized synthetic data: 40 rows, 8 numeric columns with some structure.
inline TransactionDatabase bolts_like(std::uint64_t seed = 11) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> names;
  for (int c = 0; c < 8; ++c) names.push_back("x" + std::to_string(c));
  std::vector<std::vector<std::string>> rows;
  for (int r = 0; r < 40; ++r) {
    const double base = u(gen) * 10.0;
    std::vector<std::string> row;
    for (int c = 0; c < 8; ++c) {
      const double v = c % 2 == 0 ? base + u(gen) : u(gen) * 50.0;
      row.push_back(format_real(std::round(v * 100.0) / 100.0));
    }
    rows.push_back(row);
  }
  return TransactionDatabase::from_text(names, rows);
}

// Membership checked straight from the raw cells.
inline bool oracle_holds(const Condition& c, const TransactionDatabase& db, std::size_t r) {
  const double v = db.value(r, c.attribute_index);
  if (c.form.index() == 0) {
    const auto& iv = std::get<0>(c.form);
    return !(v < iv.lo) && !(v > iv.hi);
  }
  return std::llround(v) == static_cast<long long>(std::get<1>(c.form).category_index);
}

struct OracleCounts {
  long long n = 0, x = 0, y = 0, xy = 0;
};

inline OracleCounts oracle_counts(const Rule& rule, const TransactionDatabase& db) {
  OracleCounts out;
  out.n = static_cast<long long>(db.n_transactions());
  for (std::size_t r = 0; r < db.n_transactions(); ++r) {
    bool in_x = true, in_y = true;
    for (const auto& c : rule.antecedent) in_x = in_x && oracle_holds(c, db, r);
    for (const auto& c : rule.consequent) in_y = in_y && oracle_holds(c, db, r);
    out.x += in_x;
    out.y += in_y;
    out.xy += in_x && in_y;
  }
  return out;
}

inline double ratio(long long num, long long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Metrics recomputed from integer counts in pool order.
inline std::array<double, 6> oracle_metrics(const Rule& rule, const TransactionDatabase& db) {
  const auto k = oracle_counts(rule, db);
  const double conf = ratio(k.xy, k.x);
  return {ratio(k.xy, k.n), conf, ratio(k.y, k.n), conf - ratio(k.y, k.n), conf, ratio(k.xy, k.y)};
}

inline std::vector<double> random_point(std::mt19937_64& gen, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(dim);
  for (auto& v : x) v = u(gen);
  return x;
}

// Scratch directory unique to the test process.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("autonarm-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing
