#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace autonarm {

enum class AttributeKind { Numeric, Categorical };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;
  double min = 0.0;  // Numeric only
  double max = 0.0;  // Numeric only
  std::vector<std::string> categories;  // Categorical only, first-appearance order

  bool is_numeric() const noexcept { return kind == AttributeKind::Numeric; }

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct NumericDomain {
  double min;
  double max;
  friend bool operator==(const NumericDomain&, const NumericDomain&) = default;
};
using CategoricalDomain = std::vector<std::string>;
using AttributeDomain = std::variant<NumericDomain, CategoricalDomain>;

/// Immutable typed table. Cells are stored row-major as doubles; a
/// categorical cell holds the index of its category.
class TransactionDatabase {
 public:
  /// Validates every invariant (row width, domain membership, non-empty).
  TransactionDatabase(std::vector<Attribute> attributes, std::vector<double> cells);

  /// Infers the schema from text cells: a column is Numeric iff every cell
  /// parses as a finite real.
  static TransactionDatabase from_text(std::vector<std::string> names,
                                       const std::vector<std::vector<std::string>>& rows);

  /// Builds a database from cells whose numeric domains are recomputed from the data.
  static TransactionDatabase with_recomputed_domains(std::vector<Attribute> attributes, std::vector<double> cells);

  std::size_t n_transactions() const noexcept { return n_rows_; }
  std::size_t n_attributes() const noexcept { return attributes_.size(); }

  std::span<const Attribute> attributes() const noexcept { return attributes_; }
  const Attribute& attribute(std::size_t index) const;

  std::span<const double> row(std::size_t r) const noexcept {
    return {cells_.data() + r * attributes_.size(), attributes_.size()};
  }
  double value(std::size_t r, std::size_t column) const noexcept { return cells_[r * attributes_.size() + column]; }
  std::span<const double> cells() const noexcept { return cells_; }

  /// Column values in row order.
  std::vector<double> column(std::size_t index) const;

  /// Text form of a cell as it would appear in a CSV file.
  std::string cell_text(std::size_t r, std::size_t column) const;

  friend bool operator==(const TransactionDatabase&, const TransactionDatabase&) = default;

 private:
  std::vector<Attribute> attributes_;
  std::vector<double> cells_;
  std::size_t n_rows_ = 0;
};

AttributeDomain attribute_domain(const TransactionDatabase& db, std::size_t index);

TransactionDatabase parse_csv(std::istream& in, bool header);
TransactionDatabase load_csv(const std::filesystem::path& path, bool header);

/// Removes the named columns. Unknown names raise InvalidArgument.
TransactionDatabase drop_columns(const TransactionDatabase& db, const std::vector<std::string>& names);

void write_csv(const TransactionDatabase& db, std::ostream& out, bool header);
void write_csv(const TransactionDatabase& db, const std::filesystem::path& path, bool header);

/// Shortest text that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace autonarm
