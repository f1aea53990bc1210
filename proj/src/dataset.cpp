#include "autonarm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "autonarm/error.hpp"

namespace autonarm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_finite(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Splits one CSV record. Quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::string(trim(field)));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::string(trim(field)));
  return fields;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

std::string quote_if_needed(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos && trim(text) == text) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void check_invariants(const std::vector<Attribute>& attributes, const std::vector<double>& cells) {
  if (attributes.empty()) throw InvalidArgument("database has no attributes");
  if (cells.empty()) throw EmptyDataset();
  if (cells.size() % attributes.size() != 0) {
    throw RaggedRows(cells.size() / attributes.size(), cells.size() % attributes.size(), attributes.size());
  }
  const std::size_t width = attributes.size();
  for (std::size_t j = 0; j < width; ++j) {
    const Attribute& a = attributes[j];
    if (a.is_numeric()) {
      if (!std::isfinite(a.min) || !std::isfinite(a.max) || a.min > a.max) {
        throw InvalidArgument("attribute '" + a.name + "' has an invalid numeric domain");
      }
    } else if (a.categories.empty()) {
      throw InvalidArgument("categorical attribute '" + a.name + "' has no categories");
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Attribute& a = attributes[i % width];
    const double v = cells[i];
    if (a.is_numeric()) {
      if (!(v >= a.min && v <= a.max)) {
        throw InvalidArgument("cell outside domain of attribute '" + a.name + "'");
      }
    } else if (!(v >= 0.0 && v < static_cast<double>(a.categories.size()) && v == std::floor(v))) {
      throw InvalidArgument("cell is not a category of attribute '" + a.name + "'");
    }
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

TransactionDatabase::TransactionDatabase(std::vector<Attribute> attributes, std::vector<double> cells)
    : attributes_(std::move(attributes)), cells_(std::move(cells)) {
  check_invariants(attributes_, cells_);
  n_rows_ = cells_.size() / attributes_.size();
}

TransactionDatabase TransactionDatabase::with_recomputed_domains(std::vector<Attribute> attributes,
                                                                 std::vector<double> cells) {
  const std::size_t width = attributes.size();
  if (width == 0) throw InvalidArgument("database has no attributes");
  if (cells.empty()) throw EmptyDataset();
  for (std::size_t j = 0; j < width; ++j) {
    Attribute& a = attributes[j];
    if (!a.is_numeric()) continue;
    a.min = cells[j];
    a.max = cells[j];
    for (std::size_t i = j; i < cells.size(); i += width) {
      a.min = std::min(a.min, cells[i]);
      a.max = std::max(a.max, cells[i]);
    }
  }
  return TransactionDatabase(std::move(attributes), std::move(cells));
}

TransactionDatabase TransactionDatabase::from_text(std::vector<std::string> names,
                                                   const std::vector<std::vector<std::string>>& rows) {
  const std::size_t width = names.size();
  if (width == 0) throw InvalidArgument("database has no attributes");
  if (rows.empty()) throw EmptyDataset();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw RaggedRows(r, rows[r].size(), width);
    for (std::size_t j = 0; j < width; ++j) {
      if (trim(rows[r][j]).empty()) throw MissingCell(r, j);
    }
  }

  std::vector<Attribute> attributes(width);
  std::vector<double> cells(rows.size() * width);
  for (std::size_t j = 0; j < width; ++j) {
    Attribute& a = attributes[j];
    a.name = std::move(names[j]);
    bool numeric = true;
    for (std::size_t r = 0; r < rows.size() && numeric; ++r) {
      numeric = parse_finite(rows[r][j], cells[r * width + j]);
    }
    if (numeric) {
      a.kind = AttributeKind::Numeric;
      continue;
    }
    a.kind = AttributeKind::Categorical;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string key(trim(rows[r][j]));
      auto [it, inserted] = seen.try_emplace(key, a.categories.size());
      if (inserted) a.categories.push_back(std::move(key));
      cells[r * width + j] = static_cast<double>(it->second);
    }
  }
  return with_recomputed_domains(std::move(attributes), std::move(cells));
}

const Attribute& TransactionDatabase::attribute(std::size_t index) const {
  if (index >= attributes_.size()) {
    throw IndexOutOfRange("attribute index " + std::to_string(index) + " out of range (" +
                          std::to_string(attributes_.size()) + " attributes)");
  }
  return attributes_[index];
}

std::vector<double> TransactionDatabase::column(std::size_t index) const {
  attribute(index);
  std::vector<double> out(n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r) out[r] = value(r, index);
  return out;
}

std::string TransactionDatabase::cell_text(std::size_t r, std::size_t column) const {
  const Attribute& a = attribute(column);
  const double v = value(r, column);
  if (a.is_numeric()) return format_real(v);
  return a.categories[static_cast<std::size_t>(v)];
}

AttributeDomain attribute_domain(const TransactionDatabase& db, std::size_t index) {
  const Attribute& a = db.attribute(index);
  if (a.is_numeric()) return NumericDomain{a.min, a.max};
  return a.categories;
}

TransactionDatabase parse_csv(std::istream& in, bool header) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (is_blank(line)) continue;
    auto fields = split_record(line);
    if (first && header) {
      names = std::move(fields);
    } else {
      if (first) {
        for (std::size_t j = 0; j < fields.size(); ++j) names.push_back("A" + std::to_string(j));
      }
      if (fields.size() != names.size()) throw RaggedRows(rows.size(), fields.size(), names.size());
      rows.push_back(std::move(fields));
    }
    first = false;
  }
  if (rows.empty()) throw EmptyDataset();
  return TransactionDatabase::from_text(std::move(names), rows);
}

TransactionDatabase load_csv(const std::filesystem::path& path, bool header) {
  std::ifstream in(path);
  if (!in) throw MissingFile(path.string());
  return parse_csv(in, header);
}

TransactionDatabase drop_columns(const TransactionDatabase& db, const std::vector<std::string>& names) {
  const auto attrs = db.attributes();
  std::vector<bool> keep(attrs.size(), true);
  for (const auto& name : names) {
    auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == name; });
    if (it == attrs.end()) throw InvalidArgument("no column named '" + name + "'");
    keep[static_cast<std::size_t>(it - attrs.begin())] = false;
  }
  std::vector<Attribute> kept;
  for (std::size_t j = 0; j < attrs.size(); ++j) {
    if (keep[j]) kept.push_back(attrs[j]);
  }
  if (kept.empty()) throw InvalidArgument("cannot drop every column");
  std::vector<double> cells;
  cells.reserve(db.n_transactions() * kept.size());
  for (std::size_t r = 0; r < db.n_transactions(); ++r) {
    for (std::size_t j = 0; j < attrs.size(); ++j) {
      if (keep[j]) cells.push_back(db.value(r, j));
    }
  }
  return TransactionDatabase::with_recomputed_domains(std::move(kept), std::move(cells));
}

void write_csv(const TransactionDatabase& db, std::ostream& out, bool header) {
  const std::size_t width = db.n_attributes();
  if (header) {
    for (std::size_t j = 0; j < width; ++j) out << (j ? "," : "") << quote_if_needed(db.attribute(j).name);
    out << '\n';
  }
  for (std::size_t r = 0; r < db.n_transactions(); ++r) {
    for (std::size_t j = 0; j < width; ++j) out << (j ? "," : "") << quote_if_needed(db.cell_text(r, j));
    out << '\n';
  }
}

void write_csv(const TransactionDatabase& db, const std::filesystem::path& path, bool header) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(db, out, header);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace autonarm
