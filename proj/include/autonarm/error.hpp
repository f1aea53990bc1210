#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autonarm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingFile : public Error {
 public:
  explicit MissingFile(const std::string& path) : Error("cannot open file: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class RaggedRows : public Error {
 public:
  RaggedRows(std::size_t row, std::size_t got, std::size_t expected)
      : Error("ragged row " + std::to_string(row) + ": " + std::to_string(got) + " cells, expected " +
              std::to_string(expected)),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class MissingCell : public Error {
 public:
  MissingCell(std::size_t row, std::size_t column)
      : Error("missing cell at row " + std::to_string(row) + ", column " + std::to_string(column)) {}
};

class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("dataset has no data rows") {}
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t got, std::size_t expected)
      : Error("dimension mismatch: got " + std::to_string(got) + ", expected " + std::to_string(expected)) {}
};

class EmptySelection : public Error {
 public:
  EmptySelection() : Error("metric selection is empty") {}
};

class BudgetTooSmall : public Error {
 public:
  using Error::Error;
};

class AllDiscarded : public Error {
 public:
  AllDiscarded() : Error("every evaluated pipeline was discarded") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("paired samples differ in length: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class TooFewPairs : public Error {
 public:
  explicit TooFewPairs(std::size_t n_effective)
      : Error("too few non-zero pairs for the signed-rank test: " + std::to_string(n_effective)),
        n_effective_(n_effective) {}
  std::size_t n_effective() const noexcept { return n_effective_; }

 private:
  std::size_t n_effective_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace autonarm
