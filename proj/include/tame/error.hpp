#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tame {

/// Base for every domain failure raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient would have to combine +inf with -inf.
class indeterminate_coefficient : public error {
 public:
  explicit indeterminate_coefficient(std::size_t index)
      : error("indeterminate coefficient at x^" + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class infinite_coefficient : public error {
 public:
  infinite_coefficient() : error("polynomial has an infinite coefficient") {}
};

class dimension_mismatch : public error {
 public:
  dimension_mismatch(std::size_t expected, std::size_t got)
      : error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
  explicit dimension_mismatch(const std::string& what) : error(what) {}
};

class nonpositive_scale : public error {
 public:
  nonpositive_scale() : error("scale factor must be positive") {}
};

class invalid_interval : public error {
 public:
  using error::error;
};

class unbounded_set : public error {
 public:
  unbounded_set() : error("operation requires a bounded set") {}
};

class empty_set : public error {
 public:
  empty_set() : error("operation requires a nonempty set") {}
};

/// No admissible N was found below the search limit.
class search_exhausted : public error {
 public:
  explicit search_exhausted(std::uint64_t n_max)
      : error("no admissible N found up to " + std::to_string(n_max)), n_max_(n_max) {}
  std::uint64_t n_max() const noexcept { return n_max_; }

 private:
  std::uint64_t n_max_;
};

/// The sample at the found scale would hold more points than allowed.
class sample_too_large : public error {
 public:
  sample_too_large(std::uint64_t n, double points, std::uint64_t limit)
      : error("sample at N = " + std::to_string(n) + " needs about " + std::to_string(static_cast<long double>(points)) +
              " points, over the limit of " + std::to_string(limit)),
        n_(n),
        points_(points) {}
  std::uint64_t n() const noexcept { return n_; }
  double points() const noexcept { return points_; }

 private:
  std::uint64_t n_;
  double points_;
};

class cell_too_small : public error {
 public:
  cell_too_small() : error("cannot place more than one point in a point cell") {}
};

/// A post-condition of the sample construction failed; always a bug.
class construction_violation : public error {
 public:
  using error::error;
};

class unknown_name : public error {
 public:
  explicit unknown_name(const std::string& name) : error("unknown name '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class cyclic_definition : public error {
 public:
  explicit cyclic_definition(const std::string& name)
      : error("definition of '" + name + "' refers to itself") {}
};

/// Syntax error with a position into the source text.
class parse_error : public error {
 public:
  parse_error(std::size_t offset, std::size_t line, std::size_t column, std::string expected)
      : error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
              " (offset " + std::to_string(offset) + "): expected " + expected),
        offset_(offset),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace tame
