#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "irviz/ir_model.hpp"

namespace irviz {

/// The family of IRs under study: the original program's IR (ir_id 0) and
/// the IRs of its modified variants.
struct DumpBundle {
  IRGraph original;
  std::vector<IRGraph> variants;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const DumpBundle&, const DumpBundle&) = default;
};

class DumpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text. Line and column are 1-based.
class ParseError : public DumpError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed text describing an invalid bundle. Carries every violation
/// found, each naming the offending graph and entity.
class ValidationError : public DumpError {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

DumpBundle parse_dump(std::string_view text);

/// Serializes `bundle` (original first, then variants in order). Throws
/// ValidationError for phase names containing '@' and for nodes that carry
/// simplification state, neither of which the format can express.
std::string write_dump(const DumpBundle& bundle);

DumpBundle read_dump_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace irviz
