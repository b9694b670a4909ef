#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace motifsig::csv {

/// Incremental RFC-4180 record reader. Quoted fields may contain commas,
/// doubled quotes and line breaks; `line()` reports the line a record started on.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Returns false at end of input. Blank lines are skipped.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t next_line_ = 1;
  std::size_t record_line_ = 0;
};

void write_field(std::string& out, std::string_view field);
void write_record(std::string& out, const std::vector<std::string>& fields);

}  // namespace motifsig::csv
