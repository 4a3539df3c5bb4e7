#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dataset.hpp"

namespace miniboost {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ArffOptions {
  // unlabeled prediction inputs may leave the class cell as '?'
  bool allow_missing_class = false;
};

// Supported subset: '%' comments, @relation, @attribute (numeric|real|integer
// or {v1,...}), @data, comma-separated rows, '?' = missing, single/double
// quoted names and values. String, date and sparse rows are rejected. The
// last attribute is the class.
Dataset parse_arff(std::istream& in, const ArffOptions& opts = {});
Dataset parse_arff_string(const std::string& text, const ArffOptions& opts = {});
Dataset parse_arff_file(const std::string& path, const ArffOptions& opts = {});

void write_arff(const Dataset& ds, std::ostream& out);
std::string to_arff(const Dataset& ds);

struct CsvOptions {
  bool header = true;
  int class_column = -1;  // -1 = last column
  bool allow_missing_class = false;
};

// RFC-4180-style quoting, one record per line. A column is numeric iff every
// non-missing cell parses as a real number; the class column is always
// nominal. Nominal value order is first appearance.
Dataset parse_csv(std::istream& in, const CsvOptions& opts = {});
Dataset parse_csv_string(const std::string& text, const CsvOptions& opts = {});
Dataset parse_csv_file(const std::string& path, const CsvOptions& opts = {});

// dispatches on extension: .arff / .csv
Dataset load_dataset_file(const std::string& path, bool allow_missing_class = false);

}  // namespace miniboost
