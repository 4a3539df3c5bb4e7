#pragma once

#include <string>
#include <vector>

// Expectations for the ARFF fixture corpus under tests/fixtures/arff.
// Rejects must mention the given line number and message fragment.
struct CorpusEntry {
  std::string file;
  bool ok;
  int instances;        // valid files only
  int attributes;       // valid files only
  int error_line;       // rejects only
  std::string message;  // rejects only, substring of the diagnostic
};

inline const std::vector<CorpusEntry>& arff_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"weather_nominal.arff", true, 14, 5, 0, ""},
      {"weather_numeric.arff", true, 14, 5, 0, ""},
      {"quoted_values.arff", true, 3, 3, 0, ""},
      {"missing_cells.arff", true, 4, 3, 0, ""},
      {"upper_keywords.arff", true, 2, 3, 0, ""},
      {"comments_blanks.arff", true, 3, 2, 0, ""},
      {"integer_real_types.arff", true, 3, 3, 0, ""},
      {"crlf_endings.arff", true, 2, 2, 0, ""},
      {"err_undeclared_value.arff", false, 0, 0, 6, "undeclared value 'blue'"},
      {"err_arity.arff", false, 0, 0, 7, "expected 3"},
      {"err_duplicate_attr.arff", false, 0, 0, 3, "duplicate attribute name 'same'"},
      {"err_string_attr.arff", false, 0, 0, 2, "unsupported attribute type"},
      {"err_date_attr.arff", false, 0, 0, 2, "unsupported attribute type"},
      {"err_sparse_row.arff", false, 0, 0, 6, "sparse rows"},
      {"err_missing_class.arff", false, 0, 0, 6, "missing class"},
      {"err_numeric_class.arff", false, 0, 0, 4, "must be nominal"},
      {"err_no_data_section.arff", false, 0, 0, 3, "no @data"},
      {"err_row_before_data.arff", false, 0, 0, 4, "expected @relation"},
      {"err_bad_numeric.arff", false, 0, 0, 6, "invalid numeric value 'oops'"},
      {"err_unterminated_quote.arff", false, 0, 0, 5, "unterminated quoted"},
      {"err_empty_nominal.arff", false, 0, 0, 2, "declares no values"},
      {"err_missing_type.arff", false, 0, 0, 2, "missing a type"},
      {"err_duplicate_nominal_value.arff", false, 0, 0, 2, "repeats value 'x'"},
  };
  return entries;
}
