#include "arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace miniboost {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

// keyword followed by whitespace or end of line, not a longer token
bool keyword_icase(std::string_view s, std::string_view keyword) {
  if (!starts_with_icase(s, keyword)) return false;
  return s.size() == keyword.size() ||
         std::isspace(static_cast<unsigned char>(s[keyword.size()]));
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Splits one data line on commas, honoring single and double quotes.
// Quotes must wrap a whole field; anything after the closing quote other
// than whitespace is an error.
std::vector<std::string> split_fields(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  size_t i = 0;
  const size_t n = line.size();
  while (true) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < n && (line[i] == '\'' || line[i] == '"')) {
      char quote = line[i++];
      bool closed = false;
      while (i < n) {
        if (line[i] == quote) {
          // doubled quote = literal quote character
          if (i + 1 < n && line[i + 1] == quote) {
            field.push_back(quote);
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(line[i++]);
      }
      if (!closed) throw ParseError(line_no, "unterminated quoted value");
      while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < n && line[i] != ',') {
        throw ParseError(line_no, "unexpected text after quoted value");
      }
    } else {
      size_t start = i;
      while (i < n && line[i] != ',') ++i;
      field = std::string(trim(line.substr(start, i - start)));
    }
    fields.push_back(std::move(field));
    if (i >= n) break;
    ++i;  // consume comma
    if (i >= n) {  // trailing comma means a final empty field
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// name token at the start of `rest`: quoted or up to whitespace
std::string take_name(std::string_view& rest, int line_no) {
  rest = trim(rest);
  if (rest.empty()) throw ParseError(line_no, "expected a name");
  std::string name;
  if (rest.front() == '\'' || rest.front() == '"') {
    char quote = rest.front();
    size_t close = rest.find(quote, 1);
    if (close == std::string_view::npos) {
      throw ParseError(line_no, "unterminated quoted name");
    }
    name = std::string(rest.substr(1, close - 1));
    rest.remove_prefix(close + 1);
  } else {
    size_t end = 0;
    while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
    name = std::string(rest.substr(0, end));
    rest.remove_prefix(end);
  }
  rest = trim(rest);
  return name;
}

Attribute parse_attribute_decl(std::string_view rest, int line_no) {
  Attribute attr;
  attr.name = take_name(rest, line_no);
  if (attr.name.empty()) throw ParseError(line_no, "attribute has an empty name");
  if (rest.empty()) {
    throw ParseError(line_no, "attribute '" + attr.name + "' is missing a type");
  }
  if (rest.front() == '{') {
    if (rest.back() != '}') {
      throw ParseError(line_no, "nominal value list is not closed with '}'");
    }
    attr.kind = AttrKind::Nominal;
    std::string_view body = trim(rest.substr(1, rest.size() - 2));
    if (body.empty()) {
      throw ParseError(line_no, "nominal attribute '" + attr.name + "' declares no values");
    }
    for (auto& v : split_fields(body, line_no)) {
      if (v.empty()) {
        throw ParseError(line_no, "nominal attribute '" + attr.name + "' has an empty value");
      }
      if (attr.value_index(v) >= 0) {
        throw ParseError(line_no,
                         "nominal attribute '" + attr.name + "' repeats value '" + v + "'");
      }
      attr.values.push_back(std::move(v));
    }
    return attr;
  }
  std::string type = lower(trim(rest));
  if (type == "numeric" || type == "real" || type == "integer") {
    attr.kind = AttrKind::Numeric;
    return attr;
  }
  if (starts_with_icase(type, "string") || starts_with_icase(type, "date") ||
      starts_with_icase(type, "relational")) {
    throw ParseError(line_no, "unsupported attribute type '" + type + "' (attribute '" +
                                  attr.name + "')");
  }
  throw ParseError(line_no, "unknown attribute type '" + type + "'");
}

}  // namespace

Dataset parse_arff(std::istream& in, const ArffOptions& opts) {
  std::string raw;
  int line_no = 0;
  std::string relation;
  std::vector<Attribute> attributes;
  bool saw_relation = false;
  bool in_data = false;
  Dataset ds;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(std::move(raw));
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '%') continue;

    if (!in_data) {
      if (keyword_icase(sv, "@relation")) {
        std::string_view rest = sv.substr(9);
        relation = take_name(rest, line_no);
        saw_relation = true;
      } else if (keyword_icase(sv, "@attribute")) {
        Attribute attr = parse_attribute_decl(sv.substr(10), line_no);
        for (const auto& existing : attributes) {
          if (existing.name == attr.name) {
            throw ParseError(line_no, "duplicate attribute name '" + attr.name + "'");
          }
        }
        attributes.push_back(std::move(attr));
      } else if (keyword_icase(sv, "@data")) {
        if (attributes.empty()) throw ParseError(line_no, "@data before any @attribute");
        Schema schema;
        schema.relation = saw_relation ? relation : "unnamed";
        schema.attributes = attributes;
        schema.class_index = static_cast<int>(attributes.size()) - 1;
        if (schema.class_attribute().numeric()) {
          throw ParseError(line_no, "class attribute '" + schema.class_attribute().name +
                                        "' must be nominal");
        }
        ds = Dataset(std::move(schema));
        in_data = true;
      } else {
        throw ParseError(line_no, "expected @relation, @attribute or @data");
      }
      continue;
    }

    if (sv.front() == '{') {
      throw ParseError(line_no, "sparse rows are not supported");
    }
    auto fields = split_fields(sv, line_no);
    if (fields.size() != attributes.size()) {
      throw ParseError(line_no, "row has " + std::to_string(fields.size()) + " values, expected " +
                                    std::to_string(attributes.size()));
    }
    Instance inst;
    inst.values.resize(fields.size());
    for (size_t a = 0; a < fields.size(); ++a) {
      const std::string& cell = fields[a];
      if (cell == "?") {
        inst.values[a] = missing_value();
        continue;
      }
      const Attribute& attr = attributes[a];
      if (attr.numeric()) {
        double v;
        if (!parse_double(cell, v)) {
          throw ParseError(line_no, "invalid numeric value '" + cell + "' for attribute '" +
                                        attr.name + "'");
        }
        inst.values[a] = v;
      } else {
        int idx = attr.value_index(cell);
        if (idx < 0) {
          throw ParseError(line_no, "undeclared value '" + cell + "' for attribute '" +
                                        attr.name + "'");
        }
        inst.values[a] = idx;
      }
    }
    if (!opts.allow_missing_class && is_missing(inst.values.back())) {
      throw ParseError(line_no, "instance has a missing class value");
    }
    ds.add(std::move(inst));
  }

  if (!in_data) {
    throw ParseError(line_no, "no @data section");
  }
  return ds;
}

Dataset parse_arff_string(const std::string& text, const ArffOptions& opts) {
  std::istringstream in(text);
  return parse_arff(in, opts);
}

Dataset parse_arff_file(const std::string& path, const ArffOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_arff(in, opts);
}

namespace {

bool needs_quoting(const std::string& s) {
  if (s.empty() || s == "?") return true;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\'' || c == '"' || c == '{' || c == '}' ||
        c == '%') {
      return true;
    }
  }
  return false;
}

std::string quoted(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

std::string format_numeric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back;
    if (parse_double(shorter, back) && back == v) return shorter;
  }
  return buf;
}

}  // namespace

void write_arff(const Dataset& ds, std::ostream& out) {
  const Schema& schema = ds.schema();
  out << "@relation " << quoted(schema.relation) << "\n\n";
  for (const auto& attr : schema.attributes) {
    out << "@attribute " << quoted(attr.name) << " ";
    if (attr.numeric()) {
      out << "numeric";
    } else {
      out << "{";
      for (size_t v = 0; v < attr.values.size(); ++v) {
        if (v) out << ",";
        out << quoted(attr.values[v]);
      }
      out << "}";
    }
    out << "\n";
  }
  out << "\n@data\n";
  for (size_t i = 0; i < ds.size(); ++i) {
    const Instance& inst = ds.instance(i);
    for (size_t a = 0; a < inst.values.size(); ++a) {
      if (a) out << ",";
      double v = inst.values[a];
      if (is_missing(v)) {
        out << "?";
      } else if (schema.attributes[a].numeric()) {
        out << format_numeric(v);
      } else {
        out << quoted(schema.attributes[a].values[static_cast<size_t>(v)]);
      }
    }
    out << "\n";
  }
}

std::string to_arff(const Dataset& ds) {
  std::ostringstream out;
  write_arff(ds, out);
  return out.str();
}

namespace {

std::vector<std::string> split_csv_record(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string field;
  size_t i = 0;
  const size_t n = line.size();
  while (true) {
    field.clear();
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(line[i++]);
      }
      if (!closed) throw ParseError(line_no, "unterminated quoted field");
    } else {
      size_t start = i;
      while (i < n && line[i] != ',') ++i;
      field = std::string(trim(line.substr(start, i - start)));
    }
    fields.push_back(field);
    if (i >= n) break;
    if (line[i] != ',') throw ParseError(line_no, "unexpected text after quoted field");
    ++i;
    if (i >= n) {
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& opts) {
  std::string raw;
  int line_no = 0;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;
  size_t width = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(std::move(raw));
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line, line_no);
    if (names.empty() && rows.empty() && opts.header) {
      names = fields;
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ParseError(line_no, "row has " + std::to_string(fields.size()) +
                                    " fields, expected " + std::to_string(width));
    }
    rows.push_back(std::move(fields));
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw ParseError(line_no, "no data rows");

  int class_col = opts.class_column < 0 ? static_cast<int>(width) - 1 : opts.class_column;
  if (class_col < 0 || class_col >= static_cast<int>(width)) {
    throw ParseError(0, "class column out of range");
  }
  if (!opts.header) {
    names.resize(width);
    for (size_t c = 0; c < width; ++c) names[c] = "col" + std::to_string(c);
  }

  auto cell_missing = [](const std::string& s) { return s.empty() || s == "?"; };

  Schema schema;
  schema.relation = "csv";
  schema.attributes.resize(width);
  std::set<std::string> used_names;
  for (size_t c = 0; c < width; ++c) {
    Attribute& attr = schema.attributes[c];
    attr.name = names[c].empty() ? "col" + std::to_string(c) : names[c];
    // repeated header names get a positional suffix
    while (!used_names.insert(attr.name).second) {
      attr.name += "_" + std::to_string(c);
    }
    bool all_numeric = true;
    bool any_value = false;
    for (const auto& row : rows) {
      if (cell_missing(row[c])) continue;
      any_value = true;
      double v;
      if (!parse_double(row[c], v)) {
        all_numeric = false;
        break;
      }
    }
    // the class column must be nominal; label-looking numbers stay labels
    if (static_cast<int>(c) == class_col) all_numeric = false;
    if (!any_value && static_cast<int>(c) == class_col) {
      throw ParseError(0, "class column '" + attr.name + "' has no values");
    }
    if (all_numeric) {
      attr.kind = AttrKind::Numeric;
    } else {
      attr.kind = AttrKind::Nominal;
      for (const auto& row : rows) {
        if (cell_missing(row[c])) continue;
        if (attr.value_index(row[c]) < 0) attr.values.push_back(row[c]);
      }
      if (attr.values.empty()) attr.values.push_back("empty");
    }
  }
  schema.class_index = class_col;

  Dataset ds(std::move(schema));
  const Schema& s = ds.schema();
  for (size_t r = 0; r < rows.size(); ++r) {
    Instance inst;
    inst.values.resize(width);
    for (size_t c = 0; c < width; ++c) {
      const std::string& cell = rows[r][c];
      if (cell_missing(cell)) {
        inst.values[c] = missing_value();
        continue;
      }
      if (s.attributes[c].numeric()) {
        double v;
        parse_double(cell, v);
        inst.values[c] = v;
      } else {
        inst.values[c] = s.attributes[c].value_index(cell);
      }
    }
    if (!opts.allow_missing_class && is_missing(inst.values[class_col])) {
      throw ParseError(row_lines[r], "instance has a missing class value");
    }
    ds.add(std::move(inst));
  }
  return ds;
}

Dataset parse_csv_string(const std::string& text, const CsvOptions& opts) {
  std::istringstream in(text);
  return parse_csv(in, opts);
}

Dataset parse_csv_file(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_csv(in, opts);
}

Dataset load_dataset_file(const std::string& path, bool allow_missing_class) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
  if (ext == "csv") {
    CsvOptions opts;
    opts.allow_missing_class = allow_missing_class;
    return parse_csv_file(path, opts);
  }
  ArffOptions opts;
  opts.allow_missing_class = allow_missing_class;
  return parse_arff_file(path, opts);
}

}  // namespace miniboost
