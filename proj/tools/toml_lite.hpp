// Minimal TOML subset: [tables], key = string | number | bool | flat array.
// Enough for the problem-file schema; not a general TOML parser.
#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace toml_lite {

struct TomlError : std::runtime_error {
  TomlError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

struct Value {
  enum class Kind { String, Integer, Float, Bool, Array } kind;
  std::string str;
  long long integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::vector<Value> array;

  double as_number() const {
    if (kind == Kind::Integer) return static_cast<double>(integer);
    if (kind == Kind::Float) return real;
    throw std::runtime_error("expected a number");
  }
};

using Table = std::map<std::string, Value>;

class Document {
 public:
  const Table* table(const std::string& name) const {
    auto it = tables_.find(name);
    return it == tables_.end() ? nullptr : &it->second;
  }
  Table& table_for_insert(const std::string& name) { return tables_[name]; }

 private:
  std::map<std::string, Table> tables_;
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline Value parse_value(const std::string& s, size_t& i, int line);

inline Value parse_scalar(const std::string& s, size_t& i, int line) {
  if (s[i] == '"') {
    size_t end = s.find('"', i + 1);
    if (end == std::string::npos) throw TomlError("unterminated string", line);
    Value v{Value::Kind::String};
    v.str = s.substr(i + 1, end - i - 1);
    i = end + 1;
    return v;
  }
  if (s.compare(i, 4, "true") == 0) {
    i += 4;
    return {.kind = Value::Kind::Bool, .boolean = true};
  }
  if (s.compare(i, 5, "false") == 0) {
    i += 5;
    return {.kind = Value::Kind::Bool, .boolean = false};
  }
  size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                          s[i] == '+' || s[i] == '-' || s[i] == '.' ||
                          s[i] == '_'))
    ++i;
  std::string tok = s.substr(start, i - start);
  if (tok.empty()) throw TomlError("expected a value", line);
  try {
    size_t used;
    if (tok.find_first_of(".eE") == std::string::npos) {
      Value v{Value::Kind::Integer};
      v.integer = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    }
    Value v{Value::Kind::Float};
    v.real = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw TomlError("malformed number '" + tok + "'", line);
  }
}

inline Value parse_value(const std::string& s, size_t& i, int line) {
  skip_ws(s, i);
  if (i >= s.size()) throw TomlError("missing value", line);
  if (s[i] != '[') return parse_scalar(s, i, line);
  Value arr{Value::Kind::Array};
  ++i;
  for (;;) {
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
      ++i;
      return arr;
    }
    arr.array.push_back(parse_value(s, i, line));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ']') {
      ++i;
      return arr;
    }
    throw TomlError("expected ',' or ']' in array", line);
  }
}

}  // namespace detail

inline Document parse(const std::string& text) {
  Document doc;
  Table* current = &doc.table_for_insert("");
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    // strip comments outside strings
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        break;
      }
    }
    size_t i = 0;
    detail::skip_ws(line, i);
    if (i >= line.size() || line[i] == '\r') continue;

    if (line[i] == '[') {
      size_t end = line.find(']', i);
      if (end == std::string::npos)
        throw TomlError("unterminated table header", line_no);
      current = &doc.table_for_insert(line.substr(i + 1, end - i - 1));
      continue;
    }
    size_t eq = line.find('=', i);
    if (eq == std::string::npos)
      throw TomlError("expected 'key = value'", line_no);
    std::string key = line.substr(i, eq - i);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    if (key.empty()) throw TomlError("empty key", line_no);
    size_t vi = eq + 1;
    Value v = detail::parse_value(line, vi, line_no);
    detail::skip_ws(line, vi);
    if (vi < line.size() && line[vi] != '\r')
      throw TomlError("trailing characters after value", line_no);
    (*current)[key] = std::move(v);
  }
  return doc;
}

}  // namespace toml_lite
