#include "afrl/toml_lite.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "afrl/error.hpp"

namespace afrl {

double TomlTable::number(const std::string& k) const {
  auto it = values.find(k);
  if (it == values.end() || it->second.kind != TomlValue::Kind::Number)
    throw Error(ErrorCode::ConfigError, "missing numeric key '" + k + "'");
  return it->second.number;
}

const std::vector<double>& TomlTable::array(const std::string& k) const {
  auto it = values.find(k);
  if (it == values.end() || it->second.kind != TomlValue::Kind::Array)
    throw Error(ErrorCode::ConfigError, "missing array key '" + k + "'");
  return it->second.array;
}

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& tok) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || strip(std::string(end)) != "")
    throw Error(ErrorCode::ConfigError, "bad number '" + tok + "'");
  return v;
}

TomlValue parse_value(const std::string& raw) {
  std::string v = strip(raw);
  TomlValue out;
  if (v.empty()) throw Error(ErrorCode::ConfigError, "empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw Error(ErrorCode::ConfigError, "unterminated string " + v);
    out.kind = TomlValue::Kind::String;
    out.str = v.substr(1, v.size() - 2);
    return out;
  }
  if (v.front() == '[') {
    if (v.back() != ']') throw Error(ErrorCode::ConfigError, "unterminated array " + v);
    out.kind = TomlValue::Kind::Array;
    std::string body = v.substr(1, v.size() - 2);
    std::string tok;
    std::stringstream ss(body);
    while (std::getline(ss, tok, ',')) {
      tok = strip(tok);
      if (!tok.empty()) out.array.push_back(parse_number(tok));
    }
    return out;
  }
  out.kind = TomlValue::Kind::Number;
  out.number = parse_number(v);
  return out;
}

}  // namespace

TomlDoc parse_toml(const std::string& text) {
  TomlDoc doc;
  TomlTable* current = nullptr;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string s = strip(strip_comment(line));
    if (s.empty()) continue;
    if (s.size() >= 4 && s.substr(0, 2) == "[[" && s.substr(s.size() - 2) == "]]") {
      std::string name = strip(s.substr(2, s.size() - 4));
      doc.lists[name].push_back({});
      current = &doc.lists[name].back();
      continue;
    }
    if (s.front() == '[' && s.back() == ']') {
      std::string name = strip(s.substr(1, s.size() - 2));
      current = &doc.tables[name];
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(lineno) + ": expected key = value");
    if (!current) throw Error(ErrorCode::ConfigError, "key outside of any table");
    std::string key = strip(s.substr(0, eq));
    current->values[key] = parse_value(s.substr(eq + 1));
  }
  return doc;
}

TomlDoc parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

}  // namespace afrl
