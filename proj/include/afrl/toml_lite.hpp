#ifndef AFRL_TOML_LITE_HPP
#define AFRL_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

namespace afrl {

// Minimal TOML subset used by the IFS definition files: [table],
// [[array-of-tables]], key = value with numbers, strings and flat numeric
// arrays. Comments start with '#'.
struct TomlValue {
  enum class Kind { Number, String, Array } kind = Kind::Number;
  double number = 0.0;
  std::string str;
  std::vector<double> array;
};

struct TomlTable {
  std::map<std::string, TomlValue> values;
  bool has(const std::string& k) const { return values.count(k) > 0; }
  double number(const std::string& k) const;
  const std::vector<double>& array(const std::string& k) const;
};

struct TomlDoc {
  std::map<std::string, TomlTable> tables;              // [name]
  std::map<std::string, std::vector<TomlTable>> lists;  // [[name]]
};

TomlDoc parse_toml(const std::string& text);
TomlDoc parse_toml_file(const std::string& path);

}  // namespace afrl

#endif
