#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bsl::cli {

using Json = nlohmann::ordered_json;

struct KeySpec {
  enum class Kind { integer, real, text, choice, flag };
  std::string name;
  Kind kind = Kind::text;
  std::string fallback;
  std::string help;
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
  std::vector<std::string> choices;
};

// Flat key=value parameters for one subcommand. Later sources override earlier
// ones: schema defaults, then the config file, then command-line flags. Every
// value is range-checked on assignment and unknown keys are refused.
class RunConfig {
 public:
  explicit RunConfig(std::vector<KeySpec> schema);

  // One `key = value` per line; `#` starts a comment; blank lines are ignored.
  void parse_text(std::string_view text, const std::string& origin = "config");
  void load_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;

  const std::vector<KeySpec>& schema() const { return schema_; }
  // Every key with its effective value, in schema order, typed.
  Json echo() const;

 private:
  const KeySpec& key_spec(const std::string& key) const;

  std::vector<KeySpec> schema_;
  std::map<std::string, std::string> values_;
};

// Comma-separated pieces with surrounding blanks removed.
std::vector<std::string> split_list(std::string_view text, char separator = ',');
std::string trim(std::string_view text);

}  // namespace bsl::cli
