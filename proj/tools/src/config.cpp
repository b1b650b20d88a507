#include "boundstate/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "boundstate/error.hpp"

namespace bsl::cli {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text, char separator) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(separator, start);
    out.push_back(trim(text.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(x)) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ValidationError("'" + key + "' expects a number, got '" + value + "'");
  }
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ValidationError("'" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace

RunConfig::RunConfig(std::vector<KeySpec> schema) : schema_(std::move(schema)) {
  for (const auto& s : schema_) values_[s.name] = s.fallback;
}

const KeySpec& RunConfig::key_spec(const std::string& key) const {
  const auto it = std::find_if(schema_.begin(), schema_.end(), [&](const KeySpec& s) { return s.name == key; });
  if (it == schema_.end()) {
    std::string known;
    for (const auto& s : schema_) known += (known.empty() ? "" : ", ") + s.name;
    throw ValidationError("unknown key '" + key + "' (accepted: " + known + ")");
  }
  return *it;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const auto& s = key_spec(key);
  const std::string value = trim(raw);
  switch (s.kind) {
    case KeySpec::Kind::integer: {
      const double x = parse_number(key, value);
      if (x != std::floor(x)) throw ValidationError("'" + key + "' expects an integer, got '" + value + "'");
      [[fallthrough]];
    }
    case KeySpec::Kind::real: {
      const double x = parse_number(key, value);
      if (x < s.min || x > s.max) {
        std::ostringstream os;
        os << "'" << key << "' = " << value << " is outside [" << s.min << ", " << s.max << "]";
        throw ValidationError(os.str());
      }
      break;
    }
    case KeySpec::Kind::choice:
      if (std::find(s.choices.begin(), s.choices.end(), value) == s.choices.end()) {
        std::string options;
        for (const auto& c : s.choices) options += (options.empty() ? "" : "|") + c;
        throw ValidationError("'" + key + "' must be one of " + options + ", got '" + value + "'");
      }
      break;
    case KeySpec::Kind::flag:
      parse_flag(key, value);
      break;
    case KeySpec::Kind::text:
      break;
  }
  values_[key] = value;
}

void RunConfig::parse_text(std::string_view text, const std::string& origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ValidationError(origin + ":" + std::to_string(number) + ": expected key = value, got '" + body + "'");
    try {
      set(trim(std::string_view(body).substr(0, eq)), body.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  parse_text(buffer.str(), path.string());
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& RunConfig::text(const std::string& key) const {
  key_spec(key);
  return values_.at(key);
}

double RunConfig::real(const std::string& key) const { return parse_number(key, text(key)); }

int RunConfig::integer(const std::string& key) const { return static_cast<int>(real(key)); }

bool RunConfig::flag(const std::string& key) const { return parse_flag(key, text(key)); }

Json RunConfig::echo() const {
  Json out = Json::object();
  for (const auto& s : schema_) {
    const auto& v = values_.at(s.name);
    switch (s.kind) {
      case KeySpec::Kind::integer: out[s.name] = integer(s.name); break;
      case KeySpec::Kind::real: out[s.name] = real(s.name); break;
      case KeySpec::Kind::flag: out[s.name] = flag(s.name); break;
      default: out[s.name] = v;
    }
  }
  return out;
}

}  // namespace bsl::cli
