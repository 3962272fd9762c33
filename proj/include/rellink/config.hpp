#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rellink/error.hpp"
#include "rellink/term.hpp"
#include "rellink/text.hpp"

namespace rellink {

// "key = value" lines; '#' starts a comment line. Later keys override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto body = text::trim(line);
      if (body.empty() || body.front() == '#') continue;
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      }
      const auto key = text::trim(body.substr(0, eq));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      cfg.values_[std::string(key)] = std::string(text::trim(body.substr(eq + 1)));
    }
    return cfg;
  }

  static KeyValueConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse(in);
  }

  std::optional<std::string> get(std::string_view key) const {
    auto it = values_.find(std::string(key));
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> get_list(std::string_view key) const {
    std::vector<std::string> out;
    auto v = get(key);
    if (!v) return out;
    std::string_view rest = *v;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = text::trim(rest.substr(0, comma));
      if (!item.empty()) out.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Builds a profile from the "profile" key (or the explicit kind) and applies
// overrides: prefix.<name>, relation_namespaces, type_predicate,
// subclass_predicate, direct_only_properties.
inline Profile profile_from_config(const KeyValueConfig& cfg,
                                   std::optional<ProfileKind> kind = std::nullopt) {
  if (!kind) kind = parse_profile_kind(cfg.get("profile").value_or("dbpedia"));
  Profile p = Profile::for_kind(*kind);
  for (const auto& [key, value] : cfg.values()) {
    if (key.starts_with("prefix.")) p.namespaces.add(key.substr(7), value);
  }
  if (auto v = cfg.get_list("relation_namespaces"); !v.empty()) p.relation_namespaces = v;
  if (auto v = cfg.get("type_predicate")) p.type_predicate = *v;
  if (auto v = cfg.get("subclass_predicate")) p.subclass_predicate = *v;
  if (auto v = cfg.get_list("direct_only_properties"); !v.empty()) p.direct_only_properties = v;
  return p;
}

}  // namespace rellink
