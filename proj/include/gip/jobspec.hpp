#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gip/types.hpp"

namespace gip {

// One job = one spec file: `key = value` lines grouped under `[section]`
// headers, `#` comments. Values keep their raw text; typed access goes
// through the getters, which raise ValidationError with the field path.
class JobSpec {
  public:
    static JobSpec parse_file(const std::string& path);
    static JobSpec parse_text(const std::string& text, const std::string& origin = "<text>");

    const std::string& origin() const { return origin_; }
    std::string mode() const { return get_string("", "mode"); }

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key) const;
    double get_number_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_integer(const std::string& section, const std::string& key) const;
    long get_integer_or(const std::string& section, const std::string& key,
                        long fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_numbers(const std::string& section, const std::string& key) const;
    std::vector<long> get_integers(const std::string& section, const std::string& key) const;

    // Echo of the full key/value content in parse order (for the report).
    std::vector<std::string> echo() const;

  private:
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& why) const;

    std::string origin_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::vector<std::string> order_;  // "section.key" in file order
};

}  // namespace gip
