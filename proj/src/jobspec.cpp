#include "gip/jobspec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gip {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string path_of(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

}  // namespace

JobSpec JobSpec::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open spec file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_text(buf.str(), path);
}

JobSpec JobSpec::parse_text(const std::string& text, const std::string& origin) {
    JobSpec spec;
    spec.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError(origin + ":" + std::to_string(lineno) +
                                      ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (spec.sections_[section].count(key))
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  path_of(section, key) + "'");
        spec.sections_[section][key] = value;
        spec.order_.push_back(path_of(section, key));
    }
    if (!spec.has("", "mode")) throw ValidationError(origin + ": missing 'mode'");
    return spec;
}

bool JobSpec::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string JobSpec::get_string(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end() || !it->second.count(key))
        fail(section, key, "missing required field");
    return it->second.at(key);
}

std::string JobSpec::get_string_or(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double JobSpec::get_number(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (trim(raw.substr(used)).empty()) return v;
    } catch (...) {
    }
    fail(section, key, "expected a number, got '" + get_string(section, key) + "'");
}

double JobSpec::get_number_or(const std::string& section, const std::string& key,
                              double fallback) const {
    return has(section, key) ? get_number(section, key) : fallback;
}

long JobSpec::get_integer(const std::string& section, const std::string& key) const {
    const double v = get_number(section, key);
    const long r = std::lround(v);
    if (v != static_cast<double>(r)) fail(section, key, "expected an integer");
    return r;
}

long JobSpec::get_integer_or(const std::string& section, const std::string& key,
                             long fallback) const {
    return has(section, key) ? get_integer(section, key) : fallback;
}

bool JobSpec::get_bool_or(const std::string& section, const std::string& key,
                          bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get_string(section, key);
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(section, key, "expected a boolean");
}

std::vector<double> JobSpec::get_numbers(const std::string& section,
                                         const std::string& key) const {
    std::istringstream in(get_string(section, key));
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty()) fail(section, key, "expected a list of numbers");
    return out;
}

std::vector<long> JobSpec::get_integers(const std::string& section,
                                        const std::string& key) const {
    std::vector<long> out;
    for (double v : get_numbers(section, key)) {
        const long r = std::lround(v);
        if (v != static_cast<double>(r)) fail(section, key, "expected integers");
        out.push_back(r);
    }
    return out;
}

std::vector<std::string> JobSpec::echo() const {
    std::vector<std::string> lines;
    for (const std::string& path : order_) {
        const auto dot = path.find('.');
        const std::string sec = dot == std::string::npos ? "" : path.substr(0, dot);
        const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
        lines.push_back(path + " = " + sections_.at(sec).at(key));
    }
    return lines;
}

void JobSpec::fail(const std::string& section, const std::string& key,
                   const std::string& why) const {
    throw ValidationError(origin_ + ": field '" + path_of(section, key) + "': " + why);
}

}  // namespace gip
