#include "tpi/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tpi/errors.hpp"

namespace tpi {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool to_double(const std::string& s, double& out) {
    std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

}  // namespace

void KeyValueConfig::fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + msg);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig c;
    c.source_ = source;
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        auto cpos = s.find_first_of("#;");
        if (cpos != std::string::npos) s = s.substr(0, cpos);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') c.fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) c.fail(line, "empty section name");
            c.data_[section];
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) c.fail(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        if (key.empty()) c.fail(line, "missing key");
        if (section.empty()) c.fail(line, "key '" + key + "' outside of any section");
        auto& sec = c.data_[section];
        if (sec.count(key)) c.fail(line, "duplicate key '" + key + "' (first on line " + std::to_string(sec[key].line) + ")");
        sec[key] = {trim(s.substr(eq + 1)), line};
    }
    return c;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    return parse(in, path.string());
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key);
}

const KeyValueConfig::Entry& KeyValueConfig::entry(const std::string& section, const std::string& key) const {
    if (!has(section, key)) fail(0, "missing key '" + key + "' in section [" + section + "]");
    return data_.at(section).at(key);
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       std::optional<std::string> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    return entry(section, key).value;
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key,
                                  std::optional<double> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    const Entry& e = entry(section, key);
    double v;
    if (!to_double(e.value, v)) fail(e.line, "'" + key + "' must be a number, got '" + e.value + "'");
    return v;
}

int KeyValueConfig::get_int(const std::string& section, const std::string& key, std::optional<int> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    const Entry& e = entry(section, key);
    int v = 0;
    auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || p != e.value.data() + e.value.size())
        fail(e.line, "'" + key + "' must be an integer, got '" + e.value + "'");
    return v;
}

std::vector<double> KeyValueConfig::get_list(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v;
        if (!to_double(item, v)) fail(e.line, "'" + key + "' must be a comma-separated list of numbers");
        out.push_back(v);
    }
    if (out.empty()) fail(e.line, "'" + key + "' is an empty list");
    return out;
}

void KeyValueConfig::require_known(const std::string& section, const std::vector<std::string>& known) const {
    auto it = data_.find(section);
    if (it == data_.end()) return;
    for (const auto& [k, e] : it->second)
        if (std::find(known.begin(), known.end(), k) == known.end())
            fail(e.line, "unknown key '" + k + "' in section [" + section + "]");
}

std::vector<std::string> KeyValueConfig::sections() const {
    std::vector<std::string> out;
    for (const auto& [s, _] : data_) out.push_back(s);
    return out;
}

void KeyValueConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    data_[section][key] = {value, 0};
}

std::string KeyValueConfig::echo() const {
    std::ostringstream os;
    for (const auto& [s, sec] : data_) {
        os << '[' << s << "]\n";
        for (const auto& [k, e] : sec) os << k << " = " << e.value << '\n';
    }
    return os.str();
}

}  // namespace tpi
