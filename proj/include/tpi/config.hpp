#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tpi {

/// Flat "key = value" file with [section] headers; '#' and ';' start comments.
/// Every lookup error names the source and line.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           std::optional<std::string> fallback = std::nullopt) const;
    double get_double(const std::string& section, const std::string& key,
                      std::optional<double> fallback = std::nullopt) const;
    int get_int(const std::string& section, const std::string& key, std::optional<int> fallback = std::nullopt) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

    /// Throws on keys in `section` not listed in `known`.
    void require_known(const std::string& section, const std::vector<std::string>& known) const;
    std::vector<std::string> sections() const;
    void set(const std::string& section, const std::string& key, const std::string& value);

    /// Canonical re-serialization (sorted sections and keys).
    std::string echo() const;
    const std::string& source() const { return source_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    [[noreturn]] void fail(int line, const std::string& msg) const;
    const Entry& entry(const std::string& section, const std::string& key) const;

    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> data_;
};

}  // namespace tpi
