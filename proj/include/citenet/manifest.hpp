#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "citenet/error.hpp"

namespace citenet {

// Run metadata sidecar: ordered key=value pairs echoing exactly what a
// command executed, so runs can be audited and replayed.
class RunManifest {
public:
    void set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : entries_) {
            if (k == key) {
                v = value;
                return;
            }
        }
        entries_.emplace_back(key, value);
    }

    const std::string* get(const std::string& key) const {
        for (const auto& [k, v] : entries_) {
            if (k == key) return &v;
        }
        return nullptr;
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    void write(std::ostream& out) const {
        for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
    }

    static RunManifest read(std::istream& in) {
        RunManifest m;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw parse_error("malformed manifest line: expected key=value", line_no);
            }
            m.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
        }
        return m;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace citenet
