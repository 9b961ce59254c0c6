#pragma once

#include <map>
#include <string>
#include <vector>

namespace vvrate {

// Flat key = value configuration with # comments and dot-namespaced keys.
// Flags override file values; the resolved map can be echoed back out so a
// run is reproducible from its artifacts alone.
struct RunConfig {
    std::map<std::string, std::string> values;
    long seed = 0;
    std::string output_dir = ".";

    bool has(const std::string& key) const { return values.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values[key] = value; }

    static RunConfig from_file(const std::string& path);
    void write_resolved(const std::string& path) const;
};

}  // namespace vvrate
