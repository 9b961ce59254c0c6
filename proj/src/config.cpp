#include "vvrate/config.hpp"

#include <fstream>
#include <stdexcept>

namespace vvrate {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw std::invalid_argument("config: missing key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
    return x;
}

long RunConfig::get_long(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an integer: " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: key '" + key + "' is not an integer: " + v);
    return x;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                        ": empty key");
        cfg.values[key] = value;
    }
    return cfg;
}

void RunConfig::write_resolved(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("config: cannot write " + path);
    // std::map iterates in key order, so the echo is canonical
    for (const auto& [k, v] : values) out << k << " = " << v << "\n";
}

}  // namespace vvrate
