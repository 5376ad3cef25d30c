#pragma once

// Flat key = value config for the command-line tool. Lines starting with '#'
// are comments. Keys:
//
//   window = 10              default Z window for verify
//   primes = 5,7,11,13       primes swept when verify gets no --mod
//   workers = 4
//   format = text            text | json | csv
//   checkpoint_dir = ckpt    verify writes <dir>/<theorem>-<universe>.ckpt
//   counterexample_cap = 100

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "modular.hpp"
#include "sets.hpp"
#include "verify/spec.hpp"

namespace ehinv::cli {

enum class OutputFormat { Text, Json, Csv };

inline OutputFormat parse_format(std::string_view text) {
    if (text == "text") return OutputFormat::Text;
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw ParseError("format must be text, json or csv, got '" + std::string(text) + "'");
}

struct CliConfig {
    int window = 10;
    std::vector<int> primes{5, 7, 11, 13};
    int workers = 4;
    OutputFormat format = OutputFormat::Text;
    std::string checkpoint_dir;
    std::size_t counterexample_cap = 100;
};

/// Partial config: whatever a file or the command line actually set.
struct ConfigLayer {
    std::optional<int> window;
    std::optional<std::vector<int>> primes;
    std::optional<int> workers;
    std::optional<OutputFormat> format;
    std::optional<std::string> checkpoint_dir;
    std::optional<std::size_t> counterexample_cap;
};

namespace detail {

inline long long parse_number(std::string_view key, std::string_view value) {
    const auto v = ehinv::detail::trim(value);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("config key '" + std::string(key) + "' needs an integer, got '" + std::string(value) + "'");
    return out;
}

} // namespace detail

inline void validate(const CliConfig& c) {
    if (c.window < 1 || c.window > verify::kMaxWindow)
        throw PreconditionError("config: window must be in [1, " + std::to_string(verify::kMaxWindow) + "]");
    if (c.primes.empty()) throw PreconditionError("config: primes list is empty");
    for (int p : c.primes)
        if (!is_prime(p) || p > verify::kMaxSweepPrime)
            throw PreconditionError("config: " + std::to_string(p) + " is not a prime in [2, " +
                                    std::to_string(verify::kMaxSweepPrime) + "]");
    if (c.workers < 1) throw PreconditionError("config: workers must be at least 1");
    if (c.counterexample_cap == 0) throw PreconditionError("config: counterexample_cap must be positive");
}

inline ConfigLayer parse_config_text(std::string_view text) {
    ConfigLayer layer;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = ehinv::detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = ehinv::detail::trim(line.substr(0, eq));
        const auto value = ehinv::detail::trim(line.substr(eq + 1));
        if (key == "window") {
            layer.window = static_cast<int>(detail::parse_number(key, value));
        } else if (key == "primes") {
            std::vector<int> primes;
            std::string_view rest = value;
            while (true) {
                const auto comma = rest.find(',');
                primes.push_back(static_cast<int>(detail::parse_number(key, rest.substr(0, comma))));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            layer.primes = primes;
        } else if (key == "workers") {
            layer.workers = static_cast<int>(detail::parse_number(key, value));
        } else if (key == "format") {
            layer.format = parse_format(value);
        } else if (key == "checkpoint_dir") {
            layer.checkpoint_dir = std::string(value);
        } else if (key == "counterexample_cap") {
            const long long cap = detail::parse_number(key, value);
            if (cap < 1) throw PreconditionError("config: counterexample_cap must be positive");
            layer.counterexample_cap = static_cast<std::size_t>(cap);
        } else {
            throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    return layer;
}

inline ConfigLayer load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw PreconditionError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_config_text(buf.str());
}

/// Built-in defaults, overridden by the file layer, overridden by flags.
inline CliConfig resolve_config(const ConfigLayer& file, const ConfigLayer& flags) {
    CliConfig c;
    auto apply = [&c](const ConfigLayer& layer) {
        if (layer.window) c.window = *layer.window;
        if (layer.primes) c.primes = *layer.primes;
        if (layer.workers) c.workers = *layer.workers;
        if (layer.format) c.format = *layer.format;
        if (layer.checkpoint_dir) c.checkpoint_dir = *layer.checkpoint_dir;
        if (layer.counterexample_cap) c.counterexample_cap = *layer.counterexample_cap;
    };
    apply(file);
    apply(flags);
    validate(c);
    return c;
}

} // namespace ehinv::cli
