// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_JSONIO_HPP
#define IMHERE_JSONIO_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "imhere/core.hpp"

namespace imhere {

using json = nlohmann::json;

// Parse or schema failure in a scenario or trace document. `where` is the
// file plus line/column or a field path.
class FormatError : public SimError {
public:
    FormatError(const std::string& where, const std::string& what)
        : SimError(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

namespace jsondetail {

// line/column of a byte offset, 1-based
inline std::string offset_position(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_document(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset; translate it for humans
        throw FormatError(origin + " (" + offset_position(text, e.byte) + ")", e.what());
    }
}

// Rejects unknown keys so typos never silently change a run.
inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw FormatError(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (std::string_view a : allowed)
            if (key == a) ok = true;
        if (!ok) throw FormatError(path, "unknown key '" + key + "'");
    }
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(path, std::string("missing '") + key + "'");
    return *it;
}

inline double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw FormatError(path, "expected a number");
    return v.get<double>();
}

inline bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw FormatError(path, "expected a boolean");
    return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw FormatError(path, "expected a string");
    return v.get<std::string>();
}

inline Vec2 as_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2)
        throw FormatError(path, "expected a 2-element [x, y] array");
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

inline Channel as_channel(const std::string& name, const std::string& path) {
    auto c = channel_from_name(name);
    if (!c) throw FormatError(path, "unknown channel '" + name + "'");
    return *c;
}

// object of channel-name -> number, merged over defaults
inline void fill_per_channel(PerChannel<double>& out, const json& obj,
                             const std::string& path) {
    if (!obj.is_object()) throw FormatError(path, "expected an object");
    for (const auto& [key, value] : obj.items())
        out[as_channel(key, path)] = as_number(value, path + "." + key);
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char byte : data) {
        h ^= byte;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace jsondetail
}  // namespace imhere

#endif  // IMHERE_JSONIO_HPP
