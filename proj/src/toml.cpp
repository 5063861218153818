#include "ssqec/toml.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ssqec {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw std::runtime_error("[config] line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Remove a trailing # comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_str) {
            if (c == '\\') ++i;
            else if (c == '"') in_str = false;
        } else if (c == '"') {
            in_str = true;
        } else if (c == '#') {
            return s.substr(0, i);
        }
    }
    return s;
}

bool valid_key(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

std::string parse_basic_string(const std::string& s, std::size_t line, std::size_t* end) {
    std::string out;
    std::size_t i = 1; // past the opening quote
    while (i < s.size() && s[i] != '"') {
        char c = s[i];
        if (c == '\\') {
            if (i + 1 >= s.size()) fail(line, "dangling escape in string");
            char e = s[++i];
            switch (e) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default: fail(line, std::string("unsupported escape '\\") + e + "'");
            }
        } else {
            out += c;
        }
        ++i;
    }
    if (i >= s.size()) fail(line, "unterminated string");
    *end = i + 1;
    return out;
}

// Split a bracketed array body on top-level commas.
std::vector<std::string> split_array(const std::string& body, std::size_t line) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    bool in_str = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (in_str) {
            cur += c;
            if (c == '\\' && i + 1 < body.size()) cur += body[++i];
            else if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') in_str = true;
        else if (c == '[') ++depth;
        else if (c == ']') {
            if (depth == 0) fail(line, "unbalanced ']' in array");
            --depth;
        } else if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (in_str) fail(line, "unterminated string in array");
    if (depth != 0) fail(line, "unbalanced '[' in array");
    std::string last = trim(cur);
    if (!last.empty()) parts.push_back(last); // trailing comma tolerated
    return parts;
}

TomlValue parse_value(const std::string& raw, std::size_t line) {
    TomlValue v;
    v.line = line;
    std::string s = trim(raw);
    if (s.empty()) fail(line, "missing value");
    if (s.front() == '"') {
        std::size_t end = 0;
        v.kind = TomlValue::Kind::string;
        v.str = parse_basic_string(s, line, &end);
        if (!trim(s.substr(end)).empty()) fail(line, "trailing characters after string");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') fail(line, "array does not end with ']'");
        v.kind = TomlValue::Kind::array;
        for (const std::string& part : split_array(s.substr(1, s.size() - 2), line))
            v.array.push_back(parse_value(part, line));
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.bool_v = (s == "true");
        return v;
    }
    // integer first (no '.', 'e', or 'E'), then float; both must consume the
    // whole token
    if (s.find_first_of(".eE") == std::string::npos) {
        char* end = nullptr;
        long long n = std::strtoll(s.c_str(), &end, 10);
        if (end == s.c_str() + s.size()) {
            v.kind = TomlValue::Kind::integer;
            v.int_v = n;
            return v;
        }
    }
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() + s.size()) {
        v.kind = TomlValue::Kind::floating;
        v.float_v = d;
        return v;
    }
    fail(line, "cannot parse value '" + s + "'");
}

[[noreturn]] void type_fail(const TomlValue& v, const char* want) {
    const char* names[] = {"string", "integer", "float", "boolean", "array"};
    fail(v.line, std::string("expected ") + want + ", found " +
                     names[static_cast<int>(v.kind)]);
}

} // namespace

const std::string& TomlValue::as_string() const {
    if (kind != Kind::string) type_fail(*this, "string");
    return str;
}

std::int64_t TomlValue::as_int() const {
    if (kind != Kind::integer) type_fail(*this, "integer");
    return int_v;
}

double TomlValue::as_double() const {
    if (kind == Kind::integer) return double(int_v);
    if (kind != Kind::floating) type_fail(*this, "number");
    return float_v;
}

bool TomlValue::as_bool() const {
    if (kind != Kind::boolean) type_fail(*this, "boolean");
    return bool_v;
}

const std::vector<TomlValue>& TomlValue::as_array() const {
    if (kind != Kind::array) type_fail(*this, "array");
    return array;
}

const TomlValue& TomlTable::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("[config] missing key '" + key + "'");
    return it->second;
}

std::string TomlTable::get_string(const std::string& key) const { return get(key).as_string(); }

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key).as_string() : fallback;
}

std::int64_t TomlTable::get_int(const std::string& key) const { return get(key).as_int(); }

std::int64_t TomlTable::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get(key).as_int() : fallback;
}

double TomlTable::get_double(const std::string& key) const { return get(key).as_double(); }

double TomlTable::get_double(const std::string& key, double fallback) const {
    return has(key) ? get(key).as_double() : fallback;
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get(key).as_bool() : fallback;
}

std::vector<double> TomlTable::get_double_array(const std::string& key) const {
    std::vector<double> out;
    for (const TomlValue& v : get(key).as_array()) out.push_back(v.as_double());
    return out;
}

std::vector<std::int64_t> TomlTable::get_int_array(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const TomlValue& v : get(key).as_array()) out.push_back(v.as_int());
    return out;
}

std::vector<std::string> TomlTable::get_string_array(const std::string& key) const {
    std::vector<std::string> out;
    for (const TomlValue& v : get(key).as_array()) out.push_back(v.as_string());
    return out;
}

std::vector<std::string> TomlTable::keys() const { return order_; }

void TomlTable::insert(const std::string& key, TomlValue v, std::size_t line) {
    if (values_.count(key)) fail(line, "duplicate key '" + key + "'");
    values_.emplace(key, std::move(v));
    order_.push_back(key);
}

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string raw;
    std::string prefix;
    std::set<std::string> sections;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "section header does not end with ']'");
            std::string name = trim(line.substr(1, line.size() - 2));
            std::string rest = name;
            if (name.empty()) fail(lineno, "empty section name");
            std::size_t pos = 0;
            while ((pos = rest.find('.')) != std::string::npos) {
                if (!valid_key(rest.substr(0, pos))) fail(lineno, "bad section name '" + name + "'");
                rest = rest.substr(pos + 1);
            }
            if (!valid_key(rest)) fail(lineno, "bad section name '" + name + "'");
            if (!sections.insert(name).second) fail(lineno, "duplicate section [" + name + "]");
            prefix = name + ".";
            continue;
        }
        std::size_t eq = std::string::npos;
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (in_str) {
                if (c == '\\') ++i;
                else if (c == '"') in_str = false;
            } else if (c == '"') {
                in_str = true;
            } else if (c == '=') {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) fail(lineno, "bad key '" + key + "'");
        table.insert(prefix + key, parse_value(line.substr(eq + 1), lineno), lineno);
    }
    return table;
}

TomlTable parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("[config] cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

} // namespace ssqec
