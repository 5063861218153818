#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ssqec {

// Strict subset of TOML covering what experiment configs need: `[section]`
// and `[section.sub]` headers, `key = value` lines, `#` comments, and values
// that are strings, booleans, integers, floats, or single-line arrays of
// those.  Keys are flattened to dotted paths ("grid.lambdas").  Every parse
// or type error carries the 1-based source line.
struct TomlValue {
    enum class Kind { string, integer, floating, boolean, array };
    Kind kind = Kind::string;
    std::string str;
    std::int64_t int_v = 0;
    double float_v = 0.0;
    bool bool_v = false;
    std::vector<TomlValue> array;
    std::size_t line = 0;

    const std::string& as_string() const;
    std::int64_t as_int() const;
    double as_double() const; // accepts integer values too
    bool as_bool() const;
    const std::vector<TomlValue>& as_array() const;
};

class TomlTable {
  public:
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const TomlValue& get(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_array(const std::string& key) const;
    std::vector<std::int64_t> get_int_array(const std::string& key) const;
    std::vector<std::string> get_string_array(const std::string& key) const;

    // All dotted keys in insertion order; callers use this to reject keys
    // they do not understand, naming the offender and its line.
    std::vector<std::string> keys() const;

    void insert(const std::string& key, TomlValue v, std::size_t line);

  private:
    std::map<std::string, TomlValue> values_;
    std::vector<std::string> order_;
};

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::string& path);

} // namespace ssqec
