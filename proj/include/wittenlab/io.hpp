#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wittenlab {

// Shortest round-trip decimal form of a double (%.17g), used everywhere a
// float reaches an output file so reruns are byte-identical.
std::string format_double(double v);

// Insertion-ordered JSON value tree with deterministic serialization.
class JsonValue {
  public:
    static JsonValue object();
    static JsonValue array();
    static JsonValue number(double v);
    static JsonValue integer(long long v);
    static JsonValue unsigned_integer(unsigned long long v);
    static JsonValue boolean(bool v);
    static JsonValue string(const std::string& v);

    JsonValue& set(const std::string& key, JsonValue v);  // object members, in call order
    JsonValue& push(JsonValue v);                         // array elements

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { object, array, scalar };
    Kind kind_ = Kind::scalar;
    std::string scalar_;  // serialized form for scalars
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> elements_;

    void write(std::string& out, int indent, int depth) const;
};

JsonValue json_number_array(const std::vector<double>& values);
JsonValue json_integer_array(const std::vector<int>& values);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace wittenlab
