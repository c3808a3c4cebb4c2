#include "wittenlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
}

JsonValue JsonValue::number(double value) {
    JsonValue v;
    v.scalar_ = format_double(value);
    return v;
}

JsonValue JsonValue::integer(long long value) {
    JsonValue v;
    v.scalar_ = std::to_string(value);
    return v;
}

JsonValue JsonValue::unsigned_integer(unsigned long long value) {
    JsonValue v;
    v.scalar_ = std::to_string(value);
    return v;
}

JsonValue JsonValue::boolean(bool value) {
    JsonValue v;
    v.scalar_ = value ? "true" : "false";
    return v;
}

namespace {

std::string escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

}  // namespace

JsonValue JsonValue::string(const std::string& value) {
    JsonValue v;
    v.scalar_ = escape(value);
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    elements_.push_back(std::move(v));
    return *this;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(size_t(indent) * (depth + 1), ' ');
    const std::string close_pad(size_t(indent) * depth, ' ');
    switch (kind_) {
        case Kind::scalar:
            out += scalar_;
            break;
        case Kind::object: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (size_t i = 0; i < members_.size(); ++i) {
                out += pad + escape(members_[i].first) + ": ";
                members_[i].second.write(out, indent, depth + 1);
                out += i + 1 < members_.size() ? ",\n" : "\n";
            }
            out += close_pad + "}";
            break;
        }
        case Kind::array: {
            if (elements_.empty()) {
                out += "[]";
                break;
            }
            // Arrays of scalars stay on one line; nested structures wrap.
            bool flat = true;
            for (const auto& e : elements_)
                if (e.kind_ != Kind::scalar) flat = false;
            if (flat) {
                out += "[";
                for (size_t i = 0; i < elements_.size(); ++i) {
                    out += elements_[i].scalar_;
                    if (i + 1 < elements_.size()) out += ", ";
                }
                out += "]";
                break;
            }
            out += "[\n";
            for (size_t i = 0; i < elements_.size(); ++i) {
                out += pad;
                elements_[i].write(out, indent, depth + 1);
                out += i + 1 < elements_.size() ? ",\n" : "\n";
            }
            out += close_pad + "]";
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

JsonValue json_number_array(const std::vector<double>& values) {
    JsonValue arr = JsonValue::array();
    for (double v : values) arr.push(JsonValue::number(v));
    return arr;
}

JsonValue json_integer_array(const std::vector<int>& values) {
    JsonValue arr = JsonValue::array();
    for (int v : values) arr.push(JsonValue::integer(v));
    return arr;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error(ErrorCode::io_error, "short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace wittenlab
