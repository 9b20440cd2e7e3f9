#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace imetric::report {

/// Formats a double with 17 significant digits, enough for exact
/// round-tripping of the value through the text form.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Order-preserving JSON document. Reports need only objects, arrays and
/// scalars, and their doubles must carry 17 significant digits.
class Json {
public:
    Json() : v_(nullptr) {}

    static Json object() {
        Json j;
        j.v_ = Object{};
        return j;
    }
    static Json array() {
        Json j;
        j.v_ = Array{};
        return j;
    }
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(double d) : v_(d) {}
    Json(bool b) : v_(b) {}
    Json(std::uint64_t u) : v_(u) {}
    Json(std::int64_t i) : v_(i) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}

    Json& set(std::string key, Json value) {
        std::get<Object>(v_).emplace_back(std::move(key), std::move(value));
        return *this;
    }

    Json& push(Json value) {
        std::get<Array>(v_).push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        return out;
    }

private:
    struct Object;
    struct Array;
    using Value = std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double,
                               std::string, Array, Object>;
    struct Object : std::vector<std::pair<std::string, Json>> {};
    struct Array : std::vector<Json> {};

    Value v_;

    static void escape(std::string& out, const std::string& s) {
        out += '"';
        for (char ch : s) {
            switch (ch) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                        out += buf;
                    } else {
                        out += ch;
                    }
            }
        }
        out += '"';
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
        if (std::holds_alternative<std::nullptr_t>(v_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&v_)) {
            out += *b ? "true" : "false";
        } else if (auto* i = std::get_if<std::int64_t>(&v_)) {
            out += std::to_string(*i);
        } else if (auto* u = std::get_if<std::uint64_t>(&v_)) {
            out += std::to_string(*u);
        } else if (auto* d = std::get_if<double>(&v_)) {
            out += std::isfinite(*d) ? format_double(*d) : "null";
        } else if (auto* s = std::get_if<std::string>(&v_)) {
            escape(out, *s);
        } else if (auto* a = std::get_if<Array>(&v_)) {
            if (a->empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < a->size(); ++i) {
                out += pad;
                (*a)[i].write(out, indent, depth + 1);
                if (i + 1 < a->size()) out += ',';
                out += '\n';
            }
            out += close_pad + "]";
        } else if (auto* o = std::get_if<Object>(&v_)) {
            if (o->empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < o->size(); ++i) {
                out += pad;
                escape(out, (*o)[i].first);
                out += ": ";
                (*o)[i].second.write(out, indent, depth + 1);
                if (i + 1 < o->size()) out += ',';
                out += '\n';
            }
            out += close_pad + "}";
        }
    }
};

/// CSV table with a fixed header; doubles carry 17 significant digits.
class Csv {
public:
    explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

    class Row {
    public:
        Row& add(const std::string& s) {
            cells_.push_back(s);
            return *this;
        }
        Row& add(const char* s) { return add(std::string(s)); }
        Row& add(double v) { return add(format_double(v)); }
        Row& add(std::uint64_t v) { return add(std::to_string(v)); }
        Row& add(std::int64_t v) { return add(std::to_string(v)); }
        const std::vector<std::string>& cells() const { return cells_; }

    private:
        std::vector<std::string> cells_;
    };

    Row& new_row() {
        rows_.emplace_back();
        return rows_.back();
    }

    std::string dump() const {
        std::string out = join(header_);
        for (const auto& r : rows_) out += join(r.cells());
        return out;
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        line += '\n';
        return line;
    }

    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

} // namespace imetric::report
