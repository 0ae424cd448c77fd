#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spantree::cli {

// Fixed 12-significant-digit rendering. Reports must be byte-identical for
// identical configs, so we never rely on shortest-round-trip formatting.
inline std::string fmt12(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

// Streaming JSON writer with fixed field order and fixed float formatting.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& k) {
        separate();
        out_ << '"' << json_escape(k) << "\": ";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(const std::string& v) { return raw('"' + json_escape(v) + '"'); }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(double v) { return raw(fmt12(v)); }
    JsonWriter& value(std::int64_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& null() { return raw("null"); }

    template <typename T>
    JsonWriter& kv(const std::string& k, const T& v) {
        key(k);
        return value(v);
    }

    std::string str() const { return out_.str() + "\n"; }

private:
    JsonWriter& open(char c) {
        separate();
        out_ << c;
        comma_.push_back(false);
        return *this;
    }

    JsonWriter& close(char c) {
        comma_.pop_back();
        out_ << c;
        mark_written();
        return *this;
    }

    JsonWriter& raw(const std::string& text) {
        separate();
        out_ << text;
        mark_written();
        return *this;
    }

    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!comma_.empty() && comma_.back()) out_ << ", ";
    }

    void mark_written() {
        pending_value_ = false;
        if (!comma_.empty()) comma_.back() = true;
    }

    std::ostringstream out_;
    std::vector<bool> comma_;
    bool pending_value_ = false;
};

// CSV projection: a header plus one line per row, same float formatting.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) {
        append_row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw std::logic_error("CsvWriter: column mismatch");
        append_row(cells);
    }

    std::string str() const { return out_.str(); }

private:
    void append_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ostringstream out_;
    std::size_t width_;
};

}  // namespace spantree::cli
