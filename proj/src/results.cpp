#include "lcl/results.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace lcl {

void ResultRecord::add_config(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
}

void ResultRecord::add_config(const std::string& key, double value) {
    config.emplace_back(key, format_double(value));
}

void ResultRecord::add_config(const std::string& key, std::uint64_t value) {
    config.emplace_back(key, std::to_string(value));
}

void ResultRecord::add_provenance(const std::string& key, const std::string& value) {
    provenance.emplace_back(key, value);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// RFC 4180: quote fields containing commas, quotes, or newlines
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
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

std::string to_csv(const ResultRecord& record) {
    std::ostringstream out;
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(record.columns[i]);
    }
    out << '\n';
    for (const auto& row : record.rows) {
        if (row.size() != record.columns.size())
            throw std::logic_error("to_csv: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const ResultRecord& record) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema_version\": " << record.schema_version << ",\n";
    out << "  \"subcommand\": " << json_quote(record.subcommand) << ",\n";
    auto emit_map = [&](const char* name,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
        out << "  \"" << name << "\": {";
        for (std::size_t i = 0; i < kv.size(); ++i) {
            if (i) out << ',';
            out << "\n    " << json_quote(kv[i].first) << ": " << json_quote(kv[i].second);
        }
        out << (kv.empty() ? "" : "\n  ") << "},\n";
    };
    emit_map("config", record.config);
    emit_map("provenance", record.provenance);
    out << "  \"columns\": [";
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
        if (i) out << ", ";
        out << json_quote(record.columns[i]);
    }
    out << "],\n";
    out << "  \"rows\": [";
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        if (i) out << ',';
        out << "\n    [";
        const auto& row = record.rows[i];
        if (row.size() != record.columns.size())
            throw std::logic_error("to_json: row width does not match the header");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ", ";
            out << format_double(row[j]);
        }
        out << ']';
    }
    out << (record.rows.empty() ? "" : "\n  ") << "]\n";
    out << "}\n";
    return out.str();
}

void emit_results(const ResultRecord& record, const std::string& format, const std::string& path) {
    std::string payload;
    if (format == "csv") {
        payload = to_csv(record);
    } else if (format == "json") {
        payload = to_json(record);
    } else {
        throw std::invalid_argument("emit_results: format must be csv or json");
    }
    if (path == "-" || path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_results: cannot open output path " + path);
    out << payload;
    if (!out) throw std::runtime_error("emit_results: write failed for " + path);
}

}  // namespace lcl
