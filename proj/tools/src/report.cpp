#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace gibbscert::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::string scalar_text(const Json& v) {
    if (v.is_null()) return "nan";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += scalar_text(v[i]);
        }
        return s + "]";
    }
    return v.dump();
}

bool is_table(const Json& v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

void render_table(const std::string& name, const Json& rows, std::ostream& out) {
    std::vector<std::string> keys;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
    std::vector<std::vector<std::string>> cells;
    cells.push_back(keys);
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& k : keys) line.push_back(r.contains(k) ? scalar_text(r.at(k)) : "");
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(keys.size(), 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    out << name << ":\n";
    for (const auto& line : cells) {
        out << " ";
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << ' ' << line[i];
            if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
        }
        out << '\n';
    }
}

void render_object(const std::string& prefix, const Json& doc, std::ostream& out) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            render_object(key, *it, out);
        } else if (is_table(*it)) {
            render_table(key, *it, out);
        } else {
            out << key << ": " << scalar_text(*it) << '\n';
        }
    }
}

}  // namespace

void render_text(const Json& doc, std::ostream& out) {
    if (doc.contains("header")) {
        for (auto it = doc["header"].begin(); it != doc["header"].end(); ++it) {
            out << "# " << it.key() << ": " << scalar_text(*it) << '\n';
        }
    }
    Json body = doc;
    body.erase("header");
    render_object("", body, out);
}

void render_json(const Json& doc, std::ostream& out) {
    out << doc.dump(2) << '\n';
}

}  // namespace gibbscert::cli
