/*
 * Copyright 2026 TriLex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRILEX_CSV_HPP
#define TRILEX_CSV_HPP

#include <sstream>
#include <string>
#include <vector>

namespace trilex::csv {

/// RFC-4180 style parsing: comma separated, double-quote escaping, CRLF or
/// LF line ends. Returns one vector of fields per record.
inline std::vector<std::vector<std::string>> parse(const std::string& data) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    size_t i = 0;
    const size_t n = data.size();
    // Skip UTF-8 BOM if present.
    if (n >= 3 && data[0] == '\xEF' && data[1] == '\xBB' && data[2] == '\xBF') i = 3;
    auto end_field = [&] {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(row);
        row.clear();
        row_started = false;
    };
    for (; i < n; ++i) {
        char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; row_started = true; break;
            case ',': end_field(); row_started = true; break;
            case '\r': break;
            case '\n':
                if (row_started) end_row();  // blank lines are skipped
                break;
            default: field.push_back(c); row_started = true; break;
        }
    }
    if (row_started) end_row();
    return rows;
}

inline std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

}  // namespace trilex::csv

#endif  // TRILEX_CSV_HPP
