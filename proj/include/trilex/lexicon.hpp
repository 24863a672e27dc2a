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

#ifndef TRILEX_LEXICON_HPP
#define TRILEX_LEXICON_HPP

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trilex/csv.hpp"

namespace trilex {

enum class SentimentClass { Negative, Neutral, Positive };

inline const char* to_string(SentimentClass c) {
    switch (c) {
        case SentimentClass::Negative: return "Negatif";
        case SentimentClass::Neutral: return "Neutre";
        case SentimentClass::Positive: return "Positif";
    }
    return "?";
}

inline const char* short_label(SentimentClass c) {
    switch (c) {
        case SentimentClass::Negative: return "Neg";
        case SentimentClass::Neutral: return "Neu";
        case SentimentClass::Positive: return "Pos";
    }
    return "?";
}

/// Accepts "Positif"/"Negatif" (lexicon spelling), "Positive"/"Negative",
/// "Neutral"/"Neutre", and the short Pos/Neg/Neu labels, case-insensitively.
inline std::optional<SentimentClass> parse_sentiment(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "positif" || t == "positive" || t == "pos") return SentimentClass::Positive;
    if (t == "negatif" || t == "negative" || t == "neg") return SentimentClass::Negative;
    if (t == "neutre" || t == "neutral" || t == "neu") return SentimentClass::Neutral;
    return std::nullopt;
}

/// Translation language codes carried by the expanded lexicon, in canonical
/// column order.
inline const std::array<std::pair<const char*, const char*>, 6>& translation_columns() {
    static const std::array<std::pair<const char*, const char*>, 6> cols = {{
        {"en", "English"},
        {"zu", "Zulu"},
        {"af", "Afrikaans"},
        {"nso", "Sepedi"},
        {"xh", "Xhosa"},
        {"sn", "Shona"},
    }};
    return cols;
}

struct LexiconEntry {
    std::string ciluba;
    std::string french;
    double score = 0.0;
    SentimentClass sentiment = SentimentClass::Neutral;
    std::string nature;
    std::map<std::string, std::string> translations;  // lang code -> word, absent when missing

    std::optional<std::string> translation(const std::string& lang) const {
        auto it = translations.find(lang);
        if (it == translations.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const LexiconEntry&) const = default;
};

struct Warning {
    size_t row = 0;  // 1-based data row index
    std::string message;
};

struct CleanReport {
    size_t input_rows = 0;
    size_t duplicates_removed = 0;
    size_t whitespace_fixes = 0;
    std::vector<Warning> warnings;
};

namespace detail {

inline std::string collapse_whitespace(const std::string& s, bool* changed = nullptr) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (char c : s) {
        bool sp = (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v');
        if (sp) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            in_space = false;
            out.push_back(c);
        }
    }
    if (changed) *changed = (out != s);
    return out;
}

inline std::string format_score(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace detail

/// Parse the lexicon CSV. Required columns: CILUBA, French, Score,
/// Sentiment, Nature; translation columns are optional. Bad rows become
/// warnings and are skipped; a missing required column or an empty file is
/// fatal.
inline std::pair<std::vector<LexiconEntry>, std::vector<Warning>>
parse_lexicon(const std::string& csv_bytes) {
    auto rows = csv::parse(csv_bytes);
    if (rows.empty()) throw std::runtime_error("lexicon: empty file");
    const auto& header = rows[0];
    auto find_col = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i) {
            std::string h = detail::collapse_whitespace(header[i]);
            if (h == name) return static_cast<int>(i);
        }
        return -1;
    };
    int c_ciluba = find_col("CILUBA");
    int c_french = find_col("French");
    int c_score = find_col("Score");
    int c_sent = find_col("Sentiment");
    int c_nature = find_col("Nature");
    for (auto [idx, name] : {std::pair{c_ciluba, "CILUBA"}, {c_french, "French"},
                             {c_score, "Score"}, {c_sent, "Sentiment"}, {c_nature, "Nature"}}) {
        if (idx < 0)
            throw std::runtime_error(std::string("lexicon: missing required column ") + name);
    }
    std::vector<std::pair<std::string, int>> trans_cols;
    for (const auto& [code, col] : translation_columns()) {
        int idx = find_col(col);
        if (idx >= 0) trans_cols.emplace_back(code, idx);
    }

    std::vector<LexiconEntry> entries;
    std::vector<Warning> warnings;
    auto cell = [](const std::vector<std::string>& row, int idx) -> std::string {
        return (idx >= 0 && static_cast<size_t>(idx) < row.size()) ? row[static_cast<size_t>(idx)] : "";
    };
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        LexiconEntry e;
        e.ciluba = cell(row, c_ciluba);
        e.french = cell(row, c_french);
        e.nature = cell(row, c_nature);
        std::string score_s = cell(row, c_score);
        try {
            size_t pos = 0;
            e.score = std::stod(score_s, &pos);
            if (pos != score_s.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            warnings.push_back({r, "unparseable score '" + score_s + "'"});
            continue;
        }
        if (e.score < -9.0 || e.score > 9.0) {
            warnings.push_back({r, "score out of range: " + score_s});
            continue;
        }
        auto sent = parse_sentiment(cell(row, c_sent));
        if (!sent) {
            warnings.push_back({r, "unknown sentiment '" + cell(row, c_sent) + "'"});
            continue;
        }
        e.sentiment = *sent;
        // Sign consistency is a warning, not a rejection; the source data
        // contains rows like "Biluatu -1.0 Negatif" amid positive blocks.
        bool consistent = (e.sentiment == SentimentClass::Positive && e.score > 0) ||
                          (e.sentiment == SentimentClass::Negative && e.score < 0) ||
                          (e.sentiment == SentimentClass::Neutral && e.score == 0);
        if (!consistent)
            warnings.push_back({r, "sentiment/score sign mismatch (" +
                                       std::string(to_string(e.sentiment)) + ", " + score_s + ")"});
        for (const auto& [code, idx] : trans_cols) {
            std::string v = cell(row, idx);
            if (!v.empty()) e.translations[code] = v;
        }
        entries.push_back(std::move(e));
    }
    return {entries, warnings};
}

/// Whitespace-normalize every textual field and drop exact duplicates
/// (all fields equal after normalization), keeping first occurrences.
inline std::pair<std::vector<LexiconEntry>, CleanReport>
clean_lexicon(const std::vector<LexiconEntry>& entries) {
    CleanReport report;
    report.input_rows = entries.size();
    std::vector<LexiconEntry> out;
    out.reserve(entries.size());
    std::unordered_set<std::string> seen;
    for (const auto& in : entries) {
        LexiconEntry e = in;
        bool changed = false, c = false;
        e.ciluba = detail::collapse_whitespace(e.ciluba, &c); changed |= c;
        e.french = detail::collapse_whitespace(e.french, &c); changed |= c;
        e.nature = detail::collapse_whitespace(e.nature, &c); changed |= c;
        for (auto& [code, word] : e.translations) {
            word = detail::collapse_whitespace(word, &c);
            changed |= c;
        }
        // Normalization can empty out a whitespace-only translation cell.
        for (auto it = e.translations.begin(); it != e.translations.end();) {
            if (it->second.empty()) it = e.translations.erase(it);
            else ++it;
        }
        if (changed) ++report.whitespace_fixes;
        std::string key = e.ciluba + "\x1f" + e.french + "\x1f" + detail::format_score(e.score) +
                          "\x1f" + to_string(e.sentiment) + "\x1f" + e.nature;
        for (const auto& [code, word] : e.translations) key += "\x1f" + code + "=" + word;
        if (!seen.insert(std::move(key)).second) ++report.duplicates_removed;
        else out.push_back(std::move(e));
    }
    return {out, report};
}

inline std::string serialize_lexicon(const std::vector<LexiconEntry>& entries) {
    std::string out;
    std::vector<std::string> header = {"CILUBA", "French", "Score", "Sentiment", "Nature"};
    for (const auto& [code, col] : translation_columns()) header.push_back(col);
    out += csv::format_row(header);
    for (const auto& e : entries) {
        std::vector<std::string> row = {e.ciluba, e.french, detail::format_score(e.score),
                                        to_string(e.sentiment), e.nature};
        for (const auto& [code, col] : translation_columns()) {
            auto t = e.translation(code);
            row.push_back(t ? *t : "");
        }
        out += csv::format_row(row);
    }
    return out;
}

inline void write_lexicon(const std::vector<LexiconEntry>& entries, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("lexicon: cannot open for writing: " + path);
    f << serialize_lexicon(entries);
    if (!f) throw std::runtime_error("lexicon: write failed: " + path);
}

inline std::pair<std::vector<LexiconEntry>, std::vector<Warning>>
read_lexicon_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("lexicon: cannot open: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_lexicon(data);
}

}  // namespace trilex

#endif  // TRILEX_LEXICON_HPP
