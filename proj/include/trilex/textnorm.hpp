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

#ifndef TRILEX_TEXTNORM_HPP
#define TRILEX_TEXTNORM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trilex/unicode.hpp"

namespace trilex::textnorm {

/// Guards accent folding against vocabulary collisions: a fold that would
/// merge two distinct vocabulary tokens is suppressed for tokens in that
/// fold class.
class AccentGuard {
public:
    AccentGuard() = default;

    explicit AccentGuard(const std::set<std::string>& vocab) {
        std::unordered_map<std::string, std::set<std::string>> classes;
        for (const auto& word : vocab) classes[fold_token(word)].insert(word);
        for (auto& [folded, members] : classes) {
            if (members.size() > 1) protected_.insert(folded);
        }
    }

    static std::string fold_token(const std::string& token) {
        std::u32string out;
        for (char32_t cp : uni::decode_utf8(token)) out += uni::fold_accent(cp);
        return uni::encode_utf8(out);
    }

    bool is_protected(const std::string& folded) const {
        return protected_.count(folded) > 0;
    }

private:
    std::unordered_set<std::string> protected_;
};

struct NormalizationConfig {
    bool lowercase = true;
    bool strip_punctuation = true;
    std::set<char32_t> keep_chars = {U'-', U'\''};
    bool normalize_accents = true;
    bool collapse_whitespace = true;
    const AccentGuard* accent_guard = nullptr;  // optional; see class doc
};

namespace detail {

inline std::u32string fold_token_accents(const std::u32string& token,
                                         const AccentGuard* guard) {
    std::u32string folded;
    for (char32_t cp : token) folded += uni::fold_accent(cp);
    if (guard && guard->is_protected(uni::encode_utf8(folded))) return token;
    return folded;
}

}  // namespace detail

/// Lowercase, strip punctuation (keeping configured characters), fold
/// accents, and collapse whitespace. Idempotent.
inline std::string normalize_text(const std::string& text, const NormalizationConfig& cfg = {}) {
    std::u32string in = uni::decode_utf8(text);
    std::u32string kept;
    kept.reserve(in.size());
    for (char32_t cp : in) {
        if (cfg.lowercase) cp = uni::fold_case(cp);
        if (uni::is_whitespace(cp)) {
            kept.push_back(U' ');
            continue;
        }
        if (cfg.strip_punctuation && !uni::is_letterlike(cp) && !cfg.keep_chars.count(cp))
            continue;
        kept.push_back(cp);
    }
    // Accent folding is token-scoped so the vocabulary guard can veto it.
    std::u32string out;
    out.reserve(kept.size());
    std::u32string token;
    size_t pending_spaces = 0;
    bool any = false;
    auto flush = [&] {
        if (token.empty()) return;
        std::u32string t = cfg.normalize_accents
                               ? detail::fold_token_accents(token, cfg.accent_guard)
                               : token;
        if (!t.empty()) {
            if (cfg.collapse_whitespace) {
                if (any && pending_spaces) out.push_back(U' ');
            } else {
                out.append(pending_spaces, U' ');
            }
            out += t;
            any = true;
            pending_spaces = 0;
        }
        token.clear();
    };
    for (char32_t cp : kept) {
        if (cp == U' ') {
            flush();
            ++pending_spaces;
        } else {
            token.push_back(cp);
        }
    }
    flush();
    if (!cfg.collapse_whitespace) out.append(pending_spaces, U' ');
    return uni::encode_utf8(out);
}

/// Whitespace split; expects already-normalized input.
inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

/// Normalized Levenshtein similarity: 1 - dist / max(len), over Unicode
/// scalar values. 1.0 iff the tokens are equal.
inline double similarity(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("similarity: tokens must be non-empty");
    std::u32string ua = uni::decode_utf8(a), ub = uni::decode_utf8(b);
    size_t dist = uni::levenshtein(ua, ub);
    size_t maxlen = std::max(ua.size(), ub.size());
    return 1.0 - static_cast<double>(dist) / static_cast<double>(maxlen);
}

enum class CorrectionStatus { AutoCorrected, Flagged, Unchanged };

struct CorrectionRecord {
    std::string language;
    std::string original;
    std::optional<std::string> corrected;
    double similarity = 0.0;
    CorrectionStatus status = CorrectionStatus::Unchanged;
};

struct CorrectionReport {
    struct Counts {
        size_t auto_corrections = 0;
        size_t flagged = 0;
        size_t unchanged = 0;
    };
    std::map<std::string, Counts> per_language;
};

using Vocabulary = std::map<std::string, std::set<std::string>>;  // lang -> tokens

/// Vocabulary-driven fuzzy correction. Out-of-vocabulary tokens take their
/// best candidate (tie-break: lexicographically smallest) when similarity
/// clears the threshold, otherwise they are flagged for manual review.
inline std::pair<std::vector<CorrectionRecord>, CorrectionReport>
correct_tokens(const std::vector<std::pair<std::string, std::string>>& tokens,
               const Vocabulary& vocab, double threshold = 0.90) {
    std::vector<CorrectionRecord> records;
    records.reserve(tokens.size());
    CorrectionReport report;
    for (const auto& [lang, token] : tokens) {
        auto vit = vocab.find(lang);
        if (vit == vocab.end())
            throw std::invalid_argument("correct_tokens: unknown language code '" + lang + "'");
        const auto& words = vit->second;
        CorrectionRecord rec;
        rec.language = lang;
        rec.original = token;
        if (words.count(token)) {
            rec.similarity = 1.0;
            rec.status = CorrectionStatus::Unchanged;
            ++report.per_language[lang].unchanged;
        } else {
            double best = -1.0;
            std::string best_word;
            for (const auto& w : words) {
                double s = similarity(token, w);
                if (s > best) {  // set iteration is sorted, first win = smallest
                    best = s;
                    best_word = w;
                }
            }
            rec.similarity = best;
            if (best >= threshold) {
                rec.corrected = best_word;
                rec.status = CorrectionStatus::AutoCorrected;
                ++report.per_language[lang].auto_corrections;
            } else {
                rec.status = CorrectionStatus::Flagged;
                ++report.per_language[lang].flagged;
            }
        }
        records.push_back(std::move(rec));
    }
    return {records, report};
}

/// Per-language correction summary CSV: language, auto_corrections, flagged.
inline std::string serialize_correction_report(const CorrectionReport& report) {
    std::string out = "language,auto_corrections,flagged\n";
    for (const auto& [lang, counts] : report.per_language) {
        out += lang + "," + std::to_string(counts.auto_corrections) + "," +
               std::to_string(counts.flagged) + "\n";
    }
    return out;
}

}  // namespace trilex::textnorm

#endif  // TRILEX_TEXTNORM_HPP
