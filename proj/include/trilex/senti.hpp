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

#ifndef TRILEX_SENTI_HPP
#define TRILEX_SENTI_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "trilex/corpus.hpp"
#include "trilex/lexicon.hpp"
#include "trilex/textnorm.hpp"

namespace trilex::senti {

struct TokenContribution {
    std::string token;
    double weight = 0.0;
};

/// Normalized lookup table from one language column of the lexicon.
/// Multi-word entries ("speak again") are kept as space-joined keys and
/// matched longest-first during scoring.
class LexiconIndex {
public:
    LexiconIndex() = default;

    LexiconIndex(const std::vector<LexiconEntry>& entries, const std::string& lang,
                 const textnorm::NormalizationConfig& cfg = {}) {
        std::unordered_map<std::string, std::pair<double, size_t>> acc;
        for (const auto& e : entries) {
            std::optional<std::string> word = word_for(e, lang);
            if (!word) continue;
            std::string key = textnorm::normalize_text(*word, cfg);
            if (key.empty()) continue;
            auto& slot = acc[key];
            slot.first += e.score;
            slot.second += 1;
            max_words_ = std::max(max_words_, textnorm::tokenize(key).size());
        }
        for (const auto& [key, slot] : acc)
            scores_[key] = slot.first / static_cast<double>(slot.second);
    }

    std::optional<double> lookup(const std::string& key) const {
        auto it = scores_.find(key);
        if (it == scores_.end()) return std::nullopt;
        return it->second;
    }

    size_t max_phrase_words() const { return std::max<size_t>(max_words_, 1); }
    size_t size() const { return scores_.size(); }

    static std::optional<std::string> word_for(const LexiconEntry& e, const std::string& lang) {
        if (lang == "ciluba" || lang == "lua") return e.ciluba.empty() ? std::nullopt
                                                                       : std::optional(e.ciluba);
        if (lang == "fr") return e.french.empty() ? std::nullopt : std::optional(e.french);
        for (const auto& [code, col] : translation_columns()) {
            if (lang == code) return e.translation(code);
        }
        throw std::invalid_argument("lexicon index: unknown language column '" + lang + "'");
    }

private:
    std::unordered_map<std::string, double> scores_;
    size_t max_words_ = 1;
};

namespace detail {

struct Unit {
    std::string text;   // matched phrase or single unmatched token
    std::optional<double> score;
};

/// Greedy longest-match-first segmentation of a token list against the index.
inline std::vector<Unit> segment(const std::vector<std::string>& tokens,
                                 const LexiconIndex& index) {
    std::vector<Unit> units;
    size_t i = 0;
    const size_t max_len = index.max_phrase_words();
    while (i < tokens.size()) {
        bool matched = false;
        for (size_t len = std::min(max_len, tokens.size() - i); len >= 1 && !matched; --len) {
            std::string phrase = tokens[i];
            for (size_t k = 1; k < len; ++k) phrase += " " + tokens[i + k];
            if (auto s = index.lookup(phrase)) {
                units.push_back({phrase, *s});
                i += len;
                matched = true;
            }
        }
        if (!matched) {
            units.push_back({tokens[i], std::nullopt});
            ++i;
        }
    }
    return units;
}

inline double score_units(const std::vector<Unit>& units) {
    if (units.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& u : units)
        if (u.score) sum += *u.score;
    return sum / static_cast<double>(units.size());
}

}  // namespace detail

/// Mean lexicon polarity of a sentence in [-9, +9]. Unmatched tokens count
/// toward the denominator; 0 when nothing matches or the text is empty.
inline double score_tokens(const std::vector<std::string>& tokens, const LexiconIndex& index) {
    return detail::score_units(detail::segment(tokens, index));
}

inline double score_sentence(const std::string& text, const LexiconIndex& index,
                             const textnorm::NormalizationConfig& cfg = {}) {
    return score_tokens(textnorm::tokenize(textnorm::normalize_text(text, cfg)), index);
}

inline double score_sentence(const std::string& text, const std::string& lang,
                             const std::vector<LexiconEntry>& lexicon,
                             const textnorm::NormalizationConfig& cfg = {}) {
    return score_sentence(text, LexiconIndex(lexicon, lang, cfg), cfg);
}

/// Positive above tau_pos, Negative below tau_neg, Neutral between
/// (boundaries are Neutral: strict inequalities).
inline SentimentClass label_from_score(double score, double tau_pos = 0.5,
                                       double tau_neg = -0.5) {
    if (tau_neg >= tau_pos)
        throw std::invalid_argument("label_from_score: tau_neg must be < tau_pos");
    if (score > tau_pos) return SentimentClass::Positive;
    if (score < tau_neg) return SentimentClass::Negative;
    return SentimentClass::Neutral;
}

/// Leave-one-out contributions: contribution(t) = score(S) - score(S with
/// all occurrences of t removed). Sorted by |weight| descending, ties by
/// token ascending.
inline std::vector<TokenContribution> explain_tokens(const std::string& text,
                                                     const LexiconIndex& index,
                                                     const textnorm::NormalizationConfig& cfg = {}) {
    auto tokens = textnorm::tokenize(textnorm::normalize_text(text, cfg));
    double base = score_tokens(tokens, index);
    std::vector<std::string> distinct = tokens;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<TokenContribution> out;
    out.reserve(distinct.size());
    for (const auto& t : distinct) {
        std::vector<std::string> reduced;
        reduced.reserve(tokens.size());
        for (const auto& tok : tokens)
            if (tok != t) reduced.push_back(tok);
        out.push_back({t, base - score_tokens(reduced, index)});
    }
    std::sort(out.begin(), out.end(), [](const TokenContribution& a, const TokenContribution& b) {
        double aw = std::abs(a.weight), bw = std::abs(b.weight);
        if (aw != bw) return aw > bw;
        return a.token < b.token;
    });
    return out;
}

inline std::vector<TokenContribution> explain_tokens(const std::string& text,
                                                     const std::string& lang,
                                                     const std::vector<LexiconEntry>& lexicon,
                                                     const textnorm::NormalizationConfig& cfg = {}) {
    return explain_tokens(text, LexiconIndex(lexicon, lang, cfg), cfg);
}

struct ClassShare {
    size_t count = 0;
    double percentage = 0.0;  // to one decimal
};

/// Corpus class distribution; percentages rounded to one decimal.
inline std::map<SentimentClass, ClassShare>
distribution_report(const std::vector<LabeledSentence>& corpus) {
    std::map<SentimentClass, ClassShare> out;
    size_t total = 0;
    for (const auto& s : corpus) {
        if (!s.label) throw std::invalid_argument("distribution_report: unlabeled sentence " + s.id);
        ++out[*s.label].count;
        ++total;
    }
    if (total == 0) throw std::invalid_argument("distribution_report: empty corpus");
    for (auto c : {SentimentClass::Negative, SentimentClass::Neutral, SentimentClass::Positive})
        out[c];  // report all three classes even at zero
    for (auto& [cls, share] : out) {
        double pct = 100.0 * static_cast<double>(share.count) / static_cast<double>(total);
        share.percentage = std::round(pct * 10.0) / 10.0;
    }
    return out;
}

inline std::string serialize_distribution_csv(const std::map<SentimentClass, ClassShare>& dist) {
    std::string out = "class,count,percentage\n";
    for (const auto& [cls, share] : dist) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", share.percentage);
        out += std::string(short_label(cls)) + "," + std::to_string(share.count) + "," + buf + "\n";
    }
    return out;
}

}  // namespace trilex::senti

#endif  // TRILEX_SENTI_HPP
