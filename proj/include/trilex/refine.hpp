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

#ifndef TRILEX_REFINE_HPP
#define TRILEX_REFINE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilex/clients.hpp"
#include "trilex/corpstats.hpp"
#include "trilex/lexicon.hpp"
#include "trilex/senti.hpp"

namespace trilex::refine {

struct MismatchRecord {
    std::string word;  // normalized corpus token
    std::string language;
    SentimentClass lexicon_class = SentimentClass::Neutral;
    SentimentClass corpus_class = SentimentClass::Neutral;
    double pmi_diff = 0.0;
    size_t support = 0;
};

struct AuditEntry {
    MismatchRecord mismatch;
    std::optional<clients::RefineResponse> response;  // absent on refiner failure
    std::string error;                                // set when response is absent
    std::string source;                               // "mock" or "remote"
    std::string timestamp;                            // ISO-8601 UTC
};

struct RefinementAudit {
    std::vector<AuditEntry> entries;

    size_t successes() const {
        size_t n = 0;
        for (const auto& e : entries)
            if (e.response) ++n;
        return n;
    }
};

/// Corpus-side polarity of a token: absent below the support floor,
/// Neutral inside the dead-zone, otherwise the sign of pmi_diff.
inline std::optional<SentimentClass> corpus_polarity(const corpstats::PmiRecord& record,
                                                     double theta = 0.2,
                                                     size_t min_support = 3) {
    if (theta < 0) throw std::invalid_argument("corpus_polarity: theta must be >= 0");
    if (record.counts.total() < min_support) return std::nullopt;
    if (std::abs(record.pmi_diff) < theta) return SentimentClass::Neutral;
    return record.pmi_diff > 0 ? SentimentClass::Positive : SentimentClass::Negative;
}

/// Compare lexicon sentiment classes against corpus polarity for one
/// language column. Entries whose translation token has a defined corpus
/// polarity different from their class produce a mismatch, ordered by
/// token ascending.
inline std::vector<MismatchRecord>
detect_mismatches(const std::vector<LexiconEntry>& lexicon,
                  const std::vector<corpstats::PmiRecord>& pmi, const std::string& language,
                  double theta = 0.2, size_t min_support = 3,
                  const textnorm::NormalizationConfig& cfg = {}) {
    std::map<std::string, const corpstats::PmiRecord*> by_token;
    for (const auto& r : pmi) by_token[r.token] = &r;
    std::vector<MismatchRecord> out;
    for (const auto& entry : lexicon) {
        auto word = senti::LexiconIndex::word_for(entry, language);
        if (!word) continue;
        std::string token = textnorm::normalize_text(*word, cfg);
        auto it = by_token.find(token);
        if (it == by_token.end()) continue;
        auto polarity = corpus_polarity(*it->second, theta, min_support);
        if (!polarity || *polarity == entry.sentiment) continue;
        out.push_back({token, language, entry.sentiment, *polarity, it->second->pmi_diff,
                       it->second->counts.total()});
    }
    std::sort(out.begin(), out.end(), [](const MismatchRecord& a, const MismatchRecord& b) {
        return a.word < b.word;
    });
    // One record per distinct token; duplicate lexicon rows for the same
    // normalized token collapse to the first.
    out.erase(std::unique(out.begin(), out.end(),
                          [](const MismatchRecord& a, const MismatchRecord& b) {
                              return a.word == b.word && a.lexicon_class == b.lexicon_class;
                          }),
              out.end());
    return out;
}

namespace detail {

inline std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

/// Apply refiner verdicts to the flagged entries. Every lexicon entry
/// whose normalized token for the mismatch language equals a flagged word
/// gets the refiner's class and score; everything else is untouched.
inline std::pair<std::vector<LexiconEntry>, RefinementAudit>
apply_refinements(const std::vector<MismatchRecord>& mismatches, clients::Refiner& refiner,
                  std::vector<LexiconEntry> lexicon,
                  const std::vector<corpstats::PmiRecord>& pmi,
                  const std::vector<corpstats::CooccurrenceRecord>& cooc = {},
                  const std::string& source = "mock",
                  const textnorm::NormalizationConfig& cfg = {},
                  const std::optional<std::string>& fixed_timestamp = std::nullopt) {
    std::map<std::string, const corpstats::PmiRecord*> pmi_by_token;
    for (const auto& r : pmi) pmi_by_token[r.token] = &r;
    std::map<std::string, const corpstats::CooccurrenceRecord*> cooc_by_token;
    for (const auto& r : cooc) cooc_by_token[r.token] = &r;

    RefinementAudit audit;
    std::map<std::string, clients::RefineResponse> verdicts;
    for (const auto& m : mismatches) {
        clients::RefineRequest req;
        req.word = m.word;
        req.language = m.language;
        req.current_class = m.lexicon_class;
        for (const auto& entry : lexicon) {
            auto word = senti::LexiconIndex::word_for(entry, m.language);
            if (word && textnorm::normalize_text(*word, cfg) == m.word) {
                req.current_score = entry.score;
                break;
            }
        }
        auto pit = pmi_by_token.find(m.word);
        if (pit != pmi_by_token.end()) {
            req.pmi_pos = pit->second->pmi_pos;
            req.pmi_neg = pit->second->pmi_neg;
        }
        auto cit = cooc_by_token.find(m.word);
        if (cit != cooc_by_token.end())
            req.cooccurrences.emplace_back(cit->second->co_token, cit->second->association);
        AuditEntry entry;
        entry.mismatch = m;
        entry.source = source;
        entry.timestamp = fixed_timestamp ? *fixed_timestamp : detail::utc_timestamp();
        try {
            auto resp = clients::refine_entry(req, refiner);
            verdicts[m.word] = resp;
            entry.response = resp;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        audit.entries.push_back(std::move(entry));
    }

    for (auto& entry : lexicon) {
        for (const auto& m : mismatches) {
            auto word = senti::LexiconIndex::word_for(entry, m.language);
            if (!word) continue;
            if (textnorm::normalize_text(*word, cfg) != m.word) continue;
            auto vit = verdicts.find(m.word);
            if (vit == verdicts.end()) continue;  // refiner failed; leave unchanged
            entry.sentiment = vit->second.new_class;
            entry.score = vit->second.new_score;
        }
    }
    return {std::move(lexicon), std::move(audit)};
}

inline nlohmann::json to_json(const AuditEntry& e) {
    nlohmann::json j;
    j["word"] = e.mismatch.word;
    j["language"] = e.mismatch.language;
    j["lexicon_class"] = short_label(e.mismatch.lexicon_class);
    j["corpus_class"] = short_label(e.mismatch.corpus_class);
    j["pmi_diff"] = e.mismatch.pmi_diff;
    j["support"] = e.mismatch.support;
    j["source"] = e.source;
    j["timestamp"] = e.timestamp;
    if (e.response) j["response"] = clients::to_json(*e.response);
    else j["error"] = e.error;
    return j;
}

inline void write_audit_jsonl(const RefinementAudit& audit, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("refine: cannot open audit file: " + path);
    for (const auto& e : audit.entries) f << to_json(e).dump() << "\n";
}

/// Flagged-but-unrefined entries, exported for offline review.
inline std::string serialize_mismatch_csv(const std::vector<MismatchRecord>& mismatches) {
    std::string out = "word,language,lexicon_class,corpus_class,pmi_diff,support\n";
    for (const auto& m : mismatches) {
        out += csv::format_row({m.word, m.language, short_label(m.lexicon_class),
                                short_label(m.corpus_class), corpstats::detail::fmt6(m.pmi_diff),
                                std::to_string(m.support)});
    }
    return out;
}

}  // namespace trilex::refine

#endif  // TRILEX_REFINE_HPP
