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

#ifndef TRILEX_CORPSTATS_HPP
#define TRILEX_CORPSTATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "trilex/corpus.hpp"
#include "trilex/textnorm.hpp"

namespace trilex::corpstats {

struct ClassCounts {
    size_t pos = 0;
    size_t neg = 0;
    size_t neu = 0;

    size_t total() const { return pos + neg + neu; }
    void add(SentimentClass c, size_t n = 1) {
        switch (c) {
            case SentimentClass::Positive: pos += n; break;
            case SentimentClass::Negative: neg += n; break;
            case SentimentClass::Neutral: neu += n; break;
        }
    }
    ClassCounts& operator+=(const ClassCounts& o) {
        pos += o.pos;
        neg += o.neg;
        neu += o.neu;
        return *this;
    }
    bool operator==(const ClassCounts&) const = default;
};

struct PmiRecord {
    std::string token;
    ClassCounts counts;
    double pmi_pos = 0.0;
    double pmi_neg = 0.0;
    double pmi_diff = 0.0;
};

struct CooccurrenceRecord {
    std::string token;
    std::string co_token;
    ClassCounts counts;
    size_t total = 0;
    double pos_ratio = 0.0;
    double neg_ratio = 0.0;
    SentimentClass dominant = SentimentClass::Neutral;
    double association = 0.0;
};

using FrequencyMap = std::map<std::string, ClassCounts>;

namespace detail {

template <typename Local, typename PerSentence>
Local sharded_count(const std::vector<LabeledSentence>& corpus, unsigned workers,
                    PerSentence per_sentence) {
    if (workers <= 1 || corpus.size() < 2) {
        Local local;
        for (const auto& s : corpus) per_sentence(local, s);
        return local;
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(corpus.size()));
    std::vector<Local> locals(workers);
    std::vector<std::thread> threads;
    size_t chunk = (corpus.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            size_t begin = w * chunk;
            size_t end = std::min(corpus.size(), begin + chunk);
            for (size_t i = begin; i < end; ++i) per_sentence(locals[w], corpus[i]);
        });
    }
    for (auto& t : threads) t.join();
    Local merged;
    for (auto& local : locals) {
        for (auto& [key, counts] : local) merged[key] += counts;
    }
    return merged;
}

inline std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace detail

/// Token occurrence counts per sentiment class. Every occurrence counts,
/// not per-sentence presence. Sentences without a label are skipped.
inline FrequencyMap count_class_frequencies(const std::vector<LabeledSentence>& corpus,
                                            unsigned workers = 1) {
    return detail::sharded_count<FrequencyMap>(
        corpus, workers, [](FrequencyMap& local, const LabeledSentence& s) {
            if (!s.label) return;
            for (const auto& tok : textnorm::tokenize(s.text)) local[tok].add(*s.label);
        });
}

/// Additively smoothed PMI toward the positive and negative classes:
///   PMI(w,c) = log2( ((n(w,c)+a) / Z) / (P(w) P(c)) )
/// with Z = N + a*V*C, P(w) = (n(w)+a*C)/Z, P(c) = (n(c)+a*V)/Z,
/// N = total token occurrences, V = vocabulary size, C = 3 classes.
inline std::vector<PmiRecord> compute_pmi(const FrequencyMap& freqs, double alpha = 0.5) {
    if (alpha <= 0.0) throw std::invalid_argument("compute_pmi: alpha must be > 0");
    const double C = 3.0;
    const double V = static_cast<double>(freqs.size());
    double N = 0.0;
    ClassCounts class_totals;
    for (const auto& [tok, counts] : freqs) {
        N += static_cast<double>(counts.total());
        class_totals += counts;
    }
    const double Z = N + alpha * V * C;
    auto pmi = [&](size_t joint, size_t word_total, size_t class_total) {
        double p_joint = (static_cast<double>(joint) + alpha) / Z;
        double p_word = (static_cast<double>(word_total) + alpha * C) / Z;
        double p_class = (static_cast<double>(class_total) + alpha * V) / Z;
        return std::log2(p_joint / (p_word * p_class));
    };
    std::vector<PmiRecord> out;
    out.reserve(freqs.size());
    for (const auto& [tok, counts] : freqs) {
        PmiRecord r;
        r.token = tok;
        r.counts = counts;
        r.pmi_pos = pmi(counts.pos, counts.total(), class_totals.pos);
        r.pmi_neg = pmi(counts.neg, counts.total(), class_totals.neg);
        r.pmi_diff = r.pmi_pos - r.pmi_neg;
        out.push_back(std::move(r));
    }
    return out;
}

/// Sort by pmi_diff descending, ties broken by token ascending.
inline std::vector<PmiRecord> rank_by_pmi_diff(std::vector<PmiRecord> records) {
    std::sort(records.begin(), records.end(), [](const PmiRecord& a, const PmiRecord& b) {
        if (a.pmi_diff != b.pmi_diff) return a.pmi_diff > b.pmi_diff;
        return a.token < b.token;
    });
    return records;
}

/// Log-odds association between positive and negative pair counts.
inline double association_score(size_t c_pos, size_t c_neg, double alpha = 1e-6) {
    if (alpha <= 0.0) throw std::invalid_argument("association_score: alpha must be > 0");
    return std::log2((static_cast<double>(c_pos) + alpha) / (static_cast<double>(c_neg) + alpha));
}

/// Sentence-window co-occurrence. A pair is a distinct unordered token pair
/// within one sentence, counted once per sentence toward the sentence's
/// label. Each token gets one record for its strongest partner (maximal
/// pair total; tie-break lexicographically smallest partner).
inline std::vector<CooccurrenceRecord>
cooccurrence_pairs(const std::vector<LabeledSentence>& corpus, unsigned workers = 1,
                   double assoc_alpha = 1e-6) {
    using PairMap = std::map<std::pair<std::string, std::string>, ClassCounts>;
    PairMap pairs = detail::sharded_count<PairMap>(
        corpus, workers, [](PairMap& local, const LabeledSentence& s) {
            if (!s.label) return;
            auto tokens = textnorm::tokenize(s.text);
            std::sort(tokens.begin(), tokens.end());
            tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
            for (size_t i = 0; i < tokens.size(); ++i) {
                for (size_t j = i + 1; j < tokens.size(); ++j) {
                    local[{tokens[i], tokens[j]}].add(*s.label);
                }
            }
        });

    // Strongest partner per token.
    struct Best {
        std::string partner;
        ClassCounts counts;
        bool set = false;
    };
    std::map<std::string, Best> best;
    auto consider = [&](const std::string& token, const std::string& partner,
                        const ClassCounts& counts) {
        Best& b = best[token];
        size_t total = counts.total();
        if (!b.set || total > b.counts.total() ||
            (total == b.counts.total() && partner < b.partner)) {
            b.partner = partner;
            b.counts = counts;
            b.set = true;
        }
    };
    for (const auto& [pair, counts] : pairs) {
        consider(pair.first, pair.second, counts);
        consider(pair.second, pair.first, counts);
    }

    std::vector<CooccurrenceRecord> out;
    out.reserve(best.size());
    for (const auto& [token, b] : best) {
        CooccurrenceRecord r;
        r.token = token;
        r.co_token = b.partner;
        r.counts = b.counts;
        r.total = b.counts.total();
        r.pos_ratio = static_cast<double>(b.counts.pos) / static_cast<double>(r.total);
        r.neg_ratio = static_cast<double>(b.counts.neg) / static_cast<double>(r.total);
        r.dominant = r.pos_ratio > r.neg_ratio   ? SentimentClass::Positive
                     : r.pos_ratio < r.neg_ratio ? SentimentClass::Negative
                                                 : SentimentClass::Neutral;
        r.association = association_score(b.counts.pos, b.counts.neg, assoc_alpha);
        out.push_back(std::move(r));
    }
    return out;
}

struct MergedRow {
    std::string token;
    ClassCounts counts;
    double pmi_pos = 0.0;
    double pmi_neg = 0.0;
    double pmi_diff = 0.0;
    std::optional<std::string> co_token;
    std::optional<double> association;
    SentimentClass final_label = SentimentClass::Neutral;
};

/// Merge the PMI lexicon with co-occurrence evidence. Co-occurrence
/// dominates when |association| clears the strength threshold; otherwise
/// the label follows the sign of pmi_diff with a Neutral dead-zone.
inline std::vector<MergedRow> merge_lexicon(const std::vector<PmiRecord>& pmi,
                                            const std::vector<CooccurrenceRecord>& cooc,
                                            double strength = 0.5, double theta = 0.2) {
    std::map<std::string, const CooccurrenceRecord*> by_token;
    for (const auto& r : cooc) by_token[r.token] = &r;
    std::vector<MergedRow> out;
    out.reserve(pmi.size());
    for (const auto& p : pmi) {
        MergedRow row;
        row.token = p.token;
        row.counts = p.counts;
        row.pmi_pos = p.pmi_pos;
        row.pmi_neg = p.pmi_neg;
        row.pmi_diff = p.pmi_diff;
        auto it = by_token.find(p.token);
        if (it != by_token.end()) {
            row.co_token = it->second->co_token;
            row.association = it->second->association;
        }
        if (row.association && std::abs(*row.association) >= strength) {
            row.final_label = it->second->dominant;
        } else if (std::abs(p.pmi_diff) < theta) {
            row.final_label = SentimentClass::Neutral;
        } else {
            row.final_label =
                p.pmi_diff > 0 ? SentimentClass::Positive : SentimentClass::Negative;
        }
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end(),
              [](const MergedRow& a, const MergedRow& b) { return a.token < b.token; });
    return out;
}

inline std::string serialize_pmi_csv(const std::vector<PmiRecord>& records) {
    std::string out = "token,count_pos,count_neg,count_neu,pmi_pos,pmi_neg,pmi_diff\n";
    for (const auto& r : records) {
        out += csv::format_row({r.token, std::to_string(r.counts.pos),
                                std::to_string(r.counts.neg), std::to_string(r.counts.neu),
                                detail::fmt6(r.pmi_pos), detail::fmt6(r.pmi_neg),
                                detail::fmt6(r.pmi_diff)});
    }
    return out;
}

/// Co-occurrence report CSV, reals to 6 decimals.
inline std::string serialize_cooccurrence_csv(const std::vector<CooccurrenceRecord>& records) {
    std::string out =
        "Tokens,Co-occur,Negative,Neutral,Positive,Total,"
        "Positive Ratio,Negative Ratio,Dominant,Association\n";
    for (const auto& r : records) {
        out += csv::format_row({r.token, r.co_token, std::to_string(r.counts.neg),
                                std::to_string(r.counts.neu), std::to_string(r.counts.pos),
                                std::to_string(r.total), detail::fmt6(r.pos_ratio),
                                detail::fmt6(r.neg_ratio), short_label(r.dominant),
                                detail::fmt6(r.association)});
    }
    return out;
}

inline std::string serialize_merged_csv(const std::vector<MergedRow>& rows) {
    std::string out =
        "token,count_pos,count_neg,count_neu,pmi_pos,pmi_neg,pmi_diff,"
        "co_token,association,final_label\n";
    for (const auto& r : rows) {
        out += csv::format_row(
            {r.token, std::to_string(r.counts.pos), std::to_string(r.counts.neg),
             std::to_string(r.counts.neu), detail::fmt6(r.pmi_pos), detail::fmt6(r.pmi_neg),
             detail::fmt6(r.pmi_diff), r.co_token.value_or(""),
             r.association ? detail::fmt6(*r.association) : "", short_label(r.final_label)});
    }
    return out;
}

}  // namespace trilex::corpstats

#endif  // TRILEX_CORPSTATS_HPP
