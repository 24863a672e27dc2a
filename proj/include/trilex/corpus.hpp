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

#ifndef TRILEX_CORPUS_HPP
#define TRILEX_CORPUS_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilex/lexicon.hpp"

namespace trilex {

/// One corpus sentence. Corpus files are JSONL, one object per line:
/// {"id": ..., "text": ..., "lang": ..., "label": ?, "score": ?}
struct LabeledSentence {
    std::string id;
    std::string text;
    std::string lang;
    std::optional<SentimentClass> label;
    std::optional<double> score;

    bool operator==(const LabeledSentence&) const = default;
};

inline LabeledSentence sentence_from_json(const nlohmann::json& j) {
    LabeledSentence s;
    s.id = j.at("id").get<std::string>();
    s.text = j.at("text").get<std::string>();
    s.lang = j.at("lang").get<std::string>();
    if (j.contains("label") && !j["label"].is_null()) {
        auto c = parse_sentiment(j["label"].get<std::string>());
        if (!c) throw std::runtime_error("corpus: bad label '" + j["label"].get<std::string>() +
                                         "' for sentence " + s.id);
        s.label = *c;
    }
    if (j.contains("score") && !j["score"].is_null()) s.score = j["score"].get<double>();
    return s;
}

inline nlohmann::json sentence_to_json(const LabeledSentence& s) {
    nlohmann::json j;
    j["id"] = s.id;
    j["text"] = s.text;
    j["lang"] = s.lang;
    if (s.label) j["label"] = short_label(*s.label);
    if (s.score) j["score"] = *s.score;
    return j;
}

inline std::vector<LabeledSentence> parse_corpus_jsonl(const std::string& data) {
    std::vector<LabeledSentence> out;
    std::istringstream in(data);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(sentence_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("corpus: line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<LabeledSentence> read_corpus_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("corpus: cannot open: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_corpus_jsonl(data);
}

inline void write_corpus_file(const std::vector<LabeledSentence>& corpus, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("corpus: cannot open for writing: " + path);
    for (const auto& s : corpus) f << sentence_to_json(s).dump() << "\n";
}

}  // namespace trilex

#endif  // TRILEX_CORPUS_HPP
