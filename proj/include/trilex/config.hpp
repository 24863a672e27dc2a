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

#ifndef TRILEX_CONFIG_HPP
#define TRILEX_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trilex::config {

/// Flat TOML subset: [section] headers, key = value lines, # comments,
/// quoted strings, numbers, booleans. Keys are stored as "section.key".
class Settings {
public:
    Settings() = default;

    static Settings parse(const std::string& text) {
        Settings s;
        std::string section;
        size_t lineno = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t eol = text.find('\n', pos);
            std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
            pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
            ++lineno;
            line = trim(strip_comment(line));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw std::runtime_error("config line " + std::to_string(lineno) +
                                             ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (!value.empty() && value.front() == '"') {
                if (value.size() < 2 || value.back() != '"')
                    throw std::runtime_error("config line " + std::to_string(lineno) +
                                             ": unterminated string");
                value = value.substr(1, value.size() - 2);
            }
            s.values_[section.empty() ? key : section + "." + key] = value;
        }
        return s;
    }

    static Settings load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("config: cannot open: " + path);
        std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        return parse(data);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("config: key " + key + " is not a number: " + it->second);
        }
    }

    int64_t get_int(const std::string& key, int64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoll(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("config: key " + key + " is not an integer: " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw std::runtime_error("config: key " + key + " is not a boolean: " + it->second);
    }

private:
    static std::string strip_comment(const std::string& line) {
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            else if (line[i] == '#' && !in_str) return line.substr(0, i);
        }
        return line;
    }

    static std::string trim(const std::string& s) {
        size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
};

struct PipelineConfig {
    // Paths
    std::string lexicon_path;
    std::string corpus_path;
    std::string vocab_dir;
    std::string cache_path;
    std::string output_dir = ".";
    // Languages
    std::string source_lang = "fr";
    std::string pivot_lang = "en";
    std::vector<std::string> target_langs = {"en", "zu", "af", "nso", "xh", "sn"};
    std::string corpus_lang = "zu";
    // Thresholds
    double similarity_threshold = 0.90;
    double theta = 0.2;
    int64_t min_support = 3;
    double tau_pos = 0.5;
    double tau_neg = -0.5;
    double association_strength = 0.5;
    // Smoothing
    double pmi_alpha = 0.5;
    double association_alpha = 1e-6;
    // Clients
    std::string endpoint_translate;
    std::string endpoint_annotate;
    std::string endpoint_refine;
    bool offline = false;
    // Misc
    uint64_t seed = 42;
    unsigned workers = 1;

    void validate() const {
        if (similarity_threshold < 0 || similarity_threshold > 1)
            throw std::runtime_error("config: similarity threshold must be in [0,1]");
        if (theta < 0) throw std::runtime_error("config: theta must be >= 0");
        if (min_support < 0) throw std::runtime_error("config: min_support must be >= 0");
        if (tau_neg >= tau_pos) throw std::runtime_error("config: tau_neg must be < tau_pos");
        if (pmi_alpha <= 0 || association_alpha <= 0)
            throw std::runtime_error("config: smoothing alphas must be > 0");
        if (!offline && corpus_path.empty() && lexicon_path.empty())
            return;  // subcommand-specific requirements are checked at use
    }

    static PipelineConfig from_settings(const Settings& s) {
        PipelineConfig c;
        c.lexicon_path = s.get_string("paths.lexicon", c.lexicon_path);
        c.corpus_path = s.get_string("paths.corpus", c.corpus_path);
        c.vocab_dir = s.get_string("paths.vocab_dir", c.vocab_dir);
        c.cache_path = s.get_string("paths.cache", c.cache_path);
        c.output_dir = s.get_string("paths.output_dir", c.output_dir);
        c.source_lang = s.get_string("languages.source", c.source_lang);
        c.pivot_lang = s.get_string("languages.pivot", c.pivot_lang);
        c.corpus_lang = s.get_string("languages.corpus", c.corpus_lang);
        if (s.has("languages.targets")) {
            c.target_langs.clear();
            std::string raw = s.get_string("languages.targets");
            std::string cur;
            for (char ch : raw + ",") {
                if (ch == ',') {
                    // strip brackets, quotes, spaces
                    std::string t;
                    for (char x : cur)
                        if (x != '[' && x != ']' && x != '"' && x != ' ') t.push_back(x);
                    if (!t.empty()) c.target_langs.push_back(t);
                    cur.clear();
                } else {
                    cur.push_back(ch);
                }
            }
        }
        c.similarity_threshold = s.get_double("thresholds.similarity", c.similarity_threshold);
        c.theta = s.get_double("thresholds.theta", c.theta);
        c.min_support = s.get_int("thresholds.min_support", c.min_support);
        c.tau_pos = s.get_double("thresholds.tau_pos", c.tau_pos);
        c.tau_neg = s.get_double("thresholds.tau_neg", c.tau_neg);
        c.association_strength =
            s.get_double("thresholds.association_strength", c.association_strength);
        c.pmi_alpha = s.get_double("smoothing.pmi_alpha", c.pmi_alpha);
        c.association_alpha = s.get_double("smoothing.association_alpha", c.association_alpha);
        c.endpoint_translate = s.get_string("clients.translate", c.endpoint_translate);
        c.endpoint_annotate = s.get_string("clients.annotate", c.endpoint_annotate);
        c.endpoint_refine = s.get_string("clients.refine", c.endpoint_refine);
        c.offline = s.get_bool("clients.offline", c.offline);
        c.seed = static_cast<uint64_t>(s.get_int("run.seed", static_cast<int64_t>(c.seed)));
        c.workers = static_cast<unsigned>(s.get_int("run.workers", c.workers));
        return c;
    }
};

}  // namespace trilex::config

#endif  // TRILEX_CONFIG_HPP
