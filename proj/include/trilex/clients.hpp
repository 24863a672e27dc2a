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

#ifndef TRILEX_CLIENTS_HPP
#define TRILEX_CLIENTS_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trilex/lexicon.hpp"
#include "trilex/senti.hpp"

namespace trilex::clients {

struct TranslationRequest {
    std::string text;
    std::string source;
    std::string target;
};

/// Per-language count of entries with no obtainable translation after
/// retry exhaustion.
struct MissingReport {
    std::map<std::string, size_t> missing;
    void record(const std::string& lang) { ++missing[lang]; }
    size_t count(const std::string& lang) const {
        auto it = missing.find(lang);
        return it == missing.end() ? 0 : it->second;
    }
};

struct RefineRequest {
    std::string word;
    std::string language;
    double current_score = 0.0;
    SentimentClass current_class = SentimentClass::Neutral;
    double pmi_pos = 0.0;
    double pmi_neg = 0.0;
    std::vector<std::pair<std::string, double>> cooccurrences;
    std::vector<std::string> contexts;  // truncated to 5

    void truncate_contexts() {
        if (contexts.size() > 5) contexts.resize(5);
    }
};

struct RefineResponse {
    SentimentClass new_class = SentimentClass::Neutral;
    double new_score = 0.0;
    std::string rationale;

    bool sign_consistent() const {
        switch (new_class) {
            case SentimentClass::Positive: return new_score > 0;
            case SentimentClass::Negative: return new_score < 0;
            case SentimentClass::Neutral: return new_score == 0;
        }
        return false;
    }
};

/// Raised when a remote call fails at the transport level; retried by policy.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a remote response cannot be interpreted; carries the payload.
struct ProtocolError : std::runtime_error {
    std::string payload;
    ProtocolError(const std::string& what, std::string raw)
        : std::runtime_error(what + " (payload: " + raw + ")"), payload(std::move(raw)) {}
};

class Translator {
public:
    virtual ~Translator() = default;
    /// Absent means the service has no translation (a hard miss, not an error).
    virtual std::optional<std::string> translate(const TranslationRequest& req) = 0;
};

class Annotator {
public:
    virtual ~Annotator() = default;
    virtual std::pair<SentimentClass, double> annotate(const std::string& text) = 0;
};

class Refiner {
public:
    virtual ~Refiner() = default;
    virtual RefineResponse refine(const RefineRequest& req) = 0;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds backoff_base{250};
    bool sleep_enabled = true;  // disabled in tests for determinism

    template <typename F>
    auto run(F&& f) -> decltype(f()) {
        std::exception_ptr last;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            try {
                return f();
            } catch (const TransportError&) {
                last = std::current_exception();
                if (attempt + 1 < attempts && sleep_enabled)
                    std::this_thread::sleep_for(backoff_base * (1 << attempt));
            }
        }
        std::rethrow_exception(last);
    }
};

/// Append-only JSONL translation cache keyed by (text, source, target).
/// Thread-safe; an empty path keeps the cache in memory only.
class TranslationCache {
public:
    TranslationCache() = default;

    explicit TranslationCache(std::string path) : path_(std::move(path)) {
        if (path_.empty()) return;
        std::ifstream f(path_);
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;  // tolerate a torn final line
            entries_[key(j.value("text", ""), j.value("source", ""), j.value("target", ""))] =
                j.value("translation", "");
        }
    }

    std::optional<std::string> lookup(const std::string& text, const std::string& source,
                                      const std::string& target) const {
        std::lock_guard lock(mu_);
        auto it = entries_.find(key(text, source, target));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const std::string& text, const std::string& source, const std::string& target,
                const std::string& translation) {
        std::lock_guard lock(mu_);
        auto [it, fresh] = entries_.emplace(key(text, source, target), translation);
        if (!fresh || path_.empty()) return;
        nlohmann::json j{{"text", text}, {"source", source}, {"target", target},
                         {"translation", translation}};
        std::ofstream f(path_, std::ios::app);
        f << j.dump() << "\n";
    }

    size_t size() const {
        std::lock_guard lock(mu_);
        return entries_.size();
    }

private:
    static std::string key(const std::string& text, const std::string& source,
                           const std::string& target) {
        return source + "\x1f" + target + "\x1f" + text;
    }

    std::string path_;
    mutable std::mutex mu_;
    std::map<std::string, std::string> entries_;
};

/// Source -> pivot -> target translation with per-step cache lookup and
/// retry. Exhausted retries and hard misses both count as missing.
inline std::optional<std::string>
translate_two_step(const std::string& text, const std::string& source, const std::string& pivot,
                   const std::string& target, Translator& client, TranslationCache* cache,
                   RetryPolicy retry, MissingReport& missing) {
    auto step = [&](const std::string& t, const std::string& src,
                    const std::string& tgt) -> std::optional<std::string> {
        if (src == tgt) return t;
        if (cache) {
            if (auto hit = cache->lookup(t, src, tgt)) return hit;
        }
        std::optional<std::string> result;
        try {
            result = retry.run([&] { return client.translate({t, src, tgt}); });
        } catch (const TransportError&) {
            return std::nullopt;
        }
        if (result && cache) cache->insert(t, src, tgt, *result);
        return result;
    };
    auto pivoted = step(text, source, pivot);
    if (!pivoted) {
        missing.record(target);
        return std::nullopt;
    }
    auto final = step(*pivoted, pivot, target);
    if (!final) {
        missing.record(target);
        return std::nullopt;
    }
    return final;
}

/// Dictionary-backed mock translator. Tracks call counts and the maximum
/// number of concurrent in-flight calls for concurrency assertions.
class MockTranslator : public Translator {
public:
    using Dictionary = std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>;

    explicit MockTranslator(Dictionary dict = {}) : dict_(std::move(dict)) {}

    void add(const std::string& source, const std::string& target, const std::string& text,
             const std::string& translation) {
        dict_[{source, target}][text] = translation;
    }

    std::optional<std::string> translate(const TranslationRequest& req) override {
        Inflight guard(*this);
        ++calls_;
        if (fail_all_) throw TransportError("mock translator: forced failure");
        auto pair_it = dict_.find({req.source, req.target});
        if (pair_it == dict_.end()) return std::nullopt;
        auto it = pair_it->second.find(req.text);
        if (it == pair_it->second.end()) return std::nullopt;
        return it->second;
    }

    void fail_all(bool v) { fail_all_ = v; }
    size_t calls() const { return calls_; }
    size_t max_inflight() const { return max_inflight_; }
    void set_delay(std::chrono::milliseconds d) { delay_ = d; }

private:
    struct Inflight {
        MockTranslator& m;
        explicit Inflight(MockTranslator& mt) : m(mt) {
            size_t now = ++m.inflight_;
            size_t seen = m.max_inflight_.load();
            while (now > seen && !m.max_inflight_.compare_exchange_weak(seen, now)) {}
            if (m.delay_.count() > 0) std::this_thread::sleep_for(m.delay_);
        }
        ~Inflight() { --m.inflight_; }
    };

    Dictionary dict_;
    std::atomic<size_t> calls_{0};
    std::atomic<size_t> inflight_{0};
    std::atomic<size_t> max_inflight_{0};
    std::chrono::milliseconds delay_{0};
    bool fail_all_ = false;
};

/// Echoes the input text; useful for pipeline identity checks.
class IdentityTranslator : public Translator {
public:
    std::optional<std::string> translate(const TranslationRequest& req) override {
        return req.text;
    }
};

/// Built-in annotator: lexicon scorer mapped into [-1, 1] by dividing by 9.
class MockAnnotator : public Annotator {
public:
    MockAnnotator(senti::LexiconIndex index, textnorm::NormalizationConfig cfg = {},
                  double tau_pos = 0.5, double tau_neg = -0.5)
        : index_(std::move(index)), cfg_(std::move(cfg)), tau_pos_(tau_pos), tau_neg_(tau_neg) {}

    std::pair<SentimentClass, double> annotate(const std::string& text) override {
        double raw = senti::score_sentence(text, index_, cfg_);
        return {senti::label_from_score(raw, tau_pos_, tau_neg_), raw / 9.0};
    }

private:
    senti::LexiconIndex index_;
    textnorm::NormalizationConfig cfg_;
    double tau_pos_, tau_neg_;
};

/// Deterministic refiner: the corpus polarity wins. new_class follows the
/// sign of pmi_pos - pmi_neg (Neutral inside the dead-zone), new_score is
/// sign * clamp(ceil(|diff|), 1, 9).
class MockRefiner : public Refiner {
public:
    explicit MockRefiner(double theta = 0.2) : theta_(theta) {}

    RefineResponse refine(const RefineRequest& req) override {
        double diff = req.pmi_pos - req.pmi_neg;
        RefineResponse resp;
        if (std::abs(diff) < theta_) {
            resp.new_class = SentimentClass::Neutral;
            resp.new_score = 0.0;
            resp.rationale = "corpus polarity inside dead-zone (|pmi_diff| < " +
                             std::to_string(theta_) + "); reassigned Neutral";
        } else {
            double mag = std::min(9.0, std::max(1.0, std::ceil(std::abs(diff))));
            bool positive = diff > 0;
            resp.new_class = positive ? SentimentClass::Positive : SentimentClass::Negative;
            resp.new_score = positive ? mag : -mag;
            resp.rationale = std::string("corpus polarity ") +
                             (positive ? "positive" : "negative") +
                             " (pmi_diff = " + std::to_string(diff) + ")";
        }
        return resp;
    }

private:
    double theta_;
};

inline std::pair<SentimentClass, double> annotate_sentence(const std::string& text,
                                                           Annotator& client) {
    if (text.empty()) throw std::invalid_argument("annotate_sentence: empty text");
    return client.annotate(text);
}

inline RefineResponse refine_entry(const RefineRequest& req, Refiner& client) {
    RefineRequest r = req;
    r.truncate_contexts();
    return client.refine(r);
}

/// Runs tasks with at most `max_inflight` executing concurrently; results
/// come back in input order.
template <typename R>
std::vector<R> bounded_map(const std::vector<std::function<R()>>& tasks, unsigned max_inflight) {
    if (max_inflight <= 1 || tasks.size() <= 1) {
        std::vector<R> out;
        out.reserve(tasks.size());
        for (const auto& t : tasks) out.push_back(t());
        return out;
    }
    std::vector<R> out(tasks.size());
    std::atomic<size_t> next{0};
    unsigned workers = std::min<unsigned>(max_inflight, static_cast<unsigned>(tasks.size()));
    std::vector<std::thread> threads;
    std::mutex err_mu;
    std::exception_ptr err;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    out[i] = tasks[i]();
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// JSON wire formats, shared by the HTTP clients and anyone serving the
// protocol. Field names mirror the request/response structures.

inline nlohmann::json to_json(const TranslationRequest& r) {
    return {{"text", r.text}, {"source", r.source}, {"target", r.target}};
}

inline nlohmann::json to_json(const RefineRequest& r) {
    nlohmann::json cooc = nlohmann::json::array();
    for (const auto& [tok, assoc] : r.cooccurrences)
        cooc.push_back({{"co_token", tok}, {"association", assoc}});
    return {{"word", r.word},
            {"language", r.language},
            {"current_score", r.current_score},
            {"current_class", short_label(r.current_class)},
            {"pmi_pos", r.pmi_pos},
            {"pmi_neg", r.pmi_neg},
            {"cooccurrences", cooc},
            {"contexts", r.contexts}};
}

inline nlohmann::json to_json(const RefineResponse& r) {
    return {{"new_class", short_label(r.new_class)},
            {"new_score", r.new_score},
            {"rationale", r.rationale}};
}

inline RefineResponse refine_response_from_json(const nlohmann::json& j, const std::string& raw) {
    RefineResponse resp;
    try {
        auto cls = parse_sentiment(j.at("new_class").get<std::string>());
        if (!cls) throw std::runtime_error("bad class");
        resp.new_class = *cls;
        resp.new_score = j.at("new_score").get<double>();
        resp.rationale = j.value("rationale", "");
    } catch (const std::exception& e) {
        throw ProtocolError(std::string("refine: malformed response: ") + e.what(), raw);
    }
    if (!resp.sign_consistent() || resp.new_score < -9.0 || resp.new_score > 9.0)
        throw ProtocolError("refine: response violates score/class invariant", raw);
    return resp;
}

}  // namespace trilex::clients

#endif  // TRILEX_CLIENTS_HPP
