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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <thread>

#include <httplib.h>

#include "trilex/clients.hpp"
#include "trilex/clients_http.hpp"

using namespace trilex;
using namespace trilex::clients;

namespace {

RetryPolicy fast_retry() {
    RetryPolicy p;
    p.sleep_enabled = false;
    return p;
}

MockTranslator::Dictionary parle_dict() {
    return {{{"fr", "en"}, {{"parle", "speak"}}}, {{"en", "zu"}, {{"speak", "khuluma"}}}};
}

}  // namespace

TEST_CASE("two-step translation pivots through English") {
    MockTranslator mock(parle_dict());
    MissingReport missing;
    auto out = translate_two_step("parle", "fr", "en", "zu", mock, nullptr, fast_retry(), missing);
    REQUIRE(out.has_value());
    CHECK(*out == "khuluma");
    CHECK(mock.calls() == 2);
    CHECK(missing.missing.empty());
}

TEST_CASE("warm cache serves both steps without service calls") {
    MockTranslator mock(parle_dict());
    TranslationCache cache;
    MissingReport missing;
    auto first = translate_two_step("parle", "fr", "en", "zu", mock, &cache, fast_retry(), missing);
    REQUIRE(first.has_value());
    CHECK(mock.calls() == 2);
    auto second = translate_two_step("parle", "fr", "en", "zu", mock, &cache, fast_retry(), missing);
    REQUIRE(second.has_value());
    CHECK(*second == "khuluma");
    CHECK(mock.calls() == 2);  // unchanged
    CHECK(cache.size() == 2);
}

TEST_CASE("hard miss on the second step is recorded per target language") {
    MockTranslator mock(parle_dict());  // no en->sn entries
    MissingReport missing;
    auto out = translate_two_step("parle", "fr", "en", "sn", mock, nullptr, fast_retry(), missing);
    CHECK(!out.has_value());
    CHECK(missing.count("sn") == 1);
    CHECK(missing.count("zu") == 0);
}

TEST_CASE("source equal to pivot skips the first step") {
    MockTranslator mock;
    mock.add("en", "zu", "speak", "khuluma");
    MissingReport missing;
    auto out = translate_two_step("speak", "en", "en", "zu", mock, nullptr, fast_retry(), missing);
    REQUIRE(out.has_value());
    CHECK(*out == "khuluma");
    CHECK(mock.calls() == 1);
}

TEST_CASE("identity translator echoes its input") {
    IdentityTranslator id;
    MissingReport missing;
    auto out = translate_two_step("muhle", "fr", "en", "zu", id, nullptr, fast_retry(), missing);
    REQUIRE(out.has_value());
    CHECK(*out == "muhle");
}

TEST_CASE("retry exhaustion counts as missing after exactly `attempts` calls") {
    MockTranslator mock(parle_dict());
    mock.fail_all(true);
    MissingReport missing;
    auto out = translate_two_step("parle", "fr", "en", "zu", mock, nullptr, fast_retry(), missing);
    CHECK(!out.has_value());
    CHECK(missing.count("zu") == 1);
    CHECK(mock.calls() == 3);  // default policy: three attempts on the first step
}

TEST_CASE("retry policy returns the first success") {
    int failures_left = 2;
    RetryPolicy p = fast_retry();
    int result = p.run([&] {
        if (failures_left-- > 0) throw TransportError("flaky");
        return 42;
    });
    CHECK(result == 42);
}

TEST_CASE("translation cache persists across instances as JSONL") {
    auto path = std::filesystem::temp_directory_path() / "trilex_cache_test.jsonl";
    std::filesystem::remove(path);
    {
        TranslationCache cache(path.string());
        cache.insert("parle", "fr", "en", "speak");
        cache.insert("speak", "en", "zu", "khuluma");
    }
    TranslationCache reloaded(path.string());
    CHECK(reloaded.size() == 2);
    auto hit = reloaded.lookup("parle", "fr", "en");
    REQUIRE(hit.has_value());
    CHECK(*hit == "speak");
    // A torn final line must not poison the rest of the file.
    {
        std::ofstream f(path, std::ios::app);
        f << "{\"text\": \"tru";
    }
    TranslationCache torn(path.string());
    CHECK(torn.size() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("cache keys distinguish direction and language pair") {
    TranslationCache cache;
    cache.insert("a", "fr", "en", "x");
    CHECK(!cache.lookup("a", "en", "fr").has_value());
    CHECK(!cache.lookup("a", "fr", "zu").has_value());
    CHECK(cache.lookup("a", "fr", "en").has_value());
}

TEST_CASE("mock annotator scores with the lexicon and scales to [-1, 1]") {
    std::vector<LexiconEntry> lexicon(1);
    lexicon[0].ciluba = "cilema";
    lexicon[0].french = "beau";
    lexicon[0].score = 8.0;
    lexicon[0].sentiment = SentimentClass::Positive;
    lexicon[0].nature = "Adjectif";
    lexicon[0].translations["zu"] = "muhle";
    MockAnnotator annot(senti::LexiconIndex(lexicon, "zu"));
    auto [cls, score] = annotate_sentence("muhle", annot);
    CHECK(cls == SentimentClass::Positive);
    CHECK(score == doctest::Approx(8.0 / 9.0));
    CHECK_THROWS_AS(annotate_sentence("", annot), std::invalid_argument);
}

TEST_CASE("mock refiner applies the corpus-polarity rule") {
    MockRefiner refiner(0.2);
    RefineRequest req;
    req.word = "bhala";
    req.language = "zu";

    SUBCASE("negative diff") {
        req.pmi_pos = 0.3;
        req.pmi_neg = 1.5;  // diff -1.2
        auto resp = refine_entry(req, refiner);
        CHECK(resp.new_class == SentimentClass::Negative);
        CHECK(resp.new_score == doctest::Approx(-2.0));
    }
    SUBCASE("dead-zone is Neutral with zero score") {
        req.pmi_pos = 0.1;
        req.pmi_neg = 0.0;
        auto resp = refine_entry(req, refiner);
        CHECK(resp.new_class == SentimentClass::Neutral);
        CHECK(resp.new_score == 0.0);
    }
    SUBCASE("positive diff clamps through ceil") {
        req.pmi_pos = 4.7;
        req.pmi_neg = 0.0;
        auto resp = refine_entry(req, refiner);
        CHECK(resp.new_class == SentimentClass::Positive);
        CHECK(resp.new_score == doctest::Approx(5.0));
    }
}

TEST_CASE("refiner responses are always sign-consistent and in range") {
    MockRefiner refiner;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pmi(-12.0, 12.0);
    for (int i = 0; i < 500; ++i) {
        RefineRequest req;
        req.word = "w";
        req.language = "zu";
        req.pmi_pos = pmi(rng);
        req.pmi_neg = pmi(rng);
        auto resp = refiner.refine(req);
        CHECK(resp.sign_consistent());
        CHECK(resp.new_score >= -9.0);
        CHECK(resp.new_score <= 9.0);
    }
}

TEST_CASE("refine_entry truncates contexts to five") {
    struct Capture : Refiner {
        size_t seen = 0;
        RefineResponse refine(const RefineRequest& req) override {
            seen = req.contexts.size();
            return {};
        }
    } capture;
    RefineRequest req;
    req.contexts.assign(9, "ctx");
    refine_entry(req, capture);
    CHECK(capture.seen == 5);
}

TEST_CASE("bounded_map keeps results in input order and bounds concurrency") {
    MockTranslator mock;
    for (int i = 0; i < 40; ++i)
        mock.add("fr", "en", "w" + std::to_string(i), "t" + std::to_string(i));
    mock.set_delay(std::chrono::milliseconds(2));
    std::vector<std::function<std::string()>> tasks;
    for (int i = 0; i < 40; ++i) {
        tasks.push_back([&mock, i] {
            auto r = mock.translate({"w" + std::to_string(i), "fr", "en"});
            return r.value_or("");
        });
    }
    auto out = bounded_map<std::string>(tasks, 4);
    REQUIRE(out.size() == 40);
    for (int i = 0; i < 40; ++i) CHECK(out[i] == "t" + std::to_string(i));
    CHECK(mock.max_inflight() <= 4);
    CHECK(mock.max_inflight() >= 2);  // delay forces real overlap
}

TEST_CASE("bounded_map propagates task exceptions") {
    std::vector<std::function<int()>> tasks;
    for (int i = 0; i < 8; ++i)
        tasks.push_back([i]() -> int {
            if (i == 5) throw TransportError("boom");
            return i;
        });
    CHECK_THROWS_AS(bounded_map<int>(tasks, 3), TransportError);
}

TEST_CASE("refine response JSON round-trip and validation") {
    RefineResponse resp;
    resp.new_class = SentimentClass::Negative;
    resp.new_score = -2.0;
    resp.rationale = "because";
    auto j = to_json(resp);
    auto back = refine_response_from_json(j, j.dump());
    CHECK(back.new_class == resp.new_class);
    CHECK(back.new_score == resp.new_score);
    CHECK(back.rationale == resp.rationale);

    CHECK_THROWS_AS(refine_response_from_json(nlohmann::json{{"new_class", "Pos"}}, "{}"),
                    ProtocolError);
    // Sign inconsistency is rejected even when fields parse.
    nlohmann::json bad{{"new_class", "Pos"}, {"new_score", -1.0}};
    CHECK_THROWS_AS(refine_response_from_json(bad, bad.dump()), ProtocolError);
    nlohmann::json range{{"new_class", "Pos"}, {"new_score", 11.0}};
    CHECK_THROWS_AS(refine_response_from_json(range, range.dump()), ProtocolError);
}

TEST_CASE("HTTP clients speak the wire format end to end") {
    httplib::Server server;
    server.Post("/translate", [](const httplib::Request& req, httplib::Response& res) {
        auto j = nlohmann::json::parse(req.body);
        if (j["text"] == "parle" && j["source"] == "fr" && j["target"] == "en") {
            res.set_content(nlohmann::json{{"translation", "speak"}}.dump(), "application/json");
        } else {
            res.set_content(nlohmann::json{{"translation", nullptr}}.dump(), "application/json");
        }
    });
    server.Post("/refine", [](const httplib::Request& req, httplib::Response& res) {
        auto j = nlohmann::json::parse(req.body);
        MockRefiner refiner;
        RefineRequest r;
        r.word = j["word"];
        r.pmi_pos = j["pmi_pos"];
        r.pmi_neg = j["pmi_neg"];
        res.set_content(to_json(refiner.refine(r)).dump(), "application/json");
    });
    server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("not json", "text/plain");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    std::string base = "http://127.0.0.1:" + std::to_string(port);

    HttpTranslator translator(base);
    auto hit = translator.translate({"parle", "fr", "en"});
    REQUIRE(hit.has_value());
    CHECK(*hit == "speak");
    CHECK(!translator.translate({"inconnu", "fr", "en"}).has_value());

    HttpRefiner refiner(base);
    RefineRequest req;
    req.word = "bhala";
    req.language = "zu";
    req.pmi_pos = 0.3;
    req.pmi_neg = 1.5;
    auto resp = refiner.refine(req);
    CHECK(resp.new_class == SentimentClass::Negative);
    CHECK(resp.new_score == doctest::Approx(-2.0));

    HttpTranslator broken(base, "/broken");
    CHECK_THROWS_AS(broken.translate({"x", "fr", "en"}), ProtocolError);

    server.stop();
    worker.join();

    // Dead server surfaces as a transport error, which the retry layer owns.
    HttpTranslator dead("http://127.0.0.1:1");
    CHECK_THROWS_AS(dead.translate({"x", "fr", "en"}), TransportError);
}
