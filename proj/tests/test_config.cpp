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

#include "trilex/config.hpp"

using namespace trilex::config;

TEST_CASE("settings parse sections, comments, and quoted strings") {
    auto s = Settings::parse(
        "# top comment\n"
        "[paths]\n"
        "lexicon = \"lex.csv\"  # with a # inside a comment\n"
        "corpus = \"has # hash.jsonl\"\n"
        "[thresholds]\n"
        "theta = 0.3\n"
        "min_support = 5\n"
        "[clients]\n"
        "offline = true\n");
    CHECK(s.get_string("paths.lexicon") == "lex.csv");
    CHECK(s.get_string("paths.corpus") == "has # hash.jsonl");
    CHECK(s.get_double("thresholds.theta", 0.2) == doctest::Approx(0.3));
    CHECK(s.get_int("thresholds.min_support", 3) == 5);
    CHECK(s.get_bool("clients.offline", false));
    CHECK(s.get_string("paths.missing", "dflt") == "dflt");
}

TEST_CASE("settings reject malformed lines") {
    CHECK_THROWS(Settings::parse("[unterminated\n"));
    CHECK_THROWS(Settings::parse("no equals sign\n"));
    CHECK_THROWS(Settings::parse("key = \"open string\n"));
    auto s = Settings::parse("[x]\nn = abc\nb = yes\n");
    CHECK_THROWS(s.get_double("x.n", 0.0));
    CHECK_THROWS(s.get_bool("x.b", false));
}

TEST_CASE("pipeline config carries documented defaults") {
    PipelineConfig c;
    CHECK(c.similarity_threshold == doctest::Approx(0.90));
    CHECK(c.theta == doctest::Approx(0.2));
    CHECK(c.min_support == 3);
    CHECK(c.tau_pos == doctest::Approx(0.5));
    CHECK(c.tau_neg == doctest::Approx(-0.5));
    CHECK(c.association_strength == doctest::Approx(0.5));
    CHECK(c.pmi_alpha == doctest::Approx(0.5));
    CHECK(c.association_alpha == doctest::Approx(1e-6));
    CHECK(c.source_lang == "fr");
    CHECK(c.pivot_lang == "en");
    CHECK(c.corpus_lang == "zu");
    CHECK(c.target_langs == std::vector<std::string>{"en", "zu", "af", "nso", "xh", "sn"});
    CHECK(c.seed == 42);
    CHECK(c.workers == 1);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("from_settings maps sections onto the config") {
    auto s = Settings::parse(
        "[paths]\n"
        "lexicon = \"l.csv\"\n"
        "[languages]\n"
        "targets = [\"zu\", \"xh\"]\n"
        "corpus = \"xh\"\n"
        "[thresholds]\n"
        "similarity = 0.85\n"
        "[run]\n"
        "seed = 7\n"
        "workers = 4\n");
    auto c = PipelineConfig::from_settings(s);
    CHECK(c.lexicon_path == "l.csv");
    CHECK(c.target_langs == std::vector<std::string>{"zu", "xh"});
    CHECK(c.corpus_lang == "xh");
    CHECK(c.similarity_threshold == doctest::Approx(0.85));
    CHECK(c.seed == 7);
    CHECK(c.workers == 4);
}

TEST_CASE("validate rejects inconsistent thresholds") {
    PipelineConfig c;
    c.similarity_threshold = 1.5;
    CHECK_THROWS(c.validate());
    c = {};
    c.theta = -0.1;
    CHECK_THROWS(c.validate());
    c = {};
    c.tau_neg = 0.5;
    CHECK_THROWS(c.validate());
    c = {};
    c.pmi_alpha = 0.0;
    CHECK_THROWS(c.validate());
}
