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

// trilex: corpus-driven sentiment lexicon pipeline.
//
// Subcommands: clean, translate, normalize, stats-pmi, stats-cooc, merge,
// refine, score, explain, split, eval, stack, report-distribution, pipeline.
// Exit codes: 0 success, 1 input/config error, 2 external-service failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trilex/clients.hpp"
#include "trilex/clients_http.hpp"
#include "trilex/config.hpp"
#include "trilex/corpstats.hpp"
#include "trilex/corpus.hpp"
#include "trilex/evalstack.hpp"
#include "trilex/lexicon.hpp"
#include "trilex/refine.hpp"
#include "trilex/senti.hpp"
#include "trilex/textnorm.hpp"

namespace fs = std::filesystem;
using namespace trilex;

namespace {

void write_file(const std::string& path, const std::string& data) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << data;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

textnorm::Vocabulary load_vocab_dir(const std::string& dir) {
    textnorm::Vocabulary vocab;
    if (dir.empty() || !fs::exists(dir)) return vocab;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::string lang = entry.path().stem().string();
        std::ifstream f(entry.path());
        std::string line;
        while (std::getline(f, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
            if (!line.empty()) vocab[lang].insert(line);
        }
    }
    return vocab;
}

struct Ctx {
    config::PipelineConfig cfg;
    std::string config_path;
};

std::vector<LexiconEntry> load_lexicon_or_throw(const std::string& path) {
    if (path.empty()) throw std::runtime_error("no lexicon path given (--lexicon or config)");
    auto [entries, warnings] = read_lexicon_file(path);
    for (const auto& w : warnings)
        std::cerr << "warning: lexicon row " << w.row << ": " << w.message << "\n";
    return entries;
}

std::vector<LabeledSentence> load_corpus_or_throw(const std::string& path) {
    if (path.empty()) throw std::runtime_error("no corpus path given (--corpus or config)");
    return read_corpus_file(path);
}

int cmd_clean(const Ctx& ctx, const std::string& out_path, const std::string& report_path) {
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    auto [cleaned, report] = clean_lexicon(entries);
    write_lexicon(cleaned, out_path);
    std::string summary = "input_rows," + std::to_string(report.input_rows) + "\n" +
                          "unique_rows," + std::to_string(cleaned.size()) + "\n" +
                          "duplicates_removed," + std::to_string(report.duplicates_removed) +
                          "\n" + "whitespace_fixes," + std::to_string(report.whitespace_fixes) +
                          "\n";
    if (!report_path.empty()) write_file(report_path, summary);
    std::cout << summary;
    return 0;
}

int cmd_translate(const Ctx& ctx, const std::string& out_path, const std::string& missing_path) {
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    std::unique_ptr<clients::Translator> client;
    if (ctx.cfg.offline || ctx.cfg.endpoint_translate.empty()) {
        client = std::make_unique<clients::IdentityTranslator>();
    } else {
        client = std::make_unique<clients::HttpTranslator>(ctx.cfg.endpoint_translate);
    }
    clients::TranslationCache cache(ctx.cfg.cache_path);
    clients::RetryPolicy retry;
    clients::MissingReport missing;
    for (auto& e : entries) {
        for (const auto& lang : ctx.cfg.target_langs) {
            if (e.translation(lang)) continue;
            auto t = clients::translate_two_step(e.french, ctx.cfg.source_lang,
                                                 ctx.cfg.pivot_lang, lang, *client, &cache,
                                                 retry, missing);
            if (t) e.translations[lang] = *t;
        }
    }
    write_lexicon(entries, out_path);
    std::string report = "language,missing\n";
    for (const auto& lang : ctx.cfg.target_langs)
        report += lang + "," + std::to_string(missing.count(lang)) + "\n";
    if (!missing_path.empty()) write_file(missing_path, report);
    std::cout << report;
    return 0;
}

int cmd_normalize(const Ctx& ctx, const std::string& out_path, const std::string& report_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    textnorm::NormalizationConfig ncfg;
    auto vocab = load_vocab_dir(ctx.cfg.vocab_dir);
    for (auto& s : corpus) s.text = textnorm::normalize_text(s.text, ncfg);
    if (!vocab.empty()) {
        std::vector<std::pair<std::string, std::string>> tokens;
        std::vector<std::pair<size_t, size_t>> origin;  // sentence idx, token idx
        std::vector<std::vector<std::string>> token_lists(corpus.size());
        for (size_t i = 0; i < corpus.size(); ++i) {
            token_lists[i] = textnorm::tokenize(corpus[i].text);
            for (size_t t = 0; t < token_lists[i].size(); ++t) {
                if (!vocab.count(corpus[i].lang)) continue;
                tokens.emplace_back(corpus[i].lang, token_lists[i][t]);
                origin.emplace_back(i, t);
            }
        }
        auto [records, report] =
            textnorm::correct_tokens(tokens, vocab, ctx.cfg.similarity_threshold);
        for (size_t r = 0; r < records.size(); ++r) {
            if (records[r].status == textnorm::CorrectionStatus::AutoCorrected)
                token_lists[origin[r].first][origin[r].second] = *records[r].corrected;
        }
        for (size_t i = 0; i < corpus.size(); ++i) {
            std::string joined;
            for (size_t t = 0; t < token_lists[i].size(); ++t) {
                if (t) joined += " ";
                joined += token_lists[i][t];
            }
            corpus[i].text = joined;
        }
        std::string rep = textnorm::serialize_correction_report(report);
        if (!report_path.empty()) write_file(report_path, rep);
        std::cout << rep;
    }
    std::string out;
    for (const auto& s : corpus) out += sentence_to_json(s).dump() + "\n";
    write_file(out_path, out);
    return 0;
}

int cmd_stats_pmi(const Ctx& ctx, const std::string& out_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    auto freqs = corpstats::count_class_frequencies(corpus, ctx.cfg.workers);
    auto ranked = corpstats::rank_by_pmi_diff(corpstats::compute_pmi(freqs, ctx.cfg.pmi_alpha));
    write_file(out_path, corpstats::serialize_pmi_csv(ranked));
    return 0;
}

int cmd_stats_cooc(const Ctx& ctx, const std::string& out_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    auto records =
        corpstats::cooccurrence_pairs(corpus, ctx.cfg.workers, ctx.cfg.association_alpha);
    write_file(out_path, corpstats::serialize_cooccurrence_csv(records));
    return 0;
}

int cmd_merge(const Ctx& ctx, const std::string& out_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    auto freqs = corpstats::count_class_frequencies(corpus, ctx.cfg.workers);
    auto pmi = corpstats::compute_pmi(freqs, ctx.cfg.pmi_alpha);
    auto cooc = corpstats::cooccurrence_pairs(corpus, ctx.cfg.workers, ctx.cfg.association_alpha);
    auto merged =
        corpstats::merge_lexicon(pmi, cooc, ctx.cfg.association_strength, ctx.cfg.theta);
    write_file(out_path, corpstats::serialize_merged_csv(merged));
    return 0;
}

int cmd_refine(const Ctx& ctx, const std::string& out_path, const std::string& audit_path,
               const std::string& mismatch_path) {
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    auto freqs = corpstats::count_class_frequencies(corpus, ctx.cfg.workers);
    auto pmi = corpstats::compute_pmi(freqs, ctx.cfg.pmi_alpha);
    auto cooc = corpstats::cooccurrence_pairs(corpus, ctx.cfg.workers, ctx.cfg.association_alpha);
    auto mismatches =
        refine::detect_mismatches(entries, pmi, ctx.cfg.corpus_lang, ctx.cfg.theta,
                                  static_cast<size_t>(ctx.cfg.min_support));
    std::unique_ptr<clients::Refiner> refiner;
    std::string source = "mock";
    if (ctx.cfg.offline || ctx.cfg.endpoint_refine.empty()) {
        refiner = std::make_unique<clients::MockRefiner>(ctx.cfg.theta);
    } else {
        refiner = std::make_unique<clients::HttpRefiner>(ctx.cfg.endpoint_refine);
        source = "remote";
    }
    std::optional<std::string> fixed_ts;
    if (ctx.cfg.offline) fixed_ts = "1970-01-01T00:00:00Z";  // reproducible runs
    auto [updated, audit] = refine::apply_refinements(mismatches, *refiner, entries, pmi, cooc,
                                                      source, {}, fixed_ts);
    write_lexicon(updated, out_path);
    if (!audit_path.empty()) refine::write_audit_jsonl(audit, audit_path);
    if (!mismatch_path.empty())
        write_file(mismatch_path, refine::serialize_mismatch_csv(mismatches));
    std::cout << "mismatches," << mismatches.size() << "\n"
              << "refined," << audit.successes() << "\n";
    return 0;
}

int cmd_score(const Ctx& ctx, const std::string& text, const std::string& out_path) {
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    senti::LexiconIndex index(entries, ctx.cfg.corpus_lang);
    if (!text.empty()) {
        double s = senti::score_sentence(text, index);
        auto label = senti::label_from_score(s, ctx.cfg.tau_pos, ctx.cfg.tau_neg);
        nlohmann::json j{{"text", text}, {"score", s}, {"label", short_label(label)}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    std::string out;
    for (auto& s : corpus) {
        double sc = senti::score_sentence(s.text, index);
        s.score = sc;
        s.label = senti::label_from_score(sc, ctx.cfg.tau_pos, ctx.cfg.tau_neg);
        out += sentence_to_json(s).dump() + "\n";
    }
    if (out_path.empty()) std::cout << out;
    else write_file(out_path, out);
    return 0;
}

int cmd_explain(const Ctx& ctx, const std::string& text, const std::string& out_path) {
    if (text.empty()) throw std::runtime_error("explain: --text is required");
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    auto contributions = senti::explain_tokens(text, ctx.cfg.corpus_lang, entries);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : contributions) j.push_back({{"token", c.token}, {"weight", c.weight}});
    std::string out = j.dump(2) + "\n";
    if (out_path.empty()) std::cout << out;
    else write_file(out_path, out);
    return 0;
}

int cmd_split(const Ctx& ctx, double ratio, const std::string& train_path,
              const std::string& test_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    for (const auto& s : corpus)
        if (!s.label) throw std::runtime_error("split: unlabeled sentence " + s.id);
    auto [train, test] = evalstack::split_dataset(
        corpus, ratio, ctx.cfg.seed, [](const LabeledSentence& s) { return *s.label; });
    write_corpus_file(train, train_path);
    write_corpus_file(test, test_path);
    std::cout << "train," << train.size() << "\n" << "test," << test.size() << "\n";
    return 0;
}

int cmd_eval(const Ctx& ctx, const std::string& probs_path, const std::string& model_path,
             const std::string& out_path) {
    (void)ctx;
    auto rows = evalstack::read_prob_csv_file(probs_path);
    std::vector<SentimentClass> truths, preds;
    for (const auto& r : rows) truths.push_back(r.label);
    if (!model_path.empty()) {
        auto model = evalstack::model_from_json(nlohmann::json::parse(read_file(model_path)));
        preds = evalstack::predict_stacker(model, rows).first;
    } else {
        if (rows.empty() || rows[0].model_probs.size() != 1)
            throw std::runtime_error("eval: without --model the CSV must carry exactly one model");
        for (const auto& r : rows) {
            size_t best = 0;
            for (size_t c = 1; c < 3; ++c)
                if (r.model_probs[0][c] > r.model_probs[0][best]) best = c;
            preds.push_back(evalstack::kClassOrder[best]);
        }
    }
    auto [cm, metrics] = evalstack::confusion_and_metrics(truths, preds);
    std::string out = evalstack::serialize_metrics(cm, metrics);
    if (!out_path.empty()) write_file(out_path, out);
    std::cout << out;
    return 0;
}

int cmd_stack(const Ctx& ctx, const std::string& probs_path, const std::string& model_path) {
    (void)ctx;
    auto rows = evalstack::read_prob_csv_file(probs_path);
    auto model = evalstack::train_stacker(rows);
    write_file(model_path, evalstack::model_to_json(model).dump(2) + "\n");
    auto [labels, probs] = evalstack::predict_stacker(model, rows);
    std::vector<SentimentClass> truths;
    for (const auto& r : rows) truths.push_back(r.label);
    auto [cm, metrics] = evalstack::confusion_and_metrics(truths, labels);
    std::cout << "iterations," << model.loss_trace.size() << "\n"
              << "final_loss," << (model.loss_trace.empty() ? 0.0 : model.loss_trace.back())
              << "\n"
              << "train_accuracy," << metrics.accuracy << "\n";
    return 0;
}

int cmd_report_distribution(const Ctx& ctx, const std::string& out_path) {
    auto corpus = load_corpus_or_throw(ctx.cfg.corpus_path);
    auto dist = senti::distribution_report(corpus);
    std::string out = senti::serialize_distribution_csv(dist);
    if (!out_path.empty()) write_file(out_path, out);
    std::cout << out;
    return 0;
}

int cmd_pipeline(Ctx ctx) {
    if (ctx.cfg.output_dir.empty()) ctx.cfg.output_dir = ".";
    fs::create_directories(ctx.cfg.output_dir);
    auto out = [&](const std::string& name) {
        return (fs::path(ctx.cfg.output_dir) / name).string();
    };
    // clean
    auto entries = load_lexicon_or_throw(ctx.cfg.lexicon_path);
    auto [cleaned, clean_report] = clean_lexicon(entries);
    write_lexicon(cleaned, out("lexicon_clean.csv"));
    // translate (offline: identity mock)
    Ctx tctx = ctx;
    tctx.cfg.lexicon_path = out("lexicon_clean.csv");
    cmd_translate(tctx, out("lexicon_expanded.csv"), out("missing_translations.csv"));
    // normalize corpus
    Ctx nctx = ctx;
    cmd_normalize(nctx, out("corpus_normalized.jsonl"), out("corrections.csv"));
    // stats
    Ctx sctx = ctx;
    sctx.cfg.corpus_path = out("corpus_normalized.jsonl");
    cmd_stats_pmi(sctx, out("pmi.csv"));
    cmd_stats_cooc(sctx, out("cooccurrence.csv"));
    cmd_merge(sctx, out("merged_lexicon.csv"));
    // refine
    Ctx rctx = sctx;
    rctx.cfg.lexicon_path = out("lexicon_expanded.csv");
    cmd_refine(rctx, out("lexicon_refined.csv"), out("refinement_audit.jsonl"),
               out("mismatches.csv"));
    std::cout << "pipeline complete: " << ctx.cfg.output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trilex: corpus-driven multilingual sentiment lexicon pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    Ctx ctx;
    std::string config_path;
    app.add_option("--config", config_path, "TOML config file");
    // Global overrides (flags win over config).
    std::string lexicon_path, corpus_path, vocab_dir, cache_path, output_dir, lang;
    std::optional<double> theta, tau_pos, tau_neg, similarity, strength, pmi_alpha, assoc_alpha;
    std::optional<int64_t> min_support, seed, workers;
    bool offline = false;
    app.add_option("--lexicon", lexicon_path, "Lexicon CSV path");
    app.add_option("--corpus", corpus_path, "Corpus JSONL path");
    app.add_option("--vocab-dir", vocab_dir, "Directory of per-language vocabulary files");
    app.add_option("--cache", cache_path, "Translation cache JSONL path");
    app.add_option("--output-dir", output_dir, "Pipeline output directory");
    app.add_option("--lang", lang, "Corpus/scoring language code");
    app.add_option("--theta", theta, "PMI dead-zone for Neutral");
    app.add_option("--tau-pos", tau_pos, "Positive score threshold");
    app.add_option("--tau-neg", tau_neg, "Negative score threshold");
    app.add_option("--similarity-threshold", similarity, "Fuzzy-correction threshold");
    app.add_option("--association-strength", strength, "Co-occurrence merge threshold");
    app.add_option("--pmi-alpha", pmi_alpha, "PMI smoothing");
    app.add_option("--association-alpha", assoc_alpha, "Association smoothing");
    app.add_option("--min-support", min_support, "Corpus polarity support floor");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "Worker count for corpus statistics");
    app.add_flag("--offline", offline, "Use built-in mocks; never open a connection");

    std::string out_path, report_path, text, probs_path, model_path, train_path = "train.jsonl",
                test_path = "test.jsonl", audit_path, mismatch_path, missing_path;
    double ratio = 0.8;

    auto* c_clean = app.add_subcommand("clean", "Deduplicate and whitespace-normalize a lexicon");
    c_clean->add_option("--out", out_path, "Cleaned lexicon CSV")->required();
    c_clean->add_option("--report", report_path, "Cleaning report CSV");

    auto* c_translate = app.add_subcommand("translate", "Two-step translation expansion");
    c_translate->add_option("--out", out_path, "Expanded lexicon CSV")->required();
    c_translate->add_option("--missing-report", missing_path, "Missing-translations CSV");

    auto* c_normalize = app.add_subcommand("normalize", "Normalize corpus text, fuzzy-correct");
    c_normalize->add_option("--out", out_path, "Normalized corpus JSONL")->required();
    c_normalize->add_option("--report", report_path, "Correction report CSV");

    auto* c_pmi = app.add_subcommand("stats-pmi", "Per-token PMI records");
    c_pmi->add_option("--out", out_path, "PMI CSV")->required();

    auto* c_cooc = app.add_subcommand("stats-cooc", "Co-occurrence records");
    c_cooc->add_option("--out", out_path, "Co-occurrence CSV")->required();

    auto* c_merge = app.add_subcommand("merge", "Merge PMI and co-occurrence evidence");
    c_merge->add_option("--out", out_path, "Merged lexicon CSV")->required();

    auto* c_refine = app.add_subcommand("refine", "Flag and reassign conflicting polarity");
    c_refine->add_option("--out", out_path, "Refined lexicon CSV")->required();
    c_refine->add_option("--audit", audit_path, "Audit JSONL");
    c_refine->add_option("--mismatches", mismatch_path, "Mismatch CSV for offline review");

    auto* c_score = app.add_subcommand("score", "Lexicon-based sentence scoring");
    c_score->add_option("--text", text, "Single sentence to score");
    c_score->add_option("--out", out_path, "Scored corpus JSONL (batch mode)");

    auto* c_explain = app.add_subcommand("explain", "Leave-one-out token contributions");
    c_explain->add_option("--text", text, "Sentence to explain")->required();
    c_explain->add_option("--out", out_path, "Explanation JSON");

    auto* c_split = app.add_subcommand("split", "Seeded stratified train/test split");
    c_split->add_option("--ratio", ratio, "Training fraction");
    c_split->add_option("--train", train_path, "Training JSONL");
    c_split->add_option("--test", test_path, "Test JSONL");

    auto* c_eval = app.add_subcommand("eval", "Metrics over probability exports");
    c_eval->add_option("--probs", probs_path, "Probability CSV")->required();
    c_eval->add_option("--model", model_path, "Stacker model JSON");
    c_eval->add_option("--out", out_path, "Metrics report");

    auto* c_stack = app.add_subcommand("stack", "Train the stacking meta-learner");
    c_stack->add_option("--probs", probs_path, "Probability CSV")->required();
    c_stack->add_option("--model-out", model_path, "Model JSON")->required();

    auto* c_dist = app.add_subcommand("report-distribution", "Class distribution report");
    c_dist->add_option("--out", out_path, "Distribution CSV");

    auto* c_pipeline =
        app.add_subcommand("pipeline", "clean -> translate -> normalize -> stats -> merge -> refine");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty())
            ctx.cfg = config::PipelineConfig::from_settings(config::Settings::load(config_path));
        if (!lexicon_path.empty()) ctx.cfg.lexicon_path = lexicon_path;
        if (!corpus_path.empty()) ctx.cfg.corpus_path = corpus_path;
        if (!vocab_dir.empty()) ctx.cfg.vocab_dir = vocab_dir;
        if (!cache_path.empty()) ctx.cfg.cache_path = cache_path;
        if (!output_dir.empty()) ctx.cfg.output_dir = output_dir;
        if (!lang.empty()) ctx.cfg.corpus_lang = lang;
        if (theta) ctx.cfg.theta = *theta;
        if (tau_pos) ctx.cfg.tau_pos = *tau_pos;
        if (tau_neg) ctx.cfg.tau_neg = *tau_neg;
        if (similarity) ctx.cfg.similarity_threshold = *similarity;
        if (strength) ctx.cfg.association_strength = *strength;
        if (pmi_alpha) ctx.cfg.pmi_alpha = *pmi_alpha;
        if (assoc_alpha) ctx.cfg.association_alpha = *assoc_alpha;
        if (min_support) ctx.cfg.min_support = *min_support;
        if (seed) ctx.cfg.seed = static_cast<uint64_t>(*seed);
        if (workers) ctx.cfg.workers = static_cast<unsigned>(*workers);
        if (offline) ctx.cfg.offline = true;
        ctx.cfg.validate();

        if (c_clean->parsed()) return cmd_clean(ctx, out_path, report_path);
        if (c_translate->parsed()) return cmd_translate(ctx, out_path, missing_path);
        if (c_normalize->parsed()) return cmd_normalize(ctx, out_path, report_path);
        if (c_pmi->parsed()) return cmd_stats_pmi(ctx, out_path);
        if (c_cooc->parsed()) return cmd_stats_cooc(ctx, out_path);
        if (c_merge->parsed()) return cmd_merge(ctx, out_path);
        if (c_refine->parsed()) return cmd_refine(ctx, out_path, audit_path, mismatch_path);
        if (c_score->parsed()) return cmd_score(ctx, text, out_path);
        if (c_explain->parsed()) return cmd_explain(ctx, text, out_path);
        if (c_split->parsed()) return cmd_split(ctx, ratio, train_path, test_path);
        if (c_eval->parsed()) return cmd_eval(ctx, probs_path, model_path, out_path);
        if (c_stack->parsed()) return cmd_stack(ctx, probs_path, model_path);
        if (c_dist->parsed()) return cmd_report_distribution(ctx, out_path);
        if (c_pipeline->parsed()) return cmd_pipeline(ctx);
        std::cerr << app.help();
        return 1;
    } catch (const clients::TransportError& e) {
        std::cerr << "error: external service failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
