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

#ifndef TRILEX_EVALSTACK_HPP
#define TRILEX_EVALSTACK_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilex/csv.hpp"
#include "trilex/lexicon.hpp"

namespace trilex::evalstack {

/// Fixed class order everywhere: Negative, Neutral, Positive.
inline constexpr std::array<SentimentClass, 3> kClassOrder = {
    SentimentClass::Negative, SentimentClass::Neutral, SentimentClass::Positive};

inline size_t class_index(SentimentClass c) {
    switch (c) {
        case SentimentClass::Negative: return 0;
        case SentimentClass::Neutral: return 1;
        case SentimentClass::Positive: return 2;
    }
    return 0;
}

/// Seeded stratified split: per class, shuffle with a class-keyed
/// deterministic RNG and take round(ratio * n) for training.
template <typename Sample, typename LabelOf>
std::pair<std::vector<Sample>, std::vector<Sample>>
split_dataset(const std::vector<Sample>& samples, double ratio, uint64_t seed,
              LabelOf label_of) {
    if (ratio <= 0.0 || ratio >= 1.0)
        throw std::invalid_argument("split_dataset: ratio must be in (0,1)");
    std::map<size_t, std::vector<size_t>> by_class;
    for (size_t i = 0; i < samples.size(); ++i)
        by_class[class_index(label_of(samples[i]))].push_back(i);
    if (by_class.empty()) throw std::invalid_argument("split_dataset: no samples");
    std::vector<bool> in_train(samples.size(), false);
    for (auto& [cls, indices] : by_class) {
        if (indices.empty()) throw std::invalid_argument("split_dataset: empty class");
        std::mt19937_64 rng(seed * 1000003ULL + cls);
        std::shuffle(indices.begin(), indices.end(), rng);
        size_t take = static_cast<size_t>(
            std::llround(ratio * static_cast<double>(indices.size())));
        for (size_t k = 0; k < take && k < indices.size(); ++k) in_train[indices[k]] = true;
    }
    std::vector<Sample> train, test;
    for (size_t i = 0; i < samples.size(); ++i)
        (in_train[i] ? train : test).push_back(samples[i]);
    return {train, test};
}

struct ConfusionMatrix {
    // rows = true class, cols = predicted, in kClassOrder.
    std::array<std::array<size_t, 3>, 3> counts{};

    size_t total() const {
        size_t n = 0;
        for (const auto& row : counts)
            for (size_t c : row) n += c;
        return n;
    }
};

struct MetricsReport {
    double accuracy = 0.0;
    std::array<double, 3> precision{};
    std::array<double, 3> recall{};
    std::array<double, 3> f1{};
    double precision_macro = 0.0;
    double recall_macro = 0.0;
    double f1_macro = 0.0;
    double f1_micro = 0.0;  // equals accuracy for single-label classification
    std::vector<SentimentClass> classes;  // classes included in the macro average
};

/// Confusion matrix and precision/recall/F1 in macro and micro flavors.
/// `classes` fixes the macro-average universe; a class absent from both
/// truths and predictions contributes F1 = 0.
inline std::pair<ConfusionMatrix, MetricsReport>
confusion_and_metrics(const std::vector<SentimentClass>& truths,
                      const std::vector<SentimentClass>& predictions,
                      std::vector<SentimentClass> classes = {kClassOrder.begin(), kClassOrder.end()}) {
    if (truths.size() != predictions.size())
        throw std::invalid_argument("confusion_and_metrics: length mismatch");
    if (truths.empty()) throw std::invalid_argument("confusion_and_metrics: empty input");
    ConfusionMatrix cm;
    size_t correct = 0;
    for (size_t i = 0; i < truths.size(); ++i) {
        ++cm.counts[class_index(truths[i])][class_index(predictions[i])];
        if (truths[i] == predictions[i]) ++correct;
    }
    MetricsReport m;
    m.classes = classes;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truths.size());
    for (size_t c = 0; c < 3; ++c) {
        size_t tp = cm.counts[c][c];
        size_t pred = 0, truth = 0;
        for (size_t r = 0; r < 3; ++r) {
            pred += cm.counts[r][c];
            truth += cm.counts[c][r];
        }
        m.precision[c] = pred ? static_cast<double>(tp) / static_cast<double>(pred) : 0.0;
        m.recall[c] = truth ? static_cast<double>(tp) / static_cast<double>(truth) : 0.0;
        double pr = m.precision[c] + m.recall[c];
        m.f1[c] = pr > 0 ? 2.0 * m.precision[c] * m.recall[c] / pr : 0.0;
    }
    double psum = 0, rsum = 0, fsum = 0;
    for (SentimentClass c : classes) {
        size_t i = class_index(c);
        psum += m.precision[i];
        rsum += m.recall[i];
        fsum += m.f1[i];
    }
    double k = static_cast<double>(classes.size());
    m.precision_macro = psum / k;
    m.recall_macro = rsum / k;
    m.f1_macro = fsum / k;
    m.f1_micro = m.accuracy;  // single-label: pooled TP/(TP+FP) == accuracy
    return {cm, m};
}

/// One sample's concatenated base-model probability vectors plus label.
struct ProbRow {
    std::string id;
    SentimentClass label = SentimentClass::Neutral;
    std::vector<std::array<double, 3>> model_probs;  // k vectors in class order
};

struct StackerHyperparams {
    double learning_rate = 0.1;
    double l2_lambda = 1e-4;
    size_t max_iters = 5000;
    double tolerance = 1e-7;
};

struct StackerModel {
    size_t k = 0;  // number of base models
    // (k*3 + 1) x 3 weights; last row is the bias. Columns in class order.
    std::vector<std::array<double, 3>> weights;
    StackerHyperparams hyperparams;
    std::vector<double> loss_trace;

    size_t feature_width() const { return k * 3; }
};

namespace detail {

inline std::vector<double> features_of(const ProbRow& row) {
    std::vector<double> x;
    x.reserve(row.model_probs.size() * 3);
    for (const auto& p : row.model_probs)
        for (double v : p) x.push_back(v);
    return x;
}

inline std::array<double, 3> softmax(const std::array<double, 3>& z) {
    double mx = std::max({z[0], z[1], z[2]});
    std::array<double, 3> e{};
    double sum = 0;
    for (size_t c = 0; c < 3; ++c) {
        e[c] = std::exp(z[c] - mx);
        sum += e[c];
    }
    for (double& v : e) v /= sum;
    return e;
}

inline std::array<double, 3> scores(const StackerModel& model, const std::vector<double>& x) {
    std::array<double, 3> z{};
    for (size_t c = 0; c < 3; ++c) {
        double s = model.weights.back()[c];  // bias
        for (size_t j = 0; j < x.size(); ++j) s += model.weights[j][c] * x[j];
        z[c] = s;
    }
    return z;
}

/// L2-regularized multinomial cross-entropy and its gradient (bias
/// unregularized).
inline double loss_and_gradient(const StackerModel& model,
                                const std::vector<std::vector<double>>& xs,
                                const std::vector<size_t>& ys,
                                std::vector<std::array<double, 3>>* grad) {
    const size_t n = xs.size();
    const size_t rows = model.weights.size();
    if (grad) grad->assign(rows, {0, 0, 0});
    double loss = 0;
    for (size_t i = 0; i < n; ++i) {
        auto p = softmax(scores(model, xs[i]));
        loss += -std::log(std::max(p[ys[i]], 1e-300));
        if (grad) {
            for (size_t c = 0; c < 3; ++c) {
                double d = p[c] - (c == ys[i] ? 1.0 : 0.0);
                for (size_t j = 0; j < xs[i].size(); ++j) (*grad)[j][c] += d * xs[i][j];
                (*grad)[rows - 1][c] += d;
            }
        }
    }
    loss /= static_cast<double>(n);
    if (grad) {
        for (auto& row : *grad)
            for (double& v : row) v /= static_cast<double>(n);
    }
    double l2 = 0;
    for (size_t j = 0; j + 1 < rows; ++j) {
        for (size_t c = 0; c < 3; ++c) {
            l2 += model.weights[j][c] * model.weights[j][c];
            if (grad) (*grad)[j][c] += 2.0 * model.hyperparams.l2_lambda * model.weights[j][c];
        }
    }
    return loss + model.hyperparams.l2_lambda * l2;
}

}  // namespace detail

/// Full-batch gradient descent on the stacking meta-learner. Zero-initial
/// weights; a step that would increase the loss is rejected and the
/// learning rate halved.
inline StackerModel train_stacker(const std::vector<ProbRow>& rows,
                                  StackerHyperparams hp = {}) {
    if (rows.empty()) throw std::invalid_argument("train_stacker: no rows");
    const size_t k = rows[0].model_probs.size();
    if (k < 1) throw std::invalid_argument("train_stacker: need at least one base model");
    std::set<size_t> label_set;
    std::vector<std::vector<double>> xs;
    std::vector<size_t> ys;
    xs.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.model_probs.size() != k)
            throw std::invalid_argument("train_stacker: inconsistent model count for " + r.id);
        xs.push_back(detail::features_of(r));
        ys.push_back(class_index(r.label));
        label_set.insert(class_index(r.label));
    }
    if (label_set.size() < 2)
        throw std::invalid_argument("train_stacker: degenerate input (single class)");

    StackerModel model;
    model.k = k;
    model.hyperparams = hp;
    model.weights.assign(k * 3 + 1, {0, 0, 0});

    double lr = hp.learning_rate;
    std::vector<std::array<double, 3>> grad;
    double loss = detail::loss_and_gradient(model, xs, ys, &grad);
    model.loss_trace.push_back(loss);
    for (size_t iter = 0; iter < hp.max_iters; ++iter) {
        auto backup = model.weights;
        for (size_t j = 0; j < model.weights.size(); ++j)
            for (size_t c = 0; c < 3; ++c) model.weights[j][c] -= lr * grad[j][c];
        std::vector<std::array<double, 3>> next_grad;
        double next_loss = detail::loss_and_gradient(model, xs, ys, &next_grad);
        if (next_loss > loss) {
            model.weights = std::move(backup);
            lr *= 0.5;
            if (lr < 1e-15) break;
            continue;
        }
        double delta = loss - next_loss;
        loss = next_loss;
        grad = std::move(next_grad);
        model.loss_trace.push_back(loss);
        if (delta < hp.tolerance) break;
    }
    return model;
}

/// Softmax prediction; argmax ties break by class order.
inline std::pair<std::vector<SentimentClass>, std::vector<std::array<double, 3>>>
predict_stacker(const StackerModel& model, const std::vector<ProbRow>& rows) {
    std::vector<SentimentClass> labels;
    std::vector<std::array<double, 3>> probs;
    labels.reserve(rows.size());
    probs.reserve(rows.size());
    for (const auto& r : rows) {
        auto x = detail::features_of(r);
        if (x.size() != model.feature_width())
            throw std::invalid_argument("predict_stacker: feature width mismatch for " + r.id);
        auto p = detail::softmax(detail::scores(model, x));
        size_t best = 0;
        for (size_t c = 1; c < 3; ++c)
            if (p[c] > p[best]) best = c;
        labels.push_back(kClassOrder[best]);
        probs.push_back(p);
    }
    return {labels, probs};
}

/// Probability CSV: id,label,m1_neg,m1_neu,m1_pos[,m2_neg,...]
inline std::vector<ProbRow> parse_prob_csv(const std::string& data) {
    auto rows = csv::parse(data);
    if (rows.empty()) throw std::runtime_error("prob csv: empty file");
    const auto& header = rows[0];
    if (header.size() < 5 || (header.size() - 2) % 3 != 0)
        throw std::runtime_error("prob csv: header must be id,label plus 3 columns per model");
    size_t k = (header.size() - 2) / 3;
    std::vector<ProbRow> out;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw std::runtime_error("prob csv: row " + std::to_string(r) + " has wrong width");
        ProbRow p;
        p.id = row[0];
        auto cls = parse_sentiment(row[1]);
        if (!cls) throw std::runtime_error("prob csv: bad label '" + row[1] + "'");
        p.label = *cls;
        for (size_t m = 0; m < k; ++m) {
            std::array<double, 3> v{};
            double sum = 0;
            for (size_t c = 0; c < 3; ++c) {
                v[c] = std::stod(row[2 + m * 3 + c]);
                if (v[c] < 0) throw std::runtime_error("prob csv: negative probability");
                sum += v[c];
            }
            if (std::abs(sum - 1.0) > 1e-6)
                throw std::runtime_error("prob csv: probabilities of row " + std::to_string(r) +
                                         " sum to " + std::to_string(sum));
            p.model_probs.push_back(v);
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<ProbRow> read_prob_csv_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("prob csv: cannot open: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_prob_csv(data);
}

inline nlohmann::json model_to_json(const StackerModel& model) {
    nlohmann::json j;
    j["class_order"] = {"Neg", "Neu", "Pos"};
    j["k"] = model.k;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& row : model.weights) w.push_back({row[0], row[1], row[2]});
    j["weights"] = w;
    j["hyperparams"] = {{"learning_rate", model.hyperparams.learning_rate},
                        {"l2_lambda", model.hyperparams.l2_lambda},
                        {"max_iters", model.hyperparams.max_iters},
                        {"tolerance", model.hyperparams.tolerance}};
    return j;
}

inline StackerModel model_from_json(const nlohmann::json& j) {
    StackerModel m;
    m.k = j.at("k").get<size_t>();
    for (const auto& row : j.at("weights"))
        m.weights.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    if (m.weights.size() != m.k * 3 + 1)
        throw std::runtime_error("stacker model: weight shape mismatch");
    const auto& hp = j.at("hyperparams");
    m.hyperparams.learning_rate = hp.at("learning_rate").get<double>();
    m.hyperparams.l2_lambda = hp.at("l2_lambda").get<double>();
    m.hyperparams.max_iters = hp.at("max_iters").get<size_t>();
    m.hyperparams.tolerance = hp.at("tolerance").get<double>();
    return m;
}

inline std::string serialize_metrics(const ConfusionMatrix& cm, const MetricsReport& m) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
    };
    std::string out;
    out += "confusion_matrix (rows=true, cols=predicted; Neg,Neu,Pos)\n";
    for (size_t r = 0; r < 3; ++r) {
        out += std::string(short_label(kClassOrder[r])) + ":";
        for (size_t c = 0; c < 3; ++c) out += " " + std::to_string(cm.counts[r][c]);
        out += "\n";
    }
    out += "accuracy," + fmt(m.accuracy) + "\n";
    for (size_t c = 0; c < 3; ++c) {
        out += std::string("precision_") + short_label(kClassOrder[c]) + "," +
               fmt(m.precision[c]) + "\n";
        out += std::string("recall_") + short_label(kClassOrder[c]) + "," + fmt(m.recall[c]) + "\n";
        out += std::string("f1_") + short_label(kClassOrder[c]) + "," + fmt(m.f1[c]) + "\n";
    }
    out += "precision_macro," + fmt(m.precision_macro) + "\n";
    out += "recall_macro," + fmt(m.recall_macro) + "\n";
    out += "f1_macro," + fmt(m.f1_macro) + "\n";
    out += "f1_micro," + fmt(m.f1_micro) + "\n";
    return out;
}

}  // namespace trilex::evalstack

#endif  // TRILEX_EVALSTACK_HPP
