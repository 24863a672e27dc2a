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

#ifndef TRILEX_CLIENTS_HTTP_HPP
#define TRILEX_CLIENTS_HTTP_HPP

#include <cstdlib>
#include <memory>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "trilex/clients.hpp"

namespace trilex::clients {

/// JSON-over-HTTP clients for the translate/annotate/refine endpoints.
/// TRILEX_API_KEY, when set, is forwarded as a bearer token.
class HttpEndpoint {
public:
    explicit HttpEndpoint(const std::string& base_url) : client_(base_url.c_str()) {
        client_.set_connection_timeout(5, 0);
        client_.set_read_timeout(30, 0);
        if (const char* key = std::getenv("TRILEX_API_KEY")) {
            headers_.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    nlohmann::json post(const std::string& path, const nlohmann::json& body) {
        auto res = client_.Post(path.c_str(), headers_, body.dump(), "application/json");
        if (!res) throw TransportError("http: no response from " + path);
        if (res->status < 200 || res->status >= 300)
            throw TransportError("http: " + path + " returned " + std::to_string(res->status));
        auto j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded())
            throw ProtocolError("http: " + path + " returned non-JSON body", res->body);
        return j;
    }

private:
    httplib::Client client_;
    httplib::Headers headers_;
};

class HttpTranslator : public Translator {
public:
    HttpTranslator(const std::string& base_url, std::string path = "/translate")
        : endpoint_(base_url), path_(std::move(path)) {}

    std::optional<std::string> translate(const TranslationRequest& req) override {
        auto j = endpoint_.post(path_, to_json(req));
        if (!j.contains("translation") || j["translation"].is_null()) return std::nullopt;
        return j["translation"].get<std::string>();
    }

private:
    HttpEndpoint endpoint_;
    std::string path_;
};

class HttpAnnotator : public Annotator {
public:
    HttpAnnotator(const std::string& base_url, std::string path = "/annotate")
        : endpoint_(base_url), path_(std::move(path)) {}

    std::pair<SentimentClass, double> annotate(const std::string& text) override {
        auto j = endpoint_.post(path_, nlohmann::json{{"text", text}});
        auto raw = j.dump();
        try {
            auto cls = parse_sentiment(j.at("class").get<std::string>());
            if (!cls) throw std::runtime_error("bad class");
            double score = j.at("score").get<double>();
            if (score < -1.0 || score > 1.0) throw std::runtime_error("score out of [-1,1]");
            return {*cls, score};
        } catch (const std::exception& e) {
            throw ProtocolError(std::string("annotate: malformed response: ") + e.what(), raw);
        }
    }

private:
    HttpEndpoint endpoint_;
    std::string path_;
};

class HttpRefiner : public Refiner {
public:
    HttpRefiner(const std::string& base_url, std::string path = "/refine")
        : endpoint_(base_url), path_(std::move(path)) {}

    RefineResponse refine(const RefineRequest& req) override {
        auto j = endpoint_.post(path_, to_json(req));
        return refine_response_from_json(j, j.dump());
    }

private:
    HttpEndpoint endpoint_;
    std::string path_;
};

}  // namespace trilex::clients

#endif  // TRILEX_CLIENTS_HTTP_HPP
