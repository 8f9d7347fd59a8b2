#include "toolalign/endpoint.hpp"

#include "toolalign/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace toolalign::responders {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

httplib::Client make_client(const EndpointConfig& config) {
    httplib::Client client(config.base_url);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    const std::string key = endpoint_api_key();
    if (!key.empty()) client.set_bearer_token_auth(key);
    return client;
}

bool permanent_status(int status) {
    return status == 400 || status == 401 || status == 403 || status == 404 || status == 422;
}

// POSTs the body with exponential backoff on transport errors and 5xx/429.
json post_chat(const EndpointConfig& config, const json& body) {
    auto client = make_client(config);
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0) {
            const int shift = std::min(attempt - 1, 6);
            std::this_thread::sleep_for(std::chrono::milliseconds(config.backoff_ms << shift));
        }
        auto res = client.Post("/v1/chat/completions", body.dump(), "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
            if (permanent_status(res->status)) throw Error(last_error);
            continue;
        }
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            last_error = std::string("malformed response body: ") + e.what();
        }
    }
    throw Error("exhausted " + std::to_string(config.max_retries) + " retries; last: " + last_error);
}

std::vector<ResponseSample> parse_choices(const json& response) {
    std::vector<ResponseSample> samples;
    if (!response.contains("choices") || !response["choices"].is_array() ||
        response["choices"].empty())
        throw Error("malformed response body: no choices");
    for (const auto& choice : response["choices"]) {
        ResponseSample sample;
        sample.answer_text = choice.at("message").at("content").get<std::string>();
        if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
            choice["logprobs"].contains("content") && choice["logprobs"]["content"].is_array()) {
            std::vector<double> logprobs;
            for (const auto& token : choice["logprobs"]["content"]) {
                double lp = token.at("logprob").get<double>();
                if (lp > 0.0) lp = 0.0; // endpoints occasionally emit tiny positive values
                logprobs.push_back(lp);
            }
            if (!logprobs.empty()) sample.token_logprobs = std::move(logprobs);
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

void append_failure(std::mutex& mutex, const std::string& path, const std::string& question_id,
                    const std::string& error) {
    const std::lock_guard<std::mutex> lock(mutex);
    std::ofstream out(path, std::ios::app);
    json obj;
    obj["question_id"] = question_id;
    obj["error"] = error;
    out << obj.dump() << '\n';
}

} // namespace

std::string endpoint_api_key() {
    if (const char* key = std::getenv("TOOLALIGN_API_KEY")) return key;
    if (const char* key = std::getenv("OPENAI_API_KEY")) return key;
    return {};
}

CollectStats collect(const std::vector<QuestionRecord>& records, const EndpointConfig& config,
                     const PromptTemplates& templates, const std::string& out_path) {
    if (config.n_per_question == 0) throw Error("collect: need n_per_question >= 1");
    if (const auto dir = std::filesystem::path(out_path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);

    const auto done = existing_sample_ids(out_path);
    std::vector<const QuestionRecord*> pending;
    for (const auto& record : records) {
        if (!done.count(record.id)) pending.push_back(&record);
    }

    CollectStats stats;
    stats.skipped = records.size() - pending.size();
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw Error("cannot write " + out_path);
    if (pending.empty()) return stats;
    const std::string failure_path = out_path + ".failures.jsonl";

    std::mutex write_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> completed{0};
    std::atomic<std::size_t> failed{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            const QuestionRecord& record = *pending[i];
            try {
                json body;
                body["model"] = config.model;
                body["messages"] = json::array(
                    {{{"role", "user"},
                      {"content", render_template(templates.consistency,
                                                  {{"question", record.prompt}})}}});
                body["n"] = config.n_per_question;
                body["temperature"] = config.temperature;
                body["max_tokens"] = config.max_tokens;
                if (config.want_logprobs) body["logprobs"] = true;
                const json response = post_chat(config, body);
                const auto samples = parse_choices(response);
                // Whole set under one lock so the file stays append-consistent.
                const std::lock_guard<std::mutex> lock(write_mutex);
                for (const auto& sample : samples) out << sample_line(record.id, sample) << '\n';
                out.flush();
                ++completed;
            } catch (const std::exception& e) {
                append_failure(write_mutex, failure_path, record.id, e.what());
                ++failed;
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(config.concurrency, pending.size()));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();

    stats.completed = completed;
    stats.failed = failed;
    return stats;
}

PTrueRow elicit_ptrue(const QuestionRecord& record, const std::string& candidate_answer,
                      const EndpointConfig& config, const PromptTemplates& templates) {
    json body;
    body["model"] = config.model;
    body["messages"] = json::array(
        {{{"role", "user"},
          {"content", render_template(templates.ptrue, {{"question", record.prompt},
                                                        {"answer", candidate_answer}})}}});
    body["n"] = 1;
    body["temperature"] = 0.0;
    body["max_tokens"] = 1;
    body["logprobs"] = true;
    body["top_logprobs"] = 20;

    const json response = post_chat(config, body);
    if (!response.contains("choices") || response["choices"].empty())
        throw Error("malformed response body: no choices");
    const auto& choice = response["choices"][0];
    if (!choice.contains("logprobs") || choice["logprobs"].is_null())
        throw Error("p_true requires logprobs but the endpoint returned none");
    const auto& content = choice["logprobs"]["content"];
    if (!content.is_array() || content.empty())
        throw Error("p_true requires logprobs but the endpoint returned none");

    PTrueRow row;
    row.question_id = record.id;
    for (const auto& entry : content[0]["top_logprobs"]) {
        const std::string token = trim(entry.at("token").get<std::string>());
        const double logprob = entry.at("logprob").get<double>();
        if (token == "True" && !row.logit_true) row.logit_true = logprob;
        if (token == "False" && !row.logit_false) row.logit_false = logprob;
    }
    return row;
}

PTrueStats elicit_ptrue_all(const std::vector<QuestionRecord>& records,
                            const std::vector<std::pair<std::string, std::string>>& answers_by_id,
                            const EndpointConfig& config, const PromptTemplates& templates,
                            const std::string& out_path) {
    std::map<std::string, const std::string*> answers;
    for (const auto& [id, answer] : answers_by_id) answers[id] = &answer;

    const std::string failure_path = out_path + ".failures.jsonl";
    std::mutex failure_mutex;
    PTrueStats stats;
    for (const auto& record : records) {
        const auto it = answers.find(record.id);
        if (it == answers.end()) {
            append_failure(failure_mutex, failure_path, record.id, "no candidate answer");
            ++stats.failed;
            continue;
        }
        try {
            stats.rows.push_back(elicit_ptrue(record, *it->second, config, templates));
        } catch (const std::exception& e) {
            append_failure(failure_mutex, failure_path, record.id, e.what());
            ++stats.failed;
        }
    }
    save_ptrue_rows(out_path, stats.rows);
    return stats;
}

} // namespace toolalign::responders
