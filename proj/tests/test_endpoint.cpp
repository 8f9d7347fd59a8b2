#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "toolalign/endpoint.hpp"
#include "toolalign/error.hpp"
#include "toolalign/jsonl.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <thread>

using namespace toolalign;
using namespace toolalign::responders;
using json = nlohmann::json;

namespace {

// In-process OpenAI-compatible mock.
class MockServer {
public:
    MockServer() {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            ++requests_;
            const auto body = json::parse(req.body);
            const std::string content = body["messages"][0]["content"].get<std::string>();

            if (content.find("FAIL-HARD") != std::string::npos) {
                res.status = 500;
                res.set_content("boom", "text/plain");
                return;
            }
            if (content.find("FAIL-ONCE") != std::string::npos && flaky_remaining_ > 0) {
                --flaky_remaining_;
                res.status = 503;
                res.set_content("try again", "text/plain");
                return;
            }

            json out;
            out["choices"] = json::array();
            if (body.contains("top_logprobs")) {
                // P(True) style single-token judgment.
                json top = json::array();
                if (content.find("NO-TRUE-TOKEN") == std::string::npos)
                    top.push_back({{"token", "True"}, {"logprob", -0.2}});
                if (content.find("NO-FALSE-TOKEN") == std::string::npos)
                    top.push_back({{"token", " False"}, {"logprob", -1.7}});
                json token = {{"token", "True"}, {"logprob", -0.2}, {"top_logprobs", top}};
                out["choices"].push_back(
                    {{"message", {{"role", "assistant"}, {"content", "True"}}},
                     {"logprobs", {{"content", json::array({token})}}}});
            } else {
                const auto n = body.value("n", 1);
                for (int i = 0; i < n; ++i) {
                    json tokens = json::array();
                    tokens.push_back({{"token", "The"}, {"logprob", -0.1 - 0.01 * i}});
                    tokens.push_back({{"token", " answer"}, {"logprob", -0.3}});
                    json choice = {{"message",
                                    {{"role", "assistant"},
                                     {"content", "The final answer is mock-" + std::to_string(i)}}}};
                    if (body.value("logprobs", false))
                        choice["logprobs"] = {{"content", tokens}};
                    out["choices"].push_back(choice);
                }
            }
            res.set_content(out.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockServer() {
        server_.stop();
        thread_.join();
    }

    EndpointConfig config() const {
        EndpointConfig cfg;
        cfg.base_url = "http://127.0.0.1:" + std::to_string(port_);
        cfg.model = "mock";
        cfg.n_per_question = 3;
        cfg.max_retries = 3;
        cfg.backoff_ms = 5;
        cfg.timeout_seconds = 5;
        cfg.concurrency = 2;
        return cfg;
    }

    int requests() const { return requests_; }
    void set_flaky(int failures) { flaky_remaining_ = failures; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::atomic<int> flaky_remaining_{0};
};

std::vector<QuestionRecord> make_records(int n) {
    std::vector<QuestionRecord> records;
    for (int i = 0; i < n; ++i)
        records.push_back({"q-" + std::to_string(i), "Question " + std::to_string(i),
                           {"mock-0"}, TaskKind::knowledge_qa});
    return records;
}

} // namespace

TEST_CASE("collect writes N samples per question with logprobs") {
    MockServer server;
    test_helpers::TempDir tmp("collect");
    const auto out = tmp.file("samples.jsonl");

    const auto stats = collect(make_records(3), server.config(), PromptTemplates::builtin(), out);
    CHECK(stats.completed == 3);
    CHECK(stats.failed == 0);
    CHECK(stats.skipped == 0);

    const auto sets = load_samples(out);
    REQUIRE(sets.size() == 3);
    for (const auto& set : sets) {
        CHECK(set.samples.size() == 3);
        for (const auto& sample : set.samples) {
            CHECK(sample.answer_text.rfind("The final answer is mock-", 0) == 0);
            REQUIRE(sample.token_logprobs.has_value());
            CHECK(sample.token_logprobs->size() == 2);
        }
    }
}

TEST_CASE("collect with no records leaves an empty output file") {
    MockServer server;
    test_helpers::TempDir tmp("collect_empty");
    const auto out = tmp.file("samples.jsonl");
    const auto stats = collect({}, server.config(), PromptTemplates::builtin(), out);
    CHECK(stats.completed == 0);
    CHECK(std::filesystem::exists(out));
    CHECK(test_helpers::read_file(out).empty());
    CHECK(server.requests() == 0);
}

TEST_CASE("collect resumes without re-requesting present ids") {
    MockServer server;
    test_helpers::TempDir tmp("resume");
    const auto out = tmp.file("samples.jsonl");

    const auto records = make_records(4);
    const std::vector<QuestionRecord> first(records.begin(), records.begin() + 2);
    collect(first, server.config(), PromptTemplates::builtin(), out);
    const int after_first = server.requests();
    CHECK(after_first == 2);

    const auto stats = collect(records, server.config(), PromptTemplates::builtin(), out);
    CHECK(stats.skipped == 2);
    CHECK(stats.completed == 2);
    CHECK(server.requests() == after_first + 2);

    // No duplicated question ids in the output.
    const auto sets = load_samples(out);
    CHECK(sets.size() == 4);
    for (const auto& set : sets) CHECK(set.samples.size() == 3);
}

TEST_CASE("transient failures are retried, hard failures land in the sidecar log") {
    MockServer server;
    test_helpers::TempDir tmp("fails");
    const auto out = tmp.file("samples.jsonl");

    std::vector<QuestionRecord> records = make_records(2);
    records.push_back({"q-bad", "FAIL-HARD question", {"x"}, TaskKind::knowledge_qa});
    records.push_back({"q-flaky", "FAIL-ONCE question", {"mock-0"}, TaskKind::knowledge_qa});
    server.set_flaky(1);

    auto cfg = server.config();
    cfg.concurrency = 1;
    const auto stats = collect(records, cfg, PromptTemplates::builtin(), out);
    CHECK(stats.completed == 3); // two clean + the flaky one after retry
    CHECK(stats.failed == 1);

    const auto failures = test_helpers::read_file(out + ".failures.jsonl");
    CHECK(failures.find("q-bad") != std::string::npos);
    const auto sets = load_samples(out);
    CHECK(sets.size() == 3);
}

TEST_CASE("elicit_ptrue extracts True/False logits from top_logprobs") {
    MockServer server;
    const auto templates = PromptTemplates::builtin();
    const QuestionRecord record{"q-1", "Is the sky blue?", {"yes"}, TaskKind::knowledge_qa};

    const auto row = elicit_ptrue(record, "yes", server.config(), templates);
    REQUIRE(row.logit_true.has_value());
    REQUIRE(row.logit_false.has_value());
    CHECK(*row.logit_true == doctest::Approx(-0.2));
    CHECK(*row.logit_false == doctest::Approx(-1.7));

    const QuestionRecord no_false{"q-2", "NO-FALSE-TOKEN question", {"x"}, TaskKind::knowledge_qa};
    const auto degenerate = elicit_ptrue(no_false, "x", server.config(), templates);
    CHECK(degenerate.logit_true.has_value());
    CHECK_FALSE(degenerate.logit_false.has_value());
}

TEST_CASE("elicit_ptrue_all persists rows and logs failures") {
    MockServer server;
    test_helpers::TempDir tmp("ptrue");
    const auto out = tmp.file("ptrue.jsonl");

    std::vector<QuestionRecord> records = make_records(2);
    records.push_back({"q-bad", "FAIL-HARD judgment", {"x"}, TaskKind::knowledge_qa});
    std::vector<std::pair<std::string, std::string>> answers = {
        {"q-0", "mock-0"}, {"q-1", "mock-0"}, {"q-bad", "mock-0"}};

    const auto stats = elicit_ptrue_all(records, answers, server.config(),
                                        PromptTemplates::builtin(), out);
    CHECK(stats.rows.size() == 2);
    CHECK(stats.failed == 1);
    const auto rows = load_ptrue_rows(out);
    CHECK(rows.size() == 2);
    CHECK(test_helpers::read_file(out + ".failures.jsonl").find("q-bad") != std::string::npos);
}
