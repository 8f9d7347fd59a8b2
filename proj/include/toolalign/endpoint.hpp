#pragma once

// Client for any OpenAI-compatible chat-completions endpoint: batched sample
// collection with retries and resumable persistence, plus P(True) logit
// elicitation from token-level logprobs.

#include "toolalign/jsonl.hpp"
#include "toolalign/templates.hpp"
#include "toolalign/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace toolalign::responders {

struct EndpointConfig {
    std::string base_url = "http://localhost:8000";
    std::string model = "default";
    double temperature = 1.0;
    std::size_t n_per_question = 10;
    std::size_t max_tokens = 256;
    bool want_logprobs = true;
    int timeout_seconds = 30;
    int max_retries = 3;
    int backoff_ms = 500; // doubled per retry
    std::size_t concurrency = 4;
};

// API key from TOOLALIGN_API_KEY, falling back to OPENAI_API_KEY; empty when
// neither is set (requests go out without an Authorization header).
std::string endpoint_api_key();

struct CollectStats {
    std::size_t completed = 0;
    std::size_t skipped = 0; // already present in the output file
    std::size_t failed = 0;
};

// Samples every record with the consistency prompt and appends each finished
// SampleSet to out_path as it completes. Reruns skip question_ids already in
// the file. Records that exhaust retries land in <out_path>.failures.jsonl
// and collection continues.
CollectStats collect(const std::vector<QuestionRecord>& records, const EndpointConfig& config,
                     const PromptTemplates& templates, const std::string& out_path);

// First-token logits of the "True" / "False" tokens for the P(True) prompt.
// A missing token leaves its field unset (-inf equivalent; the estimator
// degenerates the score to 0 or 1). Throws Error when the endpoint returns
// no logprobs at all.
PTrueRow elicit_ptrue(const QuestionRecord& record, const std::string& candidate_answer,
                      const EndpointConfig& config, const PromptTemplates& templates);

struct PTrueStats {
    std::vector<PTrueRow> rows;
    std::size_t failed = 0;
};

// One row per record using each record's candidate answer; failures go to
// <out_path>.failures.jsonl.
PTrueStats elicit_ptrue_all(const std::vector<QuestionRecord>& records,
                            const std::vector<std::pair<std::string, std::string>>& answers_by_id,
                            const EndpointConfig& config, const PromptTemplates& templates,
                            const std::string& out_path);

} // namespace toolalign::responders
