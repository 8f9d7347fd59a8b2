#pragma once

// Shared domain types. All of these are immutable values after construction
// and safe to share across worker threads.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toolalign {

enum class TaskKind { arithmetic, knowledge_qa, reasoning };

enum class ScoreMethod { consistency, absolute, raw_logits, p_true, verb_1s, verb_2s };

// Outcome categories; nc/tc/nw/tw is also the preference order.
enum class OutcomeCategory { nc, tc, nw, tw };

const char* to_string(TaskKind kind);
const char* to_string(ScoreMethod method);
const char* to_string(OutcomeCategory category);

TaskKind task_kind_from_string(const std::string& s);
ScoreMethod score_method_from_string(const std::string& s);

// One task instance. ground_truth holds every acceptable answer string
// (alias lists for QA tasks) and is never empty.
struct QuestionRecord {
    std::string id;
    std::string prompt;
    std::vector<std::string> ground_truth;
    TaskKind task_kind = TaskKind::knowledge_qa;
};

// One sampled model response. token_logprobs are natural-log probabilities,
// each <= 0 when present.
struct ResponseSample {
    std::string answer_text;
    std::optional<std::vector<double>> token_logprobs;
    bool is_correct = false;
};

// N >= 1 samples for one question.
struct SampleSet {
    std::string question_id;
    std::vector<ResponseSample> samples;
};

// Probabilistic knowledge estimate in [0,1].
struct KnowledgeScore {
    std::string question_id;
    double value = 0.0;
    ScoreMethod method = ScoreMethod::consistency;
};

// Tool identity plus its invocation cost alpha in (0,1) and the probability
// q_tool that a tool-assisted answer is correct.
struct ToolSpec {
    std::string name;
    double alpha = 0.2;
    double q_tool = 1.0;

    // Paper presets: calculator 0.2, search_info 0.4, math_solver 0.6.
    static ToolSpec preset(const std::string& name, double q_tool = 1.0);
};

OutcomeCategory categorize(bool used_tool, bool is_correct);

struct Outcome {
    std::string question_id;
    bool used_tool = false;
    bool is_correct = false;
    OutcomeCategory category = OutcomeCategory::nw;

    static Outcome make(std::string question_id, bool used_tool, bool is_correct) {
        return Outcome{std::move(question_id), used_tool, is_correct, categorize(used_tool, is_correct)};
    }
};

struct MetricsSummary {
    std::size_t n = 0;
    double accuracy = 0.0;
    double tool_ratio = 0.0;
    double utility = 0.0;
    double overconfidence_rate = 0.0;
    double over_reliance_rate = 0.0;
};

} // namespace toolalign
