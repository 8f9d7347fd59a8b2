#include "toolalign/types.hpp"

#include "toolalign/error.hpp"

namespace toolalign {

const char* to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::arithmetic: return "arithmetic";
        case TaskKind::knowledge_qa: return "knowledge_qa";
        case TaskKind::reasoning: return "reasoning";
    }
    return "knowledge_qa";
}

const char* to_string(ScoreMethod method) {
    switch (method) {
        case ScoreMethod::consistency: return "consistency";
        case ScoreMethod::absolute: return "absolute";
        case ScoreMethod::raw_logits: return "raw_logits";
        case ScoreMethod::p_true: return "p_true";
        case ScoreMethod::verb_1s: return "verb_1s";
        case ScoreMethod::verb_2s: return "verb_2s";
    }
    return "consistency";
}

const char* to_string(OutcomeCategory category) {
    switch (category) {
        case OutcomeCategory::nc: return "nc";
        case OutcomeCategory::tc: return "tc";
        case OutcomeCategory::nw: return "nw";
        case OutcomeCategory::tw: return "tw";
    }
    return "nw";
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "arithmetic") return TaskKind::arithmetic;
    if (s == "knowledge_qa") return TaskKind::knowledge_qa;
    if (s == "reasoning") return TaskKind::reasoning;
    throw Error("unknown task_kind '" + s + "'");
}

ScoreMethod score_method_from_string(const std::string& s) {
    if (s == "consistency") return ScoreMethod::consistency;
    if (s == "absolute") return ScoreMethod::absolute;
    if (s == "raw_logits") return ScoreMethod::raw_logits;
    if (s == "p_true") return ScoreMethod::p_true;
    if (s == "verb_1s") return ScoreMethod::verb_1s;
    if (s == "verb_2s") return ScoreMethod::verb_2s;
    throw Error("unknown score method '" + s + "'");
}

ToolSpec ToolSpec::preset(const std::string& name, double q_tool) {
    if (name == "calculator") return ToolSpec{name, 0.2, q_tool};
    if (name == "search_info") return ToolSpec{name, 0.4, q_tool};
    if (name == "math_solver") return ToolSpec{name, 0.6, q_tool};
    throw Error("unknown tool '" + name + "' (expected calculator, search_info or math_solver)");
}

OutcomeCategory categorize(bool used_tool, bool is_correct) {
    if (is_correct) return used_tool ? OutcomeCategory::tc : OutcomeCategory::nc;
    return used_tool ? OutcomeCategory::tw : OutcomeCategory::nw;
}

} // namespace toolalign
