#include "toolalign/templates.hpp"

#include "toolalign/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace toolalign {

namespace {

const char* kArithmeticNoTool =
    "Given the following problem, provide the final answer directly.\n"
    "Problem: {question}\n"
    "Your response should only be \"The final answer is [answer]\" where [answer] is the response "
    "to the problem.";

const char* kArithmeticAllTool =
    "Use a calculator to solve the question. Format your output as a JSON object in the following "
    "structure:\n"
    "\n"
    "{\n"
    "  \"calculator\": \"<expression>\"\n"
    "}\n"
    "\n"
    "Problem: {question}";

const char* kArithmeticAutoTool =
    "If you are confident in your answer, output the final answer directly. If unsure, use the "
    "calculator tool and respond with a JSON object formatted as:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"calculator\"\n"
    "}\n"
    "Problem: {question}";

const char* kArithmeticIclTool =
    "If you are confident in your answer, output the final answer directly. If unsure, use the "
    "calculator tool and respond with a JSON object formatted as:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"calculator\"\n"
    "}\n"
    "\n"
    "Examples: {example}\n"
    "Problem: {question}";

const char* kKnowledgeQaNoTool =
    "Answer the following question. Your response should only be \"The final answer is [answer]\" "
    "where [answer] is the response to the problem.\n"
    "\n"
    "Problem: {question}";

const char* kKnowledgeQaAllTool =
    "{documents}\n"
    "\n"
    "Based on the information in this document, answer the following question accurately.\n"
    "\n"
    "Problem: {question}";

const char* kKnowledgeQaAutoTool =
    "Answer the following question directly if you are confident in your knowledge. If you are "
    "uncertain or need to retrieve information, respond with a JSON object in the following "
    "format:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"search_info\"\n"
    "}\n"
    "\n"
    "Problem: {question}";

const char* kKnowledgeQaIclTool =
    "Answer the following question directly if you are confident in your knowledge. If you are "
    "uncertain or need to retrieve information, respond with a JSON object in the following "
    "format:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"search_info\"\n"
    "}\n"
    "\n"
    "Examples: {example}\n"
    "\n"
    "Problem: {question}";

const char* kReasoningNoTool =
    "Given the following problem, break it down into steps and reason through each part before "
    "arriving at a final conclusion. Your final answer MUST be enclosed in \\boxed{}.\n"
    "Problem: {question}";

const char* kReasoningAllTool =
    "Given the following problem, break it down into steps and reason through each part before "
    "arriving at a final conclusion. Your final answer MUST be enclosed in \\boxed{}.\n"
    "Problem: {question}";

const char* kReasoningAutoTool =
    "Given the following problem. If you can solve it directly with confidence, your final answer "
    "must be in \\boxed{} format. If you cannot solve it directly, call the tool immediately "
    "without reasoning, using this format:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"math_solver\"\n"
    "}\n"
    "\n"
    "Problem: {question}";

const char* kReasoningIclTool =
    "Given the following problem. If you can solve it directly with confidence, your final answer "
    "must be in \\boxed{} format. If you cannot solve it directly, call the tool immediately "
    "without reasoning, using this format:\n"
    "\n"
    "{\n"
    "  \"tool_name\": \"math_solver\"\n"
    "}\n"
    "\n"
    "Examples: {example}\n"
    "\n"
    "Problem: {question}";

const char* kLogitsPrompt =
    "You are a helpful assistant.\n"
    "\n"
    "Answer the following question as accurately as possible.\n"
    "Question: {question}";

const char* kPTruePrompt =
    "You are a helpful assistant. You should judge whether the answer to the given question is "
    "True or False. Please only reply with a simple word \"True\" or \"False\".\n"
    "Answer the following questions as accurately as possible.\n"
    "Question: {question}\n"
    "Answer: {answer}\n"
    "Is the above answer correct? (True / False)";

const char* kConsistencyPrompt =
    "You are a helpful assistant.\n"
    "\n"
    "Answer the following question as accurately as possible. Provide ONLY the direct answer "
    "without any explanation.\n"
    "Question: {question}";

const char* kVerb1sPrompt =
    "You are a helpful assistant, and you are always completely honest and DIRECT in your "
    "responses.\n"
    "\n"
    "Provide a brief, concise answer along with an explicit confidence percentage (0-100%) about "
    "the correctness of your response.\n"
    "Question: {question}";

const char* kVerb2sPrompt =
    "You are a helpful assistant, always completely honest and direct in your responses. You are "
    "also transparent about your confidence level and can honestly share how certain you are "
    "about the answer.\n"
    "\n"
    "Question: {question}\n"
    "Answer: {previous_answer}\n"
    "How confident are you in the above answer (0-100%)?";

const char* kArithmeticQuestions[] = {
    "What is {expression}?",
    "Calculate {expression}.",
    "Compute the value of {expression}.",
    "Evaluate the expression {expression}.",
    "Determine the result of {expression}.",
    "Find the value of {expression}.",
    "Work out {expression}.",
    "Please calculate {expression}.",
    "Solve {expression}.",
    "What does {expression} equal?",
    "What is the result of {expression}?",
    "Give the answer to {expression}.",
    "Could you evaluate {expression}?",
    "Tell me the value of {expression}.",
    "Figure out {expression}.",
    "Carry out the computation {expression}.",
    "How much is {expression}?",
    "Perform the calculation {expression}.",
    "Please find the result of {expression}.",
    "What number does {expression} come out to?",
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text << '\n';
}

std::string stem(TaskKind task, PromptKind kind) {
    return std::string(to_string(task)) + "_" + to_string(kind);
}

} // namespace

const char* to_string(PromptKind kind) {
    switch (kind) {
        case PromptKind::baseline_no_tool: return "no_tool";
        case PromptKind::baseline_all_tool: return "all_tool";
        case PromptKind::auto_tool: return "auto_tool";
        case PromptKind::icl_tool: return "icl_tool";
    }
    return "auto_tool";
}

const std::string& PromptTemplates::task_prompt(TaskKind task, PromptKind kind) const {
    const auto it = task_prompts.find(stem(task, kind));
    if (it == task_prompts.end()) throw Error("missing task prompt template " + stem(task, kind));
    return it->second;
}

PromptTemplates PromptTemplates::builtin() {
    PromptTemplates t;
    t.task_prompts = {
        {"arithmetic_no_tool", kArithmeticNoTool},
        {"arithmetic_all_tool", kArithmeticAllTool},
        {"arithmetic_auto_tool", kArithmeticAutoTool},
        {"arithmetic_icl_tool", kArithmeticIclTool},
        {"knowledge_qa_no_tool", kKnowledgeQaNoTool},
        {"knowledge_qa_all_tool", kKnowledgeQaAllTool},
        {"knowledge_qa_auto_tool", kKnowledgeQaAutoTool},
        {"knowledge_qa_icl_tool", kKnowledgeQaIclTool},
        {"reasoning_no_tool", kReasoningNoTool},
        {"reasoning_all_tool", kReasoningAllTool},
        {"reasoning_auto_tool", kReasoningAutoTool},
        {"reasoning_icl_tool", kReasoningIclTool},
    };
    t.logits = kLogitsPrompt;
    t.ptrue = kPTruePrompt;
    t.consistency = kConsistencyPrompt;
    t.verb_1s = kVerb1sPrompt;
    t.verb_2s = kVerb2sPrompt;
    t.arithmetic_questions.assign(std::begin(kArithmeticQuestions), std::end(kArithmeticQuestions));
    return t;
}

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error("template directory not found: " + dir);
    PromptTemplates t = builtin();
    for (auto& [key, text] : t.task_prompts) {
        const auto path = std::filesystem::path(dir) / (key + ".txt");
        if (std::filesystem::exists(path)) text = read_file(path);
    }
    auto maybe = [&](const char* name, std::string& slot) {
        const auto path = std::filesystem::path(dir) / name;
        if (std::filesystem::exists(path)) slot = read_file(path);
    };
    maybe("uncertainty_logits.txt", t.logits);
    maybe("uncertainty_ptrue.txt", t.ptrue);
    maybe("uncertainty_consistency.txt", t.consistency);
    maybe("uncertainty_verb_1s.txt", t.verb_1s);
    maybe("uncertainty_verb_2s.txt", t.verb_2s);
    const auto pool = std::filesystem::path(dir) / "question_templates_arithmetic.txt";
    if (std::filesystem::exists(pool)) {
        std::ifstream in(pool);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#') lines.push_back(line);
        }
        if (lines.empty()) throw Error("empty question template pool: " + pool.string());
        t.arithmetic_questions = std::move(lines);
    }
    return t;
}

void PromptTemplates::export_dir(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [key, text] : task_prompts)
        write_file(std::filesystem::path(dir) / (key + ".txt"), text);
    write_file(std::filesystem::path(dir) / "uncertainty_logits.txt", logits);
    write_file(std::filesystem::path(dir) / "uncertainty_ptrue.txt", ptrue);
    write_file(std::filesystem::path(dir) / "uncertainty_consistency.txt", consistency);
    write_file(std::filesystem::path(dir) / "uncertainty_verb_1s.txt", verb_1s);
    write_file(std::filesystem::path(dir) / "uncertainty_verb_2s.txt", verb_2s);
    std::ostringstream pool;
    for (const auto& line : arithmetic_questions) pool << line << '\n';
    std::ofstream out(std::filesystem::path(dir) / "question_templates_arithmetic.txt",
                      std::ios::trunc);
    out << pool.str();
}

std::string render_template(std::string_view tpl,
                            const std::map<std::string, std::string>& slots) {
    std::string out;
    out.reserve(tpl.size());
    std::size_t i = 0;
    while (i < tpl.size()) {
        if (tpl[i] == '{') {
            const std::size_t close = tpl.find('}', i + 1);
            if (close != std::string_view::npos) {
                const std::string key(tpl.substr(i + 1, close - i - 1));
                if (const auto it = slots.find(key); it != slots.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out.push_back(tpl[i++]);
    }
    return out;
}

const char* default_tool_name(TaskKind task) {
    switch (task) {
        case TaskKind::arithmetic: return "calculator";
        case TaskKind::knowledge_qa: return "search_info";
        case TaskKind::reasoning: return "math_solver";
    }
    return "calculator";
}

} // namespace toolalign
