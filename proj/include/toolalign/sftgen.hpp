#pragma once

// SFT dataset construction. Implicit modeling bakes the tool/direct decision
// into the targets at a chosen ratio; explicit modeling appends a confidence
// annotation and leaves the decision to inference-time thresholding.

#include "toolalign/templates.hpp"
#include "toolalign/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toolalign::sftgen {

struct SftExample {
    std::string prompt;
    std::string target;
    std::string question_id;
    double score = 0.0;
    bool labeled_tool = false;
    // Percent in 5% steps; present iff built by the explicit builder.
    std::optional<int> confidence;
};

// The exact tool-call object for the three known tools. Throws Error for any
// other name.
std::string render_tool_target(const ToolSpec& tool);

// Prefers the first correct model sample (in input order) so targets stay
// in-distribution; falls back to the templated ground truth.
std::string render_direct_target(const QuestionRecord& record,
                                 const std::vector<ResponseSample>& samples);

// Sorts records ascending by score and labels the lowest ceil(r*n) for tool
// invocation; output is ordered by question id. Throws Error naming the first
// record without a score.
std::vector<SftExample> build_implicit(const std::vector<QuestionRecord>& records,
                                       const std::vector<KnowledgeScore>& scores, double ratio,
                                       const ToolSpec& tool,
                                       const std::vector<SampleSet>& samples,
                                       const PromptTemplates& templates);

// Every target is a direct answer plus "Confidence: NN%" with the score
// rounded to the nearest 5% (half to even).
std::vector<SftExample> build_explicit(const std::vector<QuestionRecord>& records,
                                       const std::vector<KnowledgeScore>& scores,
                                       const std::vector<SampleSet>& samples,
                                       const PromptTemplates& templates);

// Seeded selection of n_correct records rendered with direct answers and
// n_incorrect rendered with tool calls, formatted for the {example} slot.
// Throws Error with pool sizes when either pool is too small.
std::string build_icl_examples(const std::vector<QuestionRecord>& records,
                               const std::vector<SampleSet>& samples, std::size_t n_correct,
                               std::size_t n_incorrect, std::uint64_t seed);

// Score percent rounded to 5% steps, half to even: 0.82 -> 80, 0.025 -> 0.
int round_confidence_percent(double score);

void save_sft(const std::string& path, const std::vector<SftExample>& examples);
std::vector<SftExample> load_sft(const std::string& path);

} // namespace toolalign::sftgen
