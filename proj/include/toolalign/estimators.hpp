#pragma once

// Knowledge-boundary estimators: the two boundary estimators (consistency,
// absolute) and the uncertainty baselines (raw logits, P(True), verbalized
// confidence). Every estimator returns a value in [0,1].

#include "toolalign/jsonl.hpp"
#include "toolalign/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace toolalign::estimators {

struct EstimatorConfig {
    ScoreMethod method = ScoreMethod::consistency;
    std::size_t k = 1;           // verbalized top-k candidates
    std::size_t min_samples = 1; // sets smaller than this are reported as failures
};

enum class VerbalizedMode { one_stage, two_stage };

// Agreement with the modal normalized answer. The value is the modal count
// over N, which is identical under any mode tie-break.
KnowledgeScore estimate_consistency(const SampleSet& set, TaskKind kind = TaskKind::knowledge_qa);

// Mean correctness against ground truth across samples.
KnowledgeScore estimate_absolute(const SampleSet& set, const QuestionRecord& record);

// exp(mean token logprob) == reciprocal of perplexity, in (0,1].
KnowledgeScore estimate_raw_logits(const ResponseSample& sample, std::string question_id = {});

// Normalized probability of the 'True' token: 1/(1+exp(z_false - z_true)).
KnowledgeScore estimate_p_true(double logit_true, double logit_false, std::string question_id = {});

// Extracts a verbalized confidence from free text. Two-stage takes the last
// "NN%" pattern; one-stage takes the first (the top-ranked candidate in a
// ranked list). A bare number in [0,100] after a "confidence" marker is the
// fallback. Throws Error("unparseable confidence ...") when nothing matches.
KnowledgeScore parse_verbalized(std::string_view text, VerbalizedMode mode,
                                std::string question_id = {});

struct BatchFailure {
    std::string question_id;
    std::string reason;
};

struct BatchResult {
    std::vector<KnowledgeScore> scores;   // ordered by question_id
    std::vector<BatchFailure> failures;   // precondition failures, never silently dropped
};

// One score per sample set, ordered by question id. Methods needing ground
// truth throw Error naming the first id with no matching record. Per-record
// estimation failures (missing logprobs, unparseable confidence) land in
// failures.
BatchResult estimate_batch(const std::vector<SampleSet>& sets,
                           const std::vector<QuestionRecord>& records,
                           const EstimatorConfig& config);

// P(True) scores from the auxiliary logits file rows; rows with one missing
// logit degenerate to 0 or 1, rows with both missing become failures.
BatchResult estimate_ptrue_batch(const std::vector<PTrueRow>& rows);

} // namespace toolalign::estimators
