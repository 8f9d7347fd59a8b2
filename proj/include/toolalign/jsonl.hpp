#pragma once

// Line-delimited JSON readers/writers for every file the pipeline touches.
// Field order is fixed so reruns with equal inputs are byte-identical.

#include "toolalign/types.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toolalign {

struct PTrueRow {
    std::string question_id;
    std::optional<double> logit_true;
    std::optional<double> logit_false;
};

std::vector<QuestionRecord> load_questions(const std::string& path);
void save_questions(const std::string& path, const std::vector<QuestionRecord>& records);

// Sample lines are grouped into sets; the result is ordered by question_id.
std::vector<SampleSet> load_samples(const std::string& path);
void save_samples(const std::string& path, const std::vector<SampleSet>& sets);
std::string sample_line(const std::string& question_id, const ResponseSample& sample);

std::vector<KnowledgeScore> load_scores(const std::string& path);
void save_scores(const std::string& path, const std::vector<KnowledgeScore>& scores);

std::vector<PTrueRow> load_ptrue_rows(const std::string& path);
void save_ptrue_rows(const std::string& path, const std::vector<PTrueRow>& rows);

// question_ids already present in a samples file; empty set when the file
// does not exist. Used for resumable collection.
std::set<std::string> existing_sample_ids(const std::string& path);

} // namespace toolalign
