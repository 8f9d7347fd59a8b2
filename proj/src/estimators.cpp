#include "toolalign/estimators.hpp"

#include "toolalign/answer.hpp"
#include "toolalign/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>

namespace toolalign::estimators {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Parses the number ending with '%' at text[pct]; returns nullopt when no
// digits precede the sign.
std::optional<double> number_before_percent(std::string_view text, std::size_t pct) {
    std::size_t begin = pct;
    bool saw_digit = false;
    bool saw_dot = false;
    while (begin > 0) {
        const char c = text[begin - 1];
        if (is_digit(c)) {
            saw_digit = true;
            --begin;
        } else if (c == '.' && !saw_dot) {
            saw_dot = true;
            --begin;
        } else {
            break;
        }
    }
    if (!saw_digit) return std::nullopt;
    return std::stod(std::string(text.substr(begin, pct - begin)));
}

// First number at or after `from`, or nullopt.
std::optional<double> first_number_after(std::string_view text, std::size_t from) {
    for (std::size_t i = from; i < text.size(); ++i) {
        if (!is_digit(text[i])) continue;
        std::size_t end = i;
        while (end < text.size() && is_digit(text[end])) ++end;
        if (end < text.size() && text[end] == '.') {
            ++end;
            while (end < text.size() && is_digit(text[end])) ++end;
        }
        return std::stod(std::string(text.substr(i, end - i)));
    }
    return std::nullopt;
}

std::size_t find_last_ci(std::string_view text, std::string_view needle) {
    if (text.size() < needle.size()) return std::string_view::npos;
    for (std::size_t start = text.size() - needle.size() + 1; start-- > 0;) {
        bool match = true;
        for (std::size_t i = 0; i < needle.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(text[start + i])) != needle[i]) {
                match = false;
                break;
            }
        }
        if (match) return start;
    }
    return std::string_view::npos;
}

} // namespace

KnowledgeScore estimate_consistency(const SampleSet& set, TaskKind kind) {
    if (set.samples.empty()) throw Error("no samples for question '" + set.question_id + "'");
    std::map<std::string, std::size_t> counts;
    for (const auto& sample : set.samples) ++counts[normalize_answer(sample.answer_text, kind)];
    std::size_t modal = 0;
    for (const auto& [answer, count] : counts) modal = std::max(modal, count);
    return KnowledgeScore{set.question_id,
                          static_cast<double>(modal) / static_cast<double>(set.samples.size()),
                          ScoreMethod::consistency};
}

KnowledgeScore estimate_absolute(const SampleSet& set, const QuestionRecord& record) {
    if (set.samples.empty()) throw Error("no samples for question '" + set.question_id + "'");
    if (record.ground_truth.empty()) throw Error("no ground truth for question '" + record.id + "'");
    std::size_t correct = 0;
    for (const auto& sample : set.samples) {
        if (is_correct(sample.answer_text, record.ground_truth, record.task_kind)) ++correct;
    }
    return KnowledgeScore{set.question_id,
                          static_cast<double>(correct) / static_cast<double>(set.samples.size()),
                          ScoreMethod::absolute};
}

KnowledgeScore estimate_raw_logits(const ResponseSample& sample, std::string question_id) {
    if (!sample.token_logprobs || sample.token_logprobs->empty())
        throw Error("logprobs unavailable" +
                    (question_id.empty() ? "" : " for question '" + question_id + "'"));
    double sum = 0.0;
    for (double lp : *sample.token_logprobs) {
        if (lp > 0.0) throw Error("positive token logprob");
        sum += lp;
    }
    const double mean = sum / static_cast<double>(sample.token_logprobs->size());
    return KnowledgeScore{std::move(question_id), std::exp(mean), ScoreMethod::raw_logits};
}

KnowledgeScore estimate_p_true(double logit_true, double logit_false, std::string question_id) {
    if (!std::isfinite(logit_true) || !std::isfinite(logit_false))
        throw Error("p_true logits must be finite");
    // 1/(1+exp(zF - zT)) is exp(zT)/(exp(zT)+exp(zF)) without overflow.
    const double value = 1.0 / (1.0 + std::exp(logit_false - logit_true));
    return KnowledgeScore{std::move(question_id), value, ScoreMethod::p_true};
}

KnowledgeScore parse_verbalized(std::string_view text, VerbalizedMode mode,
                                std::string question_id) {
    if (text.empty()) throw Error("unparseable confidence: empty text");
    std::optional<double> percent;
    if (mode == VerbalizedMode::one_stage) {
        // Ranked candidate lists put the top candidate's probability first.
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] != '%') continue;
            if ((percent = number_before_percent(text, i))) break;
        }
    } else {
        for (std::size_t i = text.size(); i-- > 0;) {
            if (text[i] != '%') continue;
            if ((percent = number_before_percent(text, i))) break;
        }
    }
    if (!percent) {
        const std::size_t marker = find_last_ci(text, "confidence");
        if (marker != std::string_view::npos) {
            if (auto bare = first_number_after(text, marker + 10); bare && *bare <= 100.0)
                percent = bare;
        }
    }
    if (!percent)
        throw Error("unparseable confidence" +
                    (question_id.empty() ? "" : " for question '" + question_id + "'") + ": '" +
                    std::string(text.substr(0, 80)) + "'");
    return KnowledgeScore{std::move(question_id), clamp01(*percent / 100.0),
                          mode == VerbalizedMode::one_stage ? ScoreMethod::verb_1s
                                                            : ScoreMethod::verb_2s};
}

BatchResult estimate_batch(const std::vector<SampleSet>& sets,
                           const std::vector<QuestionRecord>& records,
                           const EstimatorConfig& config) {
    if (config.method == ScoreMethod::p_true)
        throw Error("p_true scores come from the logits file; use estimate_ptrue_batch");
    std::map<std::string, const QuestionRecord*> by_id;
    for (const auto& record : records) by_id[record.id] = &record;

    std::vector<const SampleSet*> ordered;
    ordered.reserve(sets.size());
    for (const auto& set : sets) ordered.push_back(&set);
    std::sort(ordered.begin(), ordered.end(),
              [](const SampleSet* a, const SampleSet* b) { return a->question_id < b->question_id; });

    BatchResult result;
    for (const SampleSet* set : ordered) {
        const auto it = by_id.find(set->question_id);
        const QuestionRecord* record = it == by_id.end() ? nullptr : it->second;
        if (config.method == ScoreMethod::absolute && record == nullptr)
            throw Error("no question record for id '" + set->question_id + "'");
        if (set->samples.size() < config.min_samples) {
            result.failures.push_back({set->question_id,
                                       "only " + std::to_string(set->samples.size()) + " samples, need " +
                                           std::to_string(config.min_samples)});
            continue;
        }
        const TaskKind kind = record ? record->task_kind : TaskKind::knowledge_qa;
        try {
            switch (config.method) {
                case ScoreMethod::consistency:
                    result.scores.push_back(estimate_consistency(*set, kind));
                    break;
                case ScoreMethod::absolute:
                    result.scores.push_back(estimate_absolute(*set, *record));
                    break;
                case ScoreMethod::raw_logits:
                    // The logit method scores a single generation; use the
                    // set's first sample.
                    result.scores.push_back(estimate_raw_logits(set->samples.front(), set->question_id));
                    break;
                case ScoreMethod::verb_1s:
                    result.scores.push_back(parse_verbalized(set->samples.front().answer_text,
                                                             VerbalizedMode::one_stage,
                                                             set->question_id));
                    break;
                case ScoreMethod::verb_2s:
                    result.scores.push_back(parse_verbalized(set->samples.front().answer_text,
                                                             VerbalizedMode::two_stage,
                                                             set->question_id));
                    break;
                case ScoreMethod::p_true:
                    break; // rejected above
            }
        } catch (const Error& e) {
            result.failures.push_back({set->question_id, e.what()});
        }
    }
    return result;
}

BatchResult estimate_ptrue_batch(const std::vector<PTrueRow>& rows) {
    std::vector<const PTrueRow*> ordered;
    ordered.reserve(rows.size());
    for (const auto& row : rows) ordered.push_back(&row);
    std::sort(ordered.begin(), ordered.end(),
              [](const PTrueRow* a, const PTrueRow* b) { return a->question_id < b->question_id; });

    BatchResult result;
    for (const PTrueRow* row : ordered) {
        if (row->logit_true && row->logit_false) {
            result.scores.push_back(estimate_p_true(*row->logit_true, *row->logit_false, row->question_id));
        } else if (row->logit_true) {
            // 'False' token missing: its logprob is -inf equivalent.
            result.scores.push_back(KnowledgeScore{row->question_id, 1.0, ScoreMethod::p_true});
        } else if (row->logit_false) {
            result.scores.push_back(KnowledgeScore{row->question_id, 0.0, ScoreMethod::p_true});
        } else {
            result.failures.push_back({row->question_id, "neither True nor False token observed"});
        }
    }
    return result;
}

} // namespace toolalign::estimators
