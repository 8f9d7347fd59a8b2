#include "toolalign/decision.hpp"

#include "toolalign/error.hpp"
#include "toolalign/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace toolalign::decision {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw Error("alpha breaks preference ordering: need 0 < alpha < 1, got " +
                    std::to_string(alpha));
}

double category_utility(OutcomeCategory category, const ToolSpec& tool) {
    validate_alpha(tool.alpha);
    switch (category) {
        case OutcomeCategory::nc: return 1.0;
        case OutcomeCategory::tc: return 1.0 - tool.alpha;
        case OutcomeCategory::nw: return 0.0;
        case OutcomeCategory::tw: return -tool.alpha;
    }
    return 0.0;
}

double utility(const Outcome& outcome, const ToolSpec& tool) {
    validate_alpha(tool.alpha);
    return (outcome.is_correct ? 1.0 : 0.0) - tool.alpha * (outcome.used_tool ? 1.0 : 0.0);
}

std::array<OutcomeCategory, 4> preference_order(const ToolSpec& tool) {
    validate_alpha(tool.alpha);
    // 1 > 1-alpha > 0 > -alpha holds for every alpha in (0,1).
    return {OutcomeCategory::nc, OutcomeCategory::tc, OutcomeCategory::nw, OutcomeCategory::tw};
}

MetricsSummary aggregate(const std::vector<Outcome>& outcomes, const ToolSpec& tool) {
    validate_alpha(tool.alpha);
    if (outcomes.empty()) throw Error("aggregate: no outcomes");
    std::size_t correct = 0;
    std::size_t tooled = 0;
    for (const auto& outcome : outcomes) {
        correct += outcome.is_correct ? 1 : 0;
        tooled += outcome.used_tool ? 1 : 0;
    }
    MetricsSummary m;
    m.n = outcomes.size();
    const auto n = static_cast<double>(m.n);
    m.accuracy = static_cast<double>(correct) / n;
    m.tool_ratio = static_cast<double>(tooled) / n;
    m.utility = m.accuracy - tool.alpha * m.tool_ratio;
    return m;
}

MetricsSummary simulate_expected(const std::vector<KnowledgeScore>& scores,
                                 const ThresholdPolicy& policy, const ToolSpec& tool) {
    validate_alpha(tool.alpha);
    if (scores.empty()) throw Error("simulate_expected: no scores");
    double accuracy_sum = 0.0;
    std::size_t tooled = 0;
    for (const auto& score : scores) {
        if (policy.answers_directly(score.value)) {
            accuracy_sum += score.value;
        } else {
            accuracy_sum += tool.q_tool;
            ++tooled;
        }
    }
    MetricsSummary m;
    m.n = scores.size();
    const auto n = static_cast<double>(m.n);
    m.accuracy = accuracy_sum / n;
    m.tool_ratio = static_cast<double>(tooled) / n;
    m.utility = m.accuracy - tool.alpha * m.tool_ratio;
    return m;
}

RealizedResult simulate_realized(const std::vector<KnowledgeScore>& scores,
                                 const std::map<std::string, bool>& direct_correct,
                                 const ThresholdPolicy& policy, const ToolSpec& tool,
                                 std::uint64_t seed) {
    validate_alpha(tool.alpha);
    if (scores.empty()) throw Error("simulate_realized: no scores");
    for (const auto& score : scores) {
        if (!direct_correct.count(score.question_id))
            throw Error("no correctness flag for question '" + score.question_id + "'");
    }
    RealizedResult result;
    result.outcomes.reserve(scores.size());
    for (const auto& score : scores) {
        const bool direct = policy.answers_directly(score.value);
        bool correct;
        if (direct) {
            correct = direct_correct.at(score.question_id);
        } else {
            // Per-record stream: the draw for a record is the same under
            // every candidate threshold.
            Rng rng(derive_seed(seed, score.question_id));
            correct = rng.bernoulli(tool.q_tool);
        }
        result.outcomes.push_back(Outcome::make(score.question_id, !direct, correct));
    }
    result.metrics = aggregate(result.outcomes, tool);
    return result;
}

MetricsSummary simulate(const std::vector<KnowledgeScore>& scores, const ThresholdPolicy& policy,
                        const ToolSpec& tool, const SimMode& mode) {
    if (std::holds_alternative<ExpectedMode>(mode)) return simulate_expected(scores, policy, tool);
    const auto& realized = std::get<RealizedMode>(mode);
    return simulate_realized(scores, realized.direct_correct, policy, tool, realized.seed).metrics;
}

SweepResult sweep_thresholds(const std::vector<KnowledgeScore>& scores, const ToolSpec& tool,
                             const SimMode& mode) {
    validate_alpha(tool.alpha);
    if (scores.empty()) throw Error("sweep_thresholds: no scores");

    std::vector<double> candidates;
    candidates.reserve(scores.size());
    for (const auto& score : scores) candidates.push_back(score.value);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    SweepResult result;
    for (double threshold : candidates)
        result.curve.push_back({ThresholdPolicy::at(threshold),
                                simulate(scores, ThresholdPolicy::at(threshold), tool, mode)});
    result.curve.push_back(
        {ThresholdPolicy::all_tool(), simulate(scores, ThresholdPolicy::all_tool(), tool, mode)});

    const CurvePoint* best = &result.curve.front();
    for (const auto& point : result.curve) {
        if (point.metrics.utility > best->metrics.utility) {
            best = &point;
        } else if (point.metrics.utility == best->metrics.utility) {
            if (point.metrics.tool_ratio < best->metrics.tool_ratio) {
                best = &point;
            } else if (point.metrics.tool_ratio == best->metrics.tool_ratio && !point.policy.above_max &&
                       (best->policy.above_max || point.policy.threshold < best->policy.threshold)) {
                best = &point;
            }
        }
    }
    result.best_threshold = best->policy;
    result.best_utility = best->metrics.utility;
    return result;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << "threshold,accuracy,tool_ratio,utility\n";
    char row[256];
    for (const auto& point : sweep.curve) {
        if (point.policy.above_max) {
            std::snprintf(row, sizeof(row), "above_max,%.12g,%.12g,%.12g\n", point.metrics.accuracy,
                          point.metrics.tool_ratio, point.metrics.utility);
        } else {
            std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g,%.12g\n", point.policy.threshold,
                          point.metrics.accuracy, point.metrics.tool_ratio, point.metrics.utility);
        }
        out << row;
    }
}

void write_sweep_summary(const std::string& path, const SweepResult& sweep, const ToolSpec& tool,
                         std::size_t n) {
    nlohmann::ordered_json obj;
    obj["n"] = n;
    obj["tool"] = tool.name;
    obj["alpha"] = tool.alpha;
    obj["q_tool"] = tool.q_tool;
    if (sweep.best_threshold.above_max)
        obj["best_threshold"] = "above_max";
    else
        obj["best_threshold"] = sweep.best_threshold.threshold;
    obj["best_utility"] = sweep.best_utility;
    for (const auto& point : sweep.curve) {
        if (point.policy.above_max == sweep.best_threshold.above_max &&
            (point.policy.above_max || point.policy.threshold == sweep.best_threshold.threshold)) {
            obj["best_accuracy"] = point.metrics.accuracy;
            obj["best_tool_ratio"] = point.metrics.tool_ratio;
            break;
        }
    }
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << obj.dump(2) << '\n';
}

} // namespace toolalign::decision
