#pragma once

// Benefit-cost utility u(y) = 1[correct] - alpha * 1[tool], the induced
// four-way preference ordering nc > tc > nw > tw, threshold policies over
// knowledge scores, policy simulation and the unique-score threshold sweep.

#include "toolalign/types.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace toolalign::decision {

// Answer directly iff score >= threshold; the above_max sentinel forces tool
// use on every record. threshold == min score is the exact no-tool policy.
struct ThresholdPolicy {
    double threshold = 0.0;
    bool above_max = false;

    static ThresholdPolicy at(double threshold) { return ThresholdPolicy{threshold, false}; }
    static ThresholdPolicy all_tool() { return ThresholdPolicy{0.0, true}; }

    bool answers_directly(double score) const { return !above_max && score >= threshold; }
};

// Throws Error("alpha breaks preference ordering") outside (0,1).
void validate_alpha(double alpha);

double utility(const Outcome& outcome, const ToolSpec& tool);
double category_utility(OutcomeCategory category, const ToolSpec& tool);

// [nc, tc, nw, tw]; equals the categories sorted by utility descending for
// every alpha in (0,1).
std::array<OutcomeCategory, 4> preference_order(const ToolSpec& tool);

// accuracy = mean 1[correct], tool_ratio = mean 1[tool],
// utility = accuracy - alpha * tool_ratio (== mean per-record utility).
MetricsSummary aggregate(const std::vector<Outcome>& outcomes, const ToolSpec& tool);

// Expected-value simulation: a direct answer is correct with probability
// score.value, a tool answer with probability q_tool.
MetricsSummary simulate_expected(const std::vector<KnowledgeScore>& scores,
                                 const ThresholdPolicy& policy, const ToolSpec& tool);

struct RealizedResult {
    std::vector<Outcome> outcomes;
    MetricsSummary metrics;
};

// Realized-draw simulation: direct records use the given correctness flag,
// tool records draw Bernoulli(q_tool) from a per-record stream derived from
// seed, so results are deterministic and independent of evaluation order.
RealizedResult simulate_realized(const std::vector<KnowledgeScore>& scores,
                                 const std::map<std::string, bool>& direct_correct,
                                 const ThresholdPolicy& policy, const ToolSpec& tool,
                                 std::uint64_t seed);

struct ExpectedMode {};
struct RealizedMode {
    std::map<std::string, bool> direct_correct;
    std::uint64_t seed = 0;
};
using SimMode = std::variant<ExpectedMode, RealizedMode>;

MetricsSummary simulate(const std::vector<KnowledgeScore>& scores, const ThresholdPolicy& policy,
                        const ToolSpec& tool, const SimMode& mode);

struct CurvePoint {
    ThresholdPolicy policy;
    MetricsSummary metrics;
};

struct SweepResult {
    ThresholdPolicy best_threshold;
    double best_utility = 0.0;
    // Every unique score as a candidate threshold plus the above_max
    // sentinel, in ascending threshold order (sentinel last).
    std::vector<CurvePoint> curve;
};

// Ties break toward lower tool_ratio, then lower threshold.
SweepResult sweep_thresholds(const std::vector<KnowledgeScore>& scores, const ToolSpec& tool,
                             const SimMode& mode = ExpectedMode{});

// threshold,accuracy,tool_ratio,utility rows; the sentinel renders as
// "above_max".
void write_sweep_csv(const std::string& path, const SweepResult& sweep);
void write_sweep_summary(const std::string& path, const SweepResult& sweep, const ToolSpec& tool,
                         std::size_t n);

} // namespace toolalign::decision
