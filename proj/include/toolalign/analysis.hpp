#pragma once

// Miscalibration diagnostics and figure-level analyses: overconfidence vs.
// over-tool-reliance rates, accuracy-bucket distributions and utility /
// tradeoff curves over SFT-style tool ratios.

#include "toolalign/decision.hpp"
#include "toolalign/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toolalign::analysis {

enum class Alignment { overconfident, over_reliant, aligned };

struct MiscalibrationReport {
    double overconfidence_rate = 0.0;
    double over_reliance_rate = 0.0;
    double combined = 0.0;
    double kappa = 0.5;
};

struct BucketRow {
    double lo = 0.0;
    double hi = 0.0; // [lo,hi), last bucket closed
    std::size_t n = 0;
    std::optional<double> tool_rate;          // null when the bucket is empty
    std::optional<double> over_reliance_rate;
};

// capable := absolute_score >= kappa. Overconfident = answered directly while
// not capable; over-reliant = invoked the tool while capable.
Alignment classify_record(bool used_tool, double absolute_score, double kappa);

MiscalibrationReport miscalibration(const std::vector<bool>& used_tool,
                                    const std::vector<double>& absolute_scores, double kappa);

std::vector<BucketRow> bucket_distribution(const std::vector<bool>& used_tool,
                                           const std::vector<double>& absolute_scores, double kappa,
                                           std::size_t n_buckets);

// Quantile policy for a target tool ratio: the lowest-score records invoke
// the tool, ties all land on the tool side, so the realized fraction is the
// smallest achievable fraction >= ratio.
decision::ThresholdPolicy quantile_policy(const std::vector<KnowledgeScore>& scores, double ratio);

struct RatioPoint {
    double ratio = 0.0;
    decision::ThresholdPolicy policy;
    MetricsSummary metrics;
};

struct RatioCurve {
    std::vector<RatioPoint> points;
    std::size_t peak_index = 0; // argmax utility
};

// Utility as a function of the tool ratio (the SFT-data-ratio ablation).
RatioCurve utility_ratio_curve(const std::vector<KnowledgeScore>& scores, const ToolSpec& tool,
                               const std::vector<double>& ratios,
                               const decision::SimMode& mode = decision::ExpectedMode{});

struct TradeoffPoint {
    double ratio = 0.0;
    MiscalibrationReport report;
};

struct TradeoffCurve {
    std::vector<TradeoffPoint> points;
    std::size_t min_index = 0; // argmin combined miscalibration
};

// Combined overconfidence + over-reliance as a function of the tool ratio,
// with the scores doubling as the capability measure.
TradeoffCurve tradeoff_curve(const std::vector<KnowledgeScore>& scores, double kappa,
                             const std::vector<double>& ratios);

void write_ratio_curve_csv(const std::string& path, const RatioCurve& curve);
void write_tradeoff_csv(const std::string& path, const TradeoffCurve& curve);
void write_buckets_csv(const std::string& path, const std::vector<BucketRow>& rows);

} // namespace toolalign::analysis
