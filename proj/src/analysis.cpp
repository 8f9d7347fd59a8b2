#include "toolalign/analysis.hpp"

#include "toolalign/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace toolalign::analysis {

namespace {

void validate_kappa(double kappa) {
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw Error("kappa must be in (0,1), got " + std::to_string(kappa));
}

std::ofstream open_csv(const std::string& path) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    return out;
}

} // namespace

Alignment classify_record(bool used_tool, double absolute_score, double kappa) {
    validate_kappa(kappa);
    const bool capable = absolute_score >= kappa;
    if (!used_tool && !capable) return Alignment::overconfident;
    if (used_tool && capable) return Alignment::over_reliant;
    return Alignment::aligned;
}

MiscalibrationReport miscalibration(const std::vector<bool>& used_tool,
                                    const std::vector<double>& absolute_scores, double kappa) {
    validate_kappa(kappa);
    if (used_tool.size() != absolute_scores.size())
        throw Error("miscalibration: " + std::to_string(used_tool.size()) + " decisions vs " +
                    std::to_string(absolute_scores.size()) + " scores");
    if (used_tool.empty()) throw Error("miscalibration: empty input");
    std::size_t overconfident = 0;
    std::size_t over_reliant = 0;
    for (std::size_t i = 0; i < used_tool.size(); ++i) {
        switch (classify_record(used_tool[i], absolute_scores[i], kappa)) {
            case Alignment::overconfident: ++overconfident; break;
            case Alignment::over_reliant: ++over_reliant; break;
            case Alignment::aligned: break;
        }
    }
    MiscalibrationReport report;
    const auto n = static_cast<double>(used_tool.size());
    report.overconfidence_rate = static_cast<double>(overconfident) / n;
    report.over_reliance_rate = static_cast<double>(over_reliant) / n;
    report.combined = report.overconfidence_rate + report.over_reliance_rate;
    report.kappa = kappa;
    return report;
}

std::vector<BucketRow> bucket_distribution(const std::vector<bool>& used_tool,
                                           const std::vector<double>& absolute_scores, double kappa,
                                           std::size_t n_buckets) {
    validate_kappa(kappa);
    if (n_buckets < 2) throw Error("bucket_distribution: need at least 2 buckets");
    if (used_tool.size() != absolute_scores.size())
        throw Error("bucket_distribution: decisions/scores length mismatch");

    std::vector<std::size_t> counts(n_buckets, 0);
    std::vector<std::size_t> tooled(n_buckets, 0);
    std::vector<std::size_t> over_reliant(n_buckets, 0);
    for (std::size_t i = 0; i < absolute_scores.size(); ++i) {
        const double score = absolute_scores[i];
        if (score < 0.0 || score > 1.0)
            throw Error("bucket_distribution: score outside [0,1]: " + std::to_string(score));
        auto bucket = static_cast<std::size_t>(score * static_cast<double>(n_buckets));
        if (bucket >= n_buckets) bucket = n_buckets - 1; // score == 1.0 lands in the last bin
        ++counts[bucket];
        if (used_tool[i]) {
            ++tooled[bucket];
            if (score >= kappa) ++over_reliant[bucket];
        }
    }

    std::vector<BucketRow> rows(n_buckets);
    for (std::size_t b = 0; b < n_buckets; ++b) {
        rows[b].lo = static_cast<double>(b) / static_cast<double>(n_buckets);
        rows[b].hi = static_cast<double>(b + 1) / static_cast<double>(n_buckets);
        rows[b].n = counts[b];
        if (counts[b] > 0) {
            rows[b].tool_rate = static_cast<double>(tooled[b]) / static_cast<double>(counts[b]);
            rows[b].over_reliance_rate =
                static_cast<double>(over_reliant[b]) / static_cast<double>(counts[b]);
        }
    }
    return rows;
}

decision::ThresholdPolicy quantile_policy(const std::vector<KnowledgeScore>& scores, double ratio) {
    if (scores.empty()) throw Error("quantile_policy: no scores");
    if (ratio < 0.0 || ratio > 1.0)
        throw Error("quantile_policy: ratio outside [0,1]: " + std::to_string(ratio));
    std::vector<double> sorted;
    sorted.reserve(scores.size());
    for (const auto& score : scores) sorted.push_back(score.value);
    std::sort(sorted.begin(), sorted.end());

    const auto n = sorted.size();
    auto want = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
    if (want > n) want = n;
    if (want == 0) return decision::ThresholdPolicy::at(sorted.front());

    // Tool set = { score < t }. Pick t as the first value strictly above the
    // want-th lowest score so duplicates all land on the tool side.
    const double cutoff = sorted[want - 1];
    const auto above = std::upper_bound(sorted.begin(), sorted.end(), cutoff);
    if (above == sorted.end()) return decision::ThresholdPolicy::all_tool();
    return decision::ThresholdPolicy::at(*above);
}

RatioCurve utility_ratio_curve(const std::vector<KnowledgeScore>& scores, const ToolSpec& tool,
                               const std::vector<double>& ratios, const decision::SimMode& mode) {
    if (!std::is_sorted(ratios.begin(), ratios.end()))
        throw Error("utility_ratio_curve: ratios must be sorted ascending");
    RatioCurve curve;
    for (double ratio : ratios) {
        RatioPoint point;
        point.ratio = ratio;
        point.policy = quantile_policy(scores, ratio);
        point.metrics = decision::simulate(scores, point.policy, tool, mode);
        curve.points.push_back(std::move(point));
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (curve.points[i].metrics.utility > curve.points[curve.peak_index].metrics.utility)
            curve.peak_index = i;
    }
    return curve;
}

TradeoffCurve tradeoff_curve(const std::vector<KnowledgeScore>& scores, double kappa,
                             const std::vector<double>& ratios) {
    if (!std::is_sorted(ratios.begin(), ratios.end()))
        throw Error("tradeoff_curve: ratios must be sorted ascending");
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& score : scores) values.push_back(score.value);

    TradeoffCurve curve;
    for (double ratio : ratios) {
        const auto policy = quantile_policy(scores, ratio);
        std::vector<bool> used_tool;
        used_tool.reserve(scores.size());
        for (const auto& score : scores) used_tool.push_back(!policy.answers_directly(score.value));
        curve.points.push_back({ratio, miscalibration(used_tool, values, kappa)});
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (curve.points[i].report.combined < curve.points[curve.min_index].report.combined)
            curve.min_index = i;
    }
    return curve;
}

void write_ratio_curve_csv(const std::string& path, const RatioCurve& curve) {
    auto out = open_csv(path);
    out << "ratio,threshold,accuracy,tool_ratio,utility\n";
    char row[256];
    for (const auto& point : curve.points) {
        if (point.policy.above_max) {
            std::snprintf(row, sizeof(row), "%.12g,above_max,%.12g,%.12g,%.12g\n", point.ratio,
                          point.metrics.accuracy, point.metrics.tool_ratio, point.metrics.utility);
        } else {
            std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g,%.12g,%.12g\n", point.ratio,
                          point.policy.threshold, point.metrics.accuracy, point.metrics.tool_ratio,
                          point.metrics.utility);
        }
        out << row;
    }
}

void write_tradeoff_csv(const std::string& path, const TradeoffCurve& curve) {
    auto out = open_csv(path);
    out << "ratio,overconfidence_rate,over_reliance_rate,combined\n";
    char row[256];
    for (const auto& point : curve.points) {
        std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g,%.12g\n", point.ratio,
                      point.report.overconfidence_rate, point.report.over_reliance_rate,
                      point.report.combined);
        out << row;
    }
}

void write_buckets_csv(const std::string& path, const std::vector<BucketRow>& rows) {
    auto out = open_csv(path);
    out << "bucket_lo,bucket_hi,n,tool_rate,over_reliance_rate\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%zu,", row.lo, row.hi, row.n);
        out << buf;
        if (row.tool_rate) {
            std::snprintf(buf, sizeof(buf), "%.12g", *row.tool_rate);
            out << buf;
        }
        out << ',';
        if (row.over_reliance_rate) {
            std::snprintf(buf, sizeof(buf), "%.12g", *row.over_reliance_rate);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace toolalign::analysis
