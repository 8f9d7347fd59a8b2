// toolalign: batch CLI for the knowledge-boundary alignment pipeline.
// Typical flow: gen-arith -> respond -> estimate -> sweep / analyze -> build-sft.

#include "toolalign/analysis.hpp"
#include "toolalign/answer.hpp"
#include "toolalign/decision.hpp"
#include "toolalign/endpoint.hpp"
#include "toolalign/error.hpp"
#include "toolalign/estimators.hpp"
#include "toolalign/expr.hpp"
#include "toolalign/jsonl.hpp"
#include "toolalign/sftgen.hpp"
#include "toolalign/synthetic.hpp"
#include "toolalign/taskgen.hpp"
#include "toolalign/templates.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace toolalign;

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2; // some records failed; failure log written

std::vector<double> parse_ratio_list(const std::string& text) {
    std::vector<double> ratios;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        ratios.push_back(std::stod(item));
    }
    if (ratios.empty()) throw Error("empty ratio list");
    for (double r : ratios)
        if (r < 0.0 || r > 1.0) throw Error("ratio outside [0,1]: " + std::to_string(r));
    if (!std::is_sorted(ratios.begin(), ratios.end()))
        throw Error("ratios must be sorted ascending");
    return ratios;
}

std::vector<double> default_ratios() {
    std::vector<double> ratios;
    for (int i = 0; i <= 20; ++i) ratios.push_back(static_cast<double>(i) / 20.0);
    return ratios;
}

responders::SyntheticSkillProfile parse_skill(const std::string& spec) {
    responders::SyntheticSkillProfile profile;
    if (spec == "uniform") {
        profile.distribution = responders::SkillDistribution::uniform;
        return profile;
    }
    if (spec.rfind("beta:", 0) == 0) {
        profile.distribution = responders::SkillDistribution::beta;
        const auto comma = spec.find(',', 5);
        if (comma == std::string::npos) throw Error("expected beta:a,b");
        profile.beta_a = std::stod(spec.substr(5, comma - 5));
        profile.beta_b = std::stod(spec.substr(comma + 1));
        return profile;
    }
    if (spec.rfind("fixed:", 0) == 0) {
        profile.distribution = responders::SkillDistribution::fixed;
        profile.fixed.clear();
        std::stringstream stream(spec.substr(6));
        std::string item;
        while (std::getline(stream, item, ',')) profile.fixed.push_back(std::stod(item));
        if (profile.fixed.empty()) throw Error("expected fixed:p1[,p2,...]");
        return profile;
    }
    throw Error("unknown skill spec '" + spec + "' (uniform | beta:a,b | fixed:p1,...)");
}

ToolSpec resolve_tool(const std::string& tool_name, double alpha, double q_tool) {
    if (!tool_name.empty()) {
        ToolSpec tool = ToolSpec::preset(tool_name, q_tool);
        if (alpha > 0.0) tool.alpha = alpha; // explicit --alpha overrides the preset
        return tool;
    }
    if (alpha <= 0.0) throw Error("need --tool or --alpha");
    return ToolSpec{"tool", alpha, q_tool};
}

PromptTemplates resolve_templates(const std::string& dir) {
    return dir.empty() ? PromptTemplates::builtin() : PromptTemplates::load_dir(dir);
}

void write_failures(const std::string& path, const std::vector<estimators::BatchFailure>& failures) {
    std::ofstream out(path, std::ios::trunc);
    for (const auto& failure : failures) {
        nlohmann::ordered_json obj;
        obj["question_id"] = failure.question_id;
        obj["error"] = failure.reason;
        out << obj.dump() << '\n';
    }
}

// Correctness of the first logged sample per question: the realized outcome
// of answering directly once.
std::map<std::string, bool> first_sample_correctness(const std::vector<QuestionRecord>& records,
                                                     const std::vector<SampleSet>& sets) {
    std::map<std::string, const QuestionRecord*> by_id;
    for (const auto& record : records) by_id[record.id] = &record;
    std::map<std::string, bool> flags;
    for (const auto& set : sets) {
        const auto it = by_id.find(set.question_id);
        if (it == by_id.end()) throw Error("no question record for id '" + set.question_id + "'");
        flags[set.question_id] = is_correct(set.samples.front().answer_text,
                                            it->second->ground_truth, it->second->task_kind);
    }
    return flags;
}

int cmd_gen_arith(std::size_t count, std::size_t max_digits, const std::string& ops,
                  std::uint64_t seed, bool integer_only, const std::string& templates_dir,
                  const std::string& out) {
    arith::TaskGenConfig config;
    config.max_digits = max_digits;
    config.ops = ops;
    config.integer_only = integer_only;
    config.templates = resolve_templates(templates_dir).arithmetic_questions;
    const auto records = arith::generate_tasks(config, seed, count);
    save_questions(out, records);
    std::fprintf(stderr, "gen-arith: wrote %zu questions to %s\n", records.size(), out.c_str());
    return kExitOk;
}

int cmd_respond(const std::string& questions_path, const std::string& mode,
                const std::string& skill_spec, double sigma, std::size_t n_samples,
                std::uint64_t seed, const std::string& out, const std::string& emit_skills,
                responders::EndpointConfig endpoint, bool resume,
                const std::string& templates_dir) {
    const auto records = load_questions(questions_path);
    if (mode == "synthetic") {
        auto profile = parse_skill(skill_spec);
        profile.sigma = sigma;
        const auto sets = responders::synth_respond_all(records, profile, n_samples, seed);
        save_samples(out, sets);
        if (!emit_skills.empty()) {
            std::vector<KnowledgeScore> skills;
            for (std::size_t i = 0; i < records.size(); ++i) {
                skills.push_back(KnowledgeScore{records[i].id,
                                                responders::latent_skill(profile, records[i], seed, i),
                                                ScoreMethod::absolute});
            }
            std::sort(skills.begin(), skills.end(),
                      [](const KnowledgeScore& a, const KnowledgeScore& b) {
                          return a.question_id < b.question_id;
                      });
            save_scores(emit_skills, skills);
        }
        std::fprintf(stderr, "respond: wrote %zu sample sets to %s\n", sets.size(), out.c_str());
        return kExitOk;
    }
    if (mode == "endpoint") {
        if (!resume && std::filesystem::exists(out)) std::filesystem::remove(out);
        endpoint.n_per_question = n_samples;
        const auto stats = responders::collect(records, endpoint, resolve_templates(templates_dir), out);
        std::fprintf(stderr, "respond: %zu collected, %zu skipped, %zu failed\n", stats.completed,
                     stats.skipped, stats.failed);
        return stats.failed == 0 ? kExitOk : kExitPartial;
    }
    throw Error("unknown mode '" + mode + "' (synthetic | endpoint)");
}

int cmd_estimate(const std::string& questions_path, const std::string& samples_path,
                 const std::string& method_name, const std::string& ptrue_path,
                 std::size_t min_samples, const std::string& out, std::string failures_path) {
    const ScoreMethod method = score_method_from_string(method_name);
    estimators::BatchResult result;
    if (method == ScoreMethod::p_true) {
        if (ptrue_path.empty())
            throw Error("method p_true needs --ptrue-logits (the auxiliary logits JSONL)");
        result = estimators::estimate_ptrue_batch(load_ptrue_rows(ptrue_path));
    } else {
        if (samples_path.empty()) throw Error("need --samples");
        std::vector<QuestionRecord> records;
        if (!questions_path.empty()) records = load_questions(questions_path);
        estimators::EstimatorConfig config;
        config.method = method;
        config.min_samples = min_samples;
        result = estimators::estimate_batch(load_samples(samples_path), records, config);
    }
    save_scores(out, result.scores);
    if (failures_path.empty()) failures_path = out + ".failures.jsonl";
    if (!result.failures.empty()) {
        write_failures(failures_path, result.failures);
        std::fprintf(stderr, "estimate: %zu scores, %zu failures (%s)\n", result.scores.size(),
                     result.failures.size(), failures_path.c_str());
        return kExitPartial;
    }
    std::fprintf(stderr, "estimate: wrote %zu scores to %s\n", result.scores.size(), out.c_str());
    return kExitOk;
}

int cmd_sweep(const std::string& scores_path, const std::string& tool_name, double alpha,
              double q_tool, const std::string& mode, const std::string& questions_path,
              const std::string& samples_path, std::uint64_t seed, const std::string& out_dir) {
    const auto scores = load_scores(scores_path);
    const ToolSpec tool = resolve_tool(tool_name, alpha, q_tool);

    decision::SimMode sim_mode = decision::ExpectedMode{};
    if (mode == "realized") {
        if (questions_path.empty() || samples_path.empty())
            throw Error("realized mode needs --questions and --samples for correctness flags");
        sim_mode = decision::RealizedMode{
            first_sample_correctness(load_questions(questions_path), load_samples(samples_path)),
            seed};
    } else if (mode != "expected") {
        throw Error("unknown mode '" + mode + "' (expected | realized)");
    }

    const auto sweep = decision::sweep_thresholds(scores, tool, sim_mode);
    std::filesystem::create_directories(out_dir);
    decision::write_sweep_csv(out_dir + "/sweep.csv", sweep);
    decision::write_sweep_summary(out_dir + "/summary.json", sweep, tool, scores.size());
    if (sweep.best_threshold.above_max)
        std::fprintf(stderr, "sweep: best threshold above_max, utility %.6f\n", sweep.best_utility);
    else
        std::fprintf(stderr, "sweep: best threshold %.6f, utility %.6f\n",
                     sweep.best_threshold.threshold, sweep.best_utility);
    return kExitOk;
}

int cmd_build_sft(const std::string& questions_path, const std::string& samples_path,
                  const std::string& scores_path, const std::string& kind,
                  const std::string& ratio_list, const std::string& tool_name, double alpha,
                  double q_tool, const std::string& out, const std::string& out_dir,
                  const std::string& templates_dir) {
    const auto records = load_questions(questions_path);
    const auto samples = samples_path.empty() ? std::vector<SampleSet>{} : load_samples(samples_path);
    const auto scores = load_scores(scores_path);
    const auto templates = resolve_templates(templates_dir);

    if (kind == "explicit") {
        if (out.empty()) throw Error("explicit kind needs --out");
        const auto examples = sftgen::build_explicit(records, scores, samples, templates);
        sftgen::save_sft(out, examples);
        std::fprintf(stderr, "build-sft: wrote %zu explicit examples to %s\n", examples.size(),
                     out.c_str());
        return kExitOk;
    }
    if (kind != "implicit") throw Error("unknown kind '" + kind + "' (implicit | explicit)");

    const ToolSpec tool = resolve_tool(tool_name, alpha, q_tool);
    const auto ratios = parse_ratio_list(ratio_list);
    if (ratios.size() == 1) {
        if (out.empty()) throw Error("implicit kind with one ratio needs --out");
        const auto examples = sftgen::build_implicit(records, scores, ratios.front(), tool, samples,
                                                     templates);
        sftgen::save_sft(out, examples);
        std::fprintf(stderr, "build-sft: wrote %zu implicit examples (r=%.3f) to %s\n",
                     examples.size(), ratios.front(), out.c_str());
        return kExitOk;
    }
    // Implicit modeling trains one model per ratio, so each ratio gets its
    // own file.
    if (out_dir.empty()) throw Error("multiple ratios need --out-dir");
    std::filesystem::create_directories(out_dir);
    for (double ratio : ratios) {
        char name[64];
        std::snprintf(name, sizeof(name), "sft_implicit_r%.2f.jsonl", ratio);
        const auto examples = sftgen::build_implicit(records, scores, ratio, tool, samples, templates);
        sftgen::save_sft(out_dir + "/" + name, examples);
    }
    std::fprintf(stderr, "build-sft: wrote %zu ratio files to %s\n", ratios.size(), out_dir.c_str());
    return kExitOk;
}

int cmd_analyze(const std::string& scores_path, const std::string& decisions_path,
                const std::string& tool_name, double alpha, double q_tool, double kappa,
                const std::string& ratio_list, const std::string& mode,
                const std::string& questions_path, const std::string& samples_path,
                std::uint64_t seed, const std::string& out_dir) {
    const auto scores = load_scores(scores_path);
    const ToolSpec tool = resolve_tool(tool_name, alpha, q_tool);
    const auto ratios = ratio_list.empty() ? default_ratios() : parse_ratio_list(ratio_list);

    decision::SimMode sim_mode = decision::ExpectedMode{};
    if (mode == "realized") {
        if (questions_path.empty() || samples_path.empty())
            throw Error("realized mode needs --questions and --samples");
        sim_mode = decision::RealizedMode{
            first_sample_correctness(load_questions(questions_path), load_samples(samples_path)),
            seed};
    } else if (mode != "expected") {
        throw Error("unknown mode '" + mode + "' (expected | realized)");
    }

    const auto ratio_curve = analysis::utility_ratio_curve(scores, tool, ratios, sim_mode);
    const auto tradeoff = analysis::tradeoff_curve(scores, kappa, ratios);

    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& score : scores) values.push_back(score.value);

    // Bucket either the logged decisions or the best-utility ratio policy.
    std::vector<bool> used_tool;
    std::string bucket_source;
    if (!decisions_path.empty()) {
        std::map<std::string, bool> logged;
        std::ifstream in(decisions_path);
        if (!in) throw Error("cannot open " + decisions_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto obj = nlohmann::json::parse(line);
            logged[obj.at("question_id").get<std::string>()] = obj.at("used_tool").get<bool>();
        }
        for (const auto& score : scores) {
            const auto it = logged.find(score.question_id);
            if (it == logged.end())
                throw Error("no logged decision for question '" + score.question_id + "'");
            used_tool.push_back(it->second);
        }
        bucket_source = "decisions file";
    } else {
        const auto& policy = ratio_curve.points[ratio_curve.peak_index].policy;
        for (const auto& score : scores) used_tool.push_back(!policy.answers_directly(score.value));
        bucket_source = "best-utility ratio policy";
    }
    const auto buckets = analysis::bucket_distribution(used_tool, values, kappa, 10);
    const auto report = analysis::miscalibration(used_tool, values, kappa);

    std::filesystem::create_directories(out_dir);
    analysis::write_ratio_curve_csv(out_dir + "/ratio_curve.csv", ratio_curve);
    analysis::write_tradeoff_csv(out_dir + "/tradeoff.csv", tradeoff);
    analysis::write_buckets_csv(out_dir + "/buckets.csv", buckets);

    nlohmann::ordered_json out;
    out["n"] = scores.size();
    out["tool"] = tool.name;
    out["alpha"] = tool.alpha;
    out["q_tool"] = tool.q_tool;
    out["kappa"] = kappa;
    out["peak_ratio"] = ratio_curve.points[ratio_curve.peak_index].ratio;
    out["peak_utility"] = ratio_curve.points[ratio_curve.peak_index].metrics.utility;
    out["min_combined_ratio"] = tradeoff.points[tradeoff.min_index].ratio;
    out["min_combined"] = tradeoff.points[tradeoff.min_index].report.combined;
    out["bucket_source"] = bucket_source;
    out["overconfidence_rate"] = report.overconfidence_rate;
    out["over_reliance_rate"] = report.over_reliance_rate;
    out["combined"] = report.combined;
    std::ofstream report_out(out_dir + "/report.json", std::ios::trunc);
    report_out << out.dump(2) << '\n';

    std::fprintf(stderr, "analyze: peak ratio %.3f (utility %.4f), min combined %.4f at ratio %.3f\n",
                 out["peak_ratio"].get<double>(), out["peak_utility"].get<double>(),
                 out["min_combined"].get<double>(), out["min_combined_ratio"].get<double>());
    return kExitOk;
}

int cmd_elicit_ptrue(const std::string& questions_path, const std::string& samples_path,
                     responders::EndpointConfig endpoint, const std::string& templates_dir,
                     const std::string& out) {
    const auto records = load_questions(questions_path);
    const auto sets = load_samples(samples_path);
    std::vector<std::pair<std::string, std::string>> answers;
    answers.reserve(sets.size());
    for (const auto& set : sets)
        answers.emplace_back(set.question_id, set.samples.front().answer_text);
    const auto stats = responders::elicit_ptrue_all(records, answers, endpoint,
                                                    resolve_templates(templates_dir), out);
    std::fprintf(stderr, "elicit-ptrue: %zu rows, %zu failed\n", stats.rows.size(), stats.failed);
    return stats.failed == 0 ? kExitOk : kExitPartial;
}

int cmd_calc(const std::string& expression, const std::string& tool_call) {
    if (!tool_call.empty()) {
        std::printf("%s\n", arith::execute_tool_call(tool_call).c_str());
        return kExitOk;
    }
    if (expression.empty()) throw Error("need --expr or --tool-call");
    const auto expr = arith::parse(expression);
    std::printf("%s\n", arith::evaluate(*expr).to_string().c_str());
    return kExitOk;
}

int cmd_icl(const std::string& questions_path, const std::string& samples_path,
            std::size_t n_correct, std::size_t n_incorrect, std::uint64_t seed,
            const std::string& out) {
    const auto block = sftgen::build_icl_examples(load_questions(questions_path),
                                                  load_samples(samples_path), n_correct,
                                                  n_incorrect, seed);
    std::ofstream file(out, std::ios::trunc);
    if (!file) throw Error("cannot write " + out);
    file << block << '\n';
    std::fprintf(stderr, "icl: wrote %zu example block to %s\n", n_correct + n_incorrect,
                 out.c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knowledge-boundary alignment toolkit for efficient tool calling"};
    app.require_subcommand(1);

    // gen-arith
    std::size_t gen_count = 1000;
    std::size_t gen_max_digits = 9;
    std::string gen_ops = "+-*/";
    std::uint64_t gen_seed = 0;
    bool gen_integer_only = false;
    std::string gen_templates;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-arith", "Generate arithmetic questions JSONL");
    gen->add_option("--count", gen_count, "Number of questions");
    gen->add_option("--max-digits", gen_max_digits, "Max operand digits (1-18)");
    gen->add_option("--ops", gen_ops, "Operator pool, e.g. \"+-*/\"");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_flag("--integer-only", gen_integer_only, "Only integer-valued tasks");
    gen->add_option("--templates-dir", gen_templates, "Editable template directory");
    gen->add_option("--out", gen_out, "Output questions JSONL")->required();

    // respond
    std::string rsp_questions;
    std::string rsp_mode = "synthetic";
    std::string rsp_skill = "uniform";
    double rsp_sigma = 0.0;
    std::size_t rsp_n = 10;
    std::uint64_t rsp_seed = 0;
    std::string rsp_out;
    std::string rsp_emit_skills;
    bool rsp_resume = false;
    std::string rsp_templates;
    responders::EndpointConfig rsp_endpoint;
    auto* rsp = app.add_subcommand("respond", "Sample responses (synthetic or endpoint)");
    rsp->add_option("--questions", rsp_questions, "Questions JSONL")->required();
    rsp->add_option("--mode", rsp_mode, "synthetic | endpoint");
    rsp->add_option("--skill", rsp_skill, "uniform | beta:a,b | fixed:p1,...");
    rsp->add_option("--sigma", rsp_sigma, "Logprob noise scale");
    rsp->add_option("--n-samples", rsp_n, "Samples per question");
    rsp->add_option("--seed", rsp_seed, "Random seed");
    rsp->add_option("--out", rsp_out, "Output samples JSONL")->required();
    rsp->add_option("--emit-skills", rsp_emit_skills, "Also write latent skills as a scores JSONL");
    rsp->add_flag("--resume", rsp_resume, "Skip question_ids already in the output file");
    rsp->add_option("--templates-dir", rsp_templates, "Editable template directory");
    rsp->add_option("--endpoint-url", rsp_endpoint.base_url, "OpenAI-compatible base URL");
    rsp->add_option("--model", rsp_endpoint.model, "Model name");
    rsp->add_option("--temperature", rsp_endpoint.temperature, "Sampling temperature");
    rsp->add_option("--max-tokens", rsp_endpoint.max_tokens, "Max tokens per sample");
    rsp->add_option("--timeout", rsp_endpoint.timeout_seconds, "Request timeout (s)");
    rsp->add_option("--max-retries", rsp_endpoint.max_retries, "Retry count");
    rsp->add_option("--concurrency", rsp_endpoint.concurrency, "In-flight request limit");

    // estimate
    std::string est_questions;
    std::string est_samples;
    std::string est_method = "consistency";
    std::string est_ptrue;
    std::size_t est_min_samples = 1;
    std::string est_out;
    std::string est_failures;
    auto* est = app.add_subcommand("estimate", "Compute knowledge scores from samples");
    est->add_option("--questions", est_questions, "Questions JSONL (required for absolute)");
    est->add_option("--samples", est_samples, "Samples JSONL");
    est->add_option("--method", est_method,
                    "consistency | absolute | raw_logits | p_true | verb_1s | verb_2s");
    est->add_option("--ptrue-logits", est_ptrue, "Auxiliary P(True) logits JSONL");
    est->add_option("--min-samples", est_min_samples, "Minimum samples per question");
    est->add_option("--out", est_out, "Output scores JSONL")->required();
    est->add_option("--failures", est_failures, "Failure log path");

    // sweep
    std::string swp_scores;
    std::string swp_tool;
    double swp_alpha = 0.0;
    double swp_q = 1.0;
    std::string swp_mode = "expected";
    std::string swp_questions;
    std::string swp_samples;
    std::uint64_t swp_seed = 0;
    std::string swp_out_dir;
    auto* swp = app.add_subcommand("sweep", "Threshold sweep over unique scores");
    swp->add_option("--scores", swp_scores, "Scores JSONL")->required();
    swp->add_option("--tool", swp_tool, "calculator | search_info | math_solver");
    swp->add_option("--alpha", swp_alpha, "Tool cost in (0,1)");
    swp->add_option("--q-tool", swp_q, "Tool success probability");
    swp->add_option("--mode", swp_mode, "expected | realized");
    swp->add_option("--questions", swp_questions, "Questions JSONL (realized mode)");
    swp->add_option("--samples", swp_samples, "Samples JSONL (realized mode)");
    swp->add_option("--seed", swp_seed, "Seed for realized tool draws");
    swp->add_option("--out-dir", swp_out_dir, "Output directory")->required();

    // build-sft
    std::string sft_questions;
    std::string sft_samples;
    std::string sft_scores;
    std::string sft_kind = "implicit";
    std::string sft_ratios = "0.5";
    std::string sft_tool = "calculator";
    double sft_alpha = 0.0;
    double sft_q = 1.0;
    std::string sft_out;
    std::string sft_out_dir;
    std::string sft_templates;
    auto* sft = app.add_subcommand("build-sft", "Construct SFT datasets");
    sft->add_option("--questions", sft_questions, "Questions JSONL")->required();
    sft->add_option("--samples", sft_samples, "Samples JSONL (for in-distribution targets)");
    sft->add_option("--scores", sft_scores, "Scores JSONL")->required();
    sft->add_option("--kind", sft_kind, "implicit | explicit");
    sft->add_option("--ratio,--ratios", sft_ratios, "Tool ratio(s), comma separated");
    sft->add_option("--tool", sft_tool, "Tool for implicit targets");
    sft->add_option("--alpha", sft_alpha, "Tool cost override");
    sft->add_option("--q-tool", sft_q, "Tool success probability");
    sft->add_option("--out", sft_out, "Output JSONL (single ratio / explicit)");
    sft->add_option("--out-dir", sft_out_dir, "Output directory (multiple ratios)");
    sft->add_option("--templates-dir", sft_templates, "Editable template directory");

    // analyze
    std::string ana_scores;
    std::string ana_decisions;
    std::string ana_tool;
    double ana_alpha = 0.0;
    double ana_q = 1.0;
    double ana_kappa = 0.5;
    std::string ana_ratios;
    std::string ana_mode = "expected";
    std::string ana_questions;
    std::string ana_samples;
    std::uint64_t ana_seed = 0;
    std::string ana_out_dir;
    auto* ana = app.add_subcommand("analyze", "Tradeoff, ratio-curve and bucket analyses");
    ana->add_option("--scores", ana_scores, "Scores JSONL")->required();
    ana->add_option("--decisions", ana_decisions, "Logged decisions JSONL {question_id, used_tool}");
    ana->add_option("--tool", ana_tool, "calculator | search_info | math_solver");
    ana->add_option("--alpha", ana_alpha, "Tool cost in (0,1)");
    ana->add_option("--q-tool", ana_q, "Tool success probability");
    ana->add_option("--kappa", ana_kappa, "Capability cutoff in (0,1)");
    ana->add_option("--ratios", ana_ratios, "Comma-separated ratios (default 0,0.05,...,1)");
    ana->add_option("--mode", ana_mode, "expected | realized");
    ana->add_option("--questions", ana_questions, "Questions JSONL (realized mode)");
    ana->add_option("--samples", ana_samples, "Samples JSONL (realized mode)");
    ana->add_option("--seed", ana_seed, "Seed for realized tool draws");
    ana->add_option("--out-dir", ana_out_dir, "Output directory")->required();

    // elicit-ptrue
    std::string pt_questions;
    std::string pt_samples;
    std::string pt_out;
    std::string pt_templates;
    responders::EndpointConfig pt_endpoint;
    auto* pt = app.add_subcommand("elicit-ptrue", "Collect P(True) logits from an endpoint");
    pt->add_option("--questions", pt_questions, "Questions JSONL")->required();
    pt->add_option("--samples", pt_samples, "Samples JSONL (first answer is judged)")->required();
    pt->add_option("--out", pt_out, "Output logits JSONL")->required();
    pt->add_option("--templates-dir", pt_templates, "Editable template directory");
    pt->add_option("--endpoint-url", pt_endpoint.base_url, "OpenAI-compatible base URL");
    pt->add_option("--model", pt_endpoint.model, "Model name");
    pt->add_option("--timeout", pt_endpoint.timeout_seconds, "Request timeout (s)");
    pt->add_option("--max-retries", pt_endpoint.max_retries, "Retry count");

    // calc
    std::string calc_expr;
    std::string calc_tool_call;
    auto* calc = app.add_subcommand("calc", "Evaluate an expression exactly");
    calc->add_option("--expr", calc_expr, "Arithmetic expression");
    calc->add_option("--tool-call", calc_tool_call,
                     "Tool-call JSON, e.g. {\"tool_name\":\"calculator\",\"expression\":\"1+2\"}");

    // icl
    std::string icl_questions;
    std::string icl_samples;
    std::size_t icl_correct = 5;
    std::size_t icl_incorrect = 5;
    std::uint64_t icl_seed = 0;
    std::string icl_out;
    auto* icl = app.add_subcommand("icl", "Build the {example} block for ICL prompts");
    icl->add_option("--questions", icl_questions, "Questions JSONL")->required();
    icl->add_option("--samples", icl_samples, "Samples JSONL")->required();
    icl->add_option("--n-correct", icl_correct, "Direct-answer examples");
    icl->add_option("--n-incorrect", icl_incorrect, "Tool-call examples");
    icl->add_option("--seed", icl_seed, "Random seed");
    icl->add_option("--out", icl_out, "Output text file")->required();

    // export-templates
    std::string exp_dir;
    auto* exp = app.add_subcommand("export-templates", "Write the editable template files");
    exp->add_option("--out-dir", exp_dir, "Template directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen_arith(gen_count, gen_max_digits, gen_ops, gen_seed, gen_integer_only,
                                 gen_templates, gen_out);
        if (rsp->parsed())
            return cmd_respond(rsp_questions, rsp_mode, rsp_skill, rsp_sigma, rsp_n, rsp_seed,
                               rsp_out, rsp_emit_skills, rsp_endpoint, rsp_resume, rsp_templates);
        if (est->parsed())
            return cmd_estimate(est_questions, est_samples, est_method, est_ptrue, est_min_samples,
                                est_out, est_failures);
        if (swp->parsed())
            return cmd_sweep(swp_scores, swp_tool, swp_alpha, swp_q, swp_mode, swp_questions,
                             swp_samples, swp_seed, swp_out_dir);
        if (sft->parsed())
            return cmd_build_sft(sft_questions, sft_samples, sft_scores, sft_kind, sft_ratios,
                                 sft_tool, sft_alpha, sft_q, sft_out, sft_out_dir, sft_templates);
        if (ana->parsed())
            return cmd_analyze(ana_scores, ana_decisions, ana_tool, ana_alpha, ana_q, ana_kappa,
                               ana_ratios, ana_mode, ana_questions, ana_samples, ana_seed,
                               ana_out_dir);
        if (pt->parsed())
            return cmd_elicit_ptrue(pt_questions, pt_samples, pt_endpoint, pt_templates, pt_out);
        if (calc->parsed()) return cmd_calc(calc_expr, calc_tool_call);
        if (icl->parsed())
            return cmd_icl(icl_questions, icl_samples, icl_correct, icl_incorrect, icl_seed, icl_out);
        if (exp->parsed()) {
            PromptTemplates::builtin().export_dir(exp_dir);
            std::fprintf(stderr, "export-templates: wrote %s\n", exp_dir.c_str());
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFatal;
    }
    return kExitFatal;
}
