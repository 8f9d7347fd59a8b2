#include "toolalign/sftgen.hpp"

#include "toolalign/answer.hpp"
#include "toolalign/error.hpp"
#include "toolalign/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

namespace toolalign::sftgen {

namespace {

using json = nlohmann::ordered_json;

std::map<std::string, double> score_map(const std::vector<KnowledgeScore>& scores) {
    std::map<std::string, double> out;
    for (const auto& score : scores) out[score.question_id] = score.value;
    return out;
}

std::map<std::string, const SampleSet*> sample_map(const std::vector<SampleSet>& samples) {
    std::map<std::string, const SampleSet*> out;
    for (const auto& set : samples) out[set.question_id] = &set;
    return out;
}

const std::vector<ResponseSample>& samples_for(
    const std::map<std::string, const SampleSet*>& by_id, const std::string& question_id) {
    static const std::vector<ResponseSample> kEmpty;
    const auto it = by_id.find(question_id);
    return it == by_id.end() ? kEmpty : it->second->samples;
}

template <typename T>
void seeded_shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng.below(i)]);
}

} // namespace

int round_confidence_percent(double score) {
    if (score < 0.0 || score > 1.0)
        throw Error("confidence score outside [0,1]: " + std::to_string(score));
    // 5% steps, ties to even (the default IEEE rounding of nearbyint).
    const double steps = std::nearbyint(score * 20.0);
    return static_cast<int>(steps) * 5;
}

std::string render_tool_target(const ToolSpec& tool) {
    if (tool.name != "calculator" && tool.name != "search_info" && tool.name != "math_solver")
        throw Error("unknown tool name '" + tool.name + "'");
    return "{\n  \"tool_name\": \"" + tool.name + "\"\n}";
}

std::string render_direct_target(const QuestionRecord& record,
                                 const std::vector<ResponseSample>& samples) {
    for (const auto& sample : samples) {
        if (is_correct(sample.answer_text, record.ground_truth, record.task_kind))
            return sample.answer_text;
    }
    return "The final answer is " + record.ground_truth.front();
}

std::vector<SftExample> build_implicit(const std::vector<QuestionRecord>& records,
                                       const std::vector<KnowledgeScore>& scores, double ratio,
                                       const ToolSpec& tool,
                                       const std::vector<SampleSet>& samples,
                                       const PromptTemplates& templates) {
    if (ratio < 0.0 || ratio > 1.0) throw Error("ratio outside [0,1]: " + std::to_string(ratio));
    const auto score_by_id = score_map(scores);
    const auto samples_by_id = sample_map(samples);

    struct Entry {
        const QuestionRecord* record;
        double score;
    };
    std::vector<Entry> entries;
    entries.reserve(records.size());
    for (const auto& record : records) {
        const auto it = score_by_id.find(record.id);
        if (it == score_by_id.end()) throw Error("no score for question '" + record.id + "'");
        entries.push_back({&record, it->second});
    }
    // Lowest scores first; ties land on the tool side in id order.
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.record->id < b.record->id;
    });

    const std::size_t n = entries.size();
    auto tool_count = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
    if (tool_count > n) tool_count = n;

    std::vector<SftExample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [record, score] = entries[i];
        SftExample example;
        example.question_id = record->id;
        example.score = score;
        example.labeled_tool = i < tool_count;
        example.prompt = render_template(templates.task_prompt(record->task_kind, PromptKind::auto_tool),
                                         {{"question", record->prompt}});
        example.target = example.labeled_tool
                             ? render_tool_target(tool)
                             : render_direct_target(*record, samples_for(samples_by_id, record->id));
        out.push_back(std::move(example));
    }
    std::sort(out.begin(), out.end(),
              [](const SftExample& a, const SftExample& b) { return a.question_id < b.question_id; });
    return out;
}

std::vector<SftExample> build_explicit(const std::vector<QuestionRecord>& records,
                                       const std::vector<KnowledgeScore>& scores,
                                       const std::vector<SampleSet>& samples,
                                       const PromptTemplates& templates) {
    const auto score_by_id = score_map(scores);
    const auto samples_by_id = sample_map(samples);

    std::vector<SftExample> out;
    out.reserve(records.size());
    for (const auto& record : records) {
        const auto it = score_by_id.find(record.id);
        if (it == score_by_id.end()) throw Error("no score for question '" + record.id + "'");
        SftExample example;
        example.question_id = record.id;
        example.score = it->second;
        example.labeled_tool = false;
        example.confidence = round_confidence_percent(it->second);
        example.prompt = render_template(templates.task_prompt(record.task_kind, PromptKind::auto_tool),
                                         {{"question", record.prompt}});
        example.target = render_direct_target(record, samples_for(samples_by_id, record.id)) +
                         "\nConfidence: " + std::to_string(*example.confidence) + "%";
        out.push_back(std::move(example));
    }
    std::sort(out.begin(), out.end(),
              [](const SftExample& a, const SftExample& b) { return a.question_id < b.question_id; });
    return out;
}

std::string build_icl_examples(const std::vector<QuestionRecord>& records,
                               const std::vector<SampleSet>& samples, std::size_t n_correct,
                               std::size_t n_incorrect, std::uint64_t seed) {
    const auto samples_by_id = sample_map(samples);

    std::vector<const QuestionRecord*> correct_pool;
    std::vector<const QuestionRecord*> incorrect_pool;
    for (const auto& record : records) {
        const auto& sets = samples_for(samples_by_id, record.id);
        if (sets.empty()) continue;
        bool any_correct = false;
        for (const auto& sample : sets) {
            if (is_correct(sample.answer_text, record.ground_truth, record.task_kind)) {
                any_correct = true;
                break;
            }
        }
        (any_correct ? correct_pool : incorrect_pool).push_back(&record);
    }
    if (correct_pool.size() < n_correct || incorrect_pool.size() < n_incorrect)
        throw Error("insufficient ICL pool: have " + std::to_string(correct_pool.size()) +
                    " correct / " + std::to_string(incorrect_pool.size()) + " incorrect, need " +
                    std::to_string(n_correct) + " / " + std::to_string(n_incorrect));

    Rng rng(seed);
    seeded_shuffle(correct_pool, rng);
    seeded_shuffle(incorrect_pool, rng);

    struct Block {
        const QuestionRecord* record;
        bool tool;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < n_correct; ++i) blocks.push_back({correct_pool[i], false});
    for (std::size_t i = 0; i < n_incorrect; ++i) blocks.push_back({incorrect_pool[i], true});
    seeded_shuffle(blocks, rng);

    std::string out;
    for (const auto& block : blocks) {
        if (!out.empty()) out += "\n\n";
        out += "Problem: " + block.record->prompt + "\nResponse: ";
        if (block.tool) {
            out += render_tool_target(ToolSpec::preset(default_tool_name(block.record->task_kind)));
        } else {
            out += render_direct_target(*block.record, samples_for(samples_by_id, block.record->id));
        }
    }
    return out;
}

void save_sft(const std::string& path, const std::vector<SftExample>& examples) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    for (const auto& example : examples) {
        json obj;
        obj["prompt"] = example.prompt;
        obj["target"] = example.target;
        json meta;
        meta["question_id"] = example.question_id;
        meta["score"] = example.score;
        meta["labeled_tool"] = example.labeled_tool;
        meta["confidence"] = example.confidence ? json(*example.confidence) : json(nullptr);
        obj["meta"] = meta;
        out << obj.dump() << '\n';
    }
}

std::vector<SftExample> load_sft(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<SftExample> examples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
            SftExample example;
            example.prompt = obj.at("prompt").get<std::string>();
            example.target = obj.at("target").get<std::string>();
            const auto& meta = obj.at("meta");
            example.question_id = meta.at("question_id").get<std::string>();
            example.score = meta.at("score").get<double>();
            example.labeled_tool = meta.at("labeled_tool").get<bool>();
            if (!meta.at("confidence").is_null()) example.confidence = meta["confidence"].get<int>();
            examples.push_back(std::move(example));
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad SFT record: " + e.what());
        }
    }
    return examples;
}

} // namespace toolalign::sftgen
