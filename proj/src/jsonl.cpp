#include "toolalign/jsonl.hpp"

#include "toolalign/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

namespace toolalign {

namespace {

using json = nlohmann::ordered_json;

// Calls fn(parsed, line_no) for every non-empty line.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        fn(obj, line_no);
    }
}

std::ofstream open_out(const std::string& path) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    return out;
}

} // namespace

std::vector<QuestionRecord> load_questions(const std::string& path) {
    std::vector<QuestionRecord> records;
    std::set<std::string> seen;
    for_each_line(path, [&](const json& obj, std::size_t line_no) {
        QuestionRecord rec;
        try {
            rec.id = obj.at("id").get<std::string>();
            rec.prompt = obj.at("prompt").get<std::string>();
            rec.ground_truth = obj.at("ground_truth").get<std::vector<std::string>>();
            rec.task_kind = task_kind_from_string(obj.at("task_kind").get<std::string>());
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad question record: " + e.what());
        }
        if (rec.ground_truth.empty())
            throw Error(path + ":" + std::to_string(line_no) + ": empty ground_truth for id '" + rec.id + "'");
        if (!seen.insert(rec.id).second)
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate question id '" + rec.id + "'");
        records.push_back(std::move(rec));
    });
    return records;
}

void save_questions(const std::string& path, const std::vector<QuestionRecord>& records) {
    auto out = open_out(path);
    for (const auto& rec : records) {
        json obj;
        obj["id"] = rec.id;
        obj["prompt"] = rec.prompt;
        obj["ground_truth"] = rec.ground_truth;
        obj["task_kind"] = to_string(rec.task_kind);
        out << obj.dump() << '\n';
    }
}

std::vector<SampleSet> load_samples(const std::string& path) {
    std::map<std::string, SampleSet> by_id;
    for_each_line(path, [&](const json& obj, std::size_t line_no) {
        std::string id;
        ResponseSample sample;
        try {
            id = obj.at("question_id").get<std::string>();
            sample.answer_text = obj.at("answer_text").get<std::string>();
            if (obj.contains("token_logprobs") && !obj["token_logprobs"].is_null())
                sample.token_logprobs = obj["token_logprobs"].get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad sample record: " + e.what());
        }
        if (sample.token_logprobs) {
            for (double lp : *sample.token_logprobs) {
                if (lp > 0.0)
                    throw Error(path + ":" + std::to_string(line_no) + ": positive token logprob for id '" + id + "'");
            }
        }
        auto& set = by_id[id];
        set.question_id = id;
        set.samples.push_back(std::move(sample));
    });
    std::vector<SampleSet> sets;
    sets.reserve(by_id.size());
    for (auto& [id, set] : by_id) sets.push_back(std::move(set));
    return sets;
}

std::string sample_line(const std::string& question_id, const ResponseSample& sample) {
    json obj;
    obj["question_id"] = question_id;
    obj["answer_text"] = sample.answer_text;
    if (sample.token_logprobs)
        obj["token_logprobs"] = *sample.token_logprobs;
    else
        obj["token_logprobs"] = nullptr;
    return obj.dump();
}

void save_samples(const std::string& path, const std::vector<SampleSet>& sets) {
    auto out = open_out(path);
    for (const auto& set : sets)
        for (const auto& sample : set.samples) out << sample_line(set.question_id, sample) << '\n';
}

std::vector<KnowledgeScore> load_scores(const std::string& path) {
    std::vector<KnowledgeScore> scores;
    std::set<std::string> seen;
    for_each_line(path, [&](const json& obj, std::size_t line_no) {
        KnowledgeScore score;
        try {
            score.question_id = obj.at("question_id").get<std::string>();
            score.value = obj.at("value").get<double>();
            score.method = score_method_from_string(obj.at("method").get<std::string>());
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad score record: " + e.what());
        }
        if (score.value < 0.0 || score.value > 1.0)
            throw Error(path + ":" + std::to_string(line_no) + ": score outside [0,1] for id '" +
                        score.question_id + "'");
        if (!seen.insert(score.question_id).second)
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate score for id '" +
                        score.question_id + "'");
        scores.push_back(std::move(score));
    });
    return scores;
}

void save_scores(const std::string& path, const std::vector<KnowledgeScore>& scores) {
    auto out = open_out(path);
    for (const auto& score : scores) {
        json obj;
        obj["question_id"] = score.question_id;
        obj["value"] = score.value;
        obj["method"] = to_string(score.method);
        out << obj.dump() << '\n';
    }
}

std::vector<PTrueRow> load_ptrue_rows(const std::string& path) {
    std::vector<PTrueRow> rows;
    for_each_line(path, [&](const json& obj, std::size_t line_no) {
        PTrueRow row;
        try {
            row.question_id = obj.at("question_id").get<std::string>();
            if (obj.contains("logit_true") && !obj["logit_true"].is_null())
                row.logit_true = obj["logit_true"].get<double>();
            if (obj.contains("logit_false") && !obj["logit_false"].is_null())
                row.logit_false = obj["logit_false"].get<double>();
        } catch (const json::exception& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad p_true record: " + e.what());
        }
        rows.push_back(std::move(row));
    });
    return rows;
}

void save_ptrue_rows(const std::string& path, const std::vector<PTrueRow>& rows) {
    auto out = open_out(path);
    for (const auto& row : rows) {
        json obj;
        obj["question_id"] = row.question_id;
        obj["logit_true"] = row.logit_true ? json(*row.logit_true) : json(nullptr);
        obj["logit_false"] = row.logit_false ? json(*row.logit_false) : json(nullptr);
        out << obj.dump() << '\n';
    }
}

std::set<std::string> existing_sample_ids(const std::string& path) {
    std::set<std::string> ids;
    if (!std::filesystem::exists(path)) return ids;
    for_each_line(path, [&](const json& obj, std::size_t) {
        if (obj.contains("question_id")) ids.insert(obj["question_id"].get<std::string>());
    });
    return ids;
}

} // namespace toolalign
