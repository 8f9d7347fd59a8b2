#include "toolalign/synthetic.hpp"

#include "toolalign/answer.hpp"
#include "toolalign/error.hpp"
#include "toolalign/rational.hpp"
#include "toolalign/rng.hpp"

#include <algorithm>
#include <cmath>

namespace toolalign::responders {

namespace {

constexpr double kLogClampEps = 1e-9;

std::string render_answer(const std::string& value) { return "The final answer is " + value; }

// A wrong answer that cannot normalize to any ground-truth alias.
std::string perturbed_answer(const QuestionRecord& record, Rng& rng) {
    if (record.task_kind == TaskKind::arithmetic) {
        if (auto truth = parse_rational_literal(
                normalize_answer(record.ground_truth.front(), TaskKind::arithmetic))) {
            // Offset by a nonzero integer delta in [-9,9].
            std::int64_t delta = rng.range(1, 9);
            if (rng.bernoulli(0.5)) delta = -delta;
            const Rational wrong = *truth + Rational(delta);
            return render_answer(wrong.to_string());
        }
    }
    for (int k = 0; k < 100; ++k) {
        const std::string candidate = "distractor-" + std::to_string(rng.below(1000000));
        if (!is_correct(candidate, record.ground_truth, record.task_kind))
            return render_answer(candidate);
    }
    throw Error("could not build an incorrect answer for question '" + record.id + "'");
}

} // namespace

double latent_skill(const SyntheticSkillProfile& profile, const QuestionRecord& record,
                    std::uint64_t seed, std::uint64_t index) {
    if (profile.sigma < 0.0) throw Error("sigma must be >= 0");
    switch (profile.distribution) {
        case SkillDistribution::uniform: {
            Rng rng(derive_seed(derive_seed(seed, "skill"), record.id));
            return rng.uniform01();
        }
        case SkillDistribution::beta: {
            if (profile.beta_a <= 0.0 || profile.beta_b <= 0.0)
                throw Error("beta parameters must be positive");
            Rng rng(derive_seed(derive_seed(seed, "skill"), record.id));
            return rng.beta(profile.beta_a, profile.beta_b);
        }
        case SkillDistribution::fixed: {
            if (profile.fixed.empty()) throw Error("fixed skill list is empty");
            const double p = profile.fixed[index % profile.fixed.size()];
            if (p < 0.0 || p > 1.0) throw Error("fixed skill outside [0,1]");
            return p;
        }
    }
    throw Error("unknown skill distribution");
}

SampleSet synth_respond(const QuestionRecord& record, const SyntheticSkillProfile& profile,
                        std::size_t n, std::uint64_t seed, std::uint64_t index) {
    if (n == 0) throw Error("synth_respond: need n >= 1");
    const double p = latent_skill(profile, record, seed, index);

    Rng rng(derive_seed(derive_seed(seed, "respond"), record.id));
    SampleSet set;
    set.question_id = record.id;
    set.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ResponseSample sample;
        sample.is_correct = rng.bernoulli(p);
        sample.answer_text = sample.is_correct ? render_answer(record.ground_truth.front())
                                               : perturbed_answer(record, rng);
        double mean_logprob = std::log(std::clamp(p, kLogClampEps, 1.0));
        if (profile.sigma > 0.0) mean_logprob += rng.gaussian(0.0, profile.sigma);
        mean_logprob = std::min(mean_logprob, 0.0);
        const auto tokens = static_cast<std::size_t>(4 + rng.below(5));
        sample.token_logprobs = std::vector<double>(tokens, mean_logprob);
        set.samples.push_back(std::move(sample));
    }
    return set;
}

std::vector<SampleSet> synth_respond_all(const std::vector<QuestionRecord>& records,
                                         const SyntheticSkillProfile& profile, std::size_t n,
                                         std::uint64_t seed) {
    std::vector<SampleSet> sets;
    sets.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        sets.push_back(synth_respond(records[i], profile, n, seed, i));
    return sets;
}

} // namespace toolalign::responders
