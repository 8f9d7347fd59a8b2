#pragma once

// Seeded synthetic responder with a controllable latent skill per question.
// It stands in for an LLM so the estimators and policies can be verified
// against known ground truth.

#include "toolalign/types.hpp"

#include <cstdint>
#include <vector>

namespace toolalign::responders {

enum class SkillDistribution { uniform, beta, fixed };

struct SyntheticSkillProfile {
    SkillDistribution distribution = SkillDistribution::uniform;
    double beta_a = 1.0;
    double beta_b = 1.0;
    // fixed mode cycles this list by record index.
    std::vector<double> fixed = {0.5};
    // Gaussian noise scale on the synthesized mean token logprob.
    double sigma = 0.0;
};

// The latent correctness probability p_i for a record. Uniform/beta skills
// depend only on (seed, record.id), so sharding by index is safe.
double latent_skill(const SyntheticSkillProfile& profile, const QuestionRecord& record,
                    std::uint64_t seed, std::uint64_t index = 0);

// N samples, each correct with probability p_i. Correct samples render the
// ground truth in the answer template; incorrect ones render a deterministic
// perturbation. Token logprobs are synthesized so the mean logprob is
// ln(clamp(p_i, eps, 1)) + gaussian(0, sigma).
SampleSet synth_respond(const QuestionRecord& record, const SyntheticSkillProfile& profile,
                        std::size_t n, std::uint64_t seed, std::uint64_t index = 0);

std::vector<SampleSet> synth_respond_all(const std::vector<QuestionRecord>& records,
                                         const SyntheticSkillProfile& profile, std::size_t n,
                                         std::uint64_t seed);

} // namespace toolalign::responders
