#include "toolalign/taskgen.hpp"

#include "toolalign/error.hpp"
#include "toolalign/expr.hpp"
#include "toolalign/rng.hpp"
#include "toolalign/templates.hpp"

#include <cstdio>

namespace toolalign::arith {

namespace {

constexpr std::size_t kMaxSupportedDigits = 18;
constexpr int kMaxAttempts = 1000;

std::uint64_t pow10(std::size_t n) {
    std::uint64_t v = 1;
    while (n-- > 0) v *= 10;
    return v;
}

std::size_t digit_count(std::uint64_t v) {
    std::size_t n = 1;
    while (v >= 10) {
        v /= 10;
        ++n;
    }
    return n;
}

// Log-scale magnitude: uniform digit count, then uniform within the class.
std::uint64_t sample_operand(Rng& rng, std::size_t max_digits) {
    const auto digits = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_digits)));
    const std::uint64_t lo = digits == 1 ? 1 : pow10(digits - 1);
    const std::uint64_t hi = pow10(digits) - 1;
    return lo + rng.below(hi - lo + 1);
}

} // namespace

QuestionRecord generate_task(const TaskGenConfig& config, std::uint64_t seed, std::uint64_t index) {
    if (config.ops.empty()) throw Error("generate_task: empty operator set");
    if (config.max_digits == 0 || config.max_digits > kMaxSupportedDigits)
        throw Error("generate_task: max_digits must be in [1, 18]");
    for (char op : config.ops) {
        if (op != '+' && op != '-' && op != '*' && op != '/')
            throw Error(std::string("generate_task: unsupported operator '") + op + "'");
    }
    const std::vector<std::string>& pool =
        config.templates.empty() ? PromptTemplates::builtin().arithmetic_questions : config.templates;

    Rng rng(derive_seed(seed, index));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const char op = config.ops[rng.below(config.ops.size())];
        std::uint64_t a = sample_operand(rng, config.max_digits);
        std::uint64_t b = sample_operand(rng, config.max_digits);
        if (op == '/' && config.integer_only) {
            // Build the dividend as divisor * quotient so division is exact.
            const std::size_t b_digits = digit_count(b);
            if (b_digits >= config.max_digits) continue;
            Rng aux(rng.next_u64());
            const std::uint64_t m = sample_operand(aux, config.max_digits - b_digits + 1);
            a = b * m;
            if (digit_count(a) > config.max_digits) continue;
        }

        const std::string expression =
            std::to_string(a) + " " + op + " " + std::to_string(b);
        const ExprPtr tree = parse(expression);
        const Rational result = evaluate(*tree);
        if (config.integer_only && !result.is_integer()) continue;

        const std::string& tpl = pool[rng.below(pool.size())];
        if (tpl.find("{expression}") == std::string::npos)
            throw Error("generate_task: template lacks {expression}: " + tpl);

        QuestionRecord record;
        char id[32];
        std::snprintf(id, sizeof(id), "arith-%06llu", static_cast<unsigned long long>(index));
        record.id = id;
        record.prompt = render_template(tpl, {{"expression", expression}});
        record.ground_truth = {result.to_string()};
        record.task_kind = TaskKind::arithmetic;
        return record;
    }
    throw Error("generate_task: exhausted " + std::to_string(kMaxAttempts) + " attempts at index " +
                std::to_string(index));
}

std::vector<QuestionRecord> generate_tasks(const TaskGenConfig& config, std::uint64_t seed,
                                           std::size_t count) {
    std::vector<QuestionRecord> records;
    records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) records.push_back(generate_task(config, seed, i));
    return records;
}

} // namespace toolalign::arith
