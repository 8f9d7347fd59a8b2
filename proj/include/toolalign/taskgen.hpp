#pragma once

// Arithmetic task generator. Operand magnitudes follow a logarithmic scale:
// the decimal digit count is uniform on [1, max_digits], then the value is
// uniform within that digit class.

#include "toolalign/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace toolalign::arith {

struct TaskGenConfig {
    std::size_t max_digits = 9;
    std::string ops = "+-*/";
    // Reject tasks whose exact result is not an integer (division tasks are
    // constructed to divide evenly instead of rejection-sampling blindly).
    bool integer_only = false;
    // Instruction templates, each with an {expression} slot.
    std::vector<std::string> templates;
};

// Deterministic per (seed, index); sharding by index ranges is safe.
// Throws Error when ops is empty, a template lacks {expression}, or 1000
// resampling attempts fail.
QuestionRecord generate_task(const TaskGenConfig& config, std::uint64_t seed, std::uint64_t index);

std::vector<QuestionRecord> generate_tasks(const TaskGenConfig& config, std::uint64_t seed,
                                           std::size_t count);

} // namespace toolalign::arith
