#pragma once

// Answer canonicalization and the correctness predicate. Matching is exact
// after normalization; arithmetic answers compare as exact rationals.

#include "toolalign/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace toolalign {

// Takes the text after the last "The final answer is" marker (case
// insensitive) when present, strips edge whitespace/punctuation, collapses
// inner whitespace and lowercases. Arithmetic answers are additionally parsed
// to an exact rational and rendered canonically (no leading zeros, reduced
// fraction); when no numeric value can be found the string normalization is
// the fallback.
std::string normalize_answer(std::string_view raw, TaskKind kind);

// True iff the sample normalizes to the same string as any ground-truth entry.
bool is_correct(std::string_view sample_answer, const std::vector<std::string>& ground_truth,
                TaskKind kind);

} // namespace toolalign
