#pragma once

// Prompt templates for task prompts and uncertainty elicitation, plus the
// instruction pool used by the arithmetic task generator. Built-in defaults
// can be overridden per file from an editable template directory.

#include "toolalign/types.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace toolalign {

enum class PromptKind { baseline_no_tool, baseline_all_tool, auto_tool, icl_tool };

const char* to_string(PromptKind kind);

struct PromptTemplates {
    // Task prompts, keyed by "<task>_<prompt-kind>" file stem.
    std::map<std::string, std::string> task_prompts;
    // Uncertainty prompts.
    std::string logits;
    std::string ptrue;
    std::string consistency;
    std::string verb_1s;
    std::string verb_2s;
    // One instruction per entry, each containing an {expression} slot.
    std::vector<std::string> arithmetic_questions;

    const std::string& task_prompt(TaskKind task, PromptKind kind) const;

    static PromptTemplates builtin();
    // Loads any present template files from dir; missing files keep the
    // built-in text. Throws Error when dir does not exist.
    static PromptTemplates load_dir(const std::string& dir);
    // Writes the editable files for every template.
    void export_dir(const std::string& dir) const;
};

// Replaces "{key}" for every provided slot; all other braces are literal.
std::string render_template(std::string_view tpl,
                            const std::map<std::string, std::string>& slots);

// Tool name for each task scenario: calculator / search_info / math_solver.
const char* default_tool_name(TaskKind task);

} // namespace toolalign
