#include "toolalign/answer.hpp"

#include "toolalign/rational.hpp"

#include <cctype>

namespace toolalign {

namespace {

constexpr std::string_view kAnswerMarker = "the final answer is";

bool is_edge_punct(char c) {
    switch (c) {
        case '.':
        case ',':
        case ';':
        case ':':
        case '!':
        case '?':
        case '\'':
        case '"':
        case '(':
        case ')':
        case '[':
        case ']':
        case '{':
        case '}':
        case '*':
        case '`':
            return true;
        default:
            return false;
    }
}

char ascii_lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Index just past the last case-insensitive marker occurrence, or npos.
std::size_t find_after_last_marker(std::string_view text) {
    if (text.size() < kAnswerMarker.size()) return std::string_view::npos;
    for (std::size_t start = text.size() - kAnswerMarker.size() + 1; start-- > 0;) {
        bool match = true;
        for (std::size_t i = 0; i < kAnswerMarker.size(); ++i) {
            if (ascii_lower(text[start + i]) != kAnswerMarker[i]) {
                match = false;
                break;
            }
        }
        if (match) return start + kAnswerMarker.size();
    }
    return std::string_view::npos;
}

std::string normalize_string(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    auto is_strip = [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || is_edge_punct(c);
    };
    while (begin < end && is_strip(text[begin])) ++begin;
    while (end > begin && is_strip(text[end - 1])) --end;

    std::string out;
    out.reserve(end - begin);
    bool pending_space = false;
    for (std::size_t i = begin; i < end; ++i) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(ascii_lower(c));
    }
    return out;
}

} // namespace

std::string normalize_answer(std::string_view raw, TaskKind kind) {
    std::string_view tail = raw;
    const std::size_t after = find_after_last_marker(raw);
    if (after != std::string_view::npos) tail = raw.substr(after);

    std::string text = normalize_string(tail);

    if (kind == TaskKind::arithmetic) {
        if (auto value = parse_rational_literal(text)) return value->to_string();
        // Chain-of-thought text: take the last numeric literal it mentions.
        if (auto value = extract_last_rational(text)) return value->to_string();
    }
    return text;
}

bool is_correct(std::string_view sample_answer, const std::vector<std::string>& ground_truth,
                TaskKind kind) {
    const std::string normalized = normalize_answer(sample_answer, kind);
    for (const auto& truth : ground_truth) {
        if (normalized == normalize_answer(truth, kind)) return true;
    }
    return false;
}

} // namespace toolalign
