#pragma once

#include "eqsat/pattern.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace eqsat::detail {

/// Recursive-descent reader for the shared s-expression syntax. Reads
/// patterns; terms are patterns without variables.
class SexprReader {
public:
    SexprReader(std::string_view text, bool allow_vars, std::size_t base_offset = 0)
        : text_(text), allow_vars_(allow_vars), base_(base_offset) {}

    Pattern read();

    /// Skips whitespace and `#` comments.
    void skip_space();
    bool at_end() const noexcept { return pos_ >= text_.size(); }
    std::size_t pos() const noexcept { return pos_; }
    void set_pos(std::size_t p) noexcept { pos_ = p; }
    std::string_view rest() const noexcept { return text_.substr(pos_); }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const;

private:
    std::string_view read_token();
    Pattern read_atom(std::string_view token, std::size_t at);

    std::string_view text_;
    bool allow_vars_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

bool is_delimiter(char c) noexcept;
/// Variable names (without the `?`): letters, digits, `_`, `-`, `'`.
bool valid_var_name(std::string_view name) noexcept;

} // namespace eqsat::detail
