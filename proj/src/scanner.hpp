#ifndef LGX_SRC_SCANNER_HPP
#define LGX_SRC_SCANNER_HPP

#include "lgx/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace lgx::detail {

/// Character scanner shared by the script and output-map parsers. Tracks line and
/// column, skips whitespace and '#' line comments on request.
class Scanner {
public:
    Scanner(std::string_view text, std::string file);

    void skip_trivia();
    bool at_end();
    /// Next significant character, or '\0' at end of input.
    char peek();
    bool try_consume(char c);
    void expect(char c, std::string_view context);

    /// Identifier: ASCII letters and digits, '-', '_', and any non-ASCII byte.
    std::string ident(std::string_view what);
    bool peek_ident_char();
    /// Contents of a double-quoted string; '\"' and '\\' are the only escapes.
    std::string quoted();
    /// Raw bytes up to (and consuming) `terminator`; no trivia skipping.
    std::string raw_until(char terminator, std::string_view what);

    SourceLocation location() const { return {file_, line_, column_}; }
    const std::string& file() const { return file_; }

    [[noreturn]] void error(const std::string& message) const;
    [[noreturn]] static void error_at(const SourceLocation& where, const std::string& message);

    static bool is_ident_char(char c);

private:
    void advance();

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace lgx::detail

#endif
