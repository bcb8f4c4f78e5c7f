#include "scanner.hpp"

namespace lgx::detail {

Scanner::Scanner(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {
    if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
}

void Scanner::advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
    } else {
        ++column_;
    }
    ++pos_;
}

void Scanner::skip_trivia() {
    while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            advance();
        } else if (c == '#') {
            while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        } else {
            break;
        }
    }
}

bool Scanner::at_end() {
    skip_trivia();
    return pos_ >= text_.size();
}

char Scanner::peek() {
    skip_trivia();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Scanner::try_consume(char c) {
    if (peek() != c || at_end()) return false;
    advance();
    return true;
}

void Scanner::expect(char c, std::string_view context) {
    if (!try_consume(c)) {
        std::string found = at_end() ? std::string("end of input") : "'" + std::string(1, text_[pos_]) + "'";
        error("expected '" + std::string(1, c) + "' " + std::string(context) + ", found " + found);
    }
}

bool Scanner::is_ident_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
           u >= 0x80;
}

bool Scanner::peek_ident_char() { return !at_end() && is_ident_char(text_[pos_]); }

std::string Scanner::ident(std::string_view what) {
    skip_trivia();
    const auto start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
    if (pos_ == start) {
        std::string found = pos_ >= text_.size() ? std::string("end of input") : "'" + std::string(1, text_[pos_]) + "'";
        error("expected " + std::string(what) + ", found " + found);
    }
    return std::string(text_.substr(start, pos_ - start));
}

std::string Scanner::quoted() {
    expect('"', "to open a string");
    std::string out;
    while (true) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') error("unterminated string");
        const char c = text_[pos_];
        if (c == '"') {
            advance();
            return out;
        }
        if (c == '\\' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '"' || text_[pos_ + 1] == '\\')) {
            advance();
            out += text_[pos_];
            advance();
            continue;
        }
        out += c;
        advance();
    }
}

std::string Scanner::raw_until(char terminator, std::string_view what) {
    std::string out;
    while (true) {
        if (pos_ >= text_.size()) error("unterminated " + std::string(what));
        const char c = text_[pos_];
        advance();
        if (c == terminator) return out;
        out += c;
    }
}

void Scanner::error(const std::string& message) const { error_at(location(), message); }

void Scanner::error_at(const SourceLocation& where, const std::string& message) { throw ParseError(where, message); }

} // namespace lgx::detail
