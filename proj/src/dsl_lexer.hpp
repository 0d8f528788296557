#pragma once

#include <string>
#include <vector>

#include "specsum/errors.hpp"

namespace specsum::dsl {

enum class Tok {
  Ident, Int, LBrace, RBrace, LParen, RParen, Colon, Semi, Comma,
  Star, Caret, Slash, Minus, Plus, Eq, Arrow, Newline, End,
};

const char* tok_name(Tok t);

struct Token {
  Tok kind;
  std::string text;
  long long num = 0;
  long long line = 1;
  long long col = 1;
};

[[noreturn]] inline void fail(ErrorKind kind, long long line, long long col,
                              const std::string& msg) {
  throw Error(kind, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

// Newlines inside braces or parens separate nothing; statements end at
// depth-0 line breaks.  `#` comments run to end of line.
std::vector<Token> lex(const std::string& text);

}  // namespace specsum::dsl
