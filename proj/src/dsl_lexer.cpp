#include "dsl_lexer.hpp"

#include <algorithm>

namespace specsum::dsl {

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::Minus: return "'-'";
    case Tok::Plus: return "'+'";
    case Tok::Eq: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  long long line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto push = [&](Tok k) { out.push_back({k, {}, 0, line, col}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      if (depth == 0 && (out.empty() || out.back().kind != Tok::Newline))
        push(Tok::Newline);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (ident_start(c)) {
      std::size_t b = i;
      long long bcol = col;
      // '-' continues an identifier only before a letter, which keeps
      // check ids like theorem-a whole without eating binary minus.
      while (i < text.size() &&
             (ident_char(text[i]) ||
              (text[i] == '-' && i + 1 < text.size() &&
               ident_start(text[i + 1]) && text[i + 1] != '_'))) {
        ++i;
        ++col;
      }
      out.push_back({Tok::Ident, text.substr(b, i - b), 0, line, bcol});
      continue;
    }
    if (c >= '0' && c <= '9') {
      long long bcol = col, v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        if (v > 400000000000000000LL)
          fail(ErrorKind::ParseError, line, bcol, "integer literal too large");
        v = v * 10 + (text[i] - '0');
        ++i;
        ++col;
      }
      out.push_back({Tok::Int, {}, v, line, bcol});
      continue;
    }
    Tok k;
    long long adv = 1;
    switch (c) {
      case '{': k = Tok::LBrace; ++depth; break;
      case '}': k = Tok::RBrace; depth = std::max(0LL, depth - 1); break;
      case '(': k = Tok::LParen; ++depth; break;
      case ')': k = Tok::RParen; depth = std::max(0LL, depth - 1); break;
      case ':': k = Tok::Colon; break;
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '/': k = Tok::Slash; break;
      case '+': k = Tok::Plus; break;
      case '=': k = Tok::Eq; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          k = Tok::Arrow;
          adv = 2;
        } else {
          k = Tok::Minus;
        }
        break;
      default:
        fail(ErrorKind::ParseError, line, col,
             std::string("unexpected character '") + c + "'");
    }
    push(k);
    i += adv;
    col += adv;
  }
  if (out.empty() || out.back().kind != Tok::Newline)
    out.push_back({Tok::Newline, {}, 0, line, col});
  out.push_back({Tok::End, {}, 0, line, col});
  return out;
}

}  // namespace specsum::dsl
