#include "specsum/dsl/parse.hpp"

#include <algorithm>
#include <set>

#include "dsl_lexer.hpp"

namespace specsum::dsl {

const std::vector<std::string>& directive_ids() {
  static const std::vector<std::string> ids = {
      "hypotheses", "theorem-a", "main",     "schedule", "closedness",
      "single-range", "coercivity", "cor23", "lemma41",  "gram-gap",
      "ineq41",     "grouped",   "transfer", "truncate", "converge",
      "weyl"};
  return ids;
}

namespace {

const std::set<std::string>& arg_keys() {
  static const std::set<std::string> keys = {"eps",  "delta",   "lambda", "length",
                                             "n",    "rank",    "samples", "sizes"};
  return keys;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ScenarioSpec parse() {
    ScenarioSpec spec;
    for (;;) {
      while (at(Tok::Newline)) advance();
      if (at(Tok::End)) break;
      const Token& t = peek();
      if (t.kind != Tok::Ident)
        fail(ErrorKind::ParseError, t.line, t.col,
             "expected one of {operator, check, set}, found " + describe(t));
      if (t.text == "operator") {
        spec.operators.push_back(parse_operator());
      } else if (t.text == "check") {
        spec.directives.push_back(parse_check());
      } else if (t.text == "set") {
        spec.settings.push_back(parse_set());
      } else {
        fail(ErrorKind::ParseError, t.line, t.col,
             "expected one of {operator, check, set}, found '" + t.text + "'");
      }
      end_statement();
    }
    resolve(spec);
    return spec;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::Ident) && peek().text == w; }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Ident) return "'" + t.text + "'";
    if (t.kind == Tok::Int) return "integer " + std::to_string(t.num);
    return tok_name(t.kind);
  }

  const Token& expect(Tok k, const char* what) {
    if (!at(k))
      fail(ErrorKind::ParseError, peek().line, peek().col,
           std::string("expected ") + what + ", found " + describe(peek()));
    return advance();
  }

  std::string expect_word(const char* w) {
    if (!at_word(w))
      fail(ErrorKind::ParseError, peek().line, peek().col,
           std::string("expected '") + w + "', found " + describe(peek()));
    return advance().text;
  }

  void end_statement() {
    if (!at(Tok::Newline) && !at(Tok::End))
      fail(ErrorKind::ParseError, peek().line, peek().col,
           "expected end of line, found " + describe(peek()));
    if (at(Tok::Newline)) advance();
  }

  long long expect_int(const char* what) { return expect(Tok::Int, what).num; }

  Rat parse_rational() {
    int sign = 1;
    if (at(Tok::Minus)) {
      advance();
      sign = -1;
    } else if (at(Tok::Plus)) {
      advance();
    }
    long long p = expect_int("a rational p or p/q");
    long long q = 1;
    if (at(Tok::Slash)) {
      advance();
      q = expect_int("a denominator");
      if (q == 0)
        fail(ErrorKind::ParseError, peek().line, peek().col, "zero denominator");
    }
    return rat_of(sign * p, q);
  }

  // strand expressions: sums of `c`, `c*j^-e`, `j^-e` terms
  StrandExpr parse_strand_expr() {
    StrandExpr acc;
    bool first = true;
    int sign = 1;
    for (;;) {
      if (at(Tok::Minus)) {
        advance();
        sign = -1;
      } else if (at(Tok::Plus)) {
        advance();
        sign = 1;
      } else if (!first) {
        break;
      }
      acc = acc.plus(parse_term(sign));
      first = false;
      sign = 1;
      if (!at(Tok::Minus) && !at(Tok::Plus)) break;
    }
    return acc;
  }

  StrandExpr parse_term(int sign) {
    if (at_word("j")) {
      advance();
      return parse_power(rat_of(sign));
    }
    Rat c = parse_rational() * sign;
    if (at(Tok::Star)) {
      advance();
      expect_word("j");
      return parse_power(c);
    }
    return StrandExpr::constant(c);
  }

  // after `j`; the written exponent must be <= 0
  StrandExpr parse_power(const Rat& coeff) {
    const Token& caret = peek();
    if (!at(Tok::Caret))
      fail(ErrorKind::ParseError, caret.line, caret.col,
           "expected '^' after j (write j^-e with e >= 0)");
    advance();
    Rat w = parse_rational();
    if (w > 0)
      fail(ErrorKind::ParseError, caret.line, caret.col,
           "strand terms must not grow: exponent must be <= 0");
    return StrandExpr::power_term(coeff, Rat(-w));
  }

  RatC parse_entry() {
    if (at(Tok::LParen)) {
      advance();
      Rat re = parse_rational();
      expect(Tok::Comma, "','");
      Rat im = parse_rational();
      expect(Tok::RParen, "')'");
      return RatC(re, im);
    }
    return RatC(parse_rational(), Rat(0));
  }

  HermitianRational parse_matrix_lit() {
    const Token& head = peek();
    long long n = expect_int("a matrix dimension");
    if (n < 1 || n > 512)
      fail(ErrorKind::ParseError, head.line, head.col,
           "matrix dimension must lie in [1, 512]");
    expect(Tok::LBrace, "'{'");
    std::vector<RatC> a(n * n);
    for (long long r = 0; r < n; ++r) {
      for (long long c = 0; c < n; ++c) a[r * n + c] = parse_entry();
      if (r + 1 < n) expect(Tok::Semi, "';' between matrix rows");
    }
    const Token& close = peek();
    expect(Tok::RBrace, "'}'");
    HermitianRational m(n);
    for (long long i = 0; i < n; ++i) {
      if (a[i * n + i].im != 0)
        fail(ErrorKind::ParseError, close.line, close.col,
             "matrix literal has a non-real diagonal entry at " +
                 std::to_string(i + 1));
      for (long long j = i; j < n; ++j) {
        const RatC& up = a[i * n + j];
        const RatC& lo = a[j * n + i];
        if (lo.re != up.re || lo.im != -up.im)
          fail(ErrorKind::ParseError, close.line, close.col,
               "matrix literal is not Hermitian at (" + std::to_string(i + 1) +
                   ", " + std::to_string(j + 1) + ")");
        m.set(i, j, up);
      }
    }
    return m;
  }

  OperatorDef parse_operator() {
    OperatorDef def;
    def.line = peek().line;
    expect_word("operator");
    def.label = expect(Tok::Ident, "an operator label").text;
    expect(Tok::Eq, "'='");
    if (at_word("matrix")) {
      advance();
      def.is_matrix = true;
      def.mat = parse_matrix_lit();
      return def;
    }
    const Token& head = peek();
    expect_word("diag");
    expect_word("seq");
    expect_word("mod");
    long long m = expect_int("a modulus");
    if (m < 1 || m > 1024)
      fail(ErrorKind::ParseError, head.line, head.col,
           "modulus must lie in [1, 1024]");
    expect(Tok::LBrace, "'{'");
    std::vector<StrandExpr> strands(m);
    std::vector<bool> seen(m, false);
    std::map<long long, Rat> exceptions;
    while (!at(Tok::RBrace)) {
      const Token& kw = peek();
      if (at_word("strand")) {
        advance();
        long long r = expect_int("a strand index");
        if (r < 0 || r >= m)
          fail(ErrorKind::ParseError, kw.line, kw.col,
               "strand index " + std::to_string(r) + " outside [0, " +
                   std::to_string(m - 1) + "]");
        if (seen[r])
          fail(ErrorKind::ParseError, kw.line, kw.col,
               "strand " + std::to_string(r) + " defined twice");
        seen[r] = true;
        expect(Tok::Colon, "':'");
        strands[r] = parse_strand_expr();
      } else if (at_word("except")) {
        advance();
        const Token& kt = peek();
        long long k = expect_int("an index");
        if (k < 1)
          fail(ErrorKind::ParseError, kt.line, kt.col, "indices start at 1");
        if (exceptions.count(k))
          fail(ErrorKind::ParseError, kt.line, kt.col,
               "exception at " + std::to_string(k) + " defined twice");
        expect(Tok::Arrow, "'->'");
        exceptions[k] = parse_rational();
      } else {
        fail(ErrorKind::ParseError, kw.line, kw.col,
             "expected 'strand' or 'except', found " + describe(kw));
      }
      if (at(Tok::Semi)) {
        advance();
        continue;
      }
      break;
    }
    const Token& close = peek();
    expect(Tok::RBrace, "'}' or ';' and another item");
    for (long long r = 0; r < m; ++r)
      if (!seen[r])
        fail(ErrorKind::ParseError, close.line, close.col,
             "strand " + std::to_string(r) + " missing");
    def.op.label = def.label;
    def.op.diag.m = m;
    def.op.diag.strands = std::move(strands);
    def.op.diag.exceptions = std::move(exceptions);
    if (at_word("block")) {
      advance();
      def.op.block = parse_matrix_lit();
    }
    try {
      def.op.validate();
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, def.line, 1, e.what());
    }
    return def;
  }

  Directive parse_check() {
    Directive d;
    d.line = peek().line;
    expect_word("check");
    const Token& idt = peek();
    std::string id = expect(Tok::Ident, "a check id").text;
    const auto& ids = directive_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      fail(ErrorKind::UnknownDirective, idt.line, idt.col,
           "unknown check '" + id + "'");
    d.id = id;
    while (!at(Tok::Newline) && !at(Tok::End)) {
      const Token& t = peek();
      if (t.kind != Tok::Ident)
        fail(ErrorKind::ParseError, t.line, t.col,
             "expected a label or argument, found " + describe(t));
      if (t.text == "group") {
        if (id != "grouped")
          fail(ErrorKind::ParseError, t.line, t.col,
               "'group' only belongs to check grouped");
        advance();
        d.groups.emplace_back();
        continue;
      }
      if (arg_keys().count(t.text)) {
        advance();
        parse_named_arg(d, t);
        continue;
      }
      advance();
      if (id == "grouped") {
        if (d.groups.empty())
          fail(ErrorKind::ParseError, t.line, t.col,
               "expected 'group' before labels in check grouped");
        d.groups.back().push_back(t.text);
      } else {
        d.labels.push_back(t.text);
      }
    }
    return d;
  }

  void parse_named_arg(Directive& d, const Token& key) {
    auto dup = [&](bool already) {
      if (already)
        fail(ErrorKind::ParseError, key.line, key.col,
             "duplicate argument '" + key.text + "'");
    };
    if (key.text == "eps" || key.text == "delta" || key.text == "lambda") {
      dup(d.rat_args.count(key.text) > 0);
      d.rat_args[key.text] = parse_rational();
      return;
    }
    if (key.text == "sizes") {
      dup(!d.sizes.empty());
      expect(Tok::LParen, "'('");
      for (;;) {
        d.sizes.push_back(expect_int("a truncation size"));
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::RParen, "')'");
      return;
    }
    dup(d.int_args.count(key.text) > 0);
    d.int_args[key.text] = expect_int("a nonnegative integer");
  }

  std::pair<std::string, long long> parse_set() {
    expect_word("set");
    const Token& key = peek();
    std::string name = expect(Tok::Ident, "a setting name").text;
    if (name != "seed" && name != "trunc-size" && name != "scan-budget")
      fail(ErrorKind::ParseError, key.line, key.col,
           "unknown setting '" + name +
               "' (one of {seed, trunc-size, scan-budget})");
    long long v = expect_int("a value");
    if (name == "trunc-size" && v < 1)
      fail(ErrorKind::ParseError, key.line, key.col, "trunc-size must be >= 1");
    if (name == "scan-budget" && v < 1)
      fail(ErrorKind::ParseError, key.line, key.col, "scan-budget must be >= 1");
    return {name, v};
  }

  // label resolution and per-directive argument contracts
  void resolve(const ScenarioSpec& spec) {
    for (std::size_t i = 0; i < spec.operators.size(); ++i)
      for (std::size_t j = i + 1; j < spec.operators.size(); ++j)
        if (spec.operators[i].label == spec.operators[j].label)
          fail(ErrorKind::DuplicateLabel, spec.operators[j].line, 1,
               "operator '" + spec.operators[j].label + "' defined twice");
    for (const auto& d : spec.directives) check_directive(spec, d);
  }

  [[noreturn]] void bad_dir(const Directive& d, const std::string& msg) {
    fail(ErrorKind::ParseError, d.line, 1, "check " + d.id + ": " + msg);
  }

  void need_labels(const ScenarioSpec& spec, const Directive& d, std::size_t lo,
                   std::size_t hi, bool want_matrix) {
    if (d.labels.size() < lo || (hi > 0 && d.labels.size() > hi))
      bad_dir(d, hi == lo
                     ? "needs exactly " + std::to_string(lo) + " operator(s)"
                     : "needs at least " + std::to_string(lo) + " operator(s)");
    for (const auto& l : d.labels) {
      const OperatorDef* def = spec.find(l);
      if (!def)
        fail(ErrorKind::UnknownLabel, d.line, 1,
             "unknown label '" + l + "' in check " + d.id);
      if (def->is_matrix != want_matrix)
        bad_dir(d, "'" + l + "' is a " +
                       (def->is_matrix ? "matrix literal" : "diagonal operator") +
                       "; this check needs the other kind");
    }
  }

  void need_rat(const Directive& d, const char* key) {
    if (!d.rat_args.count(key))
      bad_dir(d, std::string("missing required argument '") + key + "'");
  }

  void check_directive(const ScenarioSpec& spec, const Directive& d) {
    auto no_groups = [&] {
      if (!d.groups.empty()) bad_dir(d, "'group' does not apply");
    };
    if (d.id == "hypotheses") {
      no_groups();
      need_labels(spec, d, 2, 0, false);
    } else if (d.id == "theorem-a" || d.id == "main" || d.id == "closedness" ||
               d.id == "schedule" || d.id == "ineq41") {
      no_groups();
      need_labels(spec, d, 1, 0, false);
      if (d.id == "ineq41") {
        need_rat(d, "eps");
        if (d.rat_args.at("eps") <= 0) bad_dir(d, "eps must be positive");
      }
    } else if (d.id == "single-range" || d.id == "truncate" ||
               d.id == "converge" || d.id == "weyl") {
      no_groups();
      need_labels(spec, d, 1, 1, false);
      if (d.id == "converge") {
        if (d.sizes.size() < 2)
          bad_dir(d, "needs sizes (n1, n2, ...) with >= 2 entries");
        for (std::size_t i = 0; i < d.sizes.size(); ++i)
          if (d.sizes[i] < 1 || (i > 0 && d.sizes[i] <= d.sizes[i - 1]))
            bad_dir(d, "sizes must be positive and strictly increasing");
      }
    } else if (d.id == "coercivity" || d.id == "cor23" || d.id == "gram-gap") {
      no_groups();
      need_labels(spec, d, 1, 0, true);
    } else if (d.id == "lemma41") {
      no_groups();
      need_labels(spec, d, 2, 2, false);
      need_rat(d, "eps");
      need_rat(d, "delta");
      if (d.rat_args.at("eps") <= 0 || d.rat_args.at("delta") <= 0)
        bad_dir(d, "eps and delta must be positive");
    } else if (d.id == "transfer") {
      no_groups();
      need_labels(spec, d, 2, 2, false);
      need_rat(d, "lambda");
    } else if (d.id == "grouped") {
      if (!d.labels.empty()) bad_dir(d, "labels must sit inside group blocks");
      if (d.groups.empty()) bad_dir(d, "needs at least one group");
      for (const auto& g : d.groups) {
        if (g.empty()) bad_dir(d, "empty group");
        for (const auto& l : g) {
          const OperatorDef* def = spec.find(l);
          if (!def)
            fail(ErrorKind::UnknownLabel, d.line, 1,
                 "unknown label '" + l + "' in check grouped");
          if (def->is_matrix)
            bad_dir(d, "'" + l +
                           "' is a matrix literal; groups need diagonal operators");
        }
      }
    }
  }
};

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
  return Parser(lex(text)).parse();
}

}  // namespace specsum::dsl
