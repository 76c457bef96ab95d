#include "atree/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "atree/error.hpp"

namespace atree {

namespace {

enum class Tok { Ident, String, Number, Equals, Slash, Minus, LBrace, RBrace, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // ident/string/number payload
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
      tok.kind = Tok::End;
      return tok;
    }
    char c = text_[pos_];
    switch (c) {
      case '=': advance(); tok.kind = Tok::Equals; return tok;
      case '/': advance(); tok.kind = Tok::Slash; return tok;
      case '-': advance(); tok.kind = Tok::Minus; return tok;
      case '{': advance(); tok.kind = Tok::LBrace; return tok;
      case '}': advance(); tok.kind = Tok::RBrace; return tok;
      case '"': return lex_string(tok);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(tok);
    if (std::isalpha(static_cast<unsigned char>(c))) return lex_ident(tok);
    fail(tok, std::string("unexpected character '") + c + "'");
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(Errc::Syntax, message, at.line, at.column);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_string(Token tok) {
    tok.kind = Tok::String;
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail(tok, "unterminated string");
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) fail(tok, "unterminated string escape");
        char e = text_[pos_];
        if (e != '"' && e != '\\') fail(tok, "unsupported string escape");
        out.push_back(e);
        advance();
        continue;
      }
      if (c == '\n') fail(tok, "newline inside string");
      out.push_back(c);
      advance();
    }
    tok.text = std::move(out);
    return tok;
  }

  Token lex_number(Token tok) {
    tok.kind = Tok::Number;
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail(tok, "digits expected after decimal point");
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t mark = pos_;
      int col_mark = column_;
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      } else {
        // Not an exponent after all; "20min" style unit suffixes land here.
        pos_ = mark;
        column_ = col_mark;
      }
    }
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  Token lex_ident(Token tok) {
    tok.kind = Tok::Ident;
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
        advance();
      } else {
        break;
      }
    }
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { consume(); }

  AttackTree parse_document(std::vector<Violation>& violations) {
    expect_ident("tree");
    AttackTree tree;
    tree.name = expect(Tok::String, "tree name string").text;
    tree.root.label = tree.name;
    tree.root.value = Gate{parse_gate_kind(), ""};
    parse_gate_tail(tree.root, /*allow_attrs=*/true);
    expect(Tok::End, "end of document");
    assign_path_ids(tree);
    violations = validate_tree(tree);
    return tree;
  }

 private:
  void consume() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(Errc::Syntax, message, current_.line, current_.column);
  }

  Token expect(Tok kind, const std::string& what) {
    if (current_.kind != kind) fail("expected " + what);
    Token tok = current_;
    consume();
    return tok;
  }

  void expect_ident(std::string_view word) {
    if (current_.kind != Tok::Ident || current_.text != word) {
      fail("expected '" + std::string(word) + "'");
    }
    consume();
  }

  GateKind parse_gate_kind() {
    if (current_.kind == Tok::Ident && current_.text == "and") {
      consume();
      return GateKind::And;
    }
    if (current_.kind == Tok::Ident && current_.text == "or") {
      consume();
      return GateKind::Or;
    }
    fail("expected 'and' or 'or'");
  }

  // Attributes (gates take component only), then the braced child list.
  void parse_gate_tail(Node& gate, bool allow_attrs) {
    if (allow_attrs) {
      while (current_.kind == Tok::Ident && current_.text != "and" &&
             current_.text != "or" && current_.text != "leaf") {
        Token name = current_;
        if (name.text != "component") {
          fail("attribute '" + name.text + "' is only valid on leaves");
        }
        consume();
        expect(Tok::Equals, "'='");
        gate.gate().component = parse_slug();
      }
    }
    expect(Tok::LBrace, "'{'");
    while (current_.kind != Tok::RBrace) {
      if (current_.kind == Tok::End) fail("unterminated gate body, expected '}'");
      gate.children.push_back(parse_child());
    }
    consume();  // '}'
  }

  Node parse_child() {
    if (current_.kind != Tok::Ident) fail("expected 'and', 'or' or 'leaf'");
    if (current_.text == "leaf") {
      consume();
      return parse_leaf();
    }
    Node node;
    node.value = Gate{parse_gate_kind(), ""};
    node.label = expect(Tok::String, "gate label string").text;
    parse_gate_tail(node, /*allow_attrs=*/true);
    return node;
  }

  Node parse_leaf() {
    Node node;
    node.label = expect(Tok::String, "leaf label string").text;
    LeafEvent leaf;
    bool seen[5] = {false, false, false, false, false};
    while (current_.kind == Tok::Ident && current_.text != "and" &&
           current_.text != "or" && current_.text != "leaf") {
      Token name = current_;
      consume();
      expect(Tok::Equals, "'='");
      if (name.text == "component") {
        mark_once(seen[0], name);
        leaf.component = parse_slug();
      } else if (name.text == "freq") {
        mark_once(seen[1], name);
        leaf.frequency_per_day = parse_number("frequency");
        expect(Tok::Slash, "'/day' after frequency");
        expect_ident("day");
      } else if (name.text == "dur") {
        mark_once(seen[2], name);
        leaf.duration_min = parse_number("duration");
        expect_ident("min");
      } else if (name.text == "impact") {
        mark_once(seen[3], name);
        leaf.impact = parse_impact();
      } else if (name.text == "category") {
        mark_once(seen[4], name);
        leaf.category = parse_category();
      } else {
        throw ParseError(Errc::Syntax, "unknown attribute '" + name.text + "'",
                         name.line, name.column);
      }
    }
    node.value = leaf;
    return node;
  }

  void mark_once(bool& flag, const Token& name) {
    if (flag) {
      throw ParseError(Errc::Syntax, "duplicate attribute '" + name.text + "'",
                       name.line, name.column);
    }
    flag = true;
  }

  std::string parse_slug() {
    Token tok = expect(Tok::Ident, "slug value");
    for (unsigned char c : tok.text) {
      if (!(std::islower(c) || std::isdigit(c) || c == '-')) {
        throw ParseError(Errc::Syntax, "'" + tok.text + "' is not a lowercase slug",
                         tok.line, tok.column);
      }
    }
    if (tok.text.front() == '-' || tok.text.back() == '-' ||
        !std::isalpha(static_cast<unsigned char>(tok.text.front()))) {
      throw ParseError(Errc::Syntax, "'" + tok.text + "' is not a lowercase slug",
                       tok.line, tok.column);
    }
    return tok.text;
  }

  double parse_number(const std::string& what) {
    Token tok = expect(Tok::Number, what + " value");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(value)) {
      throw ParseError(Errc::Syntax, "malformed " + what + " '" + tok.text + "'",
                       tok.line, tok.column);
    }
    return value;
  }

  int parse_impact_bound() {
    Token tok = expect(Tok::Number, "impact level");
    if (tok.text.size() != 1 || tok.text[0] < '1' || tok.text[0] > '5') {
      throw ParseError(Errc::Syntax, "impact level must be an integer 1..5",
                       tok.line, tok.column);
    }
    return tok.text[0] - '0';
  }

  ImpactRange parse_impact() {
    ImpactRange range;
    range.lo = parse_impact_bound();
    range.hi = range.lo;
    if (current_.kind == Tok::Minus) {
      consume();
      range.hi = parse_impact_bound();
    }
    return range;
  }

  Category parse_category() {
    Token tok = expect(Tok::Ident, "category name");
    if (tok.text == "security") return Category::Security;
    if (tok.text == "privacy") return Category::Privacy;
    if (tok.text == "safety") return Category::Safety;
    throw ParseError(Errc::Syntax,
                     "category must be security, privacy or safety", tok.line, tok.column);
  }

  Lexer lexer_;
  Token current_;
};

std::string quote(std::string_view label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void serialize_rec(const Node& node, int depth, std::string& out) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
  if (node.is_gate()) {
    const Gate& gate = node.gate();
    out += to_string(gate.kind);
    out += ' ';
    out += quote(node.label);
    if (!gate.component.empty()) {
      out += " component=";
      out += gate.component;
    }
    out += " {\n";
    for (const Node& child : node.children) serialize_rec(child, depth + 1, out);
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += "}\n";
    return;
  }

  const LeafEvent& leaf = node.leaf();
  out += "leaf ";
  out += quote(node.label);
  if (!leaf.component.empty()) {
    out += " component=";
    out += leaf.component;
  }
  out += " freq=";
  out += format_dsl_number(leaf.frequency_per_day);
  out += "/day dur=";
  out += format_dsl_number(leaf.duration_min);
  out += "min impact=";
  out += std::to_string(leaf.impact.lo);
  if (leaf.impact.hi != leaf.impact.lo) {
    out += '-';
    out += std::to_string(leaf.impact.hi);
  }
  out += " category=";
  out += to_string(leaf.category);
  out += '\n';
}

}  // namespace

AttackTree parse_tree(std::string_view text) {
  std::vector<Violation> violations;
  AttackTree tree = parse_tree(text, violations);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "document violates " << violations.size() << " invariant"
        << (violations.size() == 1 ? "" : "s");
    for (const Violation& v : violations) {
      msg << "; " << to_string(v.rule) << " at '" << v.path_id << "': " << v.message;
    }
    throw Error(Errc::Validation, msg.str());
  }
  return tree;
}

AttackTree parse_tree(std::string_view text, std::vector<Violation>& violations) {
  Parser parser(text);
  return parser.parse_document(violations);
}

std::string format_dsl_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string serialize_tree(const AttackTree& tree) {
  std::string out = "tree ";
  out += quote(tree.name);
  out += ' ';
  out += to_string(tree.root.gate().kind);
  if (!tree.root.gate().component.empty()) {
    out += " component=";
    out += tree.root.gate().component;
  }
  out += " {\n";
  for (const Node& child : tree.root.children) serialize_rec(child, 1, out);
  out += "}\n";
  return out;
}

}  // namespace atree
