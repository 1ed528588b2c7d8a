#include "strawbn/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "strawbn/errors.hpp"

namespace strawbn {

namespace {

enum class TokenKind { Ident, String, Number, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;    // identifier, string contents or punctuation
  double number = 0.0;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    if (pos_ >= text_.size()) return tok;

    const char c = text_[pos_];
    if (c == '{' || c == '}' || c == ':' || c == ',' || c == '=') {
      ++pos_;
      tok.kind = TokenKind::Punct;
      tok.text = std::string(1, c);
      return tok;
    }
    if (c == '"') return lex_string();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
        c == '.') {
      return lex_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = TokenKind::Ident;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) {
        tok.text += text_[pos_++];
      }
      return tok;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

  int line() const { return line_; }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.';
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token lex_string() {
    Token tok;
    tok.line = line_;
    tok.kind = TokenKind::String;
    ++pos_;  // opening quote
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError(tok.line, "unterminated string");
      }
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError(tok.line, "unterminated string");
        char esc = text_[pos_++];
        if (esc != '"' && esc != '\\') {
          throw ParseError(tok.line, std::string("unknown escape '\\") + esc + "'");
        }
        c = esc;
      }
      tok.text += c;
    }
    return tok;
  }

  Token lex_number() {
    Token tok;
    tok.line = line_;
    tok.kind = TokenKind::Number;
    std::size_t start = pos_;
    if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    std::string_view body = text_.substr(start, pos_ - start);
    auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(),
                                     tok.number);
    if (ec != std::errc{} || end != body.data() + body.size()) {
      throw ParseError(tok.line, "malformed number \"" + std::string(body) + "\"");
    }
    tok.text = std::string(body);
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class NetworkParser {
 public:
  explicit NetworkParser(std::string_view text) : lexer_(text) { advance(); }

  Network parse() {
    expect_keyword("network");
    Network net;
    net.name = expect_string("network name");
    expect_punct("{");

    struct PendingVariable {
      std::vector<std::string> parent_names;
      int line = 0;
    };
    std::vector<PendingVariable> pending;
    std::map<std::string, int> declared_at;

    while (!at_punct("}")) {
      expect_keyword("variable");
      const int var_line = current_.line;
      Variable var;
      var.name = expect_string("variable name");
      if (auto it = declared_at.find(var.name); it != declared_at.end()) {
        throw ParseError(var_line, "variable \"" + var.name +
                                       "\" already declared at line " +
                                       std::to_string(it->second));
      }
      declared_at[var.name] = var_line;
      expect_punct("{");

      PendingVariable extra;
      extra.line = var_line;
      Cpt cpt;
      bool have_role = false, have_states = false, have_parents = false,
           have_cpt = false;
      while (!at_punct("}")) {
        const Token field = expect_ident("field name");
        if (field.text == "role") {
          if (have_role) throw duplicate_field(field, var.name);
          have_role = true;
          expect_punct(":");
          Token value = expect_ident("role value");
          auto role = role_from_string(value.text);
          if (!role) {
            throw ParseError(value.line,
                             "variable \"" + var.name + "\": unknown role \"" +
                                 value.text + "\" (want target, evidence or other)");
          }
          var.role = *role;
        } else if (field.text == "states") {
          if (have_states) throw duplicate_field(field, var.name);
          have_states = true;
          expect_punct(":");
          var.states = parse_name_list("state name");
        } else if (field.text == "parents") {
          if (have_parents) throw duplicate_field(field, var.name);
          have_parents = true;
          expect_punct(":");
          extra.parent_names = parse_name_list("parent name");
        } else if (field.text == "cpt") {
          if (have_cpt) throw duplicate_field(field, var.name);
          have_cpt = true;
          expect_punct("{");
          while (!at_punct("}")) {
            Token row_kw = expect_ident("'row'");
            if (row_kw.text != "row") {
              throw ParseError(row_kw.line, "expected 'row', got \"" +
                                                row_kw.text + "\"");
            }
            expect_punct(":");
            cpt.rows.push_back(parse_number_list());
          }
          expect_punct("}");
        } else {
          throw ParseError(field.line, "variable \"" + var.name +
                                           "\": unknown field \"" + field.text +
                                           "\"");
        }
      }
      expect_punct("}");

      if (!have_role) {
        throw ParseError(var_line, "variable \"" + var.name +
                                       "\" is missing the mandatory role");
      }
      if (!have_states) {
        throw ParseError(var_line,
                         "variable \"" + var.name + "\" declares no states");
      }
      if (!have_cpt) {
        throw ParseError(var_line, "variable \"" + var.name + "\" has no cpt block");
      }

      cpt.child = static_cast<std::uint32_t>(net.variables.size());
      net.variables.push_back(std::move(var));
      net.cpts.push_back(std::move(cpt));
      pending.push_back(std::move(extra));
    }
    expect_punct("}");
    if (current_.kind != TokenKind::End) {
      throw ParseError(current_.line, "trailing content after network block");
    }

    // Resolve parent names now that every variable is known.
    for (std::size_t i = 0; i < pending.size(); ++i) {
      for (const auto& parent_name : pending[i].parent_names) {
        auto pi = net.index_of(parent_name);
        if (!pi) {
          throw ParseError(pending[i].line,
                           "variable \"" + net.variables[i].name +
                               "\": unknown parent \"" + parent_name + "\"");
        }
        net.cpts[i].parents.push_back(*pi);
      }
    }
    return net;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  bool at_punct(std::string_view p) const {
    return current_.kind == TokenKind::Punct && current_.text == p;
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) {
      throw ParseError(current_.line, "expected '" + std::string(p) + "', got " +
                                          describe(current_));
    }
    advance();
  }

  void expect_keyword(std::string_view word) {
    if (current_.kind != TokenKind::Ident || current_.text != word) {
      throw ParseError(current_.line, "expected '" + std::string(word) + "', got " +
                                          describe(current_));
    }
    advance();
  }

  Token expect_ident(std::string_view what) {
    if (current_.kind != TokenKind::Ident) {
      throw ParseError(current_.line, "expected " + std::string(what) + ", got " +
                                          describe(current_));
    }
    Token tok = current_;
    advance();
    return tok;
  }

  std::string expect_string(std::string_view what) {
    if (current_.kind != TokenKind::String) {
      throw ParseError(current_.line, "expected " + std::string(what) + ", got " +
                                          describe(current_));
    }
    std::string text = current_.text;
    advance();
    return text;
  }

  std::vector<std::string> parse_name_list(std::string_view what) {
    std::vector<std::string> names;
    names.push_back(expect_string(what));
    while (at_punct(",")) {
      advance();
      names.push_back(expect_string(what));
    }
    return names;
  }

  std::vector<double> parse_number_list() {
    std::vector<double> numbers;
    if (current_.kind != TokenKind::Number) {
      throw ParseError(current_.line,
                       "expected a probability, got " + describe(current_));
    }
    numbers.push_back(current_.number);
    advance();
    while (at_punct(",")) {
      advance();
      if (current_.kind != TokenKind::Number) {
        throw ParseError(current_.line,
                         "expected a probability, got " + describe(current_));
      }
      numbers.push_back(current_.number);
      advance();
    }
    return numbers;
  }

  ParseError duplicate_field(const Token& field, const std::string& variable) {
    return ParseError(field.line, "variable \"" + variable + "\" repeats field \"" +
                                      field.text + "\"");
  }

  static std::string describe(const Token& tok) {
    switch (tok.kind) {
      case TokenKind::End: return "end of input";
      case TokenKind::Number: return "number \"" + tok.text + "\"";
      case TokenKind::Punct: return "'" + tok.text + "'";
      default: return "\"" + tok.text + "\"";
    }
  }

  Lexer lexer_;
  Token current_;
};

std::string quote_name(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Shortest decimal form that parses back to the same double.
std::string number_text(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

}  // namespace

Network parse_network(std::string_view text) {
  return NetworkParser(text).parse();
}

std::string serialize_network(const Network& net) {
  std::string out = "network " + quote_name(net.name) + " {\n";
  for (std::size_t i = 0; i < net.variables.size(); ++i) {
    const Variable& var = net.variables[i];
    out += "  variable " + quote_name(var.name) + " {\n";
    out += "    role: " + std::string(to_string(var.role)) + "\n";
    out += "    states: ";
    for (std::size_t s = 0; s < var.states.size(); ++s) {
      if (s > 0) out += ", ";
      out += quote_name(var.states[s]);
    }
    out += "\n";
    const Cpt& cpt = i < net.cpts.size() ? net.cpts[i] : Cpt{};
    if (!cpt.parents.empty()) {
      out += "    parents: ";
      for (std::size_t p = 0; p < cpt.parents.size(); ++p) {
        if (p > 0) out += ", ";
        out += quote_name(net.var(cpt.parents[p]).name);
      }
      out += "\n";
    }
    out += "    cpt {\n";
    for (const auto& row : cpt.rows) {
      out += "      row: ";
      for (std::size_t v = 0; v < row.size(); ++v) {
        if (v > 0) out += ", ";
        out += number_text(row[v]);
      }
      out += "\n";
    }
    out += "    }\n";
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

Evidence parse_findings(std::string_view text, const Network& net) {
  Lexer lexer(text);
  Evidence evidence;
  Token tok = lexer.next();
  while (tok.kind != TokenKind::End) {
    if (tok.kind != TokenKind::Ident && tok.kind != TokenKind::String) {
      throw ParseError(tok.line, "expected a variable name");
    }
    const std::string name = tok.text;
    const int line = tok.line;
    tok = lexer.next();
    if (!(tok.kind == TokenKind::Punct && tok.text == "=")) {
      throw ParseError(tok.line, "expected '=' after \"" + name + "\"");
    }
    tok = lexer.next();
    std::string state;
    if (tok.kind == TokenKind::Ident || tok.kind == TokenKind::String) {
      state = tok.text;
    } else if (tok.kind == TokenKind::Number) {
      state = tok.text;  // state names may look numeric
    } else {
      throw ParseError(tok.line, "expected a state for \"" + name + "\"");
    }

    auto vi = net.index_of(name);
    if (!vi) throw ParseError(line, "unknown variable \"" + name + "\"");
    if (!net.var(*vi).state_index(state)) {
      throw ParseError(line, "variable \"" + name + "\" has no state \"" + state +
                                 "\"");
    }
    if (evidence.assignments.contains(name)) {
      throw ParseError(line, "variable \"" + name + "\" is assigned twice");
    }
    evidence.set(name, state);

    tok = lexer.next();
    if (tok.kind == TokenKind::Punct && tok.text == ",") tok = lexer.next();
  }
  return evidence;
}

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open \"" + path.string() + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

void save_network(const std::filesystem::path& path, const Network& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write \"" + path.string() + "\"");
  out << serialize_network(net);
  if (!out) throw Error("failed writing \"" + path.string() + "\"");
}

}  // namespace strawbn
