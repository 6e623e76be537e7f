#include "s2track/toml_lite.hpp"

#include <cctype>
#include <cstdlib>

namespace s2track::toml {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    const char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at " + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + msg);
  }
};

void skip_ws(Cursor& c) {
  while (!c.done() && (c.peek() == ' ' || c.peek() == '\t')) c.take();
}

void skip_to_eol(Cursor& c) {
  while (!c.done() && c.peek() != '\n') c.take();
}

bool bare_key_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

std::string parse_bare_key(Cursor& c) {
  std::string key;
  while (!c.done() && bare_key_char(c.peek())) key.push_back(c.take());
  if (key.empty()) c.fail("expected a key");
  return key;
}

double parse_number(Cursor& c) {
  const std::size_t start = c.pos;
  while (!c.done()) {
    const char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' ||
        ch == '-' || ch == '.' || ch == 'e' || ch == 'E') {
      c.take();
    } else {
      break;
    }
  }
  const std::string token(c.text.substr(start, c.pos - start));
  if (token.empty()) c.fail("expected a number");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0') c.fail("malformed number '" + token + "'");
  return v;
}

Value parse_value(Cursor& c) {
  Value v;
  v.line = c.line;
  skip_ws(c);
  if (c.done()) c.fail("expected a value");
  const char ch = c.peek();

  if (ch == '"') {
    c.take();
    v.kind = Value::Kind::string;
    while (!c.done() && c.peek() != '"' && c.peek() != '\n') {
      v.str.push_back(c.take());
    }
    if (c.done() || c.peek() != '"') c.fail("unterminated string");
    c.take();
    return v;
  }
  if (ch == '[') {
    c.take();
    v.kind = Value::Kind::array;
    skip_ws(c);
    while (!c.done() && c.peek() != ']') {
      v.array.push_back(parse_number(c));
      skip_ws(c);
      if (!c.done() && c.peek() == ',') {
        c.take();
        skip_ws(c);
      }
    }
    if (c.done()) c.fail("unterminated array");
    c.take();
    return v;
  }
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    const std::string word = parse_bare_key(c);
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::boolean;
      v.boolean = word == "true";
      return v;
    }
    c.fail("unexpected token '" + word + "'");
  }
  v.kind = Value::Kind::number;
  v.num = parse_number(c);
  return v;
}

}  // namespace

Table parse(std::string_view text) {
  Table table;
  Cursor c{text};
  std::string section;

  while (!c.done()) {
    skip_ws(c);
    if (c.done()) break;
    const char ch = c.peek();
    if (ch == '\n' || ch == '\r') {
      c.take();
      continue;
    }
    if (ch == '#') {
      skip_to_eol(c);
      continue;
    }
    if (ch == '[') {
      c.take();
      section.clear();
      skip_ws(c);
      section = parse_bare_key(c);
      while (!c.done() && c.peek() == '.') {
        c.take();
        section += "." + parse_bare_key(c);
      }
      skip_ws(c);
      if (c.done() || c.peek() != ']') c.fail("expected ']'");
      c.take();
      skip_ws(c);
      if (!c.done() && c.peek() == '#') skip_to_eol(c);
      continue;
    }

    const int key_line = c.line;
    const std::string key = parse_bare_key(c);
    skip_ws(c);
    if (c.done() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
    c.take();
    Value v = parse_value(c);
    v.line = key_line;
    skip_ws(c);
    if (!c.done() && c.peek() == '#') skip_to_eol(c);
    if (!c.done() && c.peek() != '\n' && c.peek() != '\r') {
      c.fail("trailing characters after value for '" + key + "'");
    }

    const std::string full = section.empty() ? key : section + "." + key;
    if (table.count(full) != 0) c.fail("duplicate key '" + full + "'");
    table.emplace(full, std::move(v));
  }
  return table;
}

}  // namespace s2track::toml
