#include "stringbv/parse.hpp"

#include <cctype>

namespace sbv {

namespace {

class ElementParser {
 public:
  ElementParser(const AlgebraSpec& spec, std::string_view text) : spec_(spec), text_(text) {}

  Element run() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty element literal");
    Element out;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Element t = term();
      out += sign < 0 ? -t : t;
      skip_ws();
      if (pos_ == text_.size()) break;
    }
    return out;
  }

 private:
  const AlgebraSpec& spec_;
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("column " + std::to_string(pos_ + 1) + ": " + what + " in \"" +
                std::string(text_) + "\"");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  int64_t integer() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > (int64_t{1} << 40)) fail("integer too large");
    }
    return v;
  }

  Element factor() {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return spec_.constant(spec_.scalar(integer()));
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a factor");
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'')
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    Element base;
    if (auto i = spec_.find_poly(name))
      base = spec_.poly_gen(*i);
    else if (auto j = spec_.find_ext(name))
      base = spec_.ext_gen(*j);
    else {
      pos_ = start;
      fail("unknown generator '" + name + "'");
    }
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      int64_t k = integer();
      if (k > 0xFFFF) fail("exponent too large");
      return power(spec_, base, static_cast<unsigned>(k));
    }
    return base;
  }

  Element term() {
    Element acc = factor();
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc = multiply(spec_, acc, factor());
    }
    return acc;
  }
};

}  // namespace

Element parse_element(const AlgebraSpec& spec, std::string_view text) {
  return ElementParser(spec, text).run();
}

}  // namespace sbv
