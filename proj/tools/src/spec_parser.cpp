#include "crg/cli/spec_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace crg::cli {
namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string quote(std::string_view lit) { return "'" + std::string(lit) + "'"; }

// expected-token entries are either literal tokens or a few category names
bool is_category(const std::string& token) {
  return token == "end of input" || token == "number" || token == "nonnegative integer" ||
         token == "exponent digits";
}

std::string describe(const std::vector<std::string>& expected) {
  std::vector<std::string> shown;
  for (const auto& t : expected) shown.push_back(is_category(t) ? t : quote(t));
  return join(shown);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  FunctionSpecAST parse() {
    FunctionSpecAST ast;
    skip_ws();
    const std::size_t start = pos_;
    if (accept_word("expsum")) {
      expect(":");
      ast.node = expsum();
    } else if (accept_word("product")) {
      expect(":");
      ast.node = product(start);
    } else {
      error({"expsum:", "product:"});
    }
    skip_ws();
    if (pos_ != src_.size()) {
      if (std::holds_alternative<ExpSumNode>(ast.node))
        error({";", "end of input"});
      error({"end of input"});
    }
    ast.span = {start, pos_};
    return ast;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(std::string_view lit) {
    skip_ws();
    if (src_.substr(pos_).substr(0, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  // a keyword must not run on into further letters ("expsumx")
  bool accept_word(std::string_view word) {
    skip_ws();
    if (src_.substr(pos_).substr(0, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after < src_.size() && std::isalpha(static_cast<unsigned char>(src_[after]))) return false;
    pos_ = after;
    return true;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) error({std::string(lit)});
  }

  // a multi-character token such as ",cut=": whitespace may appear between its
  // pieces, and on failure the whole token is reported at its start
  bool accept_token(std::initializer_list<std::string_view> pieces) {
    const std::size_t save = pos_;
    for (std::string_view piece : pieces) {
      const bool word = std::isalpha(static_cast<unsigned char>(piece.front()));
      if (!(word ? accept_word(piece) : accept(piece))) {
        pos_ = save;
        return false;
      }
    }
    return true;
  }

  void expect_token(std::initializer_list<std::string_view> pieces) {
    if (accept_token(pieces)) return;
    std::string token;
    for (std::string_view piece : pieces) token += piece;
    error({token});
  }

  [[noreturn]] void error(std::vector<std::string> expected) {
    skip_ws();
    error_at(pos_, std::move(expected), "");
  }

  [[noreturn]] void error_at(std::size_t at, std::vector<std::string> expected, const std::string& detail) {
    const SourcePosition p = locate(src_, at);
    std::ostringstream msg;
    msg << "line " << p.line << ", column " << p.column << ": ";
    if (!detail.empty()) {
      msg << detail;
    } else {
      msg << "expected " << describe(expected) << ", found ";
      if (at >= src_.size())
        msg << "end of input";
      else
        msg << quote(src_.substr(at, 1));
    }
    throw ParseError(p, std::move(expected), msg.str());
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    if (i < src_.size() && (src_[i] == '+' || src_[i] == '-')) ++i;
    const std::size_t mantissa = i;
    std::size_t digits = 0;
    while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i, ++digits;
    if (i < src_.size() && src_[i] == '.') {
      ++i;
      while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i, ++digits;
    }
    if (digits == 0) error_at(start, {"number"}, "");
    if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      const std::size_t exp_digits = j;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      if (j == exp_digits) error_at(j, {"exponent digits"}, "");
      i = j;
    }
    // from_chars rejects a leading '+'
    const std::size_t parse_from = src_[start] == '+' ? mantissa : start;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + parse_from, src_.data() + i, value);
    if (ec != std::errc{} || ptr != src_.data() + i || !std::isfinite(value))
      error_at(start, {"number"}, "number '" + std::string(src_.substr(start, i - start)) + "' is out of range");
    pos_ = i;
    return value;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
    if (i == start) error_at(start, {"nonnegative integer"}, "");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + i, value);
    if (ec != std::errc{} || ptr != src_.data() + i)
      error_at(start, {"nonnegative integer"}, "integer '" + std::string(src_.substr(start, i - start)) + "' is out of range");
    pos_ = i;
    return value;
  }

  bool at_number_start() {
    skip_ws();
    if (pos_ >= src_.size()) return false;
    const char c = src_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  }

  CNum cnum() {
    skip_ws();
    CNum out;
    const std::size_t start = pos_;
    if (accept("(")) {
      out.re = number();
      expect(",");
      out.im = number();
      expect(")");
    } else if (at_number_start()) {
      out.re = number();
    } else {
      error({"number", "("});
    }
    out.span = {start, pos_};
    return out;
  }

  TermNode term() {
    skip_ws();
    TermNode t;
    const std::size_t start = pos_;
    expect("[");
    t.poly.push_back(cnum());
    while (!accept("]")) {
      if (!accept(",")) error({",", "]"});
      t.poly.push_back(cnum());
    }
    bool all_zero = true;
    for (const CNum& c : t.poly) all_zero = all_zero && c.re == 0.0 && c.im == 0.0;
    if (all_zero) error_at(start, {}, "term has an identically zero coefficient polynomial");
    expect_token({"exp", "("});
    t.exponent = cnum();
    expect(")");
    t.span = {start, pos_};
    return t;
  }

  ExpSumNode expsum() {
    ExpSumNode node;
    node.terms.push_back(term());
    while (accept(";")) node.terms.push_back(term());
    for (std::size_t i = 0; i < node.terms.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (node.terms[i].exponent == node.terms[j].exponent)
          error_at(node.terms[i].span.begin, {},
                   "duplicate exponent (" + format_number(node.terms[i].exponent.re) + "," +
                       format_number(node.terms[i].exponent.im) + "): term " + std::to_string(i + 1) +
                       " repeats the exponent of term " + std::to_string(j + 1));
    return node;
  }

  ProductNode product(std::size_t start) {
    ProductNode node;
    expect_token({"zeros", "=", "pow", "("});
    skip_ws();
    const std::size_t power_at = pos_;
    node.power = number();
    if (node.power <= 0.0) error_at(power_at, {}, "zero growth power must be positive");
    if (accept(",")) {
      expect_token({"angle", "="});
      node.angle = number();
    }
    if (!accept(")")) error({",", ")"});
    expect_token({",", "genus", "="});
    node.genus = integer();
    expect_token({",", "cut", "="});
    skip_ws();
    const std::size_t cut_at = pos_;
    node.cut = number();
    if (!(node.cut > 0.0 && node.cut < 1.0)) error_at(cut_at, {}, "cut must lie in (0, 1)");
    node.span = {start, pos_};
    return node;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string render_cnum(const CNum& c) {
  if (c.im == 0.0) return format_number(c.re);
  return "(" + format_number(c.re) + "," + format_number(c.im) + ")";
}

}  // namespace

bool operator==(const CNum& a, const CNum& b) { return a.re == b.re && a.im == b.im; }
bool operator==(const TermNode& a, const TermNode& b) { return a.poly == b.poly && a.exponent == b.exponent; }
bool operator==(const ExpSumNode& a, const ExpSumNode& b) { return a.terms == b.terms; }
bool operator==(const ProductNode& a, const ProductNode& b) {
  return a.power == b.power && a.angle == b.angle && a.genus == b.genus && a.cut == b.cut;
}
bool operator==(const FunctionSpecAST& a, const FunctionSpecAST& b) { return a.node == b.node; }

SourcePosition locate(std::string_view text, std::size_t offset) {
  SourcePosition p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

ParseError::ParseError(SourcePosition at, std::vector<std::string> expected, const std::string& message)
    : Error(ErrorCode::InvalidArgument, message), at_(at), expected_(std::move(expected)) {}

FunctionSpecAST parse_function_spec(std::string_view text) { return Parser(text).parse(); }

std::string render(const FunctionSpecAST& ast) {
  std::string out;
  if (const auto* sum = std::get_if<ExpSumNode>(&ast.node)) {
    out = "expsum:";
    for (std::size_t i = 0; i < sum->terms.size(); ++i) {
      if (i > 0) out += ';';
      out += '[';
      for (std::size_t k = 0; k < sum->terms[i].poly.size(); ++k) {
        if (k > 0) out += ',';
        out += render_cnum(sum->terms[i].poly[k]);
      }
      out += "]exp(" + render_cnum(sum->terms[i].exponent) + ")";
    }
    return out;
  }
  const ProductNode& p = std::get<ProductNode>(ast.node);
  out = "product:zeros=pow(" + format_number(p.power);
  if (p.angle) out += ",angle=" + format_number(*p.angle);
  out += "),genus=" + std::to_string(p.genus) + ",cut=" + format_number(p.cut);
  return out;
}

std::unique_ptr<FunctionModel> build_model(const FunctionSpecAST& ast, double certified_radius) {
  if (const auto* sum = std::get_if<ExpSumNode>(&ast.node)) {
    std::vector<ExpTerm> terms;
    for (const TermNode& t : sum->terms) {
      ExpTerm term;
      for (const CNum& c : t.poly) term.poly.emplace_back(c.re, c.im);
      term.exponent = {t.exponent.re, t.exponent.im};
      terms.push_back(std::move(term));
    }
    return std::make_unique<ExponentialSum>(std::move(terms));
  }
  const ProductNode& p = std::get<ProductNode>(ast.node);
  return std::make_unique<CanonicalProduct>(PowerZeroRule{p.power, 1.0, p.angle.value_or(0.0)}, p.genus, p.cut,
                                            certified_radius);
}

}  // namespace crg::cli
