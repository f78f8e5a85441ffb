#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crg/error.hpp"
#include "crg/models.hpp"

namespace crg::cli {

/// Byte range [begin, end) in the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct CNum {
  double re = 0.0;
  double im = 0.0;
  Span span;
};

struct TermNode {
  std::vector<CNum> poly;
  CNum exponent;
  Span span;
};

struct ExpSumNode {
  std::vector<TermNode> terms;
};

struct ProductNode {
  double power = 1.0;
  std::optional<double> angle;
  int genus = 0;
  double cut = 1e-6;
  Span span;
};

struct FunctionSpecAST {
  std::variant<ExpSumNode, ProductNode> node;
  Span span;
};

/// Structural equality; spans are ignored.
bool operator==(const CNum& a, const CNum& b);
bool operator==(const TermNode& a, const TermNode& b);
bool operator==(const ExpSumNode& a, const ExpSumNode& b);
bool operator==(const ProductNode& a, const ProductNode& b);
bool operator==(const FunctionSpecAST& a, const FunctionSpecAST& b);

struct SourcePosition {
  int line = 1;
  int column = 1;
};

SourcePosition locate(std::string_view text, std::size_t offset);

class ParseError : public Error {
 public:
  ParseError(SourcePosition at, std::vector<std::string> expected, const std::string& message);

  SourcePosition position() const noexcept { return at_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourcePosition at_;
  std::vector<std::string> expected_;
};

/// spec    := "expsum:" term (";" term)* | "product:" "zeros=pow(" float ["," "angle=" float] ")"
///            ",genus=" int ",cut=" float
/// term    := poly "exp(" cnum ")"
/// poly    := "[" cnum ("," cnum)* "]"
/// cnum    := float | "(" float "," float ")"
/// Whitespace between tokens is ignored.
FunctionSpecAST parse_function_spec(std::string_view text);

/// Canonical text; parse(render(ast)) == ast.
std::string render(const FunctionSpecAST& ast);

/// certified_radius only matters for products (radius up to which the tail bound holds).
std::unique_ptr<FunctionModel> build_model(const FunctionSpecAST& ast, double certified_radius);

}  // namespace crg::cli
