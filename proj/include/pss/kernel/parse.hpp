#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pss/kernel/expr.hpp"

namespace pss {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& token, std::size_t offset);
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

struct ParseOptions {
  // When false, m, n and their x-derivatives expand to u - u2, v - v2, ...
  bool momentum_first_class = false;
  // Pins the symbol delta to +1 or -1.
  std::optional<int> delta;
  // Named subexpressions usable as identifiers.
  std::map<std::string, Expr> names;
};

Expr parse(std::string_view text, const ParseOptions& options = {});

// Resolves one identifier the way parse does; nullopt if unknown.
std::optional<Expr> resolve_identifier(std::string_view name, const ParseOptions& options);

std::string print(const Poly& p);
std::string print(const Expr& e);

}  // namespace pss
