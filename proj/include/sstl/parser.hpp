#pragma once

#include "sstl/formula.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sstl {

/// Named formulas, in definition order. Later definitions may refer to
/// earlier ones by name.
class FormulaScript {
public:
  void define(std::string name, Formula f);
  bool contains(std::string_view name) const;
  /// Throws EvaluationError naming the missing formula.
  const Formula& get(std::string_view name) const;
  const std::vector<std::pair<std::string, Formula>>& entries() const noexcept { return entries_; }

private:
  std::vector<std::pair<std::string, Formula>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parse a single formula. A bare identifier that is not followed by a
/// comparison refers to a formula of `definitions`. Throws ParseError.
///
/// Grammar (lowest to highest precedence):
///
///     formula  := or ( '->' formula )?
///     or       := and ( '|' and )*
///     and      := binary ( '&' binary )*
///     binary   := unary ( ( 'U' tbounds | 'S' dbounds ) unary )*
///     unary    := '!' unary | 'F' tbounds unary | 'G' tbounds unary
///               | 'somewhere' dbounds unary | 'everywhere' dbounds unary
///               | primary
///     primary  := '(' formula ')' | 'true' | 'false' | atom | name
///     atom     := expr ( '>=' | '>' | '<=' | '<' | '==' ) expr
///     expr     := term ( ('+'|'-') term )*
///     term     := factor ( ('*'|'/') factor )*
///     factor   := number | variable | '-' factor | '(' expr ')'
///     tbounds  := '[' number ',' number ']'
///     dbounds  := '[' number ',' ( number | 'inf' ) ']'
Formula parse_formula(std::string_view text, const FormulaScript* definitions = nullptr);

/// Script format: one `name := formula` per line, '#' starts a comment.
FormulaScript parse_script(std::string_view text);
FormulaScript read_script(const std::filesystem::path& path);

} // namespace sstl
