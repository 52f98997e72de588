#ifndef WEYLFLOW_PARSER_HPP
#define WEYLFLOW_PARSER_HPP

#include <string_view>

#include "weylflow/rational_function.hpp"

namespace weylflow {

// Parses `+ - * / ^ ( )` expressions over integer literals and the symbols
// of `ctx` into a canonical rational function. `^` takes a non-negative
// integer exponent; `p/q` literals are ordinary division. Throws ParseError.
RationalFunction parse_expression(std::string_view text, const Context& ctx);

} // namespace weylflow

#endif
