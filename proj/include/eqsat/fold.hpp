#pragma once

#include "eqsat/term.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace eqsat {

/// Closed vocabulary of computable operators for dynamic right-hand sides
/// and constant folding.
enum class FoldOp { Add, Sub, Mul, Div, Shl, Shr, Neg, And, Or, Not, Lt, Le, Eq };

std::optional<FoldOp> fold_op_from_name(std::string_view name);
std::string_view fold_op_name(FoldOp op);
std::size_t fold_op_arity(FoldOp op);

/// Exact 64-bit evaluation. Returns nullopt whenever the result is not
/// representable or the operands have the wrong kind: overflow, inexact or
/// by-zero division, shift outside [0, 63], floats, symbols.
std::optional<Atom> eval_fold(FoldOp op, std::span<const Atom> args);

} // namespace eqsat
