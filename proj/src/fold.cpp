#include "eqsat/fold.hpp"

#include <array>
#include <cstdint>
#include <limits>

namespace eqsat {

namespace {

struct FoldInfo {
    FoldOp op;
    std::string_view name;
    std::size_t arity;
};

constexpr std::array<FoldInfo, 13> kFolds{{
    {FoldOp::Add, "+", 2},
    {FoldOp::Sub, "-", 2},
    {FoldOp::Mul, "*", 2},
    {FoldOp::Div, "/", 2},
    {FoldOp::Shl, "<<", 2},
    {FoldOp::Shr, ">>", 2},
    {FoldOp::Neg, "neg", 1},
    {FoldOp::And, "and", 2},
    {FoldOp::Or, "or", 2},
    {FoldOp::Not, "not", 1},
    {FoldOp::Lt, "<", 2},
    {FoldOp::Le, "<=", 2},
    {FoldOp::Eq, "==", 2},
}};

using Int = std::int64_t;

// Runs a checked builtin and wraps its result. The builtin must run before
// the result is read, so it cannot be a sibling function argument.
template <typename Checked>
std::optional<Atom> checked_int(Checked op)
{
    Int r = 0;
    if (op(&r))
        return std::nullopt;
    return Atom::integer(r);
}

} // namespace

std::optional<FoldOp> fold_op_from_name(std::string_view name)
{
    for (const FoldInfo& f : kFolds)
        if (f.name == name)
            return f.op;
    return std::nullopt;
}

std::string_view fold_op_name(FoldOp op)
{
    return kFolds[static_cast<std::size_t>(op)].name;
}

std::size_t fold_op_arity(FoldOp op)
{
    return kFolds[static_cast<std::size_t>(op)].arity;
}

std::optional<Atom> eval_fold(FoldOp op, std::span<const Atom> args)
{
    if (args.size() != fold_op_arity(op))
        return std::nullopt;

    bool ints = true;
    bool bools = true;
    for (const Atom& a : args) {
        ints = ints && a.kind() == Atom::Kind::Int;
        bools = bools && a.kind() == Atom::Kind::Bool;
    }

    switch (op) {
    case FoldOp::Not:
        if (!bools)
            return std::nullopt;
        return Atom::boolean(!args[0].bool_value());
    case FoldOp::And:
    case FoldOp::Or:
        if (!bools)
            return std::nullopt;
        return Atom::boolean(op == FoldOp::And ? args[0].bool_value() && args[1].bool_value()
                                               : args[0].bool_value() || args[1].bool_value());
    case FoldOp::Eq:
        if (ints)
            return Atom::boolean(args[0].int_value() == args[1].int_value());
        if (bools)
            return Atom::boolean(args[0].bool_value() == args[1].bool_value());
        return std::nullopt;
    default:
        break;
    }

    if (!ints)
        return std::nullopt;
    Int a = args[0].int_value();
    if (op == FoldOp::Neg) {
        if (a == std::numeric_limits<Int>::min())
            return std::nullopt;
        return Atom::integer(-a);
    }
    Int b = args[1].int_value();

    switch (op) {
    case FoldOp::Add:
        return checked_int([&](Int* r) { return __builtin_add_overflow(a, b, r); });
    case FoldOp::Sub:
        return checked_int([&](Int* r) { return __builtin_sub_overflow(a, b, r); });
    case FoldOp::Mul:
        return checked_int([&](Int* r) { return __builtin_mul_overflow(a, b, r); });
    case FoldOp::Div:
        if (b == 0 || (a == std::numeric_limits<Int>::min() && b == -1) || a % b != 0)
            return std::nullopt;
        return Atom::integer(a / b);
    case FoldOp::Shl:
        if (b < 0 || b > 63)
            return std::nullopt;
        // a * 2^b; a shift that drops significant bits is an overflow
        if (b == 63) {
            if (a == 0 || a == -1)
                return Atom::integer(a == 0 ? 0 : std::numeric_limits<Int>::min());
            return std::nullopt;
        }
        return checked_int([&](Int* r) { return __builtin_mul_overflow(a, Int{1} << b, r); });
    case FoldOp::Shr:
        if (b < 0 || b > 63)
            return std::nullopt;
        return Atom::integer(a >> b);
    case FoldOp::Lt:
        return Atom::boolean(a < b);
    case FoldOp::Le:
        return Atom::boolean(a <= b);
    default:
        return std::nullopt;
    }
}

} // namespace eqsat
