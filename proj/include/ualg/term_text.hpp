#pragma once

// Whitespace-separated oplist text, e.g. "mul e e".

#include <ualg/error.hpp>
#include <ualg/term_vm.hpp>

#include <sstream>
#include <string>
#include <string_view>

namespace ualg {

inline OpList parse_oplist(const Signature& sig, std::string_view text)
{
    OpList ops;
    std::istringstream in{std::string(text)};
    std::string sym;
    while (in >> sym) {
        auto nm = sig.find_op(sym);
        if (!nm)
            throw FormatError("unknown symbol '" + sym + "'");
        ops.push_back(*nm);
    }
    return ops;
}

inline std::string format_oplist(const Signature& sig, std::span<const OpId> ops)
{
    std::string out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += sig.op_name(ops[i]);
    }
    return out;
}

inline std::string format_term(const Signature& sig, const Term& t) { return format_oplist(sig, t.ops()); }

inline std::string format_sorts(const Signature& sig, std::span<const SortId> sorts)
{
    std::string out = "[";
    for (std::size_t i = 0; i < sorts.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += sig.sort_name(sorts[i]);
    }
    return out + "]";
}

/// Why `ops` fails to be a term, or an empty string if it is one.
inline std::string describe_non_term(const Signature& sig, std::span<const OpId> ops)
{
    auto r = trace_oplist(sig, ops);
    switch (r.failure) {
    case ExecFailure::underflow:
        return "stack underflow at symbol " + std::to_string(r.failed_at) + " ('"
               + sig.op_name(ops[r.failed_at]) + "' needs " + format_sorts(sig, r.expected) + ", stack has "
               + format_sorts(sig, r.found) + ")";
    case ExecFailure::sort_mismatch:
        return "sort mismatch at symbol " + std::to_string(r.failed_at) + " ('" + sig.op_name(ops[r.failed_at])
               + "' needs " + format_sorts(sig, r.expected) + ", stack has " + format_sorts(sig, r.found) + ")";
    case ExecFailure::none:
        break;
    }
    if (r.stack.size() == 1)
        return {};
    return "residual stack " + format_sorts(sig, r.stack.sorts());
}

/// Parses and checks a term; TermError carries the stack-machine diagnostic.
inline Term parse_term(const Signature& sig, std::string_view text)
{
    auto ops = parse_oplist(sig, text);
    if (auto t = try_make_term(sig, ops))
        return std::move(*t);
    throw TermError(describe_non_term(sig, ops));
}

} // namespace ualg
