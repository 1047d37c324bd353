#pragma once

// Terms as flat operation lists checked by a sort-stack machine.
//
// An oplist is executed from its last symbol to its first. Each symbol pops
// its arity off the sort stack (head of the arity matches the top of the
// stack) and pushes its result sort. Underflow or a sort mismatch turns the
// stack into an error value that absorbs every later step. An oplist is a
// term of sort s iff executing it from the empty stack leaves exactly [s].

#include <ualg/error.hpp>
#include <ualg/signature.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ualg {

using OpList = std::vector<OpId>;

/// If `prefix` is an initial segment of `stack`, the remainder of `stack`.
/// Both lists are read head first.
inline std::optional<std::vector<SortId>> prefix_remove(std::span<const SortId> prefix,
                                                        std::span<const SortId> stack)
{
    if (prefix.size() > stack.size() || !std::ranges::equal(prefix, stack.first(prefix.size())))
        return std::nullopt;
    return std::vector<SortId>(stack.begin() + static_cast<std::ptrdiff_t>(prefix.size()), stack.end());
}

/// Error-absorbing stack of sorts. Ok stacks are exposed head (top) first.
class SortStack {
public:
    /// The empty Ok stack.
    SortStack() : items_(std::vector<SortId>{}) {}

    static SortStack ok(std::span<const SortId> top_first)
    {
        SortStack st;
        st.items_->assign(top_first.rbegin(), top_first.rend());
        return st;
    }

    static SortStack error()
    {
        SortStack st;
        st.items_.reset();
        return st;
    }

    bool is_error() const noexcept { return !items_.has_value(); }
    bool is_ok() const noexcept { return items_.has_value(); }

    /// Contents head first. Empty for an error stack.
    std::vector<SortId> sorts() const
    {
        if (!items_)
            return {};
        return {items_->rbegin(), items_->rend()};
    }

    std::size_t size() const noexcept { return items_ ? items_->size() : 0; }

    /// Applies one operation in place; see opexec.
    void exec(const Signature& sig, OpId nm)
    {
        if (!items_)
            return;
        auto arity = sig.arity(nm);
        auto& st = *items_;
        if (arity.size() > st.size()) {
            items_.reset();
            return;
        }
        for (std::size_t i = 0; i < arity.size(); ++i)
            if (st[st.size() - 1 - i] != arity[i]) {
                items_.reset();
                return;
            }
        st.resize(st.size() - arity.size());
        st.push_back(sig.sort(nm));
    }

    friend bool operator==(const SortStack&, const SortStack&) = default;

private:
    // Stored top last.
    std::optional<std::vector<SortId>> items_;
};

inline SortStack opexec(const Signature& sig, OpId nm, SortStack stack)
{
    stack.exec(sig, nm);
    return stack;
}

/// Right fold of opexec over `ops`, starting from `init` (the empty Ok
/// stack by default).
inline SortStack oplistexec(const Signature& sig, std::span<const OpId> ops, SortStack init = {})
{
    for (auto it = ops.rbegin(); it != ops.rend() && init.is_ok(); ++it)
        init.exec(sig, *it);
    return init;
}

enum class ExecFailure { none, underflow, sort_mismatch };

/// Execution result with the position of the symbol that broke the stack.
struct ExecReport {
    SortStack stack;
    ExecFailure failure = ExecFailure::none;
    std::size_t failed_at = 0;        // oplist index, valid when failure != none
    std::vector<SortId> expected;     // arity of the failing symbol
    std::vector<SortId> found;        // stack head before the failing symbol
};

inline ExecReport trace_oplist(const Signature& sig, std::span<const OpId> ops)
{
    ExecReport r;
    for (std::size_t i = ops.size(); i-- > 0;) {
        auto before = r.stack.sorts();
        r.stack.exec(sig, ops[i]);
        if (r.stack.is_error()) {
            auto arity = sig.arity(ops[i]);
            r.failure = arity.size() > before.size() ? ExecFailure::underflow : ExecFailure::sort_mismatch;
            r.failed_at = i;
            r.expected.assign(arity.begin(), arity.end());
            before.resize(std::min(before.size(), arity.size()));
            r.found = std::move(before);
            break;
        }
    }
    return r;
}

/// The sort s with oplistexec(ops) == Ok([s]), if any.
inline std::optional<SortId> infer_sort(const Signature& sig, std::span<const OpId> ops)
{
    for (auto nm : ops)
        if (!sig.contains(nm))
            return std::nullopt;
    auto st = oplistexec(sig, ops);
    if (st.is_error() || st.size() != 1)
        return std::nullopt;
    return st.sorts().front();
}

inline bool is_term(const Signature& sig, SortId s, std::span<const OpId> ops)
{
    auto inferred = infer_sort(sig, ops);
    return inferred && *inferred == s;
}

class Term;
using ArgTuple = std::vector<Term>;

/// An oplist together with its checked sort.
///
/// Terms are only created through make_term/try_make_term (which run the
/// stack machine) or build_term (valid by construction), so every Term
/// satisfies oplistexec(ops()) == Ok([sort()]) for the signature it was made
/// against.
class Term {
public:
    const OpList& ops() const noexcept { return ops_; }
    SortId sort() const noexcept { return sort_; }
    OpId princop() const noexcept { return ops_.front(); }
    std::size_t size() const noexcept { return ops_.size(); }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term& a, const Term& b)
    {
        if (auto c = a.sort_ <=> b.sort_; c != 0)
            return c;
        return a.ops_ <=> b.ops_;
    }

private:
    Term(OpList ops, SortId sort) : ops_(std::move(ops)), sort_(sort) {}

    friend std::optional<Term> try_make_term(const Signature&, OpList);
    friend Term build_term(const Signature&, OpId, std::span<const Term>);
    friend Term subterm_at(const Signature&, std::span<const OpId>, std::size_t, SortId);

    OpList ops_;
    SortId sort_;
};

inline std::optional<Term> try_make_term(const Signature& sig, OpList ops)
{
    if (auto s = infer_sort(sig, ops))
        return Term(std::move(ops), *s);
    return std::nullopt;
}

inline Term make_term(const Signature& sig, OpList ops)
{
    if (auto t = try_make_term(sig, std::move(ops)))
        return std::move(*t);
    throw TermError("oplist is not a term");
}

/// [nm] followed by the oplists of `args`. Throws TermError unless the sorts
/// of `args` equal arity(nm).
inline Term build_term(const Signature& sig, OpId nm, std::span<const Term> args)
{
    if (!sig.contains(nm))
        throw TermError("operation index " + std::to_string(nm.index) + " not in signature");
    auto arity = sig.arity(nm);
    if (arity.size() != args.size())
        throw TermError("operation '" + sig.op_name(nm) + "' expects " + std::to_string(arity.size())
                        + " arguments, got " + std::to_string(args.size()));
    std::size_t len = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].sort() != arity[i])
            throw TermError("argument " + std::to_string(i) + " of '" + sig.op_name(nm) + "' has sort '"
                            + sig.sort_name(args[i].sort()) + "', expected '" + sig.sort_name(arity[i]) + "'");
        len += args[i].size();
    }
    OpList ops;
    ops.reserve(len);
    ops.push_back(nm);
    for (const auto& a : args)
        ops.insert(ops.end(), a.ops().begin(), a.ops().end());
    return Term(std::move(ops), sig.sort(nm));
}

inline Term build_term(const Signature& sig, OpId nm, std::initializer_list<Term> args)
{
    return build_term(sig, nm, std::span<const Term>(args.begin(), args.size()));
}

/// End (exclusive) of the complete subterm starting at `pos` in a valid
/// term's oplist.
inline std::size_t subterm_end(const Signature& sig, std::span<const OpId> ops, std::size_t pos)
{
    std::size_t pending = 1;
    while (pending > 0) {
        if (pos >= ops.size())
            throw TermError("oplist ends inside a subterm");
        pending = pending - 1 + sig.arity(ops[pos]).size();
        ++pos;
    }
    return pos;
}

/// The subterm of sort `s` starting at `pos` of a valid term's oplist.
inline Term subterm_at(const Signature& sig, std::span<const OpId> ops, std::size_t pos, SortId s)
{
    auto end = subterm_end(sig, ops, pos);
    return Term(OpList(ops.begin() + static_cast<std::ptrdiff_t>(pos), ops.begin() + static_cast<std::ptrdiff_t>(end)),
                s);
}

struct Decomposition {
    OpId princop;
    ArgTuple subterms;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Splits a term into its principal operation and its argument subterms,
/// the unique consecutive segments of the tail that are terms of the
/// arity sorts.
inline Decomposition term_decompose(const Signature& sig, const Term& t)
{
    const auto& ops = t.ops();
    Decomposition d{ops.front(), {}};
    auto arity = sig.arity(d.princop);
    d.subterms.reserve(arity.size());
    std::size_t pos = 1;
    for (auto s : arity) {
        d.subterms.push_back(subterm_at(sig, ops, pos, s));
        pos += d.subterms.back().size();
    }
    return d;
}

namespace detail {

/// Contiguous argument buffer; std::vector<bool> cannot back a span.
template <class R>
class ArgBuffer {
public:
    void clear() { items_.clear(); }
    void push_back(R value) { items_.push_back(std::move(value)); }
    std::span<const R> view() const { return items_; }

private:
    std::vector<R> items_;
};

template <>
class ArgBuffer<bool> {
public:
    void clear() { size_ = 0; }
    void push_back(bool value)
    {
        if (size_ == capacity_) {
            auto grown = std::make_unique<bool[]>(capacity_ * 2 + 4);
            std::copy_n(items_.get(), size_, grown.get());
            items_ = std::move(grown);
            capacity_ = capacity_ * 2 + 4;
        }
        items_[size_++] = value;
    }
    std::span<const bool> view() const { return {items_.get(), size_}; }

private:
    std::unique_ptr<bool[]> items_;
    std::size_t size_ = 0;
    std::size_t capacity_ = 0;
};

} // namespace detail

/// Structural fold over a term without materializing subterms:
/// `step(nm, rec)` receives the results for the arguments of nm in order.
/// Runs the oplist right to left on a stack of results.
template <class R, class Step>
R term_reduce(const Signature& sig, std::span<const OpId> ops, Step&& step)
{
    std::vector<R> stack;
    detail::ArgBuffer<R> args;
    for (std::size_t i = ops.size(); i-- > 0;) {
        const auto k = sig.arity(ops[i]).size();
        if (k > stack.size())
            throw TermError("oplist is not a term");
        args.clear();
        for (std::size_t j = 0; j < k; ++j) {
            args.push_back(std::move(stack.back()));
            stack.pop_back();
        }
        stack.push_back(step(ops[i], args.view()));
    }
    if (stack.size() != 1)
        throw TermError("oplist is not a term");
    return std::move(stack.front());
}

/// Structural fold over a term: `step(nm, v, rec)` receives the argument
/// subterms v of nm and the fold results rec for each of them. Satisfies
///   term_fold(step, build_term(nm, v)) == step(nm, v, map(term_fold(step), v)).
template <class R, class Step>
R term_fold(const Signature& sig, const Term& t, Step&& step)
{
    struct Entry {
        R value;
        std::size_t begin;
        std::size_t end;
        SortId sort;
    };
    const auto& ops = t.ops();
    std::vector<Entry> stack;
    ArgTuple subterms;
    detail::ArgBuffer<R> rec;
    for (std::size_t i = ops.size(); i-- > 0;) {
        auto arity = sig.arity(ops[i]);
        subterms.clear();
        rec.clear();
        std::size_t end = i + 1;
        for (std::size_t j = 0; j < arity.size(); ++j) {
            auto& e = stack.back();
            subterms.push_back(subterm_at(sig, ops, e.begin, e.sort));
            rec.push_back(std::move(e.value));
            end = e.end;
            stack.pop_back();
        }
        R value = step(ops[i], std::span<const Term>(subterms), rec.view());
        stack.push_back(Entry{std::move(value), i, end, sig.sort(ops[i])});
    }
    return std::move(stack.front().value);
}

/// Height of the term tree; nullary symbols have depth 1.
inline std::size_t depth(const Signature& sig, const Term& t)
{
    return term_reduce<std::size_t>(sig, t.ops(), [](OpId, std::span<const std::size_t> rec) {
        std::size_t m = 0;
        for (auto d : rec)
            m = std::max(m, d);
        return m + 1;
    });
}

} // namespace ualg
