#pragma once

// Multi-sorted signatures, variable specifications and the signature
// extended with variables as nullary operations.

#include <ualg/error.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ualg {

/// Dense index of a sort inside its signature.
struct SortId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(SortId, SortId) = default;
};

/// Dense index of an operation symbol inside its signature.
struct OpId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(OpId, OpId) = default;
};

/// Dense index of a variable inside its VarSpec.
struct VarId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(VarId, VarId) = default;
};

struct OpDecl {
    std::string name;
    std::vector<SortId> arity;
    SortId sort;

    friend bool operator==(const OpDecl&, const OpDecl&) = default;
};

/// Operation declaration by sort names, as accepted by make_signature.
struct OpSpec {
    std::string name;
    std::vector<std::string> arity;
    std::string sort;
};

namespace detail {

using NameIndex = std::map<std::string, std::uint32_t, std::less<>>;

inline void check_symbol_name(std::string_view what, std::string_view name)
{
    if (name.empty())
        throw SignatureError(std::string(what) + " name must not be empty");
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
    if (std::ranges::any_of(name, is_space))
        throw SignatureError(std::string(what) + " name '" + std::string(name) + "' contains whitespace");
}

inline std::optional<std::uint32_t> lookup(const NameIndex& index, std::string_view name)
{
    if (auto it = index.find(name); it != index.end())
        return it->second;
    return std::nullopt;
}

} // namespace detail

/// A finite set of sorts and operation symbols with their arities.
///
/// Sorts and operations are numbered densely in declaration order; the
/// numbering is the stable total order used by every enumeration in the
/// library. Immutable after construction.
class Signature {
public:
    Signature() = default;

    Signature(std::vector<std::string> sort_names, std::vector<OpDecl> ops)
        : sort_names_(std::move(sort_names)), ops_(std::move(ops))
    {
        for (std::uint32_t i = 0; i < sort_names_.size(); ++i) {
            detail::check_symbol_name("sort", sort_names_[i]);
            if (!sort_index_.emplace(sort_names_[i], i).second)
                throw SignatureError("duplicate sort '" + sort_names_[i] + "'");
        }
        for (std::uint32_t i = 0; i < ops_.size(); ++i) {
            const auto& op = ops_[i];
            detail::check_symbol_name("operation", op.name);
            if (!op_index_.emplace(op.name, i).second)
                throw SignatureError("duplicate operation '" + op.name + "'");
            auto check = [&](SortId s) {
                if (s.index >= sort_names_.size())
                    throw SignatureError("operation '" + op.name + "' refers to unknown sort index "
                                         + std::to_string(s.index));
            };
            std::ranges::for_each(op.arity, check);
            check(op.sort);
        }
    }

    std::size_t sort_count() const noexcept { return sort_names_.size(); }
    std::size_t op_count() const noexcept { return ops_.size(); }

    const std::vector<std::string>& sort_names() const noexcept { return sort_names_; }
    const std::vector<OpDecl>& ops() const noexcept { return ops_; }

    const std::string& sort_name(SortId s) const { return sort_names_.at(s.index); }
    const std::string& op_name(OpId nm) const { return ops_.at(nm.index).name; }
    std::span<const SortId> arity(OpId nm) const { return ops_.at(nm.index).arity; }
    SortId sort(OpId nm) const { return ops_.at(nm.index).sort; }

    std::optional<SortId> find_sort(std::string_view name) const
    {
        if (auto i = detail::lookup(sort_index_, name))
            return SortId{*i};
        return std::nullopt;
    }

    std::optional<OpId> find_op(std::string_view name) const
    {
        if (auto i = detail::lookup(op_index_, name))
            return OpId{*i};
        return std::nullopt;
    }

    SortId sort_by_name(std::string_view name) const
    {
        if (auto s = find_sort(name))
            return *s;
        throw SignatureError("unknown sort '" + std::string(name) + "'");
    }

    OpId op_by_name(std::string_view name) const
    {
        if (auto nm = find_op(name))
            return *nm;
        throw SignatureError("unknown operation '" + std::string(name) + "'");
    }

    bool contains(OpId nm) const noexcept { return nm.index < ops_.size(); }
    bool contains(SortId s) const noexcept { return s.index < sort_names_.size(); }

    friend bool operator==(const Signature& a, const Signature& b)
    {
        return a.sort_names_ == b.sort_names_ && a.ops_ == b.ops_;
    }

private:
    std::vector<std::string> sort_names_;
    std::vector<OpDecl> ops_;
    detail::NameIndex sort_index_;
    detail::NameIndex op_index_;
};

/// Builds a signature from sort names and operations whose arities are
/// given by sort name. Throws SignatureError on duplicate names or on a
/// reference to an undeclared sort.
inline Signature make_signature(std::vector<std::string> sorts, const std::vector<OpSpec>& ops)
{
    detail::NameIndex index;
    for (std::uint32_t i = 0; i < sorts.size(); ++i)
        if (!index.emplace(sorts[i], i).second)
            throw SignatureError("duplicate sort '" + sorts[i] + "'");
    auto resolve = [&](const OpSpec& op, const std::string& name) {
        if (auto i = detail::lookup(index, name))
            return SortId{*i};
        throw SignatureError("operation '" + op.name + "' refers to unknown sort '" + name + "'");
    };
    std::vector<OpDecl> decls;
    decls.reserve(ops.size());
    for (const auto& op : ops) {
        OpDecl d{op.name, {}, resolve(op, op.sort)};
        for (const auto& a : op.arity)
            d.arity.push_back(resolve(op, a));
        decls.push_back(std::move(d));
    }
    return Signature(std::move(sorts), std::move(decls));
}

/// One declaration of a simple signature: argument sort indices and result
/// sort index.
struct SimpleDecl {
    std::vector<std::size_t> arity;
    std::size_t sort = 0;
};

/// Compiles a simple signature: sorts are 0..ns-1 and op k is the k-th
/// declaration. Sorts default to `s0, s1, ...` and ops to `op0, op1, ...`
/// unless names are supplied.
inline Signature make_signature_simple(std::size_t ns, const std::vector<SimpleDecl>& decls,
                                       std::vector<std::string> op_names = {},
                                       std::vector<std::string> sort_names = {})
{
    if (sort_names.empty())
        for (std::size_t i = 0; i < ns; ++i)
            sort_names.push_back("s" + std::to_string(i));
    if (sort_names.size() != ns)
        throw SignatureError("expected " + std::to_string(ns) + " sort names, got "
                             + std::to_string(sort_names.size()));
    if (op_names.empty())
        for (std::size_t i = 0; i < decls.size(); ++i)
            op_names.push_back("op" + std::to_string(i));
    if (op_names.size() != decls.size())
        throw SignatureError("expected " + std::to_string(decls.size()) + " operation names, got "
                             + std::to_string(op_names.size()));

    auto index = [&](std::size_t k, std::size_t s) {
        if (s >= ns)
            throw SignatureError("declaration " + std::to_string(k) + " uses sort index " + std::to_string(s)
                                 + " out of range [0, " + std::to_string(ns) + ")");
        return SortId{static_cast<std::uint32_t>(s)};
    };
    std::vector<OpDecl> ops;
    for (std::size_t k = 0; k < decls.size(); ++k) {
        OpDecl d{op_names[k], {}, index(k, decls[k].sort)};
        for (auto s : decls[k].arity)
            d.arity.push_back(index(k, s));
        ops.push_back(std::move(d));
    }
    return Signature(std::move(sort_names), std::move(ops));
}

/// Single-sorted signature from a list of arities. The sole sort is named
/// `u` unless another name is given.
inline Signature make_signature_single_sorted(const std::vector<std::size_t>& arities,
                                              std::vector<std::string> op_names = {},
                                              std::string sort_name = "u")
{
    std::vector<SimpleDecl> decls;
    for (auto n : arities)
        decls.push_back({std::vector<std::size_t>(n, 0), 0});
    return make_signature_simple(1, decls, std::move(op_names), {std::move(sort_name)});
}

struct VarDecl {
    std::string name;
    SortId sort;

    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// A finite, ordered set of sorted variables over a base signature.
class VarSpec {
public:
    VarSpec() = default;

    VarSpec(const Signature& sig, std::vector<VarDecl> vars) : vars_(std::move(vars))
    {
        for (std::uint32_t i = 0; i < vars_.size(); ++i) {
            detail::check_symbol_name("variable", vars_[i].name);
            if (!sig.contains(vars_[i].sort))
                throw SignatureError("variable '" + vars_[i].name + "' has unknown sort index "
                                     + std::to_string(vars_[i].sort.index));
            if (!index_.emplace(vars_[i].name, i).second)
                throw SignatureError("duplicate variable '" + vars_[i].name + "'");
        }
    }

    std::size_t size() const noexcept { return vars_.size(); }
    bool empty() const noexcept { return vars_.empty(); }
    const std::vector<VarDecl>& vars() const noexcept { return vars_; }
    const std::string& name(VarId v) const { return vars_.at(v.index).name; }
    SortId varsort(VarId v) const { return vars_.at(v.index).sort; }

    std::optional<VarId> find(std::string_view name) const
    {
        if (auto i = detail::lookup(index_, name))
            return VarId{*i};
        return std::nullopt;
    }

    friend bool operator==(const VarSpec& a, const VarSpec& b) { return a.vars_ == b.vars_; }

private:
    std::vector<VarDecl> vars_;
    detail::NameIndex index_;
};

/// VarSpec from (variable name, sort name) pairs.
inline VarSpec make_varspec(const Signature& sig, const std::vector<std::pair<std::string, std::string>>& vars)
{
    std::vector<VarDecl> decls;
    for (const auto& [name, sort] : vars) {
        auto s = sig.find_sort(sort);
        if (!s)
            throw SignatureError("variable '" + name + "' has unknown sort '" + sort + "'");
        decls.push_back({name, *s});
    }
    return VarSpec(sig, std::move(decls));
}

/// An operation symbol of the extended signature, seen either as a base
/// operation or as a variable.
using ExtOpId = std::variant<OpId, VarId>;

/// The base signature extended with every variable as a nullary operation
/// of its sort. Base ops keep their indices; variable v gets index
/// `base.op_count() + v`.
class VSignature {
public:
    VSignature() = default;

    VSignature(Signature base, VarSpec vars) : base_(std::move(base)), vars_(std::move(vars))
    {
        std::vector<OpDecl> ops = base_.ops();
        for (const auto& v : vars_.vars()) {
            if (base_.find_op(v.name))
                throw SignatureError("variable '" + v.name + "' collides with an operation of the same name");
            ops.push_back({v.name, {}, v.sort});
        }
        extended_ = Signature(base_.sort_names(), std::move(ops));
    }

    const Signature& base() const noexcept { return base_; }
    const VarSpec& vars() const noexcept { return vars_; }
    const Signature& extended() const noexcept { return extended_; }

    OpId namelift(OpId nm) const
    {
        if (!base_.contains(nm))
            throw SignatureError("operation index " + std::to_string(nm.index) + " not in base signature");
        return nm;
    }

    OpId varname(VarId v) const
    {
        if (v.index >= vars_.size())
            throw SignatureError("variable index " + std::to_string(v.index) + " not in variable specification");
        return OpId{static_cast<std::uint32_t>(base_.op_count() + v.index)};
    }

    ExtOpId classify(OpId ext) const
    {
        if (ext.index < base_.op_count())
            return ext;
        if (ext.index < extended_.op_count())
            return VarId{static_cast<std::uint32_t>(ext.index - base_.op_count())};
        throw SignatureError("operation index " + std::to_string(ext.index) + " not in extended signature");
    }

    bool is_var(OpId ext) const noexcept { return ext.index >= base_.op_count(); }

    std::optional<VarId> as_var(OpId ext) const
    {
        const ExtOpId id = classify(ext);
        if (const auto* v = std::get_if<VarId>(&id))
            return *v;
        return std::nullopt;
    }

private:
    Signature base_;
    VarSpec vars_;
    Signature extended_;
};

inline VSignature vsignature(Signature sig, VarSpec vs)
{
    return VSignature(std::move(sig), std::move(vs));
}

} // namespace ualg
