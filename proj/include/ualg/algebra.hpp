#pragma once

// Algebras over a signature: the generic interface, table-driven finite
// algebras, homomorphisms between them and the unit (final) algebra.

#include <ualg/error.hpp>
#include <ualg/signature.hpp>

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace ualg {

/// An algebra interprets every operation nm of its signature as a function
/// from tuples of values of the arity sorts to a value of sort(nm). Values of
/// all sorts share one host type; callers only pass well-sorted tuples.
template <class A>
concept Algebra = requires(const A& a, OpId nm, std::span<const typename A::value_type> args) {
    typename A::value_type;
    { a.signature() } -> std::same_as<const Signature&>;
    { a.apply(nm, args) } -> std::convertible_to<typename A::value_type>;
};

/// Algebra whose operations are arbitrary host functions, e.g. machine
/// booleans.
template <class V>
class FnAlgebra {
public:
    using value_type = V;
    using Op = std::function<V(std::span<const V>)>;

    FnAlgebra(Signature sig, std::vector<Op> ops) : sig_(std::move(sig)), ops_(std::move(ops))
    {
        if (ops_.size() != sig_.op_count())
            throw AlgebraError("expected " + std::to_string(sig_.op_count()) + " operations, got "
                               + std::to_string(ops_.size()));
    }

    const Signature& signature() const noexcept { return sig_; }

    V apply(OpId nm, std::span<const V> args) const
    {
        if (!sig_.contains(nm))
            throw AlgebraError("unknown operation index " + std::to_string(nm.index));
        if (args.size() != sig_.arity(nm).size())
            throw AlgebraError("operation '" + sig_.op_name(nm) + "' applied to " + std::to_string(args.size())
                               + " arguments");
        return ops_[nm.index](args);
    }

private:
    Signature sig_;
    std::vector<Op> ops_;
};

/// Element of a finite carrier: index into the carrier's label list.
using Elem = std::uint32_t;

/// Finite algebra with labelled carriers and total operation tables.
///
/// Table rows are stored in lexicographic order of argument tuples, first
/// argument most significant, each position in carrier order.
class FiniteAlgebra {
public:
    using value_type = Elem;

    FiniteAlgebra() = default;

    /// `carriers[s]` labels the elements of sort s; `tables[nm]` lists the
    /// results for every argument tuple in lexicographic order.
    FiniteAlgebra(Signature sig, std::vector<std::vector<std::string>> carriers, std::vector<std::vector<Elem>> tables)
        : sig_(std::move(sig)), carriers_(std::move(carriers)), tables_(std::move(tables))
    {
        if (carriers_.size() != sig_.sort_count())
            throw AlgebraError("expected " + std::to_string(sig_.sort_count()) + " carriers, got "
                               + std::to_string(carriers_.size()));
        index_.resize(carriers_.size());
        for (std::size_t s = 0; s < carriers_.size(); ++s)
            for (Elem i = 0; i < carriers_[s].size(); ++i)
                if (!index_[s].emplace(carriers_[s][i], i).second)
                    throw AlgebraError("duplicate element '" + carriers_[s][i] + "' in carrier of sort '"
                                       + sig_.sort_names()[s] + "'");
        if (tables_.size() != sig_.op_count())
            throw AlgebraError("expected " + std::to_string(sig_.op_count()) + " operation tables, got "
                               + std::to_string(tables_.size()));
        for (std::uint32_t k = 0; k < tables_.size(); ++k) {
            OpId nm{k};
            if (tables_[k].size() != domain_size(nm))
                throw AlgebraError("table of '" + sig_.op_name(nm) + "' has " + std::to_string(tables_[k].size())
                                   + " rows, expected " + std::to_string(domain_size(nm)));
            for (auto r : tables_[k])
                if (r >= carrier_size(sig_.sort(nm)))
                    throw AlgebraError("table of '" + sig_.op_name(nm) + "' has a result outside the carrier");
        }
    }

    /// Tabulates `fn(nm, args)` over every well-sorted argument tuple.
    template <class F>
    static FiniteAlgebra from_function(Signature sig, std::vector<std::vector<std::string>> carriers, F&& fn)
    {
        std::vector<std::vector<Elem>> tables(sig.op_count());
        std::vector<std::size_t> sizes;
        for (const auto& c : carriers)
            sizes.push_back(c.size());
        for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
            OpId nm{k};
            for_each_tuple(sig.arity(nm), sizes, [&](std::span<const Elem> args) {
                tables[k].push_back(static_cast<Elem>(fn(nm, args)));
            });
        }
        return FiniteAlgebra(std::move(sig), std::move(carriers), std::move(tables));
    }

    const Signature& signature() const noexcept { return sig_; }
    const std::vector<std::vector<std::string>>& carriers() const noexcept { return carriers_; }
    const std::vector<std::vector<Elem>>& tables() const noexcept { return tables_; }

    std::size_t carrier_size(SortId s) const { return carriers_.at(s.index).size(); }
    const std::string& label(SortId s, Elem e) const { return carriers_.at(s.index).at(e); }

    std::optional<Elem> find_label(SortId s, std::string_view label) const
    {
        const auto& idx = index_.at(s.index);
        if (auto it = idx.find(label); it != idx.end())
            return it->second;
        return std::nullopt;
    }

    Elem elem(SortId s, std::string_view label) const
    {
        if (auto e = find_label(s, label))
            return *e;
        throw AlgebraError("'" + std::string(label) + "' is not an element of sort '" + sig_.sort_name(s) + "'");
    }

    /// Number of argument tuples of nm.
    std::size_t domain_size(OpId nm) const
    {
        std::size_t n = 1;
        for (auto s : sig_.arity(nm))
            n *= carrier_size(s);
        return n;
    }

    Elem apply(OpId nm, std::span<const Elem> args) const
    {
        if (!sig_.contains(nm))
            throw AlgebraError("unknown operation index " + std::to_string(nm.index));
        auto arity = sig_.arity(nm);
        if (args.size() != arity.size())
            throw AlgebraError("operation '" + sig_.op_name(nm) + "' applied to " + std::to_string(args.size())
                               + " arguments");
        std::size_t row = 0;
        for (std::size_t i = 0; i < args.size(); ++i) {
            auto n = carrier_size(arity[i]);
            if (args[i] >= n)
                throw AlgebraError("argument " + std::to_string(i) + " of '" + sig_.op_name(nm)
                                   + "' is outside the carrier");
            row = row * n + args[i];
        }
        return tables_[nm.index][row];
    }

    /// Calls `fn(args)` for every tuple over the carriers of `sorts`, in
    /// lexicographic order.
    template <class F>
    void for_each_args(std::span<const SortId> sorts, F&& fn) const
    {
        std::vector<std::size_t> sizes;
        for (const auto& c : carriers_)
            sizes.push_back(c.size());
        for_each_tuple(sorts, sizes, fn);
    }

    friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b)
    {
        return a.sig_ == b.sig_ && a.carriers_ == b.carriers_ && a.tables_ == b.tables_;
    }

private:
    template <class F>
    static void for_each_tuple(std::span<const SortId> sorts, const std::vector<std::size_t>& sizes, F&& fn)
    {
        std::vector<Elem> args(sorts.size(), 0);
        for (auto s : sorts)
            if (sizes.at(s.index) == 0)
                return;
        while (true) {
            fn(std::span<const Elem>(args));
            std::size_t i = args.size();
            while (i > 0) {
                --i;
                if (++args[i] < sizes[sorts[i].index])
                    break;
                args[i] = 0;
                if (i == 0)
                    return;
            }
            if (args.empty())
                return;
        }
    }

    Signature sig_;
    std::vector<std::vector<std::string>> carriers_;
    std::vector<std::vector<Elem>> tables_;
    std::vector<std::map<std::string, Elem, std::less<>>> index_;
};

struct TableEntry {
    std::vector<std::string> args;
    std::string result;
};

/// Builds a finite algebra from labelled carriers (by sort name) and
/// labelled table rows (by operation name). Rejects unknown names,
/// conflicting or missing rows and results outside the result carrier.
inline FiniteAlgebra make_finite_algebra(Signature sig,
                                         const std::map<std::string, std::vector<std::string>, std::less<>>& carriers,
                                         const std::map<std::string, std::vector<TableEntry>, std::less<>>& tables)
{
    std::vector<std::vector<std::string>> cs(sig.sort_count());
    for (const auto& [sort, labels] : carriers)
        cs[sig.sort_by_name(sort).index] = labels;
    for (std::uint32_t s = 0; s < sig.sort_count(); ++s)
        if (!carriers.contains(sig.sort_names()[s]))
            throw AlgebraError("no carrier given for sort '" + sig.sort_names()[s] + "'");
    for (const auto& [op, rows] : tables)
        if (!sig.find_op(op))
            throw AlgebraError("table for unknown operation '" + op + "'");

    // Label lookup only; tables are filled below.
    std::vector<std::vector<Elem>> placeholder(sig.op_count());
    for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
        std::size_t n = 1;
        for (auto s : sig.arity(OpId{k}))
            n *= cs[s.index].size();
        placeholder[k].assign(n, 0);
    }
    for (std::uint32_t k = 0; k < sig.op_count(); ++k)
        if (!placeholder[k].empty() && cs[sig.sort(OpId{k}).index].empty())
            throw AlgebraError("operation '" + sig.op_name(OpId{k}) + "' has an empty result carrier");
    FiniteAlgebra shape(sig, cs, placeholder);

    std::vector<std::vector<Elem>> out(sig.op_count());
    for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
        OpId nm{k};
        auto arity = sig.arity(nm);
        std::vector<std::optional<Elem>> rows(shape.domain_size(nm));
        auto it = tables.find(sig.op_name(nm));
        if (it != tables.end()) {
            for (const auto& entry : it->second) {
                if (entry.args.size() != arity.size())
                    throw AlgebraError("row of '" + sig.op_name(nm) + "' has " + std::to_string(entry.args.size())
                                       + " arguments, expected " + std::to_string(arity.size()));
                std::size_t row = 0;
                for (std::size_t i = 0; i < arity.size(); ++i)
                    row = row * shape.carrier_size(arity[i]) + shape.elem(arity[i], entry.args[i]);
                auto r = shape.find_label(sig.sort(nm), entry.result);
                if (!r)
                    throw AlgebraError("result '" + entry.result + "' of '" + sig.op_name(nm)
                                       + "' is not in the carrier of sort '" + sig.sort_name(sig.sort(nm)) + "'");
                if (rows[row] && *rows[row] != *r)
                    throw AlgebraError("conflicting rows for '" + sig.op_name(nm) + "'");
                rows[row] = *r;
            }
        }
        std::size_t i = 0;
        shape.for_each_args(arity, [&](std::span<const Elem> args) {
            if (!rows[i]) {
                std::string tuple;
                for (std::size_t j = 0; j < args.size(); ++j)
                    tuple += (j ? ", " : "") + shape.label(arity[j], args[j]);
                throw AlgebraError("missing table entry " + sig.op_name(nm) + "(" + tuple + ")");
            }
            out[k].push_back(*rows[i]);
            ++i;
        });
    }
    return FiniteAlgebra(std::move(sig), std::move(cs), std::move(out));
}

/// Final algebra: one element `*` per sort.
inline FiniteAlgebra unit_algebra(const Signature& sig)
{
    return FiniteAlgebra::from_function(sig, std::vector<std::vector<std::string>>(sig.sort_count(), {"*"}),
                                        [](OpId, std::span<const Elem>) { return Elem{0}; });
}

/// Per-sort map between two finite carriers.
class FiniteHom {
public:
    FiniteHom() = default;

    /// `maps[s][e]` is the image of element e of sort s; every image must be
    /// below `target_sizes[s]`.
    FiniteHom(std::vector<std::vector<Elem>> maps, std::vector<std::size_t> target_sizes)
        : maps_(std::move(maps)), target_sizes_(std::move(target_sizes))
    {
        if (maps_.size() != target_sizes_.size())
            throw AlgebraError("map covers " + std::to_string(maps_.size()) + " sorts, target has "
                               + std::to_string(target_sizes_.size()));
        for (std::size_t s = 0; s < maps_.size(); ++s)
            for (auto e : maps_[s])
                if (e >= target_sizes_[s])
                    throw AlgebraError("map sends an element of sort " + std::to_string(s)
                                       + " outside the target carrier");
    }

    Elem operator()(SortId s, Elem e) const { return maps_.at(s.index).at(e); }

    std::size_t sort_count() const noexcept { return maps_.size(); }
    std::size_t source_size(SortId s) const { return maps_.at(s.index).size(); }
    std::size_t target_size(SortId s) const { return target_sizes_.at(s.index); }
    const std::vector<std::vector<Elem>>& maps() const noexcept { return maps_; }

    /// True if the map is sort-correct from `src` to `dst`.
    bool fits(const FiniteAlgebra& src, const FiniteAlgebra& dst) const
    {
        if (maps_.size() != src.signature().sort_count() || maps_.size() != dst.signature().sort_count())
            return false;
        for (std::uint32_t s = 0; s < maps_.size(); ++s)
            if (maps_[s].size() != src.carrier_size(SortId{s}) || target_sizes_[s] != dst.carrier_size(SortId{s}))
                return false;
        return true;
    }

    friend bool operator==(const FiniteHom&, const FiniteHom&) = default;

private:
    std::vector<std::vector<Elem>> maps_;
    std::vector<std::size_t> target_sizes_;
};

inline std::vector<std::size_t> carrier_sizes(const FiniteAlgebra& a)
{
    std::vector<std::size_t> sizes;
    for (const auto& c : a.carriers())
        sizes.push_back(c.size());
    return sizes;
}

inline FiniteHom identity_hom(const FiniteAlgebra& a)
{
    std::vector<std::vector<Elem>> maps;
    for (const auto& c : a.carriers()) {
        std::vector<Elem> m(c.size());
        for (Elem i = 0; i < m.size(); ++i)
            m[i] = i;
        maps.push_back(std::move(m));
    }
    return FiniteHom(std::move(maps), carrier_sizes(a));
}

/// g after f. Throws AlgebraError unless the target of f is the source of g.
inline FiniteHom compose_hom(const FiniteHom& g, const FiniteHom& f)
{
    if (g.sort_count() != f.sort_count())
        throw AlgebraError("cannot compose maps over different sort sets");
    std::vector<std::vector<Elem>> maps(f.sort_count());
    std::vector<std::size_t> sizes(f.sort_count());
    for (std::uint32_t s = 0; s < f.sort_count(); ++s) {
        SortId sort{s};
        if (f.target_size(sort) != g.source_size(sort))
            throw AlgebraError("target carrier of sort " + std::to_string(s) + " does not match source of outer map");
        for (auto e : f.maps()[s])
            maps[s].push_back(g(sort, e));
        sizes[s] = g.target_size(sort);
    }
    return FiniteHom(std::move(maps), std::move(sizes));
}

/// The constant map into the unit algebra.
inline FiniteHom hom_to_unit(const FiniteAlgebra& a)
{
    std::vector<std::vector<Elem>> maps;
    for (const auto& c : a.carriers())
        maps.emplace_back(c.size(), Elem{0});
    return FiniteHom(std::move(maps), std::vector<std::size_t>(a.carriers().size(), 1));
}

/// Builds a map from labels: `maps[sort][source label] = target label`.
/// Every element of every source carrier must be mapped.
inline FiniteHom hom_from_labels(const FiniteAlgebra& src, const FiniteAlgebra& dst,
                                 const std::map<std::string, std::map<std::string, std::string>, std::less<>>& maps)
{
    const auto& sig = src.signature();
    if (!(sig == dst.signature()))
        throw AlgebraError("source and target algebras have different signatures");
    for (const auto& [sort, m] : maps)
        if (!sig.find_sort(sort))
            throw AlgebraError("map for unknown sort '" + sort + "'");
    std::vector<std::vector<Elem>> out(sig.sort_count());
    for (std::uint32_t s = 0; s < sig.sort_count(); ++s) {
        SortId sort{s};
        const auto& name = sig.sort_name(sort);
        auto it = maps.find(name);
        for (Elem e = 0; e < src.carrier_size(sort); ++e) {
            const auto& from = src.label(sort, e);
            if (it == maps.end() || !it->second.contains(from))
                throw AlgebraError("map does not cover element '" + from + "' of sort '" + name + "'");
            auto to = dst.find_label(sort, it->second.at(from));
            if (!to)
                throw AlgebraError("map sends '" + from + "' to '" + it->second.at(from)
                                   + "', which is not in the target carrier of sort '" + name + "'");
            out[s].push_back(*to);
        }
        if (it != maps.end())
            for (const auto& [from, to] : it->second)
                if (!src.find_label(sort, from))
                    throw AlgebraError("map mentions '" + from + "', which is not in the source carrier of sort '"
                                       + name + "'");
    }
    return FiniteHom(std::move(out), carrier_sizes(dst));
}

struct HomCounterexample {
    OpId op;
    std::vector<Elem> args;

    friend bool operator==(const HomCounterexample&, const HomCounterexample&) = default;
};

struct HomVerdict {
    bool holds = true;
    std::optional<HomCounterexample> counterexample;

    explicit operator bool() const noexcept { return holds; }
};

/// Checks h(nm(x)) == nm(h(x)) for every operation and every argument tuple
/// of the finite source, ops in signature order and tuples in lexicographic
/// order; the first violation is reported. `h(sort, elem)` maps into
/// values of `target`.
template <Algebra Target, class Map>
    requires(!std::same_as<std::remove_cvref_t<Map>, FiniteHom>)
HomVerdict check_hom(Map&& h, const FiniteAlgebra& source, const Target& target)
{
    const auto& sig = source.signature();
    if (!(sig == target.signature()))
        throw AlgebraError("source and target algebras have different signatures");
    using V = typename Target::value_type;
    std::vector<V> mapped;
    for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
        OpId nm{k};
        auto arity = sig.arity(nm);
        std::optional<HomCounterexample> bad;
        source.for_each_args(arity, [&](std::span<const Elem> args) {
            if (bad)
                return;
            mapped.clear();
            for (std::size_t i = 0; i < args.size(); ++i)
                mapped.push_back(h(arity[i], args[i]));
            if (!(h(sig.sort(nm), source.apply(nm, args)) == target.apply(nm, std::span<const V>(mapped))))
                bad = HomCounterexample{nm, {args.begin(), args.end()}};
        });
        if (bad)
            return {false, std::move(bad)};
    }
    return {};
}

inline HomVerdict check_hom(const FiniteHom& h, const FiniteAlgebra& source, const FiniteAlgebra& target)
{
    if (!h.fits(source, target))
        throw AlgebraError("map is not sort-compatible with the given algebras");
    return check_hom([&h](SortId s, Elem e) { return h(s, e); }, source, target);
}

} // namespace ualg
