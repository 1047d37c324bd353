#pragma once

// Equations between terms with variables and exhaustive model checking over
// finite algebras.

#include <ualg/algebra.hpp>
#include <ualg/error.hpp>
#include <ualg/free_algebra.hpp>
#include <ualg/term_text.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ualg {

struct Equation {
    std::string name;
    SortId sort;
    Term lhs;
    Term rhs;
};

inline Equation make_equation(const VSignature& vsig, std::string name, SortId sort, Term lhs, Term rhs)
{
    const auto& ext = vsig.extended();
    if (lhs.sort() != sort || rhs.sort() != sort)
        throw TermError("equation '" + name + "': sides have sorts " + ext.sort_name(lhs.sort()) + " and "
                        + ext.sort_name(rhs.sort()) + ", expected " + ext.sort_name(sort));
    return {std::move(name), sort, std::move(lhs), std::move(rhs)};
}

/// Equation from term text, e.g. ("lid", "u", "mul e x", "x").
inline Equation parse_equation(const VSignature& vsig, std::string name, std::string_view sort, std::string_view lhs,
                               std::string_view rhs)
{
    const auto& ext = vsig.extended();
    auto s = ext.find_sort(sort);
    if (!s)
        throw TermError("equation '" + name + "': unknown sort '" + std::string(sort) + "'");
    auto side = [&](std::string_view text, const char* which) {
        try {
            return parse_term(ext, text);
        } catch (const Error& e) {
            throw TermError("equation '" + name + "' " + which + ": " + e.what());
        }
    };
    auto l = side(lhs, "lhs");
    auto r = side(rhs, "rhs");
    return make_equation(vsig, std::move(name), *s, std::move(l), std::move(r));
}

/// A signature, its variables and a named list of equations over them.
struct EqSpec {
    VSignature vsig;
    std::vector<Equation> equations;
};

/// Variables occurring in t, in VarSpec order without duplicates.
inline std::vector<VarId> free_vars(const VSignature& vsig, const Term& t)
{
    std::vector<VarId> out;
    for (auto nm : t.ops())
        if (auto v = vsig.as_var(nm))
            out.push_back(*v);
    std::ranges::sort(out);
    auto dup = std::ranges::unique(out);
    out.erase(dup.begin(), dup.end());
    return out;
}

inline std::vector<VarId> free_vars(const VSignature& vsig, const Equation& e)
{
    auto a = free_vars(vsig, e.lhs);
    auto b = free_vars(vsig, e.rhs);
    std::vector<VarId> out;
    std::ranges::set_union(a, b, std::back_inserter(out));
    return out;
}

using Binding = std::vector<std::pair<VarId, Elem>>;

struct HoldsVerdict {
    bool holds = true;
    std::optional<Binding> counterexample;

    explicit operator bool() const noexcept { return holds; }
};

/// Checks lhs == rhs under every assignment of `vars` (which must include
/// the free variables of e). Assignments are enumerated lexicographically,
/// the first variable most significant, and the first failing one is
/// reported.
inline HoldsVerdict holds_over(const FiniteAlgebra& a, const VSignature& vsig, const Equation& e,
                               std::span<const VarId> vars)
{
    detail::require_same_signature(a.signature(), vsig);
    for (auto v : free_vars(vsig, e))
        if (std::ranges::find(vars, v) == vars.end())
            throw TermError("equation '" + e.name + "' uses variable '" + vsig.vars().name(v)
                            + "' outside the enumerated set");
    std::vector<std::size_t> sizes;
    for (auto v : vars) {
        sizes.push_back(a.carrier_size(vsig.vars().varsort(v)));
        if (sizes.back() == 0)
            return {};
    }
    Assignment<Elem> alpha(vsig.vars());
    std::vector<Elem> idx(vars.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            alpha.set(vars[i], idx[i]);
        auto l = detail::eval_unchecked(a, vsig, alpha, e.lhs.ops());
        auto r = detail::eval_unchecked(a, vsig, alpha, e.rhs.ops());
        if (l != r) {
            Binding b;
            for (std::size_t i = 0; i < vars.size(); ++i)
                b.emplace_back(vars[i], idx[i]);
            return {false, std::move(b)};
        }
        std::size_t i = vars.size();
        bool done = true;
        while (i-- > 0) {
            if (++idx[i] < sizes[i]) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        if (done)
            return {};
    }
}

/// Whether e holds in `a` under every assignment of its free variables.
inline HoldsVerdict holds(const FiniteAlgebra& a, const VSignature& vsig, const Equation& e)
{
    auto vars = free_vars(vsig, e);
    return holds_over(a, vsig, e, vars);
}

struct EqReport {
    std::vector<std::pair<std::string, HoldsVerdict>> results;

    bool all_hold() const
    {
        return std::ranges::all_of(results, [](const auto& r) { return r.second.holds; });
    }

    const HoldsVerdict& operator[](std::string_view name) const
    {
        for (const auto& [n, v] : results)
            if (n == name)
                return v;
        throw Error("no equation named '" + std::string(name) + "'");
    }
};

inline EqReport is_eqalgebra(const FiniteAlgebra& a, const EqSpec& spec)
{
    EqReport report;
    for (const auto& e : spec.equations)
        report.results.emplace_back(e.name, holds(a, spec.vsig, e));
    return report;
}

template <class V>
struct SampledVerdict {
    bool counterexample_found = false;
    std::optional<Assignment<V>> counterexample;
    std::size_t samples = 0;
};

/// Randomized check for algebras that cannot be enumerated.
/// `sampler(sort, rng)` draws a value of the given sort. A clean run means
/// "no counterexample found", not that the equation holds.
template <Algebra A, class Sampler>
SampledVerdict<typename A::value_type> holds_sampled(const A& a, const VSignature& vsig, const Equation& e,
                                                     std::size_t n_samples, std::uint64_t seed, Sampler&& sampler)
{
    using V = typename A::value_type;
    detail::require_same_signature(a.signature(), vsig);
    auto vars = free_vars(vsig, e);
    std::mt19937_64 rng(seed);
    SampledVerdict<V> out;
    for (std::size_t n = 0; n < n_samples; ++n) {
        Assignment<V> alpha(vsig.vars());
        for (auto v : vars)
            alpha.set(v, sampler(vsig.vars().varsort(v), rng));
        ++out.samples;
        if (!(detail::eval_unchecked(a, vsig, alpha, e.lhs.ops()) == detail::eval_unchecked(a, vsig, alpha, e.rhs.ops()))) {
            out.counterexample_found = true;
            out.counterexample = std::move(alpha);
            break;
        }
    }
    return out;
}

} // namespace ualg
