#pragma once

// Terms with variables, evaluation into an algebra, and the free algebra
// with its universal map.

#include <ualg/algebra.hpp>
#include <ualg/error.hpp>
#include <ualg/signature.hpp>
#include <ualg/term_text.hpp>
#include <ualg/term_vm.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ualg {

/// Values for the variables of a VarSpec. Unbound variables are allowed
/// until a term that uses them is evaluated.
template <class V>
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(const VarSpec& vars) : values_(vars.size())
    {
        for (const auto& v : vars.vars())
            names_.push_back(v.name);
    }

    void set(VarId v, V value) { values_.at(v.index) = std::move(value); }
    void unset(VarId v) { values_.at(v.index).reset(); }
    bool bound(VarId v) const { return values_.at(v.index).has_value(); }

    const V& at(VarId v) const
    {
        const auto& slot = values_.at(v.index);
        if (!slot)
            throw TermError("no binding for variable '" + names_.at(v.index) + "'");
        return *slot;
    }

    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<std::string> names_;
    std::vector<std::optional<V>> values_;
};

/// The one-symbol term of variable v.
inline Term varterm(const VSignature& vsig, VarId v)
{
    return build_term(vsig.extended(), vsig.varname(v), std::span<const Term>{});
}

inline Term varterm(const VSignature& vsig, std::string_view name)
{
    auto v = vsig.vars().find(name);
    if (!v)
        throw TermError("unknown variable '" + std::string(name) + "'");
    return varterm(vsig, *v);
}

namespace detail {

template <Algebra A>
typename A::value_type eval_unchecked(const A& a, const VSignature& vsig,
                                      const Assignment<typename A::value_type>& alpha, std::span<const OpId> ops)
{
    using V = typename A::value_type;
    const auto base_ops = vsig.base().op_count();
    return term_reduce<V>(vsig.extended(), ops, [&](OpId nm, std::span<const V> rec) -> V {
        if (nm.index >= base_ops)
            return alpha.at(VarId{static_cast<std::uint32_t>(nm.index - base_ops)});
        return a.apply(nm, rec);
    });
}

inline void require_same_signature(const Signature& a, const VSignature& vsig)
{
    if (!(a == vsig.base()))
        throw AlgebraError("algebra signature does not match the term signature");
}

} // namespace detail

/// Value of a term over the variable-extended signature: variables are read
/// from `alpha`, operations are applied in `a`.
template <Algebra A>
typename A::value_type eval(const A& a, const VSignature& vsig, const Assignment<typename A::value_type>& alpha,
                            const Term& t)
{
    detail::require_same_signature(a.signature(), vsig);
    return detail::eval_unchecked(a, vsig, alpha, t.ops());
}

/// Terms over vsig as an algebra over the base signature; operations build
/// terms.
class FreeAlgebra {
public:
    using value_type = Term;

    explicit FreeAlgebra(VSignature vsig) : vsig_(std::move(vsig)) {}

    const Signature& signature() const noexcept { return vsig_.base(); }
    const VSignature& vsignature() const noexcept { return vsig_; }

    Term apply(OpId nm, std::span<const Term> args) const
    {
        return build_term(vsig_.extended(), vsig_.namelift(nm), args);
    }

    bool contains(SortId s, const Term& t) const
    {
        return t.sort() == s && infer_sort(vsig_.extended(), t.ops()) == s;
    }

private:
    VSignature vsig_;
};

/// The homomorphism from the free algebra into `a` that extends `alpha`.
template <Algebra A>
class UniversalMap {
public:
    using value_type = typename A::value_type;

    UniversalMap(const A& a, VSignature vsig, Assignment<value_type> alpha)
        : a_(&a), vsig_(std::move(vsig)), alpha_(std::move(alpha))
    {
        detail::require_same_signature(a.signature(), vsig_);
    }

    value_type operator()(const Term& t) const { return detail::eval_unchecked(*a_, vsig_, alpha_, t.ops()); }
    value_type operator()(SortId, const Term& t) const { return (*this)(t); }

    const VSignature& vsignature() const noexcept { return vsig_; }
    const Assignment<value_type>& assignment() const noexcept { return alpha_; }

private:
    const A* a_;
    VSignature vsig_;
    Assignment<value_type> alpha_;
};

template <Algebra A>
UniversalMap<A> universal_map(const A& a, VSignature vsig, Assignment<typename A::value_type> alpha)
{
    return UniversalMap<A>(a, std::move(vsig), std::move(alpha));
}

struct UniversalityVerdict {
    bool holds = true;
    std::optional<Term> failing;   // first sampled term where the candidate breaks

    explicit operator bool() const noexcept { return holds; }
};

/// Checks that `candidate` (a map from terms to elements of `a`) agrees with
/// `alpha` on every sampled variable term and satisfies the homomorphism law
/// at the decomposition of every other sampled term. Throws AlgebraError if
/// the candidate returns an element outside the carrier of the term's sort.
template <class Candidate>
UniversalityVerdict check_universality(const FiniteAlgebra& a, const VSignature& vsig, const Assignment<Elem>& alpha,
                                       Candidate&& candidate, std::span<const Term> sample)
{
    detail::require_same_signature(a.signature(), vsig);
    const auto& ext = vsig.extended();
    auto image = [&](const Term& t) {
        Elem e = candidate(t);
        if (e >= a.carrier_size(t.sort()))
            throw AlgebraError("candidate maps '" + format_term(ext, t) + "' outside the carrier of sort '"
                               + ext.sort_name(t.sort()) + "'");
        return e;
    };
    std::vector<Elem> rec;
    for (const auto& t : sample) {
        Elem value = image(t);
        bool ok;
        if (auto v = vsig.as_var(t.princop())) {
            ok = value == alpha.at(*v);
        } else {
            auto d = term_decompose(ext, t);
            rec.clear();
            for (const auto& sub : d.subterms)
                rec.push_back(image(sub));
            ok = value == a.apply(d.princop, rec);
        }
        if (!ok)
            return {false, t};
    }
    return {};
}

} // namespace ualg
