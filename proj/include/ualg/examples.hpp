#pragma once

// Ready-made fixtures: the list datatype, monoids and boolean semantics.

#include <ualg/algebra.hpp>
#include <ualg/equations.hpp>
#include <ualg/error.hpp>
#include <ualg/free_algebra.hpp>
#include <ualg/signature.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace ualg::examples {

// ---------------------------------------------------------------- lists

inline Signature list_signature()
{
    // sort 0 = elem, sort 1 = list
    return make_signature_simple(2, {{{}, 1}, {{0, 1}, 1}}, {"nil", "cons"}, {"elem", "list"});
}

/// Variables a, b : elem and l : list.
inline VSignature list_vsignature()
{
    auto sig = list_signature();
    auto vars = make_varspec(sig, {{"a", "elem"}, {"b", "elem"}, {"l", "list"}});
    return vsignature(std::move(sig), std::move(vars));
}

/// Lists over a finite element set, materialized up to a length bound.
///
/// The list carrier holds every list of length at most `bound` in shortlex
/// order and is labelled like `[]`, `[a]`, `[a, b]`. `cons` onto a list that
/// already has `bound` elements throws AlgebraError, so the algebra is total
/// on every term whose value fits the bound.
class BoundedListAlgebra {
public:
    using value_type = Elem;

    static constexpr SortId elem_sort{0};
    static constexpr SortId list_sort{1};

    BoundedListAlgebra(std::vector<std::string> elements, std::size_t bound)
        : sig_(list_signature()), elements_(std::move(elements)), bound_(bound)
    {
        if (elements_.empty())
            throw AlgebraError("list algebra needs a nonempty element carrier");
        offsets_.push_back(0);
        std::size_t count = 1;
        for (std::size_t k = 0; k <= bound_; ++k) {
            offsets_.push_back(offsets_.back() + count);
            count *= elements_.size();
        }
        for (std::size_t k = 0; k <= bound_; ++k) {
            std::size_t n = offsets_[k + 1] - offsets_[k];
            for (std::size_t code = 0; code < n; ++code)
                list_labels_.push_back(format(decode(k, code)));
        }
    }

    const Signature& signature() const noexcept { return sig_; }
    std::size_t bound() const noexcept { return bound_; }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    std::size_t list_count() const noexcept { return list_labels_.size(); }

    std::size_t carrier_size(SortId s) const { return s == elem_sort ? elements_.size() : list_labels_.size(); }
    const std::string& label(SortId s, Elem e) const
    {
        return s == elem_sort ? elements_.at(e) : list_labels_.at(e);
    }

    Elem element(const std::string& label) const
    {
        for (Elem i = 0; i < elements_.size(); ++i)
            if (elements_[i] == label)
                return i;
        throw AlgebraError("'" + label + "' is not an element");
    }

    /// Element indices of the list with carrier index `l`.
    std::vector<Elem> as_list(Elem l) const
    {
        std::size_t k = 0;
        while (l >= offsets_.at(k + 1))
            ++k;
        return decode(k, l - offsets_[k]);
    }

    /// Carrier index of a list, which must fit the bound.
    Elem encode(const std::vector<Elem>& items) const
    {
        if (items.size() > bound_)
            throw AlgebraError("list of length " + std::to_string(items.size()) + " exceeds the bound "
                               + std::to_string(bound_));
        std::size_t code = 0;
        for (auto x : items)
            code = code * elements_.size() + x;
        return static_cast<Elem>(offsets_[items.size()] + code);
    }

    Elem apply(OpId nm, std::span<const Elem> args) const
    {
        if (nm.index == 0)
            return encode({});
        auto items = as_list(args[1]);
        if (items.size() == bound_)
            throw AlgebraError("cons would exceed the list length bound " + std::to_string(bound_));
        items.insert(items.begin(), args[0]);
        return encode(items);
    }

private:
    std::vector<Elem> decode(std::size_t k, std::size_t code) const
    {
        std::vector<Elem> items(k);
        for (std::size_t i = k; i-- > 0;) {
            items[i] = static_cast<Elem>(code % elements_.size());
            code /= elements_.size();
        }
        return items;
    }

    std::string format(const std::vector<Elem>& items) const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < items.size(); ++i)
            out += (i ? ", " : "") + elements_[items[i]];
        return out + "]";
    }

    Signature sig_;
    std::vector<std::string> elements_;
    std::size_t bound_;
    std::vector<std::size_t> offsets_;   // first index of lists of each length
    std::vector<std::string> list_labels_;
};

struct ListFixture {
    Signature signature;
    BoundedListAlgebra algebra;
};

inline ListFixture list_signature_and_algebra(std::vector<std::string> elements, std::size_t bound = 4)
{
    return {list_signature(), BoundedListAlgebra(std::move(elements), bound)};
}

// -------------------------------------------------------------- monoids

inline Signature monoid_signature() { return make_signature_single_sorted({2, 0}, {"mul", "e"}); }

inline VSignature monoid_vsignature()
{
    auto sig = monoid_signature();
    auto vars = make_varspec(sig, {{"x", "u"}, {"y", "u"}, {"z", "u"}});
    return vsignature(std::move(sig), std::move(vars));
}

/// Left identity, right identity and associativity over x, y, z.
inline EqSpec monoid_eqspec()
{
    auto vsig = monoid_vsignature();
    std::vector<Equation> eqs;
    eqs.push_back(parse_equation(vsig, "lid", "u", "mul e x", "x"));
    eqs.push_back(parse_equation(vsig, "rid", "u", "mul x e", "x"));
    eqs.push_back(parse_equation(vsig, "assoc", "u", "mul mul x y z", "mul x mul y z"));
    return {std::move(vsig), std::move(eqs)};
}

inline std::vector<std::string> numeral_labels(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return labels;
}

/// (Z mod n, +, 0) over the monoid signature.
inline FiniteAlgebra zmod_monoid(std::size_t n)
{
    if (n == 0)
        throw AlgebraError("modulus must be at least 1");
    return FiniteAlgebra::from_function(monoid_signature(), {numeral_labels(n)},
                                        [n](OpId nm, std::span<const Elem> x) -> Elem {
                                            if (nm.index == 1)
                                                return 0;
                                            return static_cast<Elem>((x[0] + x[1]) % n);
                                        });
}

/// (Z mod n, -, 0): subtraction with 0 as the unit symbol. Not a monoid for
/// n > 2.
inline FiniteAlgebra zmod_subtraction(std::size_t n)
{
    if (n == 0)
        throw AlgebraError("modulus must be at least 1");
    return FiniteAlgebra::from_function(monoid_signature(), {numeral_labels(n)},
                                        [n](OpId nm, std::span<const Elem> x) -> Elem {
                                            if (nm.index == 1)
                                                return 0;
                                            return static_cast<Elem>((x[0] + n - x[1]) % n);
                                        });
}

/// Booleans under conjunction with unit true, over the monoid signature.
inline FiniteAlgebra bool_and_monoid()
{
    return FiniteAlgebra::from_function(monoid_signature(), {{"false", "true"}},
                                        [](OpId nm, std::span<const Elem> x) -> Elem {
                                            if (nm.index == 1)
                                                return 1;
                                            return x[0] & x[1];
                                        });
}

struct MonoidFixture {
    EqSpec spec;
    FiniteAlgebra algebra;
    EqReport report;
};

inline MonoidFixture monoid_fixture(std::size_t n)
{
    auto spec = monoid_eqspec();
    auto alg = zmod_monoid(n);
    auto report = is_eqalgebra(alg, spec);
    return {std::move(spec), std::move(alg), std::move(report)};
}

// -------------------------------------------------------------- booleans

inline Signature bool_signature()
{
    return make_signature_single_sorted({0, 0, 1, 2, 2, 2}, {"bot", "top", "neg", "conj", "disj", "impl"});
}

/// Variables x, y, z : u.
inline VSignature bool_vsignature()
{
    auto sig = bool_signature();
    auto vars = make_varspec(sig, {{"x", "u"}, {"y", "u"}, {"z", "u"}});
    return vsignature(std::move(sig), std::move(vars));
}

inline bool bool_op(OpId nm, std::span<const bool> x)
{
    switch (nm.index) {
    case 0: return false;
    case 1: return true;
    case 2: return !x[0];
    case 3: return x[0] && x[1];
    case 4: return x[0] || x[1];
    case 5: return !x[0] || x[1];
    }
    throw AlgebraError("unknown boolean connective " + std::to_string(nm.index));
}

/// Booleans as host values.
inline FnAlgebra<bool> bool_native_algebra()
{
    std::vector<FnAlgebra<bool>::Op> ops;
    for (std::uint32_t k = 0; k < 6; ++k)
        ops.push_back([k](std::span<const bool> x) { return bool_op(OpId{k}, x); });
    return FnAlgebra<bool>(bool_signature(), std::move(ops));
}

/// Booleans as a finite algebra with carrier {false, true}.
inline FiniteAlgebra bool_algebra()
{
    return FiniteAlgebra::from_function(bool_signature(), {{"false", "true"}},
                                        [](OpId nm, std::span<const Elem> x) -> Elem {
                                            bool args[2] = {};
                                            for (std::size_t i = 0; i < x.size(); ++i)
                                                args[i] = x[i] != 0;
                                            return bool_op(nm, std::span<const bool>(args, x.size())) ? 1 : 0;
                                        });
}

/// Truth value of a formula over bool_vsignature() under `alpha`.
inline bool tarski_interp(const Assignment<bool>& alpha, const Term& t)
{
    static const FnAlgebra<bool> algebra = bool_native_algebra();
    static const VSignature vsig = bool_vsignature();
    return eval(algebra, vsig, alpha, t);
}

} // namespace ualg::examples
