#pragma once

// Breadth-first enumeration of all terms up to a depth bound.

#include <ualg/error.hpp>
#include <ualg/term_vm.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace ualg {

/// Calls `fn(term, depth)` for every term of every sort with depth at most
/// `max_depth`. Order: by depth, then operation in signature order, then
/// argument tuples in lexicographic order of the previously enumerated
/// terms. Only terms of depth below `max_depth` are kept in memory.
template <class F>
void for_each_term(const Signature& sig, std::size_t max_depth, F&& fn)
{
    const auto nsorts = sig.sort_count();
    std::vector<std::vector<Term>> terms(nsorts);      // depth <= d-1, per sort
    std::vector<std::size_t> prev_start(nsorts, 0);    // first term of depth d-1
    std::vector<std::vector<Term>> fresh(nsorts);
    std::vector<std::size_t> idx;
    ArgTuple args;

    for (std::size_t d = 1; d <= max_depth; ++d) {
        const bool keep = d < max_depth;
        for (auto& f : fresh)
            f.clear();
        for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
            OpId nm{k};
            auto arity = sig.arity(nm);
            if (arity.empty()) {
                if (d == 1) {
                    Term t = build_term(sig, nm, std::span<const Term>{});
                    fn(t, d);
                    if (keep)
                        fresh[t.sort().index].push_back(std::move(t));
                }
                continue;
            }
            if (d == 1)
                continue;
            bool feasible = true;
            for (auto s : arity)
                feasible = feasible && !terms[s.index].empty();
            if (!feasible)
                continue;
            idx.assign(arity.size(), 0);
            while (true) {
                bool reaches = false;
                for (std::size_t i = 0; i < arity.size(); ++i)
                    reaches = reaches || idx[i] >= prev_start[arity[i].index];
                if (reaches) {
                    args.clear();
                    for (std::size_t i = 0; i < arity.size(); ++i)
                        args.push_back(terms[arity[i].index][idx[i]]);
                    Term t = build_term(sig, nm, args);
                    fn(t, d);
                    if (keep)
                        fresh[t.sort().index].push_back(std::move(t));
                }
                std::size_t i = arity.size();
                bool done = true;
                while (i-- > 0) {
                    if (++idx[i] < terms[arity[i].index].size()) {
                        done = false;
                        break;
                    }
                    idx[i] = 0;
                }
                if (done)
                    break;
            }
        }
        if (!keep)
            break;
        for (std::size_t s = 0; s < nsorts; ++s) {
            prev_start[s] = terms[s].size();
            for (auto& t : fresh[s])
                terms[s].push_back(std::move(t));
        }
    }
}

/// All terms of sort `s` with depth at most `max_depth`, in enumeration
/// order.
inline std::vector<Term> enumerate_terms(const Signature& sig, SortId s, std::size_t max_depth)
{
    if (!sig.contains(s))
        throw SignatureError("unknown sort index " + std::to_string(s.index));
    std::vector<Term> out;
    for_each_term(sig, max_depth, [&](const Term& t, std::size_t) {
        if (t.sort() == s)
            out.push_back(t);
    });
    return out;
}

/// All terms of every sort with depth at most `max_depth`.
inline std::vector<Term> enumerate_all_terms(const Signature& sig, std::size_t max_depth)
{
    std::vector<Term> out;
    for_each_term(sig, max_depth, [&](const Term& t, std::size_t) { out.push_back(t); });
    return out;
}

} // namespace ualg
