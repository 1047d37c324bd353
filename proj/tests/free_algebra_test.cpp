#include <ualg/enumerate.hpp>
#include <ualg/examples.hpp>
#include <ualg/free_algebra.hpp>
#include <ualg/term_text.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ualg;

namespace {

const SortId u{0};

// Recursive evaluation over the tree form; shares nothing with term_reduce.
Elem tree_eval(const FiniteAlgebra& a, const VSignature& vsig, const std::vector<Elem>& values,
               const oracle::Tree& t)
{
    if (t.op.index >= vsig.base().op_count())
        return values[t.op.index - vsig.base().op_count()];
    std::vector<Elem> args;
    for (const auto& c : t.args)
        args.push_back(tree_eval(a, vsig, values, c));
    // Table lookup by hand, first argument most significant.
    std::size_t row = 0;
    auto arity = a.signature().arity(t.op);
    for (std::size_t i = 0; i < args.size(); ++i)
        row = row * a.carrier_size(arity[i]) + args[i];
    return a.tables()[t.op.index][row];
}

Assignment<Elem> assign_all(const VSignature& vsig, const std::vector<Elem>& values)
{
    Assignment<Elem> alpha(vsig.vars());
    for (std::uint32_t v = 0; v < values.size(); ++v)
        alpha.set(VarId{v}, values[v]);
    return alpha;
}

} // namespace

TEST(Assignment, BindingsAndErrors)
{
    auto vsig = examples::monoid_vsignature();
    Assignment<int> alpha(vsig.vars());
    EXPECT_EQ(alpha.size(), 3u);
    EXPECT_FALSE(alpha.bound(VarId{1}));
    alpha.set(VarId{1}, 7);
    EXPECT_EQ(alpha.at(VarId{1}), 7);
    alpha.unset(VarId{1});
    try {
        (void)alpha.at(VarId{1});
        FAIL() << "expected an error";
    } catch (const TermError& ex) {
        EXPECT_STREQ(ex.what(), "no binding for variable 'y'");
    }
}

TEST(Varterm, IsTheVariableSymbol)
{
    auto vsig = examples::list_vsignature();
    auto l = varterm(vsig, "l");
    EXPECT_EQ(format_term(vsig.extended(), l), "l");
    EXPECT_EQ(l.sort(), vsig.extended().sort_by_name("list"));
    EXPECT_EQ(varterm(vsig, VarId{0}), varterm(vsig, "a"));
    EXPECT_THROW(varterm(vsig, "q"), TermError);
}

TEST(Eval, MonoidExamples)
{
    auto vsig = examples::monoid_vsignature();
    const auto& ext = vsig.extended();
    auto z5 = examples::zmod_monoid(5);
    auto alpha = assign_all(vsig, {2, 4, 1});
    EXPECT_EQ(eval(z5, vsig, alpha, parse_term(ext, "e")), 0u);
    EXPECT_EQ(eval(z5, vsig, alpha, parse_term(ext, "x")), 2u);
    EXPECT_EQ(eval(z5, vsig, alpha, parse_term(ext, "mul x y")), 1u);
    EXPECT_EQ(eval(z5, vsig, alpha, parse_term(ext, "mul mul x y mul z e")), 2u);

    auto sub = examples::zmod_subtraction(5);
    EXPECT_EQ(eval(sub, vsig, alpha, parse_term(ext, "mul x y")), 3u);
    EXPECT_EQ(eval(sub, vsig, alpha, parse_term(ext, "mul y x")), 2u);
}

TEST(Eval, HostValues)
{
    auto vsig = examples::monoid_vsignature();
    FnAlgebra<std::string> words(vsig.base(), {[](std::span<const std::string> x) { return x[0] + x[1]; },
                                               [](std::span<const std::string>) { return std::string(); }});
    Assignment<std::string> alpha(vsig.vars());
    alpha.set(VarId{0}, "ab");
    alpha.set(VarId{1}, "c");
    EXPECT_EQ(eval(words, vsig, alpha, parse_term(vsig.extended(), "mul x mul e mul y x")), "abcab");
}

TEST(Eval, UnboundVariableOnlyWhenUsed)
{
    auto vsig = examples::monoid_vsignature();
    auto z3 = examples::zmod_monoid(3);
    Assignment<Elem> alpha(vsig.vars());
    alpha.set(VarId{0}, 1);
    EXPECT_EQ(eval(z3, vsig, alpha, parse_term(vsig.extended(), "mul x x")), 2u);
    EXPECT_THROW(eval(z3, vsig, alpha, parse_term(vsig.extended(), "mul x z")), TermError);
}

TEST(Eval, SignatureMismatch)
{
    auto vsig = examples::monoid_vsignature();
    Assignment<Elem> alpha(vsig.vars());
    EXPECT_THROW(eval(examples::bool_algebra(), vsig, alpha, parse_term(vsig.extended(), "e")), AlgebraError);
}

TEST(Eval, ListAlgebra)
{
    auto fx = examples::list_signature_and_algebra({"p", "q"}, 3);
    auto vsig = examples::list_vsignature();
    const auto& la = fx.algebra;
    Assignment<Elem> alpha(vsig.vars());
    alpha.set(VarId{0}, la.element("p"));
    alpha.set(VarId{1}, la.element("q"));
    alpha.set(VarId{2}, la.encode({1}));
    auto v = eval(la, vsig, alpha, parse_term(vsig.extended(), "cons a cons b l"));
    EXPECT_EQ(la.label(la.list_sort, v), "[p, q, q]");
    EXPECT_THROW(eval(la, vsig, alpha, parse_term(vsig.extended(), "cons a cons b cons a l")), AlgebraError);
}

TEST(Eval, MatchesTreeEvaluator)
{
    std::mt19937_64 rng(31);
    for (auto vsig : {examples::monoid_vsignature(), examples::bool_vsignature()}) {
        for (int i = 0; i < 300; ++i) {
            auto a = oracle::random_algebra(vsig.base(), 1 + i % 4, rng);
            std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.carrier_size(u) - 1));
            std::vector<Elem> values{pick(rng), pick(rng), pick(rng)};
            auto tree = oracle::random_tree(vsig.extended(), u, 6, rng);
            auto t = make_term(vsig.extended(), tree.oplist());
            EXPECT_EQ(eval(a, vsig, assign_all(vsig, values), t), tree_eval(a, vsig, values, tree));
        }
    }
}

TEST(FreeAlgebra, OperationsBuildTerms)
{
    auto vsig = examples::monoid_vsignature();
    FreeAlgebra free(vsig);
    static_assert(Algebra<FreeAlgebra>);
    const auto& ext = vsig.extended();
    Term args[] = {varterm(vsig, "x"), parse_term(ext, "e")};
    auto t = free.apply(vsig.base().op_by_name("mul"), args);
    EXPECT_EQ(format_term(ext, t), "mul x e");
    EXPECT_TRUE(free.contains(u, t));
    EXPECT_EQ(free.signature(), vsig.base());
}

TEST(FreeAlgebra, SubstitutionOfVariablesIsIdentity)
{
    std::mt19937_64 rng(32);
    for (auto vsig : {examples::monoid_vsignature(), examples::bool_vsignature(), examples::list_vsignature()}) {
        FreeAlgebra free(vsig);
        Assignment<Term> id(vsig.vars());
        for (std::uint32_t v = 0; v < vsig.vars().size(); ++v)
            id.set(VarId{v}, varterm(vsig, VarId{v}));
        for (int i = 0; i < 200; ++i) {
            auto t = oracle::random_term(vsig.extended(), 5, rng);
            EXPECT_EQ(eval(free, vsig, id, t), t);
        }
    }
}

TEST(FreeAlgebra, SubstitutionReplacesVariables)
{
    auto vsig = examples::monoid_vsignature();
    const auto& ext = vsig.extended();
    FreeAlgebra free(vsig);
    Assignment<Term> sigma(vsig.vars());
    sigma.set(VarId{0}, parse_term(ext, "mul y e"));
    sigma.set(VarId{1}, parse_term(ext, "x"));
    EXPECT_EQ(format_term(ext, eval(free, vsig, sigma, parse_term(ext, "mul x y"))), "mul mul y e x");
}

TEST(UniversalMap, HomomorphismLaw)
{
    std::mt19937_64 rng(33);
    for (auto vsig : {examples::monoid_vsignature(), examples::bool_vsignature()}) {
        FreeAlgebra free(vsig);
        const auto& ext = vsig.extended();
        for (int i = 0; i < 100; ++i) {
            auto a = oracle::random_algebra(vsig.base(), 2 + i % 3, rng);
            std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.carrier_size(u) - 1));
            auto h = universal_map(a, vsig, assign_all(vsig, {pick(rng), pick(rng), pick(rng)}));
            for (std::uint32_t k = 0; k < vsig.base().op_count(); ++k) {
                OpId nm{k};
                std::vector<Term> args;
                std::vector<Elem> images;
                for (std::size_t j = 0; j < vsig.base().arity(nm).size(); ++j) {
                    args.push_back(oracle::random_term(ext, 4, rng));
                    images.push_back(h(args.back()));
                }
                EXPECT_EQ(h(free.apply(nm, args)), a.apply(nm, images));
            }
            for (std::uint32_t v = 0; v < 3; ++v)
                EXPECT_EQ(h(varterm(vsig, VarId{v})), h.assignment().at(VarId{v}));
        }
    }
}

TEST(CheckUniversality, CanonicalMapPasses)
{
    auto vsig = examples::bool_vsignature();
    auto a = examples::bool_algebra();
    auto alpha = assign_all(vsig, {0, 1, 1});
    auto terms = enumerate_all_terms(vsig.extended(), 3);
    auto h = universal_map(a, vsig, alpha);
    auto v = check_universality(a, vsig, alpha, h, terms);
    EXPECT_TRUE(v.holds);
    EXPECT_FALSE(v.failing);
}

TEST(CheckUniversality, WrongOnAVariable)
{
    auto vsig = examples::monoid_vsignature();
    auto z3 = examples::zmod_monoid(3);
    auto alpha = assign_all(vsig, {1, 2, 0});
    auto h = universal_map(z3, vsig, alpha);
    auto shifted = universal_map(z3, vsig, assign_all(vsig, {1, 2, 1}));
    auto terms = enumerate_all_terms(vsig.extended(), 3);
    auto v = check_universality(z3, vsig, alpha, shifted, terms);
    ASSERT_FALSE(v.holds);
    EXPECT_EQ(format_term(vsig.extended(), *v.failing), "z");
    EXPECT_TRUE(check_universality(z3, vsig, alpha, h, terms).holds);
}

TEST(CheckUniversality, BreaksTheLawSomewhere)
{
    auto vsig = examples::monoid_vsignature();
    auto z3 = examples::zmod_monoid(3);
    auto alpha = assign_all(vsig, {1, 2, 0});
    auto h = universal_map(z3, vsig, alpha);
    const auto& ext = vsig.extended();
    auto target = parse_term(ext, "mul x y");
    auto candidate = [&](const Term& t) { return t == target ? (h(t) + 1) % 3 : h(t); };
    auto terms = enumerate_all_terms(ext, 3);
    auto v = check_universality(z3, vsig, alpha, candidate, terms);
    ASSERT_FALSE(v.holds);
    // Either the term itself or a parent that uses it is reported.
    auto failing = format_term(ext, *v.failing);
    EXPECT_NE(failing.find("mul x y"), std::string::npos) << failing;
}

TEST(CheckUniversality, OutOfCarrierCandidate)
{
    auto vsig = examples::monoid_vsignature();
    auto z3 = examples::zmod_monoid(3);
    auto alpha = assign_all(vsig, {1, 2, 0});
    auto terms = enumerate_all_terms(vsig.extended(), 2);
    EXPECT_THROW(check_universality(z3, vsig, alpha, [](const Term&) { return Elem{5}; }, terms), AlgebraError);
}

// Any map that satisfies the law and agrees on variables is the canonical
// one: build such a map by memoised recursion and compare.
TEST(UniversalMap, UniquenessOnEnumeratedTerms)
{
    auto vsig = examples::bool_vsignature();
    auto a = examples::bool_algebra();
    auto alpha = assign_all(vsig, {1, 0, 1});
    const auto& ext = vsig.extended();
    std::map<Term, Elem> memo;
    std::function<Elem(const Term&)> rec = [&](const Term& t) -> Elem {
        if (auto it = memo.find(t); it != memo.end())
            return it->second;
        Elem r;
        if (auto v = vsig.as_var(t.princop())) {
            r = alpha.at(*v);
        } else {
            auto d = term_decompose(ext, t);
            std::vector<Elem> xs;
            for (const auto& s : d.subterms)
                xs.push_back(rec(s));
            r = a.apply(d.princop, xs);
        }
        memo.emplace(t, r);
        return r;
    };
    auto h = universal_map(a, vsig, alpha);
    for (const auto& t : enumerate_all_terms(ext, 3))
        ASSERT_EQ(rec(t), h(t)) << format_term(ext, t);
}

TEST(UniversalMap, GroundTermsHaveOneHom)
{
    // No variables: every hom from ground terms into Z4 is the evaluation.
    auto sig = examples::monoid_signature();
    auto vsig = vsignature(sig, VarSpec{});
    auto z4 = examples::zmod_monoid(4);
    Assignment<Elem> none(vsig.vars());
    auto terms = enumerate_all_terms(sig, 4);
    for (const auto& t : terms)
        EXPECT_EQ(eval(z4, vsig, none, t), 0u);
    // Each constant map with a nonzero value breaks the law at e.
    for (Elem c = 1; c < 4; ++c) {
        auto v = check_universality(z4, vsig, none, [c](const Term&) { return c; }, terms);
        EXPECT_FALSE(v.holds);
    }
}
