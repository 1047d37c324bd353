#include <ualg/equations.hpp>
#include <ualg/examples.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ualg;

namespace {

const SortId u{0};

// Brute-force check of a binary-operation law by plain loops over the table.
bool table_assoc(const FiniteAlgebra& a)
{
    auto n = static_cast<Elem>(a.carrier_size(u));
    auto m = [&](Elem x, Elem y) { return a.tables()[0][x * n + y]; };
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (m(m(x, y), z) != m(x, m(y, z)))
                    return false;
    return true;
}

bool table_lid(const FiniteAlgebra& a)
{
    auto n = static_cast<Elem>(a.carrier_size(u));
    Elem unit = a.tables()[1][0];
    for (Elem x = 0; x < n; ++x)
        if (a.tables()[0][unit * n + x] != x)
            return false;
    return true;
}

bool table_rid(const FiniteAlgebra& a)
{
    auto n = static_cast<Elem>(a.carrier_size(u));
    Elem unit = a.tables()[1][0];
    for (Elem x = 0; x < n; ++x)
        if (a.tables()[0][x * n + unit] != x)
            return false;
    return true;
}

Equation eq(const VSignature& vsig, const char* name, const char* lhs, const char* rhs)
{
    return parse_equation(vsig, name, "u", lhs, rhs);
}

} // namespace

TEST(FreeVars, Examples)
{
    auto vsig = examples::monoid_vsignature();
    const auto& ext = vsig.extended();
    EXPECT_TRUE(free_vars(vsig, parse_term(ext, "mul e e")).empty());
    EXPECT_EQ(free_vars(vsig, parse_term(ext, "mul z mul x z")), (std::vector<VarId>{VarId{0}, VarId{2}}));
    auto assoc = examples::monoid_eqspec().equations[2];
    EXPECT_EQ(free_vars(vsig, assoc), (std::vector<VarId>{VarId{0}, VarId{1}, VarId{2}}));
    EXPECT_EQ(free_vars(vsig, eq(vsig, "t", "x", "mul e y")), (std::vector<VarId>{VarId{0}, VarId{1}}));
}

TEST(ParseEquation, Errors)
{
    auto vsig = examples::list_vsignature();
    EXPECT_THROW(parse_equation(vsig, "bad", "list", "cons a l", "a"), TermError);
    EXPECT_THROW(parse_equation(vsig, "bad", "tree", "l", "l"), TermError);
    EXPECT_THROW(parse_equation(vsig, "bad", "list", "cons a", "l"), TermError);
    EXPECT_NO_THROW(parse_equation(vsig, "ok", "list", "cons a l", "cons b l"));
}

TEST(Holds, MonoidAxiomsAgainstTableChecks)
{
    auto spec = examples::monoid_eqspec();
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& a : {examples::zmod_monoid(n), examples::zmod_subtraction(n)}) {
            auto report = is_eqalgebra(a, spec);
            EXPECT_EQ(report["lid"].holds, table_lid(a)) << n;
            EXPECT_EQ(report["rid"].holds, table_rid(a)) << n;
            EXPECT_EQ(report["assoc"].holds, table_assoc(a)) << n;
        }
}

TEST(Holds, RandomAlgebrasAgainstTableChecks)
{
    std::mt19937_64 rng(41);
    auto spec = examples::monoid_eqspec();
    for (int i = 0; i < 300; ++i) {
        auto a = oracle::random_algebra(spec.vsig.base(), 1 + i % 3, rng);
        auto report = is_eqalgebra(a, spec);
        EXPECT_EQ(report["lid"].holds, table_lid(a));
        EXPECT_EQ(report["rid"].holds, table_rid(a));
        EXPECT_EQ(report["assoc"].holds, table_assoc(a));
        EXPECT_EQ(report.all_hold(), table_lid(a) && table_rid(a) && table_assoc(a));
    }
}

TEST(IsEqalgebra, ZmodMonoidsAndBoolAnd)
{
    auto spec = examples::monoid_eqspec();
    for (std::size_t n = 1; n <= 5; ++n)
        EXPECT_TRUE(is_eqalgebra(examples::zmod_monoid(n), spec).all_hold()) << n;
    EXPECT_TRUE(is_eqalgebra(examples::bool_and_monoid(), spec).all_hold());
    EXPECT_TRUE(is_eqalgebra(unit_algebra(spec.vsig.base()), spec).all_hold());
    EXPECT_THROW(is_eqalgebra(examples::zmod_monoid(2), spec)["comm"], Error);
}

TEST(IsEqalgebra, SubtractionMod3)
{
    auto spec = examples::monoid_eqspec();
    auto report = is_eqalgebra(examples::zmod_subtraction(3), spec);
    EXPECT_FALSE(report.all_hold());
    // 0 - x = x needs 2x = 0 mod 3: first fails at x = 1.
    ASSERT_FALSE(report["lid"].holds);
    EXPECT_EQ(*report["lid"].counterexample, (Binding{{VarId{0}, 1}}));
    EXPECT_TRUE(report["rid"].holds);
    // (x - y) - z = x - (y - z) needs 2z = 0: first fails at (0, 0, 1).
    ASSERT_FALSE(report["assoc"].holds);
    EXPECT_EQ(*report["assoc"].counterexample, (Binding{{VarId{0}, 0}, {VarId{1}, 0}, {VarId{2}, 1}}));
}

TEST(Holds, CounterexampleActuallyFails)
{
    std::mt19937_64 rng(42);
    auto spec = examples::monoid_eqspec();
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto a = oracle::random_algebra(spec.vsig.base(), 3, rng);
        for (const auto& e : spec.equations) {
            auto v = holds(a, spec.vsig, e);
            if (v.holds)
                continue;
            Assignment<Elem> alpha(spec.vsig.vars());
            for (auto [var, x] : *v.counterexample)
                alpha.set(var, x);
            EXPECT_NE(eval(a, spec.vsig, alpha, e.lhs), eval(a, spec.vsig, alpha, e.rhs));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(Holds, ExtraVariablesAreIrrelevant)
{
    std::mt19937_64 rng(43);
    auto spec = examples::monoid_eqspec();
    std::vector<VarId> all{VarId{0}, VarId{1}, VarId{2}};
    for (int i = 0; i < 100; ++i) {
        auto a = oracle::random_algebra(spec.vsig.base(), 2 + i % 2, rng);
        for (const auto& e : spec.equations)
            EXPECT_EQ(holds(a, spec.vsig, e).holds, holds_over(a, spec.vsig, e, all).holds);
    }
    auto lid = spec.equations[0];
    std::vector<VarId> missing{VarId{1}};
    EXPECT_THROW(holds_over(examples::zmod_monoid(2), spec.vsig, lid, missing), TermError);
}

TEST(Holds, SymmetricInSides)
{
    std::mt19937_64 rng(44);
    auto vsig = examples::monoid_vsignature();
    std::vector<Equation> eqs{eq(vsig, "comm", "mul x y", "mul y x"), eq(vsig, "idem", "mul x x", "x"),
                              eq(vsig, "const", "mul x y", "e")};
    for (int i = 0; i < 100; ++i) {
        auto a = oracle::random_algebra(vsig.base(), 2 + i % 2, rng);
        for (const auto& e : eqs) {
            Equation flipped{e.name, e.sort, e.rhs, e.lhs};
            EXPECT_EQ(holds(a, vsig, e).holds, holds(a, vsig, flipped).holds);
        }
    }
}

TEST(Holds, GroundEquations)
{
    auto vsig = examples::monoid_vsignature();
    auto z3 = examples::zmod_monoid(3);
    EXPECT_TRUE(holds(z3, vsig, eq(vsig, "g", "mul e e", "e")).holds);
    auto sub = examples::zmod_subtraction(3);
    EXPECT_TRUE(holds(sub, vsig, eq(vsig, "g", "mul e e", "e")).holds);
}

TEST(Holds, CommutativityCounterexample)
{
    auto vsig = examples::monoid_vsignature();
    auto comm = eq(vsig, "comm", "mul x y", "mul y x");
    EXPECT_TRUE(holds(examples::zmod_monoid(4), vsig, comm).holds);
    auto v = holds(examples::zmod_subtraction(3), vsig, comm);
    ASSERT_FALSE(v.holds);
    EXPECT_EQ(*v.counterexample, (Binding{{VarId{0}, 0}, {VarId{1}, 1}}));
}

TEST(Holds, SignatureMismatch)
{
    auto spec = examples::monoid_eqspec();
    EXPECT_THROW(holds(examples::bool_algebra(), spec.vsig, spec.equations[0]), AlgebraError);
}

TEST(Holds, BooleanLaws)
{
    auto vsig = examples::bool_vsignature();
    auto b = examples::bool_algebra();
    auto check = [&](const char* l, const char* r) { return holds(b, vsig, parse_equation(vsig, "t", "u", l, r)).holds; };
    EXPECT_TRUE(check("disj x neg x", "top"));
    EXPECT_TRUE(check("neg conj x y", "disj neg x neg y"));
    EXPECT_TRUE(check("disj impl x y impl y x", "top"));
    EXPECT_FALSE(check("impl x y", "impl y x"));
    EXPECT_FALSE(check("x", "y"));
}

TEST(Holds, MultiSortedVariables)
{
    // Over the list signature with a two-element carrier per sort.
    auto vsig = examples::list_vsignature();
    const auto& sig = vsig.base();
    auto a = FiniteAlgebra::from_function(sig, {{"p", "q"}, {"s", "t"}}, [](OpId nm, std::span<const Elem> x) -> Elem {
        return nm.index == 0 ? 0 : x[0];
    });
    auto e1 = parse_equation(vsig, "cons_ignores_tail", "list", "cons a l", "cons a nil");
    EXPECT_TRUE(holds(a, vsig, e1).holds);
    auto e2 = parse_equation(vsig, "cons_const", "list", "cons a l", "cons b l");
    auto v = holds(a, vsig, e2);
    ASSERT_FALSE(v.holds);
    // Variables a, b, l enumerated in that order; l is least significant.
    EXPECT_EQ(*v.counterexample, (Binding{{VarId{0}, 0}, {VarId{1}, 1}, {VarId{2}, 0}}));
}

TEST(HoldsSampled, FindsCounterexamplesOverIntegers)
{
    auto vsig = examples::monoid_vsignature();
    FnAlgebra<long> minus(vsig.base(), {[](std::span<const long> x) { return x[0] - x[1]; },
                                        [](std::span<const long>) { return 0L; }});
    FnAlgebra<long> plus(vsig.base(), {[](std::span<const long> x) { return x[0] + x[1]; },
                                       [](std::span<const long>) { return 0L; }});
    auto sampler = [](SortId, std::mt19937_64& rng) { return std::uniform_int_distribution<long>(-50, 50)(rng); };
    auto assoc = examples::monoid_eqspec().equations[2];
    auto bad = holds_sampled(minus, vsig, assoc, 1000, 7, sampler);
    ASSERT_TRUE(bad.counterexample_found);
    const auto& alpha = *bad.counterexample;
    EXPECT_NE(eval(minus, vsig, alpha, assoc.lhs), eval(minus, vsig, alpha, assoc.rhs));

    auto good = holds_sampled(plus, vsig, assoc, 1000, 7, sampler);
    EXPECT_FALSE(good.counterexample_found);
    EXPECT_EQ(good.samples, 1000u);

    // Same seed, same run.
    auto again = holds_sampled(minus, vsig, assoc, 1000, 7, sampler);
    EXPECT_EQ(again.samples, bad.samples);
}
