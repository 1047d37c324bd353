// ualg: command-line front end for the universal algebra library.
//
// Exit codes: 0 success / property holds, 1 checked property fails,
// 2 usage or input error.

#include <ualg/io.hpp>
#include <ualg/ualg.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ualg;

constexpr int exit_ok = 0;
constexpr int exit_fails = 1;
constexpr int exit_usage = 2;

std::string join(const std::vector<std::string>& words)
{
    std::string out;
    for (const auto& w : words)
        out += (out.empty() ? "" : " ") + w;
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

/// Signature from --sig, extended with the variables of --vars if given.
VSignature load_vsignature(const std::string& sig_path, const std::string& vars_path)
{
    auto sig = io::signature_from_json(io::load_json(sig_path));
    VarSpec vars;
    if (!vars_path.empty())
        vars = io::varspec_from_json(io::load_json(vars_path), sig);
    return vsignature(std::move(sig), std::move(vars));
}

/// Parses an oplist; prints the stack-machine diagnostic if it is no term.
std::optional<Term> checked_term(const Signature& sig, const std::string& text)
{
    auto ops = parse_oplist(sig, text);
    if (auto t = try_make_term(sig, ops))
        return t;
    std::cout << "not a term: " << describe_non_term(sig, ops) << '\n';
    return std::nullopt;
}

struct TermOptions {
    std::string sig;
    std::string vars;
    std::string sort;
    std::vector<std::string> text;
};

int cmd_term(const std::string& what, const TermOptions& o)
{
    auto vsig = load_vsignature(o.sig, o.vars);
    const auto& sig = vsig.extended();
    std::optional<SortId> expected;
    if (!o.sort.empty())
        expected = sig.sort_by_name(o.sort);
    auto t = checked_term(sig, join(o.text));
    if (!t)
        return exit_fails;

    if (what == "check") {
        if (expected && *expected != t->sort()) {
            std::cout << "sort mismatch: expected " << sig.sort_name(*expected) << ", got "
                      << sig.sort_name(t->sort()) << '\n';
            return exit_fails;
        }
        std::cout << "ok: " << format_term(sig, *t) << " : " << sig.sort_name(t->sort()) << '\n';
    } else if (what == "sort") {
        std::cout << sig.sort_name(t->sort()) << '\n';
    } else if (what == "depth") {
        std::cout << depth(sig, *t) << '\n';
    } else {
        auto d = term_decompose(sig, *t);
        std::cout << "princop: " << sig.op_name(d.princop) << '\n';
        for (std::size_t i = 0; i < d.subterms.size(); ++i)
            std::cout << "arg " << i << " : " << sig.sort_name(d.subterms[i].sort()) << " = "
                      << format_term(sig, d.subterms[i]) << '\n';
    }
    return exit_ok;
}

struct EvalOptions {
    std::string alg;
    std::string vars;
    std::vector<std::string> assign;
    std::string assign_file;
    std::vector<std::string> text;
};

int cmd_eval(const EvalOptions& o)
{
    auto alg = io::algebra_from_json(io::load_json(o.alg));
    const auto& base = alg.signature();

    std::vector<std::pair<std::string, std::string>> bindings;
    for (const auto& flag : o.assign)
        for (const auto& item : split(flag, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw FormatError("malformed binding '" + item + "', expected name=value");
            bindings.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
    if (!o.assign_file.empty()) {
        auto file = io::load_json(o.assign_file);
        if (!file.is_object() || !file.contains("assign") || !file["assign"].is_object())
            throw FormatError("assignment file is missing \"assign\"");
        for (const auto& [var, label] : file["assign"].items()) {
            if (!label.is_string())
                throw FormatError("binding of '" + var + "' is not a string");
            bindings.emplace_back(var, label.get<std::string>());
        }
    }

    VarSpec vars;
    if (!o.vars.empty()) {
        vars = io::varspec_from_json(io::load_json(o.vars), base);
    } else {
        // Without a variable file each bound name becomes a variable of the
        // unique sort whose carrier contains its value.
        std::vector<VarDecl> decls;
        for (const auto& [var, label] : bindings) {
            std::optional<SortId> found;
            for (std::uint32_t s = 0; s < base.sort_count(); ++s)
                if (alg.find_label(SortId{s}, label)) {
                    if (found)
                        throw FormatError("value '" + label + "' of '" + var
                                          + "' belongs to several sorts; declare variables with --vars");
                    found = SortId{s};
                }
            if (!found)
                throw FormatError("value '" + label + "' of '" + var + "' is not an element of the algebra");
            decls.push_back({var, *found});
        }
        vars = VarSpec(base, std::move(decls));
    }
    auto vsig = vsignature(base, std::move(vars));
    Assignment<Elem> alpha(vsig.vars());
    for (const auto& [var, label] : bindings)
        io::bind_variable(alpha, alg, vsig, var, label);

    auto t = checked_term(vsig.extended(), join(o.text));
    if (!t)
        return exit_usage;
    auto value = eval(alg, vsig, alpha, *t);
    std::cout << alg.label(t->sort(), value) << '\n';
    return exit_ok;
}

std::string format_binding(const FiniteAlgebra& alg, const VSignature& vsig, const Binding& b)
{
    std::string out;
    for (const auto& [v, e] : b)
        out += (out.empty() ? "" : " ") + vsig.vars().name(v) + "=" + alg.label(vsig.vars().varsort(v), e);
    return out;
}

int cmd_check_eqs(const std::string& alg_path, const std::string& eqs_path)
{
    auto alg = io::algebra_from_json(io::load_json(alg_path));
    auto spec = io::eqspec_from_json(io::load_json(eqs_path), alg.signature());
    auto report = is_eqalgebra(alg, spec);
    for (const auto& [name, verdict] : report.results) {
        std::cout << name << ": ";
        if (verdict.holds)
            std::cout << "HOLDS\n";
        else
            std::cout << "FAILS " << format_binding(alg, spec.vsig, *verdict.counterexample) << '\n';
    }
    return report.all_hold() ? exit_ok : exit_fails;
}

int cmd_check_hom(const std::string& src_path, const std::string& dst_path, const std::string& map_path)
{
    auto src = io::algebra_from_json(io::load_json(src_path));
    auto dst = io::algebra_from_json(io::load_json(dst_path));
    auto h = io::hom_from_json(io::load_json(map_path), src, dst);
    auto verdict = check_hom(h, src, dst);
    if (verdict.holds) {
        std::cout << "OK\n";
        return exit_ok;
    }
    const auto& sig = src.signature();
    const auto& cx = *verdict.counterexample;
    auto arity = sig.arity(cx.op);
    std::string src_args;
    std::string dst_args;
    std::vector<Elem> mapped;
    for (std::size_t i = 0; i < cx.args.size(); ++i) {
        src_args += (i ? ", " : "") + src.label(arity[i], cx.args[i]);
        mapped.push_back(h(arity[i], cx.args[i]));
        dst_args += (i ? ", " : "") + dst.label(arity[i], mapped.back());
    }
    auto rsort = sig.sort(cx.op);
    const auto& name = sig.op_name(cx.op);
    std::cout << "FAILS at " << name << "(" << src_args << "): h(" << name << "(" << src_args
              << ")) = " << dst.label(rsort, h(rsort, src.apply(cx.op, cx.args))) << ", " << name << "(" << dst_args
              << ") = " << dst.label(rsort, dst.apply(cx.op, mapped)) << '\n';
    return exit_fails;
}

int cmd_enumerate(const std::string& sig_path, const std::string& vars_path, const std::string& sort, int max_depth)
{
    if (max_depth < 1)
        throw FormatError("--max-depth must be at least 1");
    auto vsig = load_vsignature(sig_path, vars_path);
    const auto& sig = vsig.extended();
    auto terms = enumerate_terms(sig, sig.sort_by_name(sort), static_cast<std::size_t>(max_depth));
    for (const auto& t : terms)
        std::cout << format_term(sig, t) << '\n';
    std::cout << "count: " << terms.size() << '\n';
    return exit_ok;
}

int example_list()
{
    auto fx = examples::list_signature_and_algebra({"a", "b"}, 4);
    auto vsig = examples::list_vsignature();
    const auto& sig = fx.signature;
    std::cout << "sorts: " << format_sorts(sig, std::vector<SortId>{SortId{0}, SortId{1}}) << '\n';
    for (const auto& op : sig.ops()) {
        std::cout << "  " << op.name << " :";
        for (auto s : op.arity)
            std::cout << ' ' << sig.sort_name(s);
        std::cout << " -> " << sig.sort_name(op.sort) << '\n';
    }
    std::cout << "elements: a, b; list length bound " << fx.algebra.bound() << '\n';
    std::cout << "dom(cons) = ";
    auto arity = sig.arity(sig.op_by_name("cons"));
    for (std::size_t i = 0; i < arity.size(); ++i)
        std::cout << (i ? " x " : "") << sig.sort_name(arity[i]);
    std::cout << '\n';

    Assignment<Elem> alpha(vsig.vars());
    alpha.set(*vsig.vars().find("a"), fx.algebra.element("a"));
    alpha.set(*vsig.vars().find("b"), fx.algebra.element("b"));
    std::cout << "with a=a b=b:\n";
    for (const char* text : {"nil", "cons a nil", "cons b cons a nil", "cons a cons b cons a cons b nil"}) {
        auto t = parse_term(vsig.extended(), text);
        std::cout << "  " << text << " => " << fx.algebra.label(t.sort(), eval(fx.algebra, vsig, alpha, t)) << '\n';
    }
    auto too_long = parse_term(vsig.extended(), "cons a cons a cons a cons a cons a nil");
    try {
        eval(fx.algebra, vsig, alpha, too_long);
    } catch (const AlgebraError& e) {
        std::cout << "  " << format_term(vsig.extended(), too_long) << " => error: " << e.what() << '\n';
    }
    return exit_ok;
}

int example_monoid()
{
    auto spec = examples::monoid_eqspec();
    const auto& ext = spec.vsig.extended();
    std::cout << "monoid equations over x, y, z:\n";
    for (const auto& e : spec.equations)
        std::cout << "  " << e.name << ": " << format_term(ext, e.lhs) << " = " << format_term(ext, e.rhs) << '\n';

    auto line = [&](const std::string& title, const FiniteAlgebra& alg) {
        auto report = is_eqalgebra(alg, spec);
        std::cout << title << ':';
        for (const auto& [name, v] : report.results) {
            std::cout << ' ' << name << ' ' << (v.holds ? "HOLDS" : "FAILS");
            if (!v.holds)
                std::cout << " [" << format_binding(alg, spec.vsig, *v.counterexample) << ']';
        }
        std::cout << '\n';
        return report.all_hold();
    };
    bool all = true;
    for (std::size_t n = 1; n <= 5; ++n)
        all = line("Z/" + std::to_string(n) + " (+, 0)", examples::zmod_monoid(n)) && all;
    all = line("bool (and, true)", examples::bool_and_monoid()) && all;
    line("Z/3 (-, 0)", examples::zmod_subtraction(3));
    std::cout << "Z/1..Z/5 and bool (and, true): " << (all ? "all axioms hold" : "some axiom fails") << '\n';
    return exit_ok;
}

int example_bool()
{
    auto vsig = examples::bool_vsignature();
    const auto& ext = vsig.extended();
    auto x = *vsig.vars().find("x");
    auto y = *vsig.vars().find("y");
    auto z = *vsig.vars().find("z");
    auto tf = [](bool b) { return b ? "true" : "false"; };

    Assignment<bool> alpha(vsig.vars());
    alpha.set(x, true);
    alpha.set(y, true);
    alpha.set(z, false);
    auto formula = parse_term(ext, "conj x impl z neg y");
    std::cout << "x=true y=true z=false: " << format_term(ext, formula) << " => "
              << tf(examples::tarski_interp(alpha, formula)) << '\n';

    auto dummett = parse_term(ext, "disj impl x y impl y x");
    std::cout << "Dummett: " << format_term(ext, dummett) << '\n';
    bool tautology = true;
    for (bool vx : {false, true})
        for (bool vy : {false, true}) {
            Assignment<bool> a(vsig.vars());
            a.set(x, vx);
            a.set(y, vy);
            bool v = examples::tarski_interp(a, dummett);
            tautology = tautology && v;
            std::cout << "  x=" << tf(vx) << " y=" << tf(vy) << " => " << tf(v) << '\n';
        }
    std::cout << "tautology: " << (tautology ? "yes" : "no") << '\n';
    return exit_ok;
}

int cmd_examples(const std::string& name)
{
    if (name == "list")
        return example_list();
    if (name == "monoid")
        return example_monoid();
    return example_bool();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-sorted universal algebra: terms, evaluation, equations and homomorphisms", "ualg"};
    app.require_subcommand(1);
    int status = exit_ok;

    auto* term = app.add_subcommand("term", "Check, inspect and decompose terms")->require_subcommand(1);
    TermOptions term_opts;
    const std::pair<const char*, const char*> term_cmds[] = {
        {"check", "Check that the text is a term, optionally of a given sort"},
        {"sort", "Print the sort of a term"},
        {"depth", "Print the depth of a term"},
        {"decompose", "Print the principal operation and the argument subterms"}};
    for (const auto& [what, help] : term_cmds) {
        auto* sub = term->add_subcommand(what, help);
        sub->add_option("--sig", term_opts.sig, "Signature file")->required()->check(CLI::ExistingFile);
        sub->add_option("--vars", term_opts.vars, "Equations file whose variables may appear in the term")
            ->check(CLI::ExistingFile);
        if (std::string(what) == "check")
            sub->add_option("--sort", term_opts.sort, "Expected sort");
        sub->add_option("term", term_opts.text, "Term in prefix order")->required();
        sub->callback([&status, &term_opts, what] { status = cmd_term(what, term_opts); });
    }

    EvalOptions eval_opts;
    auto* ev = app.add_subcommand("eval", "Evaluate a term in a finite algebra");
    ev->add_option("--alg", eval_opts.alg, "Algebra file")->required()->check(CLI::ExistingFile);
    ev->add_option("--vars", eval_opts.vars, "Equations file declaring the variables")->check(CLI::ExistingFile);
    ev->add_option("--assign", eval_opts.assign, "Variable bindings name=value[,name=value...]; may be repeated")
        ->expected(1)
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    ev->add_option("--assign-file", eval_opts.assign_file, "Assignment file")->check(CLI::ExistingFile);
    ev->add_option("term", eval_opts.text, "Term in prefix order")->required();
    ev->callback([&] { status = cmd_eval(eval_opts); });

    std::string alg_path, eqs_path;
    auto* eqs = app.add_subcommand("check-eqs", "Check equations in a finite algebra");
    eqs->add_option("--alg", alg_path, "Algebra file")->required()->check(CLI::ExistingFile);
    eqs->add_option("--eqs", eqs_path, "Equations file")->required()->check(CLI::ExistingFile);
    eqs->callback([&] { status = cmd_check_eqs(alg_path, eqs_path); });

    std::string src_path, dst_path, map_path;
    auto* hom = app.add_subcommand("check-hom", "Check that a map between finite algebras is a homomorphism");
    hom->add_option("--src", src_path, "Source algebra file")->required()->check(CLI::ExistingFile);
    hom->add_option("--dst", dst_path, "Target algebra file")->required()->check(CLI::ExistingFile);
    hom->add_option("--map", map_path, "Map file")->required()->check(CLI::ExistingFile);
    hom->callback([&] { status = cmd_check_hom(src_path, dst_path, map_path); });

    std::string sig_path, vars_path, sort;
    int max_depth = 0;
    auto* en = app.add_subcommand("enumerate", "List all terms of a sort up to a depth");
    en->add_option("--sig", sig_path, "Signature file")->required()->check(CLI::ExistingFile);
    en->add_option("--vars", vars_path, "Equations file whose variables are included")->check(CLI::ExistingFile);
    en->add_option("--sort", sort, "Sort")->required();
    en->add_option("--max-depth", max_depth, "Depth bound (>= 1)")->required();
    en->callback([&] { status = cmd_enumerate(sig_path, vars_path, sort, max_depth); });

    std::string example;
    auto* ex = app.add_subcommand("examples", "Run a built-in example");
    ex->add_option("name", example, "list, monoid or bool")
        ->required()
        ->check(CLI::IsMember({"list", "monoid", "bool"}));
    ex->callback([&] { status = cmd_examples(example); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return status;
}
