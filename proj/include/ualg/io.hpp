#pragma once

// JSON file formats for signatures, finite algebras, homomorphism maps,
// equation files and assignments. Objects keep their key order, so the
// order of variables in a file is the enumeration order.

#include <ualg/algebra.hpp>
#include <ualg/equations.hpp>
#include <ualg/error.hpp>
#include <ualg/free_algebra.hpp>
#include <ualg/signature.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ualg::io {

using json = nlohmann::ordered_json;

inline json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed ") + what + ": " + e.what());
    }
}

inline const json& member(const json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string(what) + " is missing \"" + key + "\"");
    return j.at(key);
}

} // namespace detail

// {"sorts": ["u"], "operations": [{"name": "mul", "arity": ["u","u"], "sort": "u"}, ...]}
inline Signature signature_from_json(const json& j)
{
    return detail::guarded("signature", [&] {
        auto sorts = detail::member(j, "sorts", "signature").get<std::vector<std::string>>();
        std::vector<OpSpec> ops;
        for (const auto& op : detail::member(j, "operations", "signature"))
            ops.push_back({detail::member(op, "name", "operation").get<std::string>(),
                           detail::member(op, "arity", "operation").get<std::vector<std::string>>(),
                           detail::member(op, "sort", "operation").get<std::string>()});
        return make_signature(std::move(sorts), ops);
    });
}

inline json signature_to_json(const Signature& sig)
{
    json ops = json::array();
    for (const auto& op : sig.ops()) {
        json arity = json::array();
        for (auto s : op.arity)
            arity.push_back(sig.sort_name(s));
        ops.push_back({{"name", op.name}, {"arity", arity}, {"sort", sig.sort_name(op.sort)}});
    }
    return {{"sorts", sig.sort_names()}, {"operations", ops}};
}

// {"signature": {...}, "carriers": {"u": ["0","1"]},
//  "operations": {"mul": [{"args": ["0","0"], "result": "0"}, ...], ...}}
inline FiniteAlgebra algebra_from_json(const json& j)
{
    auto sig = signature_from_json(detail::member(j, "signature", "algebra"));
    return detail::guarded("algebra", [&] {
        std::map<std::string, std::vector<std::string>, std::less<>> carriers;
        for (const auto& [sort, labels] : detail::member(j, "carriers", "algebra").items())
            carriers[sort] = labels.get<std::vector<std::string>>();
        std::map<std::string, std::vector<TableEntry>, std::less<>> tables;
        for (const auto& [op, rows] : detail::member(j, "operations", "algebra").items()) {
            auto& out = tables[op];
            for (const auto& row : rows)
                out.push_back({detail::member(row, "args", "table row").get<std::vector<std::string>>(),
                               detail::member(row, "result", "table row").get<std::string>()});
        }
        return make_finite_algebra(std::move(sig), carriers, tables);
    });
}

inline json algebra_to_json(const FiniteAlgebra& a)
{
    const auto& sig = a.signature();
    json carriers = json::object();
    for (std::uint32_t s = 0; s < sig.sort_count(); ++s)
        carriers[sig.sort_names()[s]] = a.carriers()[s];
    json ops = json::object();
    for (std::uint32_t k = 0; k < sig.op_count(); ++k) {
        OpId nm{k};
        auto arity = sig.arity(nm);
        json rows = json::array();
        a.for_each_args(arity, [&](std::span<const Elem> args) {
            json labels = json::array();
            for (std::size_t i = 0; i < args.size(); ++i)
                labels.push_back(a.label(arity[i], args[i]));
            rows.push_back({{"args", labels}, {"result", a.label(sig.sort(nm), a.apply(nm, args))}});
        });
        ops[sig.op_name(nm)] = rows;
    }
    return {{"signature", signature_to_json(sig)}, {"carriers", carriers}, {"operations", ops}};
}

// {"maps": {"u": {"0": "0", "1": "1"}}}
inline FiniteHom hom_from_json(const json& j, const FiniteAlgebra& src, const FiniteAlgebra& dst)
{
    auto maps = detail::guarded("map file", [&] {
        std::map<std::string, std::map<std::string, std::string>, std::less<>> out;
        for (const auto& [sort, m] : detail::member(j, "maps", "map file").items())
            for (const auto& [from, to] : m.items())
                out[sort][from] = to.get<std::string>();
        return out;
    });
    return hom_from_labels(src, dst, maps);
}

/// The "variables" block of an equations file; an absent block means no
/// variables.
inline VarSpec varspec_from_json(const json& j, const Signature& sig)
{
    if (!j.is_object() || !j.contains("variables"))
        return VarSpec{};
    return detail::guarded("variables", [&] {
        std::vector<std::pair<std::string, std::string>> vars;
        for (const auto& [name, sort] : j.at("variables").items())
            vars.emplace_back(name, sort.get<std::string>());
        return make_varspec(sig, vars);
    });
}

// {"variables": {"x": "u"}, "equations": [{"name": "lid", "sort": "u", "lhs": "mul e x", "rhs": "x"}]}
inline EqSpec eqspec_from_json(const json& j, const Signature& sig)
{
    auto vsig = vsignature(sig, varspec_from_json(j, sig));
    std::vector<Equation> eqs;
    detail::guarded("equations", [&] {
        for (const auto& e : detail::member(j, "equations", "equations file"))
            eqs.push_back(parse_equation(vsig, detail::member(e, "name", "equation").get<std::string>(),
                                         detail::member(e, "sort", "equation").get<std::string>(),
                                         detail::member(e, "lhs", "equation").get<std::string>(),
                                         detail::member(e, "rhs", "equation").get<std::string>()));
        return 0;
    });
    return {std::move(vsig), std::move(eqs)};
}

/// Resolves a variable binding against the algebra carrier of its sort.
inline void bind_variable(Assignment<Elem>& alpha, const FiniteAlgebra& a, const VSignature& vsig, std::string_view var,
                 std::string_view label)
{
    auto v = vsig.vars().find(var);
    if (!v)
        throw FormatError("unknown variable '" + std::string(var) + "'");
    auto s = vsig.vars().varsort(*v);
    auto e = a.find_label(s, label);
    if (!e)
        throw FormatError("'" + std::string(label) + "' is not an element of sort '" + vsig.base().sort_name(s)
                          + "' (variable '" + std::string(var) + "')");
    alpha.set(*v, *e);
}

// {"assign": {"x": "true", "y": "false"}}
inline Assignment<Elem> assignment_from_json(const json& j, const FiniteAlgebra& a, const VSignature& vsig)
{
    Assignment<Elem> alpha(vsig.vars());
    detail::guarded("assignment", [&] {
        for (const auto& [var, label] : detail::member(j, "assign", "assignment file").items())
            io::bind_variable(alpha, a, vsig, var, label.get<std::string>());
        return 0;
    });
    return alpha;
}

} // namespace ualg::io
