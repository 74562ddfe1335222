#pragma once

#include <json.hpp>

#include "complexes.hpp"

namespace ainfty {

using nlohmann::json;

inline constexpr const char* kAlgebraFormat = "ainfty.algebra/1";
inline constexpr const char* kComplexFormat = "ainfty.complex/1";

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

inline json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("document parse error at byte " + std::to_string(e.byte) +
                          ": " + e.what());
    }
}

namespace detail {

inline const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw parse_error(std::string("missing field '") + key + "'");
    return *it;
}

inline Vec parse_vector(const json& entries, const GradedVectorSpace& S,
                        std::optional<int> expect_degree = std::nullopt) {
    if (!entries.is_array())
        throw parse_error("vector must be an array of [name, coefficient] pairs");
    std::optional<int> degree = expect_degree;
    std::vector<std::pair<std::pair<int, std::size_t>, Rational>> parts;
    for (const auto& item : entries) {
        if (!item.is_array() || item.size() != 2)
            throw parse_error("vector entry must be a [name, coefficient] pair");
        const std::string name = item[0].get<std::string>();
        const auto pos = S.find(name);
        if (!pos)
            throw parse_error("unknown or ambiguous basis name '" + name + "'");
        if (degree && pos->first != *degree)
            throw parse_error("vector entry '" + name + "' has degree " +
                              std::to_string(pos->first) + ", expected " +
                              std::to_string(*degree));
        degree = pos->first;
        parts.push_back({*pos, parse_rational(item[1].get<std::string>())});
    }
    if (!degree)
        throw parse_error("empty vector without a degree context");
    Vec v = Vec::zero(S, *degree);
    for (const auto& [pos, coeff] : parts)
        v.c[pos.second] += coeff;
    return v;
}

inline json vector_to_json(const Vec& v, const GradedVectorSpace& S) {
    json out = json::array();
    for (std::size_t i = 0; i < v.c.size(); ++i)
        if (v.c[i] != 0)
            out.push_back({S.name(v.degree, i), to_string(v.c[i])});
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// AlgebraDocument
// ---------------------------------------------------------------------------

inline DgAlgebra algebra_from_json(const json& j) {
    if (detail::need(j, "format").get<std::string>() != kAlgebraFormat)
        throw parse_error("not an algebra document (format field)");
    if (detail::need(j, "field").get<std::string>() != "Q")
        throw parse_error("unsupported coefficient field (only Q)");

    std::map<int, std::vector<std::string>> basis;
    std::set<std::string> seen;
    for (const auto& [key, names] : detail::need(j, "basis").items()) {
        int degree = 0;
        try {
            degree = std::stoi(key);
        } catch (...) {
            throw parse_error("basis degree key '" + key + "' is not an integer");
        }
        std::vector<std::string> row;
        for (const auto& n : names) {
            const std::string name = n.get<std::string>();
            if (!seen.insert(name).second)
                throw parse_error("basis name '" + name +
                                  "' appears twice; names must be globally unique");
            row.push_back(name);
        }
        if (!row.empty())
            basis[degree] = std::move(row);
    }
    SpacePtr S = make_space(std::move(basis));

    GradedMap d(S, S, 1);
    std::map<int, Matrix> blocks;
    if (j.contains("differential"))
        for (const auto& entry : j.at("differential")) {
            const std::string src = detail::need(entry, "on").get<std::string>();
            const auto pos = S->find(src);
            if (!pos)
                throw parse_error("differential references unknown name '" + src + "'");
            const Vec value =
                detail::parse_vector(detail::need(entry, "value"), *S, pos->first + 1);
            auto [it, fresh] = blocks.try_emplace(
                pos->first, Matrix(S->dim(pos->first + 1), S->dim(pos->first)));
            for (std::size_t r = 0; r < value.c.size(); ++r)
                it->second(r, pos->second) += value.c[r];
        }
    for (auto& [deg, m] : blocks)
        d.set_block(deg, m);

    MultilinearMap mu(2, S, S, 0);
    if (j.contains("product"))
        for (const auto& entry : j.at("product")) {
            const std::string l = detail::need(entry, "left").get<std::string>();
            const std::string r = detail::need(entry, "right").get<std::string>();
            const auto lp = S->find(l);
            const auto rp = S->find(r);
            if (!lp || !rp)
                throw parse_error("product references unknown name '" +
                                  (lp ? r : l) + "'");
            const Vec value = detail::parse_vector(detail::need(entry, "value"), *S,
                                                   lp->first + rp->first);
            mu.add_entry({S->flat_index(lp->first, lp->second),
                          S->flat_index(rp->first, rp->second)},
                         value);
        }

    const bool unital = j.value("unital", false);
    std::optional<Vec> unit;
    if (unital) {
        if (j.contains("unit"))
            unit = detail::parse_vector(j.at("unit"), *S, 0);
        else if (S->dim(0) == 1)
            unit = Vec::basis(*S, 0, 0);
        else
            throw parse_error("unital algebra needs an explicit unit");
    }
    return DgAlgebra{S, std::move(d), std::move(mu), unital, unit};
}

inline json algebra_to_json(const DgAlgebra& A) {
    const GradedVectorSpace& S = *A.space;
    json basis = json::object();
    for (int d : S.support()) {
        json row = json::array();
        for (std::size_t i = 0; i < S.dim(d); ++i)
            row.push_back(S.name(d, i));
        basis[std::to_string(d)] = std::move(row);
    }
    json diff = json::array();
    for (int d : S.support())
        for (std::size_t i = 0; i < S.dim(d); ++i) {
            const Vec v = A.d.apply(Vec::basis(S, d, i));
            if (v.is_zero())
                continue;
            diff.push_back({{"on", S.name(d, i)}, {"value", detail::vector_to_json(v, S)}});
        }
    json prod = json::array();
    for (const auto& [key, val] : A.product.entries()) {
        const auto [ld, li] = S.unflatten(key[0]);
        const auto [rd, ri] = S.unflatten(key[1]);
        prod.push_back({{"left", S.name(ld, li)},
                        {"right", S.name(rd, ri)},
                        {"value", detail::vector_to_json(val, S)}});
    }
    json out = {{"format", kAlgebraFormat}, {"field", "Q"},     {"basis", basis},
                {"differential", diff},     {"product", prod}, {"unital", A.unital},
                {"reduced", !A.unital}};
    if (A.unital && A.unit)
        out["unit"] = detail::vector_to_json(*A.unit, S);
    return out;
}

// ---------------------------------------------------------------------------
// ComplexDocument
// ---------------------------------------------------------------------------

inline OrderedSimplicialComplex complex_from_json(const json& j) {
    if (detail::need(j, "format").get<std::string>() != kComplexFormat)
        throw parse_error("not a complex document (format field)");
    std::vector<std::string> vertices;
    std::map<std::string, int> index;
    for (const auto& v : detail::need(j, "vertices")) {
        const std::string name = v.get<std::string>();
        if (index.count(name))
            throw parse_error("vertex '" + name + "' appears twice");
        index[name] = static_cast<int>(vertices.size());
        vertices.push_back(name);
    }
    std::vector<std::vector<int>> maximal;
    for (const auto& s : detail::need(j, "simplices")) {
        std::vector<int> simplex;
        for (const auto& v : s) {
            const std::string name = v.get<std::string>();
            auto it = index.find(name);
            if (it == index.end())
                throw parse_error("simplex references unknown vertex '" + name + "'");
            simplex.push_back(it->second);
        }
        maximal.push_back(std::move(simplex));
    }
    int basepoint = 0;
    if (j.contains("basepoint")) {
        const std::string name = j.at("basepoint").get<std::string>();
        auto it = index.find(name);
        if (it == index.end())
            throw parse_error("basepoint '" + name + "' is not a vertex");
        basepoint = it->second;
    }
    return OrderedSimplicialComplex(std::move(vertices), maximal, basepoint);
}

inline json complex_to_json(const OrderedSimplicialComplex& X) {
    json verts = json::array();
    for (const auto& v : X.vertices())
        verts.push_back(v);
    // maximal simplices only: faces are closed automatically on parse
    json simps = json::array();
    for (const auto& s : X.simplices()) {
        bool maximal = true;
        for (const auto& other : X.simplices())
            if (other.size() == s.size() + 1 &&
                std::includes(other.begin(), other.end(), s.begin(), s.end()))
                maximal = false;
        if (!maximal || s.size() == 1)
            continue;
        json row = json::array();
        for (int v : s)
            row.push_back(X.vertices()[v]);
        simps.push_back(std::move(row));
    }
    // isolated vertices still need to be listed
    for (const auto& s : X.simplices()) {
        if (s.size() != 1)
            continue;
        bool in_edge = false;
        for (const auto& other : X.simplices())
            if (other.size() == 2 &&
                std::find(other.begin(), other.end(), s[0]) != other.end())
                in_edge = true;
        if (!in_edge)
            simps.push_back(json::array({X.vertices()[s[0]]}));
    }
    return {{"format", kComplexFormat},
            {"vertices", verts},
            {"simplices", simps},
            {"basepoint", X.vertices()[X.basepoint()]}};
}

// ---------------------------------------------------------------------------
// cochain expressions ("x", "-2/3*xy + z") for naming classes on the CLI
// ---------------------------------------------------------------------------

inline Vec parse_cochain_expression(const GradedVectorSpace& S, const std::string& text) {
    struct Term {
        Rational coeff;
        std::string name;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    if (i == text.size())
        throw parse_error("empty cochain expression");
    bool first = true;
    while (i < text.size()) {
        Rational sign = 1;
        skip_ws();
        if (!first || text[i] == '+' || text[i] == '-') {
            if (i >= text.size() || (text[i] != '+' && text[i] != '-')) {
                if (!first)
                    throw parse_error("expected '+' or '-' in expression '" + text + "'");
            } else {
                sign = (text[i] == '-') ? -1 : 1;
                ++i;
            }
        }
        first = false;
        skip_ws();
        // optional rational coefficient
        std::size_t start = i;
        while (i < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
            ++i;
        Rational coeff = 1;
        bool have_coeff = i > start;
        if (have_coeff)
            coeff = parse_rational(text.substr(start, i - start));
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != '+' && text[i] != '-' && text[i] != '*')
            ++i;
        std::string name = text.substr(start, i - start);
        if (name.empty()) {
            if (!have_coeff)
                throw parse_error("dangling operator in expression '" + text + "'");
            throw parse_error("coefficient without a basis name in '" + text + "'");
        }
        terms.push_back({sign * coeff, name});
        skip_ws();
    }
    std::optional<int> degree;
    for (const auto& t : terms) {
        const auto pos = S.find(t.name);
        if (!pos)
            throw parse_error("unknown basis name '" + t.name + "' in expression");
        if (degree && *degree != pos->first)
            throw parse_error("expression '" + text + "' mixes degrees");
        degree = pos->first;
    }
    Vec v = Vec::zero(S, *degree);
    for (const auto& t : terms) {
        const auto pos = S.find(t.name);
        v.c[pos->second] += t.coeff;
    }
    return v;
}

} // namespace ainfty
