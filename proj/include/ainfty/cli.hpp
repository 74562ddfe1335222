#pragma once

#include "io.hpp"
#include "transfer.hpp"

namespace ainfty {

/// Outcome of one CLI command: stable exit code, machine document, human text.
/// Exit codes: 0 verdict reached, 1 verdict-negative / hypothesis failure,
/// 2 usage or parse error, 3 internal fault.
struct CommandResult {
    int exit_code = 0;
    json machine;
    std::string human;
};

struct InputOptions {
    bool reduce = false;
    std::optional<std::string> basepoint;
};

struct LoadedInput {
    DgAlgebra algebra;
    bool reduced = false;
    std::string kind; // "algebra" or "complex"
};

inline LoadedInput load_input(const json& doc, const InputOptions& opt) {
    const std::string format = detail::need(doc, "format").get<std::string>();
    if (format == kAlgebraFormat) {
        LoadedInput in{algebra_from_json(doc), false, "algebra"};
        in.reduced = doc.value("reduced", false);
        if (opt.reduce && !in.reduced) {
            const GradedVectorSpace& S = *in.algebra.space;
            std::size_t idx = 0;
            if (opt.basepoint) {
                const auto pos = S.find_in_degree(0, *opt.basepoint);
                if (!pos)
                    throw malformed_input("basepoint '" + *opt.basepoint +
                                          "' is not a degree-0 basis name");
                idx = *pos;
            }
            std::vector<Rational> phi(S.dim(0));
            phi.at(idx) = 1;
            in.algebra = reduced_subalgebra(in.algebra, phi);
            in.reduced = true;
        }
        return in;
    }
    if (format == kComplexFormat) {
        OrderedSimplicialComplex X = complex_from_json(doc);
        if (opt.basepoint) {
            int bp = -1;
            for (std::size_t v = 0; v < X.vertices().size(); ++v)
                if (X.vertices()[v] == *opt.basepoint)
                    bp = static_cast<int>(v);
            if (bp < 0)
                throw malformed_input("basepoint '" + *opt.basepoint +
                                      "' is not a vertex");
            X = OrderedSimplicialComplex(X.vertices(), {X.simplices().begin(),
                                                        X.simplices().end()},
                                         bp);
        }
        LoadedInput in{opt.reduce ? reduced_cochain_algebra(X) : cochain_algebra(X),
                       opt.reduce, "complex"};
        return in;
    }
    throw parse_error("unknown document format '" + format + "'");
}

namespace detail {

inline std::string class_expression(const ContractionData& c, const Vec& cls) {
    return format_vec(c.include.apply(cls), *c.complex.space);
}

inline json class_to_json(const Vec& cls, const GradedVectorSpace& H) {
    return {{"degree", cls.degree}, {"coefficients", vector_to_json(cls, H)}};
}

} // namespace detail

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

inline CommandResult cmd_validate(const json& doc, const InputOptions& opt = {}) {
    CommandResult r;
    const LoadedInput in = load_input(doc, opt);
    const ValidationReport rep = validate(in.algebra);
    r.machine = {{"command", "validate"}, {"valid", rep.ok()}};
    json vio = json::array();
    for (const auto& v : rep.violations)
        vio.push_back({{"identity", v.identity}, {"witness", v.witness}});
    r.machine["violations"] = vio;
    r.human = rep.to_string();
    r.exit_code = rep.ok() ? 0 : 1;
    return r;
}

inline CommandResult cmd_cohomology(const json& doc, const InputOptions& opt = {}) {
    CommandResult r;
    const LoadedInput in = load_input(doc, opt);
    const CohomologyAlgebra H = induced_cohomology_algebra(in.algebra);
    const GradedVectorSpace& HS = *H.space();

    json dims = json::object();
    json reps = json::object();
    for (int d : HS.support()) {
        dims[std::to_string(d)] = HS.dim(d);
        json names = json::array();
        for (std::size_t i = 0; i < HS.dim(d); ++i)
            names.push_back(HS.name(d, i));
        reps[std::to_string(d)] = names;
    }
    json table = json::array();
    for (const auto& [key, val] : H.product.entries()) {
        const auto [ld, li] = HS.unflatten(key[0]);
        const auto [rd, ri] = HS.unflatten(key[1]);
        table.push_back({{"left", HS.name(ld, li)},
                         {"right", HS.name(rd, ri)},
                         {"value", detail::vector_to_json(val, HS)}});
    }
    const int cup = cup_length(H);
    r.machine = {{"command", "cohomology"},
                 {"dims", dims},
                 {"representatives", reps},
                 {"product", table},
                 {"cup_length", cup},
                 {"reduced_product_trivial", is_reduced_product_trivial(H)}};

    std::string h = "cohomology dimensions:";
    for (int d : HS.support())
        h += " H^" + std::to_string(d) + "=" + std::to_string(HS.dim(d));
    h += "\ncup length: " + std::to_string(cup) + "\n";
    for (int d : HS.support())
        for (std::size_t i = 0; i < HS.dim(d); ++i)
            h += "  degree " + std::to_string(d) + ": " + HS.name(d, i) + "\n";
    r.human = h;
    return r;
}

inline CommandResult cmd_transfer(const json& doc, int cap,
                                  const InputOptions& opt = {}) {
    if (cap < 2)
        throw malformed_input("transfer: --cap must be at least 2");
    CommandResult r;
    const LoadedInput in = load_input(doc, opt);
    const CohomologyAlgebra H = induced_cohomology_algebra(in.algebra);
    const TransferResult t = transfer(in.algebra, H.contraction, cap);
    const GradedVectorSpace& HS = *H.space();

    json ops = json::array();
    std::string h;
    for (int n = 3; n <= cap; ++n)
        for (const auto& [key, val] : t.m(n).entries()) {
            json names = json::array();
            std::string tuple;
            for (int f : key) {
                const auto [d, i] = HS.unflatten(f);
                names.push_back(HS.name(d, i));
                tuple += (tuple.empty() ? "" : ", ") + HS.name(d, i);
            }
            ops.push_back({{"n", n},
                           {"on", names},
                           {"value", detail::vector_to_json(val, HS)}});
            h += "m_" + std::to_string(n) + "(" + tuple + ") = " +
                 format_vec(val, HS) + "\n";
        }
    json verified = json::array();
    for (int n = 1; n <= cap; ++n) {
        const bool s_ok = stasheff_defect(t.structure, n).is_zero();
        const bool m_ok = morphism_defect(t.morphism, n).is_zero();
        verified.push_back({{"n", n}, {"stasheff", s_ok}, {"morphism", m_ok}});
        if (!s_ok || !m_ok)
            throw internal_fault("transfer verifiers failed after construction");
    }
    r.machine = {{"command", "transfer"},
                 {"cap", cap},
                 {"higher_products", ops},
                 {"verified", verified}};
    if (h.empty())
        h = "no nonzero higher products up to arity " + std::to_string(cap) + "\n";
    r.human = h + "identities verified exactly for all n <= " + std::to_string(cap) + "\n";
    return r;
}

inline json outcome_to_json(const MasseyOutcome& out, const GradedVectorSpace& HS) {
    json o;
    switch (out.kind) {
    case MasseyOutcome::Kind::unique: o["kind"] = "unique"; break;
    case MasseyOutcome::Kind::coset: o["kind"] = "coset"; break;
    case MasseyOutcome::Kind::vanishing_witness: o["kind"] = "vanishing_witness"; break;
    case MasseyOutcome::Kind::obstructed: o["kind"] = "obstructed"; break;
    }
    o["epsilon"] = out.epsilon_sign;
    o["exhaustive"] = out.exhaustive;
    if (out.kind == MasseyOutcome::Kind::obstructed) {
        o["obstruction"] = out.obstruction;
        return o;
    }
    if (out.value)
        o["value"] = detail::class_to_json(*out.value, HS);
    json ind = json::array();
    for (const auto& g : out.indeterminacy)
        ind.push_back(detail::class_to_json(g, HS));
    o["indeterminacy"] = ind;
    o["vanishes"] = massey_vanishes(out);
    return o;
}

inline CommandResult cmd_massey(const json& doc,
                                const std::vector<std::string>& class_exprs,
                                std::optional<int> n_flag,
                                const InputOptions& opt = {}) {
    CommandResult r;
    const LoadedInput in = load_input(doc, opt);
    const DgAlgebra& A = in.algebra;
    const int n = static_cast<int>(class_exprs.size());
    if (n < 3)
        throw malformed_input("massey: need at least three classes");
    if (n_flag && *n_flag != n)
        throw malformed_input("massey: --n disagrees with the number of classes");

    const CohomologyAlgebra H = induced_cohomology_algebra(A);
    std::vector<Vec> classes;
    for (const auto& expr : class_exprs) {
        const Vec v = parse_cochain_expression(*A.space, expr);
        if (!A.d.apply(v).is_zero())
            throw malformed_input("class expression '" + expr + "' is not a cocycle");
        classes.push_back(H.contraction.project.apply(v));
    }

    const GradedVectorSpace& HS = *H.space();
    std::optional<MasseyOutcome> outcome;
    std::string note;
    if (n == 3) {
        outcome = triple_massey(A, H, classes[0], classes[1], classes[2]);
        // when the uniqueness hypothesis holds, cross-check against the
        // transferred product
        if (outcome->kind == MasseyOutcome::Kind::coset) {
            try {
                const TransferResult t = transfer(A, H.contraction, 3);
                const MasseyOutcome uniq = higher_massey_unique(A, t, classes);
                if (!(*uniq.value == *outcome->value))
                    throw internal_fault("massey: the two routes disagree");
                note = "cross-checked against the transferred m_3";
            } catch (const not_applicable&) {
            }
        }
    } else {
        try {
            const TransferResult t = transfer(A, H.contraction, n);
            outcome = higher_massey_unique(A, t, classes);
        } catch (const not_applicable& e) {
            if (n == 4) {
                outcome = massey_explore_four(A, H, classes);
                note = "uniqueness hypothesis fails; bounded incomplete search";
            } else {
                r.machine = {{"command", "massey"}, {"error", e.what()}};
                r.human = std::string(e.what()) + "\n";
                r.exit_code = 1;
                return r;
            }
        }
    }

    r.machine = {{"command", "massey"},
                 {"n", n},
                 {"outcome", outcome_to_json(*outcome, HS)}};
    if (!note.empty())
        r.machine["note"] = note;
    if (outcome->kind == MasseyOutcome::Kind::obstructed) {
        r.human = "obstructed: " + outcome->obstruction + "\n";
        r.exit_code = 1;
        return r;
    }
    std::string h = "kind: " + std::string(r.machine["outcome"]["kind"]) + "\n";
    if (outcome->value)
        h += "value: " + format_vec(*outcome->value, HS) + "\n";
    h += "epsilon: " + std::to_string(outcome->epsilon_sign) + "\n";
    h += std::string("vanishes: ") + (massey_vanishes(*outcome) ? "yes" : "no") + "\n";
    if (!note.empty())
        h += note + "\n";
    r.human = h;
    return r;
}

inline CommandResult cmd_formality(const json& doc, int cap, const std::string& mode,
                                   const InputOptions& opt = {}) {
    if (cap < 2)
        throw malformed_input("formality: --cap must be at least 2");
    CommandResult r;
    const LoadedInput in = load_input(doc, opt);

    auto verdict_string = [](const FormalityCertificate& c) {
        switch (c.verdict) {
        case FormalityCertificate::Verdict::formal_up_to_cap:
            return std::string("formal-up-to-cap");
        case FormalityCertificate::Verdict::non_formal:
            return std::string("non-formal");
        default:
            return std::string("inconclusive");
        }
    };

    auto certificate_json = [&](const FormalityCertificate& c,
                                const CohomologyAlgebra& H) {
        json j = {{"verdict", verdict_string(c)},
                  {"cap", c.cap},
                  {"bound_is_absolute", c.bound_is_absolute}};
        if (c.witness_arity) {
            const GradedVectorSpace& HS = *H.space();
            json names = json::array();
            json exprs = json::array();
            for (int f : *c.witness_key) {
                const auto [d, i] = HS.unflatten(f);
                names.push_back(HS.name(d, i));
                exprs.push_back(detail::class_expression(
                    H.contraction, Vec::basis(HS, d, i)));
            }
            j["witness"] = {{"arity", *c.witness_arity},
                            {"classes", names},
                            {"class_cochains", exprs},
                            {"value", detail::vector_to_json(*c.witness_value, HS)}};
        }
        return j;
    };

    if (mode == "transfer") {
        const FormalityAnalysis fa = certify_formality(in.algebra, cap);
        r.machine = {{"command", "formality"},
                     {"pipeline", "transfer"},
                     {"certificate", certificate_json(fa.certificate, fa.cohomology)}};
        r.human = "verdict: " + verdict_string(fa.certificate) + " (cap " +
                  std::to_string(fa.certificate.cap) +
                  (fa.certificate.bound_is_absolute ? ", absolute bound" : "") + ")\n";
        return r;
    }
    if (mode != "theorem1")
        throw malformed_input("formality: --pipeline must be theorem1 or transfer");

    try {
        const PipelineResult pr = theorem1_pipeline(in.algebra, cap);
        json trace = json::array();
        std::string h;
        for (const auto& s : pr.trace) {
            trace.push_back({{"n", s.n},
                             {"massey_products_checked", s.tuples_checked},
                             {"vanishing_by_degree", s.trivial_by_degree},
                             {"all_vanished", s.all_vanished}});
            h += "arity " + std::to_string(s.n) + ": " +
                 std::to_string(s.tuples_checked) + " products checked, " +
                 std::to_string(s.trivial_by_degree) + " vanish by degree, " +
                 (s.all_vanished ? "all vanish" : "nonvanishing product found") + "\n";
        }
        r.machine = {{"command", "formality"},
                     {"pipeline", "theorem1"},
                     {"certificate", certificate_json(pr.certificate, pr.cohomology)},
                     {"trace", trace}};
        r.human = h + "verdict: " + verdict_string(pr.certificate) + "\n";
        return r;
    } catch (const not_applicable& e) {
        r.machine = {{"command", "formality"},
                     {"pipeline", "theorem1"},
                     {"not_applicable", e.what()}};
        r.human = std::string(e.what()) + "\n";
        r.exit_code = 1;
        return r;
    }
}

inline CommandResult cmd_corpus(bool run_all, std::optional<std::string> filter,
                                int cap = 5) {
    CommandResult r;
    if (filter && filter->empty())
        throw malformed_input("corpus: empty filter");
    if (!run_all && !filter)
        throw malformed_input("corpus: pass --run-all or --filter NAME");

    json entries = json::array();
    std::string h;
    bool all_ok = true;
    for (const auto& e : example_corpus()) {
        if (filter && e.name.find(*filter) == std::string::npos)
            continue;
        const CorpusCheck c = verify_corpus_entry(e, cap);
        all_ok = all_ok && c.ok;
        json mm = json::array();
        for (const auto& m : c.mismatches)
            mm.push_back(m);
        entries.push_back({{"name", c.name}, {"ok", c.ok}, {"mismatches", mm}});
        h += (c.ok ? "ok   " : "FAIL ") + c.name + "\n";
        for (const auto& m : c.mismatches)
            h += "     " + m + "\n";
    }
    if (entries.empty())
        throw malformed_input("corpus: filter matched no entries");
    r.machine = {{"command", "corpus"}, {"ok", all_ok}, {"entries", entries}};
    r.human = h;
    r.exit_code = all_ok ? 0 : 1;
    return r;
}

} // namespace ainfty
