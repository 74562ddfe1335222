#pragma once

#include <array>

#include "transfer.hpp"

namespace ainfty {

/// x̄ = (−1)^{|x|} x.
inline Vec bar(const Vec& v) { return (v.degree % 2 == 0) ? v : -v; }

/// Triangular family of cochains witnessing a Massey product: a_{i,j} for
/// 0 ≤ i < j ≤ n, (i,j) ≠ (0,n), with [a_{i−1,i}] = x_i and
/// d(a_{i,j}) = Σ_{i<k<j} ā_{i,k} a_{k,j}.
struct DefiningSystem {
    std::vector<Vec> classes;                  // x_1 … x_n, elements of H
    std::map<std::pair<int, int>, Vec> cochains;

    int n() const { return static_cast<int>(classes.size()); }

    const Vec& at(int i, int j) const {
        auto it = cochains.find({i, j});
        if (it == cochains.end())
            throw malformed_input("defining system is missing a_{" + std::to_string(i) +
                                  "," + std::to_string(j) + "}");
        return it->second;
    }

    /// The combination a_{0,n} = Σ_{0<k<n} ā_{0,k} a_{k,n} whose class the
    /// Massey product collects.
    Vec head(const DgAlgebra& A) const {
        const int nn = n();
        int deg = 2 - nn;
        for (const auto& x : classes)
            deg += x.degree;
        Vec acc = Vec::zero(*A.space, deg);
        for (int k = 1; k <= nn - 1; ++k)
            acc += A.multiply(bar(at(0, k)), at(k, nn));
        return acc;
    }
};

/// Checks every defining-system equation exactly; returns the failing (i,j) as a
/// message, or nothing when valid.
inline std::optional<std::string> check_defining_system(const DgAlgebra& A,
                                                        const ContractionData& c,
                                                        const DefiningSystem& ds) {
    const int n = ds.n();
    if (n < 2)
        return "needs at least two classes";
    std::vector<int> degs;
    for (const auto& x : ds.classes)
        degs.push_back(x.degree);

    auto expected_degree = [&](int i, int j) {
        int d = -(j - i - 1);
        for (int l = i + 1; l <= j; ++l)
            d += degs[l - 1];
        return d;
    };

    for (int i = 0; i <= n - 1; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (i == 0 && j == n)
                continue;
            auto it = ds.cochains.find({i, j});
            if (it == ds.cochains.end())
                return "missing a_{" + std::to_string(i) + "," + std::to_string(j) + "}";
            if (it->second.degree != expected_degree(i, j))
                return "a_{" + std::to_string(i) + "," + std::to_string(j) +
                       "} has the wrong degree";
        }

    for (int i = 1; i <= n; ++i) {
        const Vec& rep = ds.at(i - 1, i);
        if (!A.d.apply(rep).is_zero())
            return "a_{" + std::to_string(i - 1) + "," + std::to_string(i) +
                   "} is not a cocycle";
        if (!(c.project.apply(rep) == ds.classes[i - 1]))
            return "a_{" + std::to_string(i - 1) + "," + std::to_string(i) +
                   "} does not represent x_" + std::to_string(i);
    }

    for (int span = 2; span <= n - 1; ++span)
        for (int i = 0; i + span <= n; ++i) {
            const int j = i + span;
            if (i == 0 && j == n)
                continue;
            Vec rhs = Vec::zero(*A.space, ds.at(i, j).degree + 1);
            for (int k = i + 1; k <= j - 1; ++k)
                rhs += A.multiply(bar(ds.at(i, k)), ds.at(k, j));
            if (!(A.d.apply(ds.at(i, j)) == rhs))
                return "d(a_{" + std::to_string(i) + "," + std::to_string(j) +
                       "}) does not match its defining sum";
        }
    return std::nullopt;
}

/// Sign relating the transferred n-ary product to the unique Massey value:
///   ⟨x_1,…,x_n⟩ = ε · m_n(x_1,…,x_n),  ε = (−1)^{n + Σ_{j=1}^{n−1} (n−j)|x_j|}.
/// The exponent is pinned by the explicit defining system that
/// higher_massey_unique builds and re-validates on every call: with
/// f-components of a verified transfer, a_{i,j} = ±f_{j−i}(x_{i+1},…,x_j)
/// solves the defining equations and its head class is exactly ε·m_n.
inline int epsilon(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    if (n < 2)
        throw malformed_input("epsilon: needs at least two degrees");
    long long e = n;
    for (int j = 1; j <= n - 1; ++j)
        e += static_cast<long long>(n - j) * degrees[j - 1];
    return parity_sign(e);
}

/// Result of a Massey product computation.
struct MasseyOutcome {
    enum class Kind {
        unique,             // single class, backed by vanishing lower products
        coset,              // representative + exact affine indeterminacy (n = 3)
        vanishing_witness,  // an explicit defining system with exact head
        obstructed          // a required product was nonzero; nothing defined
    };

    Kind kind = Kind::obstructed;
    std::vector<Vec> classes;
    std::optional<Vec> value;          // class in H
    std::vector<Vec> indeterminacy;    // echelon basis in the value's degree
    int epsilon_sign = 1;
    std::optional<DefiningSystem> witness;
    std::string obstruction;
    bool exhaustive = true;            // false for the bounded n = 4 explorer
    std::vector<Vec> sampled_values;   // explorer-only
};

/// 0 ∈ ⟨x_1,…,x_n⟩? Affine membership for cosets, equality for unique values.
/// For explorer outcomes this reports on the sampled set only.
inline bool massey_vanishes(const MasseyOutcome& out) {
    switch (out.kind) {
    case MasseyOutcome::Kind::obstructed:
        throw undefined_product("massey_vanishes: the product is not defined: " +
                                out.obstruction);
    case MasseyOutcome::Kind::unique:
        return out.value && out.value->is_zero();
    case MasseyOutcome::Kind::vanishing_witness:
        return true;
    case MasseyOutcome::Kind::coset: {
        if (!out.value)
            throw internal_fault("coset outcome without a representative");
        SubspaceBuilder span(out.value->c.size());
        for (const auto& g : out.indeterminacy)
            span.add(g.c);
        return span.contains(out.value->c);
    }
    }
    throw internal_fault("massey_vanishes: unreachable");
}

namespace detail {

inline Vec class_product(const CohomologyAlgebra& H, const Vec& a, const Vec& b) {
    return H.multiply(a, b);
}

struct TripleData {
    Vec a1, a2, a3, a02, a13;
};

/// Canonical triple defining system from representatives; preimages via solve().
inline TripleData triple_system(const DgAlgebra& A, const Vec& r1, const Vec& r2,
                                const Vec& r3) {
    TripleData t;
    t.a1 = r1;
    t.a2 = r2;
    t.a3 = r3;
    const auto a02 = solve(A.d, A.multiply(bar(t.a1), t.a2));
    const auto a13 = solve(A.d, A.multiply(bar(t.a2), t.a3));
    if (!a02 || !a13)
        throw internal_fault("triple_massey: an exact product had no preimage");
    t.a02 = *a02;
    t.a13 = *a13;
    return t;
}

inline Vec triple_value(const DgAlgebra& A, const ContractionData& c, const TripleData& t) {
    const Vec head = A.multiply(bar(t.a02), t.a3) + A.multiply(bar(t.a1), t.a13);
    if (!A.d.apply(head).is_zero())
        throw internal_fault("triple_massey: head cochain is not closed");
    return c.project.apply(head);
}

} // namespace detail

/// Classical triple Massey product as an exact affine coset.
///
/// The representative comes from canonical preimages; the indeterminacy is
/// rebuilt from first principles by ranging every choice: both d-preimages over
/// their full solution sets and every representative over its coset. Variations
/// of the preimages span the subspace directly; representative variations are
/// re-evaluated and checked to fall inside it, so the returned set is exact.
inline MasseyOutcome triple_massey(const DgAlgebra& A, const CohomologyAlgebra& H,
                                   const Vec& x1, const Vec& x2, const Vec& x3) {
    MasseyOutcome out;
    out.classes = {x1, x2, x3};
    out.epsilon_sign = epsilon({x1.degree, x2.degree, x3.degree});

    const Vec p12 = detail::class_product(H, x1, x2);
    if (!p12.is_zero()) {
        out.kind = MasseyOutcome::Kind::obstructed;
        out.obstruction = "x1·x2 != 0 in cohomology";
        return out;
    }
    const Vec p23 = detail::class_product(H, x2, x3);
    if (!p23.is_zero()) {
        out.kind = MasseyOutcome::Kind::obstructed;
        out.obstruction = "x2·x3 != 0 in cohomology";
        return out;
    }

    const ContractionData& c = H.contraction;
    const Vec r1 = c.include.apply(x1);
    const Vec r2 = c.include.apply(x2);
    const Vec r3 = c.include.apply(x3);

    const auto base = detail::triple_system(A, r1, r2, r3);
    const Vec v0 = detail::triple_value(A, c, base);

    // indeterminacy from the preimage choices: a02 and a13 range over
    // affine cosets of the cocycle spaces in their degrees
    SubspaceBuilder span(v0.c.size());
    std::vector<Vec> gens;
    auto push = [&](const Vec& w) {
        if (!w.is_zero() && span.add(w.c))
            gens.push_back(w);
    };
    for (const Vec& u : kernel_basis(A.d, base.a02.degree))
        push(c.project.apply(A.multiply(bar(u), r3)));
    for (const Vec& u : kernel_basis(A.d, base.a13.degree))
        push(c.project.apply(A.multiply(bar(r1), u)));

    // representative variations must stay inside the span; re-derive the whole
    // value for each perturbation direction and check membership exactly
    auto check_direction = [&](const Vec& d1, const Vec& d2, const Vec& d3) {
        const auto sys = detail::triple_system(A, r1 + A.d.apply(d1),
                                               r2 + A.d.apply(d2), r3 + A.d.apply(d3));
        const Vec v = detail::triple_value(A, c, sys);
        if (!span.contains((v - v0).c))
            throw internal_fault("triple_massey: representative variation escaped "
                                 "the computed indeterminacy");
    };
    for (int which = 0; which < 3; ++which) {
        const int deg = (which == 0 ? x1.degree : which == 1 ? x2.degree : x3.degree) - 1;
        for (std::size_t i = 0; i < A.space->dim(deg); ++i) {
            const Vec dir = Vec::basis(*A.space, deg, i);
            if (which == 0)
                check_direction(dir, Vec::zero(*A.space, x2.degree - 1),
                                Vec::zero(*A.space, x3.degree - 1));
            else if (which == 1)
                check_direction(Vec::zero(*A.space, x1.degree - 1), dir,
                                Vec::zero(*A.space, x3.degree - 1));
            else
                check_direction(Vec::zero(*A.space, x1.degree - 1),
                                Vec::zero(*A.space, x2.degree - 1), dir);
        }
    }

    out.kind = MasseyOutcome::Kind::coset;
    out.value = v0;
    out.indeterminacy = std::move(gens);

    DefiningSystem ds;
    ds.classes = out.classes;
    ds.cochains[{0, 1}] = base.a1;
    ds.cochains[{1, 2}] = base.a2;
    ds.cochains[{2, 3}] = base.a3;
    ds.cochains[{0, 2}] = base.a02;
    ds.cochains[{1, 3}] = base.a13;
    if (auto bad = check_defining_system(A, c, ds))
        throw internal_fault("triple_massey: canonical defining system invalid: " + *bad);
    out.witness = std::move(ds);
    return out;
}

/// True when the transferred operation vanishes on every all-positive-degree
/// basis tuple. Unit slots are excluded: the vanishing hypotheses of the
/// uniqueness results live on the reduced part.
inline bool vanishes_on_positive(const MultilinearMap& m) {
    const GradedVectorSpace& S = *m.source();
    for (const auto& [key, val] : m.entries()) {
        (void)val;
        bool positive = true;
        for (int f : key)
            positive = positive && S.degree_of_flat(f) > 0;
        if (positive)
            return false;
    }
    return true;
}

/// Massey n-product under the uniqueness hypothesis (transferred m_k = 0 for
/// k < n on the reduced part): the unique value ε·m_n(x_1,…,x_n), together with
/// an explicit defining system built level by level through solve() and
/// re-validated exactly. The witness's head class must reproduce the value;
/// any mismatch aborts as an internal fault.
inline MasseyOutcome higher_massey_unique(const DgAlgebra& A, const TransferResult& t,
                                          const std::vector<Vec>& classes) {
    const int n = static_cast<int>(classes.size());
    if (n < 3)
        throw malformed_input("higher_massey_unique: needs n >= 3 classes");
    if (t.arity_cap < n)
        throw incomplete_structure("higher_massey_unique: transfer cap " +
                                   std::to_string(t.arity_cap) + " < n");
    for (const auto& x : classes)
        if (x.degree < 1)
            throw malformed_input("higher_massey_unique: classes must have positive degree");

    for (int k = 2; k <= n - 1; ++k)
        if (!vanishes_on_positive(t.m(k)))
            throw not_applicable("higher_massey_unique: transferred m_" +
                                 std::to_string(k) + " is nonzero on the reduced part");

    MasseyOutcome out;
    out.classes = classes;
    std::vector<int> degs;
    for (const auto& x : classes)
        degs.push_back(x.degree);
    out.epsilon_sign = epsilon(degs);

    const Vec mval = t.m(n).eval(classes);
    Vec value = mval * Rational(out.epsilon_sign);

    // explicit witness, level by level; every right side is exact because its
    // class is a vanishing lower Massey product
    const ContractionData& c = t.contraction;
    DefiningSystem ds;
    ds.classes = classes;
    for (int i = 1; i <= n; ++i)
        ds.cochains[{i - 1, i}] = c.include.apply(classes[i - 1]);
    for (int span = 2; span <= n - 1; ++span)
        for (int i = 0; i + span <= n; ++i) {
            const int j = i + span;
            if (i == 0 && j == n)
                continue;
            int deg = 1 - (span - 1);
            for (int l = i + 1; l <= j; ++l)
                deg += degs[l - 1];
            Vec rhs = Vec::zero(*A.space, deg);
            for (int k = i + 1; k <= j - 1; ++k)
                rhs += A.multiply(bar(ds.at(i, k)), ds.at(k, j));
            const auto sol = solve(A.d, rhs);
            if (!sol)
                throw internal_fault("higher_massey_unique: level-" +
                                     std::to_string(span) +
                                     " right side was not exact");
            ds.cochains[{i, j}] = *sol;
        }
    if (auto bad = check_defining_system(A, c, ds))
        throw internal_fault("higher_massey_unique: witness system invalid: " + *bad);

    const Vec head = ds.head(A);
    if (!A.d.apply(head).is_zero())
        throw internal_fault("higher_massey_unique: witness head is not closed");
    if (!(c.project.apply(head) == value))
        throw internal_fault("higher_massey_unique: witness class disagrees with "
                             "ε·m_n — sign convention fault");

    out.kind = MasseyOutcome::Kind::unique;
    out.value = std::move(value);
    out.witness = std::move(ds);
    return out;
}

/// Γ-membership test: ε·m_n(x_1,…,x_n) − [a_{0,n}] must lie in
/// Σ_{j=2}^{n−1} Im(m_j) taken on the reduced part.
inline bool detection_check(const DgAlgebra& A, const TransferResult& t,
                            const std::vector<Vec>& classes, const DefiningSystem& ds) {
    const int n = static_cast<int>(classes.size());
    if (ds.n() != n)
        throw malformed_input("detection_check: class count does not match the system");
    if (auto bad = check_defining_system(A, t.contraction, ds))
        throw malformed_input("detection_check: defining-system violation: " + *bad);

    const Vec head = ds.head(A);
    if (!A.d.apply(head).is_zero())
        throw malformed_input("detection_check: head cochain is not closed");
    const Vec head_class = t.contraction.project.apply(head);

    std::vector<int> degs;
    for (const auto& x : classes)
        degs.push_back(x.degree);
    const Vec mval = t.m(n).eval(classes);
    const Vec delta = mval * Rational(epsilon(degs)) - head_class;
    if (delta.is_zero())
        return true;

    const GradedVectorSpace& H = *t.structure.space;
    SubspaceBuilder gamma(delta.c.size());
    for (int j = 2; j <= std::min(n - 1, t.arity_cap); ++j)
        for (const auto& [key, val] : t.m(j).entries()) {
            bool positive = true;
            for (int f : key)
                positive = positive && H.degree_of_flat(f) > 0;
            if (positive && val.degree == delta.degree)
                gamma.add(val.c);
        }
    return gamma.contains(delta.c);
}

/// Bounded exploration of a Massey 4-product: enumerates echelon-parametrized
/// preimage choices up to a budget and collects the distinct head classes it
/// reaches. Deliberately incomplete — 4-fold Massey sets are not affine — and
/// says so in the outcome.
inline MasseyOutcome massey_explore_four(const DgAlgebra& A, const CohomologyAlgebra& H,
                                         const std::vector<Vec>& classes,
                                         std::size_t budget = 512) {
    if (classes.size() != 4)
        throw malformed_input("massey_explore_four: needs exactly four classes");
    MasseyOutcome out;
    out.classes = classes;
    out.exhaustive = false;
    std::vector<int> degs;
    for (const auto& x : classes)
        degs.push_back(x.degree);
    out.epsilon_sign = epsilon(degs);

    const ContractionData& c = H.contraction;
    for (int i = 0; i < 3; ++i)
        if (!detail::class_product(H, classes[i], classes[i + 1]).is_zero()) {
            out.kind = MasseyOutcome::Kind::obstructed;
            out.obstruction = "a consecutive product is nonzero in cohomology";
            return out;
        }

    std::vector<Vec> reps;
    for (const auto& x : classes)
        reps.push_back(c.include.apply(x));

    // level-2 particular solutions and their cocycle freedoms
    std::array<Vec, 3> part;
    std::array<std::vector<Vec>, 3> freedom;
    for (int i = 0; i < 3; ++i) {
        const Vec rhs = A.multiply(bar(reps[i]), reps[i + 1]);
        const auto sol = solve(A.d, rhs);
        if (!sol) {
            out.kind = MasseyOutcome::Kind::obstructed;
            out.obstruction = "a consecutive product is not exact at the cochain level";
            return out;
        }
        part[i] = *sol;
        freedom[i] = kernel_basis(A.d, sol->degree);
    }

    // deterministic small coefficient patterns: zero, then single ±1 tweaks
    std::vector<std::array<Vec, 3>> level2_choices;
    level2_choices.push_back(part);
    for (int slot = 0; slot < 3 && level2_choices.size() < budget / 8 + 1; ++slot)
        for (const Vec& u : freedom[slot]) {
            for (int sgn : {1, -1}) {
                auto ch = part;
                ch[slot] += u * Rational(sgn);
                level2_choices.push_back(ch);
                if (level2_choices.size() >= budget / 8 + 1)
                    break;
            }
            if (level2_choices.size() >= budget / 8 + 1)
                break;
        }

    std::size_t used = 0;
    for (const auto& choice : level2_choices) {
        if (used >= budget)
            break;
        const Vec& a02 = choice[0];
        const Vec& a13 = choice[1];
        const Vec& a24 = choice[2];
        const Vec rhs03 = A.multiply(bar(reps[0]), a13) + A.multiply(bar(a02), reps[2]);
        const Vec rhs14 = A.multiply(bar(reps[1]), a24) + A.multiply(bar(a13), reps[3]);
        const auto a03 = solve(A.d, rhs03);
        const auto a14 = solve(A.d, rhs14);
        ++used;
        if (!a03 || !a14)
            continue; // this branch of choices does not extend
        DefiningSystem ds;
        ds.classes = classes;
        for (int i = 1; i <= 4; ++i)
            ds.cochains[{i - 1, i}] = reps[i - 1];
        ds.cochains[{0, 2}] = a02;
        ds.cochains[{1, 3}] = a13;
        ds.cochains[{2, 4}] = a24;
        ds.cochains[{0, 3}] = *a03;
        ds.cochains[{1, 4}] = *a14;
        if (auto bad = check_defining_system(A, c, ds))
            throw internal_fault("massey_explore_four: constructed system invalid: " +
                                 *bad);
        const Vec head = ds.head(A);
        if (!A.d.apply(head).is_zero())
            throw internal_fault("massey_explore_four: head not closed");
        const Vec cls = c.project.apply(head);
        bool fresh = true;
        for (const auto& s : out.sampled_values)
            fresh = fresh && !(s == cls);
        if (fresh)
            out.sampled_values.push_back(cls);
        if (cls.is_zero() && out.kind != MasseyOutcome::Kind::vanishing_witness) {
            out.kind = MasseyOutcome::Kind::vanishing_witness;
            out.value = cls;
            out.witness = std::move(ds);
        }
    }
    if (out.kind != MasseyOutcome::Kind::vanishing_witness) {
        out.kind = MasseyOutcome::Kind::coset;
        if (!out.sampled_values.empty())
            out.value = out.sampled_values.front();
        else {
            out.kind = MasseyOutcome::Kind::obstructed;
            out.obstruction = "no defining system found within the search budget";
        }
    }
    return out;
}

} // namespace ainfty
