#pragma once

#include "a_infinity.hpp"

namespace ainfty {

/// Finite-dimensional dg-algebra: degree +1 differential and degree 0 bilinear
/// product given by structure constants. May be non-unital; the Massey and
/// transfer machinery never assumes a unit.
struct DgAlgebra {
    SpacePtr space;
    GradedMap d;        // shift +1
    MultilinearMap product; // arity 2, shift 0
    bool unital = false;
    std::optional<Vec> unit;

    ChainComplex as_complex() const { return ChainComplex{space, d}; }

    /// View as the A∞-algebra with m_1 = d, m_2 = product, m_n = 0 for n ≥ 3.
    AInfinityStructure as_a_infinity() const {
        AInfinityStructure s;
        s.space = space;
        s.ops.emplace(1, MultilinearMap::from_graded_map(d));
        s.ops.emplace(2, product);
        s.arity_cap = 2;
        s.zero_above = 2;
        return s;
    }

    Vec multiply(const Vec& a, const Vec& b) const { return product.eval({a, b}); }
};

struct Violation {
    std::string identity; // "d∘d", "leibniz", "associativity", "unit"
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }

    std::string to_string() const {
        if (ok())
            return "valid: d∘d = 0, Leibniz, associativity and unit laws hold exactly";
        std::string out;
        for (const auto& v : violations)
            out += v.identity + " fails at " + v.witness + "\n";
        return out;
    }
};

namespace detail {

inline std::string key_to_string(const BasisKey& key, const GradedVectorSpace& space) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
        auto [d, idx] = space.unflatten(key[i]);
        if (i)
            out += ", ";
        out += space.name(d, idx);
    }
    return out + ")";
}

} // namespace detail

/// Checks d² = 0, the Leibniz rule, associativity and (when unital) the unit laws,
/// all exactly, listing every failure with a witness basis tuple. The Leibniz and
/// associativity checks are the n = 2 and n = 3 Stasheff identities of the
/// associated A∞-structure, so this validator shares its sign conventions with
/// everything downstream.
inline ValidationReport validate(const DgAlgebra& A) {
    ValidationReport report;
    const GradedVectorSpace& S = *A.space;

    for (int deg : S.support()) {
        const Matrix dd = A.d.block(deg + 1) * A.d.block(deg);
        for (std::size_t j = 0; j < dd.cols(); ++j) {
            bool bad = false;
            for (std::size_t i = 0; i < dd.rows() && !bad; ++i)
                bad = dd(i, j) != 0;
            if (bad)
                report.violations.push_back(
                    {"d∘d", S.name(deg, j) + " (degree " + std::to_string(deg) + ")"});
        }
    }

    const AInfinityStructure s = A.as_a_infinity();
    const MultilinearMap leibniz = stasheff_defect(s, 2);
    for (const auto& [key, val] : leibniz.entries()) {
        (void)val;
        report.violations.push_back({"leibniz", detail::key_to_string(key, S)});
    }
    const MultilinearMap assoc = stasheff_defect(s, 3);
    for (const auto& [key, val] : assoc.entries()) {
        (void)val;
        report.violations.push_back({"associativity", detail::key_to_string(key, S)});
    }

    if (A.unital) {
        if (!A.unit || A.unit->degree != 0)
            report.violations.push_back({"unit", "missing or not of degree 0"});
        else {
            const Vec& e = *A.unit;
            if (!A.d.apply(e).is_zero())
                report.violations.push_back({"unit", "d(1) != 0"});
            for (int deg : S.support())
                for (std::size_t i = 0; i < S.dim(deg); ++i) {
                    const Vec b = Vec::basis(S, deg, i);
                    if (!(A.multiply(e, b) == b))
                        report.violations.push_back({"unit", "1·" + S.name(deg, i)});
                    if (!(A.multiply(b, e) == b))
                        report.violations.push_back({"unit", S.name(deg, i) + "·1"});
                }
        }
    }
    return report;
}

/// Cohomology of a dg-algebra with the induced product p(m₂(i[a], i[b])).
struct CohomologyAlgebra {
    ContractionData contraction;
    MultilinearMap product; // arity 2 on H, shift 0
    bool unital = false;
    std::optional<Vec> unit;

    const SpacePtr& space() const { return contraction.homology; }

    Vec multiply(const Vec& a, const Vec& b) const { return product.eval({a, b}); }

    /// The cohomology as a zero-differential dg-algebra.
    DgAlgebra as_dg_algebra() const {
        return DgAlgebra{space(), GradedMap::zero(space(), space(), 1), product, unital, unit};
    }
};

inline CohomologyAlgebra induced_cohomology_algebra(const DgAlgebra& A) {
    const ValidationReport rep = validate(A);
    if (!rep.ok())
        throw malformed_input("induced_cohomology_algebra: input is not a dg-algebra:\n" +
                              rep.to_string());
    CohomologyAlgebra out;
    out.contraction = cohomology(A.as_complex());
    const SpacePtr H = out.contraction.homology;
    MultilinearMap prod(2, H, H, 0);
    for (int da : H->support())
        for (int db : H->support()) {
            if (!H->has_degree(da + db))
                continue;
            for (std::size_t ia = 0; ia < H->dim(da); ++ia)
                for (std::size_t ib = 0; ib < H->dim(db); ++ib) {
                    const Vec a = out.contraction.include.apply(Vec::basis(*H, da, ia));
                    const Vec b = out.contraction.include.apply(Vec::basis(*H, db, ib));
                    const Vec v = out.contraction.project.apply(A.multiply(a, b));
                    if (!v.is_zero())
                        prod.add_entry({H->flat_index(da, ia), H->flat_index(db, ib)}, v);
                }
        }
    out.product = std::move(prod);
    if (A.unital && A.unit) {
        out.unital = true;
        out.unit = out.contraction.project.apply(*A.unit);
    }
    return out;
}

/// True iff the product vanishes on every pair of positive-degree classes.
inline bool is_reduced_product_trivial(const CohomologyAlgebra& H) {
    for (const auto& [key, val] : H.product.entries()) {
        (void)val;
        const auto& S = *H.space();
        if (S.degree_of_flat(key[0]) > 0 && S.degree_of_flat(key[1]) > 0)
            return false;
    }
    return true;
}

/// Largest k such that some product of k positive-degree classes is nonzero.
/// Computed by saturating product subspaces degree by degree.
inline int cup_length(const CohomologyAlgebra& H) {
    const GradedVectorSpace& S = *H.space();
    int max_deg = 0;
    for (int d : S.support())
        max_deg = std::max(max_deg, d);
    if (max_deg <= 0)
        return 0;

    // span of k-fold products per degree
    using Layer = std::map<int, std::vector<Vec>>;
    Layer ones;
    for (int d : S.support())
        if (d > 0)
            for (std::size_t i = 0; i < S.dim(d); ++i)
                ones[d].push_back(Vec::basis(S, d, i));
    if (ones.empty())
        return 0;

    int length = 0;
    Layer current = ones;
    while (!current.empty()) {
        ++length;
        if (length > max_deg)
            throw internal_fault("cup_length failed to terminate");
        Layer next;
        std::map<int, SubspaceBuilder> spans;
        for (const auto& [dc, vecs] : current)
            for (const Vec& v : vecs)
                for (const auto& [d1, gens] : ones) {
                    const int dn = dc + d1;
                    if (!S.has_degree(dn))
                        continue;
                    for (const Vec& g : gens) {
                        const Vec w = H.multiply(v, g);
                        if (w.is_zero())
                            continue;
                        auto [it, fresh] = spans.try_emplace(dn, S.dim(dn));
                        if (it->second.add(w.c))
                            next[dn].push_back(w);
                    }
                }
        current = std::move(next);
    }
    return length;
}

/// Positive-degree classes seen as a plain graded space (for arity bounds).
inline SpacePtr positive_part(const GradedVectorSpace& S) {
    std::map<int, std::vector<std::string>> basis;
    for (int d : S.support())
        if (d > 0) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < S.dim(d); ++i)
                names.push_back(S.name(d, i));
            basis[d] = std::move(names);
        }
    return make_space(std::move(basis));
}

/// Number of connected components of the complex underlying a cochain algebra,
/// read off as dim ker d⁰ (the locally constant functions).
inline std::size_t component_count(const DgAlgebra& A) {
    return A.space->dim(0) - A.d.block(0).rank();
}

/// The basepoint-kernel model of the reduced algebra: degree 0 becomes the kernel
/// of the basepoint functional, higher degrees are untouched. Result is a valid
/// non-unital dg-algebra whose cohomology is the reduced cohomology.
inline DgAlgebra reduced_subalgebra(const DgAlgebra& A,
                                    const std::vector<Rational>& basepoint_functional) {
    const GradedVectorSpace& S = *A.space;
    if (basepoint_functional.size() != S.dim(0))
        throw malformed_input("reduced_subalgebra: functional length != dim A^0");
    if (component_count(A) != 1)
        throw malformed_input("reduced_subalgebra: input is disconnected; "
                              "reduce each connected component separately");

    Matrix phi(1, S.dim(0));
    for (std::size_t j = 0; j < S.dim(0); ++j)
        phi(0, j) = basepoint_functional[j];
    const auto ker = phi.kernel_basis();

    std::map<int, std::vector<std::string>> basis;
    for (int d : S.support()) {
        if (d == 0)
            continue;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < S.dim(d); ++i)
            names.push_back(S.name(d, i));
        basis[d] = std::move(names);
    }
    std::vector<std::string> deg0;
    for (const auto& k : ker)
        deg0.push_back(format_vec(Vec(0, k), S));
    if (!deg0.empty())
        basis[0] = std::move(deg0);
    SpacePtr R = make_space(std::move(basis));

    // inclusion R -> A and a left inverse on degree 0 for rewriting products
    GradedMap incl(R, A.space, 0);
    for (int d : R->support()) {
        if (d == 0) {
            incl.set_block(0, Matrix::from_columns(ker, S.dim(0)));
        } else {
            incl.set_block(d, Matrix::identity(S.dim(d)));
        }
    }
    const Matrix ker_matrix = Matrix::from_columns(ker, S.dim(0));

    auto to_reduced = [&](const Vec& v) -> Vec {
        if (v.degree != 0)
            return Vec(v.degree, v.c);
        const auto sol = ker_matrix.solve(v.c);
        if (!sol)
            throw internal_fault("reduced_subalgebra: product escaped the kernel");
        return Vec(0, *sol);
    };

    GradedMap d_r(R, R, 1);
    for (int deg : R->support()) {
        if (!R->has_degree(deg + 1))
            continue;
        Matrix block(R->dim(deg + 1), R->dim(deg));
        for (std::size_t j = 0; j < R->dim(deg); ++j) {
            const Vec img = A.d.apply(incl.apply(Vec::basis(*R, deg, j)));
            const Vec red = to_reduced(img);
            for (std::size_t i = 0; i < red.c.size(); ++i)
                block(i, j) = red.c[i];
        }
        d_r.set_block(deg, std::move(block));
    }

    MultilinearMap prod(2, R, R, 0);
    for (int da : R->support())
        for (int db : R->support()) {
            if (!R->has_degree(da + db))
                continue;
            for (std::size_t ia = 0; ia < R->dim(da); ++ia)
                for (std::size_t ib = 0; ib < R->dim(db); ++ib) {
                    const Vec v = A.multiply(incl.apply(Vec::basis(*R, da, ia)),
                                             incl.apply(Vec::basis(*R, db, ib)));
                    if (v.is_zero())
                        continue;
                    const Vec red = to_reduced(v);
                    if (!red.is_zero())
                        prod.add_entry({R->flat_index(da, ia), R->flat_index(db, ib)}, red);
                }
        }

    return DgAlgebra{R, std::move(d_r), std::move(prod), false, std::nullopt};
}

/// The augmented complex ··· → 0 → K → A⁰ → A¹ → ··· with K in degree −1 and the
/// augmentation sending 1 to the unit (the constant 0-cochain). Used purely as a
/// chain complex.
inline ChainComplex augmented_complex(const DgAlgebra& A) {
    if (!A.unital || !A.unit)
        throw malformed_input("augmented_complex: algebra must be unital");
    if (component_count(A) != 1)
        throw malformed_input("augmented_complex: input is disconnected; "
                              "augment each connected component separately");
    std::map<int, std::vector<std::string>> basis;
    basis[-1] = {"aug"};
    const GradedVectorSpace& S = *A.space;
    for (int d : S.support()) {
        if (d < 0)
            throw malformed_input("augmented_complex: input has negative degrees");
        std::vector<std::string> names;
        for (std::size_t i = 0; i < S.dim(d); ++i)
            names.push_back(S.name(d, i));
        basis[d] = std::move(names);
    }
    SpacePtr T = make_space(std::move(basis));
    GradedMap dt(T, T, 1);
    for (int d : S.support())
        dt.set_block(d, A.d.block(d));
    Matrix eps(S.dim(0), 1);
    for (std::size_t i = 0; i < S.dim(0); ++i)
        eps(i, 0) = A.unit->c[i];
    dt.set_block(-1, std::move(eps));
    return ChainComplex{T, std::move(dt)};
}

} // namespace ainfty
