#pragma once

#include "massey.hpp"

namespace ainfty {

/// Degree-arithmetic bound on which transferred products can be nonzero on
/// positive-degree inputs. With the positive part supported in [d_min, d_max]
/// and d_min ≥ 2, an n-ary product of positive classes lands in degree
/// ≥ n·d_min + 2 − n, so everything above the bound vanishes outright.
/// d_min = 1 gives no finite bound.
struct ArityBound {
    std::optional<int> bound; // nullopt = unbounded
    bool absolute() const { return bound.has_value(); }
};

inline ArityBound arity_bound(const GradedVectorSpace& positive) {
    int d_min = 0, d_max = 0;
    bool any = false;
    for (int d : positive.support())
        if (d > 0) {
            if (!any) {
                d_min = d_max = d;
                any = true;
            } else {
                d_min = std::min(d_min, d);
                d_max = std::max(d_max, d);
            }
        }
    if (!any)
        return {2};
    if (d_min == 1)
        return {std::nullopt};
    return {std::max(2, (d_max - 2) / (d_min - 1))};
}

struct FormalityCertificate {
    enum class Verdict { formal_up_to_cap, non_formal, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    int cap = 0;
    bool bound_is_absolute = false;
    std::optional<int> witness_arity;
    std::optional<BasisKey> witness_key;   // basis tuple in H
    std::optional<Vec> witness_value;      // nonzero m_n value in H

    bool formal() const { return verdict == Verdict::formal_up_to_cap; }
};

struct FormalityAnalysis {
    FormalityCertificate certificate;
    CohomologyAlgebra cohomology;
    std::optional<TransferResult> transfer;
};

/// Formality test by direct transfer: run to min(cap, arity bound) and report
/// the first nonzero m_n with n ≥ 3 as a non-formality witness.
inline FormalityAnalysis certify_formality(const DgAlgebra& A, int cap = 8) {
    FormalityAnalysis out;
    out.cohomology = induced_cohomology_algebra(A);
    const ArityBound ab = arity_bound(*positive_part(*out.cohomology.space()));

    int eff_cap = cap;
    if (ab.bound)
        eff_cap = std::min(cap, *ab.bound);
    out.certificate.cap = eff_cap;
    out.certificate.bound_is_absolute = ab.bound && *ab.bound <= eff_cap;

    if (eff_cap < 3 && !out.certificate.bound_is_absolute) {
        out.certificate.verdict = FormalityCertificate::Verdict::inconclusive;
        return out;
    }

    out.transfer = transfer(A, out.cohomology.contraction, std::max(2, eff_cap));
    for (int n = 3; n <= eff_cap; ++n) {
        const MultilinearMap& mn = out.transfer->m(n);
        if (mn.is_zero())
            continue;
        const auto& first = *mn.entries().begin();
        out.certificate.verdict = FormalityCertificate::Verdict::non_formal;
        out.certificate.witness_arity = n;
        out.certificate.witness_key = first.first;
        out.certificate.witness_value = first.second;
        return out;
    }
    out.certificate.verdict = FormalityCertificate::Verdict::formal_up_to_cap;
    return out;
}

struct PipelineStep {
    int n = 0;
    std::size_t tuples_checked = 0;
    std::size_t trivial_by_degree = 0;
    bool all_vanished = true;
};

struct PipelineResult {
    FormalityCertificate certificate;
    std::vector<PipelineStep> trace;
    CohomologyAlgebra cohomology;
    std::optional<TransferResult> transfer;
    std::optional<MasseyOutcome> failing_product;
};

namespace detail {

inline void positive_tuples(const GradedVectorSpace& H, int n,
                            const std::function<void(const BasisKey&, int)>& emit) {
    std::vector<int> degrees;
    for (int d : H.support())
        if (d > 0)
            degrees.push_back(d);
    BasisKey key(n);
    std::function<void(int, int)> rec = [&](int pos, int deg_sum) {
        if (pos == n) {
            emit(key, deg_sum);
            return;
        }
        for (int d : degrees)
            for (std::size_t i = 0; i < H.dim(d); ++i) {
                key[pos] = H.flat_index(d, i);
                rec(pos + 1, deg_sum + d);
            }
    };
    rec(0, 0);
}

} // namespace detail

/// The trivial-product formality algorithm, run as a self-checking induction.
///
/// Hypothesis: the induced product vanishes on the reduced part. Then for each
/// n = 3…cap the Massey n-products of positive basis classes are uniquely
/// defined; the pipeline computes each one through an explicit defining system,
/// confirms it vanishes, concludes m_n = 0, and cross-checks that against the
/// directly transferred operation. Any nonvanishing product stops the induction
/// with a non-formality witness.
inline PipelineResult theorem1_pipeline(const DgAlgebra& A, int cap = 8) {
    PipelineResult out;
    out.cohomology = induced_cohomology_algebra(A);
    if (!is_reduced_product_trivial(out.cohomology)) {
        for (const auto& [key, val] : out.cohomology.product.entries()) {
            (void)val;
            const auto& S = *out.cohomology.space();
            if (S.degree_of_flat(key[0]) > 0 && S.degree_of_flat(key[1]) > 0)
                throw not_applicable(
                    "theorem1_pipeline: induced product is nonzero on " +
                    detail::key_to_string(key, S));
        }
    }

    const GradedVectorSpace& H = *out.cohomology.space();
    const ArityBound ab = arity_bound(*positive_part(H));
    int eff_cap = cap;
    if (ab.bound)
        eff_cap = std::min(cap, *ab.bound);
    out.certificate.cap = eff_cap;
    out.certificate.bound_is_absolute = ab.bound && *ab.bound <= eff_cap;

    out.transfer = transfer(A, out.cohomology.contraction, std::max(2, eff_cap));

    for (int n = 3; n <= eff_cap; ++n) {
        PipelineStep step;
        step.n = n;
        for (int k = 2; k <= n - 1; ++k)
            if (!vanishes_on_positive(out.transfer->m(k)))
                throw internal_fault("theorem1_pipeline: induction reached arity " +
                                     std::to_string(n) + " with m_" + std::to_string(k) +
                                     " nonzero");

        bool halt = false;
        detail::positive_tuples(H, n, [&](const BasisKey& key, int deg_sum) {
            if (halt)
                return;
            const int target = deg_sum + 2 - n;
            if (H.dim(target) == 0) {
                ++step.trivial_by_degree;
                return;
            }
            std::vector<Vec> classes;
            for (int f : key) {
                auto [d, i] = H.unflatten(f);
                classes.push_back(Vec::basis(H, d, i));
            }
            const MasseyOutcome prod = higher_massey_unique(A, *out.transfer, classes);
            ++step.tuples_checked;
            if (!massey_vanishes(prod)) {
                step.all_vanished = false;
                out.failing_product = prod;
                out.certificate.verdict = FormalityCertificate::Verdict::non_formal;
                out.certificate.witness_arity = n;
                out.certificate.witness_key = key;
                out.certificate.witness_value = out.transfer->m(n).eval_basis(key);
                halt = true;
            }
        });
        out.trace.push_back(step);
        if (halt)
            return out;

        // Massey route said every product vanishes; the transfer route must agree
        if (!vanishes_on_positive(out.transfer->m(n)))
            throw internal_fault("theorem1_pipeline: Massey products vanish at arity " +
                                 std::to_string(n) +
                                 " but the transferred operation does not");
    }
    out.certificate.verdict = FormalityCertificate::Verdict::formal_up_to_cap;
    return out;
}

/// A span of chain maps B → (left target), B → (right target).
struct DgSpan {
    ChainComplex middle;
    ChainComplex left_target;
    ChainComplex right_target;
    GradedMap left;
    GradedMap right;

    std::optional<std::string> check() const {
        if (!same_space(left.source(), middle.space) ||
            !same_space(right.source(), middle.space) ||
            !same_space(left.target(), left_target.space) ||
            !same_space(right.target(), right_target.space))
            return "legs do not connect the stated complexes";
        if (left.shift() != 0 || right.shift() != 0)
            return "legs must preserve degree";
        if (!(GradedMap::compose(left_target.d, left) ==
              GradedMap::compose(left, middle.d)))
            return "left leg is not a chain map";
        if (!(GradedMap::compose(right_target.d, right) ==
              GradedMap::compose(right, middle.d)))
            return "right leg is not a chain map";
        if (!is_quasi_iso_chain_map(left, middle, left_target))
            return "left leg is not a quasi-isomorphism";
        if (!is_quasi_iso_chain_map(right, middle, right_target))
            return "right leg is not a quasi-isomorphism";
        return std::nullopt;
    }
};

namespace detail {

inline SpacePtr strip_negative(const GradedVectorSpace& S) {
    std::map<int, std::vector<std::string>> basis;
    for (int d : S.support())
        if (d >= 0) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < S.dim(d); ++i)
                names.push_back(S.name(d, i));
            basis[d] = std::move(names);
        }
    return make_space(std::move(basis));
}

} // namespace detail

/// Splice a span over the augmented complex into a span over the plain cochain
/// complex: drop the degree −1 copy of the ground field from every row and
/// insert it back as the degree-0 cohomology of the target.
///
/// Given q : B → Ã and p : B → H̃ (both quasi-isomorphisms, X connected), the
/// output middle is B truncated to degrees ≥ 0 with the same differential; the
/// right leg is q in degrees ≥ 0; the left leg keeps p in degrees ≥ 1 and in
/// degree 0 maps b ↦ q⁻¹(σ(b)), where σ is the canonical retraction of
/// d⁻¹ : B⁻¹ ↪ B⁰ (the cocycles of B⁰ are exactly the image of d⁻¹, so this
/// hits the inserted class correctly). Both legs are re-verified to be chain
/// maps and per-degree cohomology isomorphisms before the span is returned.
inline DgSpan splice_span(const DgSpan& span) {
    if (auto bad = span.check())
        throw malformed_input("splice_span: invalid input span: " + *bad);
    const GradedVectorSpace& Btil = *span.middle.space;
    const GradedVectorSpace& Atil = *span.right_target.space;
    if (Atil.dim(-1) != 1)
        throw malformed_input("splice_span: right target is not an augmented complex");
    if (span.left_target.space->dim(0) != 0 || span.left_target.space->dim(-1) != 0)
        throw malformed_input("splice_span: left target must be a reduced cohomology "
                              "(zero in degrees <= 0)");
    if (!span.left_target.d.is_zero())
        throw malformed_input("splice_span: left target must carry the zero differential");

    // middle: B in degrees >= 0
    SpacePtr Bp = detail::strip_negative(Btil);
    GradedMap dB(Bp, Bp, 1);
    for (int d : Bp->support())
        if (Bp->has_degree(d + 1))
            dB.set_block(d, span.middle.d.block(d));
    const ChainComplex middle{Bp, dB};

    // right target: the cochain complex (augmented complex minus its K)
    SpacePtr Cs = detail::strip_negative(Atil);
    GradedMap dC(Cs, Cs, 1);
    for (int d : Cs->support())
        if (Cs->has_degree(d + 1))
            dC.set_block(d, span.right_target.d.block(d));
    const ChainComplex right_target{Cs, dC};

    GradedMap right(Bp, Cs, 0);
    for (int d : Bp->support())
        if (Cs->has_degree(d))
            right.set_block(d, span.right.block(d));

    // left target: full cohomology, K inserted in degree 0
    std::map<int, std::vector<std::string>> h_basis;
    h_basis[0] = {"[1]"};
    const GradedVectorSpace& Ht = *span.left_target.space;
    for (int d : Ht.support()) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < Ht.dim(d); ++i)
            names.push_back(Ht.name(d, i));
        h_basis[d] = std::move(names);
    }
    SpacePtr Hs = make_space(std::move(h_basis));
    const ChainComplex left_target{Hs, GradedMap::zero(Hs, Hs, 1)};

    GradedMap left(Bp, Hs, 0);
    for (int d : Bp->support())
        if (d >= 1 && Hs->has_degree(d))
            left.set_block(d, span.left.block(d));

    // degree 0: retract along d⁻¹ and push through q⁻¹
    {
        const Matrix dm1 = span.middle.d.block(-1); // B⁻¹ -> B⁰
        const std::size_t m = Btil.dim(-1);
        const std::size_t n0 = Btil.dim(0);
        if (dm1.rank() != m)
            throw malformed_input("splice_span: augmentation of the middle term is "
                                  "not injective");
        // complete im(d⁻¹) to a basis of B⁰ with leftmost standard vectors
        std::vector<std::vector<Rational>> cols;
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<Rational> col(n0);
            for (std::size_t i = 0; i < n0; ++i)
                col[i] = dm1(i, j);
            cols.push_back(std::move(col));
        }
        SubspaceBuilder span_builder(n0);
        for (const auto& col : cols)
            span_builder.add(col);
        for (std::size_t k = 0; k < n0; ++k) {
            std::vector<Rational> e(n0);
            e[k] = 1;
            if (span_builder.add(e))
                cols.push_back(std::move(e));
        }
        const Matrix basis = Matrix::from_columns(cols, n0);
        const auto inv = basis.inverse();
        if (!inv)
            throw internal_fault("splice_span: completion failed to span");
        Matrix sigma(m, n0); // B⁰ -> B⁻¹ with σ∘d⁻¹ = id
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n0; ++j)
                sigma(i, j) = (*inv)(i, j);
        const Matrix qm1 = span.right.block(-1); // B⁻¹ -> K
        left.set_block(0, qm1 * sigma);
    }

    DgSpan out{middle, left_target, right_target, left, right};
    if (auto bad = out.check())
        throw not_applicable("splice_span: spliced span fails verification (" + *bad +
                             "); the input span's augmentation data is too degenerate");
    return out;
}

/// The standard span witnessing reduced formality data for a connected unital
/// cochain algebra: B is the augmented complex itself, the right leg is the
/// identity and the left leg is the projection of a contraction.
inline DgSpan make_augmented_span(const DgAlgebra& A) {
    const ChainComplex aug = augmented_complex(A);
    const ContractionData c = cohomology(aug);
    const ChainComplex h{c.homology, GradedMap::zero(c.homology, c.homology, 1)};
    return DgSpan{aug, h, aug, c.project, GradedMap::identity(aug.space)};
}

} // namespace ainfty
