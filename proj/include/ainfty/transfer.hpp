#pragma once

#include "dg_algebra.hpp"

namespace ainfty {

/// The transferred A∞-structure on H(A) together with the A∞-quasi-isomorphism
/// H(A) → A. Both are verified exactly up to arity_cap before being returned.
struct TransferResult {
    AInfinityStructure structure; // on H, m_1 = 0, m_2 = induced product
    AInfinityMorphism morphism;   // H -> A, f_1 = i
    int arity_cap = 2;
    ContractionData contraction;

    const MultilinearMap& m(int n) const { return structure.op(n); }
    const MultilinearMap& f(int n) const { return morphism.component(n); }
};

/// Planar binary rooted tree with a fixed number of leaves; children of internal
/// nodes are ordered. Enumeration backs deterministic sign accumulation wherever
/// a summation over bracketings is spelled out.
struct PlanarTree {
    int leaves = 1;
    std::shared_ptr<const PlanarTree> left;
    std::shared_ptr<const PlanarTree> right;

    bool is_leaf() const { return !left; }

    std::string to_string() const {
        if (is_leaf())
            return "*";
        return "(" + left->to_string() + right->to_string() + ")";
    }
};

/// All planar binary rooted trees with n leaves, Catalan(n−1) of them, ordered by
/// left-to-right leaf-split recursion.
inline std::vector<std::shared_ptr<const PlanarTree>> tree_summands(int n) {
    if (n < 1)
        throw malformed_input("tree_summands: need n >= 1");
    static std::map<int, std::vector<std::shared_ptr<const PlanarTree>>> cache;
    auto hit = cache.find(n);
    if (hit != cache.end())
        return hit->second;
    std::vector<std::shared_ptr<const PlanarTree>> out;
    if (n == 1) {
        auto leaf = std::make_shared<PlanarTree>();
        out.push_back(leaf);
    } else {
        for (int k = 1; k <= n - 1; ++k)
            for (const auto& l : tree_summands(k))
                for (const auto& r : tree_summands(n - k)) {
                    auto node = std::make_shared<PlanarTree>();
                    node->leaves = n;
                    node->left = l;
                    node->right = r;
                    out.push_back(node);
                }
    }
    cache[n] = out;
    return out;
}

/// Homotopy transfer along a contraction (Kadeishvili's theorem, constructive).
///
/// The recursion is driven by the morphism identity itself: with everything of
/// arity < n known, the only unknowns at arity n are m_n and f_n, and the
/// identity reads  i∘m_n − d∘f_n = Φ_n  where
///
///   Φ_n = Σ_{a+b=n} (−1)^{a−1} m₂(f_a ⊗ f_b)
///       − Σ_{r+s+t=n, 2≤s≤n−1} (−1)^{r+st} f_{r+1+t}(Id^r ⊗ m_s ⊗ Id^t).
///
/// Φ_n lands in the cocycles, so m_n := p∘Φ_n and f_n := −h∘Φ_n solve the
/// identity on the nose. Signs come from the same composition primitives the
/// defect verifiers use, and the verifiers re-check every arity before the
/// result is released; any failure is an internal fault, never returned data.
inline TransferResult transfer(const DgAlgebra& A, const ContractionData& c, int arity_cap) {
    if (arity_cap < 2)
        throw malformed_input("transfer: arity cap must be >= 2");
    if (!same_space(c.complex.space, A.space))
        throw malformed_input("transfer: contraction does not belong to this algebra");
    if (auto bad = c.check())
        throw malformed_input("transfer: contraction identities fail: " + *bad);

    const SpacePtr H = c.homology;
    std::map<int, MultilinearMap> m; // on H
    std::map<int, MultilinearMap> f; // H -> A
    m.emplace(1, MultilinearMap::zero(1, H, H, 1));
    f.emplace(1, MultilinearMap::from_graded_map(c.include));

    const MultilinearMap mu = A.product;
    const GradedMap minus_h = c.homotopy.scaled(-1);

    for (int n = 2; n <= arity_cap; ++n) {
        MultilinearMap phi = MultilinearMap::zero(n, H, A.space, 2 - n);
        for (int a = 1; a <= n - 1; ++a) {
            const int b = n - a;
            MultilinearMap term = tensor_compose(mu, {&f.at(a), &f.at(b)});
            if (parity_sign(a - 1) == 1)
                phi += term;
            else
                phi -= term;
        }
        for (int s = 2; s <= n - 1; ++s)
            for (int r = 0; r + s <= n; ++r) {
                const int t = n - r - s;
                if (m.at(s).is_zero())
                    continue;
                MultilinearMap term = compose_at(f.at(r + 1 + t), m.at(s), r);
                // subtracted side of the identity
                if (parity_sign(static_cast<long long>(r) +
                                static_cast<long long>(s) * t) == 1)
                    phi -= term;
                else
                    phi += term;
            }

        for (const auto& [key, val] : phi.entries())
            if (!A.d.apply(val).is_zero())
                throw internal_fault("transfer: Φ_" + std::to_string(n) +
                                     " is not a cocycle at " +
                                     detail::key_to_string(key, *H));

        m.emplace(n, post_compose(c.project, phi));
        f.emplace(n, post_compose(minus_h, phi));
    }

    TransferResult out;
    out.arity_cap = arity_cap;
    out.contraction = c;
    out.structure.space = H;
    out.structure.ops = std::move(m);
    out.structure.arity_cap = arity_cap;
    out.morphism.source = out.structure;
    out.morphism.target = A.as_a_infinity();
    out.morphism.components = std::move(f);
    out.morphism.arity_cap = arity_cap;

    for (int n = 1; n <= arity_cap; ++n) {
        if (!stasheff_defect(out.structure, n).is_zero())
            throw internal_fault("transfer: Stasheff identity fails at arity " +
                                 std::to_string(n));
        if (!morphism_defect(out.morphism, n).is_zero())
            throw internal_fault("transfer: morphism identity fails at arity " +
                                 std::to_string(n));
    }
    return out;
}

} // namespace ainfty
