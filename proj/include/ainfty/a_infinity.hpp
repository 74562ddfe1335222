#pragma once

#include "exact_linear.hpp"
#include "multilinear.hpp"

namespace ainfty {

/// A family {m_n} of operations of degree 2−n on one graded space, carried up to
/// a finite arity cap. Ops absent above the cap are unverified, not zero — except
/// when zero_above is set, which asserts m_n = 0 for every n above that arity
/// (a dg-algebra sets zero_above = 2).
struct AInfinityStructure {
    SpacePtr space;
    std::map<int, MultilinearMap> ops;
    int arity_cap = 2;
    std::optional<int> zero_above;

    const MultilinearMap& op(int n) const {
        auto it = ops.find(n);
        if (it != ops.end())
            return it->second;
        if (zero_above && n > *zero_above) {
            auto [slot, inserted] =
                zero_cache_.try_emplace(n, MultilinearMap::zero(n, space, space, 2 - n));
            return slot->second;
        }
        throw incomplete_structure("operation m_" + std::to_string(n) +
                                   " is not available (arity cap " +
                                   std::to_string(arity_cap) + ")");
    }

    bool has_op(int n) const { return ops.count(n) > 0 || (zero_above && n > *zero_above); }

  private:
    mutable std::map<int, MultilinearMap> zero_cache_;
};

/// Components {f_n} of degree 1−n from one structure to another.
struct AInfinityMorphism {
    AInfinityStructure source;
    AInfinityStructure target;
    std::map<int, MultilinearMap> components;
    int arity_cap = 1;

    const MultilinearMap& component(int n) const {
        auto it = components.find(n);
        if (it == components.end())
            throw incomplete_structure("morphism component f_" + std::to_string(n) +
                                       " is not available");
        return it->second;
    }

    bool has_component(int n) const { return components.count(n) > 0; }
};

/// Left side of the Stasheff identity at arity n, as a single multilinear map:
///   Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t} ∘ (Id^r ⊗ m_s ⊗ Id^t).
/// The identity holds at arity n iff the result is the zero map.
inline MultilinearMap stasheff_defect(const AInfinityStructure& m, int n) {
    if (n < 1)
        throw malformed_input("stasheff_defect: arity must be >= 1");
    // each summand has shift (2−(r+1+t)) + (2−s) = 3−n
    MultilinearMap acc = MultilinearMap::zero(n, m.space, m.space, 3 - n);
    for (int s = 1; s <= n; ++s)
        for (int r = 0; r + s <= n; ++r) {
            const int t = n - r - s;
            const MultilinearMap& inner = m.op(s);
            const MultilinearMap& outer = m.op(r + 1 + t);
            if (inner.is_zero() || outer.is_zero())
                continue;
            MultilinearMap term = compose_at(outer, inner, r);
            const int sgn = parity_sign(static_cast<long long>(r) +
                                        static_cast<long long>(s) * t);
            if (sgn == 1)
                acc += term;
            else
                acc -= term;
        }
    return acc;
}

namespace detail {

inline void compositions_of(int n, int max_parts,
                            const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if (!parts.empty() && static_cast<int>(parts.size()) <= max_parts)
                emit(parts);
            return;
        }
        if (static_cast<int>(parts.size()) >= max_parts)
            return;
        for (int i = 1; i <= rest; ++i) {
            parts.push_back(i);
            rec(rest - i);
            parts.pop_back();
        }
    };
    rec(n);
}

/// u_k = Σ_{t=1}^{k−1} t·(i_{k−t} − 1) for a composition (i_1, …, i_k).
inline long long morphism_u_sign_exponent(const std::vector<int>& parts) {
    const int k = static_cast<int>(parts.size());
    long long u = 0;
    for (int t = 1; t <= k - 1; ++t)
        u += static_cast<long long>(t) * (parts[k - t - 1] - 1);
    return u;
}

} // namespace detail

/// Defect of the A∞-morphism identity at arity n:
///   Σ (−1)^{r+st} f_{r+1+t}(Id^r ⊗ m^src_s ⊗ Id^t)
///   − Σ_k Σ_{n=i_1+…+i_k} (−1)^{u_k} m^tgt_k (f_{i_1} ⊗ … ⊗ f_{i_k}),
/// with u_k = Σ t·(i_{k−t} − 1). Zero map iff the identity holds.
inline MultilinearMap morphism_defect(const AInfinityMorphism& f, int n) {
    if (n < 1)
        throw malformed_input("morphism_defect: arity must be >= 1");
    // every summand on either side has total shift 2−n
    MultilinearMap acc = MultilinearMap::zero(n, f.source.space, f.target.space, 2 - n);

    for (int s = 1; s <= n; ++s)
        for (int r = 0; r + s <= n; ++r) {
            const int t = n - r - s;
            const MultilinearMap& inner = f.source.op(s);
            const MultilinearMap& outer = f.component(r + 1 + t);
            if (inner.is_zero() || outer.is_zero())
                continue;
            MultilinearMap term = compose_at(outer, inner, r);
            const int sgn = parity_sign(static_cast<long long>(r) +
                                        static_cast<long long>(s) * t);
            if (sgn == 1)
                acc += term;
            else
                acc -= term;
        }

    detail::compositions_of(n, n, [&](const std::vector<int>& parts) {
        const int k = static_cast<int>(parts.size());
        const MultilinearMap& outer = f.target.op(k);
        if (outer.is_zero())
            return;
        std::vector<const MultilinearMap*> factors;
        factors.reserve(parts.size());
        for (int part : parts) {
            const MultilinearMap& fi = f.component(part);
            if (fi.is_zero())
                return;
            factors.push_back(&fi);
        }
        MultilinearMap term = tensor_compose(outer, factors);
        const int sgn = parity_sign(detail::morphism_u_sign_exponent(parts));
        if (sgn == 1)
            acc -= term;
        else
            acc += term;
    });
    return acc;
}

/// f is an A∞-quasi-isomorphism iff f_1 is a quasi-isomorphism of the underlying
/// complexes (m_1 as differentials). Requires the arity-1 identity to hold.
inline bool is_quasi_isomorphism(const AInfinityMorphism& f) {
    if (!morphism_defect(f, 1).is_zero())
        throw malformed_input("is_quasi_isomorphism: f_1 is not a chain map");
    const GradedMap f1 = f.component(1).to_graded_map();
    const ChainComplex src{f.source.space, f.source.op(1).to_graded_map()};
    const ChainComplex tgt{f.target.space, f.target.op(1).to_graded_map()};
    return is_quasi_iso_chain_map(f1, src, tgt);
}

} // namespace ainfty
