#pragma once

#include <algorithm>
#include <functional>

#include "graded_map.hpp"

namespace ainfty {

/// Key of a multilinear entry: flat basis indices into the source space, one per slot.
using BasisKey = std::vector<int>;

/// Sparse n-multilinear map between graded spaces. Entries are stored on basis
/// tuples; evaluation on arbitrary homogeneous tuples extends multilinearly.
/// An entry's value degree always equals Σ input degrees + shift.
class MultilinearMap {
  public:
    MultilinearMap() = default;

    MultilinearMap(int arity, SpacePtr source, SpacePtr target, int shift)
        : arity_(arity), source_(std::move(source)), target_(std::move(target)), shift_(shift) {
        if (arity_ < 1)
            throw malformed_input("multilinear map arity must be >= 1");
    }

    static MultilinearMap zero(int arity, SpacePtr source, SpacePtr target, int shift) {
        return MultilinearMap(arity, std::move(source), std::move(target), shift);
    }

    static MultilinearMap from_graded_map(const GradedMap& g) {
        MultilinearMap m(1, g.source(), g.target(), g.shift());
        for (int d : g.source()->support())
            for (std::size_t i = 0; i < g.source()->dim(d); ++i) {
                Vec v = g.apply(Vec::basis(*g.source(), d, i));
                if (!v.is_zero())
                    m.entries_[{g.source()->flat_index(d, i)}] = std::move(v);
            }
        return m;
    }

    GradedMap to_graded_map() const {
        if (arity_ != 1)
            throw malformed_input("to_graded_map requires arity 1");
        GradedMap g(source_, target_, shift_);
        for (int d : source_->support()) {
            Matrix block(target_->dim(d + shift_), source_->dim(d));
            for (std::size_t i = 0; i < source_->dim(d); ++i) {
                auto it = entries_.find({source_->flat_index(d, i)});
                if (it == entries_.end())
                    continue;
                for (std::size_t r = 0; r < it->second.c.size(); ++r)
                    block(r, i) = it->second.c[r];
            }
            g.set_block(d, std::move(block));
        }
        return g;
    }

    int arity() const { return arity_; }
    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int shift() const { return shift_; }

    int key_degree_sum(const BasisKey& key) const {
        int sum = 0;
        for (int f : key)
            sum += source_->degree_of_flat(f);
        return sum;
    }

    void add_entry(const BasisKey& key, const Vec& value) {
        if (static_cast<int>(key.size()) != arity_)
            throw malformed_input("entry key has wrong arity");
        if (value.degree != key_degree_sum(key) + shift_)
            throw malformed_input("entry value degree violates |out| = Σ|in| + shift");
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (!value.is_zero())
                entries_[key] = value;
        } else {
            it->second += value;
            if (it->second.is_zero())
                entries_.erase(it);
        }
    }

    /// Value on a basis tuple (zero vector of the right degree when absent).
    Vec eval_basis(const BasisKey& key) const {
        auto it = entries_.find(key);
        if (it != entries_.end())
            return it->second;
        return Vec::zero(*target_, key_degree_sum(key) + shift_);
    }

    /// Multilinear evaluation on homogeneous arguments.
    Vec eval(const std::vector<Vec>& args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw malformed_input("eval: wrong number of arguments");
        int out_deg = shift_;
        for (const auto& a : args)
            out_deg += a.degree;
        Vec acc = Vec::zero(*target_, out_deg);
        if (entries_.empty() || target_->dim(out_deg) == 0)
            return acc;
        BasisKey key(arity_);
        expand(args, 0, Rational(1), key, acc);
        return acc;
    }

    bool is_zero() const { return entries_.empty(); }
    std::size_t entry_count() const { return entries_.size(); }
    const std::map<BasisKey, Vec>& entries() const { return entries_; }

    MultilinearMap& operator+=(const MultilinearMap& o) {
        require_parallel(o);
        for (const auto& [k, v] : o.entries_)
            add_entry(k, v);
        return *this;
    }

    MultilinearMap& operator-=(const MultilinearMap& o) {
        require_parallel(o);
        for (const auto& [k, v] : o.entries_)
            add_entry(k, -v);
        return *this;
    }

    MultilinearMap scaled(const Rational& s) const {
        MultilinearMap out(arity_, source_, target_, shift_);
        if (s == 0)
            return out;
        for (const auto& [k, v] : entries_)
            out.entries_[k] = v * s;
        return out;
    }

    bool operator==(const MultilinearMap& o) const {
        return arity_ == o.arity_ && shift_ == o.shift_ && same_space(source_, o.source_) &&
               same_space(target_, o.target_) && entries_ == o.entries_;
    }

  private:
    void require_parallel(const MultilinearMap& o) const {
        if (arity_ != o.arity_ || shift_ != o.shift_ || !same_space(source_, o.source_) ||
            !same_space(target_, o.target_))
            throw malformed_input("multilinear sum: maps are not parallel");
    }

    void expand(const std::vector<Vec>& args, std::size_t pos, const Rational& coeff,
                BasisKey& key, Vec& acc) const {
        if (pos == args.size()) {
            auto it = entries_.find(key);
            if (it != entries_.end())
                acc += it->second * coeff;
            return;
        }
        const Vec& a = args[pos];
        for (std::size_t j = 0; j < a.c.size(); ++j) {
            if (a.c[j] == 0)
                continue;
            key[pos] = source_->flat_index(a.degree, j);
            expand(args, pos + 1, coeff * a.c[j], key, acc);
        }
    }

    int arity_ = 1;
    SpacePtr source_;
    SpacePtr target_;
    int shift_ = 0;
    std::map<BasisKey, Vec> entries_;
};

/// Koszul sign for moving a map of degree map_deg past elements of total degree deg_sum.
inline int koszul_sign(int map_deg, int deg_sum) {
    return parity_sign(static_cast<long long>(map_deg) * deg_sum);
}

/// outer ∘ (Id^r ⊗ inner ⊗ Id^t), evaluated sparsely with the Koszul rule
/// (−1)^{|inner|·(|x_1|+…+|x_r|)}. Requires all slots to live in one space X with
/// inner : X^{⊗s} → X and outer : X^{⊗(r+1+t)} → T.
inline MultilinearMap compose_at(const MultilinearMap& outer, const MultilinearMap& inner,
                                 int r) {
    if (r < 0 || r >= outer.arity())
        throw malformed_input("compose_at: slot index out of range");
    if (!same_space(inner.source(), inner.target()) ||
        !same_space(outer.source(), inner.source()))
        throw malformed_input("compose_at: spaces do not match");
    const int t = outer.arity() - r - 1;
    MultilinearMap out(r + inner.arity() + t, outer.source(), outer.target(),
                       inner.shift() + outer.shift());
    if (inner.is_zero() || outer.is_zero())
        return out;

    // join on the middle slot of outer
    std::map<int, std::vector<const std::pair<const BasisKey, Vec>*>> by_middle;
    for (const auto& e : outer.entries())
        by_middle[e.first[r]].push_back(&e);

    const GradedVectorSpace& X = *outer.source();
    for (const auto& [ikey, ival] : inner.entries()) {
        for (std::size_t j = 0; j < ival.c.size(); ++j) {
            if (ival.c[j] == 0)
                continue;
            auto hit = by_middle.find(X.flat_index(ival.degree, j));
            if (hit == by_middle.end())
                continue;
            for (const auto* oe : hit->second) {
                const BasisKey& okey = oe->first;
                int prefix_deg = 0;
                for (int q = 0; q < r; ++q)
                    prefix_deg += X.degree_of_flat(okey[q]);
                const int sgn = koszul_sign(inner.shift(), prefix_deg);
                BasisKey key;
                key.reserve(out.arity());
                key.insert(key.end(), okey.begin(), okey.begin() + r);
                key.insert(key.end(), ikey.begin(), ikey.end());
                key.insert(key.end(), okey.begin() + r + 1, okey.end());
                out.add_entry(key, oe->second * (ival.c[j] * sgn));
            }
        }
    }
    return out;
}

/// outer ∘ (f_1 ⊗ … ⊗ f_k) with the Koszul rule: each factor picks up
/// (−1)^{|f_j|·(degree of everything before it)}. Factors share one source X;
/// their common target is outer's source.
inline MultilinearMap tensor_compose(const MultilinearMap& outer,
                                     const std::vector<const MultilinearMap*>& factors) {
    if (static_cast<int>(factors.size()) != outer.arity())
        throw malformed_input("tensor_compose: factor count must equal outer arity");
    int arity = 0;
    int shift = outer.shift();
    for (const auto* f : factors) {
        if (!same_space(f->source(), factors[0]->source()))
            throw malformed_input("tensor_compose: factors have different sources");
        if (!same_space(f->target(), outer.source()))
            throw malformed_input("tensor_compose: factor target must be outer source");
        arity += f->arity();
        shift += f->shift();
    }
    MultilinearMap out(arity, factors[0]->source(), outer.target(), shift);
    if (outer.is_zero())
        return out;
    for (const auto* f : factors)
        if (f->is_zero())
            return out;

    struct Frame {
        BasisKey key;
        std::vector<Vec> values;
        int sign = 1;
        int deg_before = 0;
    };
    Frame frame;
    std::function<void(std::size_t)> rec = [&](std::size_t fi) {
        if (fi == factors.size()) {
            const Vec v = outer.eval(frame.values);
            if (!v.is_zero())
                out.add_entry(frame.key, v * Rational(frame.sign));
            return;
        }
        const MultilinearMap& f = *factors[fi];
        for (const auto& [k, val] : f.entries()) {
            const int in_deg = f.key_degree_sum(k);
            Frame saved = frame;
            frame.sign *= koszul_sign(f.shift(), frame.deg_before);
            frame.key.insert(frame.key.end(), k.begin(), k.end());
            frame.values.push_back(val);
            frame.deg_before += in_deg;
            rec(fi + 1);
            frame = std::move(saved);
        }
    };
    rec(0);
    return out;
}

/// g ∘ m for a linear g following a multilinear m.
inline MultilinearMap post_compose(const GradedMap& g, const MultilinearMap& m) {
    if (!same_space(g.source(), m.target()))
        throw malformed_input("post_compose: spaces do not match");
    MultilinearMap out(m.arity(), m.source(), g.target(), m.shift() + g.shift());
    for (const auto& [k, v] : m.entries()) {
        Vec w = g.apply(v);
        if (!w.is_zero())
            out.add_entry(k, w);
    }
    return out;
}

/// Evaluate a tensor of maps on homogeneous elements with the accumulated Koszul
/// sign (−1)^{Σ_j |g_j|·(|x_1|+…+|x_{j−1}|)}. Inputs are grouped per map; each
/// element must be homogeneous, otherwise this errors.
struct KoszulResult {
    int sign = 1;
    std::vector<Vec> outputs;
};

inline KoszulResult koszul_apply(const std::vector<const MultilinearMap*>& maps,
                                 const std::vector<GradedElement>& elements) {
    std::size_t need = 0;
    for (const auto* m : maps)
        need += m->arity();
    if (elements.size() != need)
        throw malformed_input("koszul_apply: element count does not match total arity");
    KoszulResult res;
    std::size_t at = 0;
    int deg_before = 0;
    for (const auto* m : maps) {
        std::vector<Vec> args;
        int block_deg = 0;
        for (int j = 0; j < m->arity(); ++j) {
            const Vec v = elements[at++].homogeneous();
            block_deg += v.degree;
            args.push_back(v);
        }
        res.sign *= koszul_sign(m->shift(), deg_before);
        res.outputs.push_back(m->eval(args));
        deg_before += block_deg;
    }
    return res;
}

} // namespace ainfty
