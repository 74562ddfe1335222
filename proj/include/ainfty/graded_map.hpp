#pragma once

#include <map>

#include "graded_space.hpp"

namespace ainfty {

/// Degree-homogeneous linear map between graded spaces: one matrix block per
/// source degree, mapping basis(d) to target basis(d + shift). Missing blocks
/// are zero.
class GradedMap {
  public:
    GradedMap() = default;

    GradedMap(SpacePtr source, SpacePtr target, int shift)
        : source_(std::move(source)), target_(std::move(target)), shift_(shift) {}

    static GradedMap identity(const SpacePtr& space) {
        GradedMap m(space, space, 0);
        for (int d : space->support())
            m.set_block(d, Matrix::identity(space->dim(d)));
        return m;
    }

    static GradedMap zero(SpacePtr source, SpacePtr target, int shift) {
        return GradedMap(std::move(source), std::move(target), shift);
    }

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int shift() const { return shift_; }

    void set_block(int d, Matrix block) {
        if (block.rows() != target_->dim(d + shift_) || block.cols() != source_->dim(d))
            throw malformed_input("graded map block has wrong shape in degree " +
                                  std::to_string(d));
        if (block.is_zero())
            blocks_.erase(d);
        else
            blocks_[d] = std::move(block);
    }

    /// Block on degree d (materializes a zero block of the right shape).
    Matrix block(int d) const {
        auto it = blocks_.find(d);
        if (it != blocks_.end())
            return it->second;
        return Matrix(target_->dim(d + shift_), source_->dim(d));
    }

    bool has_block(int d) const { return blocks_.count(d) > 0; }

    Vec apply(const Vec& v) const {
        if (v.c.size() != source_->dim(v.degree))
            throw malformed_input("graded map apply: dimension mismatch in degree " +
                                  std::to_string(v.degree));
        auto it = blocks_.find(v.degree);
        if (it == blocks_.end())
            return Vec(v.degree + shift_,
                       std::vector<Rational>(target_->dim(v.degree + shift_)));
        return Vec(v.degree + shift_, it->second.apply(v.c));
    }

    bool is_zero() const { return blocks_.empty(); }

    GradedMap operator+(const GradedMap& o) const {
        require_parallel(o);
        GradedMap out(source_, target_, shift_);
        for (int d : merged_degrees(o))
            out.set_block(d, block(d) + o.block(d));
        return out;
    }

    GradedMap operator-(const GradedMap& o) const {
        require_parallel(o);
        GradedMap out(source_, target_, shift_);
        for (int d : merged_degrees(o))
            out.set_block(d, block(d) - o.block(d));
        return out;
    }

    GradedMap scaled(const Rational& s) const {
        GradedMap out(source_, target_, shift_);
        for (const auto& [d, b] : blocks_)
            out.set_block(d, b.scaled(s));
        return out;
    }

    bool operator==(const GradedMap& o) const {
        if (!same_space(source_, o.source_) || !same_space(target_, o.target_) ||
            shift_ != o.shift_)
            return false;
        for (int d : merged_degrees(o))
            if (!(block(d) == o.block(d)))
                return false;
        return true;
    }

    /// g.compose(f) = g ∘ f.
    static GradedMap compose(const GradedMap& g, const GradedMap& f) {
        if (!same_space(g.source(), f.target()))
            throw malformed_input("graded map composition: spaces do not match");
        GradedMap out(f.source(), g.target(), f.shift() + g.shift());
        for (const auto& [d, fb] : f.blocks_)
            out.set_block(d, g.block(d + f.shift()) * fb);
        return out;
    }

    const std::map<int, Matrix>& blocks() const { return blocks_; }

  private:
    void require_parallel(const GradedMap& o) const {
        if (!same_space(source_, o.source_) || !same_space(target_, o.target_) ||
            shift_ != o.shift_)
            throw malformed_input("graded map sum: maps are not parallel");
    }

    std::vector<int> merged_degrees(const GradedMap& o) const {
        std::vector<int> degs;
        for (const auto& [d, _] : blocks_)
            degs.push_back(d);
        for (const auto& [d, _] : o.blocks_)
            if (!blocks_.count(d))
                degs.push_back(d);
        std::sort(degs.begin(), degs.end());
        return degs;
    }

    SpacePtr source_;
    SpacePtr target_;
    int shift_ = 0;
    std::map<int, Matrix> blocks_;
};

} // namespace ainfty
