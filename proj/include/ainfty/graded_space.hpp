#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace ainfty {

/// Finite family of ordered bases indexed by integer degree, over exact rationals.
/// Degrees outside the support are the zero space. Immutable after construction;
/// share freely across threads.
class GradedVectorSpace {
  public:
    GradedVectorSpace() = default;

    explicit GradedVectorSpace(std::map<int, std::vector<std::string>> basis)
        : basis_(std::move(basis)) {
        // drop empty degrees so support is canonical
        for (auto it = basis_.begin(); it != basis_.end();)
            it = it->second.empty() ? basis_.erase(it) : std::next(it);
        std::size_t offset = 0;
        for (const auto& [deg, names] : basis_) {
            for (std::size_t i = 0; i < names.size(); ++i) {
                for (std::size_t j = i + 1; j < names.size(); ++j)
                    if (names[i] == names[j])
                        throw malformed_input("duplicate basis name '" + names[i] +
                                              "' in degree " + std::to_string(deg));
            }
            offsets_[deg] = offset;
            offset += names.size();
        }
        total_dim_ = offset;
    }

    std::vector<int> support() const {
        std::vector<int> degs;
        degs.reserve(basis_.size());
        for (const auto& [deg, _] : basis_)
            degs.push_back(deg);
        return degs;
    }

    bool has_degree(int d) const { return basis_.count(d) > 0; }

    std::size_t dim(int d) const {
        auto it = basis_.find(d);
        return it == basis_.end() ? 0 : it->second.size();
    }

    std::size_t total_dim() const { return total_dim_; }

    const std::string& name(int d, std::size_t i) const {
        auto it = basis_.find(d);
        if (it == basis_.end() || i >= it->second.size())
            throw malformed_input("basis index out of range in degree " + std::to_string(d));
        return it->second[i];
    }

    /// Locate a name within one degree.
    std::optional<std::size_t> find_in_degree(int d, const std::string& name) const {
        auto it = basis_.find(d);
        if (it == basis_.end())
            return std::nullopt;
        for (std::size_t i = 0; i < it->second.size(); ++i)
            if (it->second[i] == name)
                return i;
        return std::nullopt;
    }

    /// Locate a name anywhere; nullopt if absent or ambiguous across degrees.
    std::optional<std::pair<int, std::size_t>> find(const std::string& name) const {
        std::optional<std::pair<int, std::size_t>> hit;
        for (const auto& [deg, names] : basis_)
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == name) {
                    if (hit)
                        return std::nullopt;
                    hit = {deg, i};
                }
        return hit;
    }

    /// Flat index over all degrees in ascending order, for multilinear keys.
    int flat_index(int d, std::size_t i) const {
        auto it = offsets_.find(d);
        if (it == offsets_.end() || i >= dim(d))
            throw malformed_input("flat_index out of range");
        return static_cast<int>(it->second + i);
    }

    std::pair<int, std::size_t> unflatten(int flat) const {
        for (const auto& [deg, off] : offsets_) {
            const std::size_t n = dim(deg);
            if (static_cast<std::size_t>(flat) >= off && static_cast<std::size_t>(flat) < off + n)
                return {deg, static_cast<std::size_t>(flat) - off};
        }
        throw malformed_input("unflatten out of range");
    }

    int degree_of_flat(int flat) const { return unflatten(flat).first; }

    bool operator==(const GradedVectorSpace& o) const { return basis_ == o.basis_; }

  private:
    std::map<int, std::vector<std::string>> basis_;
    std::map<int, std::size_t> offsets_;
    std::size_t total_dim_ = 0;
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

inline SpacePtr make_space(std::map<int, std::vector<std::string>> basis) {
    return std::make_shared<const GradedVectorSpace>(std::move(basis));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Homogeneous element: a degree plus dense coordinates in that degree's basis.
struct Vec {
    int degree = 0;
    std::vector<Rational> c;

    Vec() = default;
    Vec(int d, std::vector<Rational> coords) : degree(d), c(std::move(coords)) {}

    static Vec zero(const GradedVectorSpace& space, int d) {
        return Vec(d, std::vector<Rational>(space.dim(d)));
    }

    static Vec basis(const GradedVectorSpace& space, int d, std::size_t i) {
        Vec v = zero(space, d);
        v.c.at(i) = 1;
        return v;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0)
                return false;
        return true;
    }

    Vec& operator+=(const Vec& o) {
        if (degree != o.degree || c.size() != o.c.size())
            throw malformed_input("vector sum degree/dimension mismatch");
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += o.c[i];
        return *this;
    }

    Vec& operator-=(const Vec& o) {
        if (degree != o.degree || c.size() != o.c.size())
            throw malformed_input("vector difference degree/dimension mismatch");
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] -= o.c[i];
        return *this;
    }

    Vec operator+(const Vec& o) const { Vec r = *this; r += o; return r; }
    Vec operator-(const Vec& o) const { Vec r = *this; r -= o; return r; }

    Vec operator*(const Rational& s) const {
        Vec r = *this;
        for (auto& x : r.c)
            x *= s;
        return r;
    }

    Vec operator-() const { return *this * Rational(-1); }

    bool operator==(const Vec& o) const { return degree == o.degree && c == o.c; }
};

inline std::string format_vec(const Vec& v, const GradedVectorSpace& space) {
    if (v.is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < v.c.size(); ++i) {
        if (v.c[i] == 0)
            continue;
        const Rational a = v.c[i];
        if (out.empty()) {
            if (a == -1)
                out += "-";
            else if (a != 1)
                out += to_string(a) + "*";
        } else {
            out += (a > 0) ? " + " : " - ";
            const Rational mag = (a > 0) ? a : Rational(-a);
            if (mag != 1)
                out += to_string(mag) + "*";
        }
        out += space.name(v.degree, i);
    }
    return out;
}

/// Possibly inhomogeneous element, stored degreewise. Mostly a convenience for
/// interchange and for the Koszul evaluator's homogeneity check.
struct GradedElement {
    std::map<int, Vec> parts;

    static GradedElement from(const Vec& v) {
        GradedElement e;
        if (!v.is_zero())
            e.parts[v.degree] = v;
        return e;
    }

    bool is_homogeneous() const { return parts.size() <= 1; }

    bool is_zero() const {
        for (const auto& [d, v] : parts)
            if (!v.is_zero())
                return false;
        return true;
    }

    /// The single homogeneous part; throws on genuinely mixed elements.
    Vec homogeneous() const {
        if (parts.empty())
            throw malformed_input("homogeneous(): zero element carries no degree");
        if (parts.size() > 1)
            throw malformed_input("inhomogeneous element where a homogeneous one is required");
        return parts.begin()->second;
    }
};

} // namespace ainfty
