#pragma once

// Hand-built algebras and deterministic random generators shared by the test
// suites. Everything here is independent of the library construction paths it
// is used to check: structure constants are written out longhand.

#include <ainfty/dg_algebra.hpp>

#include <cstdint>

namespace fixtures {

using namespace ainfty;

// ---------------------------------------------------------------------------
// deterministic RNG (splitmix64) so expected values can be frozen
// ---------------------------------------------------------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// uniform integer in [lo, hi]
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Rational small_rational() {
        static const int nums[] = {-2, -1, -1, 1, 1, 2, 3};
        return Rational(nums[below(7)]);
    }

  private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// named dg-algebras
// ---------------------------------------------------------------------------

struct AlgebraBuilder {
    std::map<int, std::vector<std::string>> basis;
    std::vector<std::tuple<std::string, std::string, Rational>> diff; // d(src) += c·tgt
    std::vector<std::tuple<std::string, std::string, std::string, Rational>> prod;
    bool unital = false;
    std::string unit_name;

    DgAlgebra build() const {
        SpacePtr S = make_space(basis);
        GradedMap d(S, S, 1);
        std::map<int, Matrix> blocks;
        for (const auto& [src, tgt, c] : diff) {
            const auto sp = S->find(src);
            const auto tp = S->find(tgt);
            if (!sp || !tp)
                throw malformed_input("fixture differential names unknown basis element");
            auto [sd, si] = *sp;
            auto [td, ti] = *tp;
            auto [it, fresh] = blocks.try_emplace(sd, Matrix(S->dim(sd + 1), S->dim(sd)));
            it->second(ti, si) += c;
        }
        for (auto& [deg, m] : blocks)
            d.set_block(deg, m);

        MultilinearMap mu(2, S, S, 0);
        for (const auto& [l, r, o, c] : prod) {
            const auto lp = S->find(l);
            const auto rp = S->find(r);
            const auto op = S->find(o);
            if (!lp || !rp || !op)
                throw malformed_input("fixture product names unknown basis element");
            Vec v = Vec::zero(*S, op->first);
            v.c[op->second] = c;
            mu.add_entry({S->flat_index(lp->first, lp->second),
                          S->flat_index(rp->first, rp->second)},
                         v);
        }

        std::optional<Vec> unit;
        if (unital) {
            const auto up = S->find(unit_name);
            if (!up)
                throw malformed_input("fixture unit name unknown");
            unit = Vec::basis(*S, up->first, up->second);
        }
        return DgAlgebra{S, std::move(d), std::move(mu), unital, unit};
    }
};

/// Λ(x,y,z) with |x|=|y|=|z|=1, dz = xy, truncated above degree 2.
/// Basis 1; x,y,z; xy,xz,yz. The trivial-product non-formal witness.
inline DgAlgebra truncated_heisenberg() {
    AlgebraBuilder b;
    b.basis = {{0, {"1"}}, {1, {"x", "y", "z"}}, {2, {"xy", "xz", "yz"}}};
    b.unital = true;
    b.unit_name = "1";
    b.diff = {{"z", "xy", 1}};
    auto& p = b.prod;
    for (const std::string e : {"1", "x", "y", "z", "xy", "xz", "yz"}) {
        p.push_back({"1", e, e, 1});
        if (e != "1")
            p.push_back({e, "1", e, 1});
    }
    p.push_back({"x", "y", "xy", 1});
    p.push_back({"y", "x", "xy", -1});
    p.push_back({"x", "z", "xz", 1});
    p.push_back({"z", "x", "xz", -1});
    p.push_back({"y", "z", "yz", 1});
    p.push_back({"z", "y", "yz", -1});
    return b.build();
}

/// Full Λ(x,y,z), dz = xy, with the top class xyz present.
inline DgAlgebra full_heisenberg() {
    AlgebraBuilder b;
    b.basis = {{0, {"1"}}, {1, {"x", "y", "z"}}, {2, {"xy", "xz", "yz"}}, {3, {"xyz"}}};
    b.unital = true;
    b.unit_name = "1";
    b.diff = {{"z", "xy", 1}};
    auto& p = b.prod;
    for (const std::string e : {"1", "x", "y", "z", "xy", "xz", "yz", "xyz"}) {
        p.push_back({"1", e, e, 1});
        if (e != "1")
            p.push_back({e, "1", e, 1});
    }
    p.push_back({"x", "y", "xy", 1});
    p.push_back({"y", "x", "xy", -1});
    p.push_back({"x", "z", "xz", 1});
    p.push_back({"z", "x", "xz", -1});
    p.push_back({"y", "z", "yz", 1});
    p.push_back({"z", "y", "yz", -1});
    // degree 1 × degree 2
    p.push_back({"x", "yz", "xyz", 1});
    p.push_back({"yz", "x", "xyz", 1});
    p.push_back({"y", "xz", "xyz", -1});
    p.push_back({"xz", "y", "xyz", -1});
    p.push_back({"z", "xy", "xyz", 1});
    p.push_back({"xy", "z", "xyz", 1});
    return b.build();
}

/// Exterior algebra Λ(x,y), zero differential. Formal.
inline DgAlgebra exterior_two() {
    AlgebraBuilder b;
    b.basis = {{0, {"1"}}, {1, {"x", "y"}}, {2, {"xy"}}};
    b.unital = true;
    b.unit_name = "1";
    auto& p = b.prod;
    for (const std::string e : {"1", "x", "y", "xy"}) {
        p.push_back({"1", e, e, 1});
        if (e != "1")
            p.push_back({e, "1", e, 1});
    }
    p.push_back({"x", "y", "xy", 1});
    p.push_back({"y", "x", "xy", -1});
    return b.build();
}

/// One-sided noncommutative Massey ladder: degree 1 carries x, y, z_1, …, z_k,
/// degree 2 carries xy and xz_1, …, xz_k, and the only nonzero pair products
/// are x·y = xy and x·z_j = xz_j (truncation above degree 2 makes Leibniz and
/// associativity automatic). With d z_1 = xy, d z_{j+1} = x·z_j the induced
/// product is trivial, every Massey product of arity < k+2 vanishes, and the
/// (k+2)-fold ⟨x, …, x, y⟩ is the unique nonzero class ±[x z_k].
inline DgAlgebra massey_ladder(int k) {
    std::vector<std::string> deg1 = {"x", "y"};
    for (int j = 1; j <= k; ++j)
        deg1.push_back("z" + std::to_string(j));
    std::vector<std::string> deg2 = {"xy"};
    for (int j = 1; j <= k; ++j)
        deg2.push_back("xz" + std::to_string(j));

    AlgebraBuilder b;
    b.basis = {{0, {"1"}}, {1, deg1}, {2, deg2}};
    b.unital = true;
    b.unit_name = "1";
    b.prod.push_back({"1", "1", "1", 1});
    for (const auto& names : {deg1, deg2})
        for (const std::string& e : names) {
            b.prod.push_back({"1", e, e, 1});
            b.prod.push_back({e, "1", e, 1});
        }
    b.prod.push_back({"x", "y", "xy", 1});
    for (int j = 1; j <= k; ++j)
        b.prod.push_back({"x", "z" + std::to_string(j), "xz" + std::to_string(j), 1});

    b.diff.push_back({"z1", "xy", 1});
    for (int j = 1; j < k; ++j)
        b.diff.push_back({"z" + std::to_string(j + 1), "xz" + std::to_string(j), 1});
    return b.build();
}

// ---------------------------------------------------------------------------
// random valid chain complexes with known cohomology dimensions
// ---------------------------------------------------------------------------

struct RandomComplex {
    ChainComplex complex;
    std::map<int, std::size_t> expected_h_dim;
};

/// Conjugate of a canonical staircase differential by random invertible maps:
/// d² = 0 by shape, and the homology dimensions are chosen up front, giving an
/// independent oracle for cohomology().
inline RandomComplex random_complex(Rng& rng, int max_degree = 4,
                                    std::size_t max_dim = 4) {
    std::vector<std::size_t> a(max_degree + 1), h(max_degree + 1);
    for (int d = 0; d <= max_degree; ++d)
        h[d] = rng.below(max_dim);
    for (int d = 0; d < max_degree; ++d)
        a[d] = rng.below(2 + 1); // rank of d in this degree
    a[max_degree] = 0;

    std::vector<std::size_t> dims(max_degree + 1);
    for (int d = 0; d <= max_degree; ++d) {
        dims[d] = h[d] + a[d] + (d > 0 ? a[d - 1] : 0);
        dims[d] = std::min<std::size_t>(dims[d], max_dim);
        // clamping may eat staircase slots; rebuild consistently below
    }
    // recompute consistent (a, h) after clamping
    for (int d = 0; d <= max_degree; ++d) {
        const std::size_t lower = (d > 0 ? a[d - 1] : 0);
        if (dims[d] < lower)
            dims[d] = lower;
        std::size_t rest = dims[d] - lower;
        if (d < max_degree)
            a[d] = std::min(a[d], rest);
        else
            a[d] = 0;
        h[d] = rest - a[d];
    }

    std::map<int, std::vector<std::string>> basis;
    for (int d = 0; d <= max_degree; ++d) {
        if (dims[d] == 0)
            continue;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < dims[d]; ++i)
            names.push_back("e" + std::to_string(d) + "_" + std::to_string(i));
        basis[d] = std::move(names);
    }
    SpacePtr S = make_space(std::move(basis));

    // canonical staircase: the first a[d] vectors of degree d map to the slots
    // right after the h-part of degree d+1
    GradedMap d_can(S, S, 1);
    for (int deg = 0; deg < max_degree; ++deg) {
        if (S->dim(deg) == 0 || S->dim(deg + 1) == 0 || a[deg] == 0)
            continue;
        Matrix block(S->dim(deg + 1), S->dim(deg));
        const std::size_t row_off = h[deg + 1] + a[deg + 1];
        for (std::size_t k = 0; k < a[deg]; ++k)
            block(row_off + k, h[deg] + (deg > 0 ? a[deg] * 0 : 0) + k) = 1;
        d_can.set_block(deg, std::move(block));
    }

    // conjugate by random invertible P per degree
    std::map<int, Matrix> P, Pinv;
    for (int deg : S->support()) {
        const std::size_t n = S->dim(deg);
        Matrix p = Matrix::identity(n);
        for (int tries = 0; tries < 3; ++tries) {
            Matrix cand(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    cand(i, j) = Rational(rng.range(-2, 2));
            if (cand.inverse()) {
                p = cand;
                break;
            }
        }
        P[deg] = p;
        Pinv[deg] = *p.inverse();
    }
    GradedMap d_rand(S, S, 1);
    for (int deg : S->support())
        if (S->dim(deg + 1) > 0)
            d_rand.set_block(deg, P.at(deg + 1) * d_can.block(deg) * Pinv.at(deg));

    RandomComplex out;
    out.complex = ChainComplex{S, std::move(d_rand)};
    for (int deg = 0; deg <= max_degree; ++deg)
        if (h[deg] > 0)
            out.expected_h_dim[deg] = h[deg];
    return out;
}

// ---------------------------------------------------------------------------
// random valid dg-algebras
// ---------------------------------------------------------------------------

struct Generator {
    std::string name;
    int degree;
};

/// Free graded-commutative algebra on a few generators of degree 1 or 2,
/// truncated above max_degree, with a triangular differential d(g_k) chosen as a
/// random closed element of the subalgebra on earlier generators. Associativity,
/// Leibniz and d² = 0 hold by construction; validate() re-checks in tests.
class SullivanBuilder {
  public:
    SullivanBuilder(std::vector<Generator> gens, int max_degree)
        : gens_(std::move(gens)), max_degree_(max_degree) {
        build_monomials();
    }

    /// Monomials are subsets/multisets of generators; degree-1 generators appear
    /// at most once, degree-2 at most twice (kept small on purpose).
    DgAlgebra build(Rng& rng) const {
        std::map<int, std::vector<std::string>> basis;
        for (const auto& m : monomials_)
            basis[degree_of(m)].push_back(name_of(m));
        SpacePtr S = make_space(std::move(basis));

        MultilinearMap mu(2, S, S, 0);
        for (const auto& ma : monomials_)
            for (const auto& mb : monomials_) {
                auto [mc, sgn] = multiply(ma, mb);
                if (sgn == 0 || degree_of(mc) > max_degree_)
                    continue;
                const auto pos = S->find(name_of(mc));
                if (!pos)
                    continue;
                Vec v = Vec::zero(*S, pos->first);
                v.c[pos->second] = sgn;
                mu.add_entry({flat(*S, ma), flat(*S, mb)}, v);
            }

        // triangular differential on generators, extended as a derivation
        std::vector<Vec> dgen(gens_.size());
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            const int target_deg = gens_[g].degree + 1;
            Vec dg = Vec::zero(*S, target_deg);
            if (S->dim(target_deg) > 0) {
                for (std::size_t mi = 0; mi < monomials_.size(); ++mi) {
                    const auto& m = monomials_[mi];
                    if (degree_of(m) != target_deg || m.empty())
                        continue;
                    bool earlier_only = true;
                    for (auto gi : m)
                        earlier_only = earlier_only && gi < g;
                    if (!earlier_only)
                        continue;
                    if (!is_closed_monomial(m, dgen, *S))
                        continue;
                    if (rng.below(3) == 0) {
                        const auto pos = S->find(name_of(m));
                        dg.c[pos->second] += rng.small_rational();
                    }
                }
            }
            dgen[g] = dg;
        }

        GradedMap d(S, S, 1);
        std::map<int, Matrix> blocks;
        for (const auto& m : monomials_) {
            const Vec dm = d_monomial(m, dgen, *S);
            if (dm.is_zero())
                continue;
            const int deg = degree_of(m);
            auto [it, fresh] = blocks.try_emplace(deg, Matrix(S->dim(deg + 1), S->dim(deg)));
            const auto pos = S->find(name_of(m));
            for (std::size_t r = 0; r < dm.c.size(); ++r)
                it->second(r, pos->second) += dm.c[r];
        }
        for (auto& [deg, mtx] : blocks)
            d.set_block(deg, mtx);

        std::optional<Vec> unit = Vec::basis(*S, 0, 0);
        return DgAlgebra{S, std::move(d), std::move(mu), true, unit};
    }

  private:
    using Monomial = std::vector<std::size_t>; // sorted generator indices (with multiplicity)

    void build_monomials() {
        Monomial cur;
        std::function<void(std::size_t)> rec = [&](std::size_t g) {
            if (degree_of(cur) > max_degree_)
                return;
            if (g == gens_.size()) {
                monomials_.push_back(cur);
                return;
            }
            const int max_power = (gens_[g].degree % 2 == 1) ? 1 : 2;
            for (int pw = 0; pw <= max_power; ++pw) {
                for (int k = 0; k < pw; ++k)
                    cur.push_back(g);
                rec(g + 1);
                for (int k = 0; k < pw; ++k)
                    cur.pop_back();
                if (degree_of(cur) + gens_[g].degree * (pw + 1) > max_degree_)
                    break;
            }
        };
        rec(0);
        std::sort(monomials_.begin(), monomials_.end(),
                  [&](const Monomial& a, const Monomial& b) {
                      if (degree_of(a) != degree_of(b))
                          return degree_of(a) < degree_of(b);
                      return a < b;
                  });
    }

    int degree_of(const Monomial& m) const {
        int d = 0;
        for (auto g : m)
            d += gens_[g].degree;
        return d;
    }

    std::string name_of(const Monomial& m) const {
        if (m.empty())
            return "1";
        std::string s;
        for (auto g : m)
            s += gens_[g].name;
        return s;
    }

    static int flat(const GradedVectorSpace& S, int deg, const std::string& n) {
        const auto pos = S.find_in_degree(deg, n);
        if (!pos)
            throw malformed_input("fixture monomial vanished: " + n);
        return S.flat_index(deg, *pos);
    }

    int flat(const GradedVectorSpace& S, const Monomial& m) const {
        return flat(S, degree_of(m), name_of(m));
    }

    /// Merge two monomials with the graded commutation sign; 0 when an odd
    /// generator repeats.
    std::pair<Monomial, int> multiply(const Monomial& a, const Monomial& b) const {
        Monomial out = a;
        int sign = 1;
        for (auto g : b) {
            // insert g into sorted position, counting odd transpositions
            std::size_t pos = out.size();
            while (pos > 0 && out[pos - 1] > g)
                --pos;
            int odd_passed = 0;
            for (std::size_t k = pos; k < out.size(); ++k)
                if (gens_[out[k]].degree % 2 == 1)
                    ++odd_passed;
            if (gens_[g].degree % 2 == 1) {
                if (pos > 0 && out[pos - 1] == g)
                    return {out, 0};
                if (pos < out.size() && out[pos] == g)
                    return {out, 0};
                sign *= parity_sign(odd_passed);
            }
            out.insert(out.begin() + pos, g);
        }
        if (degree_of(out) > max_degree_)
            return {out, 0};
        return {out, sign};
    }

    /// d of a monomial by the Leibniz rule, given d on generators.
    Vec d_monomial(const Monomial& m, const std::vector<Vec>& dgen,
                   const GradedVectorSpace& S) const {
        Vec acc = Vec::zero(S, degree_of(m) + 1);
        int sign_prefix = 1;
        for (std::size_t pos = 0; pos < m.size(); ++pos) {
            const std::size_t g = m[pos];
            const Vec& dg = dgen[g];
            if (!dg.is_zero()) {
                Monomial rest = m;
                rest.erase(rest.begin() + pos);
                // d(g) is a combination of monomials; multiply back in place
                for (std::size_t j = 0; j < dg.c.size(); ++j) {
                    if (dg.c[j] == 0)
                        continue;
                    const Monomial dj = monomial_by_name(
                        S.name(gens_[g].degree + 1, j), gens_[g].degree + 1);
                    // left part (prefix before pos) ⊗ dj ⊗ right part
                    auto [left_dj, s1] = multiply(Monomial(m.begin(), m.begin() + pos), dj);
                    if (s1 == 0)
                        continue;
                    auto [full, s2] =
                        multiply(left_dj, Monomial(m.begin() + pos + 1, m.end()));
                    if (s2 == 0)
                        continue;
                    if (degree_of(full) > max_degree_)
                        continue;
                    const auto p = S.find(name_of(full));
                    if (!p)
                        continue;
                    acc.c[p->second] += dg.c[j] * s1 * s2 * sign_prefix;
                }
            }
            if (gens_[g].degree % 2 == 1)
                sign_prefix = -sign_prefix;
        }
        return acc;
    }

    bool is_closed_monomial(const Monomial& m, const std::vector<Vec>& dgen,
                            const GradedVectorSpace& S) const {
        return d_monomial(m, dgen, S).is_zero();
    }

    Monomial monomial_by_name(const std::string& name, int degree) const {
        for (const auto& m : monomials_)
            if (degree_of(m) == degree && name_of(m) == name)
                return m;
        throw malformed_input("fixture: no monomial named " + name);
    }

    std::vector<Generator> gens_;
    int max_degree_;
    std::vector<Monomial> monomials_;
};

/// Noncommutative family: the upper-triangular 4×4 matrix units E_{uv} graded by
/// deg E_{uv} = w_v − w_u for weights w = (0,1,2,3), with the inner differential
/// d = [e, −] for a random degree-1 square-zero element e. Associativity is the
/// matrix algebra's, Leibniz holds for graded commutators, and e² = 0 gives
/// d² = 0. Degrees 0–3, dims (4,3,2,1).
inline DgAlgebra random_triangular_algebra(Rng& rng) {
    struct Unit {
        int u, v;
    };
    std::vector<Unit> units;
    std::map<int, std::vector<std::string>> basis;
    std::map<std::pair<int, int>, std::pair<int, std::size_t>> where;
    for (int deg = 0; deg <= 3; ++deg) {
        std::vector<std::string> names;
        for (int u = 1; u + deg <= 4; ++u) {
            const int v = u + deg;
            where[{u, v}] = {deg, names.size()};
            names.push_back("E" + std::to_string(u) + std::to_string(v));
            units.push_back({u, v});
        }
        basis[deg] = std::move(names);
    }
    SpacePtr S = make_space(std::move(basis));

    MultilinearMap mu(2, S, S, 0);
    for (const auto& a : units)
        for (const auto& b : units) {
            if (a.v != b.u)
                continue;
            const auto [da, ia] = where.at({a.u, a.v});
            const auto [db, ib] = where.at({b.u, b.v});
            const auto [dc, ic] = where.at({a.u, b.v});
            Vec v = Vec::zero(*S, dc);
            v.c[ic] = 1;
            mu.add_entry({S->flat_index(da, ia), S->flat_index(db, ib)}, v);
        }

    // e = c1·E12 + c3·E34 (any c) or c2·E23 alone: both give e·e = 0
    Vec e = Vec::zero(*S, 1);
    if (rng.below(2) == 0) {
        e.c[where.at({1, 2}).second] = rng.small_rational();
        e.c[where.at({3, 4}).second] = rng.small_rational();
    } else {
        e.c[where.at({2, 3}).second] = rng.small_rational();
    }

    GradedMap d(S, S, 1);
    for (int deg = 0; deg <= 2; ++deg) {
        Matrix block(S->dim(deg + 1), S->dim(deg));
        for (std::size_t j = 0; j < S->dim(deg); ++j) {
            const Vec a = Vec::basis(*S, deg, j);
            Vec da = mu.eval({e, a});
            const Vec ae = mu.eval({a, e});
            da -= (deg % 2 == 0) ? ae : -ae;
            for (std::size_t r = 0; r < da.c.size(); ++r)
                block(r, j) = da.c[r];
        }
        d.set_block(deg, std::move(block));
    }

    Vec unit = Vec::zero(*S, 0);
    for (std::size_t i = 0; i < S->dim(0); ++i)
        unit.c[i] = 1;
    return DgAlgebra{S, std::move(d), std::move(mu), true, unit};
}

/// Conjugate a dg-algebra by a random degree-preserving change of basis
/// (identity on degree 0 so the unit survives). The result is isomorphic to the
/// input but has thoroughly shuffled structure constants.
inline DgAlgebra conjugated(const DgAlgebra& A, Rng& rng) {
    const GradedVectorSpace& S = *A.space;
    GradedMap Q(A.space, A.space, 0);
    GradedMap Qi(A.space, A.space, 0);
    for (int deg : S.support()) {
        const std::size_t n = S.dim(deg);
        Matrix q = Matrix::identity(n);
        if (deg != 0) {
            for (int tries = 0; tries < 4; ++tries) {
                Matrix cand(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        cand(i, j) = Rational(rng.range(-2, 2));
                if (cand.inverse()) {
                    q = cand;
                    break;
                }
            }
        }
        Q.set_block(deg, q);
        Qi.set_block(deg, *q.inverse());
    }
    DgAlgebra out = A;
    out.d = GradedMap::compose(Q, GradedMap::compose(A.d, Qi));
    MultilinearMap mu(2, A.space, A.space, 0);
    for (int da : S.support())
        for (int db : S.support()) {
            if (!S.has_degree(da + db))
                continue;
            for (std::size_t ia = 0; ia < S.dim(da); ++ia)
                for (std::size_t ib = 0; ib < S.dim(db); ++ib) {
                    const Vec v = Q.apply(A.multiply(Qi.apply(Vec::basis(S, da, ia)),
                                                     Qi.apply(Vec::basis(S, db, ib))));
                    if (!v.is_zero())
                        mu.add_entry({S.flat_index(da, ia), S.flat_index(db, ib)}, v);
                }
        }
    out.product = std::move(mu);
    return out;
}

/// A randomized valid dg-algebra: free graded-commutative on 2–4 generators of
/// degrees 1–2, truncated at degree 4, with a random triangular differential.
/// Rejection keeps every degree at dimension ≤ 4.
inline DgAlgebra random_dg_algebra(Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const int ngens = static_cast<int>(rng.range(2, 3));
        std::vector<Generator> gens;
        static const char* names[] = {"x", "y", "z", "w"};
        int n_deg1 = 0;
        for (int g = 0; g < ngens; ++g) {
            const int deg = (rng.below(3) == 0) ? 2 : 1;
            n_deg1 += (deg == 1);
            gens.push_back({names[g], deg});
        }
        if (n_deg1 > 3)
            continue;
        SullivanBuilder builder(gens, 4);
        DgAlgebra A = builder.build(rng);
        bool small = true;
        for (int d : A.space->support())
            small = small && A.space->dim(d) <= 4;
        if (small)
            return A;
    }
    throw internal_fault("random_dg_algebra: rejection sampling failed");
}

} // namespace fixtures
