#pragma once

#include <functional>
#include <set>

#include "formality.hpp"

namespace ainfty {

/// Finite ordered simplicial complex: simplices are strictly increasing vertex
/// index tuples, closed under faces. The vertex order is part of the data; the
/// cup product depends on it (cochain-level), its cohomology does not.
class OrderedSimplicialComplex {
  public:
    OrderedSimplicialComplex(std::vector<std::string> vertices,
                             const std::vector<std::vector<int>>& maximal_simplices,
                             int basepoint = 0)
        : vertices_(std::move(vertices)), basepoint_(basepoint) {
        if (vertices_.empty())
            throw malformed_input("simplicial complex needs at least one vertex");
        if (basepoint_ < 0 || basepoint_ >= static_cast<int>(vertices_.size()))
            throw malformed_input("basepoint index out of range");
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
            simplices_.insert({v});
        for (auto s : maximal_simplices) {
            std::sort(s.begin(), s.end());
            for (std::size_t i = 0; i + 1 < s.size(); ++i)
                if (s[i] == s[i + 1])
                    throw malformed_input("simplex with a repeated vertex");
            for (int v : s)
                if (v < 0 || v >= static_cast<int>(vertices_.size()))
                    throw malformed_input("simplex references a missing vertex");
            close_faces(s);
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    int basepoint() const { return basepoint_; }
    const std::set<std::vector<int>>& simplices() const { return simplices_; }

    int dimension() const {
        int d = 0;
        for (const auto& s : simplices_)
            d = std::max<int>(d, static_cast<int>(s.size()) - 1);
        return d;
    }

    std::vector<std::vector<int>> simplices_of_dim(int k) const {
        std::vector<std::vector<int>> out;
        for (const auto& s : simplices_)
            if (static_cast<int>(s.size()) == k + 1)
                out.push_back(s);
        return out;
    }

    bool is_connected() const {
        std::vector<int> parent(vertices_.size());
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& s : simplices_)
            if (s.size() == 2)
                parent[find(s[0])] = find(s[1]);
        const int root = find(0);
        for (std::size_t v = 1; v < vertices_.size(); ++v)
            if (find(static_cast<int>(v)) != root)
                return false;
        return true;
    }

    std::string simplex_name(const std::vector<int>& s) const {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i)
                out += "|";
            out += vertices_[s[i]];
        }
        return out;
    }

  private:
    void close_faces(const std::vector<int>& s) {
        simplices_.insert(s);
        if (s.size() <= 1)
            return;
        for (std::size_t skip = 0; skip < s.size(); ++skip) {
            std::vector<int> face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != skip)
                    face.push_back(s[i]);
            if (!simplices_.count(face))
                close_faces(face);
        }
    }

    std::vector<std::string> vertices_;
    std::set<std::vector<int>> simplices_;
    int basepoint_;
};

/// Simplicial cochains over the rationals with the front-face/back-face cup
/// product (α ∪ β)(v_0…v_{p+q}) = α(v_0…v_p)·β(v_p…v_{p+q}). Strictly
/// associative and unital; not graded-commutative at cochain level, which is
/// fine — nothing downstream assumes commutativity.
inline DgAlgebra cochain_algebra(const OrderedSimplicialComplex& X) {
    std::map<int, std::vector<std::string>> basis;
    std::map<std::vector<int>, std::pair<int, std::size_t>> index_of;
    for (int k = 0; k <= X.dimension(); ++k) {
        const auto simps = X.simplices_of_dim(k);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < simps.size(); ++i) {
            index_of[simps[i]] = {k, i};
            names.push_back(X.simplex_name(simps[i]));
        }
        if (!names.empty())
            basis[k] = std::move(names);
    }
    SpacePtr S = make_space(std::move(basis));

    GradedMap d(S, S, 1);
    for (int k = 0; k < X.dimension(); ++k) {
        if (S->dim(k) == 0 || S->dim(k + 1) == 0)
            continue;
        Matrix block(S->dim(k + 1), S->dim(k));
        for (const auto& tau : X.simplices_of_dim(k + 1)) {
            const auto [td, ti] = index_of.at(tau);
            for (std::size_t skip = 0; skip < tau.size(); ++skip) {
                std::vector<int> face;
                for (std::size_t i = 0; i < tau.size(); ++i)
                    if (i != skip)
                        face.push_back(tau[i]);
                const auto [fd, fi] = index_of.at(face);
                block(ti, fi) += parity_sign(static_cast<long long>(skip));
            }
        }
        d.set_block(k, std::move(block));
    }

    MultilinearMap mu(2, S, S, 0);
    for (const auto& rho : X.simplices()) {
        const int dim = static_cast<int>(rho.size()) - 1;
        const auto [rd, ri] = index_of.at(rho);
        for (int p = 0; p <= dim; ++p) {
            const std::vector<int> front(rho.begin(), rho.begin() + p + 1);
            const std::vector<int> back(rho.begin() + p, rho.end());
            const auto [fd, fi] = index_of.at(front);
            const auto [bd, bi] = index_of.at(back);
            Vec v = Vec::zero(*S, rd);
            v.c[ri] = 1;
            mu.add_entry({S->flat_index(fd, fi), S->flat_index(bd, bi)}, v);
        }
    }

    Vec unit = Vec::zero(*S, 0);
    for (std::size_t i = 0; i < S->dim(0); ++i)
        unit.c[i] = 1;
    return DgAlgebra{S, std::move(d), std::move(mu), true, unit};
}

/// Evaluation-at-basepoint functional on degree-0 cochains.
inline std::vector<Rational> basepoint_functional(const OrderedSimplicialComplex& X,
                                                  const DgAlgebra& A) {
    std::vector<Rational> phi(A.space->dim(0));
    const std::vector<int> v = {X.basepoint()};
    const auto pos = A.space->find_in_degree(0, X.simplex_name(v));
    if (!pos)
        throw internal_fault("basepoint vertex missing from the cochain basis");
    phi[*pos] = 1;
    return phi;
}

inline DgAlgebra reduced_cochain_algebra(const OrderedSimplicialComplex& X) {
    const DgAlgebra A = cochain_algebra(X);
    return reduced_subalgebra(A, basepoint_functional(X, A));
}

/// Join with two new cone points, appended last in the vertex order.
inline OrderedSimplicialComplex suspension(const OrderedSimplicialComplex& X) {
    const int n = static_cast<int>(X.vertices().size());
    std::vector<std::string> verts = X.vertices();
    verts.push_back("N");
    verts.push_back("S");
    std::vector<std::vector<int>> maximal;
    for (const auto& s : X.simplices()) {
        std::vector<int> north = s;
        north.push_back(n);
        std::vector<int> south = s;
        south.push_back(n + 1);
        maximal.push_back(north);
        maximal.push_back(south);
    }
    return OrderedSimplicialComplex(std::move(verts), maximal, X.basepoint());
}

/// Cup-length of the reduced cohomology, reported explicitly as a lower bound
/// for the Lusternik–Schnirelmann category — never as the category itself.
inline int ls_cat_lower_bound(const OrderedSimplicialComplex& X) {
    if (!X.is_connected())
        throw malformed_input("ls_cat_lower_bound: complex must be connected");
    return cup_length(induced_cohomology_algebra(reduced_cochain_algebra(X)));
}

// ---------------------------------------------------------------------------
// standard complexes
// ---------------------------------------------------------------------------

inline OrderedSimplicialComplex point_complex() {
    return OrderedSimplicialComplex({"p"}, {});
}

inline OrderedSimplicialComplex circle_complex() {
    return OrderedSimplicialComplex({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
}

inline OrderedSimplicialComplex two_points_complex() {
    return OrderedSimplicialComplex({"a", "b"}, {});
}

inline OrderedSimplicialComplex sphere2_complex() {
    return OrderedSimplicialComplex({"a", "b", "c", "d"},
                                    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline OrderedSimplicialComplex wedge_two_circles_complex() {
    return OrderedSimplicialComplex({"a", "b", "c", "d", "e"},
                                    {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

inline OrderedSimplicialComplex wedge_circles_sphere_complex() {
    return OrderedSimplicialComplex(
        {"a", "b", "c", "d", "e", "f", "g", "h"},
        {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4},
         {0, 5, 6}, {0, 5, 7}, {0, 6, 7}, {5, 6, 7}});
}

/// The 7-vertex minimal torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline OrderedSimplicialComplex torus_complex() {
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return OrderedSimplicialComplex({"t0", "t1", "t2", "t3", "t4", "t5", "t6"}, tris);
}

// ---------------------------------------------------------------------------
// example corpus
// ---------------------------------------------------------------------------

struct ExampleDescriptor {
    /// What certify_formality is expected to report on the reduced algebra.
    /// `transfer_nontrivial` marks inputs outside the trivial-product theorem:
    /// the canonical transfer carries nonzero higher products, so the literal
    /// certificate reads non-formal, but that is a statement about this gauge
    /// representative, not a non-formality proof (the torus is the prototype).
    enum class Formality { formal, non_formal, transfer_nontrivial };

    std::string name;
    std::function<DgAlgebra()> build;         // primary presentation
    std::function<DgAlgebra()> build_reduced; // what the formality machinery consumes
    std::map<int, std::size_t> h_dims;        // expected cohomology dims of build()
    int cup_len = 0;                          // cup length of the reduced cohomology
    bool trivial_reduced_product = false;
    Formality formality = Formality::formal;
    // indices (i, j, k) into the degree-1 part of reduced H with a nonvanishing
    // triple Massey product, when one is expected
    std::optional<std::array<std::size_t, 3>> nonvanishing_triple;
};

namespace presets {

/// Λ(x,y,z), |x|=|y|=|z|=1, dz = xy, truncated above degree 2.
inline DgAlgebra truncated_heisenberg() {
    std::map<int, std::vector<std::string>> basis = {
        {0, {"1"}}, {1, {"x", "y", "z"}}, {2, {"xy", "xz", "yz"}}};
    SpacePtr S = make_space(std::move(basis));
    GradedMap d(S, S, 1);
    Matrix b1(3, 3);
    b1(0, 2) = 1; // dz = xy
    d.set_block(1, std::move(b1));

    MultilinearMap mu(2, S, S, 0);
    auto ref = [&](const std::string& n) {
        const auto p = S->find(n);
        return std::pair<int, std::pair<int, std::size_t>>(
            S->flat_index(p->first, p->second), *p);
    };
    auto put = [&](const std::string& l, const std::string& r, const std::string& o,
                   int coeff) {
        const auto [lf, lp] = ref(l);
        const auto [rf, rp] = ref(r);
        const auto [of, op] = ref(o);
        (void)of;
        Vec v = Vec::zero(*S, op.first);
        v.c[op.second] = coeff;
        mu.add_entry({lf, rf}, v);
    };
    for (const std::string e : {"1", "x", "y", "z", "xy", "xz", "yz"}) {
        put("1", e, e, 1);
        if (e != "1")
            put(e, "1", e, 1);
    }
    put("x", "y", "xy", 1);
    put("y", "x", "xy", -1);
    put("x", "z", "xz", 1);
    put("z", "x", "xz", -1);
    put("y", "z", "yz", 1);
    put("z", "y", "yz", -1);
    return DgAlgebra{S, std::move(d), std::move(mu), true, Vec::basis(*S, 0, 0)};
}

/// Full Λ(x,y,z) with dz = xy and the top class xyz.
inline DgAlgebra full_heisenberg() {
    std::map<int, std::vector<std::string>> basis = {
        {0, {"1"}}, {1, {"x", "y", "z"}}, {2, {"xy", "xz", "yz"}}, {3, {"xyz"}}};
    SpacePtr S = make_space(std::move(basis));
    GradedMap d(S, S, 1);
    Matrix b1(3, 3);
    b1(0, 2) = 1;
    d.set_block(1, std::move(b1));

    MultilinearMap mu(2, S, S, 0);
    auto put = [&](const std::string& l, const std::string& r, const std::string& o,
                   int coeff) {
        const auto lp = S->find(l);
        const auto rp = S->find(r);
        const auto op = S->find(o);
        Vec v = Vec::zero(*S, op->first);
        v.c[op->second] = coeff;
        mu.add_entry({S->flat_index(lp->first, lp->second),
                      S->flat_index(rp->first, rp->second)},
                     v);
    };
    for (const std::string e : {"1", "x", "y", "z", "xy", "xz", "yz", "xyz"}) {
        put("1", e, e, 1);
        if (e != "1")
            put(e, "1", e, 1);
    }
    put("x", "y", "xy", 1);
    put("y", "x", "xy", -1);
    put("x", "z", "xz", 1);
    put("z", "x", "xz", -1);
    put("y", "z", "yz", 1);
    put("z", "y", "yz", -1);
    put("x", "yz", "xyz", 1);
    put("yz", "x", "xyz", 1);
    put("y", "xz", "xyz", -1);
    put("xz", "y", "xyz", -1);
    put("z", "xy", "xyz", 1);
    put("xy", "z", "xyz", 1);
    return DgAlgebra{S, std::move(d), std::move(mu), true, Vec::basis(*S, 0, 0)};
}

/// Λ(x,y) with zero differential.
inline DgAlgebra exterior_pair() {
    std::map<int, std::vector<std::string>> basis = {
        {0, {"1"}}, {1, {"x", "y"}}, {2, {"xy"}}};
    SpacePtr S = make_space(std::move(basis));
    MultilinearMap mu(2, S, S, 0);
    auto put = [&](const std::string& l, const std::string& r, const std::string& o,
                   int coeff) {
        const auto lp = S->find(l);
        const auto rp = S->find(r);
        const auto op = S->find(o);
        Vec v = Vec::zero(*S, op->first);
        v.c[op->second] = coeff;
        mu.add_entry({S->flat_index(lp->first, lp->second),
                      S->flat_index(rp->first, rp->second)},
                     v);
    };
    for (const std::string e : {"1", "x", "y", "xy"}) {
        put("1", e, e, 1);
        if (e != "1")
            put(e, "1", e, 1);
    }
    put("x", "y", "xy", 1);
    put("y", "x", "xy", -1);
    return DgAlgebra{S, GradedMap::zero(S, S, 1), std::move(mu), true,
                     Vec::basis(*S, 0, 0)};
}

} // namespace presets

/// The shipped example corpus. Expectation fields are re-derived by the engine
/// in tests and by `corpus` runs, never trusted.
inline std::vector<ExampleDescriptor> example_corpus() {
    std::vector<ExampleDescriptor> out;
    using F = ExampleDescriptor::Formality;

    auto simplicial = [](std::string name, std::function<OrderedSimplicialComplex()> mk,
                         std::map<int, std::size_t> dims, int cup, bool trivial,
                         F form) {
        ExampleDescriptor d;
        d.name = std::move(name);
        d.build = [mk]() { return cochain_algebra(mk()); };
        d.build_reduced = [mk]() { return reduced_cochain_algebra(mk()); };
        d.h_dims = std::move(dims);
        d.cup_len = cup;
        d.trivial_reduced_product = trivial;
        d.formality = form;
        return d;
    };

    out.push_back(simplicial("point", point_complex, {{0, 1}}, 0, true, F::formal));
    out.push_back(simplicial("circle", circle_complex, {{0, 1}, {1, 1}}, 1, true,
                             F::formal));
    out.push_back(simplicial("sphere2", sphere2_complex, {{0, 1}, {2, 1}}, 1, true,
                             F::formal));
    out.push_back(simplicial("wedge_two_circles", wedge_two_circles_complex,
                             {{0, 1}, {1, 2}}, 1, true, F::formal));
    out.push_back(simplicial("wedge_circles_sphere", wedge_circles_sphere_complex,
                             {{0, 1}, {1, 2}, {2, 1}}, 1, true, F::formal));
    out.push_back(simplicial("torus", torus_complex, {{0, 1}, {1, 2}, {2, 1}}, 2,
                             false, F::transfer_nontrivial));
    out.push_back(simplicial("suspension_torus",
                             []() { return suspension(torus_complex()); },
                             {{0, 1}, {2, 2}, {3, 1}}, 1, true, F::formal));

    {
        ExampleDescriptor d;
        d.name = "truncated_heisenberg";
        d.build = presets::truncated_heisenberg;
        d.build_reduced = presets::truncated_heisenberg;
        d.h_dims = {{0, 1}, {1, 2}, {2, 2}};
        d.cup_len = 1;
        d.trivial_reduced_product = true;
        d.formality = F::non_formal;
        d.nonvanishing_triple = {{0, 0, 1}}; // ⟨[x],[x],[y]⟩
        out.push_back(d);
    }
    {
        ExampleDescriptor d;
        d.name = "full_heisenberg";
        d.build = presets::full_heisenberg;
        d.build_reduced = presets::full_heisenberg;
        d.h_dims = {{0, 1}, {1, 2}, {2, 2}, {3, 1}};
        d.cup_len = 2;
        d.trivial_reduced_product = false;
        d.formality = F::non_formal;
        d.nonvanishing_triple = {{0, 0, 1}};
        out.push_back(d);
    }
    {
        ExampleDescriptor d;
        d.name = "exterior_pair";
        d.build = presets::exterior_pair;
        d.build_reduced = presets::exterior_pair;
        d.h_dims = {{0, 1}, {1, 2}, {2, 1}};
        d.cup_len = 2;
        d.trivial_reduced_product = false;
        d.formality = F::formal;
        out.push_back(d);
    }
    {
        ExampleDescriptor d;
        d.name = "heisenberg_cohomology";
        d.build = []() {
            return induced_cohomology_algebra(presets::truncated_heisenberg())
                .as_dg_algebra();
        };
        d.build_reduced = d.build;
        d.h_dims = {{0, 1}, {1, 2}, {2, 2}};
        d.cup_len = 1;
        d.trivial_reduced_product = true;
        d.formality = F::formal;
        out.push_back(d);
    }
    return out;
}

struct CorpusCheck {
    std::string name;
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Recompute every expectation of one corpus entry from scratch.
inline CorpusCheck verify_corpus_entry(const ExampleDescriptor& e, int cap = 6) {
    CorpusCheck r;
    r.name = e.name;
    auto fail = [&](const std::string& what) {
        r.ok = false;
        r.mismatches.push_back(what);
    };

    const DgAlgebra A = e.build();
    const ValidationReport rep = validate(A);
    if (!rep.ok())
        fail("validate: " + rep.to_string());

    const CohomologyAlgebra H = induced_cohomology_algebra(A);
    for (int d = -1; d <= 6; ++d) {
        const std::size_t want = e.h_dims.count(d) ? e.h_dims.at(d) : 0;
        if (H.space()->dim(d) != want)
            fail("dim H^" + std::to_string(d) + " = " +
                 std::to_string(H.space()->dim(d)) + ", expected " +
                 std::to_string(want));
    }

    const DgAlgebra R = e.build_reduced();
    if (!validate(R).ok())
        fail("reduced algebra fails validation");
    const CohomologyAlgebra HR = induced_cohomology_algebra(R);
    if (cup_length(HR) != e.cup_len)
        fail("cup_length = " + std::to_string(cup_length(HR)) + ", expected " +
             std::to_string(e.cup_len));
    if (is_reduced_product_trivial(HR) != e.trivial_reduced_product)
        fail("trivial_reduced_product mismatch");

    const FormalityAnalysis fa = certify_formality(R, cap);
    switch (e.formality) {
    case ExampleDescriptor::Formality::formal:
        if (!fa.certificate.formal())
            fail("expected a formal certificate");
        break;
    case ExampleDescriptor::Formality::non_formal:
        if (fa.certificate.verdict != FormalityCertificate::Verdict::non_formal)
            fail("expected a non-formal certificate");
        break;
    case ExampleDescriptor::Formality::transfer_nontrivial:
        if (fa.certificate.verdict != FormalityCertificate::Verdict::non_formal)
            fail("expected nontrivial transferred products");
        if (e.trivial_reduced_product)
            fail("transfer_nontrivial is only meaningful outside the "
                 "trivial-product theorem");
        break;
    }

    if (e.nonvanishing_triple) {
        const auto [i, j, k] = *e.nonvanishing_triple;
        const Vec x1 = Vec::basis(*HR.space(), 1, i);
        const Vec x2 = Vec::basis(*HR.space(), 1, j);
        const Vec x3 = Vec::basis(*HR.space(), 1, k);
        const MasseyOutcome out = triple_massey(R, HR, x1, x2, x3);
        if (out.kind == MasseyOutcome::Kind::obstructed)
            fail("expected triple product is obstructed");
        else if (massey_vanishes(out))
            fail("expected nonvanishing triple product vanishes");
    }
    return r;
}

} // namespace ainfty
