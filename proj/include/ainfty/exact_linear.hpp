#pragma once

#include <sstream>

#include "graded_map.hpp"

namespace ainfty {

/// A graded space with a degree +1 differential. d∘d = 0 is the caller's claim;
/// cohomology() validates it before doing anything else.
struct ChainComplex {
    SpacePtr space;
    GradedMap d;

    ChainComplex() = default;
    ChainComplex(SpacePtr s, GradedMap diff) : space(std::move(s)), d(std::move(diff)) {
        if (!same_space(d.source(), space) || !same_space(d.target(), space) || d.shift() != 1)
            throw malformed_input("chain complex differential must be a degree +1 endomap");
    }
};

/// One preimage under a graded map, or nullopt. Deterministic: reduced-echelon
/// pivoting with leftmost-pivot tie-breaking, free variables at zero.
inline std::optional<Vec> solve(const GradedMap& m, const Vec& target) {
    const int src_deg = target.degree - m.shift();
    if (target.c.size() != m.target()->dim(target.degree))
        throw malformed_input("solve: target vector does not live in the map's target");
    const auto sol = m.block(src_deg).solve(target.c);
    if (!sol)
        return std::nullopt;
    return Vec(src_deg, *sol);
}

/// Echelonized kernel basis of a graded map in one degree.
inline std::vector<Vec> kernel_basis(const GradedMap& m, int degree) {
    std::vector<Vec> out;
    for (auto& v : m.block(degree).kernel_basis())
        out.emplace_back(degree, std::move(v));
    return out;
}

/// Deformation retract data exhibiting H as a retract of (A, d):
/// p∘i = id, id − i∘p = d∘h + h∘d, and the side conditions
/// h∘i = 0, p∘h = 0, h∘h = 0, all exact by construction.
struct ContractionData {
    ChainComplex complex;   // (A, d)
    SpacePtr homology;      // H, zero differential
    GradedMap include;      // i : H -> A, shift 0
    GradedMap project;      // p : A -> H, shift 0
    GradedMap homotopy;     // h : A -> A, shift -1

    /// Re-checks the five contraction identities exactly; names the first failure.
    std::optional<std::string> check() const {
        const GradedMap id_h = GradedMap::identity(homology);
        const GradedMap id_a = GradedMap::identity(complex.space);
        if (!(GradedMap::compose(project, include) == id_h))
            return "p∘i != id";
        const GradedMap dh = GradedMap::compose(complex.d, homotopy);
        const GradedMap hd = GradedMap::compose(homotopy, complex.d);
        const GradedMap ip = GradedMap::compose(include, project);
        if (!(id_a - ip == dh + hd))
            return "id - i∘p != d∘h + h∘d";
        if (!GradedMap::compose(homotopy, include).is_zero())
            return "h∘i != 0";
        if (!GradedMap::compose(project, homotopy).is_zero())
            return "p∘h != 0";
        if (!GradedMap::compose(homotopy, homotopy).is_zero())
            return "h∘h != 0";
        return std::nullopt;
    }
};

namespace detail {

inline std::string class_name(const Vec& rep, const GradedVectorSpace& space) {
    return "[" + format_vec(rep, space) + "]";
}

} // namespace detail

/// Cohomology of a complex together with explicit contraction data.
///
/// Per degree the space splits as boundaries ⊕ chosen cocycle representatives ⊕
/// a complement of the cocycles; h is the section of d carried by the complement
/// and zero elsewhere, which forces all side conditions.
inline ContractionData cohomology(const ChainComplex& cx) {
    const GradedVectorSpace& A = *cx.space;

    // validate d∘d = 0 with a named witness
    for (int d : A.support()) {
        const Matrix dd = cx.d.block(d + 1) * cx.d.block(d);
        for (std::size_t j = 0; j < dd.cols(); ++j)
            for (std::size_t i = 0; i < dd.rows(); ++i)
                if (dd(i, j) != 0)
                    throw invalid_complex("d∘d != 0 on basis element '" + A.name(d, j) +
                                          "' of degree " + std::to_string(d));
    }

    struct DegreeData {
        std::vector<std::vector<Rational>> reps;        // homology representatives
        std::vector<std::vector<Rational>> boundaries;  // echelon image of d
        std::vector<std::size_t> pivot_cols;            // complement of ker d
    };
    std::map<int, DegreeData> per_degree;

    for (int d : A.support()) {
        DegreeData data;
        Matrix block = cx.d.block(d);
        {
            Matrix tmp = block;
            data.pivot_cols = tmp.rref();
        }
        data.boundaries = cx.d.block(d - 1).column_space_basis();

        SubspaceBuilder span(A.dim(d));
        for (const auto& b : data.boundaries)
            span.add(b);
        for (const auto& z : block.kernel_basis()) {
            std::vector<Rational> candidate = z;
            if (span.add(candidate))
                data.reps.push_back(std::move(candidate));
        }
        per_degree[d] = std::move(data);
    }

    std::map<int, std::vector<std::string>> h_basis;
    for (const auto& [d, data] : per_degree) {
        if (data.reps.empty())
            continue;
        std::vector<std::string> names;
        for (const auto& r : data.reps)
            names.push_back(detail::class_name(Vec(d, r), A));
        h_basis[d] = std::move(names);
    }
    SpacePtr H = make_space(std::move(h_basis));

    GradedMap inc(H, cx.space, 0);
    GradedMap prj(cx.space, H, 0);
    GradedMap hom(cx.space, cx.space, -1);

    for (const auto& [d, data] : per_degree) {
        const std::size_t n = A.dim(d);
        const std::size_t nb = data.boundaries.size();
        const std::size_t nw = data.reps.size();
        const std::size_t nv = data.pivot_cols.size();
        if (nb + nw + nv != n)
            throw internal_fault("cohomology: degree " + std::to_string(d) +
                                 " decomposition does not fill the space");

        if (nw > 0)
            inc.set_block(d, Matrix::from_columns(data.reps, n));

        // change of basis [boundaries | reps | complement] -> coordinates
        std::vector<std::vector<Rational>> cols;
        cols.insert(cols.end(), data.boundaries.begin(), data.boundaries.end());
        cols.insert(cols.end(), data.reps.begin(), data.reps.end());
        for (auto pc : data.pivot_cols) {
            std::vector<Rational> e(n);
            e[pc] = 1;
            cols.push_back(std::move(e));
        }
        const Matrix basis_matrix = Matrix::from_columns(cols, n);
        const auto inv = basis_matrix.inverse();
        if (!inv)
            throw internal_fault("cohomology: degree basis matrix is singular");

        if (nw > 0) {
            Matrix p(nw, n);
            for (std::size_t i = 0; i < nw; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    p(i, j) = (*inv)(nb + i, j);
            prj.set_block(d, std::move(p));
        }

        if (nb > 0) {
            // section of d on boundaries: each echelon boundary vector gets its
            // unique preimage inside the complement of ker d one degree down
            const std::size_t m = A.dim(d - 1);
            const auto& lower = per_degree.at(d - 1);
            Matrix restricted(n, lower.pivot_cols.size());
            const Matrix dm1 = cx.d.block(d - 1);
            for (std::size_t j = 0; j < lower.pivot_cols.size(); ++j)
                for (std::size_t i = 0; i < n; ++i)
                    restricted(i, j) = dm1(i, lower.pivot_cols[j]);
            Matrix sections(m, nb);
            for (std::size_t k = 0; k < nb; ++k) {
                const auto sol = restricted.solve(data.boundaries[k]);
                if (!sol)
                    throw internal_fault("cohomology: boundary without preimage");
                for (std::size_t j = 0; j < sol->size(); ++j)
                    sections(lower.pivot_cols[j], k) = (*sol)[j];
            }
            Matrix pick(nb, n);
            for (std::size_t i = 0; i < nb; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    pick(i, j) = (*inv)(i, j);
            hom.set_block(d, sections * pick);
        }
    }

    ContractionData out{cx, H, std::move(inc), std::move(prj), std::move(hom)};
    if (auto bad = out.check())
        throw internal_fault("cohomology: contraction identity failed: " + *bad);
    return out;
}

/// Induced map on cohomology of a chain map f : (A,dA) -> (B,dB) in one degree.
inline Matrix induced_on_cohomology(const GradedMap& f, const ContractionData& src,
                                    const ContractionData& tgt, int degree) {
    const std::size_t ns = src.homology->dim(degree);
    const std::size_t nt = tgt.homology->dim(degree + f.shift());
    Matrix out(nt, ns);
    for (std::size_t j = 0; j < ns; ++j) {
        const Vec cls = Vec::basis(*src.homology, degree, j);
        const Vec img = tgt.project.apply(f.apply(src.include.apply(cls)));
        for (std::size_t i = 0; i < nt; ++i)
            out(i, j) = img.c[i];
    }
    return out;
}

/// True when a degree-0 chain map induces isomorphisms on cohomology everywhere.
inline bool is_quasi_iso_chain_map(const GradedMap& f, const ChainComplex& src,
                                   const ChainComplex& tgt) {
    // chain map condition first
    if (!(GradedMap::compose(tgt.d, f) == GradedMap::compose(f, src.d)))
        return false;
    const ContractionData cs = cohomology(src);
    const ContractionData ct = cohomology(tgt);
    std::vector<int> degrees = cs.homology->support();
    for (int d : ct.homology->support())
        if (!cs.homology->has_degree(d))
            degrees.push_back(d);
    for (int d : degrees) {
        if (cs.homology->dim(d) != ct.homology->dim(d))
            return false;
        const Matrix ind = induced_on_cohomology(f, cs, ct, d);
        if (ind.rank() != cs.homology->dim(d))
            return false;
    }
    return true;
}

} // namespace ainfty
