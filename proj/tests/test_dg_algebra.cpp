#include <ainfty/dg_algebra.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using namespace ainfty;

TEST_CASE("validate accepts the named algebras") {
    CHECK(validate(fixtures::exterior_two()).ok());
    CHECK(validate(fixtures::truncated_heisenberg()).ok());
    CHECK(validate(fixtures::full_heisenberg()).ok());
}

TEST_CASE("validate rejects a corrupted differential with witnesses") {
    DgAlgebra A = fixtures::full_heisenberg();
    GradedMap d(A.space, A.space, 1);
    Matrix block(3, 3);
    block(1, 2) = 1; // dz := xz instead of xy
    d.set_block(1, block);
    A.d = d;

    const ValidationReport rep = validate(A);
    CHECK_FALSE(rep.ok());
    bool saw_leibniz_with_z = false;
    for (const auto& v : rep.violations)
        if (v.identity == "leibniz" && v.witness.find("z") != std::string::npos)
            saw_leibniz_with_z = true;
    CHECK(saw_leibniz_with_z);
}

TEST_CASE("validate flags broken unit and associativity") {
    DgAlgebra A = fixtures::exterior_two();
    // break the unit row: 1·x := 0
    MultilinearMap mu(2, A.space, A.space, 0);
    for (const auto& [k, v] : A.product.entries()) {
        if (k[0] == A.space->flat_index(0, 0) && k[1] == A.space->flat_index(1, 0))
            continue;
        mu.add_entry(k, v);
    }
    A.product = mu;
    const ValidationReport rep = validate(A);
    bool unit_fail = false;
    for (const auto& v : rep.violations)
        unit_fail = unit_fail || v.identity == "unit";
    CHECK(unit_fail);
}

TEST_CASE("random Sullivan-type algebras validate exactly") {
    fixtures::Rng rng(0x5eed020);
    for (int trial = 0; trial < 40; ++trial) {
        const DgAlgebra A = fixtures::random_dg_algebra(rng);
        const ValidationReport rep = validate(A);
        INFO(rep.to_string());
        CHECK(rep.ok());
        for (int d : A.space->support())
            CHECK(A.space->dim(d) <= 4);
    }
}

TEST_CASE("zero differential: induced product equals the ambient product") {
    const DgAlgebra A = fixtures::exterior_two();
    const CohomologyAlgebra H = induced_cohomology_algebra(A);
    const auto& S = *A.space;
    const auto& HS = *H.space();
    REQUIRE(HS.total_dim() == S.total_dim());
    for (int da : S.support())
        for (int db : S.support())
            for (std::size_t ia = 0; ia < S.dim(da); ++ia)
                for (std::size_t ib = 0; ib < S.dim(db); ++ib) {
                    const Vec away = A.multiply(Vec::basis(S, da, ia), Vec::basis(S, db, ib));
                    const Vec home = H.multiply(Vec::basis(HS, da, ia), Vec::basis(HS, db, ib));
                    CHECK(home.c == away.c);
                }
}

TEST_CASE("truncated Heisenberg has trivial reduced products") {
    const CohomologyAlgebra H = induced_cohomology_algebra(fixtures::truncated_heisenberg());
    // [x][y] = 0 because xy is exact
    const Vec xy = H.multiply(Vec::basis(*H.space(), 1, 0), Vec::basis(*H.space(), 1, 1));
    CHECK(xy.is_zero());
    CHECK(is_reduced_product_trivial(H));
    // nonzero positive classes but no nonzero 2-fold products
    CHECK(cup_length(H) == 1);
}

TEST_CASE("full Heisenberg has a nonzero reduced product") {
    const CohomologyAlgebra H = induced_cohomology_algebra(fixtures::full_heisenberg());
    // [x]·[yz] = [xyz] ≠ 0 since nothing in degree 3 is exact
    const Vec v = H.multiply(Vec::basis(*H.space(), 1, 0), Vec::basis(*H.space(), 2, 1));
    CHECK_FALSE(v.is_zero());
    CHECK_FALSE(is_reduced_product_trivial(H));
    CHECK(cup_length(H) == 2);
}

TEST_CASE("induced product is associative and representative-independent") {
    fixtures::Rng rng(0x5eed021);
    for (int trial = 0; trial < 15; ++trial) {
        const DgAlgebra A = fixtures::random_dg_algebra(rng);
        const CohomologyAlgebra H = induced_cohomology_algebra(A);
        const auto& HS = *H.space();

        // associativity on all basis triples
        for (int da : HS.support())
            for (int db : HS.support())
                for (int dc : HS.support())
                    for (std::size_t ia = 0; ia < HS.dim(da); ++ia)
                        for (std::size_t ib = 0; ib < HS.dim(db); ++ib)
                            for (std::size_t ic = 0; ic < HS.dim(dc); ++ic) {
                                const Vec a = Vec::basis(HS, da, ia);
                                const Vec b = Vec::basis(HS, db, ib);
                                const Vec c = Vec::basis(HS, dc, ic);
                                CHECK(H.multiply(H.multiply(a, b), c) ==
                                      H.multiply(a, H.multiply(b, c)));
                            }

        // perturb every representative by a random exact cochain
        GradedMap r(H.space(), A.space, -1);
        for (int d : HS.support()) {
            if (A.space->dim(d - 1) == 0)
                continue;
            Matrix block(A.space->dim(d - 1), HS.dim(d));
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    block(i, j) = rng.small_rational();
            r.set_block(d, block);
        }
        const GradedMap i_pert = H.contraction.include + GradedMap::compose(A.d, r);

        for (int da : HS.support())
            for (int db : HS.support())
                for (std::size_t ia = 0; ia < HS.dim(da); ++ia)
                    for (std::size_t ib = 0; ib < HS.dim(db); ++ib) {
                        const Vec a = i_pert.apply(Vec::basis(HS, da, ia));
                        const Vec b = i_pert.apply(Vec::basis(HS, db, ib));
                        const Vec pert = H.contraction.project.apply(A.multiply(a, b));
                        const Vec orig =
                            H.multiply(Vec::basis(HS, da, ia), Vec::basis(HS, db, ib));
                        CHECK(pert == orig);
                    }
    }
}

TEST_CASE("cup_length <= 1 iff the reduced product is trivial") {
    fixtures::Rng rng(0x5eed022);
    for (int trial = 0; trial < 25; ++trial) {
        const DgAlgebra A = fixtures::random_dg_algebra(rng);
        const CohomologyAlgebra H = induced_cohomology_algebra(A);
        CHECK((cup_length(H) <= 1) == is_reduced_product_trivial(H));
    }
}

TEST_CASE("reduced subalgebra drops the unit and stays a valid dg-algebra") {
    const DgAlgebra A = fixtures::truncated_heisenberg();
    std::vector<Rational> basepoint(A.space->dim(0));
    basepoint[0] = 1; // evaluation against the single degree-0 coordinate
    const DgAlgebra R = reduced_subalgebra(A, basepoint);
    CHECK_FALSE(R.unital);
    CHECK(R.space->dim(0) == 0);
    CHECK(R.space->dim(1) == 3);
    CHECK(validate(R).ok());
    const CohomologyAlgebra H = induced_cohomology_algebra(R);
    CHECK(H.space()->dim(1) == 2);
    CHECK(H.space()->dim(2) == 2);
}

TEST_CASE("augmented complex has the reduced cohomology") {
    const DgAlgebra A = fixtures::truncated_heisenberg();
    const ChainComplex aug = augmented_complex(A);
    const ContractionData c = cohomology(aug);
    CHECK(c.homology->dim(-1) == 0);
    CHECK(c.homology->dim(0) == 0);
    CHECK(c.homology->dim(1) == 2);
    CHECK(c.homology->dim(2) == 2);
}

TEST_CASE("disconnected input is rejected for reduction and augmentation") {
    // the algebra of functions on two points
    fixtures::AlgebraBuilder b;
    b.basis = {{0, {"a", "b"}}};
    b.unital = false;
    b.prod = {{"a", "a", "a", 1}, {"b", "b", "b", 1}};
    DgAlgebra A = b.build();
    A.unital = true;
    Vec unit = Vec::zero(*A.space, 0);
    unit.c[0] = 1;
    unit.c[1] = 1;
    A.unit = unit;
    REQUIRE(validate(A).ok());
    CHECK(component_count(A) == 2);
    CHECK_THROWS_AS(reduced_subalgebra(A, {Rational(1), Rational(0)}), malformed_input);
    CHECK_THROWS_AS(augmented_complex(A), malformed_input);
}
