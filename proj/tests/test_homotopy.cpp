#include "doctest.h"
#include "helpers.hpp"

#include "boundaries/homotopy.hpp"
#include "boundaries/instances.hpp"

using namespace testutil;

TEST_CASE("constant homotopy has zero defect") {
    auto h = poset_homotopy(1, 2, [](int a, int) { return a + 1; }, 4);
    CHECK(h.g.validate().empty());
    auto sys = CoefficientSystem<Q>::constant(h.g.tgt, SeminormedModule<Q>::sup(1));
    sys.validate();
    auto p = prism_homotopy(h.cyl, h.g, sys, 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(homotopy_defect(p, n).is_zero_matrix());
        CHECK(p.c0[n].equals(p.c1[n]));
    }
    // n = 1: one prism term per vertex
    CHECK(p.h[1].rows() == 2);
    for (Index r = 0; r < p.h[1].rows(); ++r) CHECK(p.h[1].row_end(r) - p.h[1].row_begin(r) == 1);
}

TEST_CASE("prism homotopies with twisted coefficients") {
    std::mt19937_64 rng(7);
    int done = 0;
    for (int trial = 0; trial < 6; ++trial) {
        int k = 1 + trial % 2, m = 2 + trial % 2;
        // g(a,0) = a, g(a,1) = m: contraction onto the last vertex after inclusion
        auto h = poset_homotopy(k, m, [&](int a, int t) { return t ? m : a; }, 4);
        REQUIRE(h.g.validate().empty());
        auto sys = random_gauge_system<Q>(h.g.tgt, 2, rng);
        REQUIRE(sys.validate().empty());
        auto p = prism_homotopy(h.cyl, h.g, sys, 3);
        for (int n = 0; n <= 3; ++n) CHECK(homotopy_defect(p, n).is_zero_matrix());
        for (int n = 1; n <= 3; ++n) {
            auto nv = operator_seminorm(p.h[n].to_dense(), p.cy.modules[n], p.cx.modules[n - 1]);
            CHECK(nv.value <= Q(n));
        }
        ++done;
    }
    CHECK(done == 6);
}

TEST_CASE("conjugation homotopy on group nerves") {
    std::mt19937_64 rng(11);
    Group s3 = Group::symmetric3(), z2 = Group::cyclic(2);
    auto ns = nerve_of_group(s3, 4), nz = nerve_of_group(z2, 4);
    // Z/2 -> S3 onto a transposition, conjugated by every element
    int t = -1;
    for (int g = 0; g < 6; ++g)
        if (g != s3.identity() && s3.mul(g, g) == s3.identity()) t = g;
    Homomorphism phi{&z2, &s3, {s3.identity(), t}};
    REQUIRE(phi.check().empty());
    std::vector<Matrix<Q>> rho;
    for (int g = 0; g < 6; ++g) {
        bool odd = g != s3.identity() && s3.mul(g, g) == s3.identity();
        rho.push_back(mat({{odd ? -1 : 1}}));
    }
    auto sys = action_system<Q>(*ns, s3, rho, SeminormedModule<Q>::sup(1));
    REQUIRE(sys.validate().empty());
    for (int c = 0; c < 6; ++c) {
        auto h = conjugation_homotopy(*nz, *ns, phi, c);
        REQUIRE(h.g.validate().empty());
        auto p = prism_homotopy(h.cyl, h.g, sys, 3);
        for (int n = 0; n <= 3; ++n) CHECK(homotopy_defect(p, n).is_zero_matrix());
    }
    (void)rng;
}
