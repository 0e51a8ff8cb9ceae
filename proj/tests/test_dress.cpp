#include "doctest.h"

#include "boundaries/dress.hpp"
#include "boundaries/oracle.hpp"
#include "helpers.hpp"

using namespace testutil;

namespace {

using F2 = Mod<2>;

template <class T>
std::shared_ptr<const CoefficientSystem<T>> constant_system(SSetPtr x, const SeminormedModule<T>& m) {
    auto a = CoefficientSystem<T>::constant(x, m);
    a.validate();
    return std::make_shared<const CoefficientSystem<T>>(std::move(a));
}

struct Extension {
    Group g = Group::cyclic(4), q = Group::cyclic(2);
    std::shared_ptr<Nerve> ng, nq;
    SimplicialMap f;
    explicit Extension(int N) {
        ng = nerve_of_group(g, N);
        nq = nerve_of_group(q, N);
        f = nerve_map(*ng, *nq, Homomorphism{&g, &q, {0, 1, 0, 1}});
    }
};

}  // namespace

TEST_CASE("bisimplex sets") {
    auto pt = standard_simplex(0, 4);
    auto g0 = bisimplex_grid(SimplicialMap::identity(pt), 4);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) CHECK(g0.count(p, q) == 1);
    // f = id: sigma factors through pr1, so S_{p,q} ~ X_p
    auto x = nerve_of_group(Group::cyclic(3), 4)->set();
    auto gi = bisimplex_grid(SimplicialMap::identity(x), 4);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) CHECK(gi.count(p, q) == x->count(p));
    CHECK(check_bisimplex_grid(gi).empty());
    // pr1: X x Z -> X splits as X_p times prism maps into Z
    auto b = nerve_of_group(Group::cyclic(2), 4)->set();
    auto pr = product(b, x);
    auto gp = bisimplex_grid(pr.pr1, 4);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            CHECK(gp.count(p, q) == b->count(p) * enumerate_prism_maps(*x, p, q).size());
    CHECK(check_bisimplex_grid(gp).empty());
    CHECK_THROWS_AS(bisimplex_grid(pr.pr1, 5), InputError);
}

TEST_CASE("double complex of the point") {
    auto pt = standard_simplex(0, 4);
    auto d = build_double_complex(SimplicialMap::identity(pt), *constant_system(pt, SeminormedModule<Q>::sup(1)), 4);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q + 1 <= 4; ++q) {
            CHECK(d.dim(p, q) == 1);
            // sum of p+2 alternating signs; d_v carries (-1)^p
            CHECK(d.dh[p][q].at(0, 0) == Q(p % 2 ? 1 : 0));
            CHECK(d.dv[p][q].at(0, 0) == Q(q % 2 ? (p % 2 ? -1 : 1) : 0));
        }
    auto fr = filtration_ranks(d, Filtration::II);
    for (int n = 0; n <= 3; ++n) CHECK(fr.total_rank(n) == (n == 0 ? 1u : 0u));
    CHECK(total_cohomology(d, 0).rank() == 1);
    CHECK(total_cohomology(d, 2).rank() == 0);
}

TEST_CASE("double complex exactness on the Z/4 extension") {
    Extension e(4);
    auto rho = [](int k) { return mat({{k % 2 ? -1 : 1}}); };
    std::vector<Matrix<Q>> sig;
    for (int k = 0; k < 4; ++k) sig.push_back(rho(k));
    auto a = action_system<Q>(*e.ng, e.g, sig, SeminormedModule<Q>::sup(1));
    REQUIRE(a.validate().empty());
    auto d = build_double_complex(e.f, a, 4);
    CHECK(!check_double_complex(d));
    CHECK(check_bisimplex_grid(*d.grid).empty());
    CHECK(d.modules[1][1].weights().front() == Q(1));
    // a corrupted differential is caught with a bisimplex location
    auto bad = d;
    bad.dv[0][1] = bad.dv[0][1] + bad.dv[0][1];
    auto msg = check_double_complex(bad);
    REQUIRE(msg);
    CHECK(msg->find("bisimplex") != std::string::npos);
}

TEST_CASE("filtration I collapses onto the total space") {
    Extension e(4);
    auto a = constant_system(e.ng->set(), SeminormedModule<F2>::trivial(1));
    auto d = build_double_complex(e.f, *a, 4);
    auto fr = filtration_ranks(d, Filtration::I);
    auto cx = build_cochain_complex(a, 4);
    for (int n = 0; n <= 3; ++n)
        for (int s = 0; s <= n; ++s)
            CHECK(fr.page_rank(2, s, n) == (s == 0 ? bounded_cohomology(cx, n).rank() : 0u));
}

TEST_CASE("extension spectral sequence over F2") {
    Extension e(4);
    auto a = constant_system(e.ng->set(), SeminormedModule<F2>::trivial(1));
    auto d = build_double_complex(e.f, *a, 4);
    auto fr = filtration_ranks(d, Filtration::II);
    bool nonzero = false;
    for (int n = 0; n <= 3; ++n) {
        for (int s = 0; s <= n; ++s) {
            CHECK(fr.page_rank(2, s, n) == 1);
            nonzero = nonzero || fr.differential_rank(2, s, n) > 0 || fr.differential_rank(3, s, n) > 0;
        }
        CHECK(fr.total_rank(n) == ordinary_cohomology_oracle(*e.ng->set(), OracleRing::ModP, n, 2).rank);
    }
    CHECK(nonzero);
    for (auto filt : {Filtration::II, Filtration::I}) {
        auto fails = check_pages(d, filt, 3);
        for (auto& m : fails) MESSAGE(m);
        CHECK(fails.empty());
    }
}

TEST_CASE("product fibration over Q") {
    auto b = nerve_of_group(Group::cyclic(2), 4)->set();
    auto z = nerve_of_group(Group::cyclic(3), 4)->set();
    auto pr = product(b, z);
    auto a = constant_system(pr.set, SeminormedModule<Q>::trivial(1));
    auto d = build_double_complex(pr.pr1, *a, 4);
    auto fr = filtration_ranks(d, Filtration::II);
    for (int n = 0; n <= 3; ++n) {
        for (int s = 0; s <= n; ++s) CHECK(fr.page_rank(2, s, n) == (n == 0 ? 1u : 0u));
        CHECK(fr.total_rank(n) == ordinary_cohomology_oracle(*pr.set, OracleRing::Rationals, n).rank);
    }
}

TEST_CASE("fiber coefficient system of the extension") {
    Extension e(4);
    auto a = constant_system(e.ng->set(), SeminormedModule<F2>::trivial(1));
    auto fcs = fiber_coefficient_system(e.f, *a, 1);
    CHECK(fcs.violations.empty());
    CHECK(fcs.system.rank(0) == 1);
    for (auto& [edge, m] : fcs.system.edges()) CHECK(m.equals(Matrix<F2>::identity(1)));
    auto d = build_double_complex(e.f, *a, 4);
    for (int p = 0; p <= 2; ++p) {
        auto r = e2_identification_check(d, fcs, p);
        CHECK(r.ok());
        CHECK(r.rank_e2 == 1);
    }
}

TEST_CASE("E2 identification with sup norms") {
    // circle base, fiber N(Z/2): classes with nonzero seminorms
    auto s1 = circle_model(4);
    auto z = nerve_of_group(Group::cyclic(2), 4)->set();
    auto pr = product(s1, z);
    auto a = constant_system(pr.set, SeminormedModule<Q>::sup(1));
    auto d = build_double_complex(pr.pr1, *a, 4);
    for (int q = 0; q <= 1; ++q) {
        auto fcs = fiber_coefficient_system(pr.pr1, *a, q);
        for (int p = 0; p + q <= 3; ++p) {
            auto r = e2_identification_check(d, fcs, p);
            INFO("p=", p, " q=", q, " ", r.note);
            CHECK(r.ok());
        }
    }
    CHECK(check_pages(d, Filtration::II, 3).empty());
}

TEST_CASE("serial and parallel double complex assembly agree") {
    Group g = Group::symmetric3(), q = Group::cyclic(2);
    auto ng = nerve_of_group(g, 4), nq = nerve_of_group(q, 4);
    std::vector<int> sign(6);
    for (int x = 0; x < 6; ++x) sign[x] = x != g.identity() && g.mul(x, x) == g.identity() ? 1 : 0;
    auto f = nerve_map(*ng, *nq, Homomorphism{&g, &q, sign});
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(f, 4));
    auto a = constant_system(ng->set(), SeminormedModule<Q>::sup(2));
    auto par = build_double_complex(grid, a, false, Assembly::Parallel);
    auto ser = build_double_complex(grid, a, false, Assembly::Serial);
    for (std::size_t p = 0; p < par.dh.size(); ++p)
        for (std::size_t k = 0; k < par.dh[p].size(); ++k) {
            CHECK(par.dh[p][k].identical(ser.dh[p][k]));
            CHECK(par.dv[p][k].identical(ser.dv[p][k]));
        }
}
