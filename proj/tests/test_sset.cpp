#include "doctest.h"

#include "boundaries/groupoid.hpp"
#include "boundaries/kan.hpp"
#include "boundaries/prism.hpp"

using namespace boundaries;

namespace {
long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

TEST_CASE("standard simplices") {
    auto d0 = standard_simplex(0, 2);
    CHECK(d0->sizes() == std::vector<std::size_t>{1, 1, 1});
    auto d1 = standard_simplex(1, 2);
    CHECK(d1->count(2) == 4);
    CHECK(d1->nondegenerate_count(2) == 0);
    auto d2 = standard_simplex(2, 2);
    CHECK(d2->nondegenerate_count(2) == 1);
    for (auto s : {d0, d1, d2}) CHECK(s->validate().empty());
    CHECK_THROWS_AS(standard_simplex(1, -1), InputError);
}

TEST_CASE("horns") {
    // Lambda^1_0 is the face d_1 only: the vertex 0
    auto h10 = horn(1, 0, 2);
    CHECK(h10.src->count(0) == 1);
    CHECK(h10.src->nondegenerate_count(1) == 0);
    auto h21 = horn(2, 1, 3);
    CHECK(h21.src->count(0) == 3);
    CHECK(h21.src->nondegenerate_count(1) == 2);
    CHECK(h21.src->nondegenerate_count(2) == 0);
    CHECK(h21.src->validate().empty());
    CHECK(h21.validate().empty());
    CHECK_THROWS_AS(horn(2, 3, 3), InputError);
    CHECK_THROWS_AS(horn(0, 0, 3), InputError);
}

TEST_CASE("group nerves") {
    auto n2 = nerve_of_group(Group::cyclic(2), 3);
    CHECK(n2->set()->sizes() == std::vector<std::size_t>{1, 2, 4, 8});
    for (int n = 0; n <= 3; ++n) CHECK(n2->set()->nondegenerate_count(n) == 1);
    auto n1 = nerve_of_group(Group::trivial(), 3);
    CHECK(n1->set()->sizes() == std::vector<std::size_t>{1, 1, 1, 1});
    for (int n = 1; n <= 3; ++n) CHECK(n1->set()->nondegenerate_count(n) == 0);
    auto s3 = nerve_of_group(Group::symmetric3(), 3);
    CHECK(s3->set()->validate().empty());
    CHECK_THROWS_AS(Group::from_table({{0, 1}, {1, 1}}), InputError);
    try {
        Group::from_table({{0, 1, 2}, {1, 0, 0}, {2, 0, 0}});
        FAIL("expected rejection");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("fails") != std::string::npos);
    }
}

TEST_CASE("products") {
    auto d1 = standard_simplex(1, 3);
    auto sq = product(d1, d1);
    CHECK(sq.set->nondegenerate_count(2) == 2);
    CHECK(sq.set->validate().empty());
    CHECK(sq.pr1.validate().empty());
    auto y = nerve_of_group(Group::cyclic(3), 3)->set();
    auto py = product(standard_simplex(0, 3), y);
    CHECK(py.set->sizes() == y->sizes());
    CHECK(py.pr2.validate().empty());
    auto pr = product(standard_simplex(2, 3), d1);
    CHECK(pr.set->nondegenerate_count(3) == 3);
    CHECK_THROWS_AS(product(d1, standard_simplex(1, 2)), InputError);
}

TEST_CASE("nondegenerate top simplices of prisms count shuffles") {
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q + p <= 4; ++q) {
            auto pr = product(standard_simplex(p, p + q), standard_simplex(q, p + q));
            CHECK(pr.set->nondegenerate_count(p + q) == static_cast<std::size_t>(binom(p + q, p)));
            CHECK(PrismShape(p, q).count() == binom(p + q, p));
        }
}

TEST_CASE("prism maps") {
    auto pt = standard_simplex(0, 4);
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) CHECK(enumerate_prism_maps(*pt, p, q).size() == 1);
    auto x = nerve_of_group(Group::cyclic(2), 3)->set();
    for (int q = 0; q <= 3; ++q) CHECK(enumerate_prism_maps(*x, 0, q).size() == x->count(q));
    // functors [1]x[1] -> Z/2: one free value per edge of a spanning tree
    auto m11 = enumerate_prism_maps(*x, 1, 1);
    CHECK(m11.size() == 8);
    CHECK(count_prism_maps_bruteforce(*x, 1, 1) == 8);
    auto x3 = nerve_of_group(Group::cyclic(3), 3)->set();
    CHECK(enumerate_prism_maps(*x3, 1, 2).size() == static_cast<Id>(count_prism_maps_bruteforce(*x3, 1, 2)));
    auto c = circle_model(3);
    CHECK(enumerate_prism_maps(*c, 1, 1).size() == static_cast<Id>(count_prism_maps_bruteforce(*c, 1, 1)));
    CHECK_THROWS_AS(enumerate_prism_maps(*x, 2, 2), InputError);
}

TEST_CASE("kan fibrations") {
    auto g = Group::cyclic(4);
    auto q = Group::cyclic(2);
    auto ng = nerve_of_group(g, 4), nq = nerve_of_group(q, 4);
    Homomorphism h{&g, &q, {0, 1, 0, 1}};
    auto f = nerve_map(*ng, *nq, h);
    CHECK(f.validate().empty());
    CHECK(is_kan_fibration_up_to(f, 3).ok);
    auto d1 = standard_simplex(1, 3);
    auto pt = standard_simplex(0, 3);
    auto r = is_kan_fibration_up_to(SimplicialMap::to_point(d1, pt), 2);
    REQUIRE(!r.ok);
    REQUIRE(r.witness);
    CHECK(r.witness->n == 2);
    CHECK(r.witness->k == 0);
    // monotone in the dimension bound
    CHECK(!is_kan_fibration_up_to(SimplicialMap::to_point(d1, pt), 3).ok);
    CHECK(is_kan_fibration_up_to(SimplicialMap::identity(d1), 3).ok);
}

TEST_CASE("fibers") {
    auto x = nerve_of_group(Group::cyclic(2), 4)->set();
    auto z = nerve_of_group(Group::cyclic(3), 4)->set();
    auto pr = product(x, z);
    auto fb = fiber_over(pr.pr1, 0, 0);
    CHECK(fb.set->sizes() == z->sizes());
    CHECK(fb.set->validate().empty());
    CHECK(fb.iota.validate().empty());
    auto fid = fiber_over(SimplicialMap::identity(x), 1, 1);
    for (int q = 0; q <= fid.set->trunc(); ++q) CHECK(fid.set->count(q) == 1);
    auto g = Group::cyclic(4);
    auto qg = Group::cyclic(2);
    auto ng = nerve_of_group(g, 4), nq = nerve_of_group(qg, 4);
    auto f = nerve_map(*ng, *nq, Homomorphism{&g, &qg, {0, 1, 0, 1}});
    auto fz = fiber_over(f, 0, 0);
    CHECK(fz.set->sizes() == std::vector<std::size_t>{1, 2, 4, 8, 16});
    auto f1 = fiber_over(f, 1, 1);
    CHECK(f1.set->validate().empty());
    CHECK(f1.set->count(0) == 2);
}

TEST_CASE("fundamental groupoid") {
    for (auto g : {Group::cyclic(4), Group::symmetric3(), Group::product(Group::cyclic(2), Group::cyclic(2))}) {
        auto n = nerve_of_group(g, 2);
        auto pg = fundamental_groupoid(*n->set());
        CHECK(pg.relations.size() == static_cast<std::size_t>(n->set()->count(2)));
        CHECK(pg.components == 1);
        auto vg = vertex_group(pg, 0);
        CHECK(todd_coxeter_order(vg) == g.order());
        CHECK(todd_coxeter_order(tietze_simplify(vg)) == g.order());
    }
    auto d3 = standard_simplex(3, 3);
    auto pd = fundamental_groupoid(*d3);
    auto vd = tietze_simplify(vertex_group(pd, 0));
    CHECK(vd.generators == 0);
    auto c = fundamental_groupoid(*circle_model(2));
    auto vc = tietze_simplify(vertex_group(c, 0));
    CHECK(vc.generators == 1);
    CHECK(vc.relators.empty());
    CHECK_THROWS_AS(fundamental_groupoid(*standard_simplex(1, 1)), InputError);
}

TEST_CASE("random simplicial sets satisfy the identities") {
    // products of nerves and simplices, sampled
    std::vector<SSetPtr> pool = {standard_simplex(1, 3), standard_simplex(2, 3), circle_model(3),
                                 nerve_of_group(Group::cyclic(3), 3)->set(), horn(3, 1, 3).src};
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            auto p = product(pool[i], pool[j]);
            CHECK(p.set->validate().empty());
            CHECK(p.pr1.validate().empty());
            CHECK(p.pr2.validate().empty());
        }
}
