#include "doctest.h"

#include "boundaries/scenario.hpp"
#include "helpers.hpp"

using namespace testutil;

namespace {

json z4_extension(const std::string& scalar, int N) {
    auto j = json::parse(R"({
      "schema": "scenario.v1", "kind": "extension",
      "extension": {"kernel": {"cyclic": 2}, "group": {"cyclic": 4}, "quotient": {"cyclic": 2},
                    "inclusion": [0, 2], "projection": [0, 1, 0, 1]},
      "coefficients": {"constant": {"rank": 1, "norm": "trivial"}}})");
    j["scalar"] = scalar;
    j["trunc_dim"] = N;
    return j;
}

const CheckResult* find_check(const RunReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("sset and map json round trip") {
    auto n = nerve_of_group(Group::cyclic(3), 3);
    auto x = n->set();
    auto back = sset_from_json(json::parse(sset_to_json(*x).dump()));
    REQUIRE(back->trunc() == 3);
    for (int k = 0; k <= 3; ++k) CHECK(back->count(k) == x->count(k));
    for (Id s = 0; s < x->count(2); ++s)
        for (int i = 0; i <= 2; ++i) CHECK(back->face(2, i, s) == x->face(2, i, s));

    auto p = product(x, standard_simplex(1, 3));
    auto f = map_from_json(json::parse(map_to_json(p.pr1).dump()));
    CHECK(f.comp == p.pr1.comp);
}

TEST_CASE("malformed inputs are input errors") {
    auto j = sset_to_json(*standard_simplex(1, 2));
    j["faces"][1][0][0] = 7;
    CHECK_THROWS_AS(sset_from_json(j), InputError);
    CHECK_THROWS_AS(parse_scenario(json::parse(R"({"kind": "torus"})")), InputError);
    CHECK_THROWS_AS(parse_scenario(z4_extension("F4", 3)), InputError);

    // kernel is not the image of the inclusion
    auto bad = z4_extension("F2", 3);
    bad["extension"]["projection"] = {0, 1, 1, 0};
    CHECK_THROWS_AS(run_scenario(parse_scenario(bad)), InputError);

    auto x = standard_simplex(1, 2);
    Id e = 0;
    while (!x->nondegenerate(1, e)) ++e;
    auto non_isometric = json::parse(R"({"constant": {"rank": 1}, "edges": [{"edge": 0, "matrix": [[2]]}]})");
    non_isometric["edges"][0]["edge"] = e;
    CHECK_THROWS_AS(coeff_from_json<Q>(non_isometric, x), ValidationError);
    non_isometric["edges"][0]["edge"] = e == 0 ? 1 : 0;
    CHECK_THROWS_AS(coeff_from_json<Q>(non_isometric, x), InputError);
}

TEST_CASE("coefficient json round trip") {
    auto n = nerve_of_group(Group::cyclic(2), 3);
    auto a = z2_system<Q>(*n, mat({{0, 1}, {1, 0}}), SeminormedModule<Q>::sup(2));
    auto b = coeff_from_json<Q>(json::parse(coeff_to_json(a).dump()), n->set());
    for (const auto& [e, m] : a.edges()) CHECK(b.edge(e).equals(m));
}

TEST_CASE("extension scenario report") {
    auto r = run_scenario(parse_scenario(z4_extension("F2", 4)));
    CHECK(r.passed());
    CHECK(r.exit_code() == 0);
    CHECK(r.total_ranks == std::vector<std::size_t>{1, 1, 1, 1});
    REQUIRE(find_check(r, "kan_fibration"));
    CHECK(find_check(r, "kan_fibration")->status == "pass");
    for (const auto& p : r.pages)
        if (p.r == 2 && p.certified) CHECK(p.rank == std::optional<std::size_t>(1));
}

TEST_CASE("reports are deterministic and the csv schema is fixed") {
    auto spec = parse_scenario(z4_extension("F2", 4));
    for (auto f : {ReportFormat::Text, ReportFormat::Csv, ReportFormat::Json}) {
        auto a = emit_report(run_scenario(spec), f);
        auto b = emit_report(run_scenario(spec), f);
        CHECK(a == b);
    }
    auto csv = emit_report(run_scenario(spec), ReportFormat::Csv);
    CHECK(csv.rfind("r,p,q,rank,certified", 0) == 0);
    auto j = json::parse(emit_report(run_scenario(spec), ReportFormat::Json));
    CHECK(j["schema"] == "report.v1");
    CHECK(!j.contains("timing"));
}

TEST_CASE("real seminorms in the report use fixed formatting") {
    auto spec = parse_scenario(json::parse(R"({"kind": "identity", "space": {"cyclic": 2}, "trunc_dim": 3,
                                                "scalar": "R", "checks": ["e2", "compare"]})"));
    auto r = run_scenario(spec);
    CHECK(r.passed());
    bool saw = false;
    for (const auto& p : r.pages)
        if (p.r == 2 && p.p == 0 && p.q == 0) {
            REQUIRE(p.seminorm_basis);
            CHECK((*p.seminorm_basis)[0] == "1");
            saw = true;
        }
    CHECK(saw);
}

TEST_CASE("failing kan check is reported with a witness") {
    auto d1 = standard_simplex(1, 3), d0 = standard_simplex(0, 3);
    SimplicialMap f;
    f.src = d1;
    f.tgt = d0;
    for (int n = 0; n <= 3; ++n) f.comp.push_back(std::vector<Id>(d1->count(n), 0));
    json j{{"kind", "custom"}, {"trunc_dim", 3}, {"custom", {{"map", map_to_json(f)}}}};
    auto r = run_scenario(parse_scenario(j));
    auto c = find_check(r, "kan_fibration");
    REQUIRE(c);
    CHECK(c->status == "fail");
    CHECK(!c->witness.empty());
    CHECK(r.exit_code() == 1);
}
