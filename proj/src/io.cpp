#include "boundaries/io.hpp"

#include <fstream>
#include <sstream>

namespace boundaries {

json load_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(p.string() + ": " + e.what());
    }
}

json sset_to_json(const SimplicialSet& x) {
    json j;
    j["schema"] = "sset.v1";
    j["trunc_dim"] = x.trunc();
    json simp = json::array(), faces = json::array(), degs = json::array();
    for (int n = 0; n <= x.trunc(); ++n) {
        json ids = json::array(), fn = json::array(), dn = json::array();
        for (Id s = 0; s < x.count(n); ++s) {
            ids.push_back(s);
            json f = json::array();
            for (int i = 0; n > 0 && i <= n; ++i) f.push_back(x.face(n, i, s));
            fn.push_back(std::move(f));
            if (n < x.trunc()) {
                json d = json::array();
                for (int i = 0; i <= n; ++i) d.push_back(x.degen(n, i, s));
                dn.push_back(std::move(d));
            }
        }
        simp.push_back(std::move(ids));
        faces.push_back(std::move(fn));
        if (n < x.trunc()) degs.push_back(std::move(dn));
    }
    j["simplices"] = std::move(simp);
    j["faces"] = std::move(faces);
    j["degeneracies"] = std::move(degs);
    return j;
}

SSetPtr sset_from_json(const json& j) {
    try {
        if (j.value("schema", std::string("sset.v1")) != "sset.v1") throw InputError("expected schema sset.v1");
        const int N = j.at("trunc_dim").get<int>();
        if (N < 0) throw InputError("trunc_dim must be nonnegative");
        const auto& simp = j.at("simplices");
        const auto& faces = j.at("faces");
        const auto& degs = j.at("degeneracies");
        if (static_cast<int>(simp.size()) != N + 1) throw InputError("simplices must list dimensions 0..trunc_dim");
        std::vector<Id> counts;
        for (int n = 0; n <= N; ++n) {
            const auto& ids = simp[n];
            for (std::size_t k = 0; k < ids.size(); ++k)
                if (ids[k].get<Id>() != static_cast<Id>(k))
                    throw InputError("simplex ids in dimension " + std::to_string(n) + " must be 0,1,2,...");
            counts.push_back(static_cast<Id>(ids.size()));
        }
        SimplicialSet::Table ft(N + 1), dt(N + 1);
        auto in_range = [&](Id v, int n, const char* what) {
            if (v < 0 || v >= counts[n])
                throw InputError(std::string(what) + " value " + std::to_string(v) + " is not a simplex of dimension " +
                                 std::to_string(n));
            return v;
        };
        for (int n = 1; n <= N; ++n) {
            if (faces.size() <= static_cast<std::size_t>(n) || faces[n].size() != static_cast<std::size_t>(counts[n]))
                throw InputError("faces of dimension " + std::to_string(n) + " are incomplete");
            ft[n].assign(n + 1, std::vector<Id>(counts[n]));
            for (Id s = 0; s < counts[n]; ++s) {
                const auto& f = faces[n][s];
                if (f.size() != static_cast<std::size_t>(n + 1)) throw InputError("each n-simplex needs n+1 faces");
                for (int i = 0; i <= n; ++i) ft[n][i][s] = in_range(f[i].get<Id>(), n - 1, "face");
            }
        }
        for (int n = 0; n < N; ++n) {
            if (degs.size() <= static_cast<std::size_t>(n) || degs[n].size() != static_cast<std::size_t>(counts[n]))
                throw InputError("degeneracies of dimension " + std::to_string(n) + " are incomplete");
            dt[n].assign(n + 1, std::vector<Id>(counts[n]));
            for (Id s = 0; s < counts[n]; ++s) {
                const auto& d = degs[n][s];
                if (d.size() != static_cast<std::size_t>(n + 1)) throw InputError("each n-simplex needs n+1 degeneracies");
                for (int i = 0; i <= n; ++i) dt[n][i][s] = in_range(d[i].get<Id>(), n + 1, "degeneracy");
            }
        }
        auto x = std::make_shared<const SimplicialSet>(N, std::move(counts), std::move(ft), std::move(dt));
        auto v = x->validate(1);
        if (!v.empty()) throw InputError("simplicial identity fails: " + v.front());
        return x;
    } catch (const json::exception& e) {
        throw InputError(std::string("sset.v1: ") + e.what());
    }
}

SSetPtr sset_ref(const json& j, const std::filesystem::path& dir) {
    if (j.is_string()) return sset_from_json(load_json_file(dir / j.get<std::string>()));
    return sset_from_json(j);
}

json map_to_json(const SimplicialMap& f) {
    json j;
    j["schema"] = "map.v1";
    j["source"] = sset_to_json(*f.src);
    j["target"] = sset_to_json(*f.tgt);
    j["components"] = f.comp;
    return j;
}

SimplicialMap map_from_json(const json& j, const std::filesystem::path& dir) {
    try {
        if (j.value("schema", std::string("map.v1")) != "map.v1") throw InputError("expected schema map.v1");
        SimplicialMap f;
        f.src = sset_ref(j.at("source"), dir);
        f.tgt = sset_ref(j.at("target"), dir);
        const int N = std::min(f.src->trunc(), f.tgt->trunc());
        const auto& c = j.at("components");
        if (c.size() < static_cast<std::size_t>(N + 1)) throw InputError("components must cover dimensions 0..N");
        for (int n = 0; n <= N; ++n) {
            auto v = c[n].get<std::vector<Id>>();
            if (static_cast<Id>(v.size()) != f.src->count(n))
                throw InputError("component in dimension " + std::to_string(n) + " has the wrong length");
            for (Id y : v)
                if (y < 0 || y >= f.tgt->count(n)) throw InputError("component value out of range");
            f.comp.push_back(std::move(v));
        }
        auto v = f.validate(1);
        if (!v.empty()) throw InputError("not a simplicial map: " + v.front());
        return f;
    } catch (const json::exception& e) {
        throw InputError(std::string("map.v1: ") + e.what());
    }
}

Group group_from_json(const json& j) {
    try {
        if (j.contains("cyclic")) return Group::cyclic(j["cyclic"].get<int>());
        if (j.contains("symmetric3")) return Group::symmetric3();
        if (j.contains("product")) {
            const auto& p = j["product"];
            if (!p.is_array() || p.size() != 2) throw InputError("product needs two groups");
            return Group::product(group_from_json(p[0]), group_from_json(p[1]));
        }
        return Group::from_table(j.at("table").get<std::vector<std::vector<int>>>());
    } catch (const json::exception& e) {
        throw InputError(std::string("group: ") + e.what());
    }
}

}  // namespace boundaries
