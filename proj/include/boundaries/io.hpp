#pragma once

#include "boundaries/coefficients.hpp"

#include <json.hpp>

#include <filesystem>

namespace boundaries {

using json = nlohmann::ordered_json;

json load_json_file(const std::filesystem::path& p);

// sset.v1: {"schema", "trunc_dim", "simplices": [[ids] per dim],
// "faces": [n][x] -> [d_0 x .. d_n x], "degeneracies": [n][x] -> [s_0 x .. s_n x]}
json sset_to_json(const SimplicialSet& x);
SSetPtr sset_from_json(const json& j);

// map.v1: {"schema", "source", "target", "components": [n][x]}; source and
// target are inline sset.v1 objects or paths relative to `dir`.
json map_to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const json& j, const std::filesystem::path& dir = {});
SSetPtr sset_ref(const json& j, const std::filesystem::path& dir);

// {"cyclic": n} | {"symmetric3": true} | {"table": [[...]]}
Group group_from_json(const json& j);

template <class T>
T scalar_from_json(const json& v) {
    Rational r;
    if (v.is_string()) r = Rational::parse(v.get<std::string>());
    else if (v.is_number_integer()) r = Rational(v.get<long long>());
    else if (v.is_number_float()) {
        if constexpr (std::is_same_v<T, double>) return v.get<double>();
        throw InputError("exact scalars must be integers or rational strings");
    } else throw InputError("scalar must be a number or a rational string");
    return field_traits<T>::from_rational(r);
}

template <class T>
std::string scalar_str(const T& x) {
    return field_traits<T>::str(x);
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_str(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

template <class T>
Matrix<T> matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix must be a nonempty array of rows");
    Matrix<T> m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != m.cols()) throw InputError("matrix rows have different lengths");
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = scalar_from_json<T>(j[i][k]);
    }
    return m;
}

namespace detail {

template <class T>
SeminormedModule<T> module_from_json(const json& j) {
    const std::size_t rank = j.at("rank").get<std::size_t>();
    std::string norm = j.value("norm", std::string("sup"));
    AmbientNorm kind;
    if (norm == "sup") kind = AmbientNorm::Sup;
    else if (norm == "l1") kind = AmbientNorm::L1;
    else if (norm == "trivial") return SeminormedModule<T>::trivial(rank);
    else throw InputError("unknown norm '" + norm + "'");
    std::vector<norm_t<T>> w(rank, norm_t<T>(1));
    if (j.contains("weights")) {
        if (j["weights"].size() != rank) throw InputError("weights must match the rank");
        for (std::size_t i = 0; i < rank; ++i) {
            const auto& v = j["weights"][i];
            Rational r = v.is_string() ? Rational::parse(v.get<std::string>()) : Rational(v.get<long long>());
            if (r < Rational(0)) throw InputError("weights must be nonnegative");
            if constexpr (std::is_same_v<norm_t<T>, double>) w[i] = r.to_double();
            else w[i] = r;
        }
    }
    return SeminormedModule<T>::weighted(std::move(w), kind);
}

template <class T>
json module_to_json(const SeminormedModule<T>& m) {
    json j;
    j["rank"] = m.rank();
    j["norm"] = m.kind() == AmbientNorm::Sup ? "sup" : "l1";
    json w = json::array();
    for (auto& x : m.weights()) w.push_back(norm_str(x));
    j["weights"] = std::move(w);
    return j;
}

}  // namespace detail

// coeff.v1: {"schema", "constant": module | "vertices": [module per vertex],
// "edges": [{"edge": id, "matrix": [[...]]}]}, module = {"rank", "norm", "weights"}.
// The result is validated; violations raise ValidationError.
template <class T>
CoefficientSystem<T> coeff_from_json(const json& j, SSetPtr base) {
    if (j.value("schema", std::string("coeff.v1")) != "coeff.v1") throw InputError("expected schema coeff.v1");
    std::vector<SeminormedModule<T>> mods;
    if (j.contains("constant")) {
        mods.assign(base->count(0), detail::module_from_json<T>(j["constant"]));
    } else {
        const auto& vs = j.at("vertices");
        if (static_cast<Id>(vs.size()) != base->count(0)) throw InputError("one module per vertex is required");
        for (const auto& v : vs) mods.push_back(detail::module_from_json<T>(v));
    }
    std::map<Id, Matrix<T>> edges;
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            Id id = e.at("edge").get<Id>();
            if (edges.count(id)) throw InputError("edge " + std::to_string(id) + " given twice");
            edges.emplace(id, matrix_from_json<T>(e.at("matrix")));
        }
    CoefficientSystem<T> a(base, std::move(mods), std::move(edges));
    auto v = a.validate();
    if (!v.empty()) throw ValidationError("coefficient system: " + v.front());
    return a;
}

template <class T>
json coeff_to_json(const CoefficientSystem<T>& a) {
    json j;
    j["schema"] = "coeff.v1";
    json vs = json::array();
    for (Id v = 0; v < a.base()->count(0); ++v) vs.push_back(detail::module_to_json(a.module(v)));
    j["vertices"] = std::move(vs);
    json es = json::array();
    for (const auto& [e, m] : a.edges()) es.push_back({{"edge", e}, {"matrix", matrix_to_json(m)}});
    j["edges"] = std::move(es);
    return j;
}

}  // namespace boundaries
