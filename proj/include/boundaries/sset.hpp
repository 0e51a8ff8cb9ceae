#pragma once

#include "boundaries/group.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace boundaries {

using Id = std::int32_t;

// Degreewise-finite simplicial set tabulated in dimensions 0..N.
class SimplicialSet {
public:
    using Table = std::vector<std::vector<std::vector<Id>>>;  // [n][i][x]

    SimplicialSet() = default;
    // faces[n] for n in 1..N (faces[0] unused), degens[n] for n in 0..N-1.
    SimplicialSet(int trunc, std::vector<Id> counts, Table faces, Table degens);

    int trunc() const { return trunc_; }
    Id count(int n) const { return counts_[n]; }
    Id face(int n, int i, Id x) const { return faces_[n][i][x]; }
    Id degen(int n, int i, Id x) const { return degens_[n][i][x]; }
    bool nondegenerate(int n, Id x) const { return nondeg_[n][x]; }
    std::size_t nondegenerate_count(int n) const;
    std::vector<std::size_t> sizes() const;

    // X(theta)(x) for monotone theta: [m] -> [n] given as its values.
    Id apply(int n, Id x, const std::vector<int>& theta) const;
    Id vertex(int n, Id x, int k) const;
    std::vector<Id> vertices(int n, Id x) const;
    // The 1-simplex from vertex a to vertex b (a <= b) of x.
    Id edge(int n, Id x, int a, int b) const;

    // Every simplicial identity instance inside the truncation; empty if ok.
    std::vector<std::string> validate(std::size_t max_report = 20) const;

    SimplicialSet truncated(int m) const;

    const Table& face_table() const { return faces_; }
    const Table& degen_table() const { return degens_; }

private:
    int trunc_ = -1;
    std::vector<Id> counts_;
    Table faces_, degens_;
    std::vector<std::vector<char>> nondeg_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

struct SimplicialMap {
    SSetPtr src, tgt;
    std::vector<std::vector<Id>> comp;  // comp[n][x]

    Id operator()(int n, Id x) const { return comp[n][x]; }
    std::vector<std::string> validate(std::size_t max_report = 20) const;

    static SimplicialMap identity(SSetPtr x);
    static SimplicialMap to_point(SSetPtr x, SSetPtr point);
    // g after f
    static SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
};

// Finite category given by morphism tables; groups, groupoids and posets.
struct FiniteCategory {
    int objects = 0;
    std::vector<int> src, tgt;
    std::vector<int> identity;              // per object
    std::vector<std::vector<int>> compose;  // compose[f][g] = "f then g", or -1

    int morphisms() const { return static_cast<int>(src.size()); }
    static FiniteCategory from_group(const Group& g);
    static FiniteCategory poset_chain(int n);  // [n] = {0 < 1 < ... < n}
    static FiniteCategory chaotic(int k);      // E_k: one morphism between any two objects
    static FiniteCategory product(const FiniteCategory& a, const FiniteCategory& b);
    std::string check() const;
};

// Nerve with its composable strings, so functors induce maps.
class Nerve {
public:
    Nerve(FiniteCategory c, int trunc);

    const FiniteCategory& category() const { return cat_; }
    SSetPtr set() const { return set_; }
    // Level 0 strings are single objects; level n strings are n morphisms.
    const std::vector<int>& string(int n, Id x) const { return strings_[n][x]; }
    Id lookup(int n, const std::vector<int>& s) const;

private:
    FiniteCategory cat_;
    SSetPtr set_;
    std::vector<std::vector<std::vector<int>>> strings_;
    std::vector<std::map<std::vector<int>, Id>> index_;
};

// Functor given on objects and morphisms.
SimplicialMap nerve_map(const Nerve& a, const Nerve& b, const std::vector<int>& on_objects,
                        const std::vector<int>& on_morphisms);
SimplicialMap nerve_map(const Nerve& a, const Nerve& b, const Homomorphism& h);

std::shared_ptr<Nerve> nerve_of_group(const Group& g, int trunc);
SSetPtr standard_simplex(int n, int trunc);
// Union of the faces d_j, j != k, of the standard n-simplex, with its
// inclusion into the standard simplex.
SimplicialMap horn(int n, int k, int trunc);

struct ProductSet {
    SSetPtr set;
    SimplicialMap pr1, pr2;
};
ProductSet product(SSetPtr x, SSetPtr y);

// One vertex, one nondegenerate edge: the standard simplicial circle.
SSetPtr circle_model(int trunc);

// Subobject cut out by a predicate closed under faces and degeneracies,
// with its inclusion.
SimplicialMap subobject(SSetPtr x, const std::vector<std::vector<char>>& keep);

}  // namespace boundaries
