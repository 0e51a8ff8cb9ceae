#pragma once

#include "boundaries/sset.hpp"

#include <functional>
#include <utility>

namespace boundaries {

using GridPoint = std::pair<int, int>;

// Combinatorics of Delta^p x Delta^q: its nondegenerate top simplices are
// the (p,q)-shuffles, i.e. monotone lattice paths from (0,0) to (p,q).
class PrismShape {
public:
    PrismShape(int p, int q);

    int p() const { return p_; }
    int q() const { return q_; }
    int dim() const { return p_ + q_; }
    int count() const { return static_cast<int>(paths_.size()); }
    const std::vector<GridPoint>& path(int s) const { return paths_[s]; }
    // Horizontal steps before each vertex; its parity is the shuffle sign.
    int sign(int s) const { return signs_[s]; }

    // A chain of grid points (monotone, repeats allowed) as X(theta) of one
    // shuffle: returns (shuffle, theta).
    std::pair<int, std::vector<int>> locate(const std::vector<GridPoint>& chain) const;

    struct Adjacency {
        int other;       // earlier shuffle in `order()`
        int face_self;   // d_{face_self} of this shuffle
        int face_other;  // equals d_{face_other} of `other`
    };
    // Shuffles in an order where each one after the first shares a
    // codimension-one face with an earlier one; all such earlier
    // adjacencies are listed.
    const std::vector<int>& order() const { return order_; }
    const std::vector<Adjacency>& earlier(int s) const { return earlier_[s]; }

private:
    int p_, q_;
    std::vector<std::vector<GridPoint>> paths_;
    std::vector<int> signs_;
    std::map<std::vector<GridPoint>, int> index_;
    std::vector<int> order_;
    std::vector<std::vector<Adjacency>> earlier_;
};

// Precomposition of a prism map with a poset map [p']x[q'] -> [p]x[q].
class PrismPlan {
public:
    PrismPlan(const PrismShape& from, const PrismShape& to, const std::function<GridPoint(GridPoint)>& phi);
    // images of the small shuffles from the tuple of a big prism map
    void apply(const SimplicialSet& x, const Id* big, Id* small) const;
    int size() const { return static_cast<int>(steps_.size()); }

private:
    int big_dim_;
    std::vector<std::pair<int, std::vector<int>>> steps_;
};

// A set of prism maps Delta^p x Delta^q -> X, each stored as the tuple of
// images of the shuffles, with a hash index.
class PrismMaps {
public:
    PrismMaps() = default;
    PrismMaps(int p, int q, int width) : p_(p), q_(q), width_(width) {}

    int p() const { return p_; }
    int q() const { return q_; }
    int width() const { return width_; }
    Id size() const { return width_ ? static_cast<Id>(data_.size() / width_) : 0; }
    const Id* at(Id k) const { return data_.data() + static_cast<std::size_t>(k) * width_; }
    void push(const Id* t) { data_.insert(data_.end(), t, t + width_); }
    void build_index();
    Id find(const Id* t) const;

private:
    static std::uint64_t hash(const Id* t, int w);
    int p_ = 0, q_ = 0, width_ = 0;
    std::vector<Id> data_;
    std::vector<Id> slots_;
};

// CSR inverse of face maps and of a simplicial map, built on demand.
class FaceIndex {
public:
    explicit FaceIndex(const SimplicialSet& x) : x_(x) {}
    // x in X_n with d_i x = y
    std::pair<const Id*, const Id*> cofaces(int n, int i, Id y);

private:
    const SimplicialSet& x_;
    std::map<std::pair<int, int>, std::pair<std::vector<Id>, std::vector<Id>>> csr_;
};

class PreimageIndex {
public:
    explicit PreimageIndex(const SimplicialMap& f);
    std::pair<const Id*, const Id*> preimage(int n, Id y) const {
        const auto& [ptr, val] = csr_[n];
        return {val.data() + ptr[y], val.data() + ptr[y + 1]};
    }

private:
    std::vector<std::pair<std::vector<Id>, std::vector<Id>>> csr_;
};

// All simplicial maps Delta^p x Delta^q -> X.
PrismMaps enumerate_prism_maps(const SimplicialSet& x, int p, int q);

// Prism maps sigma with f o sigma = tau o pr1, appended to `out`.
void enumerate_over(const SimplicialMap& f, FaceIndex& faces, const PreimageIndex& pre, int p, int q, Id tau,
                    PrismMaps& out);

// Independent oracle: all tuples of (p+q)-simplices satisfying every
// pairwise intersection condition, by exhaustive search.
std::size_t count_prism_maps_bruteforce(const SimplicialSet& x, int p, int q);

// The fiber F_tau of f over a p-simplex, tabulated in dimensions
// 0..trunc-p, with iota_tau (restriction to the last vertex of Delta^p).
struct Fiber {
    int p = 0;
    Id tau = 0;
    SSetPtr set;
    std::vector<PrismMaps> levels;
    SimplicialMap iota;  // F_tau -> X truncated to the fiber's dimension
};
Fiber fiber_over(const SimplicialMap& f, int p, Id tau);

}  // namespace boundaries
