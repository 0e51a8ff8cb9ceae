#pragma once

#include "boundaries/sset.hpp"

#include <optional>

namespace boundaries {

// Generators are nondegenerate edges d1 -> d0; one relation per 2-simplex,
// d0(s) o d2(s) = d1(s), degenerate edges read as identities.
struct GroupoidPresentation {
    struct Relation {
        Id simplex;
        int d0, d2, d1;  // generator indices, -1 for identities
    };
    int objects = 0;
    std::vector<Id> generators;                // edge ids in X_1
    std::vector<std::pair<Id, Id>> endpoints;  // (source, target) vertices
    std::vector<Relation> relations;
    std::vector<int> component;  // per vertex
    int components = 0;

    int generator_of(Id edge) const;  // -1 for degenerate edges
};

GroupoidPresentation fundamental_groupoid(const SimplicialSet& x);

// Words use letters +-(g+1).
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;
    std::string str() const;
};

// Vertex group at `base` via a spanning tree of its component; generators
// are the non-tree edges (unsimplified).
GroupPresentation vertex_group(const GroupoidPresentation& g, Id base);

// Removes generators that occur exactly once in some relator.
GroupPresentation tietze_simplify(GroupPresentation p);

// Order by coset enumeration over the trivial subgroup; nullopt when the
// coset cap is reached (infinite or too large).
std::optional<long long> todd_coxeter_order(const GroupPresentation& p, std::size_t max_cosets = 200000);

}  // namespace boundaries
