#include "boundaries/sset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace boundaries {

SimplicialSet::SimplicialSet(int trunc, std::vector<Id> counts, Table faces, Table degens)
    : trunc_(trunc), counts_(std::move(counts)), faces_(std::move(faces)), degens_(std::move(degens)) {
    if (trunc_ < 0) throw InputError("truncation dimension must be nonnegative");
    if (static_cast<int>(counts_.size()) != trunc_ + 1) throw InputError("simplex counts do not match truncation");
    faces_.resize(trunc_ + 1);
    degens_.resize(trunc_ + 1);
    for (int n = 1; n <= trunc_; ++n) {
        if (static_cast<int>(faces_[n].size()) != n + 1) throw InputError("face table has wrong arity");
        for (int i = 0; i <= n; ++i) {
            if (static_cast<Id>(faces_[n][i].size()) != counts_[n]) throw InputError("face table has wrong length");
            for (Id y : faces_[n][i])
                if (y < 0 || y >= counts_[n - 1]) throw InputError("face value out of range");
        }
    }
    for (int n = 0; n < trunc_; ++n) {
        if (static_cast<int>(degens_[n].size()) != n + 1) throw InputError("degeneracy table has wrong arity");
        for (int i = 0; i <= n; ++i) {
            if (static_cast<Id>(degens_[n][i].size()) != counts_[n]) throw InputError("degeneracy table has wrong length");
            for (Id y : degens_[n][i])
                if (y < 0 || y >= counts_[n + 1]) throw InputError("degeneracy value out of range");
        }
    }
    nondeg_.resize(trunc_ + 1);
    for (int n = 0; n <= trunc_; ++n) nondeg_[n].assign(counts_[n], 1);
    for (int n = 0; n < trunc_; ++n)
        for (int i = 0; i <= n; ++i)
            for (Id y : degens_[n][i]) nondeg_[n + 1][y] = 0;
}

std::size_t SimplicialSet::nondegenerate_count(int n) const {
    return static_cast<std::size_t>(std::count(nondeg_[n].begin(), nondeg_[n].end(), 1));
}

std::vector<std::size_t> SimplicialSet::sizes() const {
    return std::vector<std::size_t>(counts_.begin(), counts_.end());
}

Id SimplicialSet::apply(int n, Id x, const std::vector<int>& theta) const {
    int m = static_cast<int>(theta.size()) - 1;
    std::vector<char> hit(n + 1, 0);
    for (int v : theta) hit[v] = 1;
    int dim = n;
    for (int v = n; v >= 0; --v)
        if (!hit[v]) x = faces_[dim--][v][x];
    for (int j = 0; j < m; ++j)
        if (theta[j] == theta[j + 1]) x = degens_[dim++][j][x];
    return x;
}

Id SimplicialSet::vertex(int n, Id x, int k) const { return apply(n, x, {k}); }

std::vector<Id> SimplicialSet::vertices(int n, Id x) const {
    std::vector<Id> v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = vertex(n, x, k);
    return v;
}

Id SimplicialSet::edge(int n, Id x, int a, int b) const { return apply(n, x, {a, b}); }

std::vector<std::string> SimplicialSet::validate(std::size_t max_report) const {
    std::vector<std::string> out;
    auto report = [&](const std::string& what, int n, Id x) {
        if (out.size() < max_report) out.push_back(what + " fails on simplex " + std::to_string(x) + " of dimension " +
                                                   std::to_string(n));
    };
    // d_i d_j = d_{j-1} d_i, i < j
    for (int n = 2; n <= trunc_; ++n)
        for (Id x = 0; x < counts_[n]; ++x)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
                        report("d" + std::to_string(i) + "d" + std::to_string(j) + " identity", n, x);
    // face-degeneracy relations on X_n, n <= N-1
    for (int n = 0; n < trunc_; ++n)
        for (Id x = 0; x < counts_[n]; ++x)
            for (int j = 0; j <= n; ++j) {
                Id y = degen(n, j, x);
                for (int i = 0; i <= n + 1; ++i) {
                    Id lhs = face(n + 1, i, y);
                    bool ok;
                    if (i == j || i == j + 1)
                        ok = lhs == x;
                    else if (i < j)
                        ok = lhs == degen(n - 1, j - 1, face(n, i, x));
                    else
                        ok = lhs == degen(n - 1, j, face(n, i - 1, x));
                    if (!ok) report("d" + std::to_string(i) + "s" + std::to_string(j) + " identity", n, x);
                }
            }
    // s_i s_j = s_{j+1} s_i, i <= j
    for (int n = 0; n + 2 <= trunc_; ++n)
        for (Id x = 0; x < counts_[n]; ++x)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i)
                    if (degen(n + 1, i, degen(n, j, x)) != degen(n + 1, j + 1, degen(n, i, x)))
                        report("s" + std::to_string(i) + "s" + std::to_string(j) + " identity", n, x);
    return out;
}

SimplicialSet SimplicialSet::truncated(int m) const {
    if (m > trunc_ || m < 0) throw InputError("cannot truncate above the tabulated dimension");
    std::vector<Id> c(counts_.begin(), counts_.begin() + m + 1);
    Table f(faces_.begin(), faces_.begin() + m + 1), d(degens_.begin(), degens_.begin() + m + 1);
    d.resize(m + 1);
    d[m].clear();
    return SimplicialSet(m, c, f, d);
}

std::vector<std::string> SimplicialMap::validate(std::size_t max_report) const {
    std::vector<std::string> out;
    if (src->trunc() != tgt->trunc()) {
        out.push_back("map between different truncations");
        return out;
    }
    int N = src->trunc();
    if (static_cast<int>(comp.size()) != N + 1) {
        out.push_back("map has wrong number of components");
        return out;
    }
    for (int n = 0; n <= N; ++n) {
        if (static_cast<Id>(comp[n].size()) != src->count(n)) {
            out.push_back("component " + std::to_string(n) + " has wrong length");
            return out;
        }
        for (Id y : comp[n])
            if (y < 0 || y >= tgt->count(n)) {
                out.push_back("component " + std::to_string(n) + " value out of range");
                return out;
            }
    }
    auto report = [&](const std::string& s) {
        if (out.size() < max_report) out.push_back(s);
    };
    for (int n = 1; n <= N; ++n)
        for (Id x = 0; x < src->count(n); ++x)
            for (int i = 0; i <= n; ++i)
                if (comp[n - 1][src->face(n, i, x)] != tgt->face(n, i, comp[n][x]))
                    report("map does not commute with d" + std::to_string(i) + " on simplex " + std::to_string(x) +
                           " of dimension " + std::to_string(n));
    for (int n = 0; n < N; ++n)
        for (Id x = 0; x < src->count(n); ++x)
            for (int i = 0; i <= n; ++i)
                if (comp[n + 1][src->degen(n, i, x)] != tgt->degen(n, i, comp[n][x]))
                    report("map does not commute with s" + std::to_string(i) + " on simplex " + std::to_string(x) +
                           " of dimension " + std::to_string(n));
    return out;
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
    SimplicialMap m{x, x, {}};
    for (int n = 0; n <= x->trunc(); ++n) {
        m.comp.emplace_back(x->count(n));
        std::iota(m.comp.back().begin(), m.comp.back().end(), 0);
    }
    return m;
}

SimplicialMap SimplicialMap::to_point(SSetPtr x, SSetPtr point) {
    SimplicialMap m{x, point, {}};
    for (int n = 0; n <= x->trunc(); ++n) m.comp.emplace_back(x->count(n), 0);
    return m;
}

SimplicialMap SimplicialMap::compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (f.tgt->trunc() != g.src->trunc() || f.tgt->sizes() != g.src->sizes())
        throw InputError("maps are not composable");
    SimplicialMap m{f.src, g.tgt, {}};
    for (std::size_t n = 0; n < f.comp.size(); ++n) {
        m.comp.emplace_back(f.comp[n].size());
        for (std::size_t x = 0; x < f.comp[n].size(); ++x) m.comp[n][x] = g.comp[n][f.comp[n][x]];
    }
    return m;
}

FiniteCategory FiniteCategory::from_group(const Group& g) {
    FiniteCategory c;
    c.objects = 1;
    c.src.assign(g.order(), 0);
    c.tgt.assign(g.order(), 0);
    c.identity = {g.identity()};
    c.compose.assign(g.order(), std::vector<int>(g.order()));
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) c.compose[a][b] = g.mul(a, b);
    return c;
}

FiniteCategory FiniteCategory::poset_chain(int n) {
    FiniteCategory c;
    c.objects = n + 1;
    std::vector<std::vector<int>> id(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            id[i][j] = static_cast<int>(c.src.size());
            c.src.push_back(i);
            c.tgt.push_back(j);
        }
    for (int i = 0; i <= n; ++i) c.identity.push_back(id[i][i]);
    c.compose.assign(c.src.size(), std::vector<int>(c.src.size(), -1));
    for (int f = 0; f < c.morphisms(); ++f)
        for (int g = 0; g < c.morphisms(); ++g)
            if (c.tgt[f] == c.src[g]) c.compose[f][g] = id[c.src[f]][c.tgt[g]];
    return c;
}

FiniteCategory FiniteCategory::chaotic(int k) {
    FiniteCategory c;
    c.objects = k;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            c.src.push_back(a);
            c.tgt.push_back(b);
        }
    for (int a = 0; a < k; ++a) c.identity.push_back(a * k + a);
    c.compose.assign(k * k, std::vector<int>(k * k, -1));
    for (int f = 0; f < k * k; ++f)
        for (int g = 0; g < k * k; ++g)
            if (c.tgt[f] == c.src[g]) c.compose[f][g] = c.src[f] * k + c.tgt[g];
    return c;
}

FiniteCategory FiniteCategory::product(const FiniteCategory& a, const FiniteCategory& b) {
    FiniteCategory c;
    c.objects = a.objects * b.objects;
    int mb = b.morphisms();
    for (int f = 0; f < a.morphisms(); ++f)
        for (int g = 0; g < mb; ++g) {
            c.src.push_back(a.src[f] * b.objects + b.src[g]);
            c.tgt.push_back(a.tgt[f] * b.objects + b.tgt[g]);
        }
    for (int x = 0; x < a.objects; ++x)
        for (int y = 0; y < b.objects; ++y) c.identity.push_back(a.identity[x] * mb + b.identity[y]);
    c.compose.assign(c.src.size(), std::vector<int>(c.src.size(), -1));
    for (int f = 0; f < c.morphisms(); ++f)
        for (int g = 0; g < c.morphisms(); ++g) {
            int x = a.compose[f / mb][g / mb], y = b.compose[f % mb][g % mb];
            if (x >= 0 && y >= 0) c.compose[f][g] = x * mb + y;
        }
    return c;
}

std::string FiniteCategory::check() const {
    int m = morphisms();
    if (static_cast<int>(tgt.size()) != m || static_cast<int>(identity.size()) != objects) return "inconsistent sizes";
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            int h = compose[f][g];
            if ((tgt[f] == src[g]) != (h >= 0)) return "composition defined on the wrong pairs";
            if (h >= 0 && (src[h] != src[f] || tgt[h] != tgt[g])) return "composite has wrong endpoints";
        }
    for (int f = 0; f < m; ++f) {
        if (compose[identity[src[f]]][f] != f || compose[f][identity[tgt[f]]] != f) return "identity law fails";
        for (int g = 0; g < m; ++g)
            for (int h = 0; h < m; ++h) {
                if (compose[f][g] < 0 || compose[g][h] < 0) continue;
                if (compose[compose[f][g]][h] != compose[f][compose[g][h]]) return "associativity fails";
            }
    }
    return "";
}

Nerve::Nerve(FiniteCategory c, int trunc) : cat_(std::move(c)) {
    if (trunc < 0) throw InputError("truncation dimension must be nonnegative");
    if (auto e = cat_.check(); !e.empty()) throw InputError("category: " + e);
    strings_.resize(trunc + 1);
    index_.resize(trunc + 1);
    for (int o = 0; o < cat_.objects; ++o) strings_[0].push_back({o});
    if (trunc >= 1)
        for (int f = 0; f < cat_.morphisms(); ++f) strings_[1].push_back({f});
    for (int n = 2; n <= trunc; ++n)
        for (auto& s : strings_[n - 1])
            for (int g = 0; g < cat_.morphisms(); ++g)
                if (cat_.src[g] == cat_.tgt[s.back()]) {
                    auto t = s;
                    t.push_back(g);
                    strings_[n].push_back(std::move(t));
                }
    for (int n = 0; n <= trunc; ++n)
        for (Id x = 0; x < static_cast<Id>(strings_[n].size()); ++x) index_[n].emplace(strings_[n][x], x);
    std::vector<Id> counts;
    for (auto& l : strings_) counts.push_back(static_cast<Id>(l.size()));
    SimplicialSet::Table faces(trunc + 1), degens(trunc + 1);
    for (int n = 1; n <= trunc; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (Id x = 0; x < counts[n]; ++x) {
            const auto& s = strings_[n][x];
            if (n == 1) {
                faces[1][0][x] = cat_.tgt[s[0]];
                faces[1][1][x] = cat_.src[s[0]];
                continue;
            }
            for (int i = 0; i <= n; ++i) {
                std::vector<int> t;
                if (i == 0)
                    t.assign(s.begin() + 1, s.end());
                else if (i == n)
                    t.assign(s.begin(), s.end() - 1);
                else {
                    t.assign(s.begin(), s.begin() + i - 1);
                    t.push_back(cat_.compose[s[i - 1]][s[i]]);
                    t.insert(t.end(), s.begin() + i + 1, s.end());
                }
                faces[n][i][x] = index_[n - 1].at(t);
            }
        }
    }
    for (int n = 0; n < trunc; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (Id x = 0; x < counts[n]; ++x) {
            const auto& s = strings_[n][x];
            for (int i = 0; i <= n; ++i) {
                std::vector<int> t;
                if (n == 0)
                    t = {cat_.identity[s[0]]};
                else {
                    int obj = i == 0 ? cat_.src[s[0]] : cat_.tgt[s[i - 1]];
                    t.assign(s.begin(), s.begin() + i);
                    t.push_back(cat_.identity[obj]);
                    t.insert(t.end(), s.begin() + i, s.end());
                }
                degens[n][i][x] = index_[n + 1].at(t);
            }
        }
    }
    set_ = std::make_shared<SimplicialSet>(trunc, counts, faces, degens);
}

Id Nerve::lookup(int n, const std::vector<int>& s) const {
    auto it = index_[n].find(s);
    if (it == index_[n].end()) throw std::out_of_range("string is not a simplex of the nerve");
    return it->second;
}

SimplicialMap nerve_map(const Nerve& a, const Nerve& b, const std::vector<int>& on_objects,
                        const std::vector<int>& on_morphisms) {
    const auto& ca = a.category();
    const auto& cb = b.category();
    if (static_cast<int>(on_objects.size()) != ca.objects || static_cast<int>(on_morphisms.size()) != ca.morphisms())
        throw InputError("functor tables have wrong size");
    for (int f = 0; f < ca.morphisms(); ++f) {
        int g = on_morphisms[f];
        if (cb.src[g] != on_objects[ca.src[f]] || cb.tgt[g] != on_objects[ca.tgt[f]])
            throw InputError("functor does not preserve endpoints");
    }
    SimplicialMap m{a.set(), b.set(), {}};
    int N = a.set()->trunc();
    if (b.set()->trunc() != N) throw InputError("nerves have different truncations");
    for (int n = 0; n <= N; ++n) {
        m.comp.emplace_back(a.set()->count(n));
        for (Id x = 0; x < a.set()->count(n); ++x) {
            auto s = a.string(n, x);
            for (auto& v : s) v = n == 0 ? on_objects[v] : on_morphisms[v];
            m.comp[n][x] = b.lookup(n, s);
        }
    }
    return m;
}

SimplicialMap nerve_map(const Nerve& a, const Nerve& b, const Homomorphism& h) {
    if (auto e = h.check(); !e.empty()) throw InputError(e);
    return nerve_map(a, b, {0}, h.map);
}

std::shared_ptr<Nerve> nerve_of_group(const Group& g, int trunc) {
    return std::make_shared<Nerve>(FiniteCategory::from_group(g), trunc);
}

SSetPtr standard_simplex(int n, int trunc) {
    if (trunc < 0) throw InputError("truncation dimension must be nonnegative");
    if (n < 0) throw InputError("simplex dimension must be nonnegative");
    return Nerve(FiniteCategory::poset_chain(n), trunc).set();
}

SimplicialMap subobject(SSetPtr x, const std::vector<std::vector<char>>& keep) {
    int N = x->trunc();
    std::vector<std::vector<Id>> newid(N + 1), old(N + 1);
    for (int n = 0; n <= N; ++n) {
        newid[n].assign(x->count(n), -1);
        for (Id s = 0; s < x->count(n); ++s)
            if (keep[n][s]) {
                newid[n][s] = static_cast<Id>(old[n].size());
                old[n].push_back(s);
            }
    }
    std::vector<Id> counts;
    for (auto& o : old) counts.push_back(static_cast<Id>(o.size()));
    SimplicialSet::Table faces(N + 1), degens(N + 1);
    for (int n = 1; n <= N; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) {
                Id y = newid[n - 1][x->face(n, i, old[n][s])];
                if (y < 0) throw InputError("subobject is not closed under faces");
                faces[n][i][s] = y;
            }
    }
    for (int n = 0; n < N; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) {
                Id y = newid[n + 1][x->degen(n, i, old[n][s])];
                if (y < 0) throw InputError("subobject is not closed under degeneracies");
                degens[n][i][s] = y;
            }
    }
    auto sub = std::make_shared<SimplicialSet>(N, counts, faces, degens);
    return SimplicialMap{sub, x, old};
}

SimplicialMap horn(int n, int k, int trunc) {
    if (n < 1 || k < 0 || k > n) throw InputError("invalid horn (n,k)");
    if (trunc < 0) throw InputError("truncation dimension must be nonnegative");
    auto delta = standard_simplex(n, trunc);
    std::vector<std::vector<char>> keep(trunc + 1);
    for (int m = 0; m <= trunc; ++m) {
        keep[m].assign(delta->count(m), 0);
        for (Id s = 0; s < delta->count(m); ++s) {
            auto v = delta->vertices(m, s);
            std::vector<char> hit(n + 1, 0);
            for (Id u : v) hit[u] = 1;
            for (int j = 0; j <= n; ++j)
                if (j != k && !hit[j]) keep[m][s] = 1;
        }
    }
    return subobject(delta, keep);
}

ProductSet product(SSetPtr x, SSetPtr y) {
    if (x->trunc() != y->trunc()) throw InputError("product of simplicial sets with different truncations");
    int N = x->trunc();
    std::vector<Id> counts;
    for (int n = 0; n <= N; ++n) {
        long long c = static_cast<long long>(x->count(n)) * y->count(n);
        if (c > (1LL << 30)) throw InputError("product too large to tabulate");
        counts.push_back(static_cast<Id>(c));
    }
    SimplicialSet::Table faces(N + 1), degens(N + 1);
    for (int n = 1; n <= N; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        Id cy = y->count(n), cy1 = y->count(n - 1);
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) faces[n][i][s] = x->face(n, i, s / cy) * cy1 + y->face(n, i, s % cy);
    }
    for (int n = 0; n < N; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        Id cy = y->count(n), cy1 = y->count(n + 1);
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) degens[n][i][s] = x->degen(n, i, s / cy) * cy1 + y->degen(n, i, s % cy);
    }
    auto p = std::make_shared<SimplicialSet>(N, counts, faces, degens);
    ProductSet out{p, {p, x, {}}, {p, y, {}}};
    for (int n = 0; n <= N; ++n) {
        out.pr1.comp.emplace_back(counts[n]);
        out.pr2.comp.emplace_back(counts[n]);
        for (Id s = 0; s < counts[n]; ++s) {
            out.pr1.comp[n][s] = s / y->count(n);
            out.pr2.comp[n][s] = s % y->count(n);
        }
    }
    return out;
}

SSetPtr circle_model(int trunc) {
    // an n-simplex of Delta^1 is fixed by its number z of zeros; z = 0 and
    // z = n+1 are both collapsed to the base point (id 0)
    std::vector<Id> counts;
    for (int n = 0; n <= trunc; ++n) counts.push_back(n == 0 ? 1 : n + 1);
    auto norm = [](int n, int z) { return (z == 0 || z == n + 1) ? 0 : z; };
    SimplicialSet::Table faces(trunc + 1), degens(trunc + 1);
    for (int n = 1; n <= trunc; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) faces[n][i][s] = s == 0 ? 0 : norm(n - 1, i < s ? s - 1 : s);
    }
    for (int n = 0; n < trunc; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id s = 0; s < counts[n]; ++s) degens[n][i][s] = s == 0 ? 0 : norm(n + 1, i < s ? s + 1 : s);
    }
    return std::make_shared<SimplicialSet>(trunc, counts, faces, degens);
}

}  // namespace boundaries
