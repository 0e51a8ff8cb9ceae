#include "boundaries/group.hpp"

#include <algorithm>

namespace boundaries {

Group Group::from_table(const std::vector<std::vector<int>>& table, std::vector<std::string> names, std::size_t cap) {
    Group g;
    g.n_ = static_cast<int>(table.size());
    if (g.n_ == 0) throw InputError("group table is empty");
    if (table.size() > cap)
        throw InputError("group order " + std::to_string(table.size()) + " exceeds cap " + std::to_string(cap));
    g.mul_.resize(g.n_ * g.n_);
    for (int a = 0; a < g.n_; ++a) {
        if (static_cast<int>(table[a].size()) != g.n_) throw InputError("group table is not square");
        for (int b = 0; b < g.n_; ++b) {
            int c = table[a][b];
            if (c < 0 || c >= g.n_) throw InputError("closure fails: table entry out of range");
            g.mul_[a * g.n_ + b] = c;
        }
    }
    for (int a = 0; a < g.n_; ++a)
        for (int b = 0; b < g.n_; ++b)
            for (int c = 0; c < g.n_; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw InputError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                     std::to_string(c) + ")");
    g.e_ = -1;
    for (int e = 0; e < g.n_ && g.e_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < g.n_ && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) g.e_ = e;
    }
    if (g.e_ < 0) throw InputError("identity axiom fails: no two-sided identity");
    g.inv_.assign(g.n_, -1);
    for (int a = 0; a < g.n_; ++a) {
        for (int b = 0; b < g.n_; ++b)
            if (g.mul(a, b) == g.e_ && g.mul(b, a) == g.e_) g.inv_[a] = b;
        if (g.inv_[a] < 0) throw InputError("inverse axiom fails for element " + std::to_string(a));
    }
    if (names.empty())
        for (int a = 0; a < g.n_; ++a) names.push_back(std::to_string(a));
    g.names_ = std::move(names);
    return g;
}

Group Group::cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table(t);
}

Group Group::product(const Group& a, const Group& b) {
    int n = a.order() * b.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) {
        names.push_back("(" + a.name(x / b.order()) + "," + b.name(x % b.order()) + ")");
        for (int y = 0; y < n; ++y)
            t[x][y] = a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
    }
    return from_table(t, names, std::max<std::size_t>(64, n));
}

Group Group::symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p = {0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto idx = [&](const std::vector<int>& q) { return int(std::find(perms.begin(), perms.end(), q) - perms.begin()); };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::vector<int> c(3);
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = idx(c);
        }
    return from_table(t);
}

std::vector<std::vector<int>> Group::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

std::string Homomorphism::check() const {
    if (!src || !tgt) return "homomorphism without groups";
    if (static_cast<int>(map.size()) != src->order()) return "homomorphism map has wrong length";
    for (int g : map)
        if (g < 0 || g >= tgt->order()) return "homomorphism value out of range";
    for (int a = 0; a < src->order(); ++a)
        for (int b = 0; b < src->order(); ++b)
            if (map[src->mul(a, b)] != tgt->mul(map[a], map[b]))
                return "not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")";
    return "";
}

bool Homomorphism::injective() const { return kernel().size() == 1; }

bool Homomorphism::surjective() const { return static_cast<int>(image().size()) == tgt->order(); }

std::vector<int> Homomorphism::kernel() const {
    std::vector<int> k;
    for (int a = 0; a < src->order(); ++a)
        if (map[a] == tgt->identity()) k.push_back(a);
    return k;
}

std::vector<int> Homomorphism::image() const {
    std::vector<int> im(map.begin(), map.end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
}

std::string check_short_exact(const Homomorphism& i, const Homomorphism& p) {
    if (auto e = i.check(); !e.empty()) return "inclusion: " + e;
    if (auto e = p.check(); !e.empty()) return "projection: " + e;
    if (i.tgt != p.src && i.tgt->order() != p.src->order()) return "maps are not composable";
    if (!i.injective()) return "inclusion is not injective";
    if (!p.surjective()) return "projection is not surjective";
    if (i.image() != p.kernel()) return "kernel of projection differs from image of inclusion";
    return "";
}

}  // namespace boundaries
