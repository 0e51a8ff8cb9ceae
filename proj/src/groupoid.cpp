#include "boundaries/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace boundaries {

int GroupoidPresentation::generator_of(Id edge) const {
    auto it = std::lower_bound(generators.begin(), generators.end(), edge);
    if (it != generators.end() && *it == edge) return static_cast<int>(it - generators.begin());
    return -1;
}

GroupoidPresentation fundamental_groupoid(const SimplicialSet& x) {
    if (x.trunc() < 2) throw InputError("fundamental groupoid needs 2-simplices (truncation >= 2)");
    GroupoidPresentation g;
    g.objects = x.count(0);
    for (Id e = 0; e < x.count(1); ++e)
        if (x.nondegenerate(1, e)) {
            g.generators.push_back(e);
            g.endpoints.push_back({x.face(1, 1, e), x.face(1, 0, e)});
        }
    for (Id s = 0; s < x.count(2); ++s)
        g.relations.push_back({s, g.generator_of(x.face(2, 0, s)), g.generator_of(x.face(2, 2, s)),
                               g.generator_of(x.face(2, 1, s))});
    std::vector<int> parent(g.objects);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
    for (auto [a, b] : g.endpoints) parent[root(a)] = root(b);
    g.component.assign(g.objects, -1);
    std::vector<int> label(g.objects, -1);
    for (int v = 0; v < g.objects; ++v) {
        int r = root(v);
        if (label[r] < 0) label[r] = g.components++;
        g.component[v] = label[r];
    }
    return g;
}

std::string GroupPresentation::str() const {
    std::ostringstream os;
    os << "<" << generators << " generators |";
    for (auto& r : relators) {
        os << " ";
        for (int l : r) os << (l > 0 ? "g" : "G") << std::abs(l);
        os << ";";
    }
    os << ">";
    return os.str();
}

namespace {

std::vector<int> free_reduce(const std::vector<int>& w) {
    std::vector<int> out;
    for (int l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    // cyclic reduction
    std::size_t a = 0, b = out.size();
    while (b - a >= 2 && out[a] == -out[b - 1]) {
        ++a;
        --b;
    }
    return std::vector<int>(out.begin() + a, out.begin() + b);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> r(w.rbegin(), w.rend());
    for (auto& l : r) l = -l;
    return r;
}

}  // namespace

GroupPresentation vertex_group(const GroupoidPresentation& g, Id base) {
    int comp = g.component.at(base);
    // BFS spanning tree over generators inside the component
    std::vector<std::vector<std::pair<int, int>>> adj(g.objects);
    for (int e = 0; e < static_cast<int>(g.generators.size()); ++e) {
        auto [a, b] = g.endpoints[e];
        adj[a].push_back({e, b});
        adj[b].push_back({e, a});
    }
    std::vector<char> in_tree(g.generators.size(), 0), seen(g.objects, 0);
    std::deque<int> q{static_cast<int>(base)};
    seen[base] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [e, w] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                in_tree[e] = 1;
                q.push_back(w);
            }
    }
    std::vector<int> letter(g.generators.size(), 0);
    GroupPresentation p;
    for (std::size_t e = 0; e < g.generators.size(); ++e)
        if (!in_tree[e] && g.component[g.endpoints[e].first] == comp) letter[e] = ++p.generators;
    auto l = [&](int gen) { return gen < 0 ? 0 : letter[gen]; };
    for (auto& r : g.relations) {
        int e = r.d0 >= 0 ? r.d0 : (r.d2 >= 0 ? r.d2 : r.d1);
        if (e < 0 || g.component[g.endpoints[e].first] != comp) continue;
        std::vector<int> w;
        for (int x : {l(r.d2), l(r.d0), -l(r.d1)})
            if (x != 0) w.push_back(x);
        w = free_reduce(w);
        if (!w.empty()) p.relators.push_back(std::move(w));
    }
    return p;
}

GroupPresentation tietze_simplify(GroupPresentation p) {
    for (auto& r : p.relators) r = free_reduce(r);
    bool changed = true;
    while (changed) {
        changed = false;
        p.relators.erase(std::remove_if(p.relators.begin(), p.relators.end(), [](auto& r) { return r.empty(); }),
                         p.relators.end());
        std::sort(p.relators.begin(), p.relators.end());
        p.relators.erase(std::unique(p.relators.begin(), p.relators.end()), p.relators.end());
        for (std::size_t ri = 0; ri < p.relators.size() && !changed; ++ri) {
            auto r = p.relators[ri];
            for (int gen = 1; gen <= p.generators && !changed; ++gen) {
                int cnt = 0;
                std::size_t pos = 0;
                for (std::size_t k = 0; k < r.size(); ++k)
                    if (std::abs(r[k]) == gen) {
                        ++cnt;
                        pos = k;
                    }
                if (cnt != 1) continue;
                std::vector<int> rot(r.begin() + pos, r.end());
                rot.insert(rot.end(), r.begin(), r.begin() + pos);
                int eps = rot[0] > 0 ? 1 : -1;
                std::vector<int> w(rot.begin() + 1, rot.end());
                // g^eps w = 1
                std::vector<int> val = eps > 0 ? inverse_word(w) : w;
                std::vector<int> inv = inverse_word(val);
                std::vector<std::vector<int>> next;
                for (std::size_t rj = 0; rj < p.relators.size(); ++rj) {
                    if (rj == ri) continue;
                    std::vector<int> s;
                    for (int x : p.relators[rj]) {
                        if (x == gen)
                            s.insert(s.end(), val.begin(), val.end());
                        else if (x == -gen)
                            s.insert(s.end(), inv.begin(), inv.end());
                        else
                            s.push_back(x);
                    }
                    for (auto& x : s)
                        if (std::abs(x) > gen) x += x > 0 ? -1 : 1;
                    next.push_back(free_reduce(s));
                }
                p.relators = std::move(next);
                --p.generators;
                changed = true;
            }
        }
    }
    return p;
}

std::optional<long long> todd_coxeter_order(const GroupPresentation& p, std::size_t max_cosets) {
    const int ng = 2 * p.generators;
    if (ng == 0) return 1;
    auto code = [](int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; };
    std::vector<std::vector<int>> rels;
    for (auto& r : p.relators) {
        std::vector<int> w;
        for (int l : r) w.push_back(code(l));
        rels.push_back(std::move(w));
    }
    std::vector<std::vector<int>> table;
    std::vector<int> parent;
    auto add = [&]() -> int {
        table.emplace_back(ng, -1);
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    };
    std::function<int(int)> rep = [&](int c) {
        int r = c;
        while (parent[r] != r) r = parent[r];
        while (parent[c] != r) {
            int n = parent[c];
            parent[c] = r;
            c = n;
        }
        return r;
    };
    std::vector<int> queue;
    auto merge = [&](int a, int b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        queue.push_back(b);
    };
    auto coincidence = [&](int a, int b) {
        queue.clear();
        merge(a, b);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int e = queue[i];
            for (int x = 0; x < ng; ++x) {
                int f = table[e][x];
                if (f < 0) continue;
                table[f][x ^ 1] = -1;
                int e1 = rep(e), f1 = rep(f);
                if (table[e1][x] >= 0)
                    merge(f1, table[e1][x]);
                else if (table[f1][x ^ 1] >= 0)
                    merge(e1, table[f1][x ^ 1]);
                else {
                    table[e1][x] = f1;
                    table[f1][x ^ 1] = e1;
                }
            }
        }
    };
    bool overflow = false;
    auto define = [&](int c, int x) {
        if (table.size() >= max_cosets) {
            overflow = true;
            return;
        }
        int d = add();
        table[c][x] = d;
        table[d][x ^ 1] = c;
    };
    auto scan_and_fill = [&](int c, const std::vector<int>& w) {
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && table[f][w[i]] >= 0) f = table[f][w[i++]];
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table[b][w[j] ^ 1] >= 0) b = table[b][w[j--] ^ 1];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table[f][w[i]] = b;
                table[b][w[i] ^ 1] = f;
                return;
            }
            define(f, w[i]);
            if (overflow) return;
        }
    };
    add();
    for (std::size_t c = 0; c < table.size(); ++c) {
        if (rep(static_cast<int>(c)) != static_cast<int>(c)) continue;
        for (auto& w : rels) {
            scan_and_fill(static_cast<int>(c), w);
            if (overflow) return std::nullopt;
            if (rep(static_cast<int>(c)) != static_cast<int>(c)) break;
        }
        if (rep(static_cast<int>(c)) != static_cast<int>(c)) continue;
        for (int x = 0; x < ng; ++x)
            if (table[c][x] < 0) {
                define(static_cast<int>(c), x);
                if (overflow) return std::nullopt;
            }
    }
    long long live = 0;
    for (std::size_t c = 0; c < table.size(); ++c) live += rep(static_cast<int>(c)) == static_cast<int>(c);
    return live;
}

}  // namespace boundaries
