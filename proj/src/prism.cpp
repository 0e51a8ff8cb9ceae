#include "boundaries/prism.hpp"

#include <algorithm>
#include <deque>

namespace boundaries {

PrismShape::PrismShape(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0) throw InputError("prism dimensions must be nonnegative");
    // step strings: 0 = horizontal, 1 = vertical
    std::vector<int> steps(p + q, 0);
    std::fill(steps.begin() + p, steps.end(), 1);
    std::vector<std::vector<int>> all;
    do all.push_back(steps);
    while (std::next_permutation(steps.begin(), steps.end()));
    for (auto& st : all) {
        std::vector<GridPoint> path{{0, 0}};
        int h = 0, inv = 0;
        for (int s : st) {
            auto [a, b] = path.back();
            if (s == 0) {
                path.push_back({a + 1, b});
                ++h;
            } else {
                path.push_back({a, b + 1});
                inv += h;
            }
        }
        index_.emplace(path, static_cast<int>(paths_.size()));
        paths_.push_back(std::move(path));
        signs_.push_back(inv % 2 ? -1 : 1);
    }
    // adjacency: paths differing in exactly one interior vertex
    int n = count();
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            int diff = -1, cnt = 0;
            for (int k = 0; k <= dim(); ++k)
                if (paths_[s][k] != paths_[t][k]) {
                    diff = k;
                    ++cnt;
                }
            if (cnt == 1) adj[s].push_back({t, diff});
        }
    std::vector<char> seen(n, 0);
    std::deque<int> bfs{0};
    seen[0] = 1;
    while (!bfs.empty()) {
        int s = bfs.front();
        bfs.pop_front();
        order_.push_back(s);
        for (auto [t, k] : adj[s])
            if (!seen[t]) {
                seen[t] = 1;
                bfs.push_back(t);
            }
    }
    earlier_.resize(n);
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order_[k]] = k;
    for (int s = 0; s < n; ++s)
        for (auto [t, k] : adj[s])
            if (pos[t] < pos[s]) earlier_[s].push_back({t, k, k});
}

std::pair<int, std::vector<int>> PrismShape::locate(const std::vector<GridPoint>& chain) const {
    std::vector<GridPoint> distinct;
    for (auto& c : chain) {
        if (c.first < 0 || c.first > p_ || c.second < 0 || c.second > q_) throw std::out_of_range("chain outside prism");
        if (!distinct.empty()) {
            auto& b = distinct.back();
            if (c.first < b.first || c.second < b.second) throw std::invalid_argument("chain is not monotone");
            if (c == b) continue;
        }
        distinct.push_back(c);
    }
    std::vector<GridPoint> path{{0, 0}};
    distinct.push_back({p_, q_});
    for (auto& c : distinct) {
        while (path.back().first < c.first) path.push_back({path.back().first + 1, path.back().second});
        while (path.back().second < c.second) path.push_back({path.back().first, path.back().second + 1});
    }
    int s = index_.at(path);
    std::vector<int> theta;
    for (auto& c : chain) theta.push_back(static_cast<int>(std::find(path.begin(), path.end(), c) - path.begin()));
    return {s, theta};
}

PrismPlan::PrismPlan(const PrismShape& from, const PrismShape& to, const std::function<GridPoint(GridPoint)>& phi)
    : big_dim_(to.dim()) {
    for (int t = 0; t < from.count(); ++t) {
        std::vector<GridPoint> chain;
        for (auto& v : from.path(t)) chain.push_back(phi(v));
        steps_.push_back(to.locate(chain));
    }
}

void PrismPlan::apply(const SimplicialSet& x, const Id* big, Id* small) const {
    for (std::size_t t = 0; t < steps_.size(); ++t) small[t] = x.apply(big_dim_, big[steps_[t].first], steps_[t].second);
}

std::uint64_t PrismMaps::hash(const Id* t, int w) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < w; ++i) {
        h ^= static_cast<std::uint32_t>(t[i]);
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return h;
}

void PrismMaps::build_index() {
    std::size_t cap = 4;
    while (cap < 2 * static_cast<std::size_t>(size()) + 2) cap <<= 1;
    slots_.assign(cap, -1);
    for (Id k = 0; k < size(); ++k) {
        std::size_t h = hash(at(k), width_) & (cap - 1);
        while (slots_[h] >= 0) h = (h + 1) & (cap - 1);
        slots_[h] = k;
    }
}

Id PrismMaps::find(const Id* t) const {
    if (slots_.empty()) return -1;
    std::size_t cap = slots_.size();
    std::size_t h = hash(t, width_) & (cap - 1);
    while (slots_[h] >= 0) {
        if (std::equal(t, t + width_, at(slots_[h]))) return slots_[h];
        h = (h + 1) & (cap - 1);
    }
    return -1;
}

std::pair<const Id*, const Id*> FaceIndex::cofaces(int n, int i, Id y) {
    auto key = std::make_pair(n, i);
    auto it = csr_.find(key);
    if (it == csr_.end()) {
        std::vector<Id> ptr(x_.count(n - 1) + 1, 0), val(x_.count(n));
        for (Id s = 0; s < x_.count(n); ++s) ++ptr[x_.face(n, i, s) + 1];
        for (Id k = 0; k < x_.count(n - 1); ++k) ptr[k + 1] += ptr[k];
        std::vector<Id> pos(ptr.begin(), ptr.end() - 1);
        for (Id s = 0; s < x_.count(n); ++s) val[pos[x_.face(n, i, s)]++] = s;
        it = csr_.emplace(key, std::make_pair(std::move(ptr), std::move(val))).first;
    }
    const auto& [ptr, val] = it->second;
    return {val.data() + ptr[y], val.data() + ptr[y + 1]};
}

PreimageIndex::PreimageIndex(const SimplicialMap& f) {
    for (int n = 0; n <= f.src->trunc(); ++n) {
        std::vector<Id> ptr(f.tgt->count(n) + 1, 0), val(f.src->count(n));
        for (Id y : f.comp[n]) ++ptr[y + 1];
        for (Id k = 0; k < f.tgt->count(n); ++k) ptr[k + 1] += ptr[k];
        std::vector<Id> pos(ptr.begin(), ptr.end() - 1);
        for (Id s = 0; s < f.src->count(n); ++s) val[pos[f.comp[n][s]]++] = s;
        csr_.emplace_back(std::move(ptr), std::move(val));
    }
}

namespace {

// Backtracking over shuffles; `first` yields candidates for the first
// shuffle, `ok` filters every candidate.
template <class First, class Ok>
void backtrack(const SimplicialSet& x, const PrismShape& shape, FaceIndex& faces, First first, Ok ok,
               PrismMaps& out) {
    int n = shape.dim();
    int w = shape.count();
    std::vector<Id> val(w, -1);
    const auto& order = shape.order();
    std::function<void(int)> rec = [&](int k) {
        if (k == w) {
            out.push(val.data());
            return;
        }
        int s = order[k];
        auto test = [&](Id c) {
            if (!ok(s, c)) return;
            for (auto& a : shape.earlier(s))
                if (x.face(n, a.face_self, c) != x.face(n, a.face_other, val[a.other])) return;
            val[s] = c;
            rec(k + 1);
        };
        if (k == 0) {
            first(test);
        } else {
            auto& a = shape.earlier(s).front();
            Id y = x.face(n, a.face_other, val[a.other]);
            auto [b, e] = faces.cofaces(n, a.face_self, y);
            for (auto it = b; it != e; ++it) test(*it);
        }
        val[s] = -1;
    };
    if (n == 0) {
        // single vertex path
        first([&](Id c) {
            if (ok(0, c)) out.push(&c);
        });
        return;
    }
    rec(0);
}

}  // namespace

PrismMaps enumerate_prism_maps(const SimplicialSet& x, int p, int q) {
    if (p < 0 || q < 0 || p + q > x.trunc()) throw InputError("prism dimension exceeds truncation");
    PrismShape shape(p, q);
    PrismMaps out(p, q, shape.count());
    FaceIndex faces(x);
    int n = p + q;
    backtrack(
        x, shape, faces,
        [&](auto&& test) {
            for (Id c = 0; c < x.count(n); ++c) test(c);
        },
        [](int, Id) { return true; }, out);
    out.build_index();
    return out;
}

void enumerate_over(const SimplicialMap& f, FaceIndex& faces, const PreimageIndex& pre, int p, int q, Id tau,
                    PrismMaps& out) {
    const auto& x = *f.src;
    const auto& y = *f.tgt;
    if (p < 0 || q < 0 || p + q > x.trunc()) throw InputError("prism dimension exceeds truncation");
    PrismShape shape(p, q);
    int n = p + q;
    std::vector<Id> req(shape.count());
    for (int s = 0; s < shape.count(); ++s) {
        std::vector<int> theta;
        for (auto& v : shape.path(s)) theta.push_back(v.first);
        req[s] = y.apply(p, tau, theta);
    }
    backtrack(
        x, shape, faces,
        [&](auto&& test) {
            auto [b, e] = pre.preimage(n, req[shape.order()[0]]);
            for (auto it = b; it != e; ++it) test(*it);
        },
        [&](int s, Id c) { return f.comp[n][c] == req[s]; }, out);
}

std::size_t count_prism_maps_bruteforce(const SimplicialSet& x, int p, int q) {
    PrismShape shape(p, q);
    int n = p + q, w = shape.count();
    struct Check {
        int s, t;
        std::vector<int> ts, tt;
    };
    std::vector<Check> checks;
    for (int s = 0; s < w; ++s)
        for (int t = s + 1; t < w; ++t) {
            Check c{s, t, {}, {}};
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j)
                    if (shape.path(s)[i] == shape.path(t)[j]) {
                        c.ts.push_back(i);
                        c.tt.push_back(j);
                    }
            checks.push_back(std::move(c));
        }
    std::size_t total = 1, found = 0;
    for (int s = 0; s < w; ++s) total *= x.count(n);
    std::vector<Id> val(w, 0);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (int s = 0; s < w; ++s) {
            val[s] = static_cast<Id>(c % x.count(n));
            c /= x.count(n);
        }
        bool ok = true;
        for (auto& ch : checks)
            if (x.apply(n, val[ch.s], ch.ts) != x.apply(n, val[ch.t], ch.tt)) {
                ok = false;
                break;
            }
        found += ok;
    }
    return found;
}

Fiber fiber_over(const SimplicialMap& f, int p, Id tau) {
    int N = f.src->trunc();
    if (p < 0 || p > N) throw InputError("fiber over a simplex above the truncation");
    if (tau < 0 || tau >= f.tgt->count(p)) throw InputError("fiber base simplex out of range");
    int M = N - p;
    Fiber fb;
    fb.p = p;
    fb.tau = tau;
    FaceIndex faces(*f.src);
    PreimageIndex pre(f);
    std::vector<PrismShape> shapes;
    for (int q = 0; q <= M; ++q) {
        shapes.emplace_back(p, q);
        fb.levels.emplace_back(p, q, shapes.back().count());
        enumerate_over(f, faces, pre, p, q, tau, fb.levels.back());
        fb.levels.back().build_index();
    }
    std::vector<Id> counts;
    for (auto& l : fb.levels) counts.push_back(l.size());
    SimplicialSet::Table ft(M + 1), dt(M + 1);
    std::vector<Id> buf;
    for (int q = 1; q <= M; ++q) {
        ft[q].assign(q + 1, std::vector<Id>(counts[q]));
        for (int j = 0; j <= q; ++j) {
            PrismPlan plan(shapes[q - 1], shapes[q], [j](GridPoint v) {
                return GridPoint{v.first, v.second < j ? v.second : v.second + 1};
            });
            buf.resize(plan.size());
            for (Id s = 0; s < counts[q]; ++s) {
                plan.apply(*f.src, fb.levels[q].at(s), buf.data());
                ft[q][j][s] = fb.levels[q - 1].find(buf.data());
            }
        }
    }
    for (int q = 0; q < M; ++q) {
        dt[q].assign(q + 1, std::vector<Id>(counts[q]));
        for (int j = 0; j <= q; ++j) {
            PrismPlan plan(shapes[q + 1], shapes[q], [j](GridPoint v) {
                return GridPoint{v.first, v.second <= j ? v.second : v.second - 1};
            });
            buf.resize(plan.size());
            for (Id s = 0; s < counts[q]; ++s) {
                plan.apply(*f.src, fb.levels[q].at(s), buf.data());
                dt[q][j][s] = fb.levels[q + 1].find(buf.data());
            }
        }
    }
    fb.set = std::make_shared<SimplicialSet>(M, counts, ft, dt);
    auto xt = std::make_shared<SimplicialSet>(f.src->truncated(M));
    fb.iota = SimplicialMap{fb.set, xt, {}};
    for (int q = 0; q <= M; ++q) {
        std::vector<GridPoint> chain;
        for (int b = 0; b <= q; ++b) chain.push_back({p, b});
        auto [s, theta] = shapes[q].locate(chain);
        fb.iota.comp.emplace_back(counts[q]);
        for (Id k = 0; k < counts[q]; ++k) fb.iota.comp[q][k] = f.src->apply(p + q, fb.levels[q].at(k)[s], theta);
    }
    return fb;
}

}  // namespace boundaries
