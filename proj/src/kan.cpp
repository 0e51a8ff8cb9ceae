#include "boundaries/kan.hpp"

#include "boundaries/prism.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace boundaries {

std::string HornWitness::str() const {
    std::ostringstream os;
    os << "horn Lambda^" << n << "_" << k << " over base simplex " << base << " with faces [";
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (i) os << ",";
        if (faces[i] < 0)
            os << "_";
        else
            os << faces[i];
    }
    os << "] has no filler";
    return os.str();
}

KanResult is_kan_fibration_up_to(const SimplicialMap& f, int max_dim) {
    if (max_dim > f.src->trunc()) throw InputError("kan check above the truncation dimension");
    const auto& x = *f.src;
    const auto& y = *f.tgt;
    PreimageIndex pre(f);
    KanResult res;
    for (int n = 1; n <= max_dim; ++n) {
        for (int k = 0; k <= n; ++k) {
            // filler signatures: (f(x), faces other than k)
            std::set<std::vector<Id>> fillers;
            for (Id s = 0; s < x.count(n); ++s) {
                std::vector<Id> key{f(n, s)};
                for (int i = 0; i <= n; ++i)
                    if (i != k) key.push_back(x.face(n, i, s));
                fillers.insert(std::move(key));
            }
            for (Id b = 0; b < y.count(n); ++b) {
                std::vector<Id> fam(n + 1, -1);
                std::function<bool(int)> rec = [&](int i) -> bool {
                    if (i > n) {
                        ++res.horns_checked;
                        std::vector<Id> key{b};
                        for (int j = 0; j <= n; ++j)
                            if (j != k) key.push_back(fam[j]);
                        if (fillers.count(key)) return true;
                        res.ok = false;
                        res.witness = HornWitness{n, k, b, fam};
                        return false;
                    }
                    if (i == k) return rec(i + 1);
                    auto [lo, hi] = pre.preimage(n - 1, y.face(n, i, b));
                    for (auto it = lo; it != hi; ++it) {
                        Id c = *it;
                        bool ok = true;
                        // d_a x_i = d_{i-1} x_a for a < i
                        for (int a = 0; a < i && ok; ++a)
                            if (a != k && n >= 2) ok = x.face(n - 1, a, c) == x.face(n - 1, i - 1, fam[a]);
                        if (!ok) continue;
                        fam[i] = c;
                        if (!rec(i + 1)) return false;
                    }
                    fam[i] = -1;
                    return true;
                };
                if (!rec(0)) return res;
            }
        }
    }
    return res;
}

}  // namespace boundaries
