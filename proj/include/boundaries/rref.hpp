#pragma once

#include "boundaries/sparse.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace boundaries {

// Incremental reduced row echelon form over column keys 0..C-1. The lead of
// a row is its smallest key. Pivot rows never contain another pivot key, so
// reducing a new row is one substitution per entry, without chains.
// The price is back-elimination into old pivot rows when a lead appears.
template <class T>
class RowReducer {
public:
    explicit RowReducer(Index keys) : acc_(keys), mark_(keys, 0), pivot_(keys, 0), rows_(keys), users_(keys) {}

    // true when the row was independent; its lead is then last_lead()
    bool insert(const std::vector<std::pair<Index, T>>& row) {
        touched_.clear();
        for (const auto& [i, v] : row) {
            if (pivot_[i]) {
                for (const auto& [j, w] : rows_[i]) add(j, T(-(v * w)));
            } else {
                add(i, v);
            }
        }
        Index lead = -1;
        for (Index j : touched_)
            if (!is_zero(acc_[j]) && (lead < 0 || j < lead)) lead = j;
        if (lead < 0) {
            clear();
            return false;
        }
        const T inv = T(1) / acc_[lead];
        std::vector<std::pair<Index, T>> out;
        for (Index j : touched_)
            if (j != lead && !is_zero(acc_[j])) out.push_back({j, acc_[j] * inv});
        clear();
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        eliminate(lead, out);
        for (const auto& e : out) users_[e.first].push_back(lead);
        pivot_[lead] = 1;
        rows_[lead] = std::move(out);
        last_ = lead;
        ++rank_;
        return true;
    }
    std::size_t rank() const { return rank_; }
    Index last_lead() const { return last_; }

private:
    void add(Index j, const T& v) {
        if (!mark_[j]) {
            mark_[j] = 1;
            touched_.push_back(j);
            acc_[j] = v;
        } else {
            acc_[j] += v;
        }
    }
    void clear() {
        for (Index j : touched_) {
            mark_[j] = 0;
            acc_[j] = T(0);
        }
    }
    // remove key `lead` from every pivot row holding it; users_ may be stale
    void eliminate(Index lead, const std::vector<std::pair<Index, T>>& out) {
        auto users = std::move(users_[lead]);
        users_[lead] = {};
        std::vector<std::pair<Index, T>> merged;
        for (Index u : users) {
            auto& pr = rows_[u];
            auto it = std::lower_bound(pr.begin(), pr.end(), lead,
                                       [](const auto& a, Index k) { return a.first < k; });
            if (it == pr.end() || it->first != lead) continue;
            const T f = it->second;
            pr.erase(it);
            merged.clear();
            std::size_t a = 0, b = 0;
            while (a < pr.size() || b < out.size()) {
                if (b == out.size() || (a < pr.size() && pr[a].first < out[b].first)) {
                    merged.push_back(pr[a++]);
                } else if (a == pr.size() || out[b].first < pr[a].first) {
                    merged.push_back({out[b].first, T(-(f * out[b].second))});
                    users_[out[b].first].push_back(u);
                    ++b;
                } else {
                    T s = pr[a].second - f * out[b].second;
                    if (!is_zero(s)) merged.push_back({pr[a].first, std::move(s)});
                    ++a;
                    ++b;
                }
            }
            std::swap(pr, merged);
        }
    }

    std::vector<T> acc_;
    std::vector<char> mark_, pivot_;
    std::vector<std::vector<std::pair<Index, T>>> rows_;
    std::vector<std::vector<Index>> users_;
    std::vector<Index> touched_;
    std::size_t rank_ = 0;
    Index last_ = -1;
};

}  // namespace boundaries
