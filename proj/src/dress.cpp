#include "boundaries/dress.hpp"

namespace boundaries {

namespace {

int shuffle_starting(const PrismShape& s, GridPoint second) {
    for (int k = 0; k < s.count(); ++k)
        if (s.path(k).size() > 1 && s.path(k)[1] == second) return k;
    return -1;
}

}  // namespace

BisimplexGrid bisimplex_grid(const SimplicialMap& f, int N) {
    const auto& x = *f.src;
    if (N < 0 || N > x.trunc() || N > f.tgt->trunc())
        throw InputError("bisimplex grid up to total degree " + std::to_string(N) + " exceeds the truncation");
    BisimplexGrid g;
    g.f = f;
    g.N = N;
    FaceIndex faces(x);
    PreimageIndex pre(f);
    auto grid = [&](auto& v) { v.resize(N + 1); };
    grid(g.cells);
    grid(g.tau);
    grid(g.tau_start);
    grid(g.corner);
    grid(g.h_edge);
    grid(g.v_edge);
    grid(g.hface);
    grid(g.vface);
    std::vector<std::vector<PrismShape>> shapes(N + 1);
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q <= N; ++q) shapes[p].emplace_back(p, q);
    for (int p = 0; p <= N; ++p) {
        for (int q = 0; p + q <= N; ++q) {
            const auto& sh = shapes[p][q];
            PrismMaps cell(p, q, sh.count());
            std::vector<Id> tau, start{0};
            for (Id t = 0; t < f.tgt->count(p); ++t) {
                Id before = cell.size();
                enumerate_over(f, faces, pre, p, q, t, cell);
                tau.insert(tau.end(), cell.size() - before, t);
                start.push_back(cell.size());
            }
            cell.build_index();
            const int n = p + q;
            const int hs = p ? shuffle_starting(sh, {1, 0}) : -1;
            const int vs = q ? shuffle_starting(sh, {0, 1}) : -1;
            std::vector<Id> corner(cell.size()), he(cell.size(), -1), ve(cell.size(), -1);
            for (Id k = 0; k < cell.size(); ++k) {
                const Id* t = cell.at(k);
                corner[k] = x.vertex(n, t[0], 0);
                if (hs >= 0) he[k] = x.edge(n, t[hs], 0, 1);
                if (vs >= 0) ve[k] = x.edge(n, t[vs], 0, 1);
            }
            g.cells[p].push_back(std::move(cell));
            g.tau[p].push_back(std::move(tau));
            g.tau_start[p].push_back(std::move(start));
            g.corner[p].push_back(std::move(corner));
            g.h_edge[p].push_back(std::move(he));
            g.v_edge[p].push_back(std::move(ve));
        }
    }
    // face tables need the smaller cells indexed first
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q <= N; ++q) {
            const auto& cell = g.cells[p][q];
            std::vector<std::vector<Id>> hf, vf;
            auto table = [&](const PrismShape& small, const PrismMaps& target,
                             const std::function<GridPoint(GridPoint)>& phi, const char* what) {
                PrismPlan plan(small, shapes[p][q], phi);
                std::vector<Id> out(cell.size());
                std::vector<Id> buf(plan.size());
                for (Id k = 0; k < cell.size(); ++k) {
                    plan.apply(x, cell.at(k), buf.data());
                    out[k] = target.find(buf.data());
                    if (out[k] < 0)
                        throw std::logic_error(std::string(what) + " face of bisimplex " + std::to_string(k) +
                                               " in bidegree (" + std::to_string(p) + "," + std::to_string(q) +
                                               ") is missing");
                }
                return out;
            };
            for (int i = 0; p > 0 && i <= p; ++i)
                hf.push_back(table(shapes[p - 1][q], g.cells[p - 1][q],
                                   [i](GridPoint v) { return GridPoint{v.first < i ? v.first : v.first + 1, v.second}; },
                                   "horizontal"));
            for (int j = 0; q > 0 && j <= q; ++j)
                vf.push_back(table(shapes[p][q - 1], g.cells[p][q - 1],
                                   [j](GridPoint v) { return GridPoint{v.first, v.second < j ? v.second : v.second + 1}; },
                                   "vertical"));
            g.hface[p].push_back(std::move(hf));
            g.vface[p].push_back(std::move(vf));
        }
    return g;
}

std::vector<std::string> check_bisimplex_grid(const BisimplexGrid& g) {
    std::vector<std::string> out;
    const auto& y = *g.f.tgt;
    for (int p = 0; p <= g.N; ++p)
        for (int q = 0; p + q <= g.N; ++q) {
            auto where = [&](Id k) {
                return "(" + std::to_string(p) + "," + std::to_string(q) + ") bisimplex " + std::to_string(k);
            };
            for (Id k = 0; k < g.count(p, q); ++k) {
                // vertical faces keep tau, horizontal faces take its faces
                for (int j = 0; q > 0 && j <= q; ++j)
                    if (g.tau[p][q - 1][g.vface[p][q][j][k]] != g.tau[p][q][k])
                        out.push_back(where(k) + ": vertical face changes the base simplex");
                for (int i = 0; p > 0 && i <= p; ++i)
                    if (g.tau[p - 1][q][g.hface[p][q][i][k]] != y.face(p, i, g.tau[p][q][k]))
                        out.push_back(where(k) + ": horizontal face is not over the face of tau");
                for (int i = 0; p > 0 && i <= p; ++i)
                    for (int j = 0; q > 0 && j <= q; ++j) {
                        Id a = g.vface[p - 1][q][j][g.hface[p][q][i][k]];
                        Id b = g.hface[p][q - 1][i][g.vface[p][q][j][k]];
                        if (a != b) out.push_back(where(k) + ": horizontal and vertical faces do not commute");
                    }
                if (out.size() > 20) return out;
            }
        }
    return out;
}

std::vector<Id> first_column(const BisimplexGrid& g, int p, int q, const std::vector<Fiber>& vertex_fibers) {
    const auto& y = *g.f.tgt;
    PrismShape small(0, q), big(p, q);
    PrismPlan plan(small, big, [](GridPoint v) { return GridPoint{0, v.second}; });
    std::vector<Id> buf(plan.size()), out(g.count(p, q));
    for (Id k = 0; k < g.count(p, q); ++k) {
        plan.apply(*g.f.src, g.cells[p][q].at(k), buf.data());
        const auto& fb = vertex_fibers.at(y.vertex(p, g.tau[p][q][k], 0));
        out[k] = fb.levels[q].find(buf.data());
        if (out[k] < 0) throw std::logic_error("restriction to the first column left the fiber");
    }
    return out;
}

}  // namespace boundaries
