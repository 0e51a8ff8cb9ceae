#include "boundaries/scenario.hpp"

#include "boundaries/comparison.hpp"
#include "boundaries/l1.hpp"
#include "boundaries/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

namespace boundaries {

namespace {

const std::set<std::string> kKinds{"extension", "product", "identity", "custom"};
const std::set<std::string> kScalars{"Q", "R", "F2", "F3", "F5", "F7"};
const std::set<std::string> kChecks{"e2", "compare", "l1", "oracle"};

struct Space {
    SSetPtr set;
    std::shared_ptr<Nerve> nerve;
    std::optional<Group> group;
};

Space space_from(const json& j, int N, const std::filesystem::path& dir) {
    Space s;
    if (j.contains("sset")) {
        s.set = sset_ref(j["sset"], dir);
        if (s.set->trunc() < N)
            throw InputError("simplicial set is truncated at " + std::to_string(s.set->trunc()) + " < N = " +
                             std::to_string(N));
        return s;
    }
    s.group = group_from_json(j);
    s.nerve = nerve_of_group(*s.group, N);
    s.set = s.nerve->set();
    return s;
}

struct Fibration {
    SimplicialMap f;
    std::shared_ptr<Nerve> total_nerve;
    std::optional<Group> total_group;
    bool needs_kan_check = true;
};

Fibration fibration_from(const ScenarioSpec& spec) {
    const auto& d = spec.data;
    const int N = spec.N;
    Fibration out;
    if (spec.kind == "extension") {
        const auto& e = d.at("extension");
        Group l = group_from_json(e.at("kernel")), g = group_from_json(e.at("group")),
              q = group_from_json(e.at("quotient"));
        Homomorphism i{&l, &g, e.at("inclusion").get<std::vector<int>>()};
        Homomorphism p{&g, &q, e.at("projection").get<std::vector<int>>()};
        if (auto why = check_short_exact(i, p); !why.empty()) throw InputError("extension data: " + why);
        out.total_nerve = nerve_of_group(g, N);
        auto nq = nerve_of_group(q, N);
        out.f = nerve_map(*out.total_nerve, *nq, p);
        out.total_group = g;
    } else if (spec.kind == "product") {
        const auto& p = d.at("product");
        auto b = space_from(p.at("base"), N, spec.dir);
        auto z = space_from(p.at("fiber"), N, spec.dir);
        out.f = product(b.set, z.set).pr1;
        out.needs_kan_check = false;
    } else if (spec.kind == "identity") {
        auto s = space_from(d.at("space"), N, spec.dir);
        out.f = SimplicialMap::identity(s.set);
        out.total_nerve = s.nerve;
        out.total_group = s.group;
        out.needs_kan_check = false;
    } else {
        const auto& m = d.at("custom").at("map");
        out.f = m.is_string() ? map_from_json(load_json_file(spec.dir / m.get<std::string>()),
                                              (spec.dir / m.get<std::string>()).parent_path())
                              : map_from_json(m, spec.dir);
        if (out.f.src->trunc() < N || out.f.tgt->trunc() < N)
            throw InputError("custom map is truncated below N = " + std::to_string(N));
    }
    return out;
}

template <class T>
CoefficientSystem<T> coefficients_from(const ScenarioSpec& spec, const Fibration& fib) {
    const json c = spec.data.value("coefficients", json{{"constant", {{"rank", 1}, {"norm", "sup"}}}});
    const auto x = fib.f.src;
    if (c.contains("file")) {
        auto path = spec.dir / c["file"].get<std::string>();
        return coeff_from_json<T>(load_json_file(path), x);
    }
    if (c.contains("action")) {
        if (!fib.total_nerve || !fib.total_group) throw InputError("action coefficients need a group total space");
        const auto& a = c["action"];
        auto mod = detail::module_from_json<T>(a.at("module"));
        std::vector<Matrix<T>> rho;
        for (const auto& m : a.at("matrices")) rho.push_back(matrix_from_json<T>(m));
        if (static_cast<int>(rho.size()) != fib.total_group->order())
            throw InputError("action needs one matrix per group element");
        auto sys = action_system<T>(*fib.total_nerve, *fib.total_group, rho, mod);
        auto v = sys.validate();
        if (!v.empty()) throw ValidationError("coefficient system: " + v.front());
        return sys;
    }
    return coeff_from_json<T>(c, x);
}

template <class T>
bool constant_rank_one(const CoefficientSystem<T>& a) {
    for (Id v = 0; v < a.base()->count(0); ++v)
        if (a.rank(v) != 1) return false;
    for (const auto& [e, m] : a.edges())
        if (!m.equals(Matrix<T>::identity(1))) return false;
    return true;
}

template <class T>
bool all_weights_zero(const CoefficientSystem<T>& a) {
    if constexpr (field_traits<T>::trivial_norm) return true;
    for (Id v = 0; v < a.base()->count(0); ++v) {
        const auto& m = a.module(v);
        if (!m.plain()) return false;
        for (const auto& w : m.weights())
            if (w != norm_t<T>(0)) return false;
    }
    return true;
}

template <class T>
std::vector<std::string> basis_seminorms(const Subquotient<T>& s) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < s.rank(); ++j) {
        Vec<T> e(s.rank(), T(0));
        e[j] = T(1);
        auto v = s.class_seminorm(e);
        out.push_back(v.infinite ? std::string("inf") : norm_str(v.value));
    }
    return out;
}

class Timer {
public:
    explicit Timer(RunReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
    void lap(const std::string& what) {
        auto t = std::chrono::steady_clock::now();
        r_.timing.push_back({what, std::chrono::duration<double>(t - t0_).count()});
        t0_ = t;
    }

private:
    RunReport& r_;
    std::chrono::steady_clock::time_point t0_;
};

OracleRing oracle_ring(const std::string& scalar, int& prime) {
    if (scalar == "Q" || scalar == "R") return OracleRing::Rationals;
    prime = std::stoi(scalar.substr(1));
    return OracleRing::ModP;
}

template <class T>
void run_typed(const ScenarioSpec& spec, RunReport& rep) {
    Timer timer(rep);
    const int N = spec.N;
    const Filtration filt = spec.filtration_II ? Filtration::II : Filtration::I;
    auto fib = fibration_from(spec);
    auto a = coefficients_from<T>(spec, fib);
    timer.lap("inputs");
    auto want = [&](const char* c) { return std::find(spec.checks.begin(), spec.checks.end(), c) != spec.checks.end(); };
    if (fib.needs_kan_check || want("e2")) {
        auto k = is_kan_fibration_up_to(fib.f, std::min(N, 4));
        CheckResult c{"kan_fibration", k.ok ? "pass" : "fail",
                      std::to_string(k.horns_checked) + " horns up to dimension " + std::to_string(std::min(N, 4)), {}};
        if (k.witness) c.witness.push_back(k.witness->str());
        rep.checks.push_back(std::move(c));
        timer.lap("kan");
    }
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(fib.f, N));
    {
        auto bad = check_bisimplex_grid(*grid);
        rep.checks.push_back({"bisimplex_faces", bad.empty() ? "pass" : "fail", "", bad});
        if (!bad.empty()) return;
    }
    auto pa = std::make_shared<const CoefficientSystem<T>>(a);
    DoubleComplex<T> d;
    try {
        d = build_double_complex(grid, pa, true);
        rep.checks.push_back({"double_complex_exactness", "pass", "d_h^2 = 0, d_v^2 = 0, d_h d_v + d_v d_h = 0", {}});
    } catch (const CompositionError& e) {
        rep.checks.push_back({"double_complex_exactness", "fail", "", {e.what()}});
        return;  // fail closed: no pages
    }
    timer.lap("double complex");
    auto cx = build_cochain_complex(pa, N);
    if (auto e = check_dd(cx)) {
        rep.checks.push_back({"cochain_exactness", "fail", "", {*e}});
        return;
    }
    rep.checks.push_back({"cochain_exactness", "pass", "delta delta = 0 on the total space", {}});
    std::vector<std::size_t> xr;
    for (int n = 0; n + 1 <= N; ++n) xr.push_back(cohomology_rank(cx, n));
    auto fr = filtration_ranks(d, filt);
    timer.lap("filtration ranks");
    auto frI = filt == Filtration::I ? fr : filtration_ranks(d, Filtration::I);
    timer.lap("first filtration ranks");
    {
        CheckResult c{"first_filtration_collapse", "pass", "", {}};
        for (int n = 0; n + 1 <= N; ++n)
            for (int s = 0; s <= n; ++s)
                if (frI.page_rank(2, s, n) != (s == 0 ? xr[n] : 0u)) {
                    c.status = "fail";
                    c.witness.push_back("E_2 row q=" + std::to_string(s) + " degree " + std::to_string(n) + " has rank " +
                                        std::to_string(frI.page_rank(2, s, n)));
                }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"einf_total", "pass", "", {}};
        for (int n = 0; n + 1 <= N; ++n) {
            std::size_t sum = 0;
            for (int s = 0; s <= n; ++s) sum += fr.page_rank(0, s, n);
            rep.total_ranks.push_back(sum);
            if (sum != fr.total_rank(n) || sum != frI.total_rank(n) || sum != xr[n]) {
                c.status = "fail";
                c.witness.push_back("degree " + std::to_string(n) + ": E_inf sum " + std::to_string(sum) +
                                    ", total cohomology " + std::to_string(xr[n]));
            }
        }
        rep.checks.push_back(std::move(c));
    }
    if (want("oracle")) {
        CheckResult c{"ordinary_oracle", "pass", "", {}};
        if (!constant_rank_one(a)) {
            c.status = "uncertified";
            c.detail = "oracle needs constant rank-one coefficients";
        } else {
            int prime = 2;
            auto ring = oracle_ring(spec.scalar, prime);
            for (int n = 0; n + 1 <= N; ++n) {
                auto o = ordinary_cohomology_oracle(*fib.f.src, ring, n, prime);
                if (o.rank != rep.total_ranks[n]) {
                    c.status = "fail";
                    c.witness.push_back("degree " + std::to_string(n) + ": oracle " + std::to_string(o.rank));
                }
            }
        }
        rep.checks.push_back(std::move(c));
        timer.lap("oracle");
    }
    // pages; seminorms at E_2 and E_inf when the dense presentation is small
    const bool zero_norms = all_weights_zero(a);
    std::optional<ExplicitPages<T>> explicit_pages;
    auto tot_small = [&](int n) {
        std::size_t s = 0;
        for (auto w : fr.gr[std::min(n + 1, N)]) s += w;
        for (auto w : fr.gr[n]) s += w;
        return s <= spec.dense_cap;
    };
    for (int r : [&] {
             std::vector<int> rs;
             for (int r = 1; r <= rep.r_max; ++r) rs.push_back(r);
             rs.push_back(0);
             return rs;
         }()) {
        for (int n = 0; n <= N; ++n)
            for (int s = 0; s <= n; ++s) {
                PageRow row;
                row.r = r;
                auto [p, q] = bidegree_of(filt, s, n - s);
                row.p = p;
                row.q = q;
                row.certified = fr.certified(s, n);
                if (row.certified) row.rank = fr.page_rank(r, s, n);
                if (row.certified && (r == 2 || r == 0)) {
                    if (zero_norms) {
                        row.seminorm_basis = std::vector<std::string>(*row.rank, "0");
                    } else if (r == 2) {
                        std::size_t sz = d.dim(p, q);
                        if (sz <= spec.dense_cap) {
                            auto e2 = e2_bidegree(d, filt, s, n - s);
                            row.seminorm_basis = basis_seminorms(e2);
                        }
                    } else if (tot_small(n)) {
                        if (!explicit_pages) explicit_pages.emplace(d, filt);
                        row.seminorm_basis = basis_seminorms(einf_filtration(*explicit_pages, s, n));
                    }
                }
                rep.pages.push_back(std::move(row));
            }
    }
    rep.emitted_pages = true;
    timer.lap("pages");
    if (want("e2")) {
        CheckResult c{"e2_identification", "pass", "", {}};
        std::size_t done = 0, skipped = 0;
        for (int q = 0; q + 2 <= N; ++q) {
            std::optional<FiberCoefficientSystem<T>> fcs;
            for (int p = 0; p + q <= N - 1; ++p) {
                if (static_cast<std::size_t>(d.dim(p, q)) > spec.dense_cap) {
                    ++skipped;
                    continue;
                }
                if (!fcs) fcs = fiber_coefficient_system(fib.f, a, q, false);
                auto r = e2_identification_check(d, *fcs, p, spec.tol);
                ++done;
                if (!r.ok()) {
                    c.status = "fail";
                    c.witness.push_back("(p,q) = (" + std::to_string(p) + "," + std::to_string(q) + "): " + r.note);
                }
            }
        }
        c.detail = std::to_string(done) + " bidegrees checked";
        if (skipped) {
            c.detail += ", " + std::to_string(skipped) + " above the dense cap";
            if (c.status == "pass") c.status = done ? "pass" : "uncertified";
        }
        rep.checks.push_back(std::move(c));
        timer.lap("e2 identification");
    }
    if (want("compare")) {
        CheckResult c{"comparison", "pass", "", {}};
        if (!tot_small(N - 1)) {
            c.status = "uncertified";
            c.detail = "total complex above the dense cap";
        } else {
            auto cr = comparison_of_spectral_sequences(fib.f, a, N, filt, std::min(rep.r_max, N - 1), filt == Filtration::II);
            if (!cr.ok()) {
                c.status = "fail";
                c.witness = cr.failures;
            }
            c.detail = std::string(cr.identity_everywhere ? "c_r is the identity on every page" : "c_r computed") +
                       ", " + std::to_string(cr.factorization_checks) + " E_2 factorizations";
        }
        rep.checks.push_back(std::move(c));
        timer.lap("comparison");
    }
    if (want("l1")) {
        auto lr = l1_double_and_pages(fib.f, a, N);
        CheckResult c{"l1_pages", lr.ok() ? "pass" : "fail", "", lr.failures};
        std::ostringstream os;
        os << "H_n(Tot) ranks";
        for (auto t : lr.total) os << ' ' << t;
        c.detail = os.str();
        rep.checks.push_back(std::move(c));
        timer.lap("l1");
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? sep : "") + v[i];
    return o;
}

std::string rtag(int r) { return r ? std::to_string(r) : std::string("inf"); }

}  // namespace

ScenarioSpec parse_scenario(const json& j, const std::filesystem::path& dir) {
    ScenarioSpec s;
    try {
        if (j.value("schema", std::string("scenario.v1")) != "scenario.v1") throw InputError("expected schema scenario.v1");
        s.data = j;
        s.dir = dir;
        s.kind = j.at("kind").get<std::string>();
        if (!kKinds.count(s.kind)) throw InputError("unknown scenario kind '" + s.kind + "'");
        s.N = j.value("trunc_dim", 5);
        if (s.N < 1 || s.N > 8) throw InputError("trunc_dim must be between 1 and 8");
        s.scalar = j.value("scalar", std::string("Q"));
        if (!kScalars.count(s.scalar)) throw InputError("unknown scalar domain '" + s.scalar + "'");
        auto f = j.value("filtration", std::string("II"));
        if (f != "I" && f != "II") throw InputError("filtration must be I or II");
        s.filtration_II = f == "II";
        s.r_max = j.value("r_max", s.N);
        if (s.r_max < 1) throw InputError("r_max must be positive");
        s.tol = j.value("tolerance", 1e-9);
        s.dense_cap = j.value("dense_cap", s.dense_cap);
        if (j.contains("checks"))
            for (const auto& c : j["checks"]) {
                auto name = c.get<std::string>();
                if (!kChecks.count(name)) throw InputError("unknown check '" + name + "'");
                s.checks.push_back(name);
            }
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario.v1: ") + e.what());
    }
    return s;
}

bool RunReport::passed() const {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

RunReport run_scenario(const ScenarioSpec& spec) {
    RunReport rep;
    rep.kind = spec.kind;
    rep.scalar = spec.scalar;
    rep.filtration = spec.filtration_II ? "II" : "I";
    rep.N = spec.N;
    rep.r_max = spec.r_max;
    try {
        if (spec.scalar == "Q") run_typed<Rational>(spec, rep);
        else if (spec.scalar == "R") run_typed<double>(spec, rep);
        else if (spec.scalar == "F2") run_typed<Mod<2>>(spec, rep);
        else if (spec.scalar == "F3") run_typed<Mod<3>>(spec, rep);
        else if (spec.scalar == "F5") run_typed<Mod<5>>(spec, rep);
        else run_typed<Mod<7>>(spec, rep);
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario.v1: ") + e.what());
    }
    return rep;
}

ReportFormat parse_format(const std::string& s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw InputError("unknown report format '" + s + "'");
}

std::string emit_report(const RunReport& r, ReportFormat f, bool timing) {
    std::ostringstream os;
    auto seminorms = [](const PageRow& p) { return p.seminorm_basis ? join(*p.seminorm_basis, ";") : std::string(); };
    if (f == ReportFormat::Csv) {
        os << "r,p,q,rank,certified,seminorm_basis\n";
        for (const auto& p : r.pages)
            os << rtag(p.r) << ',' << p.p << ',' << p.q << ',' << (p.rank ? std::to_string(*p.rank) : std::string())
               << ',' << (p.certified ? "true" : "false") << ',' << csv_escape(seminorms(p)) << '\n';
        return os.str();
    }
    if (f == ReportFormat::Json) {
        json j;
        j["schema"] = "report.v1";
        j["kind"] = r.kind;
        j["scalar"] = r.scalar;
        j["filtration"] = r.filtration;
        j["trunc_dim"] = r.N;
        j["r_max"] = r.r_max;
        j["passed"] = r.passed();
        json cs = json::array();
        for (const auto& c : r.checks)
            cs.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}, {"witness", c.witness}});
        j["checks"] = std::move(cs);
        j["total_ranks"] = r.total_ranks;
        json ps = json::array();
        for (const auto& p : r.pages) {
            json e{{"r", rtag(p.r)}, {"p", p.p}, {"q", p.q}, {"certified", p.certified}};
            e["rank"] = p.rank ? json(*p.rank) : json(nullptr);
            e["seminorm_basis"] = p.seminorm_basis ? json(*p.seminorm_basis) : json(nullptr);
            ps.push_back(std::move(e));
        }
        j["pages"] = std::move(ps);
        if (timing) {
            json t = json::object();
            for (const auto& [k, v] : r.timing) t[k] = format_real(v);
            j["timing_seconds"] = std::move(t);
        }
        return j.dump(2) + "\n";
    }
    os << "scenario " << r.kind << ", scalar " << r.scalar << ", filtration " << r.filtration << ", N = " << r.N
       << ", r_max = " << r.r_max << "\n";
    for (const auto& c : r.checks) {
        os << "  [" << c.status << "] " << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
        for (const auto& w : c.witness) os << "      " << w << "\n";
    }
    if (!r.total_ranks.empty()) {
        os << "total ranks:";
        for (auto t : r.total_ranks) os << ' ' << t;
        os << "\n";
    }
    int last = -1;
    for (const auto& p : r.pages) {
        if (p.r != last) {
            os << "E_" << rtag(p.r) << ":\n";
            last = p.r;
        }
        os << "  (" << p.p << "," << p.q << ") ";
        if (p.rank) os << "rank " << *p.rank;
        else os << "outside window";
        if (!p.certified) os << " [uncertified]";
        if (p.seminorm_basis && !p.seminorm_basis->empty()) os << " seminorms " << join(*p.seminorm_basis, " ");
        os << "\n";
    }
    if (timing)
        for (const auto& [k, v] : r.timing) os << "time " << k << " " << format_real(v) << "s\n";
    return os.str();
}

}  // namespace boundaries
