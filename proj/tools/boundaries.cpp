// boundaries: command-line front end. Exit codes: 0 pass, 1 check failure,
// 2 input error, 3 resource cap.
#include "boundaries/kan.hpp"
#include "boundaries/l1.hpp"
#include "boundaries/scenario.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace boundaries;
namespace fs = std::filesystem;

namespace {

template <class T>
struct Tag {
    using type = T;
};

template <class F>
auto with_scalar(const std::string& s, F&& f) {
    if (s == "Q") return f(Tag<Rational>{});
    if (s == "R") return f(Tag<double>{});
    if (s == "F2") return f(Tag<Mod<2>>{});
    if (s == "F3") return f(Tag<Mod<3>>{});
    if (s == "F5") return f(Tag<Mod<5>>{});
    if (s == "F7") return f(Tag<Mod<7>>{});
    throw InputError("unknown scalar domain '" + s + "' (Q, R, F2, F3, F5, F7)");
}

void write_out(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream o(path);
    if (!o) throw std::runtime_error("cannot write " + path);
    o << text;
    if (!o) throw std::runtime_error("write to " + path + " failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class T>
CoefficientSystem<T> load_coeff(const std::string& path, SSetPtr base) {
    if (path.empty()) {
        auto a = CoefficientSystem<T>::constant(base, SeminormedModule<T>::sup(1));
        a.validate();
        return a;
    }
    return coeff_from_json<T>(load_json_file(path), base);
}

// chain.v1: {"degree": n, "terms": [{"simplex": id, "coeffs": [...]}]}
template <class T>
Vec<T> load_chain(const std::string& path, const L1ChainComplex<T>& c, int& degree) {
    auto j = load_json_file(path);
    degree = j.at("degree").get<int>();
    if (degree < 0 || degree > c.top) throw InputError("chain degree outside the complex");
    Vec<T> v(c.dim(degree), T(0));
    for (const auto& t : j.at("terms")) {
        Id s = t.at("simplex").get<Id>();
        if (s < 0 || s >= c.base->count(degree)) throw InputError("chain simplex out of range");
        const auto& co = t.at("coeffs");
        const Index w = c.layout[degree].width(s);
        if (static_cast<Index>(co.size()) != w) throw InputError("chain coefficient has the wrong rank");
        for (Index i = 0; i < w; ++i) v[c.layout[degree].start(s) + i] += scalar_from_json<T>(co[i]);
    }
    return v;
}

template <class T>
std::string norm_text(const NormValue<T>& v) {
    return v.infinite ? std::string("inf") : norm_str(v.value);
}

template <class T>
std::string matrix_text(const SparseMatrix<T>& m) {
    return dump(matrix_to_json(m.to_dense()));
}

int report_exit(const RunReport& r, const std::string& format, const std::string& out, bool timing) {
    write_out(emit_report(r, parse_format(format), timing), out);
    return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("BOUNDARIES_THREADS")) {
        int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }
    CLI::App app{"boundaries: bounded cohomology, spectral sequences and l1 homology of finite simplicial data"};
    app.require_subcommand(1);
    int code = 0;
    std::string scalar = "Q", out, format = "text";
    bool timing = false;

    // run
    auto* run = app.add_subcommand("run", "run a scenario.v1 file");
    std::string scenario;
    run->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--format", format, "text, csv or json");
    run->add_option("--out", out, "output file (default stdout)");
    run->add_flag("--timing", timing, "include timings (breaks byte-identical output)");
    run->callback([&] {
        auto spec = parse_scenario(load_json_file(scenario), fs::path(scenario).parent_path());
        code = report_exit(run_scenario(spec), format, out, timing);
    });

    // sset
    auto* sset = app.add_subcommand("sset", "simplicial sets");
    sset->require_subcommand(1);
    int trunc = 4, cyclic = 0, k = 0, max_dim = 4;
    std::string group_file, a_file, b_file, map_file;
    auto* nerve = sset->add_subcommand("nerve", "nerve of a finite group");
    nerve->add_option("--cyclic", cyclic, "cyclic group order");
    nerve->add_option("--group", group_file, "group JSON ({\"table\": ...})");
    nerve->add_option("--trunc", trunc, "truncation");
    nerve->add_option("--out", out);
    nerve->callback([&] {
        Group g = !group_file.empty() ? group_from_json(load_json_file(group_file))
                  : cyclic > 0        ? Group::cyclic(cyclic)
                                      : throw InputError("give --cyclic or --group");
        write_out(dump(sset_to_json(*nerve_of_group(g, trunc)->set())), out);
    });
    auto* simplex = sset->add_subcommand("simplex", "standard simplex");
    simplex->add_option("--n", k, "dimension")->required();
    simplex->add_option("--trunc", trunc);
    simplex->add_option("--out", out);
    simplex->callback([&] { write_out(dump(sset_to_json(*standard_simplex(k, trunc))), out); });
    auto* circle = sset->add_subcommand("circle", "one vertex, one nondegenerate edge");
    circle->add_option("--trunc", trunc);
    circle->add_option("--out", out);
    circle->callback([&] { write_out(dump(sset_to_json(*circle_model(trunc))), out); });
    auto* prod = sset->add_subcommand("product", "product of two simplicial sets, with pr1 as map.v1");
    prod->add_option("a", a_file)->required()->check(CLI::ExistingFile);
    prod->add_option("b", b_file)->required()->check(CLI::ExistingFile);
    bool as_map = false;
    prod->add_flag("--map", as_map, "emit the projection to the first factor");
    prod->add_option("--out", out);
    prod->callback([&] {
        auto p = product(sset_from_json(load_json_file(a_file)), sset_from_json(load_json_file(b_file)));
        write_out(dump(as_map ? map_to_json(p.pr1) : sset_to_json(*p.set)), out);
    });
    auto* sval = sset->add_subcommand("validate", "check every simplicial identity");
    sval->add_option("file", a_file)->required()->check(CLI::ExistingFile);
    sval->callback([&] {
        auto x = sset_from_json(load_json_file(a_file));
        std::cout << "valid; simplices per dimension:";
        for (auto s : x->sizes()) std::cout << ' ' << s;
        std::cout << "\n";
    });
    auto* kan = sset->add_subcommand("kan-check", "exhaustive horn lifting for a map");
    kan->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
    kan->add_option("--max-dim", max_dim);
    kan->callback([&] {
        auto f = map_from_json(load_json_file(map_file), fs::path(map_file).parent_path());
        auto r = is_kan_fibration_up_to(f, max_dim);
        std::cout << (r.ok ? "kan fibration" : "not a kan fibration") << " up to dimension " << max_dim << " ("
                  << r.horns_checked << " horns)\n";
        if (r.witness) std::cout << "witness: " << r.witness->str() << "\n";
        code = r.ok ? 0 : 1;
    });

    // coeff
    auto* coeff = app.add_subcommand("coeff", "local coefficient systems");
    coeff->require_subcommand(1);
    std::string sset_file, coeff_file;
    auto* cval = coeff->add_subcommand("validate", "validate a coeff.v1 file on a simplicial set");
    cval->add_option("--sset", sset_file)->required()->check(CLI::ExistingFile);
    cval->add_option("coeff", coeff_file)->required()->check(CLI::ExistingFile);
    cval->add_option("--scalar", scalar);
    cval->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            load_coeff<T>(coeff_file, sset_from_json(load_json_file(sset_file)));
            std::cout << "valid\n";
            return 0;
        });
    });
    auto* pull = coeff->add_subcommand("pullback", "pull a system on the target back along a map");
    pull->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
    pull->add_option("coeff", coeff_file)->required()->check(CLI::ExistingFile);
    pull->add_option("--scalar", scalar);
    pull->add_option("--out", out);
    pull->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto f = map_from_json(load_json_file(map_file), fs::path(map_file).parent_path());
            auto b = load_coeff<T>(coeff_file, f.tgt);
            write_out(dump(coeff_to_json(pullback_system(f, b))), out);
            return 0;
        });
    });

    // bc
    auto* bc = app.add_subcommand("bc", "bounded cochains");
    bc->require_subcommand(1);
    int degree = 0;
    std::size_t vertex_cap = 1u << 20;
    bool dump_matrices = false;
    auto common = [&](CLI::App* c) {
        c->add_option("--sset", sset_file)->required()->check(CLI::ExistingFile);
        c->add_option("--coeff", coeff_file, "coeff.v1 (default constant sup-normed rank 1)");
        c->add_option("--scalar", scalar);
    };
    auto* bcoh = bc->add_subcommand("cohomology", "bounded cohomology with class seminorms");
    common(bcoh);
    bcoh->add_option("--degree", degree)->required();
    bcoh->add_flag("--dump-matrices", dump_matrices);
    bcoh->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto x = sset_from_json(load_json_file(sset_file));
            auto a = load_coeff<T>(coeff_file, x);
            auto c = build_cochain_complex(a, degree + 1);
            if (auto e = check_dd(c)) throw CompositionError(*e);
            auto h = bounded_cohomology(c, degree);
            std::cout << "degree,rank,class_seminorms\n" << degree << ',' << h.rank() << ',';
            for (std::size_t j = 0; j < h.rank(); ++j) {
                Vec<T> e(h.rank(), T(0));
                e[j] = T(1);
                std::cout << (j ? ";" : "") << norm_text(h.class_seminorm(e));
            }
            std::cout << "\n";
            if (dump_matrices)
                for (int n = 0; n <= degree; ++n) std::cout << "d^" << n << ":\n" << matrix_text(c.d[n]);
            return 0;
        });
    });
    auto* ubc = bc->add_subcommand("ubc", "uniform boundary condition constant");
    common(ubc);
    ubc->add_option("--degree", degree)->required();
    ubc->add_option("--vertex-cap", vertex_cap);
    ubc->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            if constexpr (field_traits<T>::trivial_norm) {
                throw InputError("ubc needs Q or R scalars");
            } else {
                auto x = sset_from_json(load_json_file(sset_file));
                auto a = load_coeff<T>(coeff_file, x);
                auto c = build_cochain_complex(a, degree + 1);
                auto r = ubc_constant(c, degree, vertex_cap);
                std::cout << "degree,kappa,vertices\n" << degree << ',' << norm_str(r.kappa) << ',' << r.vertices << "\n";
            }
            return 0;
        });
    });
    auto* h0 = bc->add_subcommand("h0", "invariants against degree-zero bounded cohomology");
    common(h0);
    h0->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto x = sset_from_json(load_json_file(sset_file));
            auto a = load_coeff<T>(coeff_file, x);
            auto c = build_cochain_complex(a, 1);
            auto h = bounded_cohomology(c, 0);
            auto inv = h0_invariants(c, h, 0);
            std::cout << "rank," << h.rank() << "\n";
            bool same = true;
            for (std::size_t j = 0; j < h.rank(); ++j) {
                Vec<T> e(h.rank(), T(0));
                e[j] = T(1);
                auto lhs = inv.seminorm(inv.from_h0.apply(e));
                auto rhs = h.class_seminorm(e);
                std::cout << "class " << j << ": invariant " << norm_text(lhs) << ", cohomology " << norm_text(rhs)
                          << "\n";
                same = same && lhs.infinite == rhs.infinite && (lhs.infinite || norm_eq(lhs.value, rhs.value));
            }
            code = same ? 0 : 1;
            return 0;
        });
    });

    // ss
    auto* ss = app.add_subcommand("ss", "spectral sequences of a map");
    ss->require_subcommand(1);
    std::string filtration = "II";
    int rmax = 0, N = 0;
    std::size_t dense_cap = 4000;
    auto ss_common = [&](CLI::App* c) {
        c->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
        c->add_option("--coeff", coeff_file, "coeff.v1 on the source (default constant sup-normed rank 1)");
        c->add_option("--scalar", scalar);
        c->add_option("--trunc", N, "truncation window (default min(5, map truncation))");
        c->add_option("--filtration", filtration, "I or II");
        c->add_option("--rmax", rmax, "last page (default N)");
        c->add_option("--dense-cap", dense_cap, "largest dense presentation for seminorms and E_2 checks");
        c->add_option("--format", format);
        c->add_option("--emit", out, "output file");
        c->add_flag("--timing", timing);
    };
    auto ss_spec = [&](std::vector<std::string> checks) {
        auto f = map_from_json(load_json_file(map_file), fs::path(map_file).parent_path());
        json j;
        j["schema"] = "scenario.v1";
        j["kind"] = "custom";
        j["custom"] = {{"map", fs::absolute(map_file).string()}};
        if (!coeff_file.empty()) j["coefficients"] = {{"file", fs::absolute(coeff_file).string()}};
        j["trunc_dim"] = N > 0 ? N : std::min(5, std::min(f.src->trunc(), f.tgt->trunc()));
        j["scalar"] = scalar;
        j["filtration"] = filtration;
        if (rmax > 0) j["r_max"] = rmax;
        j["dense_cap"] = dense_cap;
        j["checks"] = checks;
        return parse_scenario(j, "/");
    };
    auto* ssrun = ss->add_subcommand("run", "pages of the chosen filtration");
    ss_common(ssrun);
    ssrun->callback([&] {
        if (format == "text" && !out.empty() && fs::path(out).extension() == ".csv") format = "csv";
        code = report_exit(run_scenario(ss_spec({})), format, out, timing);
    });
    auto* sse2 = ss->add_subcommand("check-e2", "E_2 against H^p_b(Y; H^q_b(F;A))");
    ss_common(sse2);
    sse2->callback([&] { code = report_exit(run_scenario(ss_spec({"e2"})), format, out, timing); });
    auto* sscmp = ss->add_subcommand("compare-ordinary", "comparison with trivially seminormed coefficients");
    ss_common(sscmp);
    sscmp->callback([&] { code = report_exit(run_scenario(ss_spec({"compare", "oracle"})), format, out, timing); });

    // l1
    auto* l1 = app.add_subcommand("l1", "l1 homology");
    l1->require_subcommand(1);
    std::string cycle_file;
    auto* lh = l1->add_subcommand("homology", "l1 homology with class seminorms");
    common(lh);
    lh->add_option("--degree", degree)->required();
    lh->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto x = sset_from_json(load_json_file(sset_file));
            auto a = load_coeff<T>(coeff_file, x);
            auto c = build_l1_complex(a, degree + 1);
            if (auto e = check_boundary_squared(c)) throw CompositionError(*e);
            auto h = l1_homology(c, degree);
            std::cout << "degree,rank,class_seminorms\n" << degree << ',' << h.rank() << ',';
            for (std::size_t j = 0; j < h.rank(); ++j) {
                Vec<T> e(h.rank(), T(0));
                e[j] = T(1);
                std::cout << (j ? ";" : "") << norm_text(h.class_seminorm(e));
            }
            std::cout << "\n";
            return 0;
        });
    });
    auto* lss = l1->add_subcommand("ss", "homology spectral sequence of a map");
    lss->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
    lss->add_option("--coeff", coeff_file);
    lss->add_option("--scalar", scalar);
    lss->add_option("--trunc", N);
    lss->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto f = map_from_json(load_json_file(map_file), fs::path(map_file).parent_path());
            const int n = N > 0 ? N : std::min(5, std::min(f.src->trunc(), f.tgt->trunc()));
            auto a = load_coeff<T>(coeff_file, f.src);
            auto r = l1_double_and_pages(f, a, n);
            std::cout << "r,p,q,rank,certified\n";
            for (int rr : {2, 0})
                for (int t = 0; t + 1 <= n; ++t)
                    for (int s = 0; s <= t; ++s)
                        std::cout << (rr ? "2" : "inf") << ',' << s << ',' << t - s << ','
                                  << r.ranks.page_rank(rr, s, t) << ",true\n";
            for (auto& m : r.failures) std::cerr << "fail: " << m << "\n";
            code = r.ok() ? 0 : 1;
            return 0;
        });
    });
    auto* ldual = l1->add_subcommand("duality", "l1 seminorm against the bounded pairing");
    common(ldual);
    ldual->add_option("--cycle", cycle_file, "chain.v1 file")->required()->check(CLI::ExistingFile);
    ldual->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            if constexpr (field_traits<T>::trivial_norm) {
                throw InputError("duality needs Q or R scalars");
            } else {
                auto x = sset_from_json(load_json_file(sset_file));
                auto a = load_coeff<T>(coeff_file, x);
                auto top = std::min(x->trunc(), 4);
                auto ch = build_l1_complex(a, top);
                int n = 0;
                auto z = load_chain(cycle_file, ch, n);
                auto co = build_cochain_complex(a, top);
                auto r = duality_pairing_check(ch, co, n, z);
                std::cout << "degree,l1_seminorm,pairing,equal\n"
                          << n << ',' << norm_text(r.l1) << ',' << scalar_str(r.pairing) << ','
                          << (r.ok() ? "true" : "false") << "\n";
                if (!r.note.empty()) std::cerr << r.note << "\n";
                code = r.ok() ? 0 : 1;
            }
            return 0;
        });
    });
    auto* lsv = l1->add_subcommand("sv-upper", "l1 seminorm of a fundamental cycle (an upper bound only)");
    common(lsv);
    lsv->add_option("--fundamental-class", cycle_file, "chain.v1 file")->required()->check(CLI::ExistingFile);
    lsv->callback([&] {
        with_scalar(scalar, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto x = sset_from_json(load_json_file(sset_file));
            auto a = load_coeff<T>(coeff_file, x);
            auto ch = build_l1_complex(a, std::min(x->trunc(), 4));
            int n = 0;
            auto z = load_chain(cycle_file, ch, n);
            auto h = l1_homology(ch, n);
            auto cls = h.classify(z);
            if (!cls) throw InputError("the chain is not a cycle");
            std::cout << "upper bound for the simplicial volume from this finite model: "
                      << norm_text(h.class_seminorm(*cls)) << "\n";
            return 0;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource cap: out of memory\n";
        return 3;
    } catch (const CompositionError& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}
