// Command-line surface: homology and flavor computations plus the batch
// verification harness over the golden corpus.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floer/connect_sum.hpp"
#include "floer/equivariant.hpp"
#include "floer/heegaard.hpp"
#include "floer/io.hpp"
#include "floer/novikov.hpp"
#include "floer/report.hpp"

using namespace floer;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

Flavor flavor_from_string(const std::string& s) {
    if (s == "minus") return Flavor::Minus;
    if (s == "infty") return Flavor::Infty;
    if (s == "plus") return Flavor::Plus;
    throw ValidationError("unknown flavor '" + s + "' (expected minus|infty|plus)");
}

// ---------------------------------------------------------------------------
// homology
// ---------------------------------------------------------------------------

int cmd_homology(const std::string& path) {
    auto f = load_complex_file(path);
    return dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        if (f.kind() == ComplexFile::Kind::Laurent) {
            auto L = build_laurent<R>(f);
            auto h = laurent_homology(L);
            std::cout << format_homology_table(
                h, "homology over " + f.ring.name() + " (degrees mod " +
                       std::to_string(L.deg_t == 0 ? 0 : -L.deg_t) + ")");
        } else {
            auto c = f.kind() == ComplexFile::Kind::WithU   ? build_ucomplex<R>(f).base
                     : f.kind() == ComplexFile::Kind::WithJ ? build_jcomplex<R>(f).base
                                                            : build_graded<R>(f);
            std::cout << format_homology_table(homology(c), "homology over " + f.ring.name());
        }
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// sbundle
// ---------------------------------------------------------------------------

template <Ring R>
ComplexFile jcomplex_to_file(const JComplex<R>& s, RingSpec ring) {
    ComplexFile out;
    out.ring = ring;
    out.ring.laurent = false;
    for (const auto& g : s.base.gens()) out.gens.push_back(g);
    auto coeff_str = [](const R& v) { return v.to_string(); };
    for (const auto& [rc, v] : s.base.diff().entries())
        out.diff.emplace_back(s.base.gen(rc.second).id, s.base.gen(rc.first).id,
                              mpq_class(coeff_str(v)), 0);
    for (const auto& [rc, v] : s.j.entries())
        out.jmap.emplace_back(s.base.gen(rc.second).id, s.base.gen(rc.first).id,
                              mpq_class(coeff_str(v)), 0);
    return out;
}

int cmd_sbundle(const std::string& path, const std::string& emit_path) {
    auto f = load_complex_file(path);
    if (f.kind() != ComplexFile::Kind::WithU) {
        std::cerr << "sbundle needs a complex with a umap\n";
        return kExitUsage;
    }
    return dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        auto c = build_ucomplex<R>(f);
        auto s = s_bundle(c);
        std::cout << format_homology_table(homology(s.total.base),
                                           "H(S_U(C)) over " + f.ring.name());
        if (!emit_path.empty()) {
            std::ofstream out(emit_path);
            out << emit_complex_file(jcomplex_to_file(s.total, f.ring));
            std::cout << "wrote " << emit_path << "\n";
        }
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// jones
// ---------------------------------------------------------------------------

int cmd_jones(const std::string& path, const std::string& flavor_str, int lo, int hi) {
    auto f = load_complex_file(path);
    Flavor flavor = flavor_from_string(flavor_str);
    DegreeWindow w(lo, hi);
    w.require_safe();
    return dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        JComplex<R> s;
        if (f.kind() == ComplexFile::Kind::WithJ) {
            s = build_jcomplex<R>(f);
        } else if (f.kind() == ComplexFile::Kind::WithU) {
            s = s_bundle(build_ucomplex<R>(f)).total; // J = multiplication by y
            std::cout << "input has a umap; computing E^" << flavor_str << "(S_U(C))\n";
        } else {
            std::cerr << "jones needs a jmap (or a umap to take the bundle first)\n";
            return kExitUsage;
        }
        auto e = jones_flavor(s, flavor, w);
        std::cout << format_homology_table(
            safe_homology(e), "H(E^" + flavor_str + ") on safe range [" +
                                  std::to_string(w.safe_lo()) + "," + std::to_string(w.safe_hi()) +
                                  "]" + (flavor == Flavor::Infty ? " (2-periodic up to S)" : ""));
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// flavors (filtered Laurent complexes)
// ---------------------------------------------------------------------------

int cmd_flavors(const std::string& path, int cut, int lo, int hi) {
    auto f = load_complex_file(path);
    if (f.kind() != ComplexFile::Kind::Laurent) {
        std::cerr << "flavors needs a Laurent complex (deg_t line)\n";
        return kExitUsage;
    }
    DegreeWindow w(lo, hi);
    return dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        auto L = build_laurent<R>(f);
        auto sp = check_semipositive(L);
        if (!sp.semi_positive) {
            std::cerr << "differential is not semi-positive; flavors undefined\n";
            return kExitVerifyFail;
        }
        CutLevel c{cut};
        auto safe = [&](const MaterializedComplex<R>& m) {
            return restrict_report(homology(m.complex), w.safe_lo(), w.safe_hi());
        };
        std::cout << format_homology_table(safe(minus_complex(L, c, w)), "minus flavor");
        std::cout << format_homology_table(safe(full_complex(L, c, w)), "full complex");
        std::cout << format_homology_table(safe(plus_complex(L, c, w)), "plus flavor");
        std::cout << format_homology_table(homology(hat_complex(L, c)), "hat flavor");

        auto pl = pair_les(L, c, w);
        CheckList checks;
        checks.add("pair-les-exact", pl.les.all_exact());
        checks.print_trailer(std::cout);
        return checks.all_ok() ? kExitOk : kExitVerifyFail;
    });
}

// ---------------------------------------------------------------------------
// consum
// ---------------------------------------------------------------------------

int cmd_consum(const std::string& path1, const std::string& path2, const std::string& flavor_str,
               int lo, int hi, int offset) {
    auto f1 = load_complex_file(path1);
    auto f2 = load_complex_file(path2);
    if (f1.ring.base != f2.ring.base) {
        std::cerr << "ring mismatch between the two complexes\n";
        return kExitUsage;
    }
    if (f1.kind() != ComplexFile::Kind::WithU || f2.kind() != ComplexFile::Kind::WithU) {
        std::cerr << "consum needs two complexes with umaps\n";
        return kExitUsage;
    }
    Flavor flavor = flavor_from_string(flavor_str);
    DegreeWindow w(lo, hi);
    return dispatch_base(f1.ring.base, [&](auto tag) {
        using R = decltype(tag);
        auto p = product_ucomplex(build_ucomplex<R>(f1), build_ucomplex<R>(f2));
        auto fp = s_otimes(p.product, flavor, w, offset);
        std::cout << format_homology_table(
            restrict_report(homology(fp.complex), w.safe_lo(), w.safe_hi()),
            "H(S_(U1+U2+u)((C1 (x) C2) (x) V^" + flavor_str + ")) on the safe range");

        CheckList checks;
        checks.add("e-su-identity", verify_e_su_identity(p.product, flavor, w).ok());
        checks.add("null-homotopy-u1-vs-u2", explicit_null_homotopy(p).ok());
        if (f1.ring.is_field())
            checks.add("u-vs-t-action", u_vs_t_action(p.product, flavor, w, offset).ok());
        checks.print_trailer(std::cout);
        return checks.all_ok() ? kExitOk : kExitVerifyFail;
    });
}

// ---------------------------------------------------------------------------
// heegaard
// ---------------------------------------------------------------------------

int cmd_heegaard(const std::string& path, const std::string& emit_module,
                 const std::string& degrees, int deg_t) {
    auto d = load_heegaard_file(path);
    auto gens = enumerate_generators(d);
    std::cout << "genus " << d.genus << ", " << gens.size() << " generators\n";
    for (const auto& g : gens) std::cout << "  " << g.label() << "\n";
    auto sc = signed_count(d);
    std::cout << "signed count (enumeration) = " << sc.by_enumeration.get_str() << "\n";
    std::cout << "signed count (determinant) = " << sc.by_determinant.get_str() << "\n";

    if (!emit_module.empty()) {
        std::map<std::string, int> assignment;
        std::istringstream is(degrees);
        std::string item;
        while (std::getline(is, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw ValidationError("degrees: expected label=degree");
            assignment[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        }
        auto L = formal_cf_module<Zint>(d, assignment, deg_t);
        ComplexFile out;
        out.ring = {BaseRing::Z, true};
        out.deg_t = deg_t;
        out.gens = L.gens;
        std::ofstream os(emit_module);
        os << emit_complex_file(out);
        std::cout << "wrote " << emit_module << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

template <Ring R>
void verify_typed(const ComplexFile& f, CheckList& checks) {
    switch (f.kind()) {
        case ComplexFile::Kind::Plain: {
            auto c = build_graded<R>(f);
            checks.add("d-squared-zero", (c.diff() * c.diff()).is_zero());
            checks.add("parallel-homology-consistent", homology(c) == homology_serial(c));
            break;
        }
        case ComplexFile::Kind::WithU: {
            auto c = build_ucomplex<R>(f);
            checks.add("d-squared-zero", (c.base.diff() * c.base.diff()).is_zero());
            checks.add("umap-chain-map", is_chain_map(c.umap()).ok);
            auto s = s_bundle(c);
            checks.add("sbundle-j-anticommutes", is_chain_map(s.total.jmap()).ok);
            checks.add("sbundle-j-squared-zero", (s.total.j * s.total.j).is_zero());
            auto cc = cone_compare(c);
            checks.add("cone-les-exact", cc.les.all_exact());
            checks.add("connecting-equals-u", cc.connecting_is_u);
            DegreeWindow w(-12, 12);
            for (Flavor flavor : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
                checks.add("e-su-identity-" + flavor_name(flavor),
                           verify_e_su_identity(c, flavor, w).ok());
            if (ring_spec_of<R>::get().is_field())
                checks.add("u-vs-t-action", u_vs_t_action(c, Flavor::Infty, w).ok());
            checks.add("parallel-homology-consistent",
                       homology(s.total.base) == homology_serial(s.total.base));
            break;
        }
        case ComplexFile::Kind::WithJ: {
            auto s = build_jcomplex<R>(f);
            checks.add("d-squared-zero", (s.base.diff() * s.base.diff()).is_zero());
            checks.add("jmap-anticommutes", is_chain_map(s.jmap()).ok);
            DegreeWindow w(-12, 12);
            checks.add("fundamental-ses-exact", fundamental_ses(s, w).les.all_exact());
            DegreeWindow big(-16, 16);
            for (Flavor flavor : {Flavor::Minus, Flavor::Infty, Flavor::Plus}) {
                auto small_h = safe_homology(jones_flavor(s, flavor, w));
                auto big_h = restrict_report(safe_homology(jones_flavor(s, flavor, big)),
                                             w.safe_lo(), w.safe_hi());
                bool stable = true;
                for (int d = w.safe_lo(); d <= w.safe_hi(); ++d) {
                    DegreeHomology<R> a, b;
                    if (small_h.count(d)) a = small_h.at(d);
                    if (big_h.count(d)) b = big_h.at(d);
                    if (!(a == b)) stable = false;
                }
                checks.add("window-stability-" + flavor_name(flavor), stable);
            }
            break;
        }
        case ComplexFile::Kind::Laurent: {
            auto L = build_laurent<R>(f);
            checks.add("d-squared-zero", (L.diff * L.diff).is_zero());
            auto sp = check_semipositive(L);
            checks.add("semi-positive", sp.semi_positive);
            if (sp.semi_positive && L.deg_t < 0) {
                checks.add("pair-les-exact",
                           pair_les(L, CutLevel{1}, DegreeWindow(-12, 12)).les.all_exact());
                auto hat = hat_complex(L, CutLevel{1});
                checks.add("hat-is-cut-slice", hat.size() == L.size());
            }
            if (ring_spec_of<R>::get().is_field()) {
                laurent_homology(L); // must not throw
                if (L.deg_t == -2)
                    checks.add("su-of-laurent-acyclic",
                               report_trivial(laurent_homology(su_of_laurent(L))));
            }
            break;
        }
    }
}

int cmd_verify(const std::string& path) {
    auto f = load_complex_file(path);
    CheckList checks;
    checks.add("round-trip-canonical",
               emit_complex_file(parse_complex_file(emit_complex_file(f))) == emit_complex_file(f));
    dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        verify_typed<R>(f, checks);
        return 0;
    });
    checks.print_trailer(std::cout);
    return checks.all_ok() ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// golden
// ---------------------------------------------------------------------------

std::string golden_report(const std::filesystem::path& path) {
    std::ostringstream os;
    os << "file " << path.filename().string() << "\n";
    if (path.extension() == ".hgd") {
        auto d = load_heegaard_file(path.string());
        auto gens = enumerate_generators(d);
        auto sc = signed_count(d);
        os << "genus " << d.genus << "\n";
        os << "generators " << gens.size() << "\n";
        os << "signed_count " << sc.value.get_str() << "\n";
        return os.str();
    }

    auto f = load_complex_file(path.string());
    os << "ring " << f.ring.name() << "\n";
    os << "canonical\n" << emit_complex_file(f);
    dispatch_base(f.ring.base, [&](auto tag) {
        using R = decltype(tag);
        switch (f.kind()) {
            case ComplexFile::Kind::Plain: {
                os << format_homology_table(homology(build_graded<R>(f)), "homology");
                break;
            }
            case ComplexFile::Kind::WithU: {
                auto c = build_ucomplex<R>(f);
                os << format_homology_table(homology(c.base), "homology");
                os << format_homology_table(homology(s_bundle(c).total.base), "H(S_U(C))");
                break;
            }
            case ComplexFile::Kind::WithJ: {
                auto s = build_jcomplex<R>(f);
                os << format_homology_table(homology(s.base), "homology");
                DegreeWindow w(-12, 12);
                for (Flavor flavor : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
                    os << format_homology_table(safe_homology(jones_flavor(s, flavor, w)),
                                                "H(E^" + flavor_name(flavor) + ") safe [-10,10]");
                break;
            }
            case ComplexFile::Kind::Laurent: {
                auto L = build_laurent<R>(f);
                if (ring_spec_of<R>::get().admits_snf())
                    os << format_homology_table(laurent_homology(L), "laurent homology");
                if (check_semipositive(L).semi_positive && L.deg_t < 0) {
                    DegreeWindow w(-12, 12);
                    CutLevel cut{1};
                    auto safe = [&](const MaterializedComplex<R>& m) {
                        return restrict_report(homology(m.complex), w.safe_lo(), w.safe_hi());
                    };
                    os << format_homology_table(safe(minus_complex(L, cut, w)),
                                                "minus flavor safe [-10,10] cut 1");
                    os << format_homology_table(safe(full_complex(L, cut, w)),
                                                "full complex safe [-10,10]");
                    os << format_homology_table(safe(plus_complex(L, cut, w)),
                                                "plus flavor safe [-10,10] cut 1");
                    os << format_homology_table(homology(hat_complex(L, cut)), "hat flavor cut 1");
                }
                break;
            }
        }
        return 0;
    });
    return os.str();
}

int cmd_golden(const std::string& dir, bool write_expected) {
    namespace fs = std::filesystem;
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        auto ext = entry.path().extension();
        if (ext == ".cfx" || ext == ".hgd") inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        std::cerr << "no corpus files in " << dir << "\n";
        return kExitUsage;
    }

    CheckList checks;
    for (const auto& path : inputs) {
        std::string report = golden_report(path);
        fs::path expected = fs::path(dir) / "expected" / (path.stem().string() + ".out");
        if (write_expected) {
            fs::create_directories(expected.parent_path());
            std::ofstream out(expected);
            out << report;
            checks.add(path.filename().string(), true);
            continue;
        }
        bool ok = fs::exists(expected) && read_text_file(expected.string()) == report;
        checks.add(path.filename().string(), ok);
        if (path.filename() == "s1xs2_sK.cfx") std::cout << report;
    }
    checks.print_trailer(std::cout);
    if (write_expected) std::cout << "expected outputs written\n";
    return checks.all_ok() ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact chain-level computations for Floer-type complexes"};
    app.require_subcommand(1);

    std::string path, path2, emit_path, flavor = "minus", degrees, dir = "golden";
    std::vector<int> window = {-12, 12};
    int cut = 1, offset = 0, deg_t = -2;
    bool write_expected = false;

    auto* homology_cmd = app.add_subcommand("homology", "homology of a complex file");
    homology_cmd->add_option("file", path)->required();

    auto* sbundle_cmd = app.add_subcommand("sbundle", "homology of the algebraic S^1-bundle");
    sbundle_cmd->add_option("file", path)->required();
    sbundle_cmd->add_option("--emit", emit_path, "write S_U(C) with its J-map to a file");

    auto* jones_cmd = app.add_subcommand("jones", "equivariant flavor E^bullet of a J-complex");
    jones_cmd->add_option("file", path)->required();
    jones_cmd->add_option("--flavor", flavor, "minus|infty|plus")->required();
    jones_cmd->add_option("--window", window, "degree window LO HI")->expected(2)->required();

    auto* flavors_cmd = app.add_subcommand("flavors", "filtration flavors of a Laurent complex");
    flavors_cmd->add_option("file", path)->required();
    flavors_cmd->add_option("--cut", cut, "cut offset (default 1)");
    flavors_cmd->add_option("--window", window, "degree window LO HI")->expected(2)->required();

    auto* consum_cmd = app.add_subcommand("consum", "connected-sum fiber product of two U-complexes");
    consum_cmd->add_option("file1", path)->required();
    consum_cmd->add_option("file2", path2)->required();
    consum_cmd->add_option("--flavor", flavor, "minus|infty|plus")->required();
    consum_cmd->add_option("--window", window, "degree window LO HI")->expected(2)->required();
    consum_cmd->add_option("--offset", offset, "u-exponent cut (default 0 = V^bullet literally)");

    auto* heegaard_cmd = app.add_subcommand("heegaard", "generators and signed count of a diagram");
    heegaard_cmd->add_option("file", path)->required();
    heegaard_cmd->add_option("--emit-module", emit_path, "write the chain module as a Laurent file");
    heegaard_cmd->add_option("--degrees", degrees, "comma list label=degree for --emit-module");
    heegaard_cmd->add_option("--deg-t", deg_t, "deck transformation degree (default -2)");

    auto* verify_cmd = app.add_subcommand("verify", "run every applicable invariant on a file");
    verify_cmd->add_option("file", path)->required();

    auto* golden_cmd = app.add_subcommand("golden", "recompute and diff the golden corpus");
    golden_cmd->add_option("--dir", dir, "corpus directory (default ./golden)");
    golden_cmd->add_flag("--write-expected", write_expected, "regenerate expected outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (homology_cmd->parsed()) return cmd_homology(path);
        if (sbundle_cmd->parsed()) return cmd_sbundle(path, emit_path);
        if (jones_cmd->parsed()) return cmd_jones(path, flavor, window[0], window[1]);
        if (flavors_cmd->parsed()) return cmd_flavors(path, cut, window[0], window[1]);
        if (consum_cmd->parsed()) return cmd_consum(path, path2, flavor, window[0], window[1], offset);
        if (heegaard_cmd->parsed()) return cmd_heegaard(path, emit_path, degrees, deg_t);
        if (verify_cmd->parsed()) return cmd_verify(path);
        if (golden_cmd->parsed()) return cmd_golden(dir, write_expected);
    } catch (const InternalMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const NotExact& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        // parse errors, unsupported rings, invalid inputs
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
