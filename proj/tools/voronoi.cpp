// voronoi: command-line front end. Exit codes: 0 ok, 1 falsified check, 2 usage or input error.

#include "voronoi/catalog.hpp"
#include "voronoi/conefan.hpp"
#include "voronoi/io.hpp"
#include "voronoi/picard.hpp"
#include "voronoi/tai.hpp"
#include "voronoi/toric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace voronoi;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFalsified = 1, kUsage = 2;

struct Output {
    json doc;
    std::string text;
    int code = kOk;
};

json rational_matrix(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json int_matrix(const IntMatrix& m) { return rational_matrix(to_rational(m)); }

json int_vector(const IntVector& v) {
    json out = json::array();
    for (const auto& c : v.coords()) out.push_back(c.get_str());
    return out;
}

json rationals(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(to_string(c));
    return out;
}

Output cmd_minvec(const std::string& gram) {
    const QuadForm q = parse_form(gram);
    const auto mv = minimal_vectors(q);
    Output o;
    json reps = json::array();
    std::ostringstream t;
    t << "minimum " << to_string(mv.minimum) << ", kissing " << mv.kissing() << "\n";
    for (const auto& x : mv.reps) {
        reps.push_back(int_vector(x));
        t << "  +-" << to_string(x) << "\n";
    }
    o.doc = {{"minimum", to_string(mv.minimum)}, {"kissing", mv.kissing()}, {"min_vectors", reps}};
    o.text = t.str();
    return o;
}

Output cmd_perfect_check(const std::string& gram) {
    const QuadForm q = parse_form(gram);
    const auto mv = minimal_vectors(q);
    const auto r = perfection_rank(q);
    const bool perfect = r == sym_dim(q.dim());
    Output o;
    o.doc = {{"perfect", perfect}, {"perfection_rank", r}, {"needed", sym_dim(q.dim())},
             {"minimum", to_string(mv.minimum)}, {"kissing", mv.kissing()}};
    std::ostringstream t;
    t << (perfect ? "perfect" : "not perfect") << ": rank " << r << " of " << sym_dim(q.dim()) << ", minimum "
      << to_string(mv.minimum) << ", kissing " << mv.kissing() << "\n";
    o.text = t.str();
    return o;
}

Output cmd_perfect_enumerate(std::size_t g, unsigned jobs, const std::string& out_path) {
    CatalogFile cat{kCatalogVersion, g, enumerate_perfect(g, {jobs, true})};
    Output o;
    if (!closure_certificate_holds(cat.classes)) o.code = kFalsified;
    if (!out_path.empty()) catalog_save(cat, out_path);
    o.doc = json::parse(catalog_to_string(cat));
    std::ostringstream t;
    t << "g = " << g << ": " << cat.classes.size() << " perfect form class(es), closure certificate "
      << (o.code == kOk ? "holds" : "FAILS") << "\n";
    for (std::size_t c = 0; c < cat.classes.size(); ++c) {
        const auto& r = cat.classes[c];
        t << "  [" << c << "] kissing " << r.minvecs.kissing() << ", det " << to_string(r.key.det) << ", facets "
          << r.cone.facets().size() << ", |Aut| " << *r.aut_order << ", gram " << to_string(r.form.gram()) << "\n";
    }
    if (!out_path.empty()) t << "catalogue written to " << out_path << "\n";
    o.text = t.str();
    return o;
}

Output cmd_perfect_neighbors(std::size_t id, const std::string& path) {
    const auto cat = catalog_load(path);
    if (id >= cat.classes.size()) throw std::invalid_argument("class id out of range");
    const auto& r = cat.classes[id];
    Output o;
    json links = json::array();
    std::ostringstream t;
    std::map<std::size_t, std::size_t> tally;
    for (const auto& l : r.neighbors) {
        if (l.boundary()) {
            links.push_back({{"facet", l.facet}, {"boundary", true}});
            continue;
        }
        ++tally[*l.neighbor_class];
        links.push_back({{"facet", l.facet}, {"neighbor", *l.neighbor_class}, {"witness", int_matrix(l.witness->matrix())}});
    }
    t << "class " << id << ": " << r.neighbors.size() << " facets\n";
    for (const auto& [c, n] : tally) t << "  " << n << " facet(s) lead to class " << c << "\n";
    o.doc = {{"class", id}, {"links", links}};
    o.text = t.str();
    return o;
}

Output cmd_fan_locate(const std::string& m) {
    const auto b = parse_lattice_point(m);
    const auto cert = locate_cone(b);
    Output o;
    json gens = json::array(), path = json::array();
    for (const auto& x : cert.generators) gens.push_back(int_matrix(x.entries()));
    for (const auto& step : cert.path) {
        json f = json::array();
        for (const auto& c : step.facet) f.push_back(c.get_str());
        path.push_back({{"facet", f}, {"reached", rational_matrix(step.reached.gram())}});
    }
    o.doc = {{"class", cert.class_id},    {"twist", int_matrix(cert.twist.matrix())},
             {"form", rational_matrix(cert.form.gram())}, {"generators", gens},
             {"lambda", rationals(cert.lambda)}, {"path", path}, {"verified", verify_certificate(cert, b)}};
    std::ostringstream t;
    t << "cone of " << to_string(cert.form.gram()) << " (class " << cert.class_id << ", twist "
      << to_string(cert.twist.matrix()) << ") after " << cert.path.size() << " crossing(s)\n";
    for (std::size_t k = 0; k < cert.generators.size(); ++k)
        t << "  " << to_string(cert.lambda[k]) << " * " << to_string(cert.generators[k].entries()) << "\n";
    if (!o.doc["verified"].get<bool>()) o.code = kFalsified;
    o.text = t.str();
    return o;
}

Output cmd_fan_height(const std::string& m) {
    const Rational h = cocore_height(parse_lattice_point(m));
    Output o;
    o.doc = {{"height", to_string(h)}};
    o.text = "co-core height " + to_string(h) + "\n";
    return o;
}

Output cmd_fan_extend(const std::string& gram) {
    const QuadForm q = parse_form(gram);
    const QuadForm f = extend(q);
    const auto mv = minimal_vectors(f);
    Output o;
    o.doc = {{"form", rational_matrix(f.gram())}, {"minimum", to_string(mv.minimum)},
             {"min_pairs", mv.pairs()}, {"perfection_rank", perfection_rank(f)}};
    std::ostringstream t;
    t << to_string(f.gram()) << ": minimum " << to_string(mv.minimum) << ", " << mv.pairs() << " minimal pairs, perfection rank "
      << perfection_rank(f) << "\n";
    o.text = t.str();
    return o;
}

Output cmd_toric_classify(const std::string& target, std::size_t g, bool with_faces) {
    QuadForm q;
    if (g > 0) {
        const auto& cat = cached_catalog(g);
        const std::size_t id = std::stoul(target);
        if (id >= cat.size()) throw std::invalid_argument("class id out of range");
        q = cat[id].form;
    } else {
        q = parse_form(target);
    }
    const auto tc = ToricCone::of_perfect(q);
    const Singularity s = classify_singularity(tc);
    Output o;
    o.doc = {{"form", rational_matrix(q.gram())}, {"generators", tc.cone().generators().size()},
             {"simplicial", tc.cone().is_simplicial()}, {"classification", to_string(s)}};
    std::ostringstream t;
    t << "sigma(" << to_string(q.gram()) << "): " << to_string(s) << "\n";
    if (with_faces) {
        std::map<std::string, std::size_t> tally;
        for (const auto& f : faces(tc.cone())) ++tally[to_string(classify_singularity(tc.face(f)))];
        json jt = json::object();
        for (const auto& [k, n] : tally) {
            jt[k] = n;
            t << "  faces " << k << ": " << n << "\n";
        }
        o.doc["faces"] = jt;
    }
    o.text = t.str();
    return o;
}

TaiConvention convention_of(const std::string& c) {
    if (c == "zero-as-one") return TaiConvention::ZeroAsOne;
    if (c == "zero-as-zero") return TaiConvention::ZeroAsZero;
    throw std::invalid_argument("unknown convention " + c);
}

Output cmd_tai(long m, const std::string& conv) {
    const auto mn = min_fractional_sum(TaiProblem::make(m, convention_of(conv)));
    Output o;
    o.doc = {{"m", m}, {"min", to_string(mn.value)}, {"minimizer", mn.minimizer}};
    std::ostringstream t;
    t << "m = " << m << ": minimum " << to_string(mn.value) << " at {";
    for (std::size_t i = 0; i < mn.minimizer.size(); ++i) t << (i ? "," : "") << mn.minimizer[i];
    t << "}\n";
    o.text = t.str();
    return o;
}

Output cmd_tai_scan(long m_max, const std::string& conv) {
    Output o;
    json rows = json::array();
    std::ostringstream t;
    for (const auto& r : exceptional_scan(m_max, convention_of(conv))) {
        const char* cmp = r.versus_one == Comparison::Less ? "<1" : r.versus_one == Comparison::Equal ? "=1" : ">1";
        rows.push_back({{"m", r.m}, {"bound", to_string(r.bound)}, {"min", to_string(r.minimum.value)},
                        {"minimizer", r.minimum.minimizer}, {"versus_one", cmp}});
        t << "m = " << r.m << ": refined bound " << to_string(r.bound) << ", minimum " << to_string(r.minimum.value) << " (" << cmp << ")\n";
    }
    o.doc = {{"max", m_max}, {"rows", rows}};
    o.text = t.str();
    return o;
}

Output cmd_nef(const std::string& a, const std::string& b, long g, long n) {
    const DivisorClass d{parse_rational(a), parse_rational(b), g, n};
    Output o;
    o.doc = {{"a", to_string(d.a)}, {"b", to_string(d.b)}, {"g", g}, {"n", n}, {"nef", is_nef(d)}, {"ample", is_ample(d)},
             {"C2_sign", to_string(intersect_C2_sign(d))}, {"C1", to_string(intersect_C1(to_level_one(d)))}};
    if (d.b > 0) o.doc["slope"] = to_string(slope(d));
    std::ostringstream t;
    t << to_string(d.a) << " M - " << to_string(d.b) << (n == 1 ? " D" : " D^(" + std::to_string(n) + ")") << ": nef="
      << (is_nef(d) ? "true" : "false") << ", ample=" << (is_ample(d) ? "true" : "false") << "\n";
    o.text = t.str();
    return o;
}

Output cmd_canonical(long g, long n) {
    const auto k = canonical_class(g, n);
    Output o;
    o.doc = {{"g", g}, {"n", n}, {"a", to_string(k.a)}, {"b", to_string(k.b)}, {"nef", is_nef(k)}, {"ample", is_ample(k)}};
    std::ostringstream t;
    t << "K = " << to_string(k.a) << " M - " << (n == 1 ? "D" : "D^(" + std::to_string(n) + ")") << ": nef="
      << (is_nef(k) ? "true" : "false") << ", ample=" << (is_ample(k) ? "true" : "false") << "\n";
    o.text = t.str();
    return o;
}

Output cmd_catalog_verify(const std::string& path) {
    const auto cat = catalog_load(path);
    const auto rep = catalog_verify(cat);
    Output o;
    o.code = rep.ok ? kOk : kFalsified;
    o.doc = {{"ok", rep.ok}, {"g", cat.g}, {"classes", rep.classes_checked}, {"links", rep.links_checked},
             {"neighbors_recomputed", rep.neighbors_recomputed}, {"failures", rep.failures}};
    std::ostringstream t;
    t << path << ": " << (rep.ok ? "verified" : "FAILED") << " (" << rep.classes_checked << " classes, " << rep.links_checked
      << " links, " << rep.neighbors_recomputed << " neighbours recomputed)\n";
    for (const auto& f : rep.failures) t << "  " << f << "\n";
    o.text = t.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect forms, the perfect cone fan and related checks"};
    app.fallthrough();
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit a JSON document");

    std::function<Output()> run;

    std::string gram, matrix, target, path, out_path, a_text, b_text, convention = "zero-as-one";
    std::size_t g = 0, class_id = 0;
    unsigned jobs = 1;
    long m = 0, m_max = 0, genus = 2, level = 1;
    bool with_faces = false;

    auto* minvec = app.add_subcommand("minvec", "Minimum and minimal vectors of a positive definite form");
    minvec->add_option("gram", gram, "Gram matrix, e.g. 2,1;1,2")->required();
    minvec->callback([&] { run = [&] { return cmd_minvec(gram); }; });

    auto* perfect = app.add_subcommand("perfect", "Perfect forms");
    perfect->require_subcommand(1);
    auto* pcheck = perfect->add_subcommand("check", "Perfection rank of a form");
    pcheck->add_option("gram", gram)->required();
    pcheck->callback([&] { run = [&] { return cmd_perfect_check(gram); }; });
    auto* penum = perfect->add_subcommand("enumerate", "Enumerate perfect forms up to equivalence");
    penum->add_option("--g", g, "Number of variables")->required()->check(CLI::Range(1, int(kMaxEnumerationRank)));
    penum->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    penum->add_option("--out", out_path, "Write the catalogue to this file");
    penum->callback([&] { run = [&] { return cmd_perfect_enumerate(g, jobs, out_path); }; });
    auto* pnb = perfect->add_subcommand("neighbors", "Neighbour classes of a catalogued class");
    pnb->add_option("class-id", class_id)->required();
    pnb->add_option("--catalog", path)->required();
    pnb->callback([&] { run = [&] { return cmd_perfect_neighbors(class_id, path); }; });

    auto* fan = app.add_subcommand("fan", "Perfect cone fan");
    fan->require_subcommand(1);
    auto* floc = fan->add_subcommand("locate", "Cone containing a PSD integer matrix");
    floc->add_option("sym-matrix", matrix)->required();
    floc->callback([&] { run = [&] { return cmd_fan_locate(matrix); }; });
    auto* fh = fan->add_subcommand("height", "Co-core height of a PSD integer matrix");
    fh->add_option("sym-matrix", matrix)->required();
    fh->callback([&] { run = [&] { return cmd_fan_height(matrix); }; });
    auto* fext = fan->add_subcommand("extend", "q + m(q) x_{g+1}^2");
    fext->add_option("gram", gram)->required();
    fext->callback([&] { run = [&] { return cmd_fan_extend(gram); }; });

    auto* toric = app.add_subcommand("toric", "Toric singularities of perfect cones");
    toric->require_subcommand(1);
    auto* tcl = toric->add_subcommand("classify", "Classify sigma(q); with --g the target is a class id");
    tcl->add_option("target", target, "Class id (with --g) or Gram matrix")->required();
    tcl->add_option("--g", g, "Catalogue to take the class from")->check(CLI::Range(1, int(kMaxEnumerationRank)));
    tcl->add_flag("--faces", with_faces, "Also classify every face");
    tcl->callback([&] { run = [&] { return cmd_toric_classify(target, g, with_faces); }; });

    auto* tai = app.add_subcommand("tai", "Minimum of the fractional-part sum");
    tai->require_subcommand(0, 1);
    auto* m_opt = tai->add_option("--m", m, "Order m >= 3");
    tai->add_option("--convention", convention)->check(CLI::IsMember({"zero-as-one", "zero-as-zero"}));
    auto* tscan = tai->add_subcommand("scan", "All m <= max with refined bound below 1");
    tscan->add_option("--max", m_max)->required();
    tscan->callback([&] { run = [&] { return cmd_tai_scan(m_max, convention); }; });
    tai->callback([&] {
        if (tscan->parsed()) return;
        if (m_opt->count() == 0) throw CLI::RequiredError("--m");
        run = [&] { return cmd_tai(m, convention); };
    });

    auto* nef = app.add_subcommand("nef", "Nef and ample tests for aM - bD");
    nef->add_option("--a", a_text)->required();
    nef->add_option("--b", b_text)->required();
    nef->add_option("--g", genus);
    nef->add_option("--n", level)->check(CLI::PositiveNumber);
    nef->callback([&] { run = [&] { return cmd_nef(a_text, b_text, genus, level); }; });

    auto* canon = app.add_subcommand("canonical", "Canonical class (g+1)M - D");
    canon->add_option("--g", genus)->required();
    canon->add_option("--n", level)->check(CLI::PositiveNumber);
    canon->callback([&] { run = [&] { return cmd_canonical(genus, level); }; });

    auto* catalog = app.add_subcommand("catalog", "Catalogue files");
    catalog->require_subcommand(1);
    auto* cver = catalog->add_subcommand("verify", "Re-verify a catalogue file");
    cver->add_option("file", path)->required();
    cver->callback([&] { run = [&] { return cmd_catalog_verify(path); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const Output o = run();
        if (as_json)
            std::cout << o.doc.dump() << "\n";
        else
            std::cout << o.text;
        return o.code;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFalsified;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kFalsified;
    }
}
