#include "voronoi/catalog.hpp"

#include "voronoi/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace voronoi {

using nlohmann::json;

namespace {

json rational_matrix(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

long small(const Integer& v) {
    if (!v.fits_slong_p()) throw CatalogError("integer entry too large for the catalogue format");
    return v.get_si();
}

json int_vector(const std::vector<Integer>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(small(c));
    return out;
}

json int_matrix(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(small(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json body(const CatalogFile& cat) {
    json classes = json::array(), certs = json::array();
    for (std::size_t c = 0; c < cat.classes.size(); ++c) {
        const auto& r = cat.classes[c];
        json facets = json::array();
        for (const auto& f : r.cone.facets()) facets.push_back({{"dual", int_vector(f.dual)}, {"on", f.on}});
        json minv = json::array();
        for (const auto& x : r.minvecs.reps) minv.push_back(int_vector(x.coords()));
        classes.push_back({{"id", c},
                           {"gram", rational_matrix(r.form.gram())},
                           {"determinant", to_string(r.key.det)},
                           {"minimum", to_string(r.minvecs.minimum)},
                           {"kissing", r.minvecs.kissing()},
                           {"min_vectors", minv},
                           {"facets", facets},
                           {"aut_order", r.aut_order ? json(*r.aut_order) : json(nullptr)}});
        json links = json::array();
        for (const auto& l : r.neighbors) {
            if (l.boundary()) {
                links.push_back({{"facet", l.facet}, {"boundary", true}});
                continue;
            }
            links.push_back({{"facet", l.facet},
                             {"boundary", false},
                             {"neighbor", *l.neighbor_class},
                             {"neighbor_form", rational_matrix(l.neighbor_form->gram())},
                             {"witness", int_matrix(l.witness->matrix())}});
        }
        certs.push_back({{"class", c}, {"links", links}});
    }
    return {{"version", cat.version}, {"g", cat.g}, {"classes", classes}, {"certificates", certs}};
}

RatMatrix read_rational_matrix(const json& j) {
    RatMatrix m(j.size(), j.empty() ? 0 : j[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (j[i].size() != m.cols()) throw CatalogError("ragged matrix");
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = parse_rational(j[i][k].get<std::string>());
    }
    return m;
}

IntMatrix read_int_matrix(const json& j) {
    IntMatrix m(j.size(), j.empty() ? 0 : j[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (j[i].size() != m.cols()) throw CatalogError("ragged matrix");
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<long>();
    }
    return m;
}

std::vector<Integer> read_int_vector(const json& j) {
    std::vector<Integer> v;
    for (const auto& c : j) v.emplace_back(c.get<long>());
    return v;
}

}  // namespace

std::string catalog_digest(const std::string& canonical_body) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(canonical_body.data(), canonical_body.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw CatalogError("SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

std::string catalog_to_string(const CatalogFile& cat) {
    json doc = body(cat);
    doc["digest"] = catalog_digest(doc.dump());
    return doc.dump(1) + "\n";
}

CatalogFile catalog_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw CatalogError(std::string("catalogue is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("version")) throw CatalogError("catalogue has no version");
        const int version = doc.at("version").get<int>();
        if (version != kCatalogVersion)
            throw CatalogVersionError("catalogue version " + std::to_string(version) + " is not supported (expected " +
                                      std::to_string(kCatalogVersion) + ")");
        const std::string stored = doc.at("digest").get<std::string>();
        json b = doc;
        b.erase("digest");
        if (catalog_digest(b.dump()) != stored) throw CatalogDigestError("catalogue digest mismatch");

        CatalogFile cat;
        cat.version = version;
        cat.g = doc.at("g").get<std::size_t>();
        const json& classes = doc.at("classes");
        const json& certs = doc.at("certificates");
        if (classes.size() != certs.size()) throw CatalogError("classes and certificates differ in length");
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const json& jc = classes[c];
            if (jc.at("id").get<std::size_t>() != c || certs[c].at("class").get<std::size_t>() != c)
                throw CatalogError("class ids out of order");
            const QuadForm form(read_rational_matrix(jc.at("gram")));
            if (form.dim() != cat.g) throw CatalogError("class gram has the wrong size");
            MinVecSet mv;
            mv.minimum = parse_rational(jc.at("minimum").get<std::string>());
            for (const auto& x : jc.at("min_vectors")) mv.reps.emplace_back(read_int_vector(x));
            if (mv.kissing() != jc.at("kissing").get<std::size_t>()) throw CatalogError("kissing number disagrees with the minimal vectors");
            std::vector<Facet> facets;
            for (const auto& jf : jc.at("facets")) {
                auto dual = read_int_vector(jf.at("dual"));
                facets.push_back({normal_from_dual(cat.g, dual), std::move(dual), jf.at("on").get<std::vector<std::size_t>>()});
            }
            PolyCone cone(cat.g, minimal_squares(mv), std::move(facets));
            std::optional<std::uint64_t> aut;
            if (!jc.at("aut_order").is_null()) aut = jc.at("aut_order").get<std::uint64_t>();
            InvariantKey key = invariant_key(form);
            if (key.det != parse_rational(jc.at("determinant").get<std::string>())) throw CatalogError("determinant disagrees with the gram");
            std::vector<NeighborLink> links;
            for (const auto& jl : certs[c].at("links")) {
                NeighborLink l;
                l.facet = jl.at("facet").get<std::size_t>();
                if (!jl.at("boundary").get<bool>()) {
                    l.neighbor_class = jl.at("neighbor").get<std::size_t>();
                    l.neighbor_form = QuadForm(read_rational_matrix(jl.at("neighbor_form")));
                    l.witness = UnimodularMap(read_int_matrix(jl.at("witness")));
                }
                links.push_back(std::move(l));
            }
            cat.classes.push_back({form, std::move(mv), std::move(cone), std::move(key), std::move(links), aut});
        }
        return cat;
    } catch (const json::exception& e) {
        throw CatalogError(std::string("malformed catalogue: ") + e.what());
    }
}

void catalog_save(const CatalogFile& cat, const std::string& path) {
    const std::string text = catalog_to_string(cat);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CatalogError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw CatalogError("write to " + path + " failed");
}

CatalogFile catalog_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return catalog_from_string(s.str());
}

CatalogReport catalog_verify(const CatalogFile& cat) {
    CatalogReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    for (std::size_t c = 0; c < cat.classes.size(); ++c) {
        const auto& r = cat.classes[c];
        const std::string tag = "class " + std::to_string(c) + ": ";
        ++rep.classes_checked;
        try {
            const auto mv = minimal_vectors(r.form);
            if (mv.minimum != r.minvecs.minimum) fail(tag + "minimum differs");
            if (mv.reps != r.minvecs.reps) fail(tag + "minimal vectors differ");
            if (perfection_rank(r.form) != sym_dim(cat.g)) fail(tag + "not perfect");
            const auto fresh = perfect_cone(r.form);
            if (fresh.facets().size() != r.cone.facets().size()) {
                fail(tag + "facet count differs");
            } else {
                for (std::size_t f = 0; f < fresh.facets().size(); ++f)
                    if (fresh.facets()[f].dual != r.cone.facets()[f].dual || fresh.facets()[f].on != r.cone.facets()[f].on)
                        fail(tag + "facet " + std::to_string(f) + " differs");
            }
            if (r.aut_order && automorphism_order(r.form) != *r.aut_order) fail(tag + "automorphism order differs");
        } catch (const std::exception& e) {
            fail(tag + e.what());
            continue;
        }
        if (r.neighbors.size() != r.cone.facets().size()) {
            fail(tag + "certificate does not cover every facet");
            continue;
        }
        std::optional<std::size_t> probe;
        for (std::size_t f = 0; f < r.neighbors.size(); ++f) {
            const auto& l = r.neighbors[f];
            ++rep.links_checked;
            if (l.facet != f) fail(tag + "link order broken at facet " + std::to_string(f));
            const bool psd = definiteness(r.cone.facets()[f].normal).kind != Definiteness::Indefinite;
            if (l.boundary()) {
                if (!psd) fail(tag + "facet " + std::to_string(f) + " marked boundary but has a neighbour");
                continue;
            }
            if (psd) fail(tag + "facet " + std::to_string(f) + " is a boundary facet");
            if (*l.neighbor_class >= cat.classes.size()) {
                fail(tag + "neighbour id out of range");
                continue;
            }
            if (!(transform(cat.classes[*l.neighbor_class].form, *l.witness) == *l.neighbor_form))
                fail(tag + "witness for facet " + std::to_string(f) + " does not map the class to the neighbour");
            if (!probe) probe = f;
        }
        if (probe) {
            ++rep.neighbors_recomputed;
            try {
                if (!(normalize_scale(neighbor(r, *probe).form) == *r.neighbors[*probe].neighbor_form))
                    fail(tag + "recomputed neighbour across facet " + std::to_string(*probe) + " differs");
            } catch (const std::exception& e) {
                fail(tag + e.what());
            }
        }
    }
    return rep;
}

}  // namespace voronoi
