#include <doctest.h>

#include "voronoi/catalog.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace voronoi;
using nlohmann::json;

namespace {

CatalogFile make(std::size_t g) { return CatalogFile{kCatalogVersion, g, enumerate_perfect(g)}; }

void same_record(const PerfectFormRecord& a, const PerfectFormRecord& b) {
    CHECK(a.form == b.form);
    CHECK(a.minvecs.minimum == b.minvecs.minimum);
    CHECK(a.minvecs.reps == b.minvecs.reps);
    CHECK(a.cone.generators() == b.cone.generators());
    REQUIRE(a.cone.facets().size() == b.cone.facets().size());
    for (std::size_t f = 0; f < a.cone.facets().size(); ++f) {
        CHECK(a.cone.facets()[f].dual == b.cone.facets()[f].dual);
        CHECK(a.cone.facets()[f].on == b.cone.facets()[f].on);
        CHECK(a.cone.facets()[f].normal == b.cone.facets()[f].normal);
    }
    CHECK(a.key == b.key);
    CHECK(a.aut_order == b.aut_order);
    REQUIRE(a.neighbors.size() == b.neighbors.size());
    for (std::size_t f = 0; f < a.neighbors.size(); ++f) {
        CHECK(a.neighbors[f].facet == b.neighbors[f].facet);
        CHECK(a.neighbors[f].neighbor_class == b.neighbors[f].neighbor_class);
        CHECK(a.neighbors[f].neighbor_form == b.neighbors[f].neighbor_form);
        CHECK(a.neighbors[f].witness == b.neighbors[f].witness);
    }
}

// Re-seal a hand-edited document with a correct digest.
std::string reseal(json doc) {
    doc.erase("digest");
    doc["digest"] = catalog_digest(doc.dump());
    return doc.dump(1) + "\n";
}

}  // namespace

TEST_CASE("round trip of the g = 4 catalogue") {
    const auto cat = make(4);
    const std::string text = catalog_to_string(cat);
    const auto back = catalog_from_string(text);
    CHECK(back.g == 4);
    REQUIRE(back.classes.size() == cat.classes.size());
    for (std::size_t c = 0; c < cat.classes.size(); ++c) same_record(cat.classes[c], back.classes[c]);
    CHECK(catalog_to_string(back) == text);

    const auto path = (std::filesystem::temp_directory_path() / "voronoi_test_catalog.json").string();
    catalog_save(cat, path);
    const auto loaded = catalog_load(path);
    catalog_save(loaded, path + ".again");
    std::ifstream a(path), b(path + ".again");
    std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
    CHECK(sa == text);
    std::remove(path.c_str());
    std::remove((path + ".again").c_str());
    CHECK_THROWS_AS(catalog_load(path), CatalogError);
}

TEST_CASE("rationals and matrices are strings and arrays") {
    const auto doc = json::parse(catalog_to_string(make(2)));
    CHECK(doc.at("version") == 1);
    CHECK(doc.at("classes").size() == 1);
    CHECK(doc["classes"][0]["minimum"].is_string());
    CHECK(doc["classes"][0]["gram"][0][0].is_string());
    CHECK(doc["classes"][0]["kissing"] == 6);
    CHECK(doc.contains("certificates"));
    CHECK(doc["digest"].get<std::string>().size() == 64);
}

TEST_CASE("tampering and versions") {
    const std::string text = catalog_to_string(make(4));
    json doc = json::parse(text);
    json bad = doc;
    bad["classes"][0]["kissing"] = 22;
    CHECK_THROWS_AS(catalog_from_string(bad.dump(1)), CatalogDigestError);

    json old = doc;
    old["version"] = 0;
    CHECK_THROWS_AS(catalog_from_string(reseal(old)), CatalogVersionError);
    CHECK_THROWS_AS(catalog_from_string(old.dump()), CatalogVersionError);

    CHECK_THROWS_AS(catalog_from_string("{not json"), CatalogError);
}

TEST_CASE("catalog_verify") {
    const auto cat = make(4);
    const auto rep = catalog_verify(cat);
    CHECK(rep.ok);
    CHECK(rep.classes_checked == 2);
    CHECK(rep.neighbors_recomputed == 2);

    // a resealed file with a wrong neighbour witness passes the digest but not verification
    json doc = json::parse(catalog_to_string(cat));
    auto& link = doc["certificates"][0]["links"][0];
    REQUIRE_FALSE(link["boundary"].get<bool>());
    auto w = link["witness"];
    for (auto& row : w) std::swap(row[0], row[1]);
    link["witness"] = w;
    const auto tampered = catalog_from_string(reseal(doc));
    CHECK_FALSE(catalog_verify(tampered).ok);

    json doc2 = json::parse(catalog_to_string(cat));
    doc2["classes"][1]["min_vectors"].erase(0);
    doc2["classes"][1]["kissing"] = doc2["classes"][1]["kissing"].get<int>() - 2;
    CHECK_FALSE(catalog_verify(catalog_from_string(reseal(doc2))).ok);
}

TEST_CASE("g = 1 catalogue keeps its boundary facet") {
    const auto cat = make(1);
    const auto back = catalog_from_string(catalog_to_string(cat));
    CHECK(back.classes[0].neighbors[0].boundary());
    CHECK(catalog_verify(back).ok);
}
