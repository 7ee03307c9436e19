#pragma once

// Catalogue files: perfect-form classes with their closure certificate, as JSON.

#include "voronoi/perfection.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace voronoi {

class CatalogError : public std::runtime_error {
public:
    explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};
class CatalogVersionError : public CatalogError {
public:
    using CatalogError::CatalogError;
};
class CatalogDigestError : public CatalogError {
public:
    using CatalogError::CatalogError;
};

constexpr int kCatalogVersion = 1;

struct CatalogFile {
    int version = kCatalogVersion;
    std::size_t g = 0;
    std::vector<PerfectFormRecord> classes;
};

/** Canonical text of the catalogue (ends with a newline). */
std::string catalog_to_string(const CatalogFile& cat);
/** Parses and checks version and digest before building any record. */
CatalogFile catalog_from_string(const std::string& text);

void catalog_save(const CatalogFile& cat, const std::string& path);
CatalogFile catalog_load(const std::string& path);

/** Hex SHA-256 of the canonical compact dump of {version, g, classes, certificates}. */
std::string catalog_digest(const std::string& canonical_body);

struct CatalogReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::size_t classes_checked = 0;
    std::size_t links_checked = 0;
    std::size_t neighbors_recomputed = 0;
};

/**
 * Recomputes minimal vectors, perfection rank and facets of every class,
 * re-verifies every witness, and recomputes one neighbour per class.
 */
CatalogReport catalog_verify(const CatalogFile& cat);

}  // namespace voronoi
