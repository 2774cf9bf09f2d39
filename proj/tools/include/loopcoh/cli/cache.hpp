#pragma once

#include <filesystem>
#include <string>

#include "loopcoh/homology.hpp"

namespace loopcoh::cli {

/// Hex SHA-256 of a string.
std::string content_hash(const std::string& text);

/// Boundary matrices of one bar complex, stored under a content-hash key.
/// Loading never changes results: entries that fail to parse or do not match
/// the basis are ignored. Stores write a temporary file and rename it.
class MatrixCache {
public:
    MatrixCache(std::filesystem::path dir, std::string key);

    const std::string& key() const { return key_; }
    std::filesystem::path file() const;

    /// Imports every stored matrix; returns how many were imported.
    std::size_t load(homology::BarComplex& C) const;
    /// Writes all matrices of C, replacing the previous file atomically.
    void store(const homology::BarComplex& C) const;

private:
    std::filesystem::path dir_;
    std::string key_;
};

}  // namespace loopcoh::cli
