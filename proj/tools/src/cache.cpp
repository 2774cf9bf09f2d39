#include "loopcoh/cli/cache.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <openssl/evp.h>
#include <unistd.h>

#include <json.hpp>

#include "loopcoh/version.hpp"

namespace loopcoh::cli {

using nlohmann::json;

std::string content_hash(const std::string& text)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

MatrixCache::MatrixCache(std::filesystem::path dir, std::string key) : dir_(std::move(dir)), key_(std::move(key)) {}

std::filesystem::path MatrixCache::file() const { return dir_ / ("bar-" + key_ + ".json"); }

std::size_t MatrixCache::load(homology::BarComplex& C) const
{
    std::ifstream in(file());
    if (!in) return 0;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception&) {
        return 0;
    }
    if (!doc.is_object() || doc.value("key", "") != key_ || doc.value("convention_version", "") != kConventionVersion ||
        !doc.contains("matrices") || !doc["matrices"].is_array())
        return 0;
    const auto& ring = C.algebra().ring();
    std::size_t imported = 0;
    for (const auto& e : doc["matrices"]) {
        try {
            const int n = e.at("n").get<int>(), m = e.at("m").get<int>();
            if (n < 0 || n > C.box().n_max) continue;
            linalg::SparseMatrix d(ring, e.at("rows").get<std::size_t>(), e.at("cols").get<std::size_t>());
            for (const auto& t : e.at("entries")) {
                const auto row = t.at(0).get<std::size_t>(), col = t.at(1).get<std::size_t>();
                if (row >= d.n_rows() || col >= d.n_cols()) throw std::out_of_range("entry outside the matrix");
                d.set(row, col, ring.from_fraction(t.at(2).get<std::int64_t>(), t.at(3).get<std::int64_t>()));
            }
            C.import_matrix(n, m, std::move(d));
            ++imported;
        } catch (const std::exception&) {
            // a damaged entry is recomputed on demand
        }
    }
    return imported;
}

void MatrixCache::store(const homology::BarComplex& C) const
{
    json doc;
    doc["convention_version"] = kConventionVersion;
    doc["key"] = key_;
    json mats = json::array();
    for (const auto& [nm, d] : C.matrices()) {
        json entries = json::array();
        for (std::size_t col = 0; col < d.n_cols(); ++col)
            for (const auto& [row, v] : d.column(col)) entries.push_back({row, col, v.num, v.den});
        mats.push_back({{"n", nm.first}, {"m", nm.second}, {"rows", d.n_rows()}, {"cols", d.n_cols()}, {"entries", entries}});
    }
    doc["matrices"] = std::move(mats);

    std::filesystem::create_directories(dir_);
    const auto target = file();
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << doc.dump();
        out.flush();
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot install cache file " + target.string() + ": " + ec.message());
    }
}

}  // namespace loopcoh::cli
