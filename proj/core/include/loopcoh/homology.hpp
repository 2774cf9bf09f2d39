#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopcoh/bar.hpp"
#include "loopcoh/linalg.hpp"

namespace loopcoh::homology {

using bar::BarElement;
using bar::Word;
using linalg::DenseVector;
using linalg::Scalar;
using linalg::SparseMatrix;

struct Truncation {
    int n_max = 0;
    int w_max = 0;
};

/// One degree of the bar complex restricted to one internal degree.
struct ChainSlice {
    int degree = 0;
    int internal = 0;
    std::vector<Word> basis_prev, basis, basis_next;
    SparseMatrix d_in, d_out;  // C^{n-1} -> C^n and C^n -> C^{n+1}
};

/// (BA, d) split into blocks C^n_m by bar degree n and internal degree m,
/// for n <= n_max + 1. Boundary matrices are built on first use.
class BarComplex {
public:
    BarComplex(const bar::BarAlgebra& A, Truncation box);

    const bar::BarAlgebra& algebra() const { return A_; }
    const Truncation& box() const { return box_; }
    /// Internal degrees occurring in bar degree n.
    std::vector<int> internal_degrees(int n);
    const std::vector<Word>& basis(int n, int m);
    std::optional<std::size_t> index(int n, int m, const Word& w);
    /// d: C^n_m -> C^{n+1}_m.
    const SparseMatrix& d(int n, int m);
    ChainSlice slice(int n, int m);

    DenseVector to_vector(int n, int m, const BarElement& x);
    BarElement to_element(int n, int m, const DenseVector& v);

    /// Precomputed matrices (e.g. from a cache); dimensions are validated.
    void import_matrix(int n, int m, SparseMatrix d);
    const std::map<std::pair<int, int>, SparseMatrix>& matrices() const { return d_; }
    std::size_t matrices_built() const { return built_; }

private:
    struct Block {
        std::vector<Word> words;
        std::map<Word, std::size_t> index;
    };
    const std::map<int, Block>& blocks(int n);
    Block& block(int n, int m);

    const bar::BarAlgebra& A_;
    Truncation box_;
    std::map<int, std::map<int, Block>> blocks_;
    std::map<std::pair<int, int>, SparseMatrix> d_;
    std::size_t built_ = 0;
};

struct RanksReport {
    Truncation box;
    std::vector<long> ranks;                              // n = 0..n_max
    std::map<int, std::vector<std::int64_t>> torsion;     // degree -> invariant factors > 1 (over Z)
    std::map<int, std::map<int, long>> block_ranks;       // degree -> internal -> rank
    bool conclusive = true;
    std::string reason;
};

/// Ranks of H^n(BA) for n <= n_max; over Z also torsion.
RanksReport homology_ranks(BarComplex& C);

enum class ProductKind { shuffle, muE };

struct ClassInfo {
    int degree = 0;
    int internal = 0;
    std::string label;
    std::vector<std::size_t> subset;  // generators, for the canonical classes
    bool canonical = false;
    BarElement representative;
};

struct RingEntry {
    std::size_t left = 0, right = 0;  // class indices
    int degree = 0;
    int internal = 0;  // sum of the factors; Sq terms of the value sit lower
    std::vector<std::pair<std::size_t, Scalar>> value;  // class index -> coefficient
    bool valid = true;
    std::string witness;
};

struct HomologyReport {
    RanksReport ranks;
    std::string product;
    std::vector<ClassInfo> classes;  // positive degree classes, by degree then internal degree
    std::vector<RingEntry> table;    // every ordered pair with total degree <= n_max
    bool classes_complete = true;
    std::vector<std::string> notes;

    std::size_t flagged() const;
    std::optional<std::size_t> class_of_subset(const std::vector<std::size_t>& subset) const;
    const RingEntry* entry(std::size_t left, std::size_t right) const;
};

/// The homology ring under the shuffle product or mu_E with the given table.
/// Classes are represented by iterated shuffles of generator letters (the
/// symmetric cocycles in char 2), completed by reduced kernel vectors over a
/// field if these do not span. Each product is checked to be a cocycle.
HomologyReport homology_ring(BarComplex& C, const bar::PolynomialBarAlgebra& A, ProductKind kind,
                             const hirsch::HirschOpTable* table = nullptr);

struct Verdict {
    enum class Kind { exterior, not_exterior, inconclusive };
    Kind kind = Kind::inconclusive;
    std::string witness;  // first failing comparison
    std::string reason;   // for inconclusive verdicts
};

std::string to_string(Verdict::Kind k);

/// Compares ranks with the oracle and the ring table with Lambda(s^{-1}U).
Verdict exterior_verdict(const HomologyReport& report, const bar::PolynomialBarAlgebra& A,
                         const std::vector<long>& oracle);

}  // namespace loopcoh::homology
