#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "heredilat/errors.hpp"

namespace heredilat::matalg {

using Complex = std::complex<double>;
using Block = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical policy shared by every operation.
struct Tolerances {
    /// Relative cutoff for rank decisions: σ ≤ rank_rel·max(1, ‖M‖) is zero.
    double rank_rel = 1e-8;
    /// Eigenvalues this close to a spectral-window endpoint are snapped to it.
    double snap = 1e-9;
    /// Default projection validation tolerance.
    double projection = 1e-9;
};
inline constexpr Tolerances kTol{};

inline double rank_threshold(double norm) { return kTol.rank_rel * std::max(1.0, norm); }

/// Block-diagonal complex matrix, one square block per summand.
class BlockMatrix {
public:
    BlockMatrix() = default;
    explicit BlockMatrix(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

    std::size_t block_count() const noexcept { return blocks_.size(); }
    const Block& block(std::size_t i) const { return blocks_.at(i); }
    Block& block(std::size_t i) { return blocks_.at(i); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    BlockMatrix adjoint() const;
    /// Operator norm: largest singular value over all blocks.
    double norm() const;
    /// Assembled dense matrix (block diagonal).
    Block dense() const;

    BlockMatrix& operator+=(const BlockMatrix& o);
    BlockMatrix& operator-=(const BlockMatrix& o);
    BlockMatrix& operator*=(Complex s);

    friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
    friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
    friend BlockMatrix operator*(BlockMatrix a, Complex s) { return a *= s; }
    friend BlockMatrix operator*(Complex s, BlockMatrix a) { return a *= s; }
    friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);

private:
    std::vector<Block> blocks_;
};

/// A = ⊕ M_{n_i}. Σ n_i² is capped (default 200).
class BlockAlgebra {
public:
    static constexpr std::size_t kDefaultCap = 200;

    /// Throws DimCapError on an empty list, nonpositive dims, or when the total
    /// dimension exceeds `cap`.
    explicit BlockAlgebra(std::vector<int> dims, std::size_t cap = kDefaultCap);

    const std::vector<int>& dims() const noexcept { return dims_; }
    std::size_t block_count() const noexcept { return dims_.size(); }
    int dim(std::size_t i) const { return dims_.at(i); }
    /// Σ n_i², the vector-space dimension of the algebra.
    std::size_t dimension() const noexcept;
    /// Σ n_i, the dimension of the Hilbert space it acts on.
    std::size_t hilbert_dimension() const noexcept;

    BlockMatrix zero() const;
    BlockMatrix identity() const;
    /// Matrix unit e_{rc} inside block i.
    BlockMatrix unit(std::size_t i, int r, int c) const;
    BlockMatrix from_blocks(std::vector<Block> blocks) const;

    /// Throws ShapeError when the block shapes do not match dims.
    void check(const BlockMatrix& m) const;

    bool operator==(const BlockAlgebra&) const = default;

private:
    std::vector<int> dims_;
};

/// Hermitian idempotent, validated on construction: ‖p²−p‖ ≤ tol and
/// ‖p−p*‖ ≤ tol. Stands for the hereditary subalgebra pAp.
class Projection {
public:
    /// Throws NotAProjectionError.
    Projection(const BlockAlgebra& alg, BlockMatrix m, double tol = kTol.projection);

    /// Orthogonal projection onto the span of the columns of each basis block
    /// (columns assumed orthonormal).
    static Projection from_bases(const BlockAlgebra& alg, const std::vector<Block>& bases);
    static Projection zero(const BlockAlgebra& alg);
    static Projection identity(const BlockAlgebra& alg);

    const BlockMatrix& matrix() const noexcept { return m_; }
    const Block& block(std::size_t i) const { return m_.block(i); }
    double tol() const noexcept { return tol_; }
    std::size_t block_count() const noexcept { return m_.block_count(); }

    /// Ranks per block (rounded traces).
    std::vector<int> ranks() const;
    int rank() const;
    bool is_zero() const { return rank() == 0; }
    Projection perp() const;

private:
    Projection(BlockMatrix m, double tol) : m_(std::move(m)), tol_(tol) {}

    BlockMatrix m_;
    double tol_;
};

/// ‖p − q‖ ≤ tol.
bool approx_equal(const BlockMatrix& a, const BlockMatrix& b, double tol);
inline bool approx_equal(const Projection& a, const Projection& b, double tol) {
    return approx_equal(a.matrix(), b.matrix(), tol);
}

// ---------------------------------------------------------------------------
// randomness

/// Counter-based random stream. A stream is a 64-bit key plus a counter;
/// `derive` produces an independent child keyed by (parent key, name, index)
/// so every trial of every operation draws from its own reproducible stream.
class SeedStream {
public:
    using result_type = std::uint64_t;

    explicit SeedStream(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    SeedStream derive(std::string_view name, std::uint64_t index = 0) const;

    result_type operator()();
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal();                // E|z|² = 1
    int integer(int lo, int hi);             // inclusive

    std::uint64_t key() const noexcept { return key_; }

private:
    static std::uint64_t mix(std::uint64_t z);

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

Block gaussian_block(int rows, int cols, SeedStream& rng);
Vector random_unit_vector(int n, SeedStream& rng);

BlockMatrix random_element(const BlockAlgebra& alg, SeedStream& rng);
/// (G + G*)/2 with Gaussian G, rescaled to operator norm `scale` (when nonzero).
BlockMatrix random_hermitian(const BlockAlgebra& alg, SeedStream& rng, double scale = 1.0);
/// Haar-distributed unitary per block (QR of a Gaussian matrix, phase fixed).
BlockMatrix random_unitary(const BlockAlgebra& alg, SeedStream& rng);
/// Haar-conjugated 0/1 diagonal; ranks drawn uniformly in [0, n_i] unless given.
Projection random_projection(const BlockAlgebra& alg, SeedStream& rng,
                             const std::vector<int>& ranks = {});
/// a with a² = 0: a block strictly above the diagonal split, conjugated by a
/// random unitary, per block.
BlockMatrix random_nilpotent(const BlockAlgebra& alg, SeedStream& rng);
/// Positive contraction with eigenvalues uniform in [lo, hi] on a random basis.
BlockMatrix random_positive_contraction(const BlockAlgebra& alg, SeedStream& rng,
                                        double lo = 0.0, double hi = 1.0);
/// Random central projection: each block is 0 or I.
Projection random_central_projection(const BlockAlgebra& alg, SeedStream& rng);

}  // namespace heredilat::matalg
