#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "heredilat/matalg/algebra.hpp"

namespace heredilat::matalg {

namespace {

double block_norm(const Block& b) {
    if (b.size() == 0) return 0.0;
    Eigen::JacobiSVD<Block> svd(b);
    return svd.singularValues()(0);
}

void require_same_shape(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.block_count() != b.block_count())
        throw ShapeError("block counts differ: " + std::to_string(a.block_count()) + " vs " +
                         std::to_string(b.block_count()));
    for (std::size_t i = 0; i < a.block_count(); ++i)
        if (a.block(i).rows() != b.block(i).rows() || a.block(i).cols() != b.block(i).cols())
            throw ShapeError("block " + std::to_string(i) + " shapes differ", {i});
}

}  // namespace

BlockMatrix BlockMatrix::adjoint() const {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (const Block& b : blocks_) out.emplace_back(b.adjoint());
    return BlockMatrix(std::move(out));
}

double BlockMatrix::norm() const {
    double n = 0.0;
    for (const Block& b : blocks_) n = std::max(n, block_norm(b));
    return n;
}

Block BlockMatrix::dense() const {
    Eigen::Index total = 0;
    for (const Block& b : blocks_) total += b.rows();
    Block out = Block::Zero(total, total);
    Eigen::Index at = 0;
    for (const Block& b : blocks_) {
        out.block(at, at, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
    return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
    return *this;
}

BlockMatrix& BlockMatrix::operator*=(Complex s) {
    for (Block& b : blocks_) b *= s;
    return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
    require_same_shape(a, b);
    std::vector<Block> out;
    out.reserve(a.block_count());
    for (std::size_t i = 0; i < a.block_count(); ++i) out.emplace_back(a.block(i) * b.block(i));
    return BlockMatrix(std::move(out));
}

BlockAlgebra::BlockAlgebra(std::vector<int> dims, std::size_t cap) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimCapError("an algebra needs at least one block");
    std::size_t total = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] <= 0)
            throw DimCapError("block " + std::to_string(i) + " has nonpositive dimension " +
                                  std::to_string(dims_[i]),
                              {i});
        total += static_cast<std::size_t>(dims_[i]) * static_cast<std::size_t>(dims_[i]);
    }
    if (total > cap)
        throw DimCapError("total dimension " + std::to_string(total) + " exceeds cap " +
                          std::to_string(cap));
}

std::size_t BlockAlgebra::dimension() const noexcept {
    std::size_t total = 0;
    for (int n : dims_) total += static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    return total;
}

std::size_t BlockAlgebra::hilbert_dimension() const noexcept {
    return static_cast<std::size_t>(std::accumulate(dims_.begin(), dims_.end(), 0));
}

BlockMatrix BlockAlgebra::zero() const {
    std::vector<Block> out;
    for (int n : dims_) out.emplace_back(Block::Zero(n, n));
    return BlockMatrix(std::move(out));
}

BlockMatrix BlockAlgebra::identity() const {
    std::vector<Block> out;
    for (int n : dims_) out.emplace_back(Block::Identity(n, n));
    return BlockMatrix(std::move(out));
}

BlockMatrix BlockAlgebra::unit(std::size_t i, int r, int c) const {
    BlockMatrix m = zero();
    if (i >= dims_.size() || r < 0 || c < 0 || r >= dims_[i] || c >= dims_[i])
        throw ShapeError("matrix unit index out of range", {i});
    m.block(i)(r, c) = 1.0;
    return m;
}

BlockMatrix BlockAlgebra::from_blocks(std::vector<Block> blocks) const {
    BlockMatrix m(std::move(blocks));
    check(m);
    return m;
}

void BlockAlgebra::check(const BlockMatrix& m) const {
    if (m.block_count() != dims_.size())
        throw ShapeError("expected " + std::to_string(dims_.size()) + " blocks, got " +
                         std::to_string(m.block_count()));
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (m.block(i).rows() != dims_[i] || m.block(i).cols() != dims_[i])
            throw ShapeError("block " + std::to_string(i) + " is " +
                                 std::to_string(m.block(i).rows()) + "x" +
                                 std::to_string(m.block(i).cols()) + ", expected " +
                                 std::to_string(dims_[i]) + "x" + std::to_string(dims_[i]),
                             {i});
}

Projection::Projection(const BlockAlgebra& alg, BlockMatrix m, double tol) : m_(std::move(m)), tol_(tol) {
    alg.check(m_);
    if (!(tol >= 0.0)) throw NotAProjectionError("negative projection tolerance");
    const double herm = (m_ - m_.adjoint()).norm();
    if (herm > tol)
        throw NotAProjectionError("not self-adjoint: ‖p−p*‖ = " + std::to_string(herm));
    const double idem = (m_ * m_ - m_).norm();
    if (idem > tol)
        throw NotAProjectionError("not idempotent: ‖p²−p‖ = " + std::to_string(idem));
}

Projection Projection::from_bases(const BlockAlgebra& alg, const std::vector<Block>& bases) {
    if (bases.size() != alg.block_count())
        throw ShapeError("basis count does not match block count");
    std::vector<Block> out;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const int n = alg.dim(i);
        if (bases[i].rows() != n) throw ShapeError("basis rows do not match block", {i});
        if (bases[i].cols() == 0) {
            out.emplace_back(Block::Zero(n, n));
            continue;
        }
        // re-orthonormalize so that rounding in the basis never leaks into p
        Eigen::HouseholderQR<Block> qr(bases[i]);
        const Block q = qr.householderQ() * Block::Identity(n, bases[i].cols());
        Block p = q * q.adjoint();
        out.emplace_back(0.5 * (p + p.adjoint()));
    }
    return Projection(BlockMatrix(std::move(out)), kTol.projection);
}

Projection Projection::zero(const BlockAlgebra& alg) { return Projection(alg.zero(), kTol.projection); }

Projection Projection::identity(const BlockAlgebra& alg) {
    return Projection(alg.identity(), kTol.projection);
}

std::vector<int> Projection::ranks() const {
    std::vector<int> r;
    for (const Block& b : m_.blocks()) r.push_back(static_cast<int>(std::lround(b.trace().real())));
    return r;
}

int Projection::rank() const {
    const auto r = ranks();
    return std::accumulate(r.begin(), r.end(), 0);
}

Projection Projection::perp() const {
    std::vector<Block> out;
    for (const Block& b : m_.blocks()) out.emplace_back(Block::Identity(b.rows(), b.cols()) - b);
    return Projection(BlockMatrix(std::move(out)), tol_);
}

bool approx_equal(const BlockMatrix& a, const BlockMatrix& b, double tol) {
    return (a - b).norm() <= tol;
}

}  // namespace heredilat::matalg
