#include <algorithm>
#include <cmath>
#include <numbers>

#include "heredilat/matalg/algebra.hpp"

namespace heredilat::matalg {

std::uint64_t SeedStream::mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SeedStream SeedStream::derive(std::string_view name, std::uint64_t index) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    SeedStream child(0);
    child.key_ = mix(key_ ^ mix(h ^ mix(index)));
    return child;
}

SeedStream::result_type SeedStream::operator()() {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double SeedStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double SeedStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SeedStream::normal() {
    // Box-Muller without caching, so every draw costs exactly two counters
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeedStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

int SeedStream::integer(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>((*this)() % span);
}

Block gaussian_block(int rows, int cols, SeedStream& rng) {
    Block g(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) g(r, c) = rng.complex_normal();
    return g;
}

Vector random_unit_vector(int n, SeedStream& rng) {
    Vector v = gaussian_block(n, 1, rng).col(0);
    return v / v.norm();
}

namespace {

Block haar_unitary(int n, SeedStream& rng) {
    const Block g = gaussian_block(n, n, rng);
    Eigen::HouseholderQR<Block> qr(g);
    Block q = qr.householderQ();
    const Block r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

}  // namespace

BlockMatrix random_element(const BlockAlgebra& alg, SeedStream& rng) {
    std::vector<Block> out;
    for (int n : alg.dims()) out.emplace_back(gaussian_block(n, n, rng));
    return BlockMatrix(std::move(out));
}

BlockMatrix random_hermitian(const BlockAlgebra& alg, SeedStream& rng, double scale) {
    std::vector<Block> out;
    for (int n : alg.dims()) {
        const Block g = gaussian_block(n, n, rng);
        out.emplace_back(0.5 * (g + g.adjoint()));
    }
    BlockMatrix h(std::move(out));
    if (scale != 0.0) {
        const double n = h.norm();
        if (n > 0) h *= Complex(scale / n);
    }
    return h;
}

BlockMatrix random_unitary(const BlockAlgebra& alg, SeedStream& rng) {
    std::vector<Block> out;
    for (int n : alg.dims()) out.emplace_back(haar_unitary(n, rng));
    return BlockMatrix(std::move(out));
}

Projection random_projection(const BlockAlgebra& alg, SeedStream& rng, const std::vector<int>& ranks) {
    if (!ranks.empty() && ranks.size() != alg.block_count())
        throw ShapeError("rank list does not match block count");
    std::vector<Block> bases;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const int n = alg.dim(i);
        const int r = ranks.empty() ? rng.integer(0, n) : std::clamp(ranks[i], 0, n);
        bases.emplace_back(haar_unitary(n, rng).leftCols(r));
    }
    return Projection::from_bases(alg, bases);
}

BlockMatrix random_nilpotent(const BlockAlgebra& alg, SeedStream& rng) {
    std::vector<Block> out;
    for (int n : alg.dims()) {
        Block a = Block::Zero(n, n);
        if (n >= 2) {
            const int k = rng.integer(1, n - 1);
            a.topRightCorner(k, n - k) = gaussian_block(k, n - k, rng);
            const Block u = haar_unitary(n, rng);
            a = u * a * u.adjoint();
        }
        out.emplace_back(std::move(a));
    }
    return BlockMatrix(std::move(out));
}

BlockMatrix random_positive_contraction(const BlockAlgebra& alg, SeedStream& rng, double lo, double hi) {
    std::vector<Block> out;
    for (int n : alg.dims()) {
        const Block u = haar_unitary(n, rng);
        Eigen::VectorXcd d(n);
        for (int j = 0; j < n; ++j) d(j) = rng.uniform(lo, hi);
        Block h = u * d.asDiagonal() * u.adjoint();
        out.emplace_back(0.5 * (h + h.adjoint()));
    }
    return BlockMatrix(std::move(out));
}

Projection random_central_projection(const BlockAlgebra& alg, SeedStream& rng) {
    std::vector<Block> out;
    for (int n : alg.dims())
        out.emplace_back(rng.integer(0, 1) ? Block(Block::Identity(n, n)) : Block(Block::Zero(n, n)));
    return Projection(alg, BlockMatrix(std::move(out)));
}

}  // namespace heredilat::matalg
