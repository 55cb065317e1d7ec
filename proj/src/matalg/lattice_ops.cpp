#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace heredilat::matalg {

namespace {

Block range_basis(const Block& b, double tau) {
    if (b.cols() == 0) return Block(b.rows(), 0);
    Eigen::JacobiSVD<Block> svd(b, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tau) ++r;
    return svd.matrixU().leftCols(r);
}

double tol_of(const Projection& p, const Projection& q) { return std::max(p.tol(), q.tol()); }

}  // namespace

std::vector<Block> range_bases(const BlockMatrix& m) {
    const double tau = rank_threshold(m.norm());
    std::vector<Block> out;
    for (const Block& b : m.blocks()) out.push_back(range_basis(b, tau));
    return out;
}

Projection support(const BlockAlgebra& alg, const BlockMatrix& m) {
    alg.check(m);
    return Projection::from_bases(alg, range_bases(m));
}

bool proj_leq(const BlockAlgebra& alg, const Projection& p, const Projection& q) {
    alg.check(p.matrix());
    alg.check(q.matrix());
    return (p.matrix() * q.perp().matrix()).norm() <= tol_of(p, q);
}

Projection proj_join(const BlockAlgebra& alg, const Projection& p, const Projection& q) {
    alg.check(p.matrix());
    alg.check(q.matrix());
    std::vector<Block> bases;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const int n = alg.dim(i);
        Block both(n, 2 * n);
        both << p.block(i), q.block(i);
        // [P|Q] has norm at most √2, so the threshold is the unit one
        bases.push_back(range_basis(both, rank_threshold(1.0)));
    }
    return Projection::from_bases(alg, bases);
}

Projection proj_meet(const BlockAlgebra& alg, const Projection& p, const Projection& q) {
    return proj_join(alg, p.perp(), q.perp()).perp();
}

Projection central_cover_proj(const BlockAlgebra& alg, const Projection& p) {
    alg.check(p.matrix());
    std::vector<Block> out;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const int n = alg.dim(i);
        out.emplace_back(detail::block_nonzero(p.block(i)) ? Block(Block::Identity(n, n))
                                                           : Block(Block::Zero(n, n)));
    }
    return Projection(alg, alg.from_blocks(std::move(out)));
}

bool is_central(const BlockAlgebra& alg, const Projection& p) {
    alg.check(p.matrix());
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const Block& b = p.block(i);
        const double to_zero = b.norm();
        const double to_one = (Block::Identity(b.rows(), b.cols()) - b).norm();
        if (std::min(to_zero, to_one) > std::max(p.tol(), rank_threshold(1.0))) return false;
    }
    return true;
}

Projection quantale_product(const BlockAlgebra& alg, const Projection& p, const Projection& q) {
    return proj_meet(alg, p, central_cover_proj(alg, q));
}

Projection hereditary_generated(const BlockAlgebra& alg, const BlockMatrix& a) {
    alg.check(a);
    // range(a*a) = range(a*) and range(aa*) = range(a); working from a keeps
    // the rank threshold on the scale of a rather than of a².
    return proj_join(alg, support(alg, a.adjoint()), support(alg, a));
}

CommutativityProfile commutativity_profile(const BlockAlgebra& alg, const Projection& p) {
    alg.check(p.matrix());
    CommutativityProfile out;
    out.block_ranks = p.ranks();
    out.is_commutative = std::ranges::all_of(out.block_ranks, [](int r) { return r <= 1; });
    if (out.is_commutative) return out;

    // Two orthonormal vectors x₁, x₂ in a rank-≥2 block of p span a copy of
    // M₂ inside pAp; its three lines e₁₁, e₂₂ and the diagonal break
    // distributivity.
    std::size_t i = 0;
    while (out.block_ranks[i] < 2) ++i;
    const Block basis = detail::clean_basis(p.block(i));
    const Vector x1 = basis.col(0);
    const Vector x2 = basis.col(1);
    const Projection b = detail::rank_one(alg, i, x1);
    const Projection c = detail::rank_one(alg, i, x2);
    const Projection d = detail::rank_one(alg, i, x1 + x2);
    Projection lhs = proj_meet(alg, b, proj_join(alg, c, d));
    Projection rhs = proj_join(alg, proj_meet(alg, b, c), proj_meet(alg, b, d));
    if (approx_equal(lhs, rhs, 1e-8))
        throw std::logic_error("distributivity witness failed to separate");
    out.witness = CommutativityProfile::Witness{b, c, d, std::move(lhs), std::move(rhs)};
    return out;
}

Complementarity complementarity_check(const BlockAlgebra& alg, const Projection& p, const Projection& q) {
    Complementarity out;
    const Projection one = Projection::identity(alg);
    out.complementary = proj_meet(alg, p, q).is_zero() && proj_join(alg, p, q).rank() == one.rank();
    out.norm_pq = (p.matrix() * q.matrix()).norm();
    out.norm_perp = (p.perp().matrix() * q.perp().matrix()).norm();
    if (out.complementary) {
        out.assertions_hold = std::abs(out.norm_pq - out.norm_perp) <= 1e-8 && out.norm_pq < 1.0;
        if (is_central(alg, p)) out.assertions_hold = out.assertions_hold && approx_equal(q, p.perp(), 1e-8);
    }
    return out;
}

}  // namespace heredilat::matalg
