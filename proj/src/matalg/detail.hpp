#pragma once

#include <algorithm>

#include "heredilat/matalg/ops.hpp"

namespace heredilat::matalg::detail {

/// Orthonormal basis of range(P) by Gram-Schmidt on the columns of P in index
/// order. Deterministic and phase-clean: diag(1,0) gives e₁, I gives e₁,e₂.
inline Block clean_basis(const Block& p) {
    const double tau = rank_threshold(1.0) * 10;
    std::vector<Vector> cols;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
        Vector v = p.col(j);
        for (const Vector& w : cols) v -= w * w.dot(v);
        for (const Vector& w : cols) v -= w * w.dot(v);
        if (v.norm() > std::max(tau, 1e-6)) cols.push_back(v / v.norm());
    }
    Block out(p.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols[j];
    return out;
}

inline bool block_nonzero(const Block& b) { return b.size() > 0 && b.norm() > rank_threshold(1.0); }

/// BlockMatrix that is zero except for block i.
inline BlockMatrix embed(const BlockAlgebra& alg, std::size_t i, const Block& b) {
    BlockMatrix m = alg.zero();
    m.block(i) = b;
    return m;
}

inline Projection rank_one(const BlockAlgebra& alg, std::size_t i, const Vector& v) {
    std::vector<Block> bases;
    for (std::size_t k = 0; k < alg.block_count(); ++k)
        bases.emplace_back(k == i ? Block(v / v.norm()) : Block(alg.dim(k), 0));
    return Projection::from_bases(alg, bases);
}

}  // namespace heredilat::matalg::detail
