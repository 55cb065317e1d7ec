#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "heredilat/errors.hpp"
#include "heredilat/speclab.hpp"

namespace heredilat::speclab::detail {

using matalg::Block;
using matalg::Complex;
using matalg::SpectralWindow;

inline constexpr double kPre = 1e-9;  // precondition slack

/// Extreme eigenvalues of a Hermitian block matrix (over all blocks).
struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
};

inline Extremes extremes(const BlockMatrix& h) {
    Extremes out;
    for (const Block& b : h.blocks()) {
        if (b.size() == 0) continue;
        Eigen::SelfAdjointEigenSolver<Block> es(0.5 * (b + b.adjoint()), Eigen::EigenvaluesOnly);
        out.lo = std::min(out.lo, es.eigenvalues().minCoeff());
        out.hi = std::max(out.hi, es.eigenvalues().maxCoeff());
    }
    return out;
}

inline BlockMatrix hermitize(const BlockMatrix& m) { return (m + m.adjoint()) * Complex(0.5); }

/// Spectral projection that is zero for an empty window instead of throwing.
inline Projection window(const BlockAlgebra& alg, const BlockMatrix& h, SpectralWindow w) {
    if (w.lo > w.hi) return Projection::zero(alg);
    return matalg::spectral_projection(alg, h, w);
}

inline void require_contraction(const BlockAlgebra& alg, const BlockMatrix& x, const char* name) {
    alg.check(x);
    if ((x - x.adjoint()).norm() > kPre) throw PreconditionError(std::string(name) + " is not Hermitian");
    const Extremes e = extremes(x);
    if (e.lo < -kPre || e.hi > 1.0 + kPre)
        throw PreconditionError(std::string(name) + " is not a positive contraction (spectrum in [" +
                                std::to_string(e.lo) + ", " + std::to_string(e.hi) + "])");
}

/// x ≤ q for a positive contraction x and a projection q means x = qxq.
inline void require_below(const BlockMatrix& x, const Projection& q, const char* what) {
    const BlockMatrix& qm = q.matrix();
    if ((x - qm * x * qm).norm() > kPre) throw PreconditionError(std::string(what) + " fails");
}

inline double sq(double x) { return x * x; }

}  // namespace heredilat::speclab::detail
