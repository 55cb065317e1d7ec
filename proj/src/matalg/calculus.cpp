#include <cmath>
#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace heredilat::matalg {

bool SpectralWindow::contains(double x, double snap) const {
    const bool at_lo = std::abs(x - lo) <= snap;
    const bool at_hi = std::abs(x - hi) <= snap;
    if (at_lo && at_hi) {
        // narrow window: snap to the nearer endpoint
        const double dl = std::abs(x - lo), dh = std::abs(x - hi);
        if (dl == dh) return lo_closed && hi_closed;
        return dl < dh ? lo_closed : hi_closed;
    }
    if (at_lo) return lo_closed;
    if (at_hi) return hi_closed;
    return lo < x && x < hi;
}

void require_hermitian(const BlockMatrix& h, double tol) {
    const double err = (h - h.adjoint()).norm();
    if (err > tol) throw NotHermitianError("‖h−h*‖ = " + std::to_string(err) + " exceeds tolerance");
}

namespace {

template <class F>
BlockMatrix apply_spectrum(const BlockMatrix& h, F f) {
    std::vector<Block> out;
    for (const Block& b : h.blocks()) {
        if (b.size() == 0) {
            out.push_back(b);
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Block> es(0.5 * (b + b.adjoint()));
        const auto& lam = es.eigenvalues();
        Eigen::VectorXcd d(lam.size());
        for (Eigen::Index k = 0; k < lam.size(); ++k) d(k) = f(lam(k));
        out.emplace_back(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint());
    }
    return BlockMatrix(std::move(out));
}

}  // namespace

Projection spectral_projection(const BlockAlgebra& alg, const BlockMatrix& h, const SpectralWindow& w) {
    alg.check(h);
    if (w.lo > w.hi) throw DomainError("spectral window has lo > hi");
    require_hermitian(h);
    std::vector<Block> bases;
    for (const Block& b : h.blocks()) {
        Eigen::SelfAdjointEigenSolver<Block> es(0.5 * (b + b.adjoint()));
        const auto& lam = es.eigenvalues();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index k = 0; k < lam.size(); ++k)
            if (w.contains(lam(k))) keep.push_back(k);
        Block basis(b.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t j = 0; j < keep.size(); ++j)
            basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
        bases.push_back(std::move(basis));
    }
    return Projection::from_bases(alg, bases);
}

BlockMatrix functional_calculus(const BlockMatrix& h, const std::function<double(double)>& f) {
    require_hermitian(h);
    return apply_spectrum(h, [&](double x) { return Complex(f(x), 0.0); });
}

BlockMatrix exp_i(const BlockMatrix& h, double t) {
    require_hermitian(h);
    return apply_spectrum(h, [t](double x) { return std::exp(Complex(0.0, t * x)); });
}

BlockMatrix sqrt_psd(const BlockMatrix& h) {
    return functional_calculus(h, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

Polar polar_decompose(const BlockAlgebra& alg, const BlockMatrix& a) {
    alg.check(a);
    const double anorm = a.norm();
    const double tau = rank_threshold(anorm);
    std::vector<Block> us, mods;
    for (const Block& b : a.blocks()) {
        Eigen::JacobiSVD<Block> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        Eigen::Index r = 0;
        while (r < s.size() && s(r) > tau) ++r;
        const Block& U = svd.matrixU();
        const Block& V = svd.matrixV();
        us.emplace_back(U.leftCols(r) * V.leftCols(r).adjoint());
        Eigen::VectorXcd sc = s.cast<Complex>();
        mods.emplace_back(V * sc.asDiagonal() * V.adjoint());
    }
    Polar out{BlockMatrix(std::move(us)), BlockMatrix(std::move(mods))};

    const BlockMatrix src = out.u.adjoint() * out.u;
    const BlockMatrix rng = out.u * out.u.adjoint();
    const BlockMatrix one = alg.identity();
    const double slack = tau + 1e-10 * std::max(1.0, anorm);
    const double e_factor = (a - out.u * out.modulus).norm();
    const double e_src = (src * src - src).norm();
    const double e_rng_a = ((one - rng) * a).norm();
    const double e_a_src = (a * (one - src)).norm();
    if (e_factor > slack || e_src > 1e-9 || e_rng_a > slack || e_a_src > slack)
        throw std::logic_error("polar decomposition failed verification");
    return out;
}

}  // namespace heredilat::matalg
