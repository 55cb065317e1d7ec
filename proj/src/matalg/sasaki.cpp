#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"

namespace heredilat::matalg {

bool SasakiReport::holds(double tol) const {
    bool ok = err_half_identity <= tol && err_v_square <= tol && err_vv_star <= tol &&
              err_contain_2 <= tol && err_contain_3 <= tol;
    for (double e : err_interval) ok = ok && e <= tol;
    return ok;
}

namespace {

// Random projection below r: a random subspace of range(r) in every block.
Projection random_subprojection(const BlockAlgebra& alg, const Projection& r, SeedStream& rng) {
    const auto bases = range_bases(r.matrix());
    std::vector<Block> out;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const auto k = bases[i].cols();
        if (k == 0) {
            out.emplace_back(alg.dim(i), 0);
            continue;
        }
        const int m = rng.integer(0, static_cast<int>(k));
        Eigen::HouseholderQR<Block> qr(gaussian_block(static_cast<int>(k), static_cast<int>(k), rng));
        const Block w = Block(qr.householderQ()).leftCols(m);
        out.emplace_back(bases[i] * w);
    }
    return Projection::from_bases(alg, out);
}

}  // namespace

SasakiReport sasaki_report(const BlockAlgebra& alg, const BlockMatrix& a, SeedStream rng, int samples,
                           double tol) {
    alg.check(a);
    const double an = a.norm();
    const double sq = (a * a).norm();
    if (sq > tol * an * an)
        throw NotNilpotentError("‖a²‖ = " + std::to_string(sq) + " exceeds tol·‖a‖²");

    SasakiReport rep;
    rep.u = polar_partial_isometry(alg, a);
    const BlockMatrix& u = rep.u;
    const BlockMatrix src = u.adjoint() * u;   // u*u
    const BlockMatrix rng_ = u * u.adjoint();  // uu*
    rep.v = (u + src) * Complex(1.0 / std::numbers::sqrt2);
    const BlockMatrix& v = rep.v;
    const BlockMatrix vv = v * v.adjoint();

    rep.err_half_identity = (v.adjoint() * rng_ * v - src * Complex(0.5)).norm();
    rep.err_v_square = (v * v - v * Complex(1.0 / std::numbers::sqrt2)).norm();
    rep.err_vv_star = (vv * rng_ * vv - vv * Complex(0.5)).norm();

    const Projection P_src = support(alg, src);
    const Projection P_rng = support(alg, rng_);
    const Projection P_vv = support(alg, vv);
    for (int k = 0; k < samples; ++k) {
        SeedStream s = rng.derive("sasaki.p", static_cast<std::uint64_t>(k));
        // the first sample is vv* itself
        const Projection pk = k == 0 ? P_vv : random_subprojection(alg, P_vv, s);
        const Projection lhs = proj_meet(alg, P_src, proj_join(alg, pk, P_rng));
        rep.err_interval.push_back((lhs.matrix() - v.adjoint() * pk.matrix() * v).norm());
    }
    rep.err_contain_2 = (P_src.matrix() * proj_join(alg, P_vv, P_rng).perp().matrix()).norm();
    rep.err_contain_3 = (P_rng.matrix() * proj_join(alg, P_vv, P_src).perp().matrix()).norm();
    return rep;
}

}  // namespace heredilat::matalg
