#include "detail.hpp"

namespace heredilat::matalg {

OrbitCover unitary_orbit_cover(const BlockAlgebra& alg, const Projection& p, double eps, int max_iters,
                               SeedStream rng) {
    if (!(eps > 0.0)) throw DomainError("orbit step ε must be positive");
    const Projection cover = central_cover_proj(alg, p);
    const int target = cover.rank();
    OrbitCover out{p, 0, 0, false, true};
    while (out.reached.rank() < target && out.iterations < max_iters) {
        SeedStream s = rng.derive("orbit", static_cast<std::uint64_t>(out.iterations));
        ++out.iterations;
        // ‖h‖ = 1 keeps ‖1 − exp(iεh)‖ ≤ ε
        const BlockMatrix u = exp_i(random_hermitian(alg, s, 1.0), eps);
        const BlockMatrix upu = u * p.matrix() * u.adjoint();
        const Projection moved(alg, (upu + upu.adjoint()) * Complex(0.5), 1e-8);
        Projection next = proj_join(alg, out.reached, moved);
        out.monotone = out.monotone && proj_leq(alg, out.reached, next) && proj_leq(alg, next, cover);
        if (next.rank() > out.reached.rank()) ++out.growth_steps;
        out.reached = std::move(next);
    }
    out.reached_cover = out.reached.rank() == target && approx_equal(out.reached, cover, 1e-8);
    return out;
}

}  // namespace heredilat::matalg
