#include "detail.hpp"

namespace heredilat::speclab {

using detail::sq;
using matalg::Complex;
using matalg::SpectralWindow;

namespace {

double ramp(double x, double lo, double hi) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return (x - lo) / (hi - lo);
}

SepResult certify(const Projection& p_b, const Projection& p_c, Projection p_d, double lambda, double eps) {
    SepResult out{std::move(p_d), {}, {}, lambda, 0.0, 0.0, 0};
    out.bound_b = make_margin(LemmaId::lem3, BoundKind::upper, (p_b.matrix() * out.p_d.matrix()).norm(), eps);
    out.bound_c =
        make_margin(LemmaId::lem2, BoundKind::lower, sq((p_c.matrix() * out.p_d.matrix()).norm()), 1.0 - lambda - eps);
    for (MarginReport* m : {&out.bound_b, &out.bound_c}) {
        m->eps = eps;
        m->lambda = lambda;
    }
    return out;
}

}  // namespace

SepResult septhm_construct(const BlockAlgebra& alg, const Projection& p_b, const Projection& p_c, double eps,
                           const SepOptions& opt) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("ε must be positive, got " + std::to_string(eps));
    alg.check(p_b.matrix());
    alg.check(p_c.matrix());
    if (p_b.is_zero() || p_c.is_zero()) throw PreconditionError("p_B and p_C must be nonzero");

    const double lambda = sq((p_b.matrix() * p_c.matrix()).norm());
    if (lambda >= 1.0 - opt.gap)
        throw OverlapTooLargeError("‖p_B p_C‖² = " + std::to_string(lambda) + " is not below 1 − " +
                                   std::to_string(opt.gap));

    SepResult out = [&] {
        if (lambda <= 1e-12) return certify(p_b, p_c, p_c, lambda, eps);

        // Bounds certified for a smaller ε also hold for ε.
        const double e = std::min(eps, 0.5);
        const double d2 = std::min(delta_for(LemmaId::lem2, e, lambda), delta_for(LemmaId::lem2, e, 1.0 - lambda));
        double mu = std::min({(1.0 - lambda) / 2.0, e * e * (1.0 - lambda) * (1.0 - e) / 2.0, d2 / 2.0});
        int halvings = 0;
        auto ok = [&](double m) {
            return m < 1.0 - lambda && m / ((1.0 - lambda - m) * (1.0 - m)) <= e * e && m <= d2 / 2.0;
        };
        while (!ok(mu)) {
            if (++halvings > 200) throw ConstructionFailure("μ schedule did not converge");
            mu /= 2.0;
        }
        const double delta = std::min(delta_for(LemmaId::lem2, mu, lambda), delta_for(LemmaId::lem3, mu, lambda));

        // b = p_B, c = p_C attain ‖bc‖² = λ exactly.
        const BlockMatrix& b = p_b.matrix();
        const BlockMatrix& c = p_c.matrix();
        const BlockMatrix m = detail::hermitize(c * b * b * c);
        const double top = detail::extremes(m).hi;
        // c′ sits between (cb²c)_{[top−δ/2,1]} and (cb²c)_{[top−δ,1]}
        // δ is usually far below eigenvalue resolution; thresholds snap like
        // closed spectral windows do.
        const double snap = matalg::kTol.snap;
        const BlockMatrix c_prime = matalg::functional_calculus(m, [&](double x) {
            return x >= top - delta / 2.0 - snap ? 1.0 : ramp(x, top - delta, top - delta / 2.0);
        });
        const BlockMatrix f_b = matalg::functional_calculus(
            b, [&](double x) { return x <= delta / 2.0 + snap ? 0.0 : ramp(x, delta / 2.0, delta); });
        const BlockMatrix unit = opt.unit ? opt.unit->matrix() : alg.identity();
        const BlockMatrix s = unit - f_b;
        const BlockMatrix a = detail::hermitize(s * c_prime * c_prime * s);
        const double an = a.norm();
        if (!(an > 0.0)) throw ConstructionFailure("(1 − f(b))c′²(1 − f(b)) vanished");
        Projection p_d = matalg::spectral_projection(alg, a * Complex(1.0 / an), SpectralWindow::open_closed(1.0 - mu, 1.0));

        SepResult r = certify(p_b, p_c, std::move(p_d), lambda, eps);
        r.mu = mu;
        r.delta = delta;
        r.halvings = halvings;
        return r;
    }();

    if (out.p_d.is_zero() || !out.bound_b.pass(matalg::kTol.rank_rel) || !out.bound_c.pass(matalg::kTol.rank_rel))
        throw ConstructionFailure("separating projection not certified: ‖p_B p_D‖ = " +
                                  std::to_string(out.bound_b.lhs) + ", ‖p_C p_D‖² = " +
                                  std::to_string(out.bound_c.lhs));
    return out;
}

Projection epsilon_ssc_witness(const BlockAlgebra& alg, const Projection& p_b, const Projection& p_c, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("ε must be positive, got " + std::to_string(eps));
    if (!matalg::proj_leq(alg, p_b, p_c) || p_b.rank() >= p_c.rank())
        throw NotStrictlyContainedError("p_B is not strictly below p_C");
    if (p_b.is_zero()) return p_c;

    // c = p_C ∈ C∖B and b = 1 − p_B ∈ B⊥ overlap, so q = c_{(0,1]} = p_C.
    const BlockMatrix c = p_c.matrix();
    const BlockMatrix b = p_b.perp().matrix();
    const double lambda = sq((b * c).norm());
    const double delta = delta_for(LemmaId::lem2, lambda / 2.0, lambda);
    const BlockMatrix m = detail::hermitize(c * b * b * c);
    const Projection p = matalg::spectral_projection(alg, m, SpectralWindow::open_closed(lambda - delta, 1.0));
    if (!p.is_zero() && (p_b.matrix() * p.matrix()).norm() < eps) return p;

    SepOptions opt;
    opt.unit = p_c;
    const SepResult sep = septhm_construct(alg, p_b, p, eps / 2.0, opt);
    if (!matalg::proj_leq(alg, sep.p_d, p_c))
        throw ConstructionFailure("separating projection escaped p_C");
    return sep.p_d;
}

}  // namespace heredilat::speclab
