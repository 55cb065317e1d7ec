#include <cstdint>
#include <cstring>
#include <cstdio>

#include "detail.hpp"

namespace heredilat::speclab {

using detail::sq;
using matalg::Block;
using matalg::Complex;
using matalg::SpectralWindow;

double hnorm(const HVector& v) {
    double s = 0.0;
    for (const Vector& x : v) s += x.squaredNorm();
    return std::sqrt(s);
}

HVector apply(const BlockMatrix& m, const HVector& v) {
    if (v.size() != m.block_count()) throw ShapeError("vector does not match block count");
    HVector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(m.block(i) * v[i]);
    return out;
}

namespace {

// FNV-1a over the raw entries, for report provenance.
struct Digest {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void add(double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    void add(const BlockMatrix& m) {
        for (const Block& b : m.blocks())
            for (Eigen::Index k = 0; k < b.size(); ++k) {
                add(b.data()[k].real());
                add(b.data()[k].imag());
            }
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

std::string digest_of(const LemmaInputs& in, double eps) {
    Digest d;
    d.add(eps);
    for (const auto* m : {&in.a, &in.b, &in.c})
        if (*m) d.add(**m);
    for (const auto* p : {&in.p, &in.q})
        if (*p) d.add((*p)->matrix());
    for (const Projection& p : in.ps) d.add(p.matrix());
    for (const Vector& x : in.v)
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            d.add(x(k).real());
            d.add(x(k).imag());
        }
    return d.hex();
}

template <class T>
const T& need(const std::optional<T>& x, const char* name) {
    if (!x) throw PreconditionError(std::string("missing operand ") + name);
    return *x;
}

// cb²c together with λ = ‖bq‖² and δ for the three single-operator lemmas.
struct Window {
    BlockMatrix cbbc;
    double lambda;
    double delta;
    Projection top;  // (cb²c)_{[λ−δ,1]}
};

Window top_window(LemmaId lemma, const BlockAlgebra& alg, const BlockMatrix& b, const BlockMatrix& c,
                  double lambda, double eps) {
    if (!(lambda > 1e-14)) throw PreconditionError("λ = " + std::to_string(lambda) + " must be positive");
    const double delta = delta_for(lemma, eps, lambda);
    BlockMatrix cbbc = detail::hermitize(c * b * b * c);
    Projection top = detail::window(alg, cbbc, SpectralWindow::closed(lambda - delta, 1.0));
    return {std::move(cbbc), lambda, delta, std::move(top)};
}

MarginReport finish(MarginReport r, const Window* w, double eps, const LemmaInputs& in) {
    r.eps = eps;
    if (w) {
        r.lambda = w->lambda;
        r.delta = w->delta;
    }
    r.inputs_digest = digest_of(in, eps);
    return r;
}

}  // namespace

MarginReport verify_lemma(LemmaId lemma, const BlockAlgebra& alg, const LemmaInputs& in, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("ε must be positive, got " + std::to_string(eps));
    const BlockMatrix one = alg.identity();

    switch (lemma) {
        case LemmaId::sum_window: {
            const BlockMatrix& a = need(in.a, "a");
            const BlockMatrix& b = need(in.b, "b");
            detail::require_contraction(alg, a, "a");
            detail::require_contraction(alg, b, "b");
            const Projection low = detail::window(alg, detail::hermitize(a + b), SpectralWindow::closed(0.0, eps * eps * eps));
            const Projection high = detail::window(alg, a, SpectralWindow::open_closed(eps, std::max(1.0, eps) + 1.0));
            const double lhs = (low.matrix() * high.matrix()).norm();
            return finish(make_margin(lemma, BoundKind::upper, lhs, eps), nullptr, eps, in);
        }
        case LemmaId::chain_norm: {
            if (in.ps.empty()) throw PreconditionError("chain needs at least one projection");
            const double vn = hnorm(in.v);
            if (std::abs(vn - 1.0) > detail::kPre) throw PreconditionError("v is not a unit vector");
            BlockMatrix prod = one;
            for (std::size_t k = 0; k < in.ps.size(); ++k) {
                const Projection& p = in.ps[k];
                alg.check(p.matrix());
                const double off = hnorm(apply(p.perp().matrix(), in.v));
                if (off > eps + detail::kPre)
                    throw PreconditionError("‖p" + std::to_string(k + 1) + "⊥v‖ = " + std::to_string(off) + " exceeds ε");
                prod = prod * p.matrix();
            }
            const double bound = 1.0 - static_cast<double>(in.ps.size()) * eps;
            return finish(make_margin(lemma, BoundKind::lower, prod.norm(), bound), nullptr, eps, in);
        }
        case LemmaId::c1e:
        case LemmaId::one_minus_c:
        case LemmaId::lem2: {
            const BlockMatrix& b = need(in.b, "b");
            const BlockMatrix& c = need(in.c, "c");
            const Projection& q = need(in.q, "q");
            detail::require_contraction(alg, b, "b");
            detail::require_contraction(alg, c, "c");
            detail::require_below(c, q, "c ≤ q");
            const Window w = top_window(lemma, alg, b, c, sq((b * q.matrix()).norm()), eps);
            if (lemma == LemmaId::c1e) {
                const Projection cl = detail::window(alg, c, SpectralWindow::closed(0.0, 1.0 - eps));
                const double lhs = (cl.matrix() * w.top.matrix()).norm();
                return finish(make_margin(lemma, BoundKind::upper, lhs, eps), &w, eps, in);
            }
            if (lemma == LemmaId::one_minus_c) {
                const double lhs = ((one - c) * w.top.matrix()).norm();
                return finish(make_margin(lemma, BoundKind::upper, lhs, eps), &w, eps, in);
            }
            const Projection bl = detail::window(alg, b, SpectralWindow::closed(0.0, std::sqrt(w.delta)));
            const double lhs = sq((bl.matrix() * w.top.matrix()).norm());
            return finish(make_margin(lemma, BoundKind::upper, lhs, 1.0 - w.lambda + eps), &w, eps, in);
        }
        case LemmaId::lem3: {
            const BlockMatrix& b = need(in.b, "b");
            const BlockMatrix& c = need(in.c, "c");
            const Projection& p = need(in.p, "p");
            const Projection& q = need(in.q, "q");
            detail::require_contraction(alg, b, "b");
            detail::require_contraction(alg, c, "c");
            detail::require_below(b, p, "b ≤ p");
            detail::require_below(c, q, "c ≤ q");
            const Window w = top_window(lemma, alg, b, c, sq((p.matrix() * q.matrix()).norm()), eps);
            const double lhs = sq((p.matrix() * w.top.matrix()).norm());
            return finish(make_margin(lemma, BoundKind::upper, lhs, w.lambda + eps), &w, eps, in);
        }
        case LemmaId::pythag: {
            const Projection& p = need(in.p, "p");
            const Projection& q = need(in.q, "q");
            if (p.is_zero()) throw PreconditionError("p must be nonzero");
            const double lhs = sq((p.matrix() * q.matrix()).norm()) + sq((p.matrix() * q.perp().matrix()).norm());
            return finish(make_margin(lemma, BoundKind::lower, lhs, 1.0), nullptr, eps, in);
        }
    }
    throw DomainError("unknown lemma");
}

std::array<MarginReport, 2> chain_and_sum_checks(const BlockAlgebra& alg, const LemmaInputs& in, double eps) {
    return {verify_lemma(LemmaId::sum_window, alg, in, eps), verify_lemma(LemmaId::chain_norm, alg, in, eps)};
}

namespace {

Projection nonzero_projection(const BlockAlgebra& alg, SeedStream& rng) {
    for (int tries = 0; tries < 32; ++tries) {
        Projection p = matalg::random_projection(alg, rng);
        if (!p.is_zero()) return p;
    }
    return Projection::identity(alg);
}

// A positive contraction below q: q itself, a perturbation of q from below,
// or a compression qXq of a random contraction.
BlockMatrix below(const BlockAlgebra& alg, SeedStream& rng, const Projection& q, double eps) {
    const BlockMatrix& qm = q.matrix();
    switch (rng.integer(0, 2)) {
        case 0: return qm;
        case 1: {
            const double t = rng.uniform() * std::min(1.0, eps);
            const BlockMatrix y = matalg::random_positive_contraction(alg, rng);
            return detail::hermitize(qm * (alg.identity() - y * Complex(t)) * qm);
        }
        default: return detail::hermitize(qm * matalg::random_positive_contraction(alg, rng) * qm);
    }
}

HVector random_unit(const BlockAlgebra& alg, SeedStream& rng) {
    HVector v;
    for (int n : alg.dims()) {
        Vector x(n);
        for (int k = 0; k < n; ++k) x(k) = rng.complex_normal();
        v.push_back(std::move(x));
    }
    const double n = hnorm(v);
    for (Vector& x : v) x /= n;
    return v;
}

// Projection containing, in every block, a line within angle asin(s) of v_i.
Projection near_line(const BlockAlgebra& alg, SeedStream& rng, const HVector& v, double s) {
    std::vector<Block> bases;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const int n = alg.dim(i);
        const double vn = v[i].norm();
        if (vn < 1e-12) {
            bases.emplace_back(n, 0);
            continue;
        }
        const Vector e = v[i] / vn;
        Vector w(n);
        for (int k = 0; k < n; ++k) w(k) = rng.complex_normal();
        w -= e * e.dot(w);
        Vector u = e;
        if (w.norm() > 1e-12) u = std::sqrt(1.0 - s * s) * e + s * (w / w.norm());
        bases.emplace_back(Block(u / u.norm()));
    }
    return Projection::from_bases(alg, bases);
}

// Near the extremal configuration: b the line through cosθ e₁ + sinθ e₂ and
// c = q − (1−s)e₂e₂* with s ≤ 1−ε, so the top window of cb²c is nonempty and
// leans into c_{[0,1−ε]}.
bool tight_draw(const BlockAlgebra& alg, SeedStream& rng, double eps, LemmaInputs& in) {
    std::vector<std::size_t> wide;
    for (std::size_t i = 0; i < alg.block_count(); ++i)
        if (alg.dim(i) >= 2) wide.push_back(i);
    if (wide.empty()) return false;
    const std::size_t i = wide[static_cast<std::size_t>(rng.integer(0, static_cast<int>(wide.size()) - 1))];
    const int n = alg.dim(i);
    const Block frame = matalg::range_bases(matalg::random_unitary(alg, rng))[i];
    const Vector e1 = frame.col(0), e2 = frame.col(1);

    const double s = rng.uniform(0.0, std::max(0.0, 1.0 - eps));
    const double reach = std::sqrt(eps * eps * eps / (2.0 * (1.0 - s * s)));
    const double theta = rng.uniform() * std::asin(std::min(1.0, reach));

    std::vector<Block> bases;
    for (std::size_t k = 0; k < alg.block_count(); ++k) bases.emplace_back(alg.dim(k), 0);
    Block span(n, 2);
    span << e1, e2;
    bases[i] = span;
    const Projection q = matalg::proj_join(alg, Projection::from_bases(alg, bases),
                                           rng.integer(0, 1) ? matalg::random_projection(alg, rng)
                                                             : Projection::zero(alg));
    BlockMatrix c = q.matrix();
    c.block(i) -= (1.0 - s) * e2 * e2.adjoint();
    BlockMatrix b = alg.zero();
    const Vector u = std::cos(theta) * e1 + std::sin(theta) * e2;
    b.block(i) = u * u.adjoint();
    in.q = q;
    in.c = detail::hermitize(c);
    in.b = detail::hermitize(b);
    return true;
}

}  // namespace

LemmaInputs draw_inputs(LemmaId lemma, const BlockAlgebra& alg, SeedStream& rng, double eps) {
    if (!(eps > 0.0)) throw DomainError("ε must be positive");
    LemmaInputs in;
    switch (lemma) {
        case LemmaId::sum_window: {
            // a with a gap around ε, b small enough to leave part of ker-ish a in the window
            const double e3 = eps * eps * eps;
            BlockMatrix a = matalg::random_positive_contraction(alg, rng);
            if (rng.integer(0, 1)) {
                const BlockMatrix small = matalg::random_positive_contraction(alg, rng, 0.0, e3 / 2.0);
                const Projection split = matalg::random_projection(alg, rng);
                const BlockMatrix big = matalg::random_positive_contraction(alg, rng, std::min(1.0, eps), 1.0);
                a = detail::hermitize(split.matrix() * big * split.matrix() +
                                      split.perp().matrix() * small * split.perp().matrix());
            }
            const double hi = rng.integer(0, 1) ? e3 / 2.0 : 1.0;
            in.a = a;
            in.b = matalg::random_positive_contraction(alg, rng, 0.0, hi);
            break;
        }
        case LemmaId::chain_norm: {
            in.v = random_unit(alg, rng);
            const int n = rng.integer(1, 4);
            for (int k = 0; k < n; ++k) {
                const double s = rng.uniform() * std::min(1.0, eps);
                Projection p = near_line(alg, rng, in.v, s);
                if (rng.integer(0, 1)) p = matalg::proj_join(alg, p, matalg::random_projection(alg, rng));
                in.ps.push_back(std::move(p));
            }
            break;
        }
        case LemmaId::c1e:
        case LemmaId::one_minus_c:
        case LemmaId::lem2: {
            if (rng.integer(0, 2) == 0 && tight_draw(alg, rng, eps, in)) break;
            for (int tries = 0;; ++tries) {
                in.q = nonzero_projection(alg, rng);
                in.c = below(alg, rng, *in.q, eps);
                in.b = rng.integer(0, 1) ? matalg::random_positive_contraction(alg, rng)
                                         : below(alg, rng, nonzero_projection(alg, rng), eps);
                if ((*in.b * in.q->matrix()).norm() > 1e-6 || tries > 32) break;
            }
            break;
        }
        case LemmaId::lem3: {
            for (int tries = 0;; ++tries) {
                in.p = nonzero_projection(alg, rng);
                in.q = nonzero_projection(alg, rng);
                if ((in.p->matrix() * in.q->matrix()).norm() > 1e-6 || tries > 32) break;
            }
            in.b = below(alg, rng, *in.p, eps);
            in.c = below(alg, rng, *in.q, eps);
            break;
        }
        case LemmaId::pythag: {
            const BlockAlgebra& a = alg;
            in.p = nonzero_projection(a, rng);
            if (rng.integer(0, 2) == 0) {
                // rank one, where equality holds
                const std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.block_count()) - 1));
                std::vector<int> ranks(a.block_count(), 0);
                ranks[i] = 1;
                in.p = matalg::random_projection(a, rng, ranks);
            }
            in.q = matalg::random_projection(a, rng);
            break;
        }
    }
    return in;
}

PnearqReport pnearq_check(const BlockAlgebra& alg, const Projection& p, const Projection& q, double lambda,
                          double tol) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("λ must lie in [0,1], got " + std::to_string(lambda));
    alg.check(p.matrix());
    alg.check(q.matrix());
    const BlockMatrix& pm = p.matrix();
    const BlockMatrix qp = q.perp().matrix();
    PnearqReport r;
    r.norm_sq = sq((pm * qp).norm());
    r.below_gap = detail::extremes(detail::hermitize(pm * Complex(lambda) - pm * qp * pm)).lo;
    r.above_gap = detail::extremes(detail::hermitize(pm * q.matrix() * pm - pm * Complex(1.0 - lambda))).lo;
    r.norm_form = r.norm_sq <= lambda + tol;
    r.below_form = r.below_gap >= -tol;
    r.above_form = r.above_gap >= -tol;
    if (!r.agree())
        throw std::logic_error("near-containment forms disagree: ‖pq⊥‖² = " + std::to_string(r.norm_sq) +
                               ", λ = " + std::to_string(lambda));
    return r;
}

}  // namespace heredilat::speclab
