#include <sstream>
#include <stdexcept>

#include "detail.hpp"

namespace heredilat::matalg {

namespace {

constexpr double kSample = 1e-8;  // cutoff for sampled products of unit-norm factors
constexpr double kEq = 1e-7;      // projection equality in sampled lattice identities

bool c_disjoint(const Projection& p, const Projection& q) {
    for (std::size_t i = 0; i < p.block_count(); ++i)
        if (detail::block_nonzero(p.block(i)) && detail::block_nonzero(q.block(i))) return false;
    return true;
}

std::optional<std::size_t> shared_block(const Projection& p, const Projection& q) {
    for (std::size_t i = 0; i < p.block_count(); ++i)
        if (detail::block_nonzero(p.block(i)) && detail::block_nonzero(q.block(i))) return i;
    return std::nullopt;
}

// a = x y* with x ∈ range(p_i), y ∈ range(q_i): paq = a ≠ 0, aa* ≤ p, a*a ≤ q.
BlockMatrix corner_witness(const BlockAlgebra& alg, const Projection& p, const Projection& q,
                           std::size_t i) {
    const Vector x = detail::clean_basis(p.block(i)).col(0);
    const Vector y = detail::clean_basis(q.block(i)).col(0);
    return detail::embed(alg, i, x * y.adjoint());
}

BlockMatrix unit_element(const BlockAlgebra& alg, SeedStream& rng) {
    BlockMatrix a = random_element(alg, rng);
    return a * Complex(1.0 / a.norm());
}

std::vector<int> ranks_below(const BlockAlgebra& alg, const Projection& p, SeedStream& rng) {
    const auto r = p.ranks();
    std::vector<int> out;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const int room = alg.dim(i) - r[i];
        out.push_back(r[i] > 0 && room > 0 ? rng.integer(1, room) : rng.integer(0, room));
    }
    return out;
}

}  // namespace

Relations relations(const BlockAlgebra& alg, const Projection& p, const Projection& q, SeedStream rng,
                    int draws) {
    alg.check(p.matrix());
    alg.check(q.matrix());
    Relations out;
    out.orthogonal = (p.matrix() * q.matrix()).norm() <= std::max(p.tol(), q.tol());
    out.strongly_orthogonal = c_disjoint(p, q);
    out.meet_zero = proj_meet(alg, p, q).is_zero();
    for (int k = 0; k < draws; ++k) {
        SeedStream s = rng.derive("relations.a", static_cast<std::uint64_t>(k));
        const BlockMatrix a = unit_element(alg, s);
        out.sampled_paq = std::max(out.sampled_paq, (p.matrix() * a * q.matrix()).norm());
    }
    if (!out.strongly_orthogonal) out.witness = corner_witness(alg, p, q, *shared_block(p, q));

    if (out.strongly_orthogonal && !out.orthogonal)
        throw std::logic_error("strong orthogonality without orthogonality");
    if (out.orthogonal && !out.meet_zero) throw std::logic_error("orthogonal projections with nonzero meet");
    if (out.strongly_orthogonal && out.sampled_paq > kSample)
        throw std::logic_error("sampled paq contradicts disjoint central supports");
    if (!out.strongly_orthogonal && draws > 0 && out.sampled_paq <= kSample)
        throw std::logic_error("sampled paq vanishes although central supports overlap");
    return out;
}

Annihilators annihilators(const BlockAlgebra& alg, const Projection& p, SeedStream rng, int draws) {
    alg.check(p.matrix());
    Annihilators out{p.perp(), central_cover_proj(alg, p).perp()};
    if (!proj_leq(alg, out.annihilator_ideal, out.star_annihilator))
        throw std::logic_error("annihilator ideal not contained in the *-annihilator");
    const BlockMatrix& pm = p.matrix();
    for (int k = 0; k < draws; ++k) {
        SeedStream s = rng.derive("annihilators", static_cast<std::uint64_t>(k));
        const BlockMatrix a = unit_element(alg, s);
        const BlockMatrix b = unit_element(alg, s);
        const BlockMatrix x = out.star_annihilator.matrix() * a * out.star_annihilator.matrix();
        if ((pm * x).norm() > kSample || (pm * x.adjoint()).norm() > kSample)
            throw std::logic_error("*-annihilator element fails ba = 0 = ba*");
        const BlockMatrix y = out.annihilator_ideal.matrix() * a * out.annihilator_ideal.matrix();
        if ((pm * b * y).norm() > kSample)
            throw std::logic_error("annihilator-ideal element fails bAa = 0");
    }
    return out;
}

TrieqReport trieq_battery(const BlockAlgebra& alg, const Projection& p, const Projection& q, SeedStream rng,
                          int draws) {
    alg.check(p.matrix());
    alg.check(q.matrix());
    TrieqReport rep;
    const Projection cp = central_cover_proj(alg, p);
    const Projection cq = central_cover_proj(alg, q);

    auto exact = [&](std::string id, std::string label, bool holds, std::string witness = {}) {
        rep.items.push_back({std::move(id), std::move(label), false, holds, std::move(witness)});
    };

    // exact items
    {
        const Annihilators ap = annihilators(alg, p, rng.derive("trieq.ann.p"), 0);
        const Annihilators aq = annihilators(alg, q, rng.derive("trieq.ann.q"), 0);
        // c(p) = 1 − (1 − c(p)), read back from the annihilator ideals
        const Projection dd_p = ap.annihilator_ideal.perp();
        const Projection dd_q = aq.annihilator_ideal.perp();
        exact("2", "double annihilator ideals meet in zero", proj_meet(alg, dd_p, dd_q).is_zero());
    }
    exact("3", "ideal cover of p meets q in zero", proj_meet(alg, cp, q).is_zero());
    exact("4", "p meets ideal cover of q in zero", proj_meet(alg, p, cq).is_zero());
    {
        const auto rj = proj_join(alg, p, q).ranks();
        const auto rp = p.ranks();
        const auto rq = q.ranks();
        bool direct = proj_meet(alg, p, q).is_zero();
        std::ostringstream w;
        for (std::size_t i = 0; i < rj.size(); ++i)
            if (rj[i] * rj[i] != rp[i] * rp[i] + rq[i] * rq[i]) {
                direct = false;
                w << "block " << i << ": rank(p∨q)²=" << rj[i] * rj[i] << " vs " << rp[i] * rp[i] + rq[i] * rq[i];
                break;
            }
        exact("5", "join corner is the direct sum of the corners", direct, w.str());
    }
    if (auto i = shared_block(p, q)) {
        const BlockMatrix a = corner_witness(alg, p, q, *i);
        const BlockMatrix aa = a * a.adjoint();
        const BlockMatrix a_a = a.adjoint() * a;
        const bool ok = a.norm() > 0.5 && (p.perp().matrix() * aa).norm() <= kSample &&
                        (q.perp().matrix() * a_a).norm() <= kSample;
        if (!ok) throw std::logic_error("constructed witness fails aa* ∈ pAp, a*a ∈ qAq");
        rep.witness = a;
        exact("13", "aa* in pAp and a*a in qAq force a = 0", false,
              "a = x y* in block " + std::to_string(*i));
    } else {
        exact("13", "aa* in pAp and a*a in qAq force a = 0", true);
    }

    rep.exact_value = rep.items.front().holds;
    for (const auto& it : rep.items) rep.exact_agree = rep.exact_agree && it.holds == rep.exact_value;
    rep.witness_found = rep.exact_value || rep.witness.has_value();

    // sampled items
    auto sampled = [&](std::string id, std::string label, auto&& counterexample) {
        TrieqItem it{std::move(id), std::move(label), true, true, {}};
        for (int k = 0; k < draws; ++k) {
            SeedStream s = rng.derive("trieq." + it.id, static_cast<std::uint64_t>(k));
            if (auto w = counterexample(s)) {
                it.holds = false;
                it.witness = "draw " + std::to_string(k) + ": " + *w;
                break;
            }
        }
        if (!it.holds) ++rep.sampled_witness_hits;
        if (rep.exact_value && !it.holds) rep.sampled_consistent = false;
        rep.items.push_back(std::move(it));
    };
    const BlockMatrix& pm = p.matrix();
    const BlockMatrix& qm = q.matrix();

    sampled("1", "pAq = 0", [&](SeedStream& s) -> std::optional<std::string> {
        const double v = (pm * unit_element(alg, s) * qm).norm();
        if (v > kSample) return "‖paq‖ = " + std::to_string(v);
        return std::nullopt;
    });
    sampled("6", "D = (p∨D)∧(q∨D) for all D", [&](SeedStream& s) -> std::optional<std::string> {
        const Projection d = random_projection(alg, s);
        const Projection r = proj_meet(alg, proj_join(alg, p, d), proj_join(alg, q, d));
        if (!approx_equal(r, d, kEq)) return "rank(D) = " + std::to_string(d.rank());
        return std::nullopt;
    });
    sampled("7", "p∧D = p∧(q∨D) for all D", [&](SeedStream& s) -> std::optional<std::string> {
        const Projection d = random_projection(alg, s);
        if (!approx_equal(proj_meet(alg, p, d), proj_meet(alg, p, proj_join(alg, q, d)), kEq))
            return "rank(D) = " + std::to_string(d.rank());
        return std::nullopt;
    });
    sampled("10", "every coatom 1−vv* contains p or q", [&](SeedStream& s) -> std::optional<std::string> {
        const std::size_t i = static_cast<std::size_t>(s.integer(0, static_cast<int>(alg.block_count()) - 1));
        const Vector v = random_unit_vector(alg.dim(i), s);
        const double pv = (p.block(i) * v).norm();
        const double qv = (q.block(i) * v).norm();
        if (pv > kSample && qv > kSample) return "block " + std::to_string(i) + ": pv, qv both nonzero";
        return std::nullopt;
    });
    return rep;
}

SemicomplementProbe semicomplement_probe(const BlockAlgebra& alg, const Projection& p, SeedStream rng,
                                         int draws) {
    SemicomplementProbe out;
    const bool central = is_central(alg, p);
    const Projection pp = p.perp();
    for (int k = 0; k < draws; ++k) {
        SeedStream s = rng.derive("semicomplement", static_cast<std::uint64_t>(k));
        ++out.draws_used;
        if (central) {
            const Projection r = random_projection(alg, s);
            if (!proj_meet(alg, p, r).is_zero()) continue;
            if (!proj_leq(alg, r, pp)) {
                out.below_perp = false;
                break;
            }
        } else {
            const Projection r1 = random_projection(alg, s, ranks_below(alg, p, s));
            const Projection r2 = random_projection(alg, s, ranks_below(alg, p, s));
            if (!proj_meet(alg, p, r1).is_zero() || !proj_meet(alg, p, r2).is_zero()) continue;
            if (!proj_meet(alg, p, proj_join(alg, r1, r2)).is_zero()) {
                out.join_witness = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace heredilat::matalg
