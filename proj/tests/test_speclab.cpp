#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "heredilat/speclab.hpp"
#include "oracle.hpp"

using namespace heredilat;
using namespace heredilat::matalg;
using namespace heredilat::speclab;

namespace {

const double kPi = std::numbers::pi;

Block line(double theta) {
    Block p(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    p << c * c, c * s, c * s, s * s;
    return p;
}

Block diag(std::initializer_list<double> d) {
    Block m = Block::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    int i = 0;
    for (double x : d) m(i, i) = x, ++i;
    return m;
}

Projection proj(const BlockAlgebra& alg, std::vector<Block> blocks) {
    return Projection(alg, alg.from_blocks(std::move(blocks)));
}

const std::vector<std::vector<int>> kPool{{2}, {3}, {1, 2}, {2, 2}, {1, 1, 2}, {4}};

SeedStream trial_stream(std::uint64_t seed, LemmaId id, std::uint64_t trial) {
    return SeedStream(seed).derive("speclab." + std::string(to_string(id)), trial);
}

}  // namespace

TEST_CASE("delta schedules") {
    CHECK(delta_for(LemmaId::c1e, 0.1, 0.5) == doctest::Approx(2.5e-4).epsilon(1e-12));
    const double omc = 0.5 * std::pow(0.1 / std::sqrt(2.0), 3) / 2.0;
    CHECK(delta_for(LemmaId::one_minus_c, 0.1, 0.5) == doctest::Approx(omc).epsilon(1e-12));
    CHECK(omc == doctest::Approx(8.84e-5).epsilon(1e-3));

    const double lem3 = delta_for(LemmaId::lem3, 1.2, 0.5);
    CHECK(lem3 <= 0.6);
    CHECK(lem3 == doctest::Approx(std::min(0.5 * std::pow(0.3 / std::sqrt(2.0), 3) / 2.0, 0.6)));
    CHECK(delta_for(LemmaId::lem3, 100.0, 1.0) == doctest::Approx(std::min(std::pow(25.0 / std::sqrt(2.0), 3) / 2.0, 50.0)));

    // lem2 against an independent bisection on the raw inequality and against
    // its closed form δ = (ε/2)/(2−λ+ε)
    for (double eps : {0.01, 0.1, 0.5, 0.9, 2.0})
        for (double lambda : {0.05, 0.3, 0.5, 0.95, 1.0}) {
            const double root = oracle::bisect_largest(
                [&](double d) { return (1 - lambda + d + eps / 2) / (1 - d) <= 1 - lambda + eps; }, 0.0, 0.999999);
            const double closed = (eps / 2) / (2 - lambda + eps);
            CHECK(root == doctest::Approx(closed).epsilon(1e-9));
            const double expect = std::min(lambda * std::pow(eps / 4 / std::sqrt(2.0), 3) / 2, closed);
            CHECK(delta_for(LemmaId::lem2, eps, lambda) == doctest::Approx(expect).epsilon(1e-9));
        }

    CHECK_THROWS_AS(delta_for(LemmaId::c1e, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(delta_for(LemmaId::c1e, 0.1, 0.0), DomainError);
    CHECK_THROWS_AS(delta_for(LemmaId::lem2, -1.0, 0.5), DomainError);
    CHECK_THROWS_AS(delta_for(LemmaId::pythag, 0.1, 0.5), DomainError);
}

TEST_CASE("delta is monotone in eps and lambda") {
    for (LemmaId id : {LemmaId::c1e, LemmaId::one_minus_c, LemmaId::lem2, LemmaId::lem3})
        for (int i = 1; i < 40; ++i)
            for (int j = 1; j < 20; ++j) {
                const double e = 0.025 * i, l = 0.05 * j;
                CHECK(delta_for(id, e + 0.025, l) >= delta_for(id, e, l));
                if (id == LemmaId::c1e || id == LemmaId::one_minus_c)
                    CHECK(delta_for(id, e, l + 0.05) >= delta_for(id, e, l));
            }
}

TEST_CASE("lemma names") {
    for (LemmaId id : kAllLemmas) CHECK(lemma_from_string(to_string(id)) == id);
    CHECK(lemma_from_string("c1-e") == LemmaId::c1e);
    CHECK(lemma_from_string("1-c") == LemmaId::one_minus_c);
    CHECK_FALSE(lemma_from_string("lem9"));
}

TEST_CASE("degenerate lemma inputs") {
    const BlockAlgebra m2({2});
    SUBCASE("pythag with p = q rank one") {
        LemmaInputs in;
        in.p = proj(m2, {line(0.3)});
        in.q = in.p;
        const auto r = verify_lemma(LemmaId::pythag, m2, in, 0.1);
        CHECK(r.lhs == doctest::Approx(1.0));
        CHECK(std::abs(r.margin) < 1e-12);
        CHECK(r.kind == BoundKind::lower);
    }
    SUBCASE("c1e with b = c = q = 1") {
        LemmaInputs in;
        in.b = m2.identity();
        in.c = m2.identity();
        in.q = Projection::identity(m2);
        const auto r = verify_lemma(LemmaId::c1e, m2, in, 0.1);
        CHECK(r.lhs == doctest::Approx(0.0));
        CHECK(r.margin == doctest::Approx(0.1));
        CHECK(r.lambda == doctest::Approx(1.0));
    }
    SUBCASE("sum window and chain") {
        LemmaInputs in;
        in.a = m2.zero();
        in.b = m2.zero();
        in.ps = {Projection::identity(m2), Projection::identity(m2), Projection::identity(m2)};
        Vector v(2);
        v << 0.6, Complex(0, 0.8);
        in.v = {v};
        const auto [sum, chain] = chain_and_sum_checks(m2, in, 0.2);
        CHECK(sum.lhs == doctest::Approx(0.0));
        CHECK(chain.lhs == doctest::Approx(1.0));
        CHECK(chain.bound == doctest::Approx(0.4));
        CHECK(chain.margin == doctest::Approx(0.6));
    }
    SUBCASE("precondition failures") {
        LemmaInputs in;
        in.b = m2.identity() * Complex(2.0);
        in.c = m2.identity();
        in.q = Projection::identity(m2);
        CHECK_THROWS_AS(verify_lemma(LemmaId::c1e, m2, in, 0.1), PreconditionError);
        in.b = m2.identity();
        in.q = proj(m2, {diag({1, 0})});
        CHECK_THROWS_AS(verify_lemma(LemmaId::c1e, m2, in, 0.1), PreconditionError);  // c ≰ q
        in.q = Projection::identity(m2);
        in.b = m2.zero();
        CHECK_THROWS_AS(verify_lemma(LemmaId::lem2, m2, in, 0.1), PreconditionError);  // λ = 0
        LemmaInputs chain;
        chain.ps = {proj(m2, {diag({1, 0})})};
        Vector v(2);
        v << 0.0, 1.0;
        chain.v = {v};
        CHECK_THROWS_AS(verify_lemma(LemmaId::chain_norm, m2, chain, 0.5), PreconditionError);
        CHECK_THROWS_AS(verify_lemma(LemmaId::pythag, m2, LemmaInputs{}, 0.1), PreconditionError);
        CHECK_THROWS_AS(verify_lemma(LemmaId::pythag, m2, in, 0.0), DomainError);
    }
}

TEST_CASE("c1e seeded M6 trial agrees with the oracle") {
    const BlockAlgebra m6({6});
    SeedStream rng = trial_stream(42, LemmaId::c1e, 0);
    const double eps = 0.1;
    const LemmaInputs in = draw_inputs(LemmaId::c1e, m6, rng, eps);
    const auto r = verify_lemma(LemmaId::c1e, m6, in, eps);
    CHECK(r.margin >= 0.0);

    const oracle::Mat b = oracle::from(in.b->block(0)), c = oracle::from(in.c->block(0)),
                      q = oracle::from(in.q->block(0));
    const double lambda = std::pow(oracle::norm(b * q), 2);
    const double delta = lambda * eps * eps * eps / 2;
    CHECK(r.lambda == doctest::Approx(lambda).epsilon(1e-9));
    const oracle::Mat top = oracle::spectral(c * b * b * c, [&](double x) { return x >= lambda - delta - 1e-9; });
    const oracle::Mat low = oracle::spectral(c, [&](double x) { return x <= 1 - eps + 1e-9; });
    CHECK(r.lhs == doctest::Approx(oracle::norm(low * top)).epsilon(1e-7));
}

TEST_CASE("sum window and chain seeded M6 trial agree with the oracle") {
    const BlockAlgebra m6({6});
    const double eps = 0.3;
    SeedStream s1 = trial_stream(42, LemmaId::sum_window, 0);
    SeedStream s2 = trial_stream(42, LemmaId::chain_norm, 0);
    LemmaInputs in = draw_inputs(LemmaId::sum_window, m6, s1, eps);
    const LemmaInputs ch = draw_inputs(LemmaId::chain_norm, m6, s2, eps);
    in.ps = ch.ps;
    in.v = ch.v;
    const auto [sum, chain] = chain_and_sum_checks(m6, in, eps);
    CHECK(sum.margin >= 0.0);
    CHECK(chain.margin >= 0.0);

    const oracle::Mat a = oracle::from(in.a->block(0)), b = oracle::from(in.b->block(0));
    const oracle::Mat low = oracle::spectral(a + b, [&](double x) { return x <= eps * eps * eps + 1e-9; });
    const oracle::Mat high = oracle::spectral(a, [&](double x) { return x > eps + 1e-9; });
    CHECK(sum.lhs == doctest::Approx(oracle::norm(low * high)).epsilon(1e-7));
    oracle::Mat prod = oracle::Mat::identity(6);
    for (const Projection& p : in.ps) prod = prod * oracle::from(p.block(0));
    CHECK(chain.lhs == doctest::Approx(oracle::norm(prod)).epsilon(1e-9));
}

TEST_CASE("every lemma holds on seeded draws") {
    for (LemmaId id : kAllLemmas) {
        int nontrivial = 0;
        for (std::uint64_t t = 0; t < 150; ++t) {
            const BlockAlgebra alg(kPool[t % kPool.size()]);
            SeedStream rng = trial_stream(11, id, t);
            const double eps = rng.uniform(0.02, 0.95);
            const LemmaInputs in = draw_inputs(id, alg, rng, eps);
            const auto r = verify_lemma(id, alg, in, eps);
            INFO(to_string(id), " trial ", t, " lhs ", r.lhs, " bound ", r.bound);
            CHECK(r.pass(1e-8));
            if (r.lhs > 1e-9) ++nontrivial;
        }
        INFO(to_string(id));
        CHECK(nontrivial > 0);
    }
}

TEST_CASE("pythag equality for rank one p") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const BlockAlgebra alg(kPool[t % kPool.size()]);
        SeedStream rng(1000 + t);
        std::vector<int> ranks(alg.block_count(), 0);
        ranks.back() = 1;
        LemmaInputs in;
        in.p = random_projection(alg, rng, ranks);
        in.q = random_projection(alg, rng);
        CHECK(verify_lemma(LemmaId::pythag, alg, in, 0.1).lhs == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("near-containment forms") {
    const BlockAlgebra m2({2});
    const Projection p = proj(m2, {diag({1, 0})});
    const auto eq = pnearq_check(m2, p, proj(m2, {line(kPi / 4)}), 0.5);
    CHECK(eq.norm_form);
    CHECK(eq.below_form);
    CHECK(eq.above_form);
    CHECK(eq.norm_sq == doctest::Approx(0.5));
    CHECK(std::abs(eq.below_gap) < 1e-12);

    for (double lambda : {0.0, 0.3, 1.0}) {
        const auto one = pnearq_check(m2, p, Projection::identity(m2), lambda);
        CHECK((one.norm_form && one.below_form && one.above_form));
    }
    const auto none = pnearq_check(m2, p, proj(m2, {line(kPi / 3)}), 0.0);
    CHECK_FALSE((none.norm_form || none.below_form || none.above_form));
    CHECK_THROWS_AS(pnearq_check(m2, p, p, 1.5), DomainError);

    for (std::uint64_t t = 0; t < 200; ++t) {
        const BlockAlgebra alg(kPool[t % kPool.size()]);
        SeedStream rng(77 + t);
        const auto a = random_projection(alg, rng), b = random_projection(alg, rng);
        CHECK_NOTHROW(pnearq_check(alg, a, b, rng.uniform()));
    }
}

TEST_CASE("separation construction on M2") {
    const BlockAlgebra m2({2});
    const Projection pb = proj(m2, {diag({1, 0})});

    const auto orth = septhm_construct(m2, pb, proj(m2, {diag({0, 1})}), 0.1);
    CHECK(orth.bound_b.lhs <= 0.1);
    CHECK(orth.bound_c.lhs >= 0.9);

    const Projection pc = proj(m2, {line(kPi / 4)});
    const auto half = septhm_construct(m2, pb, pc, 0.1);
    CHECK(half.lambda == doctest::Approx(0.5));
    CHECK_FALSE(half.p_d.is_zero());
    const oracle::Mat d = oracle::from(half.p_d.block(0));
    CHECK(oracle::norm(oracle::from(pb.block(0)) * d) <= 0.1 + 1e-12);
    CHECK(std::pow(oracle::norm(oracle::from(pc.block(0)) * d), 2) >= 0.4 - 1e-12);
    CHECK(half.mu > 0.0);
    CHECK(half.delta > 0.0);

    const Projection r1 = proj(m2, {line(0.7)});
    CHECK_THROWS_AS(septhm_construct(m2, r1, r1, 0.1), OverlapTooLargeError);
    CHECK_THROWS_AS(septhm_construct(m2, Projection::zero(m2), r1, 0.1), PreconditionError);
}

TEST_CASE("separation construction with a small overlap") {
    // λ ≈ 0.0026 pushes μ below the eigenvalue snap
    const BlockAlgebra m2({2});
    const Projection pb = proj(m2, {diag({1, 0})});
    const Projection pc = proj(m2, {line(kPi / 2 - std::asin(std::sqrt(0.0026)))});
    const auto r = septhm_construct(m2, pb, pc, 0.05);
    CHECK(r.lambda == doctest::Approx(0.0026));
    CHECK(r.mu < 1e-9);
    CHECK_FALSE(r.p_d.is_zero());
    CHECK(r.bound_b.pass(1e-8));
    CHECK(r.bound_c.pass(1e-8));
}

TEST_CASE("separation construction on random pairs") {
    int built = 0;
    for (std::uint64_t t = 0; t < 300; ++t) {
        const BlockAlgebra alg(kPool[t % kPool.size()]);
        SeedStream rng(500 + t);
        const auto pb = random_projection(alg, rng), pc = random_projection(alg, rng);
        if (pb.is_zero() || pc.is_zero()) continue;
        const double lambda = std::pow((pb.matrix() * pc.matrix()).norm(), 2);
        if (lambda > 0.9) continue;
        for (double eps : {0.05, 0.3}) {
            const auto r = septhm_construct(alg, pb, pc, eps);
            CHECK_FALSE(r.p_d.is_zero());
            CHECK(r.bound_b.pass(1e-8));
            CHECK(r.bound_c.pass(1e-8));
            CHECK((pb.matrix() * r.p_d.matrix()).norm() <= eps + 1e-8);
            ++built;
        }
    }
    CHECK(built > 50);
}

TEST_CASE("epsilon semicomplement witness") {
    const BlockAlgebra m2({2});
    const Projection e11 = proj(m2, {diag({1, 0})});
    const Projection one = Projection::identity(m2);

    const Projection d = epsilon_ssc_witness(m2, e11, one, 0.1);
    CHECK_FALSE(d.is_zero());
    CHECK((e11.matrix() * d.matrix()).norm() < 0.1);
    CHECK(approx_equal(epsilon_ssc_witness(m2, Projection::zero(m2), one, 0.1), one, 1e-12));
    CHECK_THROWS_AS(epsilon_ssc_witness(m2, e11, e11, 0.1), NotStrictlyContainedError);
    CHECK_THROWS_AS(epsilon_ssc_witness(m2, one, e11, 0.1), NotStrictlyContainedError);

    for (std::uint64_t t = 0; t < 100; ++t) {
        const BlockAlgebra alg(kPool[t % kPool.size()]);
        SeedStream rng(900 + t);
        const auto pc = random_projection(alg, rng);
        const auto pb = proj_meet(alg, pc, random_projection(alg, rng));
        if (pb.rank() >= pc.rank()) continue;
        const Projection w1 = epsilon_ssc_witness(alg, pb, pc, 0.2);
        const Projection w2 = epsilon_ssc_witness(alg, pb, pc, 0.1);
        for (const Projection* w : {&w1, &w2}) {
            CHECK_FALSE(w->is_zero());
            CHECK(proj_leq(alg, *w, pc));
        }
        const double n1 = (pb.matrix() * w1.matrix()).norm(), n2 = (pb.matrix() * w2.matrix()).norm();
        CHECK(n1 < 0.2);
        CHECK(n2 < 0.1);
        CHECK(n2 <= n1 + 1e-9);
    }
}
