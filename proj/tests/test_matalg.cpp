#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heredilat/matalg/ops.hpp"
#include "oracle.hpp"

using namespace heredilat;
using namespace heredilat::matalg;

namespace {

const double kPi = std::numbers::pi;

// projection onto the line through (cos θ, sin θ)
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

double oracle_norm(const BlockMatrix& m) {
    double n = 0;
    for (const Block& b : m.blocks()) n = std::max(n, oracle::norm(oracle::from(b)));
    return n;
}

const std::vector<std::vector<int>> kPool{{2}, {3}, {1, 2}, {2, 2}, {1, 1, 2}, {4}};

}  // namespace

TEST_CASE("algebra construction") {
    const BlockAlgebra alg({1, 2});
    CHECK(alg.dimension() == 5);
    CHECK(alg.hilbert_dimension() == 3);
    CHECK_THROWS_AS(BlockAlgebra({}), DimCapError);
    CHECK_THROWS_AS(BlockAlgebra({0}), DimCapError);
    CHECK_THROWS_AS(BlockAlgebra({15}), DimCapError);
    CHECK_NOTHROW(BlockAlgebra({14}));
    CHECK_THROWS_AS(alg.from_blocks({Block::Zero(2, 2), Block::Zero(2, 2)}), ShapeError);
}

TEST_CASE("random draws are deterministic and well-formed") {
    const BlockAlgebra alg({4});
    const SeedStream root(42);
    SeedStream s1 = root.derive("projection", 3), s2 = root.derive("projection", 3);
    const auto p1 = random_projection(alg, s1);
    const auto p2 = random_projection(alg, s2);
    CHECK(p1.matrix().block(0) == p2.matrix().block(0));
    SeedStream s3 = root.derive("projection", 4);
    SeedStream s4 = root.derive("other", 3);
    CHECK(s3() != s4());

    for (int k = 0; k < 20; ++k) {
        SeedStream s = root.derive("nilpotent", static_cast<std::uint64_t>(k));
        const auto a = random_nilpotent(alg, s);
        CHECK((a * a).norm() <= 1e-12 * std::max(1.0, a.norm() * a.norm()));
        const auto u = random_unitary(alg, s);
        CHECK((u * u.adjoint() - alg.identity()).norm() < 1e-12);
    }
}

TEST_CASE("projection validation") {
    const BlockAlgebra m2({2});
    CHECK_NOTHROW(proj(m2, {line(0.3)}));
    Block nh(2, 2);
    nh << 1, 1, 0, 0;
    CHECK_THROWS_AS(proj(m2, {nh}), NotAProjectionError);
    CHECK_THROWS_AS(proj(m2, {diag({2, 0})}), NotAProjectionError);
}

TEST_CASE("order, join and meet") {
    const BlockAlgebra m2({2});
    const auto e11 = proj(m2, {diag({1, 0})});
    const auto e22 = proj(m2, {diag({0, 1})});
    const auto d = proj(m2, {line(kPi / 4)});
    const auto one = Projection::identity(m2);
    CHECK(proj_leq(m2, e11, one));
    CHECK_FALSE(proj_leq(m2, d, e11));
    CHECK_FALSE(proj_leq(m2, e11, d));
    CHECK(oracle_norm(d.matrix() * e22.matrix()) == doctest::Approx(std::cos(kPi / 4)));
    CHECK(approx_equal(proj_join(m2, e11, d), one, 1e-12));
    CHECK(proj_meet(m2, e11, d).is_zero());

    const BlockAlgebra a12({1, 2});
    const auto left = proj(a12, {diag({1}), Block::Zero(2, 2)});
    const auto right = proj(a12, {Block::Zero(1, 1), line(0.7)});
    const auto j = proj_join(a12, left, right);
    CHECK(approx_equal(j, proj(a12, {diag({1}), line(0.7)}), 1e-12));
}

TEST_CASE("central covers of projections") {
    const BlockAlgebra a12({1, 2});
    const auto p = proj(a12, {Block::Zero(1, 1), line(0.2)});
    CHECK(approx_equal(central_cover_proj(a12, p), proj(a12, {Block::Zero(1, 1), Block::Identity(2, 2)}), 0));
    CHECK(central_cover_proj(a12, Projection::zero(a12)).is_zero());
    const auto z = proj(a12, {diag({1}), Block::Zero(2, 2)});
    CHECK(approx_equal(central_cover_proj(a12, z), z, 0));
    CHECK(is_central(a12, z));
    CHECK_FALSE(is_central(a12, p));
}

TEST_CASE("orthogonality relations") {
    const SeedStream rng(1);
    const BlockAlgebra a11({1, 1});
    const auto r1 = relations(a11, proj(a11, {diag({1}), diag({0})}), proj(a11, {diag({0}), diag({1})}), rng);
    CHECK(r1.orthogonal);
    CHECK(r1.strongly_orthogonal);
    CHECK(r1.meet_zero);

    const BlockAlgebra m2({2});
    const auto e11 = proj(m2, {diag({1, 0})});
    const auto e22 = proj(m2, {diag({0, 1})});
    const auto r2 = relations(m2, e11, e22, rng);
    CHECK(r2.orthogonal);
    CHECK_FALSE(r2.strongly_orthogonal);
    CHECK(r2.meet_zero);
    REQUIRE(r2.witness);
    CHECK(approx_equal(*r2.witness, m2.unit(0, 0, 1), 1e-12));

    const auto r3 = relations(m2, e11, proj(m2, {line(kPi / 4)}), rng);
    CHECK(r3.meet_zero);
    CHECK_FALSE(r3.orthogonal);
}

TEST_CASE("annihilators and quantale products") {
    const SeedStream rng(2);
    const BlockAlgebra m2({2});
    const auto e11 = proj(m2, {diag({1, 0})});
    const auto an = annihilators(m2, e11, rng);
    CHECK(approx_equal(an.star_annihilator, proj(m2, {diag({0, 1})}), 1e-12));
    CHECK(an.annihilator_ideal.is_zero());

    const BlockAlgebra a12({1, 2});
    const auto z = proj(a12, {diag({1}), Block::Zero(2, 2)});
    const auto az = annihilators(a12, z, rng);
    CHECK(approx_equal(az.star_annihilator, z.perp(), 1e-12));
    CHECK(approx_equal(az.annihilator_ideal, z.perp(), 1e-12));
    const auto a0 = annihilators(a12, Projection::zero(a12), rng);
    CHECK(approx_equal(a0.star_annihilator, Projection::identity(a12), 0));
    CHECK(approx_equal(a0.annihilator_ideal, Projection::identity(a12), 0));

    const auto p = proj(a12, {diag({1}), line(0.4)});
    CHECK(approx_equal(quantale_product(a12, p, z), proj_meet(a12, p, z), 1e-12));
    const auto q = proj(a12, {Block::Zero(1, 1), line(1.1)});
    const auto p2 = proj(a12, {Block::Zero(1, 1), line(0.4)});
    CHECK(approx_equal(quantale_product(a12, p2, q), p2, 1e-12));
    CHECK(quantale_product(a12, z, q).is_zero());
}

TEST_CASE("polar decomposition") {
    const BlockAlgebra m2({2});
    const auto e12 = m2.unit(0, 0, 1);
    CHECK(approx_equal(polar_partial_isometry(m2, e12), e12, 1e-12));
    CHECK(polar_partial_isometry(m2, m2.zero()).norm() == 0);
    const BlockMatrix psd = m2.from_blocks({diag({0.3, 0})});
    CHECK(approx_equal(polar_partial_isometry(m2, psd), m2.from_blocks({diag({1, 0})}), 1e-12));

    const SeedStream root(9);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 20; ++k) {
            SeedStream s = root.derive("polar", static_cast<std::uint64_t>(k));
            const auto a = random_element(alg, s);
            const auto pd = polar_decompose(alg, a);
            CHECK((a - pd.u * pd.modulus).norm() <= 1e-9 * a.norm());
        }
    }
}

TEST_CASE("hereditary generation") {
    const BlockAlgebra m2({2});
    CHECK(approx_equal(hereditary_generated(m2, m2.unit(0, 0, 1)), Projection::identity(m2), 1e-12));
    const auto p = proj(m2, {line(0.3)});
    CHECK(approx_equal(hereditary_generated(m2, p.matrix()), p, 1e-12));
    CHECK(hereditary_generated(m2, m2.zero()).is_zero());
}

TEST_CASE("spectral projections") {
    const BlockAlgebra m2({2});
    const auto h = m2.from_blocks({diag({0.2, 0.8})});
    CHECK(approx_equal(spectral_projection(m2, h, SpectralWindow::open_closed(0.5, 1)),
                       proj(m2, {diag({0, 1})}), 1e-12));
    CHECK(approx_equal(spectral_projection(m2, h, SpectralWindow::closed(0, h.norm())),
                       Projection::identity(m2), 1e-12));
    const auto h2 = m2.from_blocks({diag({0.5, 0.8})});
    CHECK(approx_equal(spectral_projection(m2, h2, SpectralWindow::open_closed(0.5, 1)),
                       proj(m2, {diag({0, 1})}), 1e-12));
    CHECK(approx_equal(spectral_projection(m2, h2, SpectralWindow::closed(0.5, 1)),
                       Projection::identity(m2), 1e-12));
    // within the snap distance of a closed endpoint
    const auto h3 = m2.from_blocks({diag({0.5 - 5e-10, 0.8})});
    CHECK(approx_equal(spectral_projection(m2, h3, SpectralWindow::closed(0.5, 1)),
                       Projection::identity(m2), 1e-12));
    CHECK_THROWS_AS(spectral_projection(m2, m2.unit(0, 0, 1), SpectralWindow::closed(0, 1)),
                    NotHermitianError);
}

TEST_CASE("spectral projections agree with the Jacobi oracle") {
    const SeedStream root(5);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 10; ++k) {
            SeedStream s = root.derive("spectral", static_cast<std::uint64_t>(k));
            const auto h = random_hermitian(alg, s, 1.0);
            const double lo = s.uniform(-1, 0.2), hi = s.uniform(0.3, 1);
            const auto p = spectral_projection(alg, h, SpectralWindow::open_closed(lo, hi));
            for (std::size_t i = 0; i < alg.block_count(); ++i) {
                const auto ref = oracle::spectral(oracle::from(h.block(i)),
                                                  [&](double x) { return lo < x && x <= hi; });
                CHECK(oracle::norm(oracle::from(p.block(i)) - ref) < 1e-9);
            }
            CHECK(h.norm() == doctest::Approx(oracle_norm(h)).epsilon(1e-12));
        }
    }
}

TEST_CASE("distributivity witnesses") {
    const BlockAlgebra a12({1, 2});
    const auto c = commutativity_profile(a12, proj(a12, {diag({1}), line(0.9)}));
    CHECK(c.is_commutative);
    CHECK(c.block_ranks == std::vector<int>{1, 1});
    CHECK(commutativity_profile(a12, Projection::zero(a12)).is_commutative);

    const BlockAlgebra m2({2});
    const auto w = commutativity_profile(m2, Projection::identity(m2));
    CHECK_FALSE(w.is_commutative);
    REQUIRE(w.witness);
    CHECK(approx_equal(w.witness->b, proj(m2, {diag({1, 0})}), 1e-12));
    CHECK(approx_equal(w.witness->c, proj(m2, {diag({0, 1})}), 1e-12));
    CHECK(approx_equal(w.witness->d, proj(m2, {line(kPi / 4)}), 1e-12));
    CHECK(approx_equal(w.witness->lhs, w.witness->b, 1e-12));
    CHECK(w.witness->rhs.is_zero());
}

TEST_CASE("complementarity") {
    const BlockAlgebra m2({2});
    const auto e11 = proj(m2, {diag({1, 0})});
    const auto c1 = complementarity_check(m2, e11, e11.perp());
    CHECK(c1.complementary);
    CHECK(c1.norm_pq == doctest::Approx(0));
    CHECK(c1.norm_perp == doctest::Approx(0));
    const auto c2 = complementarity_check(m2, e11, proj(m2, {line(kPi / 4)}));
    CHECK(c2.complementary);
    CHECK(c2.assertions_hold);
    CHECK(c2.norm_pq == doctest::Approx(std::cos(kPi / 4)));
    CHECK(c2.norm_perp == doctest::Approx(std::cos(kPi / 4)));
    CHECK_FALSE(complementarity_check(m2, e11, e11).complementary);
}

TEST_CASE("complementary pairs satisfy the norm identity") {
    const SeedStream root(12);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 30; ++k) {
            SeedStream s = root.derive("complement", static_cast<std::uint64_t>(k));
            const auto p = random_projection(alg, s);
            std::vector<int> r;
            for (std::size_t i = 0; i < alg.block_count(); ++i) r.push_back(alg.dim(i) - p.ranks()[i]);
            const auto q = random_projection(alg, s, r);
            const auto c = complementarity_check(alg, p, q);
            CHECK(c.complementary);
            CHECK(c.assertions_hold);
        }
    }
}

TEST_CASE("sasaki identities") {
    const SeedStream rng(3);
    const BlockAlgebra m2({2});
    const auto rep = sasaki_report(m2, m2.unit(0, 0, 1), rng);
    const auto& u = rep.u;
    CHECK(approx_equal(u.adjoint() * u, m2.from_blocks({diag({0, 1})}), 1e-12));
    CHECK(approx_equal(u * u.adjoint(), m2.from_blocks({diag({1, 0})}), 1e-12));
    CHECK(approx_equal(rep.v * rep.v.adjoint(), m2.from_blocks({line(kPi / 4)}), 1e-12));
    CHECK(approx_equal(rep.v.adjoint() * u * u.adjoint() * rep.v, m2.from_blocks({diag({0, 0.5})}), 1e-12));
    CHECK(rep.err_interval.at(0) < 1e-12);
    CHECK(rep.holds(1e-10));
    CHECK_THROWS_AS(sasaki_report(m2, m2.unit(0, 0, 0), rng), NotNilpotentError);
}

TEST_CASE("trieq battery examples") {
    const SeedStream rng(4);
    const BlockAlgebra a11({1, 1});
    const auto disjoint = trieq_battery(a11, proj(a11, {diag({1}), diag({0})}),
                                        proj(a11, {diag({0}), diag({1})}), rng);
    CHECK(disjoint.exact_agree);
    CHECK(disjoint.exact_value);
    for (const auto& it : disjoint.items) CHECK(it.holds);

    const BlockAlgebra m2({2});
    const auto shared = trieq_battery(m2, proj(m2, {diag({1, 0})}), proj(m2, {diag({0, 1})}), rng);
    CHECK(shared.exact_agree);
    CHECK_FALSE(shared.exact_value);
    for (const auto& it : shared.items) CHECK_FALSE(it.holds);
    REQUIRE(shared.witness);
    CHECK(approx_equal(*shared.witness, m2.unit(0, 0, 1), 1e-12));

    const auto zero = trieq_battery(m2, proj(m2, {diag({1, 0})}), Projection::zero(m2), rng);
    for (const auto& it : zero.items) CHECK(it.holds);
}

TEST_CASE("orbit covers") {
    const SeedStream rng(6);
    const BlockAlgebra a12({1, 2});
    const auto z = proj(a12, {diag({1}), Block::Zero(2, 2)});
    const auto oc = unitary_orbit_cover(a12, z, 0.3, 10, rng);
    CHECK(oc.growth_steps == 0);
    CHECK(oc.reached_cover);

    const BlockAlgebra m3({3});
    SeedStream s = rng.derive("p");
    const auto p = random_projection(m3, s, {1});
    const auto full = unitary_orbit_cover(m3, p, 0.3, 150, rng);
    CHECK(full.reached_cover);
    CHECK(full.monotone);

    const auto tiny = unitary_orbit_cover(m3, p, 1e-12, 1, rng);
    CHECK(approx_equal(tiny.reached, p, 1e-9));
}

// ---------------------------------------------------------------------------
// sampled properties

TEST_CASE("projection lattice laws") {
    const SeedStream root(21);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 30; ++k) {
            SeedStream s = root.derive("laws", static_cast<std::uint64_t>(k));
            const auto p = random_projection(alg, s);
            const auto q = random_projection(alg, s);
            // De Morgan and absorption
            CHECK(approx_equal(proj_join(alg, p, q).perp(), proj_meet(alg, p.perp(), q.perp()), 1e-8));
            CHECK(approx_equal(proj_meet(alg, p, proj_join(alg, p, q)), p, 1e-8));
            CHECK(approx_equal(proj_join(alg, p, proj_meet(alg, p, q)), p, 1e-8));
            // blockwise restriction
            const auto j = proj_join(alg, p, q);
            for (std::size_t i = 0; i < alg.block_count(); ++i) {
                const BlockAlgebra one({alg.dim(i)});
                const auto ji = proj_join(one, proj(one, {p.block(i)}), proj(one, {q.block(i)}));
                CHECK((ji.block(0) - j.block(i)).norm() < 1e-8);
            }
        }
    }
}

TEST_CASE("orthomodular law and ideal distributivity") {
    const SeedStream root(22);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 30; ++k) {
            SeedStream s = root.derive("om", static_cast<std::uint64_t>(k));
            const auto p = random_projection(alg, s);
            const auto q = proj_join(alg, p, random_projection(alg, s));
            CHECK(approx_equal(proj_join(alg, p, proj_meet(alg, p.perp(), q)), q, 1e-8));
            const auto z = random_central_projection(alg, s);
            const auto r = random_projection(alg, s);
            CHECK(approx_equal(proj_meet(alg, z, proj_join(alg, q, r)),
                               proj_join(alg, proj_meet(alg, z, q), proj_meet(alg, z, r)), 1e-8));
        }
    }
}

TEST_CASE("trieq coherence over the pool") {
    const SeedStream root(23);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 10; ++k) {
            SeedStream s = root.derive("trieq", static_cast<std::uint64_t>(k));
            const auto p = random_projection(alg, s);
            const auto q = random_projection(alg, s);
            const auto rep = trieq_battery(alg, p, q, s.derive("battery"), 50);
            CHECK(rep.exact_agree);
            CHECK(rep.sampled_consistent);
            CHECK(rep.witness_found);
        }
    }
}

TEST_CASE("semicomplements: central maximum and non-central join witness") {
    const SeedStream root(24);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 5; ++k) {
            SeedStream s = root.derive("semi", static_cast<std::uint64_t>(k));
            const auto z = random_central_projection(alg, s);
            CHECK(semicomplement_probe(alg, z, s.derive("central")).below_perp);
            const auto p = random_projection(alg, s);
            if (is_central(alg, p)) continue;
            CHECK(semicomplement_probe(alg, p, s.derive("noncentral")).join_witness);
        }
    }
}

TEST_CASE("central projections split the algebra") {
    const SeedStream root(25);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        for (int k = 0; k < 10; ++k) {
            SeedStream s = root.derive("ce", static_cast<std::uint64_t>(k));
            const auto p = random_projection(alg, s);
            const auto a = random_element(alg, s);
            const auto& pm = p.matrix();
            const auto pp = p.perp().matrix();
            const bool splits = (a - pm * a * pm - pp * a * pp).norm() <= 1e-9 * a.norm();
            const bool ideal = approx_equal(quantale_product(alg, Projection::identity(alg), p), p, 1e-9);
            CHECK(splits == is_central(alg, p));
            CHECK(ideal == is_central(alg, p));
        }
    }
}

TEST_CASE("orbit joins never exceed the central cover") {
    const SeedStream root(26);
    for (const auto& dims : kPool) {
        const BlockAlgebra alg(dims);
        SeedStream s = root.derive("orbit");
        const auto p = random_projection(alg, s);
        const auto oc = unitary_orbit_cover(alg, p, 0.3, 40, s.derive("run"));
        CHECK(oc.monotone);
        CHECK(proj_leq(alg, oc.reached, central_cover_proj(alg, p)));
    }
}

TEST_CASE("narrow windows snap to the nearer endpoint") {
    const auto w = SpectralWindow::open_closed(1.0 - 4e-10, 1.0);
    CHECK(w.contains(1.0));
    CHECK_FALSE(w.contains(1.0 - 4e-10));
    CHECK(SpectralWindow::closed(0.5, 0.5).contains(0.5));
    CHECK_FALSE(SpectralWindow::open(0.5, 0.5 + 1e-10).contains(0.5));
}
