#pragma once

// Projection-lattice operations on a block algebra. Joins and meets are
// computed from orthonormal range bases, so every result is an exact
// projection up to rounding and tolerances do not accumulate.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heredilat/matalg/algebra.hpp"

namespace heredilat::matalg {

/// Orthonormal basis of the range of each block (singular values above the
/// rank threshold).
std::vector<Block> range_bases(const BlockMatrix& m);
Projection support(const BlockAlgebra& alg, const BlockMatrix& m);

/// ‖p(1−q)‖ ≤ tol.
bool proj_leq(const BlockAlgebra& alg, const Projection& p, const Projection& q);
Projection proj_join(const BlockAlgebra& alg, const Projection& p, const Projection& q);
Projection proj_meet(const BlockAlgebra& alg, const Projection& p, const Projection& q);

/// Identity on every block where p is nonzero.
Projection central_cover_proj(const BlockAlgebra& alg, const Projection& p);
bool is_central(const BlockAlgebra& alg, const Projection& p);

struct Relations {
    bool orthogonal = false;           // ‖pq‖ ≤ tol
    bool strongly_orthogonal = false;  // c(p)∧c(q) = 0
    bool meet_zero = false;
    /// Largest ‖paq‖ seen over sampled unit-norm a (numerical cross-check).
    double sampled_paq = 0.0;
    std::optional<BlockMatrix> witness;  // a with paq ≠ 0 when not strongly orthogonal
};
/// Throws std::logic_error if the implication chain ▽ ⇒ ⊥ ⇒ meet-zero or the
/// sampled cross-check is contradicted.
Relations relations(const BlockAlgebra& alg, const Projection& p, const Projection& q,
                    SeedStream rng, int draws = 200);

struct Annihilators {
    Projection star_annihilator;  // 1 − p
    Projection annihilator_ideal;  // 1 − c(p)
};
/// Cross-checks both against sampled elements (throws std::logic_error on a
/// contradiction).
Annihilators annihilators(const BlockAlgebra& alg, const Projection& p, SeedStream rng,
                          int draws = 50);

/// p ∧ c(q).
Projection quantale_product(const BlockAlgebra& alg, const Projection& p, const Projection& q);

/// support(a*a) ∨ support(aa*).
Projection hereditary_generated(const BlockAlgebra& alg, const BlockMatrix& a);

struct CommutativityProfile {
    std::vector<int> block_ranks;
    bool is_commutative = false;
    /// When not commutative: b, c, d inside the corner with
    /// b∧(c∨d) ≠ (b∧c)∨(b∧d).
    struct Witness {
        Projection b, c, d;
        Projection lhs, rhs;
    };
    std::optional<Witness> witness;
};
CommutativityProfile commutativity_profile(const BlockAlgebra& alg, const Projection& p);

struct Complementarity {
    bool complementary = false;
    double norm_pq = 0.0;
    double norm_perp = 0.0;  // ‖p⊥q⊥‖
    /// When complementary: ‖pq‖ = ‖p⊥q⊥‖ < 1, and q = p⊥ if p is central.
    bool assertions_hold = true;
};
Complementarity complementarity_check(const BlockAlgebra& alg, const Projection& p,
                                      const Projection& q);

// ---------------------------------------------------------------------------
// spectral calculus

struct SpectralWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    /// Membership after snapping x to an endpoint within `snap`.
    bool contains(double x, double snap = kTol.snap) const;

    static SpectralWindow closed(double lo, double hi) { return {lo, hi, true, true}; }
    static SpectralWindow open_closed(double lo, double hi) { return {lo, hi, false, true}; }
    static SpectralWindow closed_open(double lo, double hi) { return {lo, hi, true, false}; }
    static SpectralWindow open(double lo, double hi) { return {lo, hi, false, false}; }
};

/// Throws NotHermitianError when ‖h−h*‖ > tol.
void require_hermitian(const BlockMatrix& h, double tol = 1e-9);
Projection spectral_projection(const BlockAlgebra& alg, const BlockMatrix& h,
                               const SpectralWindow& w);
/// f(h) by eigendecomposition of each block.
BlockMatrix functional_calculus(const BlockMatrix& h, const std::function<double(double)>& f);
/// exp(i·t·h) for Hermitian h.
BlockMatrix exp_i(const BlockMatrix& h, double t);
BlockMatrix sqrt_psd(const BlockMatrix& h);

struct Polar {
    BlockMatrix u;        // partial isometry
    BlockMatrix modulus;  // |a| = (a*a)^{1/2}
};
/// Throws std::logic_error when a = u|a|, u*u = supp(a*a) or uu* = supp(aa*)
/// fails beyond tolerance.
Polar polar_decompose(const BlockAlgebra& alg, const BlockMatrix& a);
inline BlockMatrix polar_partial_isometry(const BlockAlgebra& alg, const BlockMatrix& a) {
    return polar_decompose(alg, a).u;
}

// ---------------------------------------------------------------------------
// theorem batteries

struct SasakiReport {
    BlockMatrix u, v;
    double err_half_identity = 0.0;   // ‖v*uu*v − ½u*u‖
    double err_v_square = 0.0;        // ‖v² − v/√2‖
    double err_vv_star = 0.0;         // ‖vv*uu*vv* − ½vv*‖
    std::vector<double> err_interval;  // ‖u*u∧(p∨uu*) − v*pv‖ per sampled p ≤ vv*
    double err_contain_2 = 0.0;       // ‖u*u(1 − (vv*∨uu*))‖
    double err_contain_3 = 0.0;       // ‖uu*(1 − (vv*∨u*u))‖

    bool holds(double tol) const;
};
/// Throws NotNilpotentError when ‖a²‖ > tol·‖a‖².
SasakiReport sasaki_report(const BlockAlgebra& alg, const BlockMatrix& a, SeedStream rng,
                           int samples = 5, double tol = 1e-9);

struct TrieqItem {
    std::string id;      // "1", "2", "3", "5", "6", "7", "10", "13"
    std::string label;
    bool sampled = false;
    bool holds = true;   // for sampled items: no counterexample found
    std::string witness;
};

struct TrieqReport {
    std::vector<TrieqItem> items;
    bool exact_value = true;     // common value of the exact items when they agree
    bool exact_agree = true;
    bool sampled_consistent = true;  // no sampled item contradicts a true exact verdict
    bool witness_found = true;   // exact-false cases: constructive a with aa*∈A_p, a*a∈A_q
    std::optional<BlockMatrix> witness;  // that a
    int sampled_witness_hits = 0;  // sampled items that found a counterexample
};
TrieqReport trieq_battery(const BlockAlgebra& alg, const Projection& p, const Projection& q,
                          SeedStream rng, int draws = 200);

struct OrbitCover {
    Projection reached;
    int iterations = 0;
    int growth_steps = 0;
    bool reached_cover = false;
    bool monotone = true;  // every iterate ≤ c(p) and ≥ the previous one
};
/// Joins upu* for u = exp(iεh), h Hermitian with ‖h‖ = 1, until the iterate
/// fills c(p) or max_iters draws are spent.
OrbitCover unitary_orbit_cover(const BlockAlgebra& alg, const Projection& p, double eps,
                               int max_iters, SeedStream rng);

struct SemicomplementProbe {
    /// central p: every sampled semicomplement lies under 1−p.
    bool below_perp = true;
    /// non-central p: two semicomplements with non-semicomplement join.
    bool join_witness = false;
    int draws_used = 0;
};
SemicomplementProbe semicomplement_probe(const BlockAlgebra& alg, const Projection& p,
                                         SeedStream rng, int draws = 200);

}  // namespace heredilat::matalg
