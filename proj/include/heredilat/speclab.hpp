#pragma once

// Spectral-projection inequalities and the constructive separation results
// built on them, checked numerically with explicit δ/μ schedules.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heredilat/matalg/ops.hpp"

namespace heredilat::speclab {

using matalg::BlockAlgebra;
using matalg::BlockMatrix;
using matalg::Projection;
using matalg::SeedStream;
using matalg::Vector;

enum class LemmaId { sum_window, chain_norm, c1e, one_minus_c, lem2, lem3, pythag };

inline constexpr std::array<LemmaId, 7> kAllLemmas{LemmaId::sum_window, LemmaId::chain_norm, LemmaId::c1e,
                                                   LemmaId::one_minus_c, LemmaId::lem2, LemmaId::lem3,
                                                   LemmaId::pythag};

std::string_view to_string(LemmaId id);
/// Accepts the names above plus the hyphenated forms "c1-e" and "1-c".
std::optional<LemmaId> lemma_from_string(std::string_view s);

/// Throws DomainError unless ε > 0 and λ > 0. Only c1e, one_minus_c, lem2 and
/// lem3 carry a δ; the others throw DomainError.
double delta_for(LemmaId lemma, double eps, double lambda);

/// Upper bounds read lhs ≤ bound, lower bounds lhs ≥ bound; margin is signed
/// so that margin ≥ 0 means the inequality holds either way.
enum class BoundKind { upper, lower };

struct MarginReport {
    LemmaId lemma = LemmaId::pythag;
    BoundKind kind = BoundKind::upper;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double eps = 0.0;
    double lambda = 0.0;  // NaN-free; 0 when the lemma has no λ
    double delta = 0.0;
    std::string inputs_digest;

    bool pass(double tol) const { return margin >= -tol; }
};

MarginReport make_margin(LemmaId lemma, BoundKind kind, double lhs, double bound);

/// A vector of the Hilbert space ⊕ℂ^{n_i}, one component per block.
using HVector = std::vector<Vector>;
double hnorm(const HVector& v);
HVector apply(const BlockMatrix& m, const HVector& v);

/// Operands for verify_lemma. Which fields are read depends on the lemma:
///   sum_window: a, b        chain_norm: ps, v
///   c1e, one_minus_c, lem2: b, c, q (c ≤ q)
///   lem3: b, c, p, q (b ≤ p, c ≤ q)      pythag: p, q
struct LemmaInputs {
    std::optional<BlockMatrix> a, b, c;
    std::optional<Projection> p, q;
    std::vector<Projection> ps;
    HVector v;
};

/// Computes both sides with spectral projections and operator norms. Throws
/// PreconditionError naming the violated hypothesis.
MarginReport verify_lemma(LemmaId lemma, const BlockAlgebra& alg, const LemmaInputs& in, double eps);

/// Draws operands satisfying the preconditions of `lemma`.
LemmaInputs draw_inputs(LemmaId lemma, const BlockAlgebra& alg, SeedStream& rng, double eps);

/// The two elementary inequalities (spectral window of a sum, chain of
/// near-identities) evaluated on the same operand set.
std::array<MarginReport, 2> chain_and_sum_checks(const BlockAlgebra& alg, const LemmaInputs& in, double eps);

struct PnearqReport {
    double norm_sq = 0.0;       // ‖pq⊥‖²
    double below_gap = 0.0;     // λ_min(λp − pq⊥p)
    double above_gap = 0.0;     // λ_min(pqp − (1−λ)p)
    bool norm_form = false;
    bool below_form = false;
    bool above_form = false;
    bool agree() const { return norm_form == below_form && below_form == above_form; }
};
/// Throws DomainError unless λ ∈ [0,1]; std::logic_error if the three forms
/// disagree beyond tolerance.
PnearqReport pnearq_check(const BlockAlgebra& alg, const Projection& p, const Projection& q, double lambda,
                          double tol = 1e-9);

struct SepOptions {
    /// λ must stay below 1 − gap.
    double gap = 1e-6;
    /// Unit of the ambient corner; the full identity when absent.
    std::optional<Projection> unit;
};

struct SepResult {
    Projection p_d;
    MarginReport bound_b;  // ‖p_B p_D‖ ≤ ε
    MarginReport bound_c;  // ‖p_C p_D‖² ≥ 1 − λ − ε
    double lambda = 0.0;
    double mu = 0.0;
    double delta = 0.0;
    int halvings = 0;
};

/// Builds p_D with ‖p_B p_D‖ ≤ ε and ‖p_C p_D‖² ≥ 1 − λ − ε. Throws
/// PreconditionError for zero inputs, OverlapTooLargeError when λ ≥ 1 − gap and
/// ConstructionFailure when the certified bounds do not hold.
SepResult septhm_construct(const BlockAlgebra& alg, const Projection& p_b, const Projection& p_c, double eps,
                           const SepOptions& opt = {});

/// Nonzero p_D ≤ p_C with ‖p_B p_D‖ < ε. Throws NotStrictlyContainedError
/// unless p_B < p_C.
Projection epsilon_ssc_witness(const BlockAlgebra& alg, const Projection& p_b, const Projection& p_c,
                               double eps);

}  // namespace heredilat::speclab
