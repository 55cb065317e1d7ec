#pragma once

// Finite posets, bounded lattices and ortholattices, together with the
// element-level and lattice-level predicates used throughout the project.
// Every predicate is evaluated by exhaustive quantification; lattices here
// are small (tens of elements), so cubic scans are the norm.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heredilat/errors.hpp"

namespace heredilat::order {

using Element = std::size_t;

/// Outcome of an exhaustive check. When `holds` is false, `witness` lists the
/// elements that refute it (meaning depends on the predicate).
struct Verdict {
    bool holds = true;
    std::vector<Element> witness;

    explicit operator bool() const noexcept { return holds; }

    static Verdict yes() { return {}; }
    static Verdict no(std::vector<Element> w) { return {false, std::move(w)}; }
};

class FinitePoset {
public:
    /// Reflexive-transitive closure of `cover` (pairs are (lower, upper)).
    /// Throws CycleError on antisymmetry violations, NoBoundsError when 0 or 1
    /// is missing, std::out_of_range on bad ids.
    static FinitePoset build(std::size_t n,
                             std::span<const std::pair<Element, Element>> cover,
                             std::vector<std::string> names = {});

    /// From an explicit order matrix (row-major, n*n). Same checks as build().
    static FinitePoset from_matrix(std::size_t n, std::vector<char> leq,
                                   std::vector<std::string> names = {});

    std::size_t size() const noexcept { return n_; }
    bool leq(Element p, Element q) const { return leq_[p * n_ + q] != 0; }
    bool lt(Element p, Element q) const { return p != q && leq(p, q); }
    Element bottom() const noexcept { return bottom_; }
    Element top() const noexcept { return top_; }

    const std::vector<std::string>& names() const noexcept { return names_; }
    std::string name(Element p) const;

    /// Covering pairs (p, q) with p < q and nothing strictly between.
    std::vector<std::pair<Element, Element>> covers() const;

private:
    FinitePoset(std::size_t n, std::vector<char> leq, std::vector<std::string> names);

    std::size_t n_ = 0;
    std::vector<char> leq_;
    std::vector<std::string> names_;
    Element bottom_ = 0;
    Element top_ = 0;
};

class BoundedLattice {
public:
    /// Throws NotALatticeError (witness pair) when some pair lacks a unique
    /// least upper or greatest lower bound.
    static BoundedLattice from_poset(FinitePoset poset);

    const FinitePoset& poset() const noexcept { return poset_; }
    std::size_t size() const noexcept { return poset_.size(); }
    bool leq(Element p, Element q) const { return poset_.leq(p, q); }
    bool lt(Element p, Element q) const { return poset_.lt(p, q); }
    Element bottom() const noexcept { return poset_.bottom(); }
    Element top() const noexcept { return poset_.top(); }
    std::string name(Element p) const { return poset_.name(p); }

    Element meet(Element p, Element q) const { return meet_[p * size() + q]; }
    Element join(Element p, Element q) const { return join_[p * size() + q]; }

    /// meet_of of the empty set is the top, join_of of the empty set the bottom.
    Element meet_of(std::span<const Element> s) const;
    Element join_of(std::span<const Element> s) const;

    /// Element id by display name; std::out_of_range when absent.
    Element find(const std::string& name) const;

    bool operator==(const BoundedLattice& other) const;

private:
    explicit BoundedLattice(FinitePoset poset);

    FinitePoset poset_;
    std::vector<Element> meet_;
    std::vector<Element> join_;
};

class OrthoLattice {
public:
    /// Verifies involution, antitonicity, p∧p⊥=0 and p∨p⊥=1 exhaustively.
    /// Throws OrthoAxiomError naming the axiom and carrying the witness.
    static OrthoLattice make(BoundedLattice lattice, std::vector<Element> ortho);

    const BoundedLattice& lattice() const noexcept { return lattice_; }
    std::size_t size() const noexcept { return lattice_.size(); }
    Element perp(Element p) const { return ortho_[p]; }
    const std::vector<Element>& ortho_map() const noexcept { return ortho_; }

    Element meet(Element p, Element q) const { return lattice_.meet(p, q); }
    Element join(Element p, Element q) const { return lattice_.join(p, q); }
    bool leq(Element p, Element q) const { return lattice_.leq(p, q); }
    Element bottom() const noexcept { return lattice_.bottom(); }
    Element top() const noexcept { return lattice_.top(); }
    std::string name(Element p) const { return lattice_.name(p); }

    bool operator==(const OrthoLattice& other) const = default;

private:
    OrthoLattice(BoundedLattice lattice, std::vector<Element> ortho)
        : lattice_(std::move(lattice)), ortho_(std::move(ortho)) {}

    BoundedLattice lattice_;
    std::vector<Element> ortho_;
};

/// First violated ortholattice axiom for a candidate map, if any. The axiom
/// names are "complement_meet", "complement_join", "involution", "antitone".
struct OrthoViolation {
    std::string axiom;
    std::vector<Element> witness;
};
std::optional<OrthoViolation> check_ortho_axioms(const BoundedLattice& lat,
                                                 std::span<const Element> ortho);

/// Every orthocomplementation the lattice admits (backtracking search).
std::vector<std::vector<Element>> orthocomplementations(const BoundedLattice& lat);

/// Cartesian product, elements ordered (i, j) -> i * |b| + j and named "(x,y)".
BoundedLattice product(const BoundedLattice& a, const BoundedLattice& b);
OrthoLattice product(const OrthoLattice& a, const OrthoLattice& b);

/// The sublattice [lo, hi], with the embedding into the parent.
struct Interval {
    BoundedLattice lattice;
    std::vector<Element> embedding;
};
Interval interval(const BoundedLattice& lat, Element lo, Element hi);

/// Order isomorphism search; returns the map a -> b when one exists.
std::optional<std::vector<Element>> find_isomorphism(const BoundedLattice& a,
                                                     const BoundedLattice& b);

// ---------------------------------------------------------------------------
// element predicates

bool is_atom(const BoundedLattice& lat, Element p);
bool is_coatom(const BoundedLattice& lat, Element p);
Verdict wedge_irreducible(const BoundedLattice& lat, Element p);
std::vector<Element> complements(const BoundedLattice& lat, Element p);
Verdict vee_distributive(const BoundedLattice& lat, Element p);
Verdict wedge_distributive(const BoundedLattice& lat, Element p);

/// Complements c for which s ↦ (s∧p, s∧c) and (x, y) ↦ x∨y are mutually
/// inverse maps between the lattice and [0,p]×[0,c].
std::vector<Element> central_complements(const BoundedLattice& lat, Element p);
bool is_central(const BoundedLattice& lat, Element p);
std::vector<Element> center(const BoundedLattice& lat);

/// p has a ∨-semicomplement r with q ≤ r < 1.
bool vee_separated(const BoundedLattice& lat, Element p, Element q);
/// p has a nonzero ∧-semicomplement r ≤ q.
bool wedge_separated(const BoundedLattice& lat, Element p, Element q);

Verdict subfit(const BoundedLattice& lat, Element p);
Verdict ssc(const BoundedLattice& lat, Element p);
Verdict separative(const BoundedLattice& lat, Element p);

struct Semicomplements {
    std::vector<Element> set;
    std::optional<Element> pseudocomplement;
};
Semicomplements semicomplements(const BoundedLattice& lat, Element q);

/// p∧D = p∧(q∨D) for every D. Witness: the offending D.
Verdict del(const BoundedLattice& lat, Element p, Element q);

struct ElementProfile {
    bool atom = false;
    bool coatom = false;
    Verdict wedge_irreducible;
    bool complemented = false;
    Verdict vee_distributive;
    Verdict wedge_distributive;
    bool central = false;
    Verdict subfit;
    Verdict ssc;
    Verdict separative;
    std::optional<Element> pseudocomplement;
    std::vector<Element> complements;
    std::vector<Element> central_complements;
};
ElementProfile element_profile(const BoundedLattice& lat, Element p);
inline ElementProfile element_profile(const OrthoLattice& ol, Element p) {
    return element_profile(ol.lattice(), p);
}

struct LatticeProfile {
    Verdict distributive;
    Verdict modular;
    std::optional<Verdict> orthomodular;
    Verdict atomistic;
    Verdict coatomistic;
    Verdict subfit;
    Verdict ssc;
    Verdict separative;
};
LatticeProfile lattice_profile(const BoundedLattice& lat);
LatticeProfile lattice_profile(const OrthoLattice& ol);

/// p ≤ q ⟹ p∨(p⊥∧q) = q. Witness (p, q).
Verdict orthomodular(const OrthoLattice& ol);

// ---------------------------------------------------------------------------
// ortholattice relations

struct OrthoRelations {
    bool commutes = false;  // p = (p∧q)∨(p∧q⊥)
    bool elkan = false;     // p∨q = (p∧q⊥)∨q
};
OrthoRelations ortho_relations(const OrthoLattice& ol, Element p, Element q);

/// The five equivalent characterizations of a central element in a separative
/// ortholattice. `agree` is only asserted (advisory=false) when `separative`.
struct SoReport {
    Element q = 0;
    bool separative = false;
    bool central = false;
    bool vee_distributive = false;
    bool commutes_with_all = false;
    bool elkan_with_all = false;
    bool pseudocomplement_of_perp = false;

    bool agree() const {
        return central == vee_distributive && central == commutes_with_all &&
               central == elkan_with_all && central == pseudocomplement_of_perp;
    }
    bool advisory() const { return !separative; }
};
SoReport prop_so_report(const OrthoLattice& ol, Element q);

struct DenseSublatticeReport {
    Verdict join_dense;
    Verdict meet_closed;
    Verdict all_ssc;
    bool premises() const { return join_dense && meet_closed && all_ssc; }
    /// Only meaningful when premises() holds.
    bool conclusion_separative = false;
};
/// Throws PropositionViolation when the premises hold but some subset element
/// fails to be separative in the lattice or in the subset.
DenseSublatticeReport dense_sublattice_check(const BoundedLattice& lat,
                                             std::span<const Element> subset);

// ---------------------------------------------------------------------------
// fixtures

/// Built-in lattices by name: B4, M3, N5, MO2, O6, MO2xB4.
std::vector<std::string> fixture_names();
BoundedLattice fixture_lattice(const std::string& name);
/// std::nullopt for fixtures that carry no orthocomplement (M3, N5).
std::optional<OrthoLattice> fixture_ortholattice(const std::string& name);

}  // namespace heredilat::order
