#pragma once

// Central covers, direct-product decompositions and type decompositions of
// finite ortholattices.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heredilat/order.hpp"

namespace heredilat::decomp {

using order::BoundedLattice;
using order::Element;
using order::OrthoLattice;

/// Meet of every central element above p. Throws CenterNotClosedError when
/// that meet is not itself central.
Element central_cover(const OrthoLattice& ol, Element p);

/// [0,q] with r ↦ r⊥∧q. `ortho` is set when all four axioms hold, otherwise
/// `failure` names the first violated axiom.
struct IntervalOrtho {
    order::Interval interval;
    std::optional<OrthoLattice> ortho;
    std::optional<order::OrthoViolation> failure;

    bool ok() const { return ortho.has_value(); }
};
IntervalOrtho interval_ortholattice(const OrthoLattice& ol, Element q);

struct ProductTables {
    Element top;                             // ⋁ family
    std::vector<Element> domain;             // elements of [0, top]
    std::vector<std::vector<Element>> forward;  // domain[i] ↦ (s∧p_α)_α
    std::vector<std::vector<Element>> factors;  // elements of each [0,p_α]
    /// Backward map on the full product ∏[0,p_α], tuples in lexicographic
    /// order of the factor element lists.
    std::vector<std::pair<std::vector<Element>, Element>> backward;
};
/// Throws CoverOverlapError when some pair of central covers meets nontrivially,
/// IsoFailure when the two maps fail to be mutually inverse order maps.
ProductTables product_decompose(const OrthoLattice& ol, std::span<const Element> family);

enum class Builtin { distributive, modular, orthomodular, boolean, custom };

/// The interval handed to a type-class predicate: the plain lattice [0,q]
/// and, when the relative orthocomplement is valid, the ortholattice.
struct IntervalView {
    const BoundedLattice& lattice;
    const OrthoLattice* ortho;
};

struct TypeClass {
    std::string name;
    Builtin builtin = Builtin::custom;
    std::function<bool(const IntervalView&)> predicate;

    bool contains(const IntervalView& v) const { return predicate(v); }
};

TypeClass builtin_class(Builtin which);
/// Looks up "distributive", "modular", "orthomodular", "boolean" or
/// "mo2-powers"; std::nullopt otherwise.
std::optional<TypeClass> class_by_name(const std::string& name);
/// Lattices isomorphic to a finite power of `generator` (including the
/// one-element lattice as the empty power).
TypeClass powers_class(std::string name, BoundedLattice generator);

struct DecompositionCertificate {
    std::string class_name;
    Element p = 0;
    Element q_witness = 0;
    bool separative = false;
    std::vector<std::string> checks;
    std::vector<Element> central_elements;  // scanned exhaustively for uniqueness
};

/// Scans q ascending, collects central p = c(q) with [0,q] ∈ L and no
/// r ∈ (0, p⊥] with [0,r] ∈ L. Throws NoCandidateError or
/// MultipleCandidateError (witness: candidate ids).
DecompositionCertificate type_decompose(const OrthoLattice& ol, const TypeClass& cls);

/// Re-verifies a certificate from scratch by brute force, recording the
/// clauses that passed (in order) into `verified` when given.
bool verify_certificate(const OrthoLattice& ol, const TypeClass& cls,
                        const DecompositionCertificate& cert,
                        std::vector<std::string>* verified = nullptr);

}  // namespace heredilat::decomp
