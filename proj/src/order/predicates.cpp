#include <algorithm>

#include "heredilat/order.hpp"

namespace heredilat::order {

bool is_atom(const BoundedLattice& lat, Element p) {
    if (p == lat.bottom()) return false;
    for (Element q = 0; q < lat.size(); ++q)
        if (q != lat.bottom() && lat.lt(q, p)) return false;
    return true;
}

bool is_coatom(const BoundedLattice& lat, Element p) {
    if (p == lat.top()) return false;
    for (Element q = 0; q < lat.size(); ++q)
        if (q != lat.top() && lat.lt(p, q)) return false;
    return true;
}

Verdict wedge_irreducible(const BoundedLattice& lat, Element p) {
    const std::size_t n = lat.size();
    for (Element q = 0; q < n; ++q)
        for (Element r = q; r < n; ++r)
            if (lat.meet(q, r) == p && q != p && r != p) return Verdict::no({q, r});
    return Verdict::yes();
}

std::vector<Element> complements(const BoundedLattice& lat, Element p) {
    std::vector<Element> out;
    for (Element c = 0; c < lat.size(); ++c)
        if (lat.meet(p, c) == lat.bottom() && lat.join(p, c) == lat.top()) out.push_back(c);
    return out;
}

Verdict vee_distributive(const BoundedLattice& lat, Element p) {
    const std::size_t n = lat.size();
    for (Element q = 0; q < n; ++q)
        for (Element r = q + 1; r < n; ++r)
            if (lat.meet(p, lat.join(q, r)) != lat.join(lat.meet(p, q), lat.meet(p, r)))
                return Verdict::no({q, r});
    return Verdict::yes();
}

Verdict wedge_distributive(const BoundedLattice& lat, Element p) {
    const std::size_t n = lat.size();
    for (Element q = 0; q < n; ++q)
        for (Element r = q + 1; r < n; ++r)
            if (lat.join(p, lat.meet(q, r)) != lat.meet(lat.join(p, q), lat.join(p, r)))
                return Verdict::no({q, r});
    return Verdict::yes();
}

namespace {

// s ↦ (s∧p, s∧c) and (x, y) ↦ x∨y are mutually inverse.
bool splits(const BoundedLattice& lat, Element p, Element c) {
    const std::size_t n = lat.size();
    for (Element s = 0; s < n; ++s)
        if (lat.join(lat.meet(s, p), lat.meet(s, c)) != s) return false;
    for (Element x = 0; x < n; ++x) {
        if (!lat.leq(x, p)) continue;
        for (Element y = 0; y < n; ++y) {
            if (!lat.leq(y, c)) continue;
            const Element j = lat.join(x, y);
            if (lat.meet(j, p) != x || lat.meet(j, c) != y) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Element> central_complements(const BoundedLattice& lat, Element p) {
    std::vector<Element> out;
    for (Element c : complements(lat, p))
        if (splits(lat, p, c)) out.push_back(c);
    return out;
}

bool is_central(const BoundedLattice& lat, Element p) { return !central_complements(lat, p).empty(); }

std::vector<Element> center(const BoundedLattice& lat) {
    std::vector<Element> out;
    for (Element p = 0; p < lat.size(); ++p)
        if (is_central(lat, p)) out.push_back(p);
    return out;
}

bool vee_separated(const BoundedLattice& lat, Element p, Element q) {
    for (Element r = 0; r < lat.size(); ++r)
        if (r != lat.top() && lat.leq(q, r) && lat.join(p, r) == lat.top()) return true;
    return false;
}

bool wedge_separated(const BoundedLattice& lat, Element p, Element q) {
    for (Element r = 0; r < lat.size(); ++r)
        if (r != lat.bottom() && lat.leq(r, q) && lat.meet(p, r) == lat.bottom()) return true;
    return false;
}

Verdict subfit(const BoundedLattice& lat, Element p) {
    for (Element q = 0; q < lat.size(); ++q)
        if (!lat.leq(p, q) && !vee_separated(lat, p, q)) return Verdict::no({q});
    return Verdict::yes();
}

Verdict ssc(const BoundedLattice& lat, Element p) {
    for (Element q = 0; q < lat.size(); ++q)
        if (lat.lt(p, q) && !wedge_separated(lat, p, q)) return Verdict::no({q});
    return Verdict::yes();
}

Verdict separative(const BoundedLattice& lat, Element p) {
    for (Element q = 0; q < lat.size(); ++q)
        if (!lat.leq(q, p) && !wedge_separated(lat, p, q)) return Verdict::no({q});
    return Verdict::yes();
}

Semicomplements semicomplements(const BoundedLattice& lat, Element q) {
    Semicomplements out;
    for (Element r = 0; r < lat.size(); ++r)
        if (lat.meet(q, r) == lat.bottom()) out.set.push_back(r);
    for (Element r : out.set) {
        const bool maximum = std::ranges::all_of(out.set, [&](Element s) { return lat.leq(s, r); });
        if (maximum) {
            out.pseudocomplement = r;
            break;
        }
    }
    return out;
}

Verdict del(const BoundedLattice& lat, Element p, Element q) {
    for (Element d = 0; d < lat.size(); ++d)
        if (lat.meet(p, d) != lat.meet(p, lat.join(q, d))) return Verdict::no({d});
    return Verdict::yes();
}

ElementProfile element_profile(const BoundedLattice& lat, Element p) {
    ElementProfile prof;
    prof.atom = is_atom(lat, p);
    prof.coatom = is_coatom(lat, p);
    prof.wedge_irreducible = wedge_irreducible(lat, p);
    prof.complements = complements(lat, p);
    prof.complemented = !prof.complements.empty();
    prof.vee_distributive = vee_distributive(lat, p);
    prof.wedge_distributive = wedge_distributive(lat, p);
    prof.central_complements = central_complements(lat, p);
    prof.central = !prof.central_complements.empty();
    prof.subfit = subfit(lat, p);
    prof.ssc = ssc(lat, p);
    prof.separative = separative(lat, p);
    prof.pseudocomplement = semicomplements(lat, p).pseudocomplement;
    return prof;
}

namespace {

template <class Pred>
Verdict every_element(const BoundedLattice& lat, Pred pred) {
    for (Element p = 0; p < lat.size(); ++p) {
        Verdict v = pred(lat, p);
        if (!v) {
            v.witness.insert(v.witness.begin(), p);
            return v;
        }
    }
    return Verdict::yes();
}

Verdict distributive(const BoundedLattice& lat) {
    return every_element(lat, [](const BoundedLattice& l, Element p) { return vee_distributive(l, p); });
}

Verdict modular(const BoundedLattice& lat) {
    const std::size_t n = lat.size();
    for (Element p = 0; p < n; ++p)
        for (Element r = 0; r < n; ++r) {
            if (!lat.leq(p, r)) continue;
            for (Element q = 0; q < n; ++q)
                if (lat.join(p, lat.meet(q, r)) != lat.meet(lat.join(p, q), r))
                    return Verdict::no({p, q, r});
        }
    return Verdict::yes();
}

// Every element is the join of the `dense` elements below it.
Verdict join_dense_in(const BoundedLattice& lat, const std::vector<Element>& dense) {
    for (Element p = 0; p < lat.size(); ++p) {
        Element acc = lat.bottom();
        for (Element d : dense)
            if (lat.leq(d, p)) acc = lat.join(acc, d);
        if (acc != p) return Verdict::no({p});
    }
    return Verdict::yes();
}

Verdict meet_dense_in(const BoundedLattice& lat, const std::vector<Element>& dense) {
    for (Element p = 0; p < lat.size(); ++p) {
        Element acc = lat.top();
        for (Element d : dense)
            if (lat.leq(p, d)) acc = lat.meet(acc, d);
        if (acc != p) return Verdict::no({p});
    }
    return Verdict::yes();
}

}  // namespace

LatticeProfile lattice_profile(const BoundedLattice& lat) {
    LatticeProfile prof;
    prof.distributive = distributive(lat);
    prof.modular = modular(lat);
    std::vector<Element> atoms, coatoms;
    for (Element p = 0; p < lat.size(); ++p) {
        if (is_atom(lat, p)) atoms.push_back(p);
        if (is_coatom(lat, p)) coatoms.push_back(p);
    }
    prof.atomistic = join_dense_in(lat, atoms);
    prof.coatomistic = meet_dense_in(lat, coatoms);
    prof.subfit = every_element(lat, [](const BoundedLattice& l, Element p) { return subfit(l, p); });
    prof.ssc = every_element(lat, [](const BoundedLattice& l, Element p) { return ssc(l, p); });
    prof.separative =
        every_element(lat, [](const BoundedLattice& l, Element p) { return separative(l, p); });
    return prof;
}

Verdict orthomodular(const OrthoLattice& ol) {
    const std::size_t n = ol.size();
    for (Element p = 0; p < n; ++p)
        for (Element q = 0; q < n; ++q)
            if (ol.leq(p, q) && ol.join(p, ol.meet(ol.perp(p), q)) != q) return Verdict::no({p, q});
    return Verdict::yes();
}

LatticeProfile lattice_profile(const OrthoLattice& ol) {
    LatticeProfile prof = lattice_profile(ol.lattice());
    prof.orthomodular = orthomodular(ol);
    return prof;
}

OrthoRelations ortho_relations(const OrthoLattice& ol, Element p, Element q) {
    const Element qp = ol.perp(q);
    return {
        .commutes = p == ol.join(ol.meet(p, q), ol.meet(p, qp)),
        .elkan = ol.join(p, q) == ol.join(ol.meet(p, qp), q),
    };
}

SoReport prop_so_report(const OrthoLattice& ol, Element q) {
    const BoundedLattice& lat = ol.lattice();
    SoReport rep;
    rep.q = q;
    rep.separative = static_cast<bool>(lattice_profile(lat).separative);
    rep.central = is_central(lat, q);
    rep.vee_distributive = static_cast<bool>(vee_distributive(lat, q));
    rep.commutes_with_all = true;
    rep.elkan_with_all = true;
    for (Element p = 0; p < ol.size(); ++p) {
        const auto rel = ortho_relations(ol, p, q);
        rep.commutes_with_all = rep.commutes_with_all && rel.commutes;
        rep.elkan_with_all = rep.elkan_with_all && rel.elkan;
    }
    const auto semi = semicomplements(lat, ol.perp(q));
    rep.pseudocomplement_of_perp = semi.pseudocomplement == q;
    return rep;
}

DenseSublatticeReport dense_sublattice_check(const BoundedLattice& lat,
                                             std::span<const Element> subset) {
    std::vector<Element> sub(subset.begin(), subset.end());
    std::ranges::sort(sub);
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    for (Element e : sub)
        if (e >= lat.size()) throw std::out_of_range("subset element out of range");
    auto in_sub = [&](Element e) { return std::ranges::binary_search(sub, e); };

    DenseSublatticeReport rep;
    rep.join_dense = join_dense_in(lat, sub);
    rep.meet_closed = Verdict::yes();
    for (Element a : sub) {
        for (Element b : sub)
            if (!in_sub(lat.meet(a, b))) {
                rep.meet_closed = Verdict::no({a, b});
                break;
            }
        if (!rep.meet_closed) break;
    }
    rep.all_ssc = Verdict::yes();
    for (Element a : sub)
        if (!ssc(lat, a)) {
            rep.all_ssc = Verdict::no({a});
            break;
        }
    if (!rep.premises()) return rep;

    // Conclusion: every subset element is separative in the lattice and in the
    // subset taken as a lattice of its own (meets agree, joins are the subset's).
    const Element sub_bottom = lat.meet_of(sub);
    for (Element q : sub) {
        if (!separative(lat, q))
            throw PropositionViolation("dense meet-sublattice element " + lat.name(q) +
                                           " is not separative in the lattice",
                                       {q});
        for (Element p : sub) {
            if (lat.leq(p, q)) continue;
            bool found = false;
            for (Element r : sub)
                if (r != sub_bottom && lat.leq(r, p) && lat.meet(q, r) == sub_bottom) {
                    found = true;
                    break;
                }
            if (!found)
                throw PropositionViolation("dense meet-sublattice element " + lat.name(q) +
                                               " is not separative in the sublattice",
                                           {q, p});
        }
    }
    rep.conclusion_separative = true;
    return rep;
}

}  // namespace heredilat::order
