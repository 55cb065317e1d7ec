#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "heredilat/decomp.hpp"

namespace heredilat::decomp {

Element central_cover(const OrthoLattice& ol, Element p) {
    const BoundedLattice& lat = ol.lattice();
    std::vector<Element> above;
    for (Element z : order::center(lat))
        if (lat.leq(p, z)) above.push_back(z);
    const Element c = lat.meet_of(above);
    if (!order::is_central(lat, c))
        throw CenterNotClosedError("meet of central elements above " + lat.name(p) +
                                       " is not central",
                                   above);
    return c;
}

IntervalOrtho interval_ortholattice(const OrthoLattice& ol, Element q) {
    order::Interval iv = order::interval(ol.lattice(), ol.bottom(), q);
    const std::size_t m = iv.embedding.size();
    std::vector<Element> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Element image = ol.meet(ol.perp(iv.embedding[i]), q);
        rel[i] = static_cast<Element>(
            std::ranges::find(iv.embedding, image) - iv.embedding.begin());
    }
    IntervalOrtho out{std::move(iv), std::nullopt, std::nullopt};
    if (auto bad = order::check_ortho_axioms(out.interval.lattice, rel)) {
        for (Element& w : bad->witness) w = out.interval.embedding[w];
        out.failure = std::move(*bad);
    } else {
        out.ortho = OrthoLattice::make(out.interval.lattice, std::move(rel));
    }
    return out;
}

ProductTables product_decompose(const OrthoLattice& ol, std::span<const Element> family) {
    const BoundedLattice& lat = ol.lattice();
    std::vector<Element> covers;
    for (Element p : family) covers.push_back(central_cover(ol, p));
    for (std::size_t a = 0; a < covers.size(); ++a)
        for (std::size_t b = a + 1; b < covers.size(); ++b)
            if (lat.meet(covers[a], covers[b]) != lat.bottom())
                throw CoverOverlapError("central covers of " + lat.name(family[a]) + " and " +
                                            lat.name(family[b]) + " overlap",
                                        {family[a], family[b]});

    ProductTables t;
    t.top = lat.join_of(family);
    for (Element s = 0; s < lat.size(); ++s)
        if (lat.leq(s, t.top)) t.domain.push_back(s);
    for (Element p : family) {
        std::vector<Element> f;
        for (Element s = 0; s < lat.size(); ++s)
            if (lat.leq(s, p)) f.push_back(s);
        t.factors.push_back(std::move(f));
    }
    for (Element s : t.domain) {
        std::vector<Element> tuple;
        for (Element p : family) tuple.push_back(lat.meet(s, p));
        t.forward.push_back(std::move(tuple));
    }

    // enumerate ∏[0,p_α] as an odometer
    std::vector<std::size_t> idx(family.size(), 0);
    for (bool more = true; more;) {
        std::vector<Element> tuple;
        for (std::size_t a = 0; a < idx.size(); ++a) tuple.push_back(t.factors[a][idx[a]]);
        t.backward.emplace_back(tuple, lat.join_of(tuple));
        more = false;
        for (std::size_t a = idx.size(); a-- > 0;) {
            if (++idx[a] < t.factors[a].size()) {
                more = true;
                break;
            }
            idx[a] = 0;
        }
    }

    auto fail = [&](const std::string& what, std::vector<Element> w) {
        throw IsoFailure("product decomposition " + what, std::move(w));
    };
    if (t.backward.size() != t.domain.size())
        fail("has mismatched cardinalities", {});
    std::map<std::vector<Element>, Element> back;
    for (const auto& [tuple, s] : t.backward) back.emplace(tuple, s);
    for (std::size_t i = 0; i < t.domain.size(); ++i)
        if (back.at(t.forward[i]) != t.domain[i]) fail("does not invert on the interval", {t.domain[i]});
    for (const auto& [tuple, s] : t.backward) {
        for (std::size_t a = 0; a < family.size(); ++a)
            if (lat.meet(s, family[a]) != tuple[a]) fail("does not invert on the product", {s});
    }
    for (std::size_t i = 0; i < t.domain.size(); ++i)
        for (std::size_t j = 0; j < t.domain.size(); ++j) {
            bool le = true;
            for (std::size_t a = 0; a < family.size(); ++a)
                le = le && lat.leq(t.forward[i][a], t.forward[j][a]);
            if (le != lat.leq(t.domain[i], t.domain[j]))
                fail("is not an order isomorphism", {t.domain[i], t.domain[j]});
        }
    return t;
}

namespace {

bool complemented(const BoundedLattice& lat) {
    for (Element p = 0; p < lat.size(); ++p)
        if (order::complements(lat, p).empty()) return false;
    return true;
}

}  // namespace

TypeClass builtin_class(Builtin which) {
    switch (which) {
        case Builtin::distributive:
            return {"distributive", which,
                    [](const IntervalView& v) { return bool(order::lattice_profile(v.lattice).distributive); }};
        case Builtin::modular:
            return {"modular", which,
                    [](const IntervalView& v) { return bool(order::lattice_profile(v.lattice).modular); }};
        case Builtin::orthomodular:
            return {"orthomodular", which, [](const IntervalView& v) {
                        return v.ortho != nullptr && bool(order::orthomodular(*v.ortho));
                    }};
        case Builtin::boolean:
            return {"boolean", which, [](const IntervalView& v) {
                        return bool(order::lattice_profile(v.lattice).distributive) &&
                               complemented(v.lattice);
                    }};
        case Builtin::custom:
            break;
    }
    throw std::invalid_argument("custom classes need a predicate");
}

namespace {

// Directly indecomposable factors: the intervals below the atoms of the
// center. Returns nullopt when they do not account for the whole lattice.
std::optional<std::vector<BoundedLattice>> irreducible_factors(const BoundedLattice& lat) {
    std::vector<Element> z_atoms;
    const auto cen = order::center(lat);
    for (Element z : cen) {
        bool atom = z != lat.bottom();
        for (Element y : cen) atom = atom && !(y != lat.bottom() && lat.lt(y, z));
        if (atom) z_atoms.push_back(z);
    }
    if (lat.join_of(z_atoms) != lat.top()) return std::nullopt;
    std::vector<BoundedLattice> out;
    std::size_t count = 1;
    for (Element z : z_atoms) {
        out.push_back(order::interval(lat, lat.bottom(), z).lattice);
        count *= out.back().size();
    }
    if (count != lat.size()) return std::nullopt;
    return out;
}

// Factors grouped by isomorphism type, with multiplicities.
std::vector<std::pair<BoundedLattice, std::size_t>> factor_types(const std::vector<BoundedLattice>& fs) {
    std::vector<std::pair<BoundedLattice, std::size_t>> out;
    for (const auto& f : fs) {
        auto it = std::ranges::find_if(out, [&](const auto& t) {
            return t.first.size() == f.size() && order::find_isomorphism(t.first, f).has_value();
        });
        if (it == out.end())
            out.emplace_back(f, 1);
        else
            ++it->second;
    }
    return out;
}

}  // namespace

TypeClass powers_class(std::string name, BoundedLattice generator) {
    auto gen_factors = irreducible_factors(generator);
    if (!gen_factors) throw std::invalid_argument("generator does not factor through its center");
    auto gen_types = factor_types(*gen_factors);
    return {std::move(name), Builtin::custom, [gen_types = std::move(gen_types)](const IntervalView& v) {
                const BoundedLattice& lat = v.lattice;
                if (lat.size() == 1) return true;
                // A finite lattice is the product of the intervals below the atoms of
                // its center, so it is a power of the generator iff every
                // indecomposable type occurs k times as often, for one common k.
                const auto fs = irreducible_factors(lat);
                if (!fs) return false;
                const auto types = factor_types(*fs);
                if (types.size() != gen_types.size()) return false;
                std::size_t k = 0;
                for (const auto& [g, m] : gen_types) {
                    auto it = std::ranges::find_if(types, [&](const auto& t) {
                        return t.first.size() == g.size() && order::find_isomorphism(t.first, g).has_value();
                    });
                    if (it == types.end() || it->second % m != 0) return false;
                    if (k == 0) k = it->second / m;
                    if (it->second != k * m) return false;
                }
                return true;
            }};
}

std::optional<TypeClass> class_by_name(const std::string& name) {
    if (name == "distributive") return builtin_class(Builtin::distributive);
    if (name == "modular") return builtin_class(Builtin::modular);
    if (name == "orthomodular") return builtin_class(Builtin::orthomodular);
    if (name == "boolean") return builtin_class(Builtin::boolean);
    if (name == "mo2-powers") return powers_class("mo2-powers", order::fixture_lattice("MO2"));
    return std::nullopt;
}

namespace {

class MembershipCache {
public:
    MembershipCache(const OrthoLattice& ol, const TypeClass& cls) : ol_(ol), cls_(cls) {}

    bool member(Element q) {
        if (auto it = memo_.find(q); it != memo_.end()) return it->second;
        IntervalOrtho iv = interval_ortholattice(ol_, q);
        const bool in = cls_.contains({iv.interval.lattice, iv.ortho ? &*iv.ortho : nullptr});
        memo_.emplace(q, in);
        return in;
    }

private:
    const OrthoLattice& ol_;
    const TypeClass& cls_;
    std::map<Element, bool> memo_;
};

struct Candidate {
    Element p;
    Element q;
};

// Whether central z satisfies the decomposition clauses; q is the first witness.
std::optional<Element> qualifies(const OrthoLattice& ol, MembershipCache& cache,
                                 const std::vector<Element>& covers, Element z) {
    const Element zp = ol.perp(z);
    for (Element r = 0; r < ol.size(); ++r)
        if (r != ol.bottom() && ol.leq(r, zp) && cache.member(r)) return std::nullopt;
    for (Element q = 0; q < ol.size(); ++q)
        if (covers[q] == z && cache.member(q)) return q;
    return std::nullopt;
}

}  // namespace

DecompositionCertificate type_decompose(const OrthoLattice& ol, const TypeClass& cls) {
    MembershipCache cache(ol, cls);
    std::vector<Element> covers(ol.size());
    for (Element q = 0; q < ol.size(); ++q) covers[q] = central_cover(ol, q);

    std::vector<Candidate> found;
    for (Element q = 0; q < ol.size(); ++q) {
        if (!cache.member(q)) continue;
        const Element p = covers[q];
        if (std::ranges::any_of(found, [&](const Candidate& c) { return c.p == p; })) continue;
        const Element pp = ol.perp(p);
        bool clean = true;
        for (Element r = 0; r < ol.size() && clean; ++r)
            if (r != ol.bottom() && ol.leq(r, pp)) clean = !cache.member(r);
        if (clean) found.push_back({p, q});
    }
    std::vector<Element> ids;
    for (const auto& c : found) ids.push_back(c.p);
    if (found.empty())
        throw NoCandidateError("no central element decomposes the lattice for class '" + cls.name + "'");
    if (found.size() > 1)
        throw MultipleCandidateError(std::to_string(found.size()) + " candidates for class '" +
                                         cls.name + "'",
                                     ids);

    DecompositionCertificate cert;
    cert.class_name = cls.name;
    cert.p = found[0].p;
    cert.q_witness = found[0].q;
    cert.separative = bool(order::lattice_profile(ol.lattice()).separative);
    cert.central_elements = order::center(ol.lattice());
    if (!verify_certificate(ol, cls, cert, &cert.checks))
        throw MultipleCandidateError("certificate for class '" + cls.name + "' failed re-verification",
                                     ids);
    return cert;
}

bool verify_certificate(const OrthoLattice& ol, const TypeClass& cls,
                        const DecompositionCertificate& cert, std::vector<std::string>* verified) {
    std::vector<std::string> scratch;
    auto& checks = verified ? *verified : scratch;
    checks.clear();
    const BoundedLattice& lat = ol.lattice();
    MembershipCache cache(ol, cls);

    if (!order::is_central(lat, cert.p)) return false;
    checks.push_back("p is central");
    if (central_cover(ol, cert.q_witness) != cert.p) return false;
    checks.push_back("p = c(q)");
    if (!cache.member(cert.q_witness)) return false;
    checks.push_back("[0,q] in class");
    const Element pp = ol.perp(cert.p);
    for (Element r = 0; r < ol.size(); ++r)
        if (r != ol.bottom() && ol.leq(r, pp) && cache.member(r)) return false;
    checks.push_back("no r in (0,p'] with [0,r] in class");

    std::vector<Element> covers(ol.size());
    for (Element q = 0; q < ol.size(); ++q) covers[q] = central_cover(ol, q);
    for (Element z : order::center(lat)) {
        if (z == cert.p) continue;
        if (qualifies(ol, cache, covers, z)) return false;
    }
    checks.push_back("unique among all central elements");
    return true;
}

}  // namespace heredilat::decomp
