#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "heredilat/order.hpp"

namespace heredilat::order {

namespace {

std::string pair_text(const std::vector<std::string>& names, Element p, Element q) {
    auto nm = [&](Element e) { return e < names.size() ? names[e] : std::to_string(e); };
    return "(" + nm(p) + ", " + nm(q) + ")";
}

}  // namespace

FinitePoset::FinitePoset(std::size_t n, std::vector<char> leq, std::vector<std::string> names)
    : n_(n), leq_(std::move(leq)), names_(std::move(names)) {
    if (n_ == 0) throw NoBoundsError("empty poset has no bounds");
    if (!names_.empty() && names_.size() != n_)
        throw std::invalid_argument("names: expected " + std::to_string(n_) + " labels, got " +
                                    std::to_string(names_.size()));
    for (Element p = 0; p < n_; ++p)
        for (Element q = p + 1; q < n_; ++q)
            if (this->leq(p, q) && this->leq(q, p))
                throw CycleError("antisymmetry violated by " + pair_text(names_, p, q), {p, q});

    auto find_bound = [&](bool lower) -> std::optional<Element> {
        for (Element p = 0; p < n_; ++p) {
            bool ok = true;
            for (Element q = 0; q < n_ && ok; ++q) ok = lower ? this->leq(p, q) : this->leq(q, p);
            if (ok) return p;
        }
        return std::nullopt;
    };
    auto lo = find_bound(true);
    auto hi = find_bound(false);
    if (!lo) throw NoBoundsError("poset has no bottom element");
    if (!hi) throw NoBoundsError("poset has no top element");
    bottom_ = *lo;
    top_ = *hi;
}

FinitePoset FinitePoset::build(std::size_t n,
                               std::span<const std::pair<Element, Element>> cover,
                               std::vector<std::string> names) {
    std::vector<char> leq(n * n, 0);
    for (Element p = 0; p < n; ++p) leq[p * n + p] = 1;
    for (auto [lo, hi] : cover) {
        if (lo >= n || hi >= n)
            throw std::out_of_range("cover pair (" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + ") out of range for n=" +
                                    std::to_string(n));
        if (lo == hi) continue;
        leq[lo * n + hi] = 1;
    }
    // Warshall closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k * n + j]) leq[i * n + j] = 1;
    return FinitePoset(n, std::move(leq), std::move(names));
}

FinitePoset FinitePoset::from_matrix(std::size_t n, std::vector<char> leq,
                                     std::vector<std::string> names) {
    if (leq.size() != n * n) throw std::invalid_argument("order matrix has wrong size");
    std::vector<std::pair<Element, Element>> cover;
    for (Element p = 0; p < n; ++p)
        for (Element q = 0; q < n; ++q)
            if (leq[p * n + q] && p != q) cover.emplace_back(p, q);
    return build(n, cover, std::move(names));
}

std::string FinitePoset::name(Element p) const {
    if (p < names_.size()) return names_[p];
    return std::to_string(p);
}

std::vector<std::pair<Element, Element>> FinitePoset::covers() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element p = 0; p < n_; ++p)
        for (Element q = 0; q < n_; ++q) {
            if (!lt(p, q)) continue;
            bool direct = true;
            for (Element r = 0; r < n_ && direct; ++r) direct = !(lt(p, r) && lt(r, q));
            if (direct) out.emplace_back(p, q);
        }
    return out;
}

BoundedLattice::BoundedLattice(FinitePoset poset) : poset_(std::move(poset)) {
    const std::size_t n = poset_.size();
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (Element p = 0; p < n; ++p) {
        for (Element q = p; q < n; ++q) {
            std::optional<Element> glb, lub;
            for (Element r = 0; r < n; ++r) {
                if (leq(r, p) && leq(r, q) && (!glb || leq(*glb, r))) glb = r;
                if (leq(p, r) && leq(q, r) && (!lub || leq(r, *lub))) lub = r;
            }
            // The running candidate is only the greatest bound if every bound lies below it.
            for (Element r = 0; r < n; ++r) {
                if (leq(r, p) && leq(r, q) && !leq(r, *glb))
                    throw NotALatticeError("no greatest lower bound for " +
                                               pair_text(poset_.names(), p, q),
                                           {p, q});
                if (leq(p, r) && leq(q, r) && !leq(*lub, r))
                    throw NotALatticeError("no least upper bound for " +
                                               pair_text(poset_.names(), p, q),
                                           {p, q});
            }
            meet_[p * n + q] = meet_[q * n + p] = *glb;
            join_[p * n + q] = join_[q * n + p] = *lub;
        }
    }
}

BoundedLattice BoundedLattice::from_poset(FinitePoset poset) {
    return BoundedLattice(std::move(poset));
}

Element BoundedLattice::meet_of(std::span<const Element> s) const {
    Element acc = top();
    for (Element e : s) acc = meet(acc, e);
    return acc;
}

Element BoundedLattice::join_of(std::span<const Element> s) const {
    Element acc = bottom();
    for (Element e : s) acc = join(acc, e);
    return acc;
}

Element BoundedLattice::find(const std::string& name) const {
    for (Element p = 0; p < size(); ++p)
        if (poset_.name(p) == name) return p;
    throw std::out_of_range("no element named '" + name + "'");
}

bool BoundedLattice::operator==(const BoundedLattice& other) const {
    if (size() != other.size()) return false;
    for (Element p = 0; p < size(); ++p)
        for (Element q = 0; q < size(); ++q)
            if (leq(p, q) != other.leq(p, q)) return false;
    return poset_.names() == other.poset_.names();
}

std::optional<OrthoViolation> check_ortho_axioms(const BoundedLattice& lat,
                                                 std::span<const Element> ortho) {
    const std::size_t n = lat.size();
    if (ortho.size() != n)
        return OrthoViolation{"total", {}};
    for (Element p = 0; p < n; ++p)
        if (ortho[p] >= n) return OrthoViolation{"total", {p}};
    for (Element p = 0; p < n; ++p)
        if (lat.meet(p, ortho[p]) != lat.bottom()) return OrthoViolation{"complement_meet", {p}};
    for (Element p = 0; p < n; ++p)
        if (lat.join(p, ortho[p]) != lat.top()) return OrthoViolation{"complement_join", {p}};
    for (Element p = 0; p < n; ++p)
        if (ortho[ortho[p]] != p) return OrthoViolation{"involution", {p}};
    for (Element p = 0; p < n; ++p)
        for (Element q = 0; q < n; ++q)
            if (lat.leq(p, q) && !lat.leq(ortho[q], ortho[p]))
                return OrthoViolation{"antitone", {p, q}};
    return std::nullopt;
}

OrthoLattice OrthoLattice::make(BoundedLattice lattice, std::vector<Element> ortho) {
    if (auto bad = check_ortho_axioms(lattice, ortho)) {
        std::string msg = "ortholattice axiom '" + bad->axiom + "' violated";
        if (!bad->witness.empty()) {
            msg += " at";
            for (Element e : bad->witness) msg += " " + lattice.name(e);
        }
        throw OrthoAxiomError(msg, bad->witness);
    }
    return OrthoLattice(std::move(lattice), std::move(ortho));
}

std::vector<std::vector<Element>> orthocomplementations(const BoundedLattice& lat) {
    const std::size_t n = lat.size();
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> map(n, unset);
    std::vector<std::vector<Element>> found;

    std::function<void(Element)> assign = [&](Element p) {
        while (p < n && map[p] != unset) ++p;
        if (p == n) {
            if (!check_ortho_axioms(lat, map)) found.push_back(map);
            return;
        }
        for (Element c : complements(lat, p)) {
            if (map[c] != unset) continue;
            if (c == p && p != lat.bottom()) continue;
            map[p] = c;
            map[c] = p;
            assign(p + 1);
            map[p] = unset;
            map[c] = unset;
        }
    };
    assign(0);
    return found;
}

BoundedLattice product(const BoundedLattice& a, const BoundedLattice& b) {
    const std::size_t na = a.size(), nb = b.size(), n = na * nb;
    std::vector<char> leq(n * n, 0);
    std::vector<std::string> names(n);
    for (Element i = 0; i < na; ++i)
        for (Element j = 0; j < nb; ++j) {
            const Element x = i * nb + j;
            names[x] = "(" + a.name(i) + "," + b.name(j) + ")";
            for (Element k = 0; k < na; ++k)
                for (Element l = 0; l < nb; ++l)
                    leq[x * n + k * nb + l] = a.leq(i, k) && b.leq(j, l);
        }
    return BoundedLattice::from_poset(FinitePoset::from_matrix(n, std::move(leq), std::move(names)));
}

OrthoLattice product(const OrthoLattice& a, const OrthoLattice& b) {
    BoundedLattice lat = product(a.lattice(), b.lattice());
    const std::size_t nb = b.size();
    std::vector<Element> ortho(lat.size());
    for (Element i = 0; i < a.size(); ++i)
        for (Element j = 0; j < nb; ++j) ortho[i * nb + j] = a.perp(i) * nb + b.perp(j);
    return OrthoLattice::make(std::move(lat), std::move(ortho));
}

Interval interval(const BoundedLattice& lat, Element lo, Element hi) {
    if (!lat.leq(lo, hi)) throw std::invalid_argument("interval bounds out of order");
    std::vector<Element> emb;
    for (Element p = 0; p < lat.size(); ++p)
        if (lat.leq(lo, p) && lat.leq(p, hi)) emb.push_back(p);
    const std::size_t m = emb.size();
    std::vector<char> leq(m * m, 0);
    std::vector<std::string> names(m);
    for (std::size_t i = 0; i < m; ++i) {
        names[i] = lat.name(emb[i]);
        for (std::size_t j = 0; j < m; ++j) leq[i * m + j] = lat.leq(emb[i], emb[j]);
    }
    return {BoundedLattice::from_poset(FinitePoset::from_matrix(m, std::move(leq), std::move(names))),
            std::move(emb)};
}

std::optional<std::vector<Element>> find_isomorphism(const BoundedLattice& a,
                                                     const BoundedLattice& b) {
    const std::size_t n = a.size();
    if (n != b.size()) return std::nullopt;
    auto down_count = [](const BoundedLattice& l, Element p) {
        std::size_t c = 0;
        for (Element q = 0; q < l.size(); ++q) c += l.leq(q, p);
        return c;
    };
    std::vector<std::size_t> da(n), db(n);
    for (Element p = 0; p < n; ++p) {
        da[p] = down_count(a, p);
        db[p] = down_count(b, p);
    }
    {
        auto sa = da, sb = db;
        std::ranges::sort(sa);
        std::ranges::sort(sb);
        if (sa != sb) return std::nullopt;
    }
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> map(n, unset);
    std::vector<char> used(n, 0);
    std::function<bool(Element)> extend = [&](Element p) -> bool {
        if (p == n) return true;
        for (Element x = 0; x < n; ++x) {
            if (used[x] || da[p] != db[x]) continue;
            bool ok = true;
            for (Element q = 0; q < p && ok; ++q)
                ok = a.leq(p, q) == b.leq(x, map[q]) && a.leq(q, p) == b.leq(map[q], x);
            if (!ok) continue;
            map[p] = x;
            used[x] = 1;
            if (extend(p + 1)) return true;
            used[x] = 0;
        }
        map[p] = unset;
        return false;
    };
    if (extend(0)) return map;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

struct FixtureSpec {
    std::vector<std::string> names;
    std::vector<std::pair<Element, Element>> cover;
    std::vector<Element> ortho;  // empty: no orthocomplement
};

std::optional<FixtureSpec> fixture_spec(const std::string& name) {
    if (name == "B4") return FixtureSpec{{"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {3, 2, 1, 0}};
    if (name == "M3")
        return FixtureSpec{{"0", "a", "b", "c", "1"},
                           {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}},
                           {}};
    if (name == "N5")
        return FixtureSpec{{"0", "a", "b", "c", "1"}, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}}, {}};
    if (name == "MO2")
        return FixtureSpec{{"0", "a", "a'", "b", "b'", "1"},
                           {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}},
                           {5, 2, 1, 4, 3, 0}};
    if (name == "O6")
        // 0 < a < b' < 1 and 0 < b < a' < 1
        return FixtureSpec{{"0", "a", "b", "a'", "b'", "1"},
                           {{0, 1}, {1, 4}, {4, 5}, {0, 2}, {2, 3}, {3, 5}},
                           {5, 3, 4, 1, 2, 0}};
    return std::nullopt;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"B4", "M3", "N5", "MO2", "O6", "MO2xB4"}; }

BoundedLattice fixture_lattice(const std::string& name) {
    if (name == "MO2xB4") return product(fixture_lattice("MO2"), fixture_lattice("B4"));
    auto spec = fixture_spec(name);
    if (!spec) throw std::out_of_range("unknown fixture '" + name + "'");
    const std::size_t n = spec->names.size();
    return BoundedLattice::from_poset(FinitePoset::build(n, spec->cover, spec->names));
}

std::optional<OrthoLattice> fixture_ortholattice(const std::string& name) {
    if (name == "MO2xB4") return product(*fixture_ortholattice("MO2"), *fixture_ortholattice("B4"));
    auto spec = fixture_spec(name);
    if (!spec) throw std::out_of_range("unknown fixture '" + name + "'");
    if (spec->ortho.empty()) return std::nullopt;
    return OrthoLattice::make(fixture_lattice(name), spec->ortho);
}

}  // namespace heredilat::order
