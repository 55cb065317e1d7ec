#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "heredilat/cli.hpp"

namespace heredilat::cli {

using matalg::BlockAlgebra;
using matalg::BlockMatrix;
using matalg::Projection;
using matalg::SeedStream;
using order::Element;

namespace {

int count_or(const SuiteConfig& cfg, int fallback) { return cfg.trials > 0 ? cfg.trials : fallback; }

const std::vector<int>& pick_dims(const SuiteConfig& cfg, std::uint64_t t) {
    if (cfg.dims_pool.empty()) throw std::invalid_argument("empty dims pool");
    return cfg.dims_pool[t % cfg.dims_pool.size()];
}

json names_of(const order::BoundedLattice& lat, const std::vector<Element>& xs) {
    json j = json::array();
    for (Element x : xs) j.push_back(lat.name(x));
    return j;
}

json dims_json(const std::vector<int>& d) { return json(d); }

double sq(double x) { return x * x; }

Projection nonzero_projection(const BlockAlgebra& alg, SeedStream& rng) {
    for (int i = 0; i < 64; ++i) {
        Projection p = matalg::random_projection(alg, rng);
        if (!p.is_zero()) return p;
    }
    return Projection::identity(alg);
}

// ---------------------------------------------------------------------------

SuiteReport fixtures_suite(const SuiteConfig&) {
    SuiteReport s{"fixtures", "structure flags of the reference lattices", 0, {}, {}};
    auto expect = [&](const std::string& id, bool ok, json detail = nullptr) {
        ++s.trials;
        s.check(id, "reference lattice profile").add(ok, std::nullopt, [&] { return detail; });
    };

    const auto b4 = *order::fixture_ortholattice("B4");
    const auto pb4 = order::lattice_profile(b4);
    expect("B4.all_flags", pb4.distributive && pb4.modular && pb4.orthomodular && *pb4.orthomodular &&
                               pb4.atomistic && pb4.coatomistic && pb4.subfit && pb4.ssc && pb4.separative);
    const auto ea = order::element_profile(b4, b4.lattice().find("a"));
    expect("B4.a.central", ea.central);
    expect("B4.a.pseudocomplement", ea.pseudocomplement == b4.lattice().find("b"));

    const auto m3 = order::fixture_lattice("M3");
    const auto pm3 = order::lattice_profile(m3);
    expect("M3.modular", bool(pm3.modular), names_of(m3, pm3.modular.witness));
    expect("M3.not_distributive", !pm3.distributive);
    expect("M3.not_orthocomplementable", order::orthocomplementations(m3).empty());

    const auto n5 = order::fixture_lattice("N5");
    const auto pn5 = order::lattice_profile(n5);
    expect("N5.not_modular", !pn5.modular);
    expect("N5.c.not_vee_distributive", !order::vee_distributive(n5, n5.find("c")));

    const auto mo2 = *order::fixture_ortholattice("MO2");
    const auto& lmo2 = mo2.lattice();
    const auto centre = order::center(lmo2);
    expect("MO2.center", centre == std::vector<Element>{lmo2.bottom(), lmo2.top()}, names_of(lmo2, centre));
    const auto a = lmo2.find("a");
    const auto emo2 = order::element_profile(mo2, a);
    expect("MO2.a.pseudocomplement_absent", !emo2.pseudocomplement);
    expect("MO2.a.atom_coatom_not_central", emo2.atom && emo2.coatom && !emo2.central);
    const auto d = order::del(lmo2, a, lmo2.find("b"));
    expect("MO2.del(a,b)", !d && names_of(lmo2, d.witness) == json::array({"a'"}), names_of(lmo2, d.witness));

    const auto o6 = *order::fixture_ortholattice("O6");
    const auto om = order::orthomodular(o6);
    expect("O6.not_orthomodular", !om && names_of(o6.lattice(), om.witness) == json::array({"a", "b'"}),
           names_of(o6.lattice(), om.witness));
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport trieq_suite(const SuiteConfig& cfg) {
    SuiteReport s{"trieq", "equivalent forms of strong orthogonality for corners pAp, qAq", count_or(cfg, 500), {}, {}};
    const SeedStream root(cfg.seed);
    int exact_true = 0, sampled_hits = 0;
    for (int t = 0; t < s.trials; ++t) {
        const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
        const BlockAlgebra alg(dims);
        SeedStream rng = root.derive("trieq", static_cast<std::uint64_t>(t));
        const Projection p = matalg::random_projection(alg, rng);
        const Projection q = matalg::random_projection(alg, rng);
        auto where = [&] { return json{{"trial", t}, {"dims", dims_json(dims)}}; };
        try {
            const auto r = matalg::trieq_battery(alg, p, q, rng.derive("battery"), 200);
            s.check("exact_items_agree", "exact items share one truth value").add(r.exact_agree, std::nullopt, where);
            s.check("sampled_items_consistent", "sampled items never contradict the exact value")
                .add(r.sampled_consistent, std::nullopt, where);
            if (!r.exact_value)
                s.check("witness_found", "failing cases exhibit a with aa* ∈ pAp, a*a ∈ qAq, a ≠ 0")
                    .add(r.witness_found, std::nullopt, where);
            exact_true += r.exact_value ? 1 : 0;
            sampled_hits += r.sampled_witness_hits;
        } catch (const std::exception& e) {
            s.check("exact_items_agree", "exact items share one truth value").add(false, std::nullopt, [&] {
                json w = where();
                w["error"] = e.what();
                return w;
            });
        }
    }
    s.notes.push_back("strongly orthogonal in " + std::to_string(exact_true) + " of " + std::to_string(s.trials) +
                      " draws; sampled counterexamples found " + std::to_string(sampled_hits) + " times");
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport idist_suite(const SuiteConfig& cfg) {
    SuiteReport s{"Idist", "p central ⟹ p∧(q∨r) = (p∧q)∨(p∧r)", count_or(cfg, 1000), {}, {}};
    const SeedStream root(cfg.seed);
    int contrast = 0;
    for (int t = 0; t < s.trials; ++t) {
        const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
        const BlockAlgebra alg(dims);
        SeedStream rng = root.derive("Idist", static_cast<std::uint64_t>(t));
        const Projection p = matalg::random_central_projection(alg, rng);
        const Projection q = matalg::random_projection(alg, rng);
        const Projection r = matalg::random_projection(alg, rng);
        auto gap = [&](const Projection& x) {
            const Projection lhs = matalg::proj_meet(alg, x, matalg::proj_join(alg, q, r));
            const Projection rhs = matalg::proj_join(alg, matalg::proj_meet(alg, x, q), matalg::proj_meet(alg, x, r));
            return (lhs.matrix() - rhs.matrix()).norm();
        };
        const double err = gap(p);
        s.check("distributive_law", "p central ⟹ p∧(q∨r) = (p∧q)∨(p∧r)")
            .add(err <= cfg.tol, cfg.tol - err, [&] { return json{{"trial", t}, {"dims", dims_json(dims)}, {"error", err}}; });
        // the same law for an arbitrary p usually fails; counted for contrast only
        if (gap(matalg::random_projection(alg, rng)) > cfg.tol) ++contrast;
    }
    s.notes.push_back("non-central contrast draws violating the law: " + std::to_string(contrast));
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport sasaki_suite(const SuiteConfig& cfg) {
    SuiteReport s{"sasaki", "partial isometry u and v = (u+u*u)/√2 of a square-zero a", count_or(cfg, 500), {}, {}};
    const SeedStream root(cfg.seed);
    for (int t = 0; t < s.trials; ++t) {
        const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
        const BlockAlgebra alg(dims);
        SeedStream rng = root.derive("sasaki", static_cast<std::uint64_t>(t));
        BlockMatrix a = matalg::random_nilpotent(alg, rng);
        for (int k = 0; k < 16 && a.norm() < 1e-6; ++k) a = matalg::random_nilpotent(alg, rng);
        auto where = [&](double err) { return json{{"trial", t}, {"dims", dims_json(dims)}, {"error", err}}; };
        try {
            const auto r = matalg::sasaki_report(alg, a, rng.derive("samples"), 5, cfg.tol);
            const double interval = r.err_interval.empty()
                                        ? 0.0
                                        : *std::max_element(r.err_interval.begin(), r.err_interval.end());
            const std::pair<const char*, double> items[] = {
                {"v*uu*v = u*u/2", r.err_half_identity},
                {"v² = v/√2", r.err_v_square},
                {"vv*uu*vv* = vv*/2", r.err_vv_star},
                {"u*u∧(p∨uu*) = v*pv for p ≤ vv*", interval},
                {"u*u ≤ vv*∨uu*", r.err_contain_2},
                {"uu* ≤ vv*∨u*u", r.err_contain_3},
            };
            for (const auto& [id, err] : items)
                s.check(id, id).add(err <= cfg.tol, cfg.tol - err, [&, e = err] { return where(e); });
        } catch (const std::exception& e) {
            s.check("construction", "sasaki construction").add(false, std::nullopt, [&] {
                json w = where(0.0);
                w["error"] = e.what();
                return w;
            });
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

const std::map<speclab::LemmaId, std::string>& lemma_anchors() {
    using speclab::LemmaId;
    static const std::map<LemmaId, std::string> m{
        {LemmaId::sum_window, "‖(a+b)_[0,ε³] a_(ε,∞)‖ ≤ ε"},
        {LemmaId::chain_norm, "‖p₁⋯pₙ‖ ≥ 1−nε when every ‖pₖ⊥v‖ ≤ ε"},
        {LemmaId::c1e, "‖c_[0,1−ε] (cb²c)_[λ−δ,1]‖ ≤ ε"},
        {LemmaId::one_minus_c, "‖(1−c)(cb²c)_[λ−δ,1]‖ ≤ ε"},
        {LemmaId::lem2, "‖b_[0,√δ] (cb²c)_[λ−δ,1]‖² ≤ 1−λ+ε"},
        {LemmaId::lem3, "‖p (cb²c)_[λ−δ,1]‖² ≤ λ+ε"},
        {LemmaId::pythag, "‖pq‖² + ‖pq⊥‖² ≥ 1"},
    };
    return m;
}

SuiteReport speclab_suite(const SuiteConfig& cfg) {
    SuiteReport s{"speclab", "spectral projection inequalities with explicit δ", count_or(cfg, 1000), {}, {}};
    for (speclab::LemmaId id : speclab::kAllLemmas) {
        CheckRecord& c = s.check(std::string(speclab::to_string(id)), lemma_anchors().at(id));
        for (int t = 0; t < s.trials; ++t) {
            const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
            try {
                const LemmaTrial lt = run_lemma_trial(id, cfg.seed, static_cast<std::uint64_t>(t), dims, std::nullopt);
                c.add(lt.report.pass(cfg.tol), lt.report.margin, [&] {
                    json w = to_json(lt.report);
                    w["trial"] = t;
                    w["dims"] = dims_json(dims);
                    return w;
                });
            } catch (const std::exception& e) {
                c.add(false, std::nullopt, [&] { return json{{"trial", t}, {"error", e.what()}}; });
            }
        }
    }
    const SeedStream root(cfg.seed);
    CheckRecord& c = s.check("pnearq", "‖pq⊥‖² ≤ λ ⟺ pq⊥p ≤ λp ⟺ (1−λ)p ≤ pqp");
    for (int t = 0; t < s.trials; ++t) {
        const BlockAlgebra alg(pick_dims(cfg, static_cast<std::uint64_t>(t)));
        SeedStream rng = root.derive("speclab.pnearq", static_cast<std::uint64_t>(t));
        const Projection p = matalg::random_projection(alg, rng);
        const Projection q = matalg::random_projection(alg, rng);
        // λ either random or exactly at the boundary
        const double lambda = rng.integer(0, 1) ? rng.uniform() : std::min(1.0, sq((p.matrix() * q.perp().matrix()).norm()));
        try {
            c.add(speclab::pnearq_check(alg, p, q, lambda).agree());
        } catch (const std::exception& e) {
            c.add(false, std::nullopt, [&] { return json{{"trial", t}, {"error", e.what()}}; });
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport septhm_suite(const SuiteConfig& cfg) {
    SuiteReport s{"septhm", "‖p_B p_D‖ ≤ ε and ‖p_C p_D‖² ≥ 1−λ−ε for λ = ‖p_B p_C‖² < 1", count_or(cfg, 200), {}, {}};
    const SeedStream root(cfg.seed);
    const double eps = 0.05;
    int overlapping = 0;
    for (int t = 0; t < s.trials; ++t) {
        const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
        const BlockAlgebra alg(dims);
        SeedStream rng = root.derive("septhm", static_cast<std::uint64_t>(t));
        Projection pb = nonzero_projection(alg, rng), pc = nonzero_projection(alg, rng);
        for (int k = 0; k < 200 && sq((pb.matrix() * pc.matrix()).norm()) > 0.9; ++k) {
            pb = nonzero_projection(alg, rng);
            pc = nonzero_projection(alg, rng);
        }
        const double lambda = sq((pb.matrix() * pc.matrix()).norm());
        auto where = [&] { return json{{"trial", t}, {"dims", dims_json(dims)}, {"lambda", lambda}}; };
        if (lambda > 0.9) {
            s.check("draw", "λ ≤ 0.9 draw").add(false, std::nullopt, where);
            continue;
        }
        if (lambda > 1e-12) ++overlapping;
        try {
            const auto r = speclab::septhm_construct(alg, pb, pc, eps);
            s.check("construction", "construction succeeds").add(true);
            s.check("bound_B", "‖p_B p_D‖ ≤ ε").add(r.bound_b.pass(cfg.tol), r.bound_b.margin, where);
            s.check("bound_C", "‖p_C p_D‖² ≥ 1−λ−ε").add(r.bound_c.pass(cfg.tol), r.bound_c.margin, where);
            s.check("nonzero", "p_D ≠ 0").add(!r.p_d.is_zero(), std::nullopt, where);
        } catch (const std::exception& e) {
            s.check("construction", "construction succeeds").add(false, std::nullopt, [&] {
                json w = where();
                w["error"] = e.what();
                return w;
            });
        }

        // ε-semicomplement inside a strictly larger corner
        const Projection outer = nonzero_projection(alg, rng);
        const Projection inner = matalg::proj_meet(alg, outer, matalg::random_projection(alg, rng));
        if (inner.rank() < outer.rank()) {
            try {
                const Projection w = speclab::epsilon_ssc_witness(alg, inner, outer, eps);
                const double n = (inner.matrix() * w.matrix()).norm();
                s.check("epsilon_ssc", "p_B < p_C ⟹ nonzero p_D ≤ p_C with ‖p_B p_D‖ < ε")
                    .add(!w.is_zero() && matalg::proj_leq(alg, w, outer) && n < eps, eps - n, where);
            } catch (const std::exception& e) {
                s.check("epsilon_ssc", "p_B < p_C ⟹ nonzero p_D ≤ p_C with ‖p_B p_D‖ < ε")
                    .add(false, std::nullopt, [&] { return json{{"trial", t}, {"error", e.what()}}; });
            }
        }
    }
    s.notes.push_back("draws with λ > 0: " + std::to_string(overlapping));
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport eplem_suite(const SuiteConfig& cfg) {
    SuiteReport s{"eplem", "c(p) is the join of upu* over unitaries u within ε of 1", count_or(cfg, 100), {}, {}};
    const SeedStream root(cfg.seed);
    int max_iters = 0;
    for (int t = 0; t < s.trials; ++t) {
        const int n = 2 + t % 3;
        const BlockAlgebra alg({n});
        SeedStream rng = root.derive("eplem", static_cast<std::uint64_t>(t));
        const Projection p = matalg::random_projection(alg, rng, {1});
        const auto r = matalg::unitary_orbit_cover(alg, p, 0.3, 150, rng.derive("orbit"));
        auto where = [&] { return json{{"trial", t}, {"n", n}, {"iterations", r.iterations}}; };
        s.check("reaches_cover", "orbit joins reach c(p) within 150 steps").add(r.reached_cover, std::nullopt, where);
        s.check("monotone", "iterates increase and stay under c(p)").add(r.monotone, std::nullopt, where);
        max_iters = std::max(max_iters, r.iterations);
    }
    s.notes.push_back("most iterations needed: " + std::to_string(max_iters));
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport decomp_suite(const SuiteConfig&) {
    SuiteReport s{"decomp", "unique central p = c(q) with [0,q] ∈ L and no nonzero r ≤ p⊥ with [0,r] ∈ L", 0, {}, {}};
    auto run_one = [&](const std::string& label, const order::OrthoLattice& ol, const decomp::TypeClass& cls,
                       std::optional<Element> expected) {
        ++s.trials;
        const std::string id = label + "." + cls.name;
        try {
            const auto cert = decomp::type_decompose(ol, cls);
            const bool verified = decomp::verify_certificate(ol, cls, cert);
            const bool right = !expected || cert.p == *expected;
            s.check(id, "type decomposition certificate").add(verified && right, std::nullopt, [&] {
                return json{{"p", ol.name(cert.p)}, {"q", ol.name(cert.q_witness)}, {"verified", verified}};
            });
        } catch (const std::exception& e) {
            s.check(id, "type decomposition certificate").add(false, std::nullopt, [&] { return json{{"error", e.what()}}; });
        }
    };

    const decomp::Builtin builtins[] = {decomp::Builtin::distributive, decomp::Builtin::modular,
                                        decomp::Builtin::orthomodular, decomp::Builtin::boolean};
    for (const std::string name : {"B4", "MO2", "MO2xB4"}) {
        const auto ol = *order::fixture_ortholattice(name);
        for (auto b : builtins) run_one(name, ol, decomp::builtin_class(b), ol.top());
    }
    const auto m3 = order::fixture_lattice("M3");
    const auto m3_orthos = order::orthocomplementations(m3);
    if (m3_orthos.empty()) {
        s.notes.push_back("M3 admits no orthocomplementation; its case is skipped");
    } else {
        const auto ol = order::OrthoLattice::make(m3, m3_orthos.front());
        for (auto b : builtins) run_one("M3", ol, decomp::builtin_class(b), ol.top());
    }
    const auto prod = *order::fixture_ortholattice("MO2xB4");
    run_one("MO2xB4", prod, *decomp::class_by_name("mo2-powers"), prod.lattice().find("(1,0)"));
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport orthomodular_suite(const SuiteConfig& cfg) {
    SuiteReport s{"orthomodular", "p ≤ q ⟹ p∨(p⊥∧q) = q", count_or(cfg, 1000), {}, {}};
    const SeedStream root(cfg.seed);
    for (int t = 0; t < s.trials; ++t) {
        const auto& dims = pick_dims(cfg, static_cast<std::uint64_t>(t));
        const BlockAlgebra alg(dims);
        SeedStream rng = root.derive("orthomodular", static_cast<std::uint64_t>(t));
        const Projection q = matalg::random_projection(alg, rng);
        const Projection x = matalg::random_projection(alg, rng);
        const Projection p = matalg::support(alg, q.matrix() * x.matrix() * q.matrix());
        const Projection lhs = matalg::proj_join(alg, p, matalg::proj_meet(alg, p.perp(), q));
        const double err = (lhs.matrix() - q.matrix()).norm();
        s.check("projection_lattice", "p ≤ q ⟹ p∨(p⊥∧q) = q in P(A)")
            .add(err <= cfg.tol && matalg::proj_leq(alg, p, q), cfg.tol - err,
                 [&] { return json{{"trial", t}, {"dims", dims_json(dims)}, {"error", err}}; });
    }
    const auto o6 = *order::fixture_ortholattice("O6");
    const auto v = order::orthomodular(o6);
    s.check("O6_contrast", "the hexagon is not orthomodular")
        .add(!v && names_of(o6.lattice(), v.witness) == json::array({"a", "b'"}), std::nullopt,
             [&] { return names_of(o6.lattice(), v.witness); });
    return s;
}

// ---------------------------------------------------------------------------

SuiteReport so_sep_suite(const SuiteConfig&) {
    SuiteReport s{"so_sep", "separative lattices: five characterizations of centrality; dense SSC sublattices", 0, {}, {}};
    for (const std::string& name : order::fixture_names()) {
        const auto lat = order::fixture_lattice(name);
        const auto prof = order::lattice_profile(lat);
        if (!prof.separative) {
            s.notes.push_back(name + " is not separative; skipped");
            continue;
        }
        ++s.trials;
        if (const auto ol = order::fixture_ortholattice(name)) {
            CheckRecord& c = s.check(name + ".so", "central ⟺ ∨-distributive ⟺ C with all ⟺ E with all ⟺ pseudocomplement of q⊥");
            for (Element q = 0; q < ol->size(); ++q) {
                const auto r = order::prop_so_report(*ol, q);
                c.add(r.agree(), std::nullopt, [&] { return json{{"q", ol->name(q)}}; });
            }
        }
        CheckRecord& c = s.check(name + ".ssc_sep", "⋁-dense ∧-sublattice of SSC elements ⟹ separative");
        auto probe = [&](const std::vector<Element>& subset) {
            try {
                const auto r = order::dense_sublattice_check(lat, subset);
                c.add(!r.premises() || r.conclusion_separative);
            } catch (const PropositionViolation& e) {
                c.add(false, std::nullopt, [&] { return json{{"subset", names_of(lat, subset)}, {"error", e.what()}}; });
            }
        };
        std::vector<Element> all(lat.size());
        for (Element p = 0; p < lat.size(); ++p) all[p] = p;
        probe(all);
        // every subset containing 0 and 1 on the small fixtures
        if (lat.size() <= 10) {
            std::vector<Element> inner;
            for (Element p = 0; p < lat.size(); ++p)
                if (p != lat.bottom() && p != lat.top()) inner.push_back(p);
            for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
                std::vector<Element> subset{lat.bottom(), lat.top()};
                for (std::size_t k = 0; k < inner.size(); ++k)
                    if (mask >> k & 1u) subset.push_back(inner[k]);
                std::sort(subset.begin(), subset.end());
                probe(subset);
            }
        }
    }
    return s;
}

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"fixtures", fixtures_suite},         {"trieq", trieq_suite},   {"Idist", idist_suite},
        {"sasaki", sasaki_suite},             {"speclab", speclab_suite}, {"septhm", septhm_suite},
        {"eplem", eplem_suite},               {"decomp", decomp_suite}, {"orthomodular", orthomodular_suite},
        {"so_sep", so_sep_suite},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

LemmaTrial run_lemma_trial(speclab::LemmaId id, std::uint64_t seed, std::uint64_t trial, const std::vector<int>& dims,
                           std::optional<double> eps) {
    const BlockAlgebra alg(dims);
    SeedStream rng = SeedStream(seed).derive("speclab." + std::string(speclab::to_string(id)), trial);
    const double e = eps ? *eps : rng.uniform(0.02, 0.95);
    const speclab::LemmaInputs in = speclab::draw_inputs(id, alg, rng, e);
    LemmaTrial out{speclab::verify_lemma(id, alg, in, e), dims, trial};
    out.report.inputs_digest =
        "seed:" + std::to_string(seed) + "/trial:" + std::to_string(trial) + "/" + out.report.inputs_digest;
    return out;
}

}  // namespace heredilat::cli
