#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "heredilat/cli.hpp"

namespace heredilat::cli {

namespace {

struct Output {
    std::string format = "json";
    std::string path;
};

void add_output(CLI::App* cmd, Output& o) {
    cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", o.path, "write the report here instead of stdout");
}

void emit(const Output& o, const std::string& body, std::ostream& out) {
    if (o.path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw ParseError(o.path + ":0: field '--out': cannot write");
    f << body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            dims.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ValidationError("--dims: expected comma-separated block sizes, got '" + s + "'");
        }
    }
    if (dims.empty()) throw ValidationError("--dims: empty");
    matalg::BlockAlgebra check(dims);  // DimCapError on bad sizes
    return dims;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HEREDILAT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("HEREDILAT_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

LoadedLattice pick_lattice(const std::string& fixture, const std::string& path) {
    if (!fixture.empty() && !path.empty()) throw ValidationError("give --fixture or --lattice, not both");
    if (!fixture.empty()) {
        const auto names = order::fixture_names();
        if (std::find(names.begin(), names.end(), fixture) == names.end())
            throw ValidationError("unknown fixture '" + fixture + "'");
        return resolve_lattice(fixture);
    }
    if (path.empty()) throw ValidationError("one of --fixture or --lattice is required");
    return load_lattice(path);
}

json verdict(const order::BoundedLattice& lat, const order::Verdict& v) {
    json j;
    j["holds"] = v.holds;
    if (!v.holds) {
        json w = json::array();
        for (auto x : v.witness) w.push_back(lat.name(x));
        j["witness"] = std::move(w);
    }
    return j;
}

json names(const order::BoundedLattice& lat, const std::vector<order::Element>& xs) {
    json j = json::array();
    for (auto x : xs) j.push_back(lat.name(x));
    return j;
}

int check_lattice(const LoadedLattice& in, const std::string& label, const Output& o, std::ostream& out) {
    const auto& lat = in.lattice;
    const auto prof = in.ortho ? order::lattice_profile(*in.ortho) : order::lattice_profile(lat);
    json j;
    j["command"] = "check-lattice";
    j["lattice"] = {{"source", label}, {"n", lat.size()}, {"ortho", in.ortho.has_value()}};
    json p;
    p["distributive"] = verdict(lat, prof.distributive);
    p["modular"] = verdict(lat, prof.modular);
    if (prof.orthomodular) p["orthomodular"] = verdict(lat, *prof.orthomodular);
    p["atomistic"] = verdict(lat, prof.atomistic);
    p["coatomistic"] = verdict(lat, prof.coatomistic);
    p["subfit"] = verdict(lat, prof.subfit);
    p["ssc"] = verdict(lat, prof.ssc);
    p["separative"] = verdict(lat, prof.separative);
    j["profile"] = std::move(p);
    j["center"] = names(lat, order::center(lat));

    json elems = json::array();
    for (order::Element x = 0; x < lat.size(); ++x) {
        const auto e = order::element_profile(lat, x);
        json ej;
        ej["name"] = lat.name(x);
        if (in.ortho) ej["perp"] = lat.name(in.ortho->perp(x));
        ej["atom"] = e.atom;
        ej["coatom"] = e.coatom;
        ej["wedge_irreducible"] = verdict(lat, e.wedge_irreducible);
        ej["complemented"] = e.complemented;
        ej["vee_distributive"] = verdict(lat, e.vee_distributive);
        ej["wedge_distributive"] = verdict(lat, e.wedge_distributive);
        ej["central"] = e.central;
        ej["subfit"] = verdict(lat, e.subfit);
        ej["ssc"] = verdict(lat, e.ssc);
        ej["separative"] = verdict(lat, e.separative);
        ej["pseudocomplement"] = e.pseudocomplement ? json(lat.name(*e.pseudocomplement)) : json(nullptr);
        ej["complements"] = names(lat, e.complements);
        ej["central_complements"] = names(lat, e.central_complements);
        elems.push_back(std::move(ej));
    }
    j["elements"] = std::move(elems);

    if (o.format == "json") {
        emit(o, dump(j), out);
    } else {
        std::string t = label + ": " + std::to_string(lat.size()) + " elements\n";
        for (const auto& [k, v] : j["profile"].items())
            t += "  " + k + ": " + (v["holds"].get<bool>() ? "yes" : "no  witness " + v["witness"].dump()) + "\n";
        t += "  center: " + j["center"].dump() + "\n";
        emit(o, t, out);
    }
    return 0;  // profiles never fail on false flags
}

int decompose(const LoadedLattice& in, const std::string& label, const std::string& cls_arg, const Output& o,
              std::ostream& out) {
    if (!in.ortho) throw ValidationError(label + ": type decomposition needs an orthocomplement (\"ortho\")");
    std::optional<decomp::TypeClass> cls = decomp::class_by_name(cls_arg);
    if (!cls) {
        // a lattice file: finite powers of that lattice
        const LoadedLattice gen = load_lattice(cls_arg);
        try {
            cls = decomp::powers_class(cls_arg, gen.lattice);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(cls_arg + ": " + e.what());
        }
    }
    const auto& ol = *in.ortho;
    json j;
    j["command"] = "decompose";
    j["lattice"] = label;
    j["class"] = cls->name;
    int code = 0;
    try {
        const auto cert = decomp::type_decompose(ol, *cls);
        std::vector<std::string> verified;
        const bool ok = decomp::verify_certificate(ol, *cls, cert, &verified);
        json c;
        c["p"] = ol.name(cert.p);
        c["q_witness"] = ol.name(cert.q_witness);
        c["separative"] = cert.separative;
        c["checks"] = cert.checks;
        c["central_elements"] = names(ol.lattice(), cert.central_elements);
        c["reverified"] = verified;
        j["certificate"] = std::move(c);
        j["pass"] = ok;
        code = ok ? 0 : 1;
    } catch (const Error& e) {
        j["pass"] = false;
        j["error"] = e.what();
        j["witness"] = names(ol.lattice(), e.witness());
        code = 1;
    }
    if (o.format == "json") {
        emit(o, dump(j), out);
    } else {
        std::string t = label + " / " + cls->name + ": ";
        t += j.contains("certificate") ? "p = " + j["certificate"]["p"].get<std::string>() +
                                             ", q = " + j["certificate"]["q_witness"].get<std::string>()
                                       : j["error"].get<std::string>();
        emit(o, t + "\n", out);
    }
    return code;
}

int verify_paper(const SuiteConfig& cfg, const std::vector<std::string>& suites, const Output& o, std::ostream& out) {
    const std::vector<std::string>& chosen = suites.empty() ? suite_names() : suites;
    for (const auto& s : chosen)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ValidationError("unknown suite '" + s + "'");
    json j;
    j["command"] = "verify-paper";
    j["config"] = {{"seed", cfg.seed}, {"trials", cfg.trials}, {"tol", cfg.tol}, {"dims_pool", cfg.dims_pool}};
    json arr = json::array();
    std::string text;
    bool all = true;
    for (const auto& name : chosen) {
        const SuiteReport r = run_suite(name, cfg);
        all = all && r.pass();
        arr.push_back(to_json(r));
        text += to_text(r);
    }
    j["suites"] = std::move(arr);
    j["pass"] = all;
    emit(o, o.format == "json" ? dump(j) : text + (all ? "PASS\n" : "FAIL\n"), out);
    return all ? 0 : 1;
}

int speclab_cmd(const std::string& lemma, const std::string& dims_arg, int trials, std::optional<double> eps,
                std::uint64_t seed, double tol, const Output& o, std::ostream& out) {
    std::vector<speclab::LemmaId> ids;
    if (lemma == "all") {
        ids.assign(speclab::kAllLemmas.begin(), speclab::kAllLemmas.end());
    } else if (const auto id = speclab::lemma_from_string(lemma)) {
        ids.push_back(*id);
    } else {
        throw ValidationError("unknown lemma '" + lemma + "'");
    }
    if (eps && !(*eps > 0.0)) throw ValidationError("--eps must be positive");
    const SuiteConfig pool;
    const std::vector<int> fixed = dims_arg.empty() ? std::vector<int>{} : parse_dims(dims_arg);

    json arr = json::array();
    std::string text;
    bool all = true;
    for (auto id : ids)
        for (int t = 0; t < trials; ++t) {
            const auto& dims = fixed.empty() ? pool.dims_pool[static_cast<std::size_t>(t) % pool.dims_pool.size()] : fixed;
            const LemmaTrial lt = run_lemma_trial(id, seed, static_cast<std::uint64_t>(t), dims, eps);
            json r = to_json(lt.report);
            r["seed"] = seed;
            r["trial"] = t;
            r["dims"] = dims;
            r["pass"] = lt.report.pass(tol);
            all = all && lt.report.pass(tol);
            if (o.format == "text") {
                std::ostringstream line;
                line << speclab::to_string(id) << " trial " << t << ": lhs " << lt.report.lhs << " bound "
                     << lt.report.bound << " margin " << lt.report.margin << (lt.report.pass(tol) ? "" : "  FAIL")
                     << "\n";
                text += line.str();
            }
            arr.push_back(std::move(r));
        }
    emit(o, o.format == "json" ? dump(arr) : text, out);
    return all ? 0 : 1;
}

json sasaki_json(const matalg::SasakiReport& r, double tol) {
    json j;
    j["err_half_identity"] = r.err_half_identity;
    j["err_v_square"] = r.err_v_square;
    j["err_vv_star"] = r.err_vv_star;
    j["err_interval"] = r.err_interval;
    j["err_contain_2"] = r.err_contain_2;
    j["err_contain_3"] = r.err_contain_3;
    j["pass"] = r.holds(tol);
    return j;
}

int sasaki_cmd(const std::string& file, const std::vector<std::string>& picked, const std::string& dims_arg,
               int trials, std::uint64_t seed, double tol, const Output& o, std::ostream& out) {
    json arr = json::array();
    bool all = true;
    const matalg::SeedStream root(seed);
    if (!file.empty()) {
        const LoadedAlgebra la = load_algebra(file);
        for (const auto& [name, m] : la.matrices) {
            if (!picked.empty() && std::find(picked.begin(), picked.end(), name) == picked.end()) continue;
            matalg::SasakiReport r;
            try {
                r = matalg::sasaki_report(la.alg, m, root.derive("sasaki." + name), 5, tol);
            } catch (const NotNilpotentError& e) {
                throw ValidationError(file + ": matrix '" + name + "': " + e.what());
            }
            json j = json{{"matrix", name}};
            j.update(sasaki_json(r, tol));
            all = all && r.holds(tol);
            arr.push_back(std::move(j));
        }
        for (const auto& n : picked)
            if (std::none_of(la.matrices.begin(), la.matrices.end(), [&](const auto& kv) { return kv.first == n; }))
                throw ValidationError(file + ": no matrix named '" + n + "'");
    } else {
        const SuiteConfig pool;
        const std::vector<int> fixed = dims_arg.empty() ? std::vector<int>{} : parse_dims(dims_arg);
        for (int t = 0; t < trials; ++t) {
            const auto& dims = fixed.empty() ? pool.dims_pool[static_cast<std::size_t>(t) % pool.dims_pool.size()] : fixed;
            const matalg::BlockAlgebra alg(dims);
            matalg::SeedStream rng = root.derive("sasaki", static_cast<std::uint64_t>(t));
            const auto a = matalg::random_nilpotent(alg, rng);
            const auto r = matalg::sasaki_report(alg, a, rng.derive("samples"), 5, tol);
            json j = json{{"trial", t}, {"dims", dims}};
            j.update(sasaki_json(r, tol));
            all = all && r.holds(tol);
            arr.push_back(std::move(j));
        }
    }
    if (o.format == "json") {
        emit(o, dump(arr), out);
    } else {
        std::string t;
        for (const auto& j : arr)
            t += (j.contains("matrix") ? j["matrix"].get<std::string>() : "trial " + j["trial"].dump()) + ": " +
                 (j["pass"].get<bool>() ? "ok" : "FAIL") + "\n";
        emit(o, t, out);
    }
    return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite ortholattices, projection lattices of block matrix algebras and spectral inequalities",
                 "heredilat"};
    app.require_subcommand(1);

    Output o;
    std::string fixture, lattice_path, cls;
    CLI::App* check = app.add_subcommand("check-lattice", "profile a lattice");
    check->add_option("--fixture", fixture, "built-in lattice: B4, M3, N5, MO2, O6, MO2xB4");
    check->add_option("--lattice", lattice_path, "lattice JSON file");
    add_output(check, o);

    CLI::App* dec = app.add_subcommand("decompose", "type decomposition of an ortholattice");
    dec->add_option("--fixture", fixture, "built-in lattice");
    dec->add_option("--lattice", lattice_path, "lattice JSON file");
    dec->add_option("--class", cls, "distributive, modular, orthomodular, boolean, mo2-powers, or a lattice file "
                                    "whose finite powers form the class")
        ->required();
    add_output(dec, o);

    SuiteConfig cfg;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> suites, pool;
    CLI::App* vp = app.add_subcommand("verify-paper", "run the theorem suites");
    vp->add_option("--seed", seed, "64-bit seed (default: HEREDILAT_SEED or 0)");
    vp->add_option("--trials", cfg.trials, "draws per Monte-Carlo suite (default: per-suite counts)")
        ->check(CLI::PositiveNumber);
    vp->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    vp->add_option("--suite", suites, "restrict to these suites (repeatable)");
    vp->add_option("--dims", pool, "dims pool entries such as 1,2 (repeatable)");
    add_output(vp, o);

    std::string lemma = "all", dims;
    int trials = 100;
    std::optional<double> eps;
    double tol = 1e-8;
    CLI::App* sl = app.add_subcommand("speclab", "spectral inequalities on seeded draws");
    sl->add_option("--lemma", lemma, "lemma name or 'all'");
    sl->add_option("--dims", dims, "block sizes, e.g. 2,2 (default: rotate through the dims pool)");
    sl->add_option("--trials", trials, "draws per lemma")->check(CLI::PositiveNumber);
    sl->add_option("--eps", eps, "fixed ε (default: drawn per trial)");
    sl->add_option("--seed", seed, "64-bit seed");
    sl->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    add_output(sl, o);

    std::string matrices;
    std::vector<std::string> picked;
    CLI::App* sa = app.add_subcommand("sasaki", "interval maps of square-zero elements");
    sa->add_option("--matrices", matrices, "matrix JSON file (default: random draws)");
    sa->add_option("--name", picked, "matrices to use from the file (repeatable)");
    sa->add_option("--dims", dims, "block sizes for random draws");
    sa->add_option("--trials", trials, "random draws")->check(CLI::PositiveNumber);
    sa->add_option("--seed", seed, "64-bit seed");
    sa->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    add_output(sa, o);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? 0 : 2;
    }

    try {
        const std::uint64_t s = seed ? *seed : default_seed();
        if (*check) {
            const auto in = pick_lattice(fixture, lattice_path);
            return check_lattice(in, fixture.empty() ? lattice_path : fixture, o, out);
        }
        if (*dec) {
            const auto in = pick_lattice(fixture, lattice_path);
            return decompose(in, fixture.empty() ? lattice_path : fixture, cls, o, out);
        }
        if (*vp) {
            cfg.seed = s;
            if (!pool.empty()) {
                cfg.dims_pool.clear();
                for (const auto& d : pool) cfg.dims_pool.push_back(parse_dims(d));
            }
            return verify_paper(cfg, suites, o, out);
        }
        if (*sl) return speclab_cmd(lemma, dims, trials, eps, s, tol, o, out);
        if (*sa) return sasaki_cmd(matrices, picked, dims, trials, s, tol, o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace heredilat::cli
