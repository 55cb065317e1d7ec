#include <algorithm>
#include <fstream>
#include <sstream>

#include "heredilat/cli.hpp"

namespace heredilat::cli {

namespace {

std::size_t line_at(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line of the first occurrence of "field" as a key, or 1.
std::size_t line_of(std::string_view text, const std::string& field) {
    const std::string key = "\"" + field + "\"";
    const auto pos = text.find(key);
    return pos == std::string_view::npos ? 1 : line_at(text, pos);
}

class Reader {
public:
    Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

    json parse() const {
        try {
            return json::parse(text_.begin(), text_.end());
        } catch (const json::parse_error& e) {
            throw ParseError(source_ + ":" + std::to_string(line_at(text_, e.byte == 0 ? 0 : e.byte - 1)) +
                             ": field '<document>': malformed JSON (" + e.what() + ")");
        }
    }

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        throw ParseError(source_ + ":" + std::to_string(line_of(text_, field)) + ": field '" + field + "': " + msg);
    }

    [[noreturn]] void invalid(const std::string& field, const Error& e) const {
        throw ValidationError(source_ + ":" + std::to_string(line_of(text_, field)) + ": field '" + field +
                                  "': " + e.what(),
                              e.witness());
    }

    const json& require(const json& obj, const std::string& field) const {
        if (!obj.contains(field)) fail(field, "missing");
        return obj.at(field);
    }

    std::size_t index(const json& v, const std::string& field, std::size_t bound) const {
        if (!v.is_number_integer() || v.get<long long>() < 0 || static_cast<std::size_t>(v.get<long long>()) >= bound)
            fail(field, "expected an element id in [0, " + std::to_string(bound) + ")");
        return static_cast<std::size_t>(v.get<long long>());
    }

    const std::string& source() const { return source_; }

private:
    std::string_view text_;
    std::string source_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ":0: field '<file>': cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

LoadedLattice parse_lattice(std::string_view text, const std::string& source) {
    const Reader r(text, source);
    const json doc = r.parse();
    if (!doc.is_object()) r.fail("<document>", "expected an object");

    const json& jn = r.require(doc, "n");
    if (!jn.is_number_integer() || jn.get<long long>() < 1) r.fail("n", "expected a positive integer");
    const auto n = static_cast<std::size_t>(jn.get<long long>());

    const json& jc = r.require(doc, "cover");
    if (!jc.is_array()) r.fail("cover", "expected an array of [lower, upper] pairs");
    std::vector<std::pair<order::Element, order::Element>> cover;
    for (const json& pair : jc) {
        if (!pair.is_array() || pair.size() != 2) r.fail("cover", "expected [lower, upper] pairs");
        cover.emplace_back(r.index(pair[0], "cover", n), r.index(pair[1], "cover", n));
    }

    std::vector<std::string> names;
    if (doc.contains("names")) {
        const json& jm = doc.at("names");
        if (!jm.is_array() || jm.size() != n) r.fail("names", "expected " + std::to_string(n) + " strings");
        for (const json& s : jm) {
            if (!s.is_string()) r.fail("names", "expected strings");
            names.push_back(s.get<std::string>());
        }
    }

    std::optional<std::vector<order::Element>> ortho;
    if (doc.contains("ortho")) {
        const json& jo = doc.at("ortho");
        if (!jo.is_array() || jo.size() != n)
            r.fail("ortho", "expected an array of length " + std::to_string(n));
        ortho.emplace();
        for (const json& v : jo) ortho->push_back(r.index(v, "ortho", n));
    }

    std::optional<order::BoundedLattice> lat;
    try {
        lat = order::BoundedLattice::from_poset(order::FinitePoset::build(n, cover, names));
    } catch (const Error& e) {
        r.invalid("cover", e);
    }
    LoadedLattice out{std::move(*lat), std::nullopt};
    if (ortho) {
        try {
            out.ortho = order::OrthoLattice::make(out.lattice, *ortho);
        } catch (const Error& e) {
            r.invalid("ortho", e);
        }
    }
    return out;
}

LoadedLattice load_lattice(const std::string& path) { return parse_lattice(slurp(path), path); }

LoadedLattice resolve_lattice(const std::string& fixture_or_path) {
    const auto names = order::fixture_names();
    if (std::find(names.begin(), names.end(), fixture_or_path) != names.end())
        return {order::fixture_lattice(fixture_or_path), order::fixture_ortholattice(fixture_or_path)};
    return load_lattice(fixture_or_path);
}

json lattice_to_json(const order::BoundedLattice& lat, const order::OrthoLattice* ortho) {
    json j;
    j["n"] = lat.size();
    json cover = json::array();
    for (const auto& [lo, hi] : lat.poset().covers()) cover.push_back({lo, hi});
    j["cover"] = std::move(cover);
    if (ortho) j["ortho"] = ortho->ortho_map();
    json names = json::array();
    for (order::Element p = 0; p < lat.size(); ++p) names.push_back(lat.name(p));
    j["names"] = std::move(names);
    return j;
}

void save_lattice(const std::string& path, const order::BoundedLattice& lat, const order::OrthoLattice* ortho) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ":0: field '<file>': cannot write");
    out << lattice_to_json(lat, ortho).dump(2) << '\n';
}

namespace {

matalg::Complex entry(const Reader& r, const json& v, const std::string& field) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    r.fail(field, "expected [re, im] pairs");
}

matalg::Block read_block(const Reader& r, const json& jb, int n, const std::string& field) {
    auto shape_error = [&](const std::string& what) {
        r.invalid(field, ValidationError("block shape mismatch: expected " + std::to_string(n) + "×" +
                                         std::to_string(n) + ", " + what));
    };
    if (!jb.is_array()) r.fail(field, "expected a block array");
    matalg::Block b(n, n);
    const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const bool nested = !jb.empty() && jb[0].is_array() && (jb[0].empty() || jb[0][0].is_array());
    if (nested) {
        if (jb.size() != static_cast<std::size_t>(n)) shape_error("got " + std::to_string(jb.size()) + " rows");
        for (int i = 0; i < n; ++i) {
            const json& row = jb[static_cast<std::size_t>(i)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) shape_error("ragged row");
            for (int k = 0; k < n; ++k) b(i, k) = entry(r, row[static_cast<std::size_t>(k)], field);
        }
    } else {
        if (jb.size() != nn) shape_error("got " + std::to_string(jb.size()) + " entries");
        for (std::size_t k = 0; k < nn; ++k)
            b(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = entry(r, jb[k], field);
    }
    return b;
}

}  // namespace

LoadedAlgebra parse_algebra(std::string_view text, const std::string& source) {
    const Reader r(text, source);
    const json doc = r.parse();
    if (!doc.is_object()) r.fail("<document>", "expected an object");

    const json& jd = r.require(doc, "dims");
    if (!jd.is_array()) r.fail("dims", "expected an array of block sizes");
    std::vector<int> dims;
    for (const json& d : jd) {
        if (!d.is_number_integer()) r.fail("dims", "expected integers");
        dims.push_back(d.get<int>());
    }
    std::optional<matalg::BlockAlgebra> alg;
    try {
        alg.emplace(dims);
    } catch (const Error& e) {
        r.invalid("dims", e);
    }

    LoadedAlgebra out{std::move(*alg), {}};
    if (!doc.contains("matrices")) return out;
    const json& jm = doc.at("matrices");
    if (!jm.is_object()) r.fail("matrices", "expected an object of named matrices");
    for (const auto& [name, blocks] : jm.items()) {
        if (!blocks.is_array()) r.fail(name, "expected a list of blocks");
        if (blocks.size() != out.alg.block_count())
            r.invalid(name, ValidationError("expected " + std::to_string(out.alg.block_count()) + " blocks, got " +
                                            std::to_string(blocks.size())));
        std::vector<matalg::Block> bs;
        for (std::size_t i = 0; i < blocks.size(); ++i) bs.push_back(read_block(r, blocks[i], out.alg.dim(i), name));
        out.matrices.emplace_back(name, matalg::BlockMatrix(std::move(bs)));
    }
    return out;
}

LoadedAlgebra load_algebra(const std::string& path) { return parse_algebra(slurp(path), path); }

json algebra_to_json(const matalg::BlockAlgebra& alg,
                     const std::vector<std::pair<std::string, matalg::BlockMatrix>>& matrices) {
    json j;
    j["dims"] = alg.dims();
    json ms = json::object();
    for (const auto& [name, m] : matrices) {
        json blocks = json::array();
        for (const matalg::Block& b : m.blocks()) {
            json flat = json::array();
            for (Eigen::Index r = 0; r < b.rows(); ++r)
                for (Eigen::Index c = 0; c < b.cols(); ++c) flat.push_back({b(r, c).real(), b(r, c).imag()});
            blocks.push_back(std::move(flat));
        }
        ms[name] = std::move(blocks);
    }
    j["matrices"] = std::move(ms);
    return j;
}

}  // namespace heredilat::cli
