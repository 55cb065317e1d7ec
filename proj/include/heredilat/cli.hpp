#pragma once

// File formats, theorem suites and the command-line driver.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "heredilat/decomp.hpp"
#include "heredilat/speclab.hpp"

namespace heredilat::cli {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// files

struct LoadedLattice {
    order::BoundedLattice lattice;
    std::optional<order::OrthoLattice> ortho;
};

/// {"n", "cover", "ortho"?, "names"?}. Syntax and shape problems throw
/// ParseError naming source, line and field; kernel rejections (cycles,
/// missing bounds, non-lattices, bad orthocomplements) throw ValidationError
/// with the kernel's witness.
LoadedLattice parse_lattice(std::string_view text, const std::string& source);
LoadedLattice load_lattice(const std::string& path);
/// A fixture name or a file path.
LoadedLattice resolve_lattice(const std::string& fixture_or_path);
json lattice_to_json(const order::BoundedLattice& lat, const order::OrthoLattice* ortho = nullptr);
void save_lattice(const std::string& path, const order::BoundedLattice& lat,
                  const order::OrthoLattice* ortho = nullptr);

struct LoadedAlgebra {
    matalg::BlockAlgebra alg;
    std::vector<std::pair<std::string, matalg::BlockMatrix>> matrices;  // file order
};

/// {"dims": [...], "matrices": {"name": [block, ...]}}, each block a row-major
/// array of [re, im] pairs (flat, or nested by row). Block shape mismatches
/// throw ValidationError.
LoadedAlgebra parse_algebra(std::string_view text, const std::string& source);
LoadedAlgebra load_algebra(const std::string& path);
json algebra_to_json(const matalg::BlockAlgebra& alg,
                     const std::vector<std::pair<std::string, matalg::BlockMatrix>>& matrices);

// ---------------------------------------------------------------------------
// reports

struct CheckRecord {
    std::string id;
    std::string anchor;
    bool advisory = false;
    int total = 0;
    int failures = 0;
    std::optional<double> worst_margin;
    json first_failure;  // null until a failure is recorded

    void add(bool ok, std::optional<double> margin = std::nullopt,
             const std::function<json()>& witness = {});
    bool pass() const { return failures == 0; }
};

struct SuiteReport {
    std::string suite;
    std::string anchor;
    int trials = 0;
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;

    CheckRecord& check(const std::string& id, const std::string& anchor, bool advisory = false);
    bool pass() const;
};

json to_json(const CheckRecord& c);
json to_json(const SuiteReport& s);
json to_json(const speclab::MarginReport& m);
std::string to_text(const SuiteReport& s);

// ---------------------------------------------------------------------------
// suites

struct SuiteConfig {
    std::uint64_t seed = 0;
    /// 0 keeps each suite's own default count.
    int trials = 0;
    double tol = 1e-8;
    std::vector<std::vector<int>> dims_pool{{2}, {3}, {1, 2}, {2, 2}, {1, 1, 2}, {4}};
};

/// Suite names in report order.
const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

/// One trial draw of the spectral battery; shared with the `speclab` command.
struct LemmaTrial {
    speclab::MarginReport report;
    std::vector<int> dims;
    std::uint64_t trial = 0;
};
LemmaTrial run_lemma_trial(speclab::LemmaId id, std::uint64_t seed, std::uint64_t trial,
                           const std::vector<int>& dims, std::optional<double> eps);

// ---------------------------------------------------------------------------
// driver

/// Exit codes: 0 all checks pass, 1 some check failed, 2 bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heredilat::cli
