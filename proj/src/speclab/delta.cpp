#include <cmath>
#include <string>

#include "detail.hpp"

namespace heredilat::speclab {

std::string_view to_string(LemmaId id) {
    switch (id) {
        case LemmaId::sum_window: return "sum_window";
        case LemmaId::chain_norm: return "chain_norm";
        case LemmaId::c1e: return "c1e";
        case LemmaId::one_minus_c: return "one_minus_c";
        case LemmaId::lem2: return "lem2";
        case LemmaId::lem3: return "lem3";
        case LemmaId::pythag: return "pythag";
    }
    return "?";
}

std::optional<LemmaId> lemma_from_string(std::string_view s) {
    if (s == "c1-e") return LemmaId::c1e;
    if (s == "1-c") return LemmaId::one_minus_c;
    for (LemmaId id : kAllLemmas)
        if (to_string(id) == s) return id;
    return std::nullopt;
}

namespace {

double delta_c1e(double eps, double lambda) { return lambda * eps * eps * eps / 2.0; }

// Largest δ ∈ [0,1) with (1−λ+δ+ε/2)/(1−δ) ≤ 1−λ+ε; the left side grows in δ.
double delta_ratio(double eps, double lambda) {
    auto ok = [&](double d) { return (1.0 - lambda + d + eps / 2.0) / (1.0 - d) <= 1.0 - lambda + eps; };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double delta_for(LemmaId lemma, double eps, double lambda) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("ε must be positive, got " + std::to_string(eps));
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("λ must be positive, got " + std::to_string(lambda));
    switch (lemma) {
        case LemmaId::c1e: return delta_c1e(eps, lambda);
        case LemmaId::one_minus_c: return delta_c1e(eps / std::sqrt(2.0), lambda);
        case LemmaId::lem2:
            return std::min(delta_for(LemmaId::one_minus_c, eps / 4.0, lambda), delta_ratio(eps, lambda));
        case LemmaId::lem3: return std::min(delta_for(LemmaId::one_minus_c, eps / 4.0, lambda), eps / 2.0);
        default: break;
    }
    throw DomainError(std::string(to_string(lemma)) + " has no δ");
}

MarginReport make_margin(LemmaId lemma, BoundKind kind, double lhs, double bound) {
    MarginReport r;
    r.lemma = lemma;
    r.kind = kind;
    r.lhs = lhs;
    r.bound = bound;
    r.margin = kind == BoundKind::upper ? bound - lhs : lhs - bound;
    return r;
}

}  // namespace heredilat::speclab
