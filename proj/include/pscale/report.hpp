#pragma once

// JSON encoding of reports and decoding of input files.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pscale/limits.hpp"

namespace pscale {

using Json = nlohmann::ordered_json;

Json to_json(const Gaussian& c);
/// Terms as {"holo": [...], "anti": [...], "re", "im", "exact"}; univariate polynomials
/// use {"j", "k", ...} instead.
Json terms_to_json(const Poly& p);

Json to_json(const NormalFormReport& r);
Json to_json(const LeviData& l);
Json to_json(const TypeResult& t);
Json to_json(const PseudoconvexityReport& r);
Json to_json(const NormalizationResult& r);
Json to_json(const ScalingData& sd);
Json to_json(const ModelClass& mc);
Json to_json(const std::optional<MatchResult>& m);
Json to_json(const LimitReport& r);
Json to_json(const ProbeReport& r);

/// A JSON number, a string accepted by parse_scalar, or a [re, im] pair of either.
Gaussian scalar_from_json(const Json& j);

/// {"n": int, "F": "<expression>", "label": string}.
DomainSpec domain_from_json(const Json& j);
/// {"kind": ..., "params": {...}, "jmax": int}.
SequenceSpec sequence_from_json(const Json& j);
/// {"poly": "<expression>", "nvars": int} or a bare expression string; nvars defaults to 1.
RealPoly poly_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

/// "re,im;re,im;..." with exact literals; "re" alone means a real coordinate.
std::vector<Gaussian> parse_point(std::string_view text);

/// Completes an (n-1)-coordinate point to the boundary point with real z_n = -F(z').
std::vector<Gaussian> complete_boundary_point(const DomainSpec& spec, std::vector<Gaussian> point);

struct AnalyzeOptions {
    double radius = 0.2;
    int count = 1024;
    double rank_tol = kDefaultRankTol;
};

struct AnalyzeResult {
    Json report;
    bool hypotheses_pass = false;
};

/// Normal form, type 2m, Levi rank/corank at the origin and the pseudoconvexity sample.
AnalyzeResult analyze(const DomainSpec& spec, const AnalyzeOptions& options = {});

}  // namespace pscale
