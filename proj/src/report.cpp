#include "pscale/report.hpp"

#include <fstream>
#include <sstream>

#include "pscale/parse.hpp"

namespace pscale {

Json to_json(const Gaussian& c)
{
    return Json{{"re", to_double(c.re)}, {"im", to_double(c.im)}, {"exact", to_string(c)}};
}

Json terms_to_json(const Poly& p)
{
    Json out = Json::array();
    for (const auto& [md, c] : p.terms()) {
        Json t;
        if (p.nvars() == 1) {
            t["j"] = md.holo[0];
            t["k"] = md.anti[0];
        } else {
            t["holo"] = md.holo;
            t["anti"] = md.anti;
        }
        t["re"] = to_double(c.re);
        t["im"] = to_double(c.im);
        t["exact"] = to_string(c);
        out.push_back(std::move(t));
    }
    return out;
}

Json to_json(const NormalFormReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return Json{{"checks", checks}, {"structure_ok", r.structure_ok()}, {"all_passed", r.all_passed()}};
}

Json to_json(const LeviData& l)
{
    return Json{{"rank", l.rank}, {"corank", l.corank}, {"eigenvalues", l.eigenvalues}};
}

Json to_json(const TypeResult& t)
{
    return Json{{"type", t.value}, {"m", t.m()}, {"certified", t.certified}, {"warnings", t.warnings}};
}

Json to_json(const PseudoconvexityReport& r)
{
    Json worst = Json::array();
    for (const auto& z : r.worst_point) worst.push_back({z.real(), z.imag()});
    return Json{{"radius", r.radius},
                {"count", r.count},
                {"min_eigenvalue", r.min_eigenvalue},
                {"worst_point", worst},
                {"pass", r.pass}};
}

Json to_json(const NormalizationResult& r)
{
    Json phi = Json::array();
    for (const auto& c : r.phi.components()) phi.push_back(to_string(c));
    Json phi_inv = Json::array();
    for (const auto& c : r.phi_inv.components()) phi_inv.push_back(to_string(c));
    Json base = Json::array();
    for (const auto& z : r.base_point) base.push_back(to_json(z));

    Json a = Json::array();
    for (const auto& [jk, c] : r.a_table) {
        Json t{{"j", jk.first}, {"k", jk.second}};
        t.update(to_json(c));
        a.push_back(std::move(t));
    }
    Json b = Json::array();
    for (const auto& [key, c] : r.b_table) {
        Json t{{"alpha", std::get<0>(key)}, {"j", std::get<1>(key)}, {"k", std::get<2>(key)}};
        t.update(to_json(c));
        b.push_back(std::move(t));
    }
    return Json{{"m", r.m},
                {"exact", r.exact},
                {"base_point", base},
                {"phi", phi},
                {"phi_inv", phi_inv},
                {"a_table", a},
                {"b_table", b},
                {"normalized", to_string(r.normalized.poly())},
                {"remainder", to_string(r.remainder.poly())}};
}

Json to_json(const ScalingData& sd)
{
    Json scales = Json::array();
    for (const auto& s : sd.scales) scales.push_back(to_double(s));
    Json scales_exact = Json::array();
    for (const auto& s : sd.scales) scales_exact.push_back(to_string(s));
    Json q = Json::object();
    for (const auto& [alpha, poly] : sd.Q) q[std::to_string(alpha)] = terms_to_json(poly);

    Json A = Json::object(), B = Json::object();
    for (const auto& [l, v] : sd.maxima.A) A[std::to_string(l)] = v;
    for (const auto& [l, v] : sd.maxima.B) B[std::to_string(l)] = v;
    const CoefficientBounds bounds = coefficient_bounds(sd);
    const QEstimateReport qe = check_q_estimate(sd);

    return Json{{"epsilon", to_double(sd.epsilon)},
                {"epsilon_exact", to_string(sd.epsilon)},
                {"tau", sd.tau},
                {"scales", scales},
                {"scales_exact", scales_exact},
                {"P", terms_to_json(sd.P.poly())},
                {"P_expr", to_string(sd.P.poly())},
                {"Q", q},
                {"diagnostics",
                 {{"m", sd.m},
                  {"exact", sd.exact},
                  {"active", sd.active},
                  {"A", A},
                  {"B", B},
                  {"max_abs_P", bounds.max_p},
                  {"max_abs_Q", bounds.max_q},
                  {"coefficients_bounded", bounds.within()},
                  {"pq_scan_discrepancy", pq_scan_discrepancy(sd)},
                  {"q_estimate",
                   {{"max_q", qe.max_q}, {"bound", qe.bound}, {"verdict", to_string(qe.verdict)}}}}}};
}

Json to_json(const ModelClass& mc)
{
    Json comps = Json::object();
    for (const auto& [d, v] : mc.component_min) comps[std::to_string(d)] = v;
    return Json{{"is_subharmonic", mc.is_subharmonic},
                {"laplacian_nontrivial", mc.laplacian_nontrivial},
                {"degree", mc.degree},
                {"is_homogeneous", mc.is_homogeneous},
                {"is_strongly_pseudoconvex_model", mc.is_strongly_pseudoconvex_model},
                {"c", mc.c},
                {"subharmonic_mode", mc.subharmonic_mode},
                {"component_min", comps},
                {"sampled_min", mc.sampled_min}};
}

Json to_json(const std::optional<MatchResult>& m)
{
    if (!m) return Json{{"match", false}};
    return Json{{"match", true},
                {"lambda", m->lambda},
                {"nu", m->nu},
                {"phase_free", m->phase_free},
                {"residual", m->residual}};
}

Json to_json(const LimitReport& r)
{
    Json keys = Json::array();
    for (const auto& [j, k] : r.coeff_keys) keys.push_back({j, k});
    Json coeffs = Json::array();
    for (const auto& row : r.coeff_trace) {
        Json jr = Json::array();
        for (const auto& c : row) jr.push_back({c.real(), c.imag()});
        coeffs.push_back(std::move(jr));
    }
    Json exact = Json::array();
    for (bool e : r.exact_trace) exact.push_back(e);
    return Json{{"m", r.m},
                {"type", 2 * r.m},
                {"jmax", r.jmax},
                {"converged", r.converged},
                {"P_limit", terms_to_json(r.P_limit.poly())},
                {"P_limit_expr", to_string(r.P_limit.poly())},
                {"strongly_pseudoconvex", r.model.is_strongly_pseudoconvex_model},
                {"model", to_json(r.model)},
                {"traces",
                 {{"keys", keys},
                  {"coefficients", coeffs},
                  {"q_decay", r.q_decay},
                  {"tau", r.tau_trace},
                  {"epsilon", r.eps_trace},
                  {"max_coeff", r.max_coeff_trace},
                  {"exact", exact}}}};
}

Json to_json(const ProbeReport& r)
{
    Json pts = Json::array();
    for (const auto& p : r.points) {
        Json w = Json::array();
        for (const auto& z : p.point) w.push_back({z.real(), z.imag()});
        pts.push_back({{"point", w},
                       {"model_value", p.model_value},
                       {"interior", p.interior},
                       {"j0", p.j0 ? Json(*p.j0) : Json(nullptr)}});
    }
    return Json{{"pass", r.pass}, {"skipped", r.skipped}, {"points", pts}};
}

// ---------------------------------------------------------------------------
// Inputs

namespace {

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
    if (j.is_number()) return to_rational(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error("expected a number, got " + j.dump());
}

const Json& require(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

int int_from_json(const Json& j, const char* what)
{
    if (!j.is_number_integer()) throw Error(std::string(what) + " must be an integer");
    return j.get<int>();
}

}  // namespace

Gaussian scalar_from_json(const Json& j)
{
    if (j.is_array()) {
        if (j.size() != 2) throw Error("complex scalar must be [re, im]");
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    return Gaussian(rational_from_json(j));
}

DomainSpec domain_from_json(const Json& j)
{
    const int n = int_from_json(require(j, "n"), "n");
    const Json& F = require(j, "F");
    if (!F.is_string()) throw Error("F must be an expression string");
    std::string label = j.value("label", std::string{});
    return DomainSpec::from_text(n, F.get<std::string>(), std::move(label));
}

SequenceSpec sequence_from_json(const Json& j)
{
    const Json& kind = require(j, "kind");
    if (!kind.is_string()) throw Error("sequence kind must be a string");
    const std::string k = kind.get<std::string>();
    const Json params = j.value("params", Json::object());
    if (!params.is_object()) throw Error("sequence params must be an object");

    SequenceSpec seq;
    if (k == "normal") {
        seq.kind = SequenceSpec::Kind::normal;
    } else if (k == "cone") {
        seq.kind = SequenceSpec::Kind::cone;
        for (const auto& d : require(params, "direction")) seq.direction.push_back(scalar_from_json(d));
        if (params.contains("aperture")) seq.aperture = rational_from_json(params.at("aperture"));
    } else if (k == "tangential") {
        seq.kind = SequenceSpec::Kind::tangential;
        for (const auto& p : require(params, "powers")) seq.powers.push_back(int_from_json(p, "power"));
    } else if (k == "explicit") {
        seq.kind = SequenceSpec::Kind::explicit_list;
        for (const auto& pt : require(params, "points")) {
            std::vector<Gaussian> z;
            if (pt.is_string()) {
                z = parse_point(pt.get<std::string>());
            } else {
                for (const auto& c : pt) z.push_back(scalar_from_json(c));
            }
            seq.points.push_back(std::move(z));
        }
        seq.jmax = static_cast<int>(seq.points.size());
    } else {
        throw Error("unknown sequence kind \"" + k + "\"");
    }
    if (params.contains("rate")) {
        const std::string rate = params.at("rate").get<std::string>();
        if (rate == "harmonic") {
            seq.rate = SequenceSpec::Rate::harmonic;
        } else if (rate == "geometric") {
            seq.rate = SequenceSpec::Rate::geometric;
        } else {
            throw Error("unknown sequence rate \"" + rate + "\"");
        }
    }
    if (j.contains("jmax")) seq.jmax = int_from_json(j.at("jmax"), "jmax");
    if (seq.jmax < 1) throw Error("jmax must be positive");
    return seq;
}

RealPoly poly_from_json(const Json& j)
{
    if (j.is_string()) return parse_real_poly(j.get<std::string>(), 1);
    const Json& expr = require(j, "poly");
    if (!expr.is_string()) throw Error("poly must be an expression string");
    const int nvars = j.contains("nvars") ? int_from_json(j.at("nvars"), "nvars") : 1;
    return parse_real_poly(expr.get<std::string>(), nvars);
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path.string() + ": invalid JSON: " + e.what());
    }
}

std::vector<Gaussian> parse_point(std::string_view text)
{
    std::vector<Gaussian> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        std::string_view coord = text.substr(start, end - start);
        const std::size_t comma = coord.find(',');
        if (comma == std::string_view::npos) {
            out.emplace_back(parse_rational(coord));
        } else {
            out.emplace_back(parse_rational(coord.substr(0, comma)), parse_rational(coord.substr(comma + 1)));
        }
        start = end + 1;
    }
    return out;
}

std::vector<Gaussian> complete_boundary_point(const DomainSpec& spec, std::vector<Gaussian> point)
{
    const int n = spec.n();
    if (static_cast<int>(point.size()) == n) return point;
    if (static_cast<int>(point.size()) != n - 1) {
        throw ShapeError("point must have " + std::to_string(n - 1) + " or " + std::to_string(n) +
                         " coordinates");
    }
    point.emplace_back(0);
    const Gaussian F = evaluate_exact(spec.F().poly(), point);
    point.back() = Gaussian(Rational(-F.re));
    return point;
}

AnalyzeResult analyze(const DomainSpec& spec, const AnalyzeOptions& options)
{
    AnalyzeResult out;
    Json& r = out.report;
    std::vector<std::string> reasons;
    r["label"] = spec.label();
    r["n"] = spec.n();
    r["F"] = to_string(spec.F().poly());

    const NormalFormReport nf = validate_normal_form(spec);
    r["normal_form"] = to_json(nf);
    if (!nf.structure_ok()) reasons.push_back("not in normal form at the origin");

    try {
        const TypeResult t = dangelo_type_z1(spec);
        r["type"] = t.value;
        r["m"] = t.m();
        r["type_certified"] = t.certified;
        r["type_warnings"] = t.warnings;
        if (t.value % 2 != 0) reasons.push_back("odd minimal mixed degree in z1");
    } catch (const HypothesisError& e) {
        r["type"] = nullptr;
        reasons.push_back(e.what());
    }

    const std::vector<cdouble> origin(spec.n() - 1, cdouble(0));
    const LeviData levi = levi_form(spec, origin, options.rank_tol);
    r["rank"] = levi.rank;
    r["corank"] = levi.corank;
    r["levi_eigenvalues"] = levi.eigenvalues;
    r["strongly_pseudoconvex_at_origin"] = levi.corank == 0;
    if (levi.corank > 1) reasons.push_back("Levi corank exceeds 1 at the origin");

    const PseudoconvexityReport pc = pseudoconvexity_sample(spec, options.radius, options.count);
    r["pseudoconvexity"] = to_json(pc);
    if (!pc.pass) reasons.push_back("negative Levi eigenvalue sampled near the origin");

    out.hypotheses_pass = reasons.empty();
    r["hypotheses"] = out.hypotheses_pass ? "pass" : "fail";
    r["reasons"] = reasons;
    return out;
}

}  // namespace pscale
