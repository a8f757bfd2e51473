// pscale: normalize, rescale and take limits of rigid model domains.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pscale/parse.hpp"
#include "pscale/report.hpp"

namespace {

using pscale::Json;

enum Exit { ok = 0, input_error = 1, hypothesis_failure = 2, not_converged = 3 };

struct RunConfig {
    double tol = 1e-9;
    int jmax = 64;
    int window = 3;
    int samples = 4096;
    std::string output;
};

void emit(const Json& report, const std::string& output)
{
    const std::string text = report.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw pscale::Error("cannot write " + output);
    out << text;
}

pscale::DomainSpec load_domain(const std::string& path)
{
    return pscale::domain_from_json(pscale::read_json_file(path));
}

int model_m(const pscale::DomainSpec& spec)
{
    const pscale::TypeResult t = pscale::dangelo_type_z1(spec);
    if (t.value % 2 != 0) throw pscale::HypothesisError("odd minimal mixed degree " + std::to_string(t.value));
    return t.m();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scaling of rigid model domains of finite type"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string domain_file, seq_file, p_file, h_file, point_text, epsilon_text;
    double radius = 0.2;
    int count = 1024;

    auto* analyze = app.add_subcommand("analyze", "Check the normal form and hypotheses at the origin");
    analyze->add_option("domain", domain_file, "domain JSON")->required();
    analyze->add_option("--radius", radius, "pseudoconvexity sampling radius")->check(CLI::PositiveNumber);
    analyze->add_option("--count", count, "pseudoconvexity sample count")->check(CLI::PositiveNumber);

    auto* normalize = app.add_subcommand("normalize", "Normalize coordinates at a boundary point");
    normalize->add_option("domain", domain_file, "domain JSON")->required();
    normalize->add_option("--point", point_text, "boundary point \"re,im;re,im;...\"")->required();

    auto* scale = app.add_subcommand("scale", "Rescale the defining function at a boundary point");
    scale->add_option("domain", domain_file, "domain JSON")->required();
    scale->add_option("--point", point_text, "boundary point \"re,im;re,im;...\"")->required();
    scale->add_option("--epsilon", epsilon_text, "height epsilon > 0")->required();

    auto* limit = app.add_subcommand("limit", "Limit model along an interior sequence");
    limit->add_option("domain", domain_file, "domain JSON")->required();
    limit->add_option("sequence", seq_file, "sequence JSON")->required();
    limit->add_option("--tol", cfg.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    limit->add_option("--jmax", cfg.jmax, "number of sequence points");
    limit->add_option("--window", cfg.window, "tail window for the convergence test");
    limit->add_option("--samples", cfg.samples, "angles for the subharmonicity test")->check(CLI::PositiveNumber);

    auto* match = app.add_subcommand("match", "Match the top homogeneous part of P against H");
    match->add_option("P", p_file, "polynomial JSON")->required();
    match->add_option("H", h_file, "polynomial JSON")->required();
    match->add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
    match->add_option("--samples", cfg.samples, "angles for the subharmonicity test")->check(CLI::PositiveNumber);

    for (auto* sub : {analyze, normalize, scale, limit, match}) {
        sub->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    int stage = input_error;
    try {
        if (*analyze) {
            const auto spec = load_domain(domain_file);
            stage = hypothesis_failure;
            pscale::AnalyzeOptions opts;
            opts.radius = radius;
            opts.count = count;
            const auto res = pscale::analyze(spec, opts);
            emit(res.report, cfg.output);
            std::cerr << "hypotheses: " << (res.hypotheses_pass ? "pass" : "fail") << "\n";
            return res.hypotheses_pass ? ok : hypothesis_failure;
        }
        if (*normalize) {
            const auto spec = load_domain(domain_file);
            const auto point = pscale::complete_boundary_point(spec, pscale::parse_point(point_text));
            stage = hypothesis_failure;
            const auto norm = pscale::normalize_at(spec, point, model_m(spec));
            emit(pscale::to_json(norm), cfg.output);
            return ok;
        }
        if (*scale) {
            const auto spec = load_domain(domain_file);
            const auto point = pscale::complete_boundary_point(spec, pscale::parse_point(point_text));
            const pscale::Rational epsilon = pscale::parse_rational(epsilon_text);
            if (sgn(epsilon) <= 0) throw pscale::Error("epsilon must be positive");
            stage = hypothesis_failure;
            const int m = model_m(spec);
            const auto sd = pscale::rescaled_rho(spec, pscale::normalize_at(spec, point, m), epsilon, m);
            emit(pscale::to_json(sd), cfg.output);
            return ok;
        }
        if (*limit) {
            const auto spec = load_domain(domain_file);
            auto seq = pscale::sequence_from_json(pscale::read_json_file(seq_file));
            if (limit->count("--jmax") > 0) seq.jmax = cfg.jmax;
            if (cfg.window < 2 || seq.jmax < cfg.window) {
                throw pscale::Error("need jmax >= window >= 2");
            }
            stage = hypothesis_failure;
            pscale::LimitOptions opts;
            opts.tol = cfg.tol;
            opts.window = cfg.window;
            opts.samples = cfg.samples;
            const auto report = pscale::limit_polynomial(spec, seq, opts);
            Json out = pscale::to_json(report);
            emit(out, cfg.output);
            std::cerr << "limit model: Re w_n + P + sum |w_alpha|^2 with P = "
                      << pscale::to_decimal_string(report.P_limit.poly())
                      << "; strongly pseudoconvex: " << (report.model.is_strongly_pseudoconvex_model ? "yes" : "no")
                      << (report.converged ? "" : " (not converged)") << "\n";
            return report.converged ? ok : not_converged;
        }
        if (*match) {
            const auto P = pscale::poly_from_json(pscale::read_json_file(p_file));
            const auto H = pscale::poly_from_json(pscale::read_json_file(h_file));
            stage = hypothesis_failure;
            const auto m = pscale::match_top_homogeneous(P, H, cfg.tol, cfg.samples);
            emit(pscale::to_json(m), cfg.output);
            return ok;
        }
    } catch (const pscale::ParseError& e) {
        std::cerr << "error: parse error: " << e.what() << "\n";
        return input_error;
    } catch (const pscale::HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hypothesis_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return stage == input_error ? input_error : hypothesis_failure;
    }
    return input_error;
}
