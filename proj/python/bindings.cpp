// Python bindings: every operation takes and returns JSON text.

#include <pybind11/pybind11.h>

#include "pscale/parse.hpp"
#include "pscale/report.hpp"

namespace py = pybind11;
using pscale::Json;

namespace {

int model_m(const pscale::DomainSpec& spec)
{
    const pscale::TypeResult t = pscale::dangelo_type_z1(spec);
    if (t.value % 2 != 0) throw pscale::HypothesisError("odd minimal mixed degree " + std::to_string(t.value));
    return t.m();
}

pscale::DomainSpec load_domain(const std::string& text) { return pscale::domain_from_json(Json::parse(text)); }

std::vector<pscale::Gaussian> load_point(const pscale::DomainSpec& spec, const std::string& point)
{
    return pscale::complete_boundary_point(spec, pscale::parse_point(point));
}

std::string parse(const std::string& expr, int nvars)
{
    const pscale::Poly p = pscale::parse_poly(expr, nvars);
    Json out;
    out["expr"] = pscale::to_string(p);
    out["degree"] = p.degree();
    out["terms"] = pscale::terms_to_json(p);
    return out.dump();
}

std::string analyze(const std::string& domain, double radius, int count)
{
    pscale::AnalyzeOptions opts;
    opts.radius = radius;
    opts.count = count;
    return pscale::analyze(load_domain(domain), opts).report.dump();
}

std::string normalize(const std::string& domain, const std::string& point)
{
    const auto spec = load_domain(domain);
    return pscale::to_json(pscale::normalize_at(spec, load_point(spec, point), model_m(spec))).dump();
}

std::string scale(const std::string& domain, const std::string& point, const std::string& epsilon)
{
    const auto spec = load_domain(domain);
    const pscale::Rational eps = pscale::parse_rational(epsilon);
    if (sgn(eps) <= 0) throw pscale::Error("epsilon must be positive");
    const int m = model_m(spec);
    return pscale::to_json(pscale::rescaled_rho(spec, pscale::normalize_at(spec, load_point(spec, point), m), eps, m))
        .dump();
}

std::string limit(const std::string& domain, const std::string& sequence, double tol, int window, int samples)
{
    pscale::LimitOptions opts;
    opts.tol = tol;
    opts.window = window;
    opts.samples = samples;
    return pscale::to_json(pscale::limit_polynomial(load_domain(domain), pscale::sequence_from_json(Json::parse(sequence)),
                                                    opts))
        .dump();
}

std::string classify(const std::string& poly, int samples)
{
    return pscale::to_json(pscale::classify_model(pscale::poly_from_json(Json::parse(poly)), samples)).dump();
}

std::string match(const std::string& P, const std::string& H, double tol, int samples)
{
    return pscale::to_json(pscale::match_top_homogeneous(pscale::poly_from_json(Json::parse(P)),
                                                         pscale::poly_from_json(Json::parse(H)), tol, samples))
        .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Normalization, scaling and limit models of rigid finite-type domains";

    auto error = py::register_exception<pscale::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<pscale::ParseError>(m, "ParseError", error.ptr());
    py::register_exception<pscale::ShapeError>(m, "ShapeError", error.ptr());
    py::register_exception<pscale::DegreeCapExceeded>(m, "DegreeCapExceeded", error.ptr());
    py::register_exception<pscale::HypothesisError>(m, "HypothesisError", error.ptr());
    py::register_exception<nlohmann::json::exception>(m, "JSONError", PyExc_ValueError);

    m.def("parse", &parse, py::arg("expr"), py::arg("nvars") = 1);
    m.def("analyze", &analyze, py::arg("domain"), py::arg("radius") = 0.2, py::arg("count") = 1024);
    m.def("normalize", &normalize, py::arg("domain"), py::arg("point"));
    m.def("scale", &scale, py::arg("domain"), py::arg("point"), py::arg("epsilon"));
    m.def("limit", &limit, py::arg("domain"), py::arg("sequence"), py::arg("tol") = 1e-9, py::arg("window") = 3,
          py::arg("samples") = 4096);
    m.def("classify", &classify, py::arg("poly"), py::arg("samples") = 4096);
    m.def("match", &match, py::arg("P"), py::arg("H"), py::arg("tol") = 1e-9, py::arg("samples") = 4096);
}
