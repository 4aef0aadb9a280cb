#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pointpair/analysis.hpp"
#include "pointpair/error.hpp"
#include "pointpair/oracles.hpp"
#include "pointpair/viz.hpp"

namespace py = pybind11;
using namespace pointpair;

namespace {

// Domains, metrics and points cross the boundary in their text/list forms.
Domain D(const std::string& s) { return parse_domain(s); }
MetricSpec M(const std::string& s) { return parse_metric(s); }
Point P(const std::vector<double>& v) { return Point(v); }

py::dict triple_dict(const Triple& t) {
    py::dict d;
    d["x"] = t.x.values();
    d["y"] = t.y.values();
    d["z"] = t.z.values();
    return d;
}

py::object violation_obj(const std::optional<Violation>& v) {
    if (!v) return py::none();
    py::dict d;
    d["triple"] = triple_dict(v->triple);
    d["ratio"] = v->ratio;
    return d;
}

SearchOptions opts(unsigned workers) {
    SearchOptions o;
    o.workers = workers;
    return o;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Point pair function metrics and the numerical machinery around them";

    auto& base = py::register_exception<Error>(m, "PointPairError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    m.attr("SQRT5_OVER_2") = kSqrt5Over2;

    m.def("boundary_distance", [](const std::string& d, const std::vector<double>& x) {
        return boundary_distance(D(d), P(x));
    }, py::arg("domain"), py::arg("x"));
    m.def("contains", [](const std::string& d, const std::vector<double>& x) { return contains(D(d), P(x)); },
          py::arg("domain"), py::arg("x"));
    m.def("sample_interior", [](const std::string& d, std::uint64_t seed, std::size_t count) {
        std::vector<std::vector<double>> out;
        for (const auto& p : sample_interior(D(d), seed, count)) out.push_back(p.values());
        return out;
    }, py::arg("domain"), py::arg("seed"), py::arg("count"));

    m.def("evaluate", [](const std::string& metric, const std::string& d, const std::vector<double>& x,
                         const std::vector<double>& y) { return evaluate(M(metric), D(d), P(x), P(y)); },
          py::arg("metric"), py::arg("domain"), py::arg("x"), py::arg("y"));
    m.def("psi_alpha", [](double a, const std::vector<double>& x, const std::vector<double>& y) {
        return psi_alpha(a, P(x), P(y));
    }, py::arg("alpha"), py::arg("x"), py::arg("y"));
    m.def("triangle_ratio", [](const std::string& metric, const std::string& d, const std::vector<double>& x,
                               const std::vector<double>& y, const std::vector<double>& z) {
        return triangle_ratio(M(metric), D(d), Triple{P(x), P(y), P(z)});
    }, py::arg("metric"), py::arg("domain"), py::arg("x"), py::arg("y"), py::arg("z"));

    m.def("estimate_quasi_constant", [](const std::string& metric, const std::string& d, std::int64_t budget,
                                        std::uint64_t seed, unsigned workers) {
        QuasiEstimate e;
        {
            py::gil_scoped_release release;
            e = estimate_quasi_constant(M(metric), D(d), budget, seed, opts(workers));
        }
        py::dict r;
        r["c_hat"] = e.c_hat;
        r["witness"] = triple_dict(e.witness);
        r["evaluations"] = e.evaluations;
        r["converged"] = e.converged;
        return r;
    }, py::arg("metric"), py::arg("domain"), py::arg("budget") = 100000, py::arg("seed") = 0, py::arg("workers") = 1);

    m.def("find_violation", [](const std::string& metric, const std::string& d, std::int64_t budget,
                               std::uint64_t seed, unsigned workers) {
        std::optional<Violation> v;
        {
            py::gil_scoped_release release;
            v = find_violation(M(metric), D(d), budget, seed, opts(workers));
        }
        return violation_obj(v);
    }, py::arg("metric"), py::arg("domain"), py::arg("budget") = 100000, py::arg("seed") = 0, py::arg("workers") = 1);

    m.def("alpha_threshold", [](const std::string& d, double lo, double hi, double tol, std::int64_t budget,
                                std::uint64_t seed, const std::string& family, unsigned workers) {
        if (family != "ppf" && family != "psi") throw ParameterError("family must be 'ppf' or 'psi'");
        const auto f = family == "psi" ? AlphaFamily::InversionPsi : AlphaFamily::GeneralizedPointPair;
        ThresholdReport r;
        {
            py::gil_scoped_release release;
            r = alpha_threshold(D(d), lo, hi, tol, budget, seed, f, opts(workers));
        }
        py::dict out;
        out["alpha_low"] = r.alpha_low;
        out["alpha_high"] = r.alpha_high ? py::cast(*r.alpha_high) : py::none();
        py::list probes;
        for (const auto& p : r.probes) probes.append(py::make_tuple(p.alpha, violation_obj(p.violation)));
        out["probes"] = probes;
        return out;
    }, py::arg("domain"), py::arg("lo"), py::arg("hi"), py::arg("tol"), py::arg("budget") = 100000,
       py::arg("seed") = 0, py::arg("family") = "ppf", py::arg("workers") = 1);

    m.def("ball_counterexample", [](double a, std::size_t n) { return violation_obj(ball_counterexample(a, n)); },
          py::arg("alpha"), py::arg("n") = 2);
    m.def("rplus_violation_from_t", [](double a, double t) { return triple_dict(rplus_violation_from_t(a, t)); },
          py::arg("alpha"), py::arg("t"));
    m.def("sharpness_witness", [](const std::vector<double>& z0, double r, const std::vector<double>& dir) {
        return triple_dict(sharpness_witness(P(z0), r, P(dir)));
    }, py::arg("z0"), py::arg("r"), py::arg("direction"));
    m.def("c_star", &c_star, py::arg("alpha"));
    m.def("c_star_k", &c_star_k, py::arg("alpha"));
    m.def("classify_1d", [](const std::string& d) {
        const auto c = classify_1d(D(d));
        return py::make_tuple(c.metric, c.constant);
    }, py::arg("domain"));

    m.def("lemma31_margin", &oracles::lemma31_margin, py::arg("x"), py::arg("z"), py::arg("y"));
    m.def("h_poly", &oracles::h_poly, py::arg("zeta"));
    m.def("lemma41_margin", [](double x, double y, double u, double v) {
        const auto r = oracles::lemma41_margin(x, y, u, v);
        return py::make_tuple(r.arsh, r.th);
    }, py::arg("x"), py::arg("y"), py::arg("u"), py::arg("v"));
    m.def("lemma52_margin", &oracles::lemma52_margin, py::arg("B"), py::arg("C"), py::arg("b"), py::arg("c"));
    m.def("rplus_margin", &oracles::rplus_margin, py::arg("alpha"), py::arg("t"));

    m.def("trace_disk", [](const std::string& metric, const std::string& d, const std::vector<double>& center,
                           double level, int rays, const std::string& format) {
        const DiskTrace tr = trace_disk(M(metric), D(d), P(center), level, rays);
        if (format == "csv") return py::object(py::str(emit_trace(tr, TraceFormat::Csv)));
        if (format == "svg") return py::object(py::str(emit_trace(tr, TraceFormat::Svg)));
        if (!format.empty()) throw ParameterError("format must be '', 'csv' or 'svg'");
        py::list rows;
        for (std::size_t i = 0; i < tr.polyline.size(); ++i)
            rows.append(py::make_tuple(tr.polyline[i].angle, tr.polyline[i].crossing.values(),
                                       static_cast<bool>(tr.multiplicity_flags[i])));
        return py::object(rows);
    }, py::arg("metric"), py::arg("domain"), py::arg("center"), py::arg("level"), py::arg("rays") = 360,
       py::arg("format") = "");
}
