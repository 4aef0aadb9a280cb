#include "pointpair/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointpair/analysis.hpp"
#include "pointpair/error.hpp"
#include "pointpair/oracles.hpp"
#include "pointpair/viz.hpp"

namespace pointpair::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
    std::string command;
    std::string kind; // witness kind, oracle or conjecture selector
    std::string domain;
    std::string metric = "ppf";
    std::uint64_t seed = 0;
    std::int64_t budget = 100000;
    double tol = 1e-6;
    std::string out;
    std::string format = "json";
    std::string x, y, z, center;
    double lo = 1.0;
    double hi = 50.0;
    std::optional<double> alpha;
    std::optional<double> t;
    double level = 0.5;
    int rays = 360;
    unsigned workers = 0; // 0 = hardware concurrency; results do not depend on it
};

json point_json(const Point& p) {
    json a = json::array();
    for (double c : p.coords()) a.push_back(c);
    return a;
}

json triple_json(const Triple& t) {
    return {{"x", point_json(t.x)}, {"y", point_json(t.y)}, {"z", point_json(t.z)}};
}

json sample_json(const oracles::MarginSample& s) {
    return {{"inputs", s.inputs}, {"margin", s.margin}};
}

json sweep_json(const oracles::SweepSummary& s) {
    return {{"samples", s.samples}, {"min", sample_json(s.min)}, {"failures", s.failures}};
}

json report_json(const ThresholdReport& r) {
    json j{{"alpha_low", r.alpha_low}};
    j["alpha_high"] = r.alpha_high ? json(*r.alpha_high) : json(nullptr);
    j["width"] = r.alpha_high ? json(r.width()) : json(nullptr);
    j["probes"] = r.probes.size();
    return j;
}

json probe_json(const ThresholdProbe& p) {
    json j{{"record", "probe"}, {"alpha", p.alpha}, {"found", p.violation.has_value()}};
    if (p.violation) {
        j["triple"] = triple_json(p.violation->triple);
        j["ratio"] = p.violation->ratio;
    }
    return j;
}

std::int64_t positive_budget(const Config& c) {
    if (c.budget < 1) throw ParameterError("--budget must be positive");
    return c.budget;
}

SearchOptions search_options(const Config& c) {
    SearchOptions o;
    o.workers = c.workers;
    return o;
}

const std::string& require(const std::string& value, const char* flag) {
    if (value.empty()) throw ParameterError(std::string(flag) + " is required for this command");
    return value;
}

double require_alpha(const Config& c) {
    if (!c.alpha) throw ParameterError("--alpha is required for this command");
    return *c.alpha;
}

Domain domain_or(const Config& c, const char* fallback) {
    return parse_domain(c.domain.empty() ? std::string(fallback) : c.domain);
}

Point point_in(const Domain& d, const std::string& text, const char* flag) {
    Point p = parse_point(require(text, flag));
    if (p.dim() != d.dim())
        throw DimensionError(std::string(flag) + " has dimension " + std::to_string(p.dim()) +
                             " but the domain has dimension " + std::to_string(d.dim()));
    return p;
}

AlphaFamily family_of(const MetricSpec& m) {
    return m.family() == MetricSpec::Family::InversionPsi ? AlphaFamily::InversionPsi
                                                          : AlphaFamily::GeneralizedPointPair;
}

// Each command fills inputs/result/diagnostics and may append detail records.
struct Output {
    json inputs = json::object();
    json result = json::object();
    json diagnostics = json::object();
    std::vector<json> details;
    std::optional<std::string> artifact; // CSV or SVG payload
};

void cmd_eval(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const MetricSpec m = parse_metric(c.metric);
    const Point x = point_in(d, c.x, "--x");
    const Point y = point_in(d, c.y, "--y");
    o.inputs = {{"domain", to_string(d)}, {"metric", to_string(m)}, {"x", point_json(x)}, {"y", point_json(y)}};
    o.result = {{"value", evaluate(m, d, x, y)}};
    o.diagnostics = {{"d_x", boundary_distance(d, x)}, {"d_y", boundary_distance(d, y)}, {"euclidean", distance(x, y)}};
}

void cmd_dist(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const Point x = point_in(d, c.x, "--x");
    o.inputs = {{"domain", to_string(d)}, {"x", point_json(x)}};
    o.result = {{"d", boundary_distance(d, x)}};
}

void cmd_quasi(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const MetricSpec m = parse_metric(c.metric);
    o.inputs = {{"domain", to_string(d)}, {"metric", to_string(m)}, {"budget", c.budget}, {"seed", c.seed}};
    const auto e = estimate_quasi_constant(m, d, positive_budget(c), c.seed, search_options(c));
    o.result = {{"c_hat", e.c_hat}, {"witness", triple_json(e.witness)}};
    o.diagnostics = {{"evaluations", e.evaluations}, {"restarts", e.restarts}, {"converged", e.converged},
                     {"excess_over_sqrt5_2", e.c_hat - kSqrt5Over2}};
}

void cmd_violate(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const MetricSpec m = parse_metric(c.metric);
    o.inputs = {{"domain", to_string(d)}, {"metric", to_string(m)}, {"budget", c.budget}, {"seed", c.seed}};
    const auto v = find_violation(m, d, positive_budget(c), c.seed, search_options(c));
    o.result = {{"found", v.has_value()}};
    if (v) {
        o.result["triple"] = triple_json(v->triple);
        o.result["ratio"] = v->ratio;
    }
    o.diagnostics = {{"threshold", 1.0 + search_options(c).violation_margin}};
}

void cmd_threshold(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const MetricSpec m = parse_metric(c.metric);
    const AlphaFamily f = family_of(m);
    o.inputs = {{"domain", to_string(d)}, {"family", f == AlphaFamily::InversionPsi ? "psi" : "ppf"},
                {"lo", c.lo}, {"hi", c.hi}, {"tol", c.tol}, {"budget", c.budget}, {"seed", c.seed}};
    const auto r = alpha_threshold(d, c.lo, c.hi, c.tol, positive_budget(c), c.seed, f, search_options(c));
    for (const auto& p : r.probes) o.details.push_back(probe_json(p));
    o.result = report_json(r);
    o.result["brackets_12"] = r.brackets(12.0);
}

void cmd_witness(const Config& c, Output& o) {
    const std::string& kind = c.kind;
    if (kind == "sharpness") {
        const Domain d = domain_or(c, "ball:2");
        const Point z0 = c.z.empty() ? Point::zero(d.dim()) : point_in(d, c.z, "--z");
        const double r = boundary_distance(d, z0);
        const Triple t = sharpness_witness(z0, r, Point::unit(d.dim(), 0));
        o.inputs = {{"kind", kind}, {"domain", to_string(d)}, {"z0", point_json(z0)}};
        o.result = {{"triple", triple_json(t)}, {"radius", r},
                    {"ratio", triangle_ratio(MetricSpec::point_pair(), d, t)}};
    } else if (kind == "ball") {
        const Domain d = domain_or(c, "ball:2");
        if (!d.is<UnitBall>()) throw UnsupportedDomainError("the ball witness needs a ball:n domain");
        const double alpha = require_alpha(c);
        const Violation v = ball_counterexample(alpha, d.dim());
        o.inputs = {{"kind", kind}, {"domain", to_string(d)}, {"alpha", alpha}};
        o.result = {{"triple", triple_json(v.triple)}, {"ratio", v.ratio},
                    {"k", alpha / (4.0 + alpha)}};
    } else if (kind == "rplus") {
        const double alpha = require_alpha(c);
        const double t = c.t ? *c.t : 0.5 * (2.0 + (alpha - 6.0) / 3.0);
        const Triple w = rplus_violation_from_t(alpha, t);
        o.inputs = {{"kind", kind}, {"alpha", alpha}, {"t", t}};
        o.result = {{"triple", triple_json(w)},
                    {"ratio", triangle_ratio(MetricSpec::generalized(alpha), Domain::positive_axis(), w)},
                    {"margin", oracles::rplus_margin(alpha, t)}};
    } else if (kind == "cstar") {
        const double alpha = require_alpha(c);
        o.inputs = {{"kind", kind}, {"alpha", alpha}};
        o.result = {{"k", c_star_k(alpha)}, {"c_star", c_star(alpha)}};
    } else if (kind == "classify") {
        const Domain d = parse_domain(require(c.domain, "--domain"));
        const auto cls = classify_1d(d);
        o.inputs = {{"kind", kind}, {"domain", to_string(d)}};
        o.result = {{"metric", cls.metric}, {"constant", cls.constant}};
    } else {
        throw ParameterError("unknown witness kind '" + kind + "'");
    }
}

void cmd_oracle(const Config& c, Output& o) {
    const std::string& which = c.kind;
    const std::int64_t n = positive_budget(c);
    o.inputs = {{"which", which}, {"samples", n}, {"seed", c.seed}};
    std::vector<oracles::MarginSample> records;
    if (which == "lemma31") {
        const auto s = oracles::sweep_lemma31(n, c.seed, c.workers);
        const auto r = oracles::refine_lemma31(c.seed);
        o.result = sweep_json(s);
        o.result["refined"] = sample_json(r);
        if (c.format == "csv") records = oracles::samples_lemma31(n, c.seed);
    } else if (which == "h") {
        o.inputs = {{"which", which}, {"points", n}};
        o.result = sweep_json(oracles::sweep_h(n));
        o.result["h_at_one_fifth"] = oracles::h_poly(0.2);
    } else if (which == "lemma41") {
        o.result = sweep_json(oracles::sweep_lemma41(n, c.seed, c.workers));
        if (c.format == "csv") records = oracles::samples_lemma41(n, c.seed);
    } else if (which == "lemma52") {
        o.result = sweep_json(oracles::sweep_lemma52(n, c.seed, c.workers));
        if (c.format == "csv") records = oracles::samples_lemma52(n, c.seed);
    } else if (which == "rplus") {
        const double alpha = require_alpha(c);
        o.inputs = {{"which", which}, {"alpha", alpha}, {"points", n}, {"t_lo", 2.0}, {"t_hi", 100.0}};
        const auto s = oracles::sweep_rplus(alpha, n);
        o.result = sweep_json(s);
        o.result["nonnegative"] = s.min.margin >= 0.0;
    } else {
        throw ParameterError("unknown oracle '" + which + "'");
    }
    if (c.format == "csv") {
        if (records.empty()) throw ParameterError("--format csv is only available for the sampled oracles");
        std::ostringstream csv;
        csv.precision(17);
        csv << "index,inputs,margin\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            csv << i << ",";
            for (std::size_t k = 0; k < records[i].inputs.size(); ++k)
                csv << (k ? ";" : "") << records[i].inputs[k];
            csv << "," << records[i].margin << "\n";
        }
        o.artifact = csv.str();
    }
}

void cmd_disk(const Config& c, Output& o) {
    const Domain d = parse_domain(require(c.domain, "--domain"));
    const MetricSpec m = parse_metric(c.metric);
    const Point center = point_in(d, c.center, "--center");
    o.inputs = {{"domain", to_string(d)}, {"metric", to_string(m)}, {"center", point_json(center)},
                {"level", c.level}, {"rays", c.rays}};
    const DiskTrace tr = trace_disk(m, d, center, c.level, c.rays, c.workers);
    double worst = 0.0;
    for (const auto& r : tr.polyline) worst = std::max(worst, std::abs(evaluate(m, d, r.crossing, center) - c.level));
    const auto flagged = std::count(tr.multiplicity_flags.begin(), tr.multiplicity_flags.end(), true);
    o.result = {{"crossings", tr.polyline.size()}, {"flagged_rays", flagged},
                {"first", point_json(tr.polyline.front().crossing)}};
    o.diagnostics = {{"max_level_residual", worst}};
    if (c.format == "csv") o.artifact = emit_trace(tr, TraceFormat::Csv);
    if (c.format == "svg") o.artifact = emit_trace(tr, TraceFormat::Svg);
}

json threshold_evidence(const Domain& d, AlphaFamily f, const Config& c) {
    const auto r = alpha_threshold(d, c.lo, c.hi, c.tol, positive_budget(c), c.seed, f, search_options(c));
    json j = report_json(r);
    j["domain"] = to_string(d);
    j["distance_from_12"] =
        r.alpha_high ? json(0.5 * (r.alpha_low + *r.alpha_high) - 12.0) : json(nullptr);
    j["brackets_12"] = r.brackets(12.0);
    return j;
}

void cmd_conjecture(const Config& c, Output& o) {
    const std::string& which = c.kind;
    o.inputs = {{"which", which}, {"budget", c.budget}, {"seed", c.seed}};
    o.result = {{"label", "evidence"}};
    if (which == "exterior-threshold" || which == "psi-threshold") {
        o.inputs["lo"] = c.lo;
        o.inputs["hi"] = c.hi;
        o.inputs["tol"] = c.tol;
        json brackets = json::array();
        if (which == "exterior-threshold") {
            for (std::size_t n : {2, 3})
                brackets.push_back(threshold_evidence(Domain::exterior_ball(n), AlphaFamily::GeneralizedPointPair, c));
        } else {
            brackets.push_back(threshold_evidence(Domain::punctured_ball(2), AlphaFamily::InversionPsi, c));
        }
        o.result["brackets"] = brackets;
    } else if (which == "axis3d-metric") {
        const auto v = find_violation(MetricSpec::point_pair(), Domain::punctured_axis3d(),
                                      positive_budget(c), c.seed, search_options(c));
        o.result["found"] = v.has_value();
        if (v) {
            o.result["triple"] = triple_json(v->triple);
            o.result["ratio"] = v->ratio;
        }
    } else if (which == "ball-cstar") {
        const Domain d = domain_or(c, "ball:2");
        o.inputs["domain"] = to_string(d);
        json rows = json::array();
        for (double alpha : {1.0, 4.0, 12.0}) {
            const auto e = estimate_quasi_constant(MetricSpec::generalized(alpha), d, positive_budget(c),
                                                   c.seed, search_options(c));
            rows.push_back({{"alpha", alpha}, {"c_hat", e.c_hat}, {"c_star", c_star(alpha)},
                            {"difference", e.c_hat - c_star(alpha)}, {"witness", triple_json(e.witness)}});
        }
        o.result["rows"] = rows;
    } else {
        throw ParameterError("unknown conjecture '" + which + "'");
    }
}

void dispatch(const Config& c, Output& o) {
    if (c.command == "eval") return cmd_eval(c, o);
    if (c.command == "dist") return cmd_dist(c, o);
    if (c.command == "quasi") return cmd_quasi(c, o);
    if (c.command == "violate") return cmd_violate(c, o);
    if (c.command == "threshold") return cmd_threshold(c, o);
    if (c.command == "witness") return cmd_witness(c, o);
    if (c.command == "oracle") return cmd_oracle(c, o);
    if (c.command == "disk") return cmd_disk(c, o);
    if (c.command == "conjecture") return cmd_conjecture(c, o);
    throw ParameterError("no command given");
}

void check_format(const Config& c) {
    if (c.format != "json" && c.format != "csv" && c.format != "svg")
        throw ParameterError("--format must be json, csv or svg");
    if (c.format == "svg" && c.command != "disk") throw ParameterError("--format svg is only for disk");
    if (c.format == "csv" && c.command != "disk" && c.command != "oracle")
        throw ParameterError("--format csv is only for disk and oracle");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Point pair function metrics: evaluation, searches, witnesses and oracles", "ppf"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--budget", c.budget, "Sample budget (samples or grid points for oracles)");
        sub->add_option("--workers", c.workers, "Worker threads (0 = hardware concurrency)");
        sub->add_option("--out", c.out, "Output file (default: standard output)");
        sub->add_option("--format", c.format, "json, csv or svg");
    };
    auto where = [&](CLI::App* sub) {
        sub->add_option("--domain", c.domain, "Domain text form, e.g. interval:-1:1, ball:2, rplus");
        sub->add_option("--metric", c.metric, "Metric text form, e.g. ppf, ppf:alpha=12, s, psi:alpha=4");
    };
    auto range = [&](CLI::App* sub) {
        sub->add_option("--lo", c.lo, "Lower alpha");
        sub->add_option("--hi", c.hi, "Upper alpha");
        sub->add_option("--tol", c.tol, "Bracket width");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate m(x, y)");
    where(eval), common(eval);
    eval->add_option("--x", c.x), eval->add_option("--y", c.y);

    auto* dist = app.add_subcommand("dist", "Distance to the boundary");
    where(dist), common(dist);
    dist->add_option("--x", c.x);

    auto* quasi = app.add_subcommand("quasi", "Estimate the quasi-metric constant");
    where(quasi), common(quasi);

    auto* violate = app.add_subcommand("violate", "Search for a triangle-inequality violation");
    where(violate), common(violate);

    auto* threshold = app.add_subcommand("threshold", "Bracket the largest alpha giving a metric");
    where(threshold), common(threshold), range(threshold);

    auto* witness = app.add_subcommand("witness", "Explicit witnesses and closed forms");
    witness->add_option("kind", c.kind, "sharpness, ball, rplus, cstar or classify")->required();
    where(witness), common(witness);
    witness->add_option("--alpha", c.alpha);
    witness->add_option("--t", c.t, "Parameter of the rplus witness, 2 < t < (alpha-6)/3");
    witness->add_option("--z", c.z, "Center of the sharpness witness");

    auto* oracle = app.add_subcommand("oracle", "Sweep one of the auxiliary inequalities");
    oracle->add_option("kind", c.kind, "lemma31, h, lemma41, lemma52 or rplus")->required();
    common(oracle);
    oracle->add_option("--alpha", c.alpha);

    auto* disk = app.add_subcommand("disk", "Trace a metric disk boundary");
    where(disk), common(disk);
    disk->add_option("--center", c.center);
    disk->add_option("--level", c.level);
    disk->add_option("--rays", c.rays);

    auto* conjecture = app.add_subcommand("conjecture", "Numerical evidence for the open problems");
    conjecture->add_option("kind", c.kind, "exterior-threshold, psi-threshold, axis3d-metric or ball-cstar")->required();
    common(conjecture), range(conjecture);
    conjecture->add_option("--domain", c.domain);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    c.command = app.get_subcommands().front()->get_name();

    Output o;
    try {
        check_format(c);
        dispatch(c, o);
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    json summary{{"command", c.command}, {"inputs", o.inputs}, {"result", o.result},
                 {"diagnostics", o.diagnostics}};

    std::ofstream file;
    if (!c.out.empty()) {
        file.open(c.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << c.out << " for writing\n";
            return kValidation;
        }
    }
    std::ostream& sink = c.out.empty() ? out : static_cast<std::ostream&>(file);
    if (o.artifact) {
        // The payload goes to the sink; the summary follows on standard output
        // only when the payload went to a file.
        sink << *o.artifact;
        if (!c.out.empty()) out << summary.dump() << "\n";
    } else {
        for (const auto& d : o.details) sink << d.dump() << "\n";
        sink << summary.dump() << "\n";
    }
    sink.flush();
    return kOk;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace pointpair::cli
