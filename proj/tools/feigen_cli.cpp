// feigen: command-line front end.
//
// Exit codes: 0 ok, 2 configuration, 3 evaluation, 4 no cascade, 5 refutation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "feigen/feigen.hpp"

namespace {

using namespace feigen;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEval = 3;
constexpr int kExitNoCascade = 4;
constexpr int kExitRefuted = 5;

struct Options {
    std::string catalog_name;
    std::string expr;
    std::string family_file;
    std::string domain;
    std::string orientation;
    std::string range;
    std::vector<std::string> params;
    std::string format = "json";
    std::string output;
    int workers = 1;
    std::string precision = "auto";

    // per command
    std::optional<double> seed;
    std::string scan;
    long transient = -1;
    int samples = 200;
    int depth = 5;
    double direction = 0.0;
    std::string along;
    std::optional<double> degree;
    std::string degrees;
    std::string t_range;
    bool superstable = false;
    std::string sweep;
    int grid = 200;
    std::string interval;
    std::optional<double> at;
    int level = 3;
    std::string order;
    std::string dir;
    std::string suite_file;
    bool timing = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const std::string t = detail::trim(s);
        if (t == "inf") return kInf;
        if (t == "-inf") return -kInf;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + what + ": '" + s + "'");
    }
}

Interval to_interval(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) throw ConfigError(what + " needs lo:hi");
    Interval r{to_double(parts[0], what), to_double(parts[1], what)};
    if (!(r.lo < r.hi)) throw ConfigError(what + " needs lo < hi");
    return r;
}

Params parse_params(const std::vector<std::string>& items) {
    Params p{};
    for (const auto& item : items) {
        for (const auto& kv : split(item, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("parameter must look like a=value: '" + kv + "'");
            const std::string k = detail::trim(kv.substr(0, eq));
            const double v = to_double(kv.substr(eq + 1), k);
            if (k == "a") p.a = v;
            else if (k == "b") p.b = v;
            else throw ConfigError("unknown parameter '" + k + "'");
        }
    }
    return p;
}

Orientation to_orientation(const std::string& s) {
    if (s == "increasing" || s == "inc") return Orientation::increasing;
    if (s == "decreasing" || s == "dec") return Orientation::decreasing;
    throw ConfigError("orientation must be increasing or decreasing");
}

// key = value lines: expr, domain, orientation, range, name.
MapFamily family_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open family file '" + path + "'");
    std::string line, expr, name;
    Interval domain{0.0, 1.0};
    std::optional<Interval> range;
    Orientation o = Orientation::increasing;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("family file line needs key = value: '" + line + "'");
        const std::string k = detail::trim(line.substr(0, eq)), v = detail::trim(line.substr(eq + 1));
        if (k == "expr") expr = v;
        else if (k == "domain") domain = to_interval(v, "domain");
        else if (k == "orientation") o = to_orientation(v);
        else if (k == "range") range = to_interval(v, "range");
        else if (k == "name") name = v;
        else throw ConfigError("unknown family file key '" + k + "'");
    }
    if (expr.empty()) throw ConfigError("family file has no expr");
    MapFamily fam = parse_family(expr, domain, o, name);
    fam.set_search_region(domain.bounded() ? domain : Interval{-10.0, 10.0});
    if (range) fam.set_param_range(*range);
    return fam;
}

MapFamily load_family(const Options& o, bool need_param = true) {
    const int sources = int(!o.catalog_name.empty()) + int(!o.expr.empty()) + int(!o.family_file.empty());
    if (sources != 1) throw ConfigError("give exactly one of --catalog, --expr, --family-file");
    MapFamily fam;
    if (!o.catalog_name.empty()) {
        if (o.catalog_name == "feigenmap" && (o.degree || !o.degrees.empty())) {
            double l = o.degree.value_or(2.0), r = l;
            if (!o.degrees.empty()) {
                const auto parts = split(o.degrees, ',');
                if (parts.size() != 2) throw ConfigError("--degrees needs left,right");
                l = to_double(parts[0], "degree");
                r = to_double(parts[1], "degree");
            }
            fam = feigenmap(l, r);
        } else {
            fam = catalog(o.catalog_name);
        }
        if (!o.domain.empty()) {
            MapFamily g(fam.name(), fam.expr(), to_interval(o.domain, "domain"), fam.orientation());
            g.set_param_range(fam.param_range()).set_search_region(fam.search_region()).set_steps(fam.steps());
            fam = g;
        }
    } else if (!o.expr.empty()) {
        const Interval dom = o.domain.empty() ? Interval{0.0, 1.0} : to_interval(o.domain, "domain");
        fam = MapFamily(o.expr, parse_expression(o.expr), dom, Orientation::increasing);
        fam.set_search_region(dom.bounded() ? dom : Interval{-10.0, 10.0});
    } else {
        fam = family_from_file(o.family_file);
    }
    if (!o.orientation.empty()) fam.set_orientation(to_orientation(o.orientation));
    if (!o.range.empty()) fam.set_param_range(to_interval(o.range, "range"));
    if (need_param && fam.param_count() == 0) throw ConfigError("no parameter (a or b) in expression");
    return fam;
}

CascadeOptions cascade_options(const Options& o) {
    CascadeOptions c;
    if (o.precision == "double") c.precision = Precision::float64;
    else if (o.precision == "dd") c.precision = Precision::double_double;
    else if (o.precision == "auto") c.precision = Precision::automatic;
    else throw ConfigError("precision must be double, dd or auto");
    if (!o.t_range.empty()) c.t_range = to_interval(o.t_range, "t-range");
    c.continue_to_superstable = o.superstable;
    return c;
}

// One-parameter path along a or b, keeping the other parameter from --params.
ParamPath one_param_path(const MapFamily& fam, const Options& o, double sign) {
    const Params base = parse_params(o.params);
    bool along_a = fam.uses_a();
    if (o.along == "b") along_a = false;
    else if (o.along == "a") along_a = true;
    else if (!o.along.empty()) throw ConfigError("--along must be a or b");
    if (along_a) return {{0.0, base.b}, sign, 0.0};
    return {{base.a, 0.0}, 0.0, sign};
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const Options& o, const std::string& command, json result) {
    Output out(o.output);
    out.stream() << envelope(command, std::move(result)).dump(2) << '\n';
}

bool csv(const Options& o) {
    if (o.format == "csv") return true;
    if (o.format == "json") return false;
    throw ConfigError("format must be csv or json");
}

int cmd_classify(const Options& o) {
    const MapFamily fam = load_family(o, false);
    const Params p = parse_params(o.params);
    ClassifyOptions co;
    if (o.transient > 0) co.transient = o.transient;
    if (!o.scan.empty()) {
        const auto parts = split(o.scan, ':');
        if (parts.size() != 3) throw ConfigError("--scan needs lo:hi:cell");
        const Interval r{to_double(parts[0], "scan"), to_double(parts[1], "scan")};
        const auto rep = scan_local_attractors(fam, p, r, to_double(parts[2], "scan cell"), o.workers, co);
        if (csv(o)) {
            Output out(o.output);
            write_csv(out.stream(), rep);
        } else {
            emit_json(o, "classify", json{{"family", fam.name()}, {"params", to_json(p)}, {"scan", to_json(rep)}});
        }
        return kExitOk;
    }
    const Attractor a = classify_attractor(fam, p, o.seed, co);
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), a);
    } else {
        emit_json(o, "classify", json{{"family", fam.name()}, {"params", to_json(p)}, {"attractor", to_json(a)}});
    }
    return kExitOk;
}

void emit_cascade(const Options& o, const std::string& command, const BifurcationSequence& s, const DeltaReport& r,
                  json extra = json::object()) {
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), s, r);
        return;
    }
    json j = cascade_json(s, r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    emit_json(o, command, std::move(j));
}

int cmd_cascade(const Options& o) {
    const MapFamily fam = load_family(o);
    if (o.depth < 1) throw ConfigError("depth must be at least 1");
    const double sign = o.direction != 0.0 ? o.direction
                                           : (fam.orientation() == Orientation::increasing ? 1.0 : -1.0);
    const ParamPath path = one_param_path(fam, o, sign > 0 ? 1.0 : -1.0);
    const auto seq = bifurcation_sequence(fam, path, o.depth, cascade_options(o));
    const auto flips = flip_parameters(seq);
    DeltaReport r = flips.size() >= 2 ? delta_report(flips) : DeltaReport{flips, {}, {}, {}, {}, true, {}};
    emit_cascade(o, "cascade", seq, r);
    return kExitOk;
}

int cmd_diagram(const Options& o) {
    const MapFamily fam = load_family(o);
    if (o.grid < 1 || o.samples < 1) throw ConfigError("grid and samples must be positive");
    const Interval sweep = o.sweep.empty() ? fam.param_range() : to_interval(o.sweep, "sweep");
    const ParamPath path = one_param_path(fam, o, 1.0);
    const long transient = o.transient >= 0 ? o.transient : 2000;
    std::vector<DiagramSample> cols(o.grid);
    parallel_for(o.grid, o.workers, [&](int i) {
        const double t = o.grid == 1 ? sweep.lo : sweep.lo + sweep.width() * i / (o.grid - 1);
        cols[i] = diagram_column(fam, path, t, transient, o.samples);
    });
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), cols);
        return kExitOk;
    }
    json rows = json::array();
    for (const auto& c : cols) {
        json r{{"t", detail::num(c.t)}, {"params", to_json(c.params)}, {"ok", c.ok}, {"xs", detail::nums(c.xs)}};
        if (!c.ok) r["note"] = c.note;
        rows.push_back(r);
    }
    emit_json(o, "diagram", json{{"family", fam.name()}, {"transient", transient}, {"samples", o.samples}, {"columns", rows}});
    return kExitOk;
}

int cmd_schwarzian(const Options& o) {
    const MapFamily fam = load_family(o, false);
    const Params p = parse_params(o.params);
    if (o.at) {
        const double s = schwarzian_at(fam, p, *o.at);
        if (csv(o)) {
            Output out(o.output);
            CsvWriter w(out.stream());
            w.header({"x", "schwarzian"});
            w.field(*o.at).field(s).end();
        } else {
            emit_json(o, "schwarzian", json{{"family", fam.name()}, {"params", to_json(p)}, {"x", *o.at}, {"value", detail::num(s)}});
        }
        return kExitOk;
    }
    Interval range;
    if (!o.interval.empty()) {
        range = to_interval(o.interval, "interval");
    } else {
        const Interval dom = fam.domain_at(p);
        if (!dom.bounded()) throw ConfigError("unbounded domain: give --interval");
        range = {detail::clamp_interior(dom.lo, dom), detail::clamp_interior(dom.hi, dom)};
    }
    const auto prof = sign_profile(fam, p, range, o.grid > 200 ? o.grid : 4000, o.workers);
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), prof);
    } else {
        emit_json(o, "schwarzian", json{{"family", fam.name()}, {"params", to_json(p)}, {"profile", to_json(prof)}});
    }
    return kExitOk;
}

int cmd_readiness(const Options& o) {
    const MapFamily fam = load_family(o, false);
    const Params p = parse_params(o.params);
    const auto rep = check_bifurcation_readiness(fam, p, o.grid > 200 ? o.grid : 4000);
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), rep);
    } else {
        emit_json(o, "readiness", json{{"family", fam.name()}, {"params", to_json(p)}, {"report", to_json(rep)}});
    }
    return kExitOk;
}

int cmd_widths(const Options& o) {
    const MapFamily fam = load_family(o);
    const Params p = parse_params(o.params);
    std::optional<bool> asc;
    if (o.order == "asc") asc = true;
    else if (o.order == "desc") asc = false;
    else if (!o.order.empty()) throw ConfigError("--order must be asc or desc");
    const auto w = tine_widths(fam, p, o.level, asc);
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), w);
    } else {
        json ranks = json::array();
        for (long r : alpha_pair_ranks(std::max(1, o.level - 1))) ranks.push_back(r);
        emit_json(o, "widths", json{{"family", fam.name()}, {"params", to_json(p)}, {"widths", to_json(w)}, {"pair_ranks", ranks}});
    }
    return kExitOk;
}

int cmd_feigenvalue(const Options& o) {
    double l = o.degree.value_or(2.0), r = l;
    if (!o.degrees.empty()) {
        const auto parts = split(o.degrees, ',');
        if (parts.size() != 2) throw ConfigError("--degrees needs left,right");
        l = to_double(parts[0], "degree");
        r = to_double(parts[1], "degree");
    }
    const auto res = feigenvalue_for_degree(l, r, o.depth, cascade_options(o));
    emit_cascade(o, "feigenvalue", res.sequence, res.report, json{{"degrees", json::array({l, r})}});
    return kExitOk;
}

int cmd_directional(const Options& o) {
    const MapFamily fam = load_family(o);
    const Params base = parse_params(o.params);
    const auto parts = split(o.dir, ',');
    if (parts.size() != 2) throw ConfigError("--dir needs da,db");
    const auto res = directional_bifurcations(fam, base, to_double(parts[0], "da"), to_double(parts[1], "db"), o.depth,
                                              cascade_options(o));
    emit_cascade(o, "directional", res.sequence, res.report);
    return kExitOk;
}

int cmd_suite(const Options& o) {
    const SuiteConfig cfg = parse_suite_file(o.suite_file);
    const SuiteReport rep = run_suite(cfg, o.workers);
    if (csv(o)) {
        Output out(o.output);
        write_csv(out.stream(), rep);
    } else {
        emit_json(o, "suite", to_json(rep, o.timing));
    }
    if (rep.any_unexpected_refutation()) return kExitRefuted;
    if (rep.any_unmet()) return kExitEval;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Period-doubling cascade laboratory"};
    app.require_subcommand(1);
    Options o;

    auto family_opts = [&](CLI::App* sc) {
        sc->add_option("--catalog", o.catalog_name, "catalog family name");
        sc->add_option("--expr", o.expr, "family expression in x, a, b");
        sc->add_option("--family-file", o.family_file, "file with expr/domain/orientation/range lines");
        sc->add_option("--domain", o.domain, "domain lo:hi (inf allowed)");
        sc->add_option("--orientation", o.orientation, "increasing or decreasing");
        sc->add_option("--range", o.range, "parameter search range lo:hi");
        sc->add_option("--params", o.params, "parameter values, e.g. a=3.2,b=1");
    };
    auto common = [&](CLI::App* sc) {
        sc->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sc->add_option("-o,--output", o.output, "output file (stdout by default)");
        sc->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
        sc->add_option("--precision", o.precision, "double, dd or auto")->check(CLI::IsMember({"double", "dd", "auto"}));
    };

    auto* classify = app.add_subcommand("classify", "classify the attractor at given parameters");
    family_opts(classify);
    common(classify);
    classify->add_option("--seed", o.seed, "initial point");
    classify->add_option("--scan", o.scan, "local scan lo:hi:cell");
    classify->add_option("--transient", o.transient, "transient iterations");

    auto* cascade = app.add_subcommand("cascade", "locate the period-doubling cascade");
    family_opts(cascade);
    common(cascade);
    cascade->add_option("--depth", o.depth, "number of flips");
    cascade->add_option("--direction", o.direction, "+1 or -1: direction of the moving parameter");
    cascade->add_option("--along", o.along, "moving parameter, a or b");
    cascade->add_option("--degree", o.degree, "feigenmap degree");
    cascade->add_option("--degrees", o.degrees, "feigenmap degrees left,right");
    cascade->add_option("--t-range", o.t_range, "path coordinate range lo:hi");
    cascade->add_flag("--superstable", o.superstable, "also record superstable parameters past the last flip");

    auto* diagram = app.add_subcommand("diagram", "bifurcation diagram samples");
    family_opts(diagram);
    common(diagram);
    diagram->add_option("--sweep", o.sweep, "parameter sweep lo:hi");
    diagram->add_option("--grid", o.grid, "number of parameter values");
    diagram->add_option("--transient", o.transient, "transient iterations (2000)");
    diagram->add_option("--samples", o.samples, "samples per parameter value (200)");
    diagram->add_option("--along", o.along, "moving parameter, a or b");

    auto* schwarz = app.add_subcommand("schwarzian", "Schwarzian value or sign profile");
    family_opts(schwarz);
    common(schwarz);
    schwarz->add_option("--at", o.at, "single abscissa");
    schwarz->add_option("--interval", o.interval, "profile interval lo:hi");
    schwarz->add_option("--grid", o.grid, "profile grid cells");

    auto* ready = app.add_subcommand("readiness", "several-maxima readiness checks");
    family_opts(ready);
    common(ready);
    ready->add_option("--grid", o.grid, "profile grid cells");

    auto* widths = app.add_subcommand("widths", "orbit tine widths at a level");
    family_opts(widths);
    common(widths);
    widths->add_option("--level", o.level, "level n (period 2^(n-1))");
    widths->add_option("--order", o.order, "asc or desc");

    auto* feig = app.add_subcommand("feigenvalue", "delta for 1 - a|x|^n");
    common(feig);
    feig->add_option("--degree", o.degree, "degree of both sides");
    feig->add_option("--degrees", o.degrees, "degrees left,right");
    feig->add_option("--depth", o.depth, "number of flips");

    auto* directional = app.add_subcommand("directional", "cascade along a direction in (a, b)");
    family_opts(directional);
    common(directional);
    directional->add_option("--dir", o.dir, "direction da,db")->required();
    directional->add_option("--depth", o.depth, "number of flips");
    directional->add_option("--t-range", o.t_range, "path coordinate range lo:hi");

    auto* suite = app.add_subcommand("suite", "run a conjecture suite file");
    common(suite);
    suite->add_option("file", o.suite_file, "suite file")->required();
    suite->add_flag("--timing", o.timing, "include per-case timing in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (const char* env = std::getenv("FEIGEN_WORKERS")) {
        try {
            o.workers = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "error: FEIGEN_WORKERS must be an integer\n";
            return kExitConfig;
        }
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*cascade) return cmd_cascade(o);
        if (*diagram) return cmd_diagram(o);
        if (*schwarz) return cmd_schwarzian(o);
        if (*ready) return cmd_readiness(o);
        if (*widths) return cmd_widths(o);
        if (*feig) return cmd_feigenvalue(o);
        if (*directional) return cmd_directional(o);
        if (*suite) return cmd_suite(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CascadeNotFound& e) {
        std::cerr << "no cascade: " << e.what() << '\n';
        return kExitNoCascade;
    } catch (const std::exception& e) {
        std::cerr << "evaluation error: " << e.what() << '\n';
        return kExitEval;
    }
    return kExitConfig;
}
