#include "antichain/cli.hpp"

#include "antichain/errors.hpp"
#include "antichain/measure.hpp"
#include "antichain/singular.hpp"
#include "antichain/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace antichain::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kClamp = 1e-9;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SingularFunctionSpec make_f(const RunConfig& c) {
    if (c.kind == "salem") {
        return c.lambda == 0.5 ? SingularFunctionSpec::identity_fixture(c.depth)
                               : SingularFunctionSpec::salem(c.lambda, c.depth);
    }
    if (c.kind == "minkowski") {
        return SingularFunctionSpec::minkowski(c.depth);
    }
    if (c.kind == "cantor") {
        return SingularFunctionSpec::cantor(c.depth);
    }
    throw ConfigError("unknown function kind '" + c.kind + "' (salem, minkowski, cantor)");
}

json echo_config(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    j["n"] = c.n;
    j["kind"] = c.kind;
    j["lambda"] = c.lambda;
    j["non_singular_fixture"] = c.kind == "salem" && c.lambda == 0.5;
    j["depth"] = c.depth;
    j["seed"] = c.seed;
    j["budget"] = c.budget;
    switch (c.command) {
    case Command::eval:
        j["point"] = c.point;
        break;
    case Command::check_antichain:
        j["pairs"] = c.pairs;
        break;
    case Command::length:
        j["k"] = c.k;
        break;
    case Command::dimension:
        j["k_min"] = c.k_min;
        j["k_max"] = c.k_max;
        j["samples"] = c.samples;
        break;
    case Command::projections:
        j["probe_depth"] = c.probe_depth;
        j["eps"] = c.eps;
        j["domain_depth"] = c.domain_depth;
        j["image_depth"] = c.image_depth;
        j["samples"] = c.samples;
        break;
    case Command::export_mesh:
        j["resolution"] = c.resolution;
        break;
    }
    j["format"] = c.format == Format::json ? "json" : "csv";
    j["output"] = c.output_path ? json(*c.output_path) : json(nullptr);
    return j;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else if (j.is_number_float()) {
        out << prefix << ',' << fmt17(j.get<double>()) << '\n';
    } else if (j.is_string()) {
        out << prefix << ',' << j.get<std::string>() << '\n';
    } else {
        out << prefix << ',' << j.dump() << '\n';
    }
}

std::string render(const json& report, Format format) {
    if (format == Format::json) {
        return report.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "key,value\n";
    flatten(report, "", out);
    return out.str();
}

void validate(const RunConfig& c) {
    if (c.n < 2) {
        throw ConfigError("--n must be >= 2");
    }
    if (c.budget == 0) {
        throw ConfigError("evaluation budget must be positive");
    }
    switch (c.command) {
    case Command::eval:
        if (c.point.size() != static_cast<std::size_t>(c.n - 1)) {
            throw ConfigError("--point needs n - 1 = " + std::to_string(c.n - 1) + " coordinates");
        }
        for (double v : c.point) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ConfigError("--point coordinates must lie in [0, 1]");
            }
        }
        break;
    case Command::check_antichain:
        if (c.pairs == 0) {
            throw ConfigError("--pairs must be positive");
        }
        break;
    case Command::length:
        if (c.n != 2) {
            throw ConfigError("length is defined for n = 2 only");
        }
        if (c.k < 1) {
            throw ConfigError("--k must be >= 1");
        }
        break;
    case Command::dimension:
        if (c.k_min < 1 || c.k_max - c.k_min < 2) {
            throw ConfigError("dimension needs 1 <= k_min and at least three depths");
        }
        if (c.samples < 1) {
            throw ConfigError("--samples must be >= 1");
        }
        break;
    case Command::projections:
        if (c.domain_depth < 1 || c.image_depth < 1 || c.samples < 1 || c.probe_depth < 1 ||
            !(c.eps > 0.0)) {
            throw ConfigError("projection depths, samples and probe must be positive");
        }
        break;
    case Command::export_mesh:
        if (c.n != 2 && c.n != 3) {
            throw ConfigError("export-mesh: unsupported dimension n = " + std::to_string(c.n) +
                              " (only 2 and 3)");
        }
        if (c.resolution < 1) {
            throw ConfigError("--resolution must be >= 1");
        }
        break;
    }
}

json run_eval(const SurfaceSpec& spec, const RunConfig& c, std::string& diagnostics) {
    std::vector<double> x = c.point;
    bool clamped = false;
    for (double& v : x) {
        const double w = std::clamp(v, kClamp, 1.0 - kClamp);
        clamped = clamped || w != v;
        v = w;
    }
    if (clamped) {
        diagnostics += "warning: point clamped into [1e-9, 1 - 1e-9]\n";
    }
    const SurfaceValue F = F_eval(spec, x);
    json fx = json::array();
    for (double v : x) {
        const Evaluation e = eval(spec.f, v);
        fx.push_back({{"x", v}, {"f", e.value}, {"error", e.error}});
    }
    std::vector<double> graph = x;
    graph.push_back(F.value);
    return {{"point", x},   {"clamped", clamped},    {"f", fx},
            {"F", F.value}, {"F_error", F.error},    {"graph_point", graph}};
}

json run_check(const SurfaceSpec& spec, const RunConfig& c) {
    const AntichainTally t = check_antichain_batch(spec, c.pairs, c.seed);
    return {{"pairs", t.pairs},
            {"ordered_ok", t.ordered_ok},
            {"within_tolerance", t.within_tolerance},
            {"violations", t.violations}};
}

json run_dimension(const SurfaceSpec& spec, const RunConfig& c, const Budget& budget) {
    const DimensionEstimate d = box_dimension(spec, c.k_min, c.k_max, c.samples, budget);
    json covers = json::array();
    for (int k : d.depths) {
        const CoverEstimate e = cover_estimate(spec, spec.n - 1, k, c.samples, budget);
        covers.push_back({{"k", k}, {"s", e.s}, {"delta", e.delta}, {"count", e.count}, {"value", e.value}});
    }
    return {{"slope", d.slope},   {"intercept", d.intercept}, {"r2", d.r2},
            {"depths", d.depths}, {"counts", d.counts},       {"cover", covers}};
}

json run_projections(const SurfaceSpec& spec, const RunConfig& c, const Budget& budget) {
    const SingularSetProbe probe{c.probe_depth, c.eps};
    const ProjectionParams params{c.domain_depth, c.image_depth, c.samples, c.seed};
    const LowerBound lb = lower_bound_total(spec, probe, params, budget);
    json axes = json::array();
    for (const ProjectionEstimate& e : lb.axes) {
        axes.push_back({{"axis", e.axis},
                        {"area", e.area},
                        {"occupied", e.occupied},
                        {"members", e.members},
                        {"samples", e.samples}});
    }
    return {{"axes", axes}, {"total", lb.total}};
}

std::string export_mesh(const SurfaceSpec& spec, const RunConfig& c) {
    std::vector<double> grid;
    for (int j = 1; j <= c.resolution; ++j) {
        grid.push_back(static_cast<double>(j) / (c.resolution + 1));
    }
    std::vector<std::vector<double>> rows;
    if (spec.n == 2) {
        for (double a : grid) {
            const double x[] = {a};
            rows.push_back({a, F_eval(spec, x).value});
        }
    } else {
        for (double a : grid) {
            for (double b : grid) {
                const double x[] = {a, b};
                rows.push_back({a, b, F_eval(spec, x).value});
            }
        }
    }
    if (c.format == Format::json) {
        json values = json::array();
        for (const auto& r : rows) {
            values.push_back(r.back());
        }
        const json mesh = {{"n", spec.n}, {"grid", grid}, {"values", values}};
        return mesh.dump() + "\n";
    }
    std::ostringstream out;
    out << (spec.n == 2 ? "x1,F\n" : "x1,x2,F\n");
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << (i ? "," : "") << fmt17(r[i]);
        }
        out << '\n';
    }
    return out.str();
}

json error_report(const RunConfig& c, const char* type, const std::string& message) {
    return {{"command", to_string(c.command)},
            {"config", echo_config(c)},
            {"status", "error"},
            {"error", {{"type", type}, {"message", message}}}};
}

} // namespace

const char* to_string(Command c) noexcept {
    switch (c) {
    case Command::eval:
        return "eval";
    case Command::check_antichain:
        return "check-antichain";
    case Command::length:
        return "length";
    case Command::dimension:
        return "dimension";
    case Command::projections:
        return "projections";
    case Command::export_mesh:
        return "export-mesh";
    }
    return "unknown";
}

RunConfig with_defaults(RunConfig c) {
    if (c.command == Command::dimension && c.samples == 0) {
        c.samples = 1;
    }
    if (c.command == Command::dimension && c.k_min == 0 && c.k_max == 0) {
        c.k_min = c.n == 2 ? 6 : 4;
        c.k_max = c.n == 2 ? 14 : 9;
    }
    if (c.command == Command::projections) {
        if (c.domain_depth == 0) {
            c.domain_depth = c.n == 2 ? 14 : 11;
        }
        if (c.samples == 0) {
            c.samples = c.n == 2 ? 16 : 4;
        }
        if (c.image_depth == 0) {
            c.image_depth = c.n == 2 ? 10 : 6;
        }
    }
    return c;
}

RunResult run(const RunConfig& config) {
    const RunConfig c = with_defaults(config);
    RunResult result;
    const auto start = std::chrono::steady_clock::now();
    try {
        validate(c);
        const SurfaceSpec spec = SurfaceSpec::make(c.n, make_f(c));
        const Budget budget{c.budget};

        if (c.command == Command::export_mesh) {
            result.report = export_mesh(spec, c);
            return result;
        }

        json report;
        report["command"] = to_string(c.command);
        report["config"] = echo_config(c);
        json body;
        switch (c.command) {
        case Command::eval:
            body = run_eval(spec, c, result.diagnostics);
            break;
        case Command::check_antichain:
            body = run_check(spec, c);
            if (body["violations"].get<std::uint64_t>() > 0) {
                result.exit_code = kExitViolation;
            }
            break;
        case Command::length:
            body = {{"k", c.k}, {"length", graph_length_n2(spec, c.k, budget)}, {"upper_bound", 2.0}};
            break;
        case Command::dimension:
            body = run_dimension(spec, c, budget);
            break;
        case Command::projections:
            body = run_projections(spec, c, budget);
            break;
        case Command::export_mesh:
            break;
        }
        report["result"] = body;
        report["status"] = result.exit_code == kExitOk ? "ok" : "violation";
        if (c.timing) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            report["wall_clock_seconds"] = elapsed.count();
        }
        result.report = render(report, c.format);
    } catch (const ResourceError& e) {
        result.exit_code = kExitConfig;
        result.report = render(error_report(c, "resource", e.what()), c.format);
        result.diagnostics += std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        result.exit_code = kExitConfig;
        result.report = render(error_report(c, "config", e.what()), c.format);
        result.diagnostics += std::string("error: ") + e.what() + "\n";
    }
    return result;
}

ParseOutcome parse(int argc, const char* const* argv) {
    CLI::App app{"Antichain surface toolkit: evaluate, verify and measure the graph of "
                 "F = 1 - p(f(x_1), ..., f(x_{n-1}))"};
    app.require_subcommand(1);

    RunConfig c;
    std::string format = "json";
    std::string output;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", c.n, "Ambient dimension (>= 2)")->capture_default_str();
        sub->add_option("--kind", c.kind, "Singular function: salem, minkowski, cantor")
            ->capture_default_str();
        sub->add_option("--lambda", c.lambda, "Salem ratio; 0.5 selects the identity fixture")
            ->capture_default_str();
        sub->add_option("--depth", c.depth, "Digits used when evaluating f")->capture_default_str();
        sub->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
        sub->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--output", output, "Write the report here instead of stdout");
        sub->add_flag("--no-timing", [&](std::int64_t) { c.timing = false; },
                      "Omit wall-clock time so reports are byte-identical across runs");
    };

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate F and the graph point at --point");
    common(eval_cmd);
    eval_cmd->add_option("--point", c.point, "n - 1 coordinates, comma separated")
        ->delimiter(',')
        ->required();

    auto* check_cmd = app.add_subcommand("check-antichain", "Count antichain violations over seeded comparable pairs");
    common(check_cmd);
    check_cmd->add_option("--pairs", c.pairs)->capture_default_str();

    auto* length_cmd = app.add_subcommand("length", "Polygonal length of the n = 2 graph");
    common(length_cmd);
    length_cmd->add_option("--k", c.k, "Dyadic depth")->capture_default_str();

    auto* dim_cmd = app.add_subcommand("dimension", "Box-counting dimension and grid covers");
    common(dim_cmd);
    dim_cmd->add_option("--k-min", c.k_min);
    dim_cmd->add_option("--k-max", c.k_max);
    dim_cmd->add_option("--samples", c.samples, "Interior samples per cell and axis (default 1)");

    auto* proj_cmd = app.add_subcommand("projections", "Projection lower bound over all axes");
    common(proj_cmd);
    proj_cmd->add_option("--probe-depth", c.probe_depth)->capture_default_str();
    proj_cmd->add_option("--eps", c.eps)->capture_default_str();
    proj_cmd->add_option("--domain-depth", c.domain_depth);
    proj_cmd->add_option("--image-depth", c.image_depth);
    proj_cmd->add_option("--samples", c.samples, "Jittered samples per domain cell and axis (default 16 for n = 2, 4 otherwise)");

    auto* mesh_cmd = app.add_subcommand("export-mesh", "Write F on a regular grid as CSV or JSON");
    common(mesh_cmd);
    mesh_cmd->add_option("--resolution", c.resolution, "Grid points per axis, at j/(r+1)")
        ->capture_default_str();

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        outcome.message = app.help();
        outcome.exit_code = kExitOk;
        return outcome;
    } catch (const CLI::CallForAllHelp&) {
        outcome.message = app.help("", CLI::AppFormatMode::All);
        outcome.exit_code = kExitOk;
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.message = std::string("error: ") + e.what() + "\n" + app.help();
        outcome.exit_code = kExitConfig;
        return outcome;
    }

    const std::pair<CLI::App*, Command> table[] = {
        {eval_cmd, Command::eval},         {check_cmd, Command::check_antichain},
        {length_cmd, Command::length},     {dim_cmd, Command::dimension},
        {proj_cmd, Command::projections},  {mesh_cmd, Command::export_mesh},
    };
    for (const auto& [sub, cmd] : table) {
        if (sub->parsed()) {
            c.command = cmd;
        }
    }
    c.format = format == "csv" ? Format::csv : Format::json;
    if (!output.empty()) {
        c.output_path = output;
    }
    try {
        c.budget = Budget::from_env().max_evaluations;
    } catch (const ConfigError& e) {
        outcome.message = std::string("error: ") + e.what() + "\n";
        outcome.exit_code = kExitConfig;
        return outcome;
    }
    outcome.config = c;
    return outcome;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const ParseOutcome parsed = parse(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message;
        return parsed.exit_code;
    }
    const RunResult result = run(*parsed.config);
    err << result.diagnostics;
    if (parsed.config->output_path) {
        std::ofstream file(*parsed.config->output_path, std::ios::binary);
        file << result.report;
        file.flush();
        if (!file) {
            err << "error: cannot write " << *parsed.config->output_path << "\n";
            return kExitConfig;
        }
    } else {
        out << result.report;
    }
    return result.exit_code;
}

} // namespace antichain::cli
