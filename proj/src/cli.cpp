#include "flexcert/cli.hpp"

#include "flexcert/errors.hpp"
#include "flexcert/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace flexcert {

namespace {

std::string describe(const Certificate& c) {
    std::ostringstream s;
    s << certificate_kind(c);
    if (const auto* f = std::get_if<FirstOrderRigid>(&c)) {
        s << " (rank C = " << f->rank << ")";
    } else if (const auto* o = std::get_if<SecondOrderObstruction>(&c)) {
        s << " (" << reason_name(o->reason) << ", dim ker C = " << o->kernel.size() << ")";
    } else if (const auto* f = std::get_if<SpanClosureFlex>(&c)) {
        s << " (q = " << f->q << ", k = " << f->k << ")";
        for (std::size_t p = 1; p <= f->series.degree(); ++p) s << "\n    Y" << p << " = " << to_string(f->series[p]);
    } else if (const auto* t = std::get_if<TStandardFail>(&c)) {
        s << " (p = " << t->p << ", unreachable right-hand side " << to_string(t->rhs) << ")";
    } else if (const auto* t = std::get_if<TStandardSurvived>(&c)) {
        s << " (depth " << t->depth << ")";
    }
    return s.str();
}

void print_human(std::ostream& out, const std::string& file, const AnalysisReport& r) {
    out << "== " << file << " ==\n";
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    out << "certificate: " << (r.certificate ? describe(*r.certificate) : std::string("none")) << "\n";
    for (const auto& c : r.supporting) out << "supporting: " << describe(c) << "\n";
    out << "kernel dimension: " << r.kernel_dimension << "\n";
    out << "depth: " << r.depth_reached << " (q_max " << r.config.q_max << ", max_depth " << r.config.max_depth << ")\n";
    for (const auto& n : r.notes) out << "note: " << n << "\n";
}

void emit_json(std::ostream& out, const std::vector<Json>& docs) {
    if (docs.size() == 1)
        out << docs.front().dump(2) << "\n";
    else
        out << Json(docs).dump(2) << "\n";
}

struct SystemWithBase {
    QuadraticSystem system;
    Vector base_point;
    std::optional<Reduction> reduction;
};

SystemWithBase load_system(const std::string& path) {
    Json j = read_json_file(path);
    if (is_general_system(j)) {
        GeneralInput in = parse_general_system(j);
        if (!in.base_point) throw InputError("field $.base_point: missing");
        Vector residual = evaluate(in.system, *in.base_point);
        if (!residual.is_zero()) throw BasePointError(residual);
        Reduction r = reduce_degree(in.system);
        return {r.system, lift_base_point(r.map, *in.base_point), r};
    }
    SystemInput in = parse_system(j);
    if (!in.base_point) throw InputError("field $.base_point: missing");
    return {in.system, *in.base_point, std::nullopt};
}

int analyze_system_file(const RunConfig& cfg, const std::string& path, std::ostream& out, std::vector<Json>& docs) {
    SystemWithBase in = load_system(path);
    AnalysisReport r = analyze_system(in.system, in.base_point, {cfg.q_max, cfg.max_depth});
    if (in.reduction)
        r.notes.insert(r.notes.begin(), "reduced to degree 2 with " +
                                            std::to_string(in.reduction->map.definitions.size()) +
                                            " auxiliary variables");
    if (cfg.json) {
        Json j = report_to_json(r);
        j["variables"] = in.system.variable_names();
        docs.push_back(Json{{"file", path}, {"report", j}});
    } else {
        print_human(out, path, r);
    }
    return kExitOk;
}

int analyze_framework_file(const RunConfig& cfg, const std::string& path, std::ostream& out, std::vector<Json>& docs) {
    Framework fw = parse_framework(read_json_file(path));
    fw.auto_pin = fw.auto_pin || cfg.auto_pin;
    if (fw.pins.empty() && !fw.auto_pin)
        throw InputError("framework has no pins; add pins or pass --auto-pin");
    FrameworkReport r = analyze_framework(fw, {cfg.q_max, cfg.max_depth});
    if (cfg.json) {
        docs.push_back(Json{{"file", path}, {"report", framework_report_to_json(r)}});
        return kExitOk;
    }
    print_human(out, path, r.analysis);
    out << "basis: " << r.basis << "\n";
    if (r.flexion && r.flexion->witness) {
        const auto& w = *r.flexion->witness;
        out << "witness: distance " << r.pinned.joints[w.a].id << "-" << r.pinned.joints[w.b].id
            << " changes at order " << w.order << " (coefficient " << format_scalar(w.coefficient) << ")\n";
    }
    return kExitOk;
}

int reduce_file(const RunConfig& cfg, const std::string& path, std::ostream& out) {
    Json j = read_json_file(path);
    Reduction r;
    std::optional<Vector> base;
    if (is_general_system(j)) {
        GeneralInput in = parse_general_system(j);
        r = reduce_degree(in.system);
        base = in.base_point;
    } else {
        SystemInput in = parse_system(j);
        r = {in.system, ReductionMap{in.system.variable_count(), {}}};
        base = in.base_point;
    }
    Json doc = reduction_to_json(r, base);
    if (cfg.output) {
        std::ofstream file(*cfg.output);
        if (!file) throw InputError(*cfg.output + ": cannot write output file");
        file << doc.dump(2) << "\n";
        out << path << ": " << r.system.equation_count() << " equations in " << r.system.variable_count()
            << " variables (" << r.map.definitions.size() << " auxiliary) written to " << *cfg.output << "\n";
    } else {
        out << doc.dump(2) << "\n";
    }
    return kExitOk;
}

int extend_file(const RunConfig& cfg, const std::string& path, std::ostream& out, std::vector<Json>& docs) {
    SystemWithBase in = load_system(path);
    BaseOperators ops = linearize(in.system, in.base_point);
    const std::size_t m = in.system.variable_count();
    Series s({in.base_point});
    std::string status;
    if (ops.kernel_dimension() == 0) {
        status = "ker C = {0}; only the constant series exists";
    } else {
        if (cfg.seed == 0 || cfg.seed > ops.kernel_dimension())
            throw InputError("--seed must lie between 1 and dim ker C = " + std::to_string(ops.kernel_dimension()));
        for (std::size_t z = 0; z < cfg.leading_zeros && s.degree() < cfg.degree; ++z) s.append(Vector(m));
        if (s.degree() < cfg.degree) s.append(ops.kernel()[cfg.seed - 1]);
        while (s.degree() < cfg.degree) {
            auto next = extend_step(ops, s, Unconstrained{});
            if (!next) break;
            s.append(std::move(next->value));
        }
        status = s.degree() == cfg.degree ? "extended to degree " + std::to_string(cfg.degree)
                                          : "no solution for coefficient " + std::to_string(s.degree() + 1);
    }
    std::size_t order = residual_order(in.system, s);
    if (cfg.json) {
        Json j;
        j["status"] = status;
        j["series"] = series_to_json(s);
        j["residual_order"] = order == kInfiniteOrder ? Json("infinite") : Json(order);
        j["variables"] = in.system.variable_names();
        docs.push_back(Json{{"file", path}, {"extension", j}});
        return kExitOk;
    }
    out << "== " << path << " ==\n" << status << "\n";
    for (std::size_t p = 0; p <= s.degree(); ++p) out << "Y" << p << " = " << to_string(s[p]) << "\n";
    out << "residual order: " << (order == kInfiniteOrder ? std::string("infinite") : std::to_string(order)) << "\n";
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.q_max == 0 || config.max_depth < 2) {
        err << "error: --q-max must be positive and --max-depth at least 2\n";
        return kExitBadInput;
    }
    int status = kExitOk;
    std::vector<Json> docs;
    for (const auto& path : config.inputs) {
        int code = kExitOk;
        try {
            switch (config.command) {
                case Command::AnalyzeSystem: code = analyze_system_file(config, path, out, docs); break;
                case Command::AnalyzeFramework: code = analyze_framework_file(config, path, out, docs); break;
                case Command::Reduce: code = reduce_file(config, path, out); break;
                case Command::Extend: code = extend_file(config, path, out, docs); break;
            }
        } catch (const BasePointError& e) {
            err << path << ": base point is not a solution; residual " << to_string(e.residual()) << "\n";
            code = kExitNotSolution;
        } catch (const InputError& e) {
            std::string message = e.what();
            if (message.rfind(path, 0) != 0) message = path + ": " + message;
            err << message << "\n";
            code = kExitBadInput;
        } catch (const PinningError& e) {
            err << path << ": pinning failed: " << e.what() << "\n";
            code = kExitBadInput;
        } catch (const UsageError& e) {
            err << path << ": invalid input: " << e.what() << "\n";
            code = kExitBadInput;
        }
        if (status == kExitOk) status = code;
    }
    if (config.json && !docs.empty()) emit_json(out, docs);
    return status;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact power-series rigidity and flexibility analysis"};
    app.name("flexcert");
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_caps = [&](CLI::App* sub) {
        sub->add_option("--q-max", cfg.q_max, "largest series degree for the span-closure search")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-depth", cfg.max_depth, "deepest order of the T-standard recursion")
            ->check(CLI::Range(2, 100000));
        sub->add_flag("--json", cfg.json, "emit JSON reports");
    };

    auto* system = app.add_subcommand("analyze-system", "analyze a polynomial system at its base point");
    system->add_option("files", cfg.inputs, "system files")->required();
    add_caps(system);

    auto* framework = app.add_subcommand("analyze-framework", "analyze a bar-joint framework");
    framework->add_option("files", cfg.inputs, "framework files")->required();
    framework->add_flag("--auto-pin", cfg.auto_pin, "pin a simplex in normal position");
    add_caps(framework);

    auto* reduce = app.add_subcommand("reduce", "rewrite a polynomial system with equations of degree at most 2");
    reduce->add_option("file", cfg.inputs, "general system file")->required()->expected(1);
    reduce->add_option("-o,--output", cfg.output, "output file");

    auto* extend = app.add_subcommand("extend", "extend a first-order solution by the canonical recursion");
    extend->add_option("file", cfg.inputs, "system file")->required()->expected(1);
    extend->add_option("--degree", cfg.degree, "target degree")->required()->check(CLI::PositiveNumber);
    extend->add_option("--seed", cfg.seed, "kernel basis vector to start from (1-based)");
    extend->add_option("--leading-zeros", cfg.leading_zeros, "zero coefficients before the seed");
    extend->add_flag("--json", cfg.json, "emit JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kExitOk : kExitBadInput;
    }

    if (system->parsed()) cfg.command = Command::AnalyzeSystem;
    if (framework->parsed()) cfg.command = Command::AnalyzeFramework;
    if (reduce->parsed()) cfg.command = Command::Reduce;
    if (extend->parsed()) cfg.command = Command::Extend;
    return run(cfg, out, err);
}

}  // namespace flexcert
