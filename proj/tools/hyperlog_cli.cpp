#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperlog/io.hpp"

using namespace hyperlog;

namespace {

// Exit statuses: mathematical negatives are kept apart from usage errors.
constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_negative = 2;

struct RunConfig {
    std::string input;
    std::string demo_name;
    std::optional<long> k0;
    std::string initial_unit;
    std::vector<std::string> directives;
    std::string companion;
    std::string out_dir;
    std::optional<double> eps_real;
};

// The path, its directives and default seed, from either --input or --demo.
struct Job {
    PathSpec path;
    std::map<std::size_t, Directive> directives;
    LiftSeed seed;
    Tolerances tol;
};

Directive parse_directive(const std::string& s) {
    if (s == "bounce") return Directive::bounce;
    if (s == "flip") return Directive::flip;
    if (s == "automatic") return Directive::automatic;
    throw Error(Errc::BadInput, "directive must be bounce or flip, got '" + s + "'");
}

Job make_job(const RunConfig& cfg) {
    if (cfg.input.empty() == cfg.demo_name.empty()) throw Error(Errc::BadInput, "give exactly one of --input and --demo");
    Job job;
    job.tol = default_tolerances();
    if (cfg.eps_real) {
        if (!(*cfg.eps_real >= 1e-14 && *cfg.eps_real <= 1e-4))
            throw Error(Errc::BadInput, "--eps-real must lie in [1e-14, 1e-4]");
        job.tol.eps_real = *cfg.eps_real;
    }
    if (!cfg.demo_name.empty()) {
        std::string name = cfg.demo_name;
        if (!cfg.companion.empty()) {
            if (name.find('(') != std::string::npos)
                throw Error(Errc::BadInput, "--companion cannot be combined with a parameterized demo name");
            name += "(" + cfg.companion + ")";
        }
        DemoCase d = demo(name);
        job.path = d.path;
        job.directives = d.directives;
        job.seed = d.seed;
    } else {
        if (!cfg.companion.empty()) throw Error(Errc::BadInput, "--companion applies to demos only");
        job.path = io::load_path(cfg.input);
    }
    for (const auto& text : cfg.directives) {
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw Error(Errc::BadInput, "directive must look like <interval>=<bounce|flip>");
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoul(text.substr(0, eq), &used);
            if (used != eq) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(Errc::BadInput, "bad interval index in directive '" + text + "'");
        }
        job.directives[idx] = parse_directive(text.substr(eq + 1));
    }
    if (cfg.k0) job.seed.k0 = *cfg.k0;
    if (!cfg.initial_unit.empty()) job.seed.initial_unit = parse_unit(cfg.initial_unit, job.path.dim);
    return job;
}

std::optional<ImaginaryUnit> seed_unit(const Job& job) {
    if (!job.seed.initial_unit) return std::nullopt;
    if (job.seed.initial_unit->dim() != job.path.dim) throw Error(Errc::BadInput, "initial unit has the wrong dimension");
    if (std::abs(job.seed.initial_unit->re()) > 1e-12 || job.seed.initial_unit->im_norm() == 0.0)
        throw Error(Errc::BadInput, "initial unit must be a nonzero imaginary element");
    return ImaginaryUnit::from(*job.seed.initial_unit);
}

class Output {
public:
    explicit Output(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }
    void file(const std::string& name, const std::string& text) const {
        if (dir_.empty()) return;
        std::ofstream f(std::filesystem::path(dir_) / name, std::ios::binary);
        if (!f) throw Error(Errc::BadInput, "cannot write '" + name + "' in " + dir_);
        f << text;
    }

private:
    std::string dir_;
};

int cmd_analyze(const RunConfig& cfg) {
    const Job job = make_job(cfg);
    const Analysis an = analyze(job.path, job.directives, 64, job.tol);
    const std::string text = io::dump(io::to_json(an.report));
    std::cout << text;
    const Output out(cfg.out_dir);
    out.file("report.json", text);
    std::ostringstream csv;
    io::write_samples_csv(csv, an.samples);
    out.file("samples.csv", csv.str());
    return exit_ok;
}

int cmd_lift(const RunConfig& cfg) {
    const Job job = make_job(cfg);
    const Analysis an = analyze(job.path, job.directives, 64, job.tol);
    const LiftResult lr = lift_path(an, job.seed.k0, seed_unit(job), job.tol);
    const std::string text = io::dump(io::to_json(lr));
    std::cout << text;
    const Output out(cfg.out_dir);
    out.file("lift.json", text);
    if (!lr.ok) {
        std::cerr << "NotLiftable: " << lr.message << '\n';
        return exit_negative;
    }
    std::ostringstream csv;
    io::write_lift_csv(csv, *lr.lift);
    out.file("lift.csv", csv.str());
    return exit_ok;
}

int cmd_winding(const RunConfig& cfg) {
    const Job job = make_job(cfg);
    const WindingResult wr = analyze_winding(job.path, job.directives, seed_unit(job), job.tol);
    const std::string text = io::dump(io::to_json(wr));
    std::cout << text;
    Output(cfg.out_dir).file("winding.json", text);
    if (wr.twisted) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "TwistedLoop: the companion lift started at t=" << job.path.a
            << " returns with the opposite sign; the argument change depends on the basepoint";
        try {
            msg << " (from t=" << job.path.a << " it is " << branch_change_report(job.path, job.path.a, job.tol)
                << " turns)";
        } catch (const Error&) {
        }
        std::cerr << msg.str() << '\n';
        return exit_negative;
    }
    return exit_ok;
}

int cmd_shadow(const RunConfig& cfg) {
    const Job job = make_job(cfg);
    const Analysis an = analyze(job.path, job.directives, 64, job.tol);
    const Companion c = build_companion(an.samples, an.report);
    if (!c.exists) throw Error(Errc::NotApplicable, "path has no companion: " + c.reason);
    const auto u = seed_unit(job);
    const CompanionLift cl = lift_companion(c, u ? *u : c.units.front().representative());
    const Shadow s = shadow(an.samples.t, canonical_form(an.samples, cl, job.tol));
    std::ostringstream csv;
    io::write_shadow_csv(csv, s);
    std::cout << csv.str();
    Output(cfg.out_dir).file("shadow.csv", csv.str());
    return exit_ok;
}

std::string file_stem(const std::string& name) {
    std::string s;
    for (char ch : name) s += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.') ? ch : '_';
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

int cmd_demo_list() {
    for (const auto& n : demo_names()) std::cout << n << '\n';
    return exit_ok;
}

int cmd_demo_export(const std::string& name, const RunConfig& cfg) {
    const std::string text = io::dump(io::to_json(demo(name)));
    std::cout << text;
    Output(cfg.out_dir).file(file_stem(name) + ".json", text);
    return exit_ok;
}

int exit_for(const Error& e) {
    switch (e.code()) {
        case Errc::NotLiftable:
        case Errc::NoLift:
        case Errc::TwistedLoop:
        case Errc::NotApplicable: return exit_negative;
        default: return exit_input;
    }
}

void add_path_options(CLI::App* sub, RunConfig& cfg, bool with_seed) {
    sub->add_option("--input", cfg.input, "path spec (JSON)");
    sub->add_option("--demo", cfg.demo_name, "built-in example, e.g. sigma_arc or slice_circle(i,1,2)");
    sub->add_option("--companion", cfg.companion, "companion variant of a demo (e.g. constant_i, J_path)");
    sub->add_option("--directive", cfg.directives, "<interval>=<bounce|flip>, repeatable");
    sub->add_option("--out", cfg.out_dir, "directory for JSON/CSV files");
    sub->add_option("--eps-real", cfg.eps_real, "real-axis tolerance in [1e-14, 1e-4]");
    if (with_seed) {
        sub->add_option("--k0", cfg.k0, "initial branch index");
        sub->add_option("--initial-unit", cfg.initial_unit, "initial imaginary unit: i, -j, ... or c1,c2,...");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuation of the quaternionic/octonionic logarithm along paths"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* analyze_cmd = app.add_subcommand("analyze", "obstruction report of a path");
    add_path_options(analyze_cmd, cfg, false);
    auto* lift_cmd = app.add_subcommand("lift", "continuation of the logarithm along a path");
    add_path_options(lift_cmd, cfg, true);
    auto* winding_cmd = app.add_subcommand("winding", "signatures, twist and winding number of a loop");
    add_path_options(winding_cmd, cfg, true);
    auto* shadow_cmd = app.add_subcommand("shadow", "shadow of a path with companion (CSV)");
    add_path_options(shadow_cmd, cfg, true);

    auto* demo_cmd = app.add_subcommand("demo", "built-in examples");
    demo_cmd->require_subcommand(1);
    demo_cmd->add_subcommand("list", "names of the built-in examples");
    std::string export_name;
    auto* export_cmd = demo_cmd->add_subcommand("export", "JSON of a built-in example");
    export_cmd->add_option("name", export_name, "demo name")->required();
    export_cmd->add_option("--out", cfg.out_dir, "directory for the JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(cfg);
        if (*lift_cmd) return cmd_lift(cfg);
        if (*winding_cmd) return cmd_winding(cfg);
        if (*shadow_cmd) return cmd_shadow(cfg);
        if (*export_cmd) return cmd_demo_export(export_name, cfg);
        return cmd_demo_list();
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
