// Command-line interface to the simplexdyn library.
//
// Exit codes: 0 = success, 1 = invalid input or configuration,
// 2 = negative analysis verdict (condition failure, preservation
// counterexample, domain escape, invariance failure).

#include <simplexdyn/simplexdyn.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace simplexdyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNegative = 2;

struct MatrixSource {
    std::string model;
    std::optional<double> mu, a, b, c;
    std::string matrix_path;

    bool has_model() const { return !model.empty(); }

    models::ModelSpec spec() const {
        auto need = [](const std::optional<double>& v, const char* name) {
            if (!v) throw std::invalid_argument(std::string("missing required parameter --") + name);
            return *v;
        };
        if (model == "logistic") return models::ModelSpec::logistic(need(mu, "mu"));
        if (model == "v1") return models::ModelSpec::v1(need(a, "a"), need(b, "b"), need(c, "c"));
        if (model == "va") return models::ModelSpec::va(need(b, "b"));
        if (model == "v2") return models::ModelSpec::v2(need(a, "a"));
        if (model == "v3") return models::ModelSpec::v3(need(a, "a"));
        throw std::invalid_argument("unknown model '" + model +
                                    "' (expected logistic, v1, va, v2 or v3)");
    }

    // Returns the matrix plus a human-readable identifier and loader notes.
    std::tuple<CubicMatrix, std::string, json> resolve() const {
        if (has_model() && !matrix_path.empty())
            throw std::invalid_argument("--model and --matrix are mutually exclusive");
        if (has_model()) {
            const models::ModelSpec s = spec();
            return {s.to_cubic(), s.name(), json(nullptr)};
        }
        if (!matrix_path.empty()) {
            const LoadedMatrix lm = load_cubic_json_file(matrix_path);
            json note{{"symmetrization_changed", lm.symmetrization_changed},
                      {"max_symmetrization_delta", lm.max_symmetrization_delta}};
            return {lm.matrix, "matrix:" + matrix_path, std::move(note)};
        }
        throw std::invalid_argument("either --model or --matrix is required");
    }
};

void add_matrix_flags(CLI::App* cmd, MatrixSource& src) {
    cmd->add_option("--model", src.model, "Built-in model: logistic, v1, va, v2, v3");
    cmd->add_option("--mu", src.mu, "logistic parameter mu in (2,4]");
    cmd->add_option("--a", src.a, "model parameter a");
    cmd->add_option("--b", src.b, "model parameter b");
    cmd->add_option("--c", src.c, "model parameter c");
    cmd->add_option("--matrix", src.matrix_path, "path to a cubic matrix JSON file");
}

std::vector<double> parse_point(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse coordinate '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw std::invalid_argument("cannot parse coordinate '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty point");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic operators on the standard simplex: preservation conditions and "
                 "dynamics analysis"};
    app.require_subcommand(1);

    // ---- check ----
    MatrixSource check_src;
    double check_tol = 1e-12;
    std::string check_out;
    CLI::App* check = app.add_subcommand(
        "check", "Evaluate the preservation conditions and edge necessity for a cubic matrix");
    add_matrix_flags(check, check_src);
    check->add_option("--tol", check_tol, "comparison tolerance (default 1e-12)");
    check->add_option("--out", check_out, "write JSON here instead of stdout");

    // ---- preserve ----
    MatrixSource pres_src;
    long pres_samples = 10000;
    std::uint64_t pres_seed = 0;
    double pres_tol = 1e-12;
    std::string pres_out;
    CLI::App* preserve = app.add_subcommand(
        "preserve", "Probe simplex preservation empirically (grids + random samples + descent)");
    add_matrix_flags(preserve, pres_src);
    preserve->add_option("--samples", pres_samples, "random sample count (default 10000)");
    preserve->add_option("--seed", pres_seed, "random seed (default 0)");
    preserve->add_option("--tol", pres_tol, "violation tolerance (default 1e-12)");
    preserve->add_option("--out", pres_out, "write JSON here instead of stdout");

    // ---- simulate ----
    MatrixSource sim_src;
    std::string sim_init;
    long sim_steps = 100;
    std::string sim_out;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Iterate the operator and write the trajectory as CSV");
    add_matrix_flags(simulate, sim_src);
    simulate->add_option("--init", sim_init, "initial point, comma separated coordinates")
        ->required();
    simulate->add_option("--steps", sim_steps, "iteration count (default 100)");
    simulate->add_option("--out", sim_out, "write CSV here instead of stdout");

    // ---- fixed-points ----
    MatrixSource fp_src;
    int fp_grid = 12;
    double fp_tol = 1e-12;
    std::string fp_out;
    CLI::App* fixed_points = app.add_subcommand(
        "fixed-points", "Locate and classify fixed points on the simplex");
    add_matrix_flags(fixed_points, fp_src);
    fixed_points->add_option("--grid", fp_grid, "barycentric seed resolution (default 12)");
    fixed_points->add_option("--tol", fp_tol, "Newton residual tolerance (default 1e-12)");
    fixed_points->add_option("--out", fp_out, "write JSON here instead of stdout");

    // ---- bifurcation ----
    std::string bif_model = "logistic";
    double bif_from = 0.0, bif_to = 0.0;
    int bif_grid = 201;
    long bif_transient = 1000;
    int bif_keep = 256;
    double bif_tol = 1e-6;
    double bif_x0 = 0.3;
    std::string bif_out;
    CLI::App* bifurcation = app.add_subcommand(
        "bifurcation", "Scan the interval reduction of a family over a parameter range");
    bifurcation->add_option("--model", bif_model,
                            "family with an interval reduction: logistic, va or v2");
    bifurcation->add_option("--from", bif_from, "range start")->required();
    bifurcation->add_option("--to", bif_to, "range end")->required();
    bifurcation->add_option("--grid", bif_grid, "number of parameter values (default 201)");
    bifurcation->add_option("--transient", bif_transient, "discarded iterations (default 1000)");
    bifurcation->add_option("--keep", bif_keep, "kept attractor samples (default 256)");
    bifurcation->add_option("--tol", bif_tol, "period detection tolerance (default 1e-6)");
    bifurcation->add_option("--init", bif_x0, "initial point (default 0.3)");
    bifurcation->add_option("--out", bif_out, "write CSV here instead of stdout");

    // ---- lyapunov ----
    MatrixSource lya_src;
    std::string lya_init;
    long lya_steps = 100000;
    long lya_transient = 1000;
    std::string lya_out;
    CLI::App* lyapunov = app.add_subcommand(
        "lyapunov",
        "Estimate the Lyapunov exponent (interval reduction when available, else tangent "
        "renormalization on the operator)");
    add_matrix_flags(lyapunov, lya_src);
    lyapunov->add_option("--init", lya_init,
                         "initial point: scalar for interval maps (default 0.3), comma list "
                         "for operators (default centroid)");
    lyapunov->add_option("--steps", lya_steps, "iterations (default 100000)");
    lyapunov->add_option("--transient", lya_transient, "discarded iterations (default 1000)");
    lyapunov->add_option("--out", lya_out, "write JSON here instead of stdout");

    // ---- invariants ----
    std::string inv_model = "v3";
    std::optional<double> inv_a;
    double inv_omega = 1.0;
    long inv_samples = 1000;
    std::uint64_t inv_seed = 0;
    double inv_tol = 1e-9;
    std::string inv_out;
    CLI::App* invariants = app.add_subcommand(
        "invariants", "Verify one-step invariance of the labeled sets of v2 or v3");
    invariants->add_option("--model", inv_model, "v2 or v3");
    invariants->add_option("--a", inv_a, "model parameter a")->required();
    invariants->add_option("--omega", inv_omega, "fiber slope for v2 (default 1)");
    invariants->add_option("--samples", inv_samples, "trials per set (default 1000)");
    invariants->add_option("--seed", inv_seed, "random seed (default 0)");
    invariants->add_option("--tol", inv_tol, "membership band (default 1e-9)");
    invariants->add_option("--out", inv_out, "write JSON here instead of stdout");

    // ---- conjecture ----
    double con_a = 0.0;
    long con_trials = 100;
    long con_steps = 10000;
    std::uint64_t con_seed = 0;
    double con_tol = 1e-3;
    std::string con_out;
    CLI::App* conjecture = app.add_subcommand(
        "conjecture",
        "Sample the open sectors of v3 and measure convergence toward s4 (evidence only)");
    conjecture->add_option("--a", con_a, "model parameter a")->required();
    conjecture->add_option("--samples", con_trials, "number of trials (default 100)");
    conjecture->add_option("--steps", con_steps, "iterations per trial (default 10000)");
    conjecture->add_option("--seed", con_seed, "random seed (default 0)");
    conjecture->add_option("--tol", con_tol, "convergence tolerance (default 1e-3)");
    conjecture->add_option("--out", con_out, "write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto [P, id, note] = check_src.resolve();
            const ConditionReport rep = check_conditions(P, check_tol);
            const EdgeNecessityReport edges = check_edge_necessity(P, check_tol);
            json j{{"operator", id},
                   {"loader", note},
                   {"conditions", to_json(rep)},
                   {"edge_necessity", to_json(edges)}};
            emit_json(j, check_out);
            return rep.necessary() ? kExitOk : kExitNegative;
        }

        if (preserve->parsed()) {
            auto [P, id, note] = pres_src.resolve();
            const PreservationVerdict v = preservation_oracle(P, pres_samples, pres_seed, pres_tol);
            json j{{"operator", id}, {"loader", note}, {"verdict", to_json(v)}};
            emit_json(j, pres_out);
            return v.preserved ? kExitOk : kExitNegative;
        }

        if (simulate->parsed()) {
            auto [P, id, note] = sim_src.resolve();
            const SimplexPoint x0(parse_point(sim_init));
            Trajectory traj;
            try {
                traj = iterate(P, x0, static_cast<std::size_t>(sim_steps), kSimplexEps, id);
            } catch (const domain_escape_error& e) {
                std::cerr << e.what() << "\n";
                return kExitNegative;
            }
            std::ostringstream os;
            write_trajectory_csv(os, traj);
            emit(os.str(), sim_out);
            return kExitOk;
        }

        if (fixed_points->parsed()) {
            auto [P, id, note] = fp_src.resolve();
            const std::vector<FixedPointRecord> recs = find_fixed_points(P, fp_grid, fp_tol);
            if (recs.empty())
                std::cerr << "warning: no fixed point converged; consider a finer --grid\n";
            json j{{"operator", id}, {"loader", note}, {"fixed_points", to_json(recs)}};
            emit_json(j, fp_out);
            return kExitOk;
        }

        if (bifurcation->parsed()) {
            std::function<QuadMap1D(double)> family;
            if (bif_model == "logistic") {
                family = [](double mu) { return logistic_map(mu); };
            } else if (bif_model == "va") {
                family = [](double b) { return models::reduce_va(b); };
            } else if (bif_model == "v2") {
                family = [](double a) { return models::reduce_v2_interval(a); };
            } else {
                throw std::invalid_argument("bifurcation supports models logistic, va and v2");
            }
            const std::vector<double> params = linspace(bif_from, bif_to, bif_grid);
            const BifurcationScan scan =
                bifurcation_scan(family, bif_model == "logistic" ? "mu" :
                                 bif_model == "va" ? "b" : "a",
                                 params, bif_transient, bif_keep, 64, bif_tol, bif_x0);
            std::ostringstream os;
            write_bifurcation_csv(os, scan);
            emit(os.str(), bif_out);
            return kExitOk;
        }

        if (lyapunov->parsed()) {
            json j;
            if (lya_src.has_model()) {
                const models::ModelSpec spec = lya_src.spec();
                if (auto g = spec.interval_reduction()) {
                    const double x0 = lya_init.empty() ? 0.3 : parse_point(lya_init).at(0);
                    const LyapunovEstimate est = lyapunov_exponent(*g, x0, lya_steps, lya_transient);
                    j = json{{"operator", spec.name()},
                             {"form", "interval-reduction"},
                             {"estimate", to_json(est)}};
                    emit_json(j, lya_out);
                    return kExitOk;
                }
            }
            auto [P, id, note] = lya_src.resolve();
            std::vector<double> x0v;
            if (lya_init.empty())
                x0v.assign(static_cast<std::size_t>(P.dim()), 1.0 / static_cast<double>(P.dim()));
            else
                x0v = parse_point(lya_init);
            const SimplexPoint x0(x0v);
            const LyapunovEstimate est = lyapunov_exponent(P, x0, lya_steps, lya_transient);
            j = json{{"operator", id},
                     {"loader", note},
                     {"form", "tangent-renormalization"},
                     {"estimate", to_json(est)}};
            emit_json(j, lya_out);
            return kExitOk;
        }

        if (invariants->parsed()) {
            json arr = json::array();
            bool all_passed = true;
            if (inv_model == "v3") {
                for (models::V3Set set : {models::V3Set::M1, models::V3Set::M2, models::V3Set::M3,
                                          models::V3Set::M4, models::V3Set::M5}) {
                    const models::InvarianceReport rep =
                        models::verify_invariance_v3(*inv_a, set, inv_samples, inv_seed, inv_tol);
                    all_passed = all_passed && rep.passed;
                    arr.push_back(to_json(rep));
                }
            } else if (inv_model == "v2") {
                for (models::V2Fiber fiber :
                     {models::V2Fiber::M0, models::V2Fiber::M1, models::V2Fiber::Momega}) {
                    const models::InvarianceReport rep = models::verify_invariance_v2(
                        *inv_a, fiber, inv_omega, inv_samples, inv_seed, inv_tol);
                    all_passed = all_passed && rep.passed;
                    arr.push_back(to_json(rep));
                }
            } else {
                throw std::invalid_argument("invariants supports models v2 and v3");
            }
            emit_json(json{{"model", inv_model}, {"a", *inv_a}, {"reports", std::move(arr)}},
                      inv_out);
            return all_passed ? kExitOk : kExitNegative;
        }

        if (conjecture->parsed()) {
            const models::ConjectureStats st =
                models::conjecture_experiment(con_a, con_trials, con_steps, con_seed, con_tol);
            emit_json(to_json(st), con_out);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
