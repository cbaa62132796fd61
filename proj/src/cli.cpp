#include "lupoly/cli.hpp"

#include "lupoly/acceptance.hpp"
#include "lupoly/dimension.hpp"
#include "lupoly/errors.hpp"
#include "lupoly/fiberlab.hpp"
#include "lupoly/json_io.hpp"
#include "lupoly/polytope.hpp"
#include "lupoly/stability.hpp"
#include "lupoly/wall.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

namespace lupoly::cli {

namespace {

// Tunables that may come from --config; explicit flags win.
struct Settings {
    double tol = kDefaultTolerance;
    double rank_tol = kDefaultRankTolerance;
    double fiber_tol = SamplerOptions{}.tol;
    int max_restarts = SamplerOptions{}.max_restarts;
    int max_iterations = SamplerOptions{}.max_iterations;
    int samples = 5;
    std::uint64_t seed = 1;
};

// Where the target spectra come from: exactly one of these is set.
struct InputFlags {
    std::string lambda;
    std::string state_path;
    std::string spectra_path;
    bool renormalize = false;
};

struct Target {
    std::vector<double> lambdas;
    std::optional<std::vector<Rational>> exact;  // only for --lambda
};

json read_json(const std::string& path, std::istream& in) {
    try {
        if (path == "-") return json::parse(in);
        std::ifstream file(path);
        if (!file) throw InvalidInput("cannot open " + path);
        return json::parse(file);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": invalid JSON: " + e.what());
    }
}

Target read_target(const InputFlags& f, std::istream& in, bool allow_state) {
    const int given = !f.lambda.empty() + !f.state_path.empty() + !f.spectra_path.empty();
    if (given != 1) {
        throw InvalidInput(allow_state ? "give exactly one of --lambda, --state, --spectra"
                                       : "give exactly one of --lambda, --spectra");
    }
    Target t;
    if (!f.lambda.empty()) {
        t.exact = parse_rational_list(f.lambda);
        for (const auto& r : *t.exact) t.lambdas.push_back(to_double(r));
    } else if (!f.state_path.empty()) {
        t.lambdas = psi_map(read_state_file(f.state_path, f.renormalize)).lambdas;
    } else {
        const json doc = read_json(f.spectra_path, in);
        if (!doc.is_object() || !doc.contains("lambdas") || !doc["lambdas"].is_array()) {
            throw InvalidInput("spectra document needs a \"lambdas\" array");
        }
        for (const auto& v : doc["lambdas"]) {
            if (!v.is_number()) throw InvalidInput("\"lambdas\" entries must be numbers");
            t.lambdas.push_back(v.get<double>());
        }
        if (t.lambdas.empty()) throw InvalidInput("\"lambdas\" is empty");
    }
    return t;
}

void add_input_flags(CLI::App* cmd, InputFlags& f, bool allow_state) {
    auto* lam = cmd->add_option("--lambda", f.lambda, "comma-separated lambdas; decimals or fractions like 1/6");
    auto* spec = cmd->add_option("--spectra", f.spectra_path, "psi output document ('-' for stdin)");
    lam->excludes(spec);
    if (allow_state) {
        auto* st = cmd->add_option("--state", f.state_path, "state file {\"L\", \"amplitudes\": [[re, im], ...]}");
        st->excludes(lam)->excludes(spec);
        cmd->add_flag("--renormalize", f.renormalize, "normalize the state instead of rejecting it");
    }
}

// Non-members come back as a rejected StratumClass carrying the violations.
StratumClass classify_target(const Target& t, double tol) {
    const int n = static_cast<int>(t.lambdas.size());
    if (t.exact) {
        auto m = membership(std::span<const Rational>(*t.exact));
        if (!m.member) return StratumClass::rejected(n, std::move(m));
        return classify(std::span<const Rational>(*t.exact));
    }
    auto m = membership(std::span<const double>(t.lambdas), tol);
    if (!m.member) return StratumClass::rejected(n, std::move(m));
    return classify(std::span<const double>(t.lambdas), tol);
}

json target_json(const Target& t) {
    json out = {{"L", t.lambdas.size()}, {"lambdas", t.lambdas}};
    if (t.exact) {
        json exact = json::array();
        for (const auto& r : *t.exact) exact.push_back(to_string(r));
        out["lambdas_exact"] = std::move(exact);
    }
    return out;
}

void apply_config(const json& cfg, Settings& s, const CLI::App& app) {
    auto unset = [&](const char* name) {
        const CLI::Option* opt = nullptr;
        for (const auto* sub : app.get_subcommands()) {
            try {
                opt = sub->get_option(name);
            } catch (const CLI::OptionNotFound&) {
                continue;
            }
            if (opt->count() > 0) return false;
        }
        return true;
    };
    auto take = [&](const char* key, const char* flag, auto& field) {
        if (!cfg.contains(key)) return;
        if (!unset(flag)) return;
        try {
            field = cfg[key].get<std::decay_t<decltype(field)>>();
        } catch (const json::exception&) {
            throw InvalidInput(std::string("config: bad value for \"") + key + "\"");
        }
    };
    if (!cfg.is_object()) throw InvalidInput("config file must hold a JSON object");
    static const char* known[] = {"tol", "rank_tol", "fiber_tol", "max_restarts", "max_iterations", "samples", "seed"};
    for (const auto& [key, value] : cfg.items()) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known)) {
            throw InvalidInput("config: unknown key \"" + key + "\"");
        }
    }
    take("tol", "--tol", s.tol);
    take("rank_tol", "--rank-tol", s.rank_tol);
    take("fiber_tol", "--fiber-tol", s.fiber_tol);
    take("max_restarts", "--max-restarts", s.max_restarts);
    take("max_iterations", "--max-iterations", s.max_iterations);
    take("samples", "--samples", s.samples);
    take("seed", "--seed", s.seed);
}

void check_settings(const Settings& s) {
    if (!(s.tol >= 0.0) || !(s.rank_tol > 0.0) || !(s.fiber_tol > 0.0)) {
        throw InvalidInput("tolerances must be positive (tol may be 0)");
    }
    if (s.max_restarts < 0 || s.max_iterations < 1 || s.samples < 1) {
        throw InvalidInput("max-restarts >= 0, max-iterations >= 1 and samples >= 1 required");
    }
}

SamplerOptions sampler_options(const Settings& s) {
    SamplerOptions o;
    o.tol = s.fiber_tol;
    o.max_restarts = s.max_restarts;
    o.max_iterations = s.max_iterations;
    o.zero_tol = s.tol;
    return o;
}

std::string bits(std::size_t ket, int num_qubits) {
    std::string s;
    for (int q = 0; q < num_qubits; ++q) s += (ket & qubit_mask(num_qubits, q)) ? '1' : '0';
    return s;
}

json error_doc(int code, const std::string& message) {
    static const char* kinds[] = {"ok", "invalid_input", "numerical_failure", "invariant_violation"};
    return {{"error", {{"code", code}, {"kind", kinds[code]}, {"message", message}}}};
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local-unitary invariants and the one-qubit marginal polytope of L-qubit pure states", "lupoly"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::string config_path;
    std::string output_path;
    app.add_option("--config", config_path, "JSON file with tol, rank_tol, fiber_tol, max_restarts, max_iterations, samples, seed");
    app.add_option("-o,--output", output_path, "write the report here instead of stdout");

    InputFlags input;
    int num_qubits = 0;
    bool oracle = false;
    unsigned threads = 0;
    int distinguished = 1;
    std::optional<int> weight_k;
    std::optional<double> alpha;
    std::optional<int> k1;
    bool probe = false;
    std::string phases_text;
    std::string save_state;
    bool full_suite = false;

    auto add_tol = [&](CLI::App* c) { c->add_option("--tol", s.tol, "membership/classification tolerance"); };
    auto add_rank_tol = [&](CLI::App* c) { c->add_option("--rank-tol", s.rank_tol, "relative SVD rank threshold"); };
    auto add_sampler = [&](CLI::App* c) {
        c->add_option("--seed", s.seed, "base seed");
        c->add_option("--fiber-tol", s.fiber_tol, "fiber residual tolerance");
        c->add_option("--max-restarts", s.max_restarts);
        c->add_option("--max-iterations", s.max_iterations);
    };

    auto* psi = app.add_subcommand("psi", "shifted one-qubit spectra of a state");
    psi->add_option("--state", input.state_path, "state file")->required();
    psi->add_flag("--renormalize", input.renormalize);

    auto* cls = app.add_subcommand("classify", "locate lambda in the polytope face structure");
    add_input_flags(cls, input, true);
    add_tol(cls);

    auto* dim = app.add_subcommand("dim", "classification plus dimension of the reduced space");
    add_input_flags(dim, input, true);
    add_tol(dim);

    auto* verts = app.add_subcommand("vertices", "polytope vertices");
    verts->add_option("-L,--qubits", num_qubits)->required();
    verts->add_flag("--oracle", oracle, "cross-check against brute-force enumeration (L <= 8)");
    verts->add_option("--threads", threads, "enumeration threads (0 = hardware)");

    auto* facs = app.add_subcommand("facets", "facets with incident vertices (face-lattice data)");
    facs->add_option("-L,--qubits", num_qubits)->required();

    auto* xspec = app.add_subcommand("xspec", "wall-operator spectrum");
    xspec->add_option("-L,--qubits", num_qubits)->required();
    xspec->add_option("--distinguished", distinguished, "1-based distinguished qubit");
    xspec->add_option("--k", weight_k, "also list the basis of the eigenspace -L+2k");

    auto* wall = app.add_subcommand("wall-check", "torus certificate; with --lambda also build a wall state");
    wall->add_option("-L,--qubits", num_qubits);
    wall->add_option("--lambda", input.lambda, "wall point to realize");
    wall->add_option("--phases", phases_text, "one phase per qubit (default all 0)");
    wall->add_option("--distinguished", distinguished, "1-based wall index (default: detected)");
    add_tol(wall);

    auto* stable = app.add_subcommand("stable", "construct and verify a stable state");
    stable->add_option("-L,--qubits", num_qubits);
    stable->add_option("--alpha", alpha, "GHZ weight (L = 4 only)");
    stable->add_option("--k1", k1, "number of leading qubits with maximally mixed reductions (default L)");
    stable->add_option("--state", input.state_path, "verify this state instead");
    stable->add_flag("--renormalize", input.renormalize);
    stable->add_flag("--probe", probe, "allow any alpha, including the excluded ones");
    stable->add_option("--save-state", save_state);
    add_rank_tol(stable);

    auto* sample = app.add_subcommand("sample-fiber", "find a state with the given spectra");
    add_input_flags(sample, input, false);
    add_sampler(sample);
    add_tol(sample);
    sample->add_option("--save-state", save_state);

    auto* odim = app.add_subcommand("oracle-dim", "numerical dimension estimate from sampled fibers");
    add_input_flags(odim, input, false);
    add_sampler(odim);
    add_tol(odim);
    add_rank_tol(odim);
    odim->add_option("--samples", s.samples);

    auto* self = app.add_subcommand("selftest", "acceptance suite (reduced sample counts unless --full)");
    self->add_flag("--full", full_suite);

    auto emit = [&](const json& doc) {
        if (output_path.empty()) {
            out << doc.dump(2) << '\n';
        } else {
            std::ofstream file(output_path);
            if (!file) throw InvalidInput("cannot write " + output_path);
            file << doc.dump(2) << '\n';
        }
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        out << error_doc(kInvalidInput, e.what()).dump(2) << '\n';
        return kInvalidInput;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw InvalidInput("cannot open config " + config_path);
            json cfg;
            try {
                cfg = json::parse(file);
            } catch (const json::exception& e) {
                throw InvalidInput("config: invalid JSON: " + std::string(e.what()));
            }
            apply_config(cfg, s, app);
        }
        check_settings(s);

        if (psi->parsed()) {
            const PureState state = read_state_file(input.state_path, input.renormalize);
            const SpectraPoint point = psi_map(state);
            json doc = to_json(point);
            doc["purities"] = purity_invariants(state);
            emit(doc);
            return kOk;
        }
        if (cls->parsed() || dim->parsed()) {
            const Target t = read_target(input, in, true);
            const StratumClass c = classify_target(t, s.tol);
            json doc = target_json(t);
            doc["classification"] = to_json(c);
            if (!c.member) {
                emit(doc);
                err << "error: lambda lies outside the polytope\n";
                return kInvalidInput;
            }
            if (dim->parsed()) doc.update(to_json(dim_reduced_space(c)));
            emit(doc);
            return kOk;
        }
        if (verts->parsed()) {
            const VertexList list = vertices(num_qubits);
            json doc = to_json(list);
            if (oracle) {
                const VertexList brute = vertices_oracle(num_qubits, threads);
                doc["oracle_count"] = brute.vertices.size();
                doc["oracle_agrees"] = same_vertex_set(list, brute);
            }
            emit(doc);
            return oracle && !doc["oracle_agrees"].get<bool>() ? kInvariantViolation : kOk;
        }
        if (facs->parsed()) {
            json fl = json::array();
            for (const auto& f : facets(num_qubits)) fl.push_back(to_json(f));
            json doc = to_json(vertices(num_qubits));
            doc["facet_count"] = fl.size();
            doc["facets"] = std::move(fl);
            emit(doc);
            return kOk;
        }
        if (xspec->parsed()) {
            if (distinguished < 1 || distinguished > num_qubits) throw InvalidInput("--distinguished out of range");
            json doc = to_json(build_wall_operator(num_qubits, distinguished - 1));
            if (weight_k) {
                const auto basis = eigenspace_basis(num_qubits, *weight_k, distinguished - 1);
                json kets = json::array();
                for (auto k : basis.kets) kets.push_back(bits(k, num_qubits));
                doc["eigenspace"] = {{"k", basis.k}, {"eigenvalue", basis.eigenvalue},
                                     {"dimension", basis.kets.size()}, {"kets", std::move(kets)}};
            }
            emit(doc);
            return kOk;
        }
        if (wall->parsed()) {
            std::optional<Target> t;
            if (!input.lambda.empty()) t = read_target(input, in, false);
            const int L = t ? static_cast<int>(t->lambdas.size()) : num_qubits;
            if (t && num_qubits != 0 && num_qubits != L) throw InvalidInput("-L disagrees with --lambda");
            if (L == 0) throw InvalidInput("wall-check needs -L or --lambda");
            json doc = {{"L", L}};
            if (L >= 3 || !t) doc["certificate"] = to_json(torus_transitivity_check(L));
            if (t) {
                std::vector<double> phases(static_cast<std::size_t>(L), 0.0);
                if (!phases_text.empty()) {
                    const auto parsed = parse_rational_list(phases_text);
                    if (parsed.size() != phases.size()) throw InvalidInput("--phases needs one value per qubit");
                    for (std::size_t i = 0; i < parsed.size(); ++i) phases[i] = to_double(parsed[i]);
                }
                std::optional<int> d;
                if (wall->get_option("--distinguished")->count() > 0) {
                    if (distinguished < 1 || distinguished > L) throw InvalidInput("--distinguished out of range");
                    d = distinguished - 1;
                }
                const PureState state = wall_state(t->lambdas, phases, d, std::max(s.tol, 1e-12));
                const int used = d ? *d : *tight_wall_index(t->lambdas, std::max(s.tol, 1e-12));
                const SpectraPoint reached = psi_map(state);
                double worst = 0.0;
                for (std::size_t i = 0; i < reached.lambdas.size(); ++i) {
                    worst = std::max(worst, std::abs(reached.lambdas[i] - t->lambdas[i]));
                }
                doc["wall_state"] = {{"distinguished", used + 1},
                                     {"target", t->lambdas},
                                     {"reached", reached.lambdas},
                                     {"max_error", worst},
                                     {"in_weight_space", check_wall_condition(state, 1, used)},
                                     {"state", state_to_json(state)}};
            }
            emit(doc);
            return kOk;
        }
        if (stable->parsed()) {
            std::optional<PureState> state;
            if (!input.state_path.empty()) {
                if (alpha || probe) throw InvalidInput("--state excludes --alpha/--probe");
                state = read_state_file(input.state_path, input.renormalize);
            } else {
                if (num_qubits == 0) throw InvalidInput("stable needs -L or --state");
                if (probe) {
                    state = lemma_family_state(num_qubits, alpha.value_or(num_qubits == 4 ? 2.0 : 1.0));
                } else {
                    state = stable_state(num_qubits, alpha);
                }
            }
            const int L = state->num_qubits();
            if (num_qubits != 0 && num_qubits != L) throw InvalidInput("-L disagrees with the state file");
            const int kk = k1.value_or(L);
            if (kk < 1 || kk > L) throw InvalidInput("--k1 must lie in 1..L");
            const StabilityVerdict v = verify_stable(*state, kk, s.rank_tol);
            json doc = {{"L", L}, {"verdict", to_json(v)}, {"lambdas", psi_map(*state).lambdas}};
            if (alpha) doc["alpha"] = *alpha;
            if (!save_state.empty()) write_state_file(save_state, *state);
            emit(doc);
            return v.full.ill_conditioned || v.subgroup.ill_conditioned ? kNumericalFailure : kOk;
        }
        if (sample->parsed()) {
            const Target t = read_target(input, in, false);
            const FiberSample fs = sample_fiber(SpectraPoint{t.lambdas}, s.seed, sampler_options(s));
            if (!save_state.empty()) write_state_file(save_state, fs.state);
            emit(to_json(fs));
            return kOk;
        }
        if (odim->parsed()) {
            const Target t = read_target(input, in, false);
            const SpectraPoint target{t.lambdas};
            const StratumClass c = classify_target(t, s.tol);
            if (!c.member) throw InvalidInput("lambda lies outside the polytope");
            const DimReport closed = dim_reduced_space(c);
            const NumericDimEstimate est = numeric_dim(target, s.samples, s.seed, sampler_options(s), s.rank_tol);
            json doc = to_json(est);
            doc.update(target_json(t));
            doc["closed_form"] = to_json(closed);
            doc["agrees"] = est.dim_estimate && *est.dim_estimate == closed.dim_M;
            emit(doc);
            if (est.status != "ok") return kNumericalFailure;
            return doc["agrees"].get<bool>() ? kOk : kInvariantViolation;
        }
        if (self->parsed()) {
            const auto config = full_suite ? acceptance::Config::full() : acceptance::Config::reduced();
            const auto results = acceptance::run_all(config);
            json crit = json::array();
            bool all = true;
            for (const auto& r : results) {
                all = all && r.passed;
                crit.push_back({{"id", r.id},
                                {"title", r.title},
                                {"passed", r.passed},
                                {"seconds", r.seconds},
                                {"time_limit", r.time_limit},
                                {"summary", r.summary},
                                {"failures", r.failures}});
                err << acceptance::format_line(r) << '\n';
            }
            emit({{"mode", full_suite ? "full" : "reduced"}, {"passed", all}, {"criteria", std::move(crit)}});
            return all ? kOk : kInvariantViolation;
        }
        throw InvalidInput("no subcommand");
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        out << error_doc(kInvalidInput, e.what()).dump(2) << '\n';
        return kInvalidInput;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        out << error_doc(kNumericalFailure, e.what()).dump(2) << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        out << error_doc(kInvariantViolation, e.what()).dump(2) << '\n';
        return kInvariantViolation;
    }
}

} // namespace lupoly::cli
