#include "momentlab/errors.hpp"
#include "momentlab/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace momentlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

void write_output(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << body;
}

void write_json(const std::string& path, const Json& j) {
    write_output(path, j.dump(2) + "\n");
}

int default_depth_cap() {
    if (const char* env = std::getenv("MOMENTLAB_DEPTH_CAP"))
        return std::max(1, std::atoi(env));
    return 40;
}

struct SequenceInput {
    std::string seq;
    std::string measure;
    unsigned long seed = 0;

    MomentVector resolve(std::size_t length_hint) const {
        if (!seq.empty())
            return MomentVector::from_rationals(parse_rational_list(seq));
        if (!measure.empty())
            return moments_of(Measure::parse(measure, seed), length_hint);
        throw CLI::ValidationError("one of --seq or --measure is required");
    }
};

std::variant<Measure, MomentVector> resolve_source(const SequenceInput& input) {
    if (!input.measure.empty())
        return Measure::parse(input.measure, input.seed);
    if (!input.seq.empty())
        return MomentVector::from_rationals(parse_rational_list(input.seq));
    throw CLI::ValidationError("one of --seq or --measure is required");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation with Hausdorff moment sequences, the Pascal "
                 "dimension group, and Cantor-set embedding certificates"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    SequenceInput input;

    // moments gen|check|extend
    auto* moments = app.add_subcommand("moments", "generate, check or extend moment vectors");
    moments->require_subcommand(1);

    auto* gen = moments->add_subcommand("gen", "exact moments of a measure");
    std::size_t gen_n = 8;
    gen->add_option("--measure", input.measure, "measure spec, e.g. lebesgue, beta:2,3")
        ->required();
    gen->add_option("--n", gen_n, "highest moment index");
    gen->add_option("--seed", input.seed, "seed for random-atomic measures");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* check = moments->add_subcommand("check", "membership verdict with certificate");
    check->add_option("--seq", input.seq, "comma-separated rational sequence")->required();
    check->add_option("--out", out_path, "output file");

    auto* extend_cmd = moments->add_subcommand("extend", "extend an interior vector inside G");
    std::string group_spec = "Q";
    std::size_t upto = 8;
    extend_cmd->add_option("--seq", input.seq, "comma-separated rational sequence")->required();
    extend_cmd->add_option("--group", group_spec, "subgroup spec, e.g. Z[1/2]")->required();
    extend_cmd->add_option("--upto", upto, "extend through this index")->required();
    extend_cmd->add_option("--out", out_path, "output file");

    // pascal / trace
    auto* pascal_cmd = app.add_subcommand("pascal", "Pascal table of a moment vector");
    std::size_t depth = 8;
    std::optional<std::size_t> trace_level;
    pascal_cmd->add_option("--measure", input.measure, "measure spec");
    pascal_cmd->add_option("--seq", input.seq, "explicit sequence");
    pascal_cmd->add_option("--seed", input.seed, "seed for random-atomic measures");
    pascal_cmd->add_option("--depth", depth, "table depth N");
    pascal_cmd->add_option("--trace-level", trace_level, "also emit the trace row at this level");
    pascal_cmd->add_option("--format", format, "json or csv");
    pascal_cmd->add_option("--out", out_path, "output file");

    auto* trace_cmd = app.add_subcommand("trace", "GICAR trace row at a level");
    std::size_t level = 4;
    trace_cmd->add_option("--measure", input.measure, "measure spec");
    trace_cmd->add_option("--seq", input.seq, "explicit sequence");
    trace_cmd->add_option("--seed", input.seed, "seed for random-atomic measures");
    trace_cmd->add_option("--level", level, "trace level n")->required();
    trace_cmd->add_option("--out", out_path, "output file");

    // perturb / perturb-independent
    auto* perturb_cmd = app.add_subcommand("perturb", "perturb a moment sequence into G");
    std::size_t m = 4;
    std::string eps = "1/64";
    std::string json_path;
    perturb_cmd->add_option("--measure", input.measure, "measure spec");
    perturb_cmd->add_option("--seq", input.seq, "explicit sequence");
    perturb_cmd->add_option("--seed", input.seed, "seed for random-atomic measures");
    perturb_cmd->add_option("--m", m, "perturbed prefix length")->required();
    perturb_cmd->add_option("--eps", eps, "deviation bound for each perturbed coordinate")
        ->required();
    perturb_cmd->add_option("--group", group_spec, "subgroup spec")->required();
    perturb_cmd->add_option("--upto", upto, "extend through this index")->required();
    perturb_cmd->add_option("--json", json_path, "output file (default stdout)");

    auto* indep_cmd =
        app.add_subcommand("perturb-independent", "perturbation with Q-independent terms");
    std::string gens = "sqrt2,sqrt3,sqrt5,sqrt7,sqrt11,sqrt13";
    indep_cmd->add_option("--measure", input.measure, "measure spec");
    indep_cmd->add_option("--seq", input.seq, "explicit sequence");
    indep_cmd->add_option("--seed", input.seed, "seed for random-atomic measures");
    indep_cmd->add_option("--m", m, "perturbed prefix length")->required();
    indep_cmd->add_option("--eps", eps, "deviation bound for each perturbed coordinate")
        ->required();
    indep_cmd->add_option("--gens", gens, "comma-separated sqrt generators");
    indep_cmd->add_option("--upto", upto, "extend through this index")->required();
    indep_cmd->add_option("--json", json_path, "output file (default stdout)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "LP feasibility oracle on a grid");
    long grid = 256;
    std::string tol = "1/1024";
    oracle_cmd->add_option("--seq", input.seq, "explicit sequence")->required();
    oracle_cmd->add_option("--grid", grid, "grid size");
    oracle_cmd->add_option("--tol", tol, "per-coordinate tolerance");
    oracle_cmd->add_option("--out", out_path, "output file");

    // cantor-embed / cantor-verify
    auto* embed_cmd = app.add_subcommand("cantor-embed", "build an embedding certificate");
    std::size_t levels = 6;
    int depth_cap = default_depth_cap();
    embed_cmd->add_option("--levels", levels, "number of functions beyond g_0")->required();
    embed_cmd->add_option("--depth-cap", depth_cap, "cylinder refinement cap");
    embed_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("cantor-verify", "verify an embedding certificate");
    std::string cert_path;
    verify_cmd->add_option("certificate", cert_path, "certificate JSON file")->required();
    verify_cmd->add_option("--out", out_path, "report output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const MomentVector v = moments_of(Measure::parse(input.measure, input.seed), gen_n);
            write_json(out_path, Json{{"measure", input.measure}, {"moments", moments_json(v)}});
        } else if (check->parsed()) {
            const MomentVector v = input.resolve(0);
            write_json(out_path, membership_json(v, membership(v)));
        } else if (extend_cmd->parsed()) {
            const auto G = std::make_shared<SubgroupDescriptor>(SubgroupDescriptor::parse(group_spec));
            const MomentVector v = extend(input.resolve(0), G, upto);
            write_json(out_path, Json{{"group", G->to_string()}, {"moments", moments_json(v)}});
        } else if (pascal_cmd->parsed()) {
            const MomentVector v = input.resolve(depth);
            const PascalTable table = build_table(v, depth);
            if (format == "csv") {
                write_output(out_path, pascal_csv(table));
            } else if (format == "json") {
                Json out = pascal_json(table);
                if (trace_level) {
                    Json values = Json::array();
                    for (const auto& x : gicar_trace(v, *trace_level))
                        values.push_back(format_rational(x));
                    out["trace"] = Json{{"level", *trace_level}, {"values", values}};
                }
                write_json(out_path, out);
            } else {
                throw CLI::ValidationError("--format must be json or csv");
            }
        } else if (trace_cmd->parsed()) {
            const MomentVector v = input.resolve(level);
            const std::vector<Rational> row = gicar_trace(v, level);
            Json values = Json::array();
            for (const auto& x : row)
                values.push_back(format_rational(x));
            write_json(out_path, Json{{"level", level}, {"values", values}});
        } else if (perturb_cmd->parsed() || indep_cmd->parsed()) {
            PerturbationRequest req;
            req.source = resolve_source(input);
            req.prefix_length = m;
            req.epsilons.assign(m, parse_rational(eps));
            req.total_length = upto;
            if (indep_cmd->parsed()) {
                req.independent = true;
                req.subgroup = std::make_shared<SubgroupDescriptor>(
                    SubgroupDescriptor::parse("gen:" + gens));
            } else {
                req.subgroup =
                    std::make_shared<SubgroupDescriptor>(SubgroupDescriptor::parse(group_spec));
            }
            const PerturbationResult result =
                req.independent ? perturb_independent(req) : perturb(req);
            write_json(json_path, perturbation_json(req, result));
        } else if (oracle_cmd->parsed()) {
            const MomentVector v = input.resolve(0);
            const LpResult result = lp_feasible(v, grid, parse_rational(tol));
            Json out{{"feasible", result.feasible}};
            if (result.witness)
                out["witness"] = witness_json(*result.witness);
            write_json(out_path, out);
        } else if (embed_cmd->parsed()) {
            const EmbeddingCertificate cert = build_embedding(levels, depth_cap);
            const VerificationReport report = verify_embedding(cert);
            if (!report.ok) {
                std::cerr << "built certificate failed self-verification\n";
                return kExitVerification;
            }
            write_json(out_path, embedding_json(cert));
        } else if (verify_cmd->parsed()) {
            std::ifstream in(cert_path);
            if (!in) {
                std::cerr << "cannot open certificate '" << cert_path << "'\n";
                return kExitUsage;
            }
            VerificationReport report;
            try {
                const Json j = Json::parse(in);
                report = verify_embedding(embedding_from_json(j));
            } catch (const std::exception& e) {
                report.ok = false;
                report.violations.push_back({"parse", "", e.what()});
            }
            write_json(out_path, report_json(report));
            return report.ok ? kExitOk : kExitVerification;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitOk;
}
