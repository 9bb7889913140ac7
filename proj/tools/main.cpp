// wignerlab: generate, check, analyze, and decompose linear operators that
// send fixed-rank projections to fixed-rank projections.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "verify_suites.hpp"
#include "wigner/families.hpp"
#include "wigner/recovery.hpp"
#include "wigner/serialize.hpp"
#include "wigner/xset.hpp"

namespace {

using nlohmann::json;
using namespace wigner;

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

Sigma parse_sigma(const std::string& text) {
    if (text == "id") return Sigma::Identity;
    if (text == "conj") return Sigma::Conjugation;
    throw ParseError("--sigma must be 'id' or 'conj'");
}

int resolve_k(const OperatorMap& map, std::optional<int> flag) {
    if (flag) return *flag;
    if (map.k) return *map.k;
    throw ParseError("no --k given and the operator file carries no k");
}

int cmd_gen(const std::string& kind, int n, int k, std::optional<int> m_flag,
            const std::string& sigma_text, std::uint64_t seed, const std::string& out) {
    GeneratedOperator gen;
    json truth;
    truth["kind"] = kind;
    truth["seed"] = seed;
    if (kind == "lu") {
        gen = generate_lu(n, n, k, parse_sigma(sigma_text), seed);
        truth["sigma"] = sigma_text;
    } else if (kind == "lperp") {
        gen = generate_lperp(k, n);
    } else if (kind == "luw") {
        const int m = m_flag.value_or(k);
        const int n_prime = n + (m - k) + 1;  // headroom keeps the isometry non-surjective
        gen = generate_luw(n, n_prime, k, m, parse_sigma(sigma_text), seed);
        truth["sigma"] = sigma_text;
    } else if (kind == "collapse") {
        gen = generate_collapse(n, k, seed);
    } else {
        throw ParseError("kind must be one of lu, lperp, luw, collapse");
    }
    save_json(out, operator_map_to_json(gen.map));
    truth["U"] = gen.ground_truth_u ? semilinear_to_json(*gen.ground_truth_u) : json(nullptr);
    truth["W"] = gen.ground_truth_w ? frame_to_json(*gen.ground_truth_w) : json(nullptr);
    save_json(out + ".truth.json", truth);
    std::cout << "wrote " << out << " and " << out << ".truth.json\n";
    return kExitOk;
}

int cmd_check(const std::string& in, std::optional<int> k_flag, int samples,
              std::uint64_t seed, double tol) {
    const OperatorMap map = operator_map_from_json(load_json(in));
    const int k = resolve_k(map, k_flag);

    json out;
    const ConditionReport r1 = check_L1(map, k, samples, seed ^ 0x11ULL, tol);
    out["l1"] = condition_report_to_json(r1);
    const ConditionReport r2 = check_L2(map, k, samples, seed ^ 0x22ULL, tol);
    out["l2"] = condition_report_to_json(r2);
    bool all = r1.passed && r2.passed;
    if (r1.passed) {
        try {
            const ConditionReport r3 =
                check_L3(map, k, *r1.inferred_m, samples, seed ^ 0x33ULL, tol);
            out["l3"] = condition_report_to_json(r3);
            all = all && r3.passed;
        } catch (const PreconditionViolated& e) {
            out["l3"] = json{{"error", e.what()}};
            all = false;
        }
    } else {
        out["l3"] = json(nullptr);
    }
    out["inferred_m"] = r1.inferred_m ? json(*r1.inferred_m) : json(nullptr);
    out["passed"] = all;
    std::cout << out.dump(2) << "\n";
    return all ? kExitOk : kExitMathFailure;
}

int cmd_xset(const std::string& x_path, const std::string& y_path, int count,
             std::uint64_t seed, double tol) {
    const Frame x = frame_from_json(load_json(x_path));
    const Frame y = frame_from_json(load_json(y_path));
    if (x.rank() != y.rank() || x.ambient_dim() != y.ambient_dim()) {
        throw ParseError("xset: frames must share ambient dimension and rank");
    }

    json out;
    out["classification"] = xset_class_name(geher_classify(x, y, tol));
    const XSetSample sample = xset_sample(x, y, count, seed, tol);
    out["members_found"] = sample.points.size();
    json dims = json::array();
    const std::size_t probe_count = std::min<std::size_t>(3, sample.points.size());
    for (std::size_t i = 0; i < probe_count; ++i) {
        try {
            dims.push_back(json{{"dimension", xset_local_dimension(x, y, sample.points[i], tol)}});
        } catch (const Error& e) {
            dims.push_back(json{{"error", e.what()}});
        }
    }
    out["local_dimensions"] = std::move(dims);
    out["sample"] = xset_sample_to_json(sample);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& in, std::optional<int> k_flag, int samples,
                  std::uint64_t seed, double tol) {
    const OperatorMap map = operator_map_from_json(load_json(in));
    const int k = resolve_k(map, k_flag);
    const Classification result = classify_operator(map, k, samples, seed, tol);
    std::cout << classification_to_json(result).dump(2) << "\n";
    return result.tag == ClassificationTag::Rejected ? kExitMathFailure : kExitOk;
}

int cmd_frame(int n, int k, std::uint64_t seed, const std::string& out) {
    Rng rng(seed);
    save_json(out, frame_to_json(random_frame(rng, n, k)));
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::ostringstream buffer;
    bool ok = false;
    if (suite == "graph") {
        ok = verify::run_graph(buffer, seed);
    } else if (suite == "xset") {
        ok = verify::run_xset(buffer, seed);
    } else if (suite == "roundtrip") {
        ok = verify::run_roundtrip(buffer, seed);
    } else if (suite == "all") {
        ok = verify::run_all(buffer, seed);
    } else {
        throw ParseError("suite must be one of graph, xset, roundtrip, all");
    }
    std::cout << buffer.str();
    return ok ? kExitOk : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator toolkit for projection-preserving linear maps"};
    app.require_subcommand(1);

    std::string kind, in_path, out_path, x_path, y_path, sigma = "id", suite;
    int n = 3, k = 1;
    std::optional<int> m_flag;
    std::optional<int> k_flag;
    std::uint64_t seed = 1;
    int samples = 200;
    double tol = 1e-8;

    auto* gen = app.add_subcommand("gen", "generate an operator file plus ground-truth sidecar");
    gen->add_option("kind", kind, "lu | lperp | luw | collapse")->required();
    gen->add_option("--n", n, "source Hilbert dimension")->required();
    gen->add_option("--k", k, "projection rank")->required();
    gen->add_option("--m", m_flag, "target projection rank (luw)");
    gen->add_option("--sigma", sigma, "id | conj");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_path, "output path")->required();

    auto* check = app.add_subcommand("check", "run the (L1)-(L3) condition checks");
    check->add_option("--in", in_path, "operator file")->required();
    check->add_option("--k", k_flag, "projection rank (defaults to file metadata)");
    check->add_option("--samples", samples, "sample count");
    check->add_option("--seed", seed, "random seed");
    check->add_option("--tol", tol, "projection / injectivity tolerance");

    auto* xset = app.add_subcommand("xset", "analyze the member set of a frame pair");
    xset->add_option("xfile", x_path, "frame JSON for X")->required();
    xset->add_option("yfile", y_path, "frame JSON for Y")->required();
    xset->add_option("--samples", samples, "requested member count")->default_val(10);
    xset->add_option("--seed", seed, "random seed");
    xset->add_option("--tol", tol, "membership tolerance");

    auto* decompose = app.add_subcommand("decompose", "recover (U, W) from an operator file");
    decompose->add_option("--in", in_path, "operator file")->required();
    decompose->add_option("--k", k_flag, "projection rank (defaults to file metadata)");
    decompose->add_option("--samples", samples, "condition check samples")->default_val(60);
    decompose->add_option("--seed", seed, "random seed");
    decompose->add_option("--tol", tol, "model residual tolerance")->default_val(1e-6);

    auto* frame = app.add_subcommand("frame", "write a random frame file");
    frame->add_option("--n", n, "ambient dimension")->required();
    frame->add_option("--k", k, "rank")->required();
    frame->add_option("--seed", seed, "random seed");
    frame->add_option("--out", out_path, "output path")->required();

    auto* verify = app.add_subcommand("verify", "run a deterministic property suite");
    verify->add_option("suite", suite, "graph | xset | roundtrip | all")->required();
    verify->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(kind, n, k, m_flag, sigma, seed, out_path);
        if (check->parsed()) return cmd_check(in_path, k_flag, samples, seed, tol);
        if (xset->parsed()) return cmd_xset(x_path, y_path, samples, seed, tol);
        if (decompose->parsed()) return cmd_decompose(in_path, k_flag, samples, seed, tol);
        if (frame->parsed()) return cmd_frame(n, k, seed, out_path);
        if (verify->parsed()) return cmd_verify(suite, seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BadRank& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
