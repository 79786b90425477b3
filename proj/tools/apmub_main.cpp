// apmub: construct and verify Almost Perfect MUBs from resolvable block
// designs. Subcommands: plan, construct (ses | qef), verify, weighing,
// oracle, mols, hadamard.
//
// Exit codes: 0 success / verified, 2 precondition violation, 3 verification
// failure, 4 unavailable resource (e.g. no real Hadamard of the needed order).

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "apmub/json_io.hpp"
#include "apmub/pipeline.hpp"

namespace fs = std::filesystem;
using namespace apmub;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double sig4(double v) { return v; }  // printed with %.4g via format below

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

HadamardChoice parse_hadamard(const std::string& s) {
    if (s == "auto") return HadamardChoice::automatic;
    if (s == "real") return HadamardChoice::real_only;
    if (s == "dft") return HadamardChoice::dft_only;
    if (s == "file") return HadamardChoice::from_file;
    throw DomainError("--hadamard must be auto, real, dft or file");
}

// Writes a JSON artifact and records it in the manifest's output list.
void emit(const fs::path& dir, const std::string& name, const Json& payload, Json& outputs) {
    std::string bytes = dump(payload);
    write_file((dir / name).string(), bytes);
    outputs.push_back(Json{{"file", name}, {"digest", fnv1a64_hex(bytes)}});
}

void write_manifest(const fs::path& dir, const std::string& command, const Json& parameters,
                    Json outputs) {
    Json manifest{{"tool", "apmub"},
                  {"version", kVersion},
                  {"command", command},
                  {"parameters", parameters},
                  {"outputs", outputs}};
    write_file((dir / "manifest.json").string(), dump(manifest));
}

void print_report(const SpectrumReport& report) {
    std::cout << "d = " << report.d << ", k = " << report.k << ", r = " << report.r << "\n";
    std::cout << "classification: " << classification_name(report.classification) << "\n";
    std::cout << "orthonormal: " << (report.orthonormal ? "yes" : "no")
              << ", exact: " << (report.exact ? "yes" : "no") << "\n";
    std::cout << "Delta (|<u|v>|): {";
    bool first = true;
    for (const auto& v : report.delta_sq) {
        std::cout << (first ? "" : ", ") << fmt4(std::sqrt(v.to_double())) << " (sq "
                  << v.str() << ")";
        first = false;
    }
    for (double v : report.delta_float) {
        std::cout << (first ? "" : ", ") << fmt4(v) << " (float)";
        first = false;
    }
    std::cout << "}\n";
    if (report.beta2)
        std::cout << "beta = " << fmt4(report.beta_double) << " (beta^2 = " << report.beta2->str()
                  << ")\n";
    else
        std::cout << "beta = " << fmt4(report.beta_double) << "\n";
    if (report.k > 0) std::cout << "epsilon = " << report.epsilon.str() << "\n";
    if (report.uniform_counts)
        std::cout << "per-vector counts: t1 = " << report.t1 << ", t2 = " << report.t2
                  << "; per-pair: n1 = " << report.n1 << ", n2 = " << report.n2 << "\n";
    if (report.lambda_estimate)
        std::cout << "lambda estimate = " << fmt4(*report.lambda_estimate) << "\n";
    for (const auto& issue : report.issues) std::cout << "issue: " << issue << "\n";
}

int cmd_plan(Int d, const std::string& json_path) {
    auto plans = plan(d);
    std::cout << "plans for d = " << d << " (descending r, ascending beta):\n";
    std::cout << "  method            k   s   q  e  f   r   beta    note\n";
    for (const auto& p : plans) {
        char line[256];
        std::snprintf(line, sizeof(line), "  %-16s %3lld %3lld %3lld %2lld %2lld %3lld   %-7.4g %s",
                      p.method == ConstructionPlan::Method::mols_lower_bound ? "mols_lower_bound"
                                                                             : "qef_reshape",
                      p.k, p.s, p.q, p.e, p.f, p.r, std::sqrt(p.beta2.to_double()),
                      p.note.c_str());
        std::cout << line << "\n";
    }
    if (!json_path.empty()) {
        Json arr = Json::array();
        for (const auto& p : plans) arr.push_back(plan_to_json(p));
        write_file(json_path, dump(arr));
    }
    return 0;
}

int emit_construction(const ConstructOutput& out, const std::string& out_dir,
                      const std::string& command, const Json& parameters) {
    SpectrumReport report = analyze(out.collection);
    if (report.classification != Classification::MUB &&
        report.classification != Classification::APMUB)
        throw VerificationError("constructed collection failed verification: classified " +
                                classification_name(report.classification));
    if (!report.beta2 || *report.beta2 != out.predicted_beta2)
        throw VerificationError("constructed beta^2 does not match the predicted " +
                                out.predicted_beta2.str());

    fs::path dir(out_dir);
    fs::create_directories(dir);
    Json outputs = Json::array();
    emit(dir, "design.json", design_to_json(out.design), outputs);
    emit(dir, "scaffold.json", scaffold_to_json(out.scaffold), outputs);
    Json bases = collection_to_json(out.collection);
    bases["expect"] = Json{{"classification", classification_name(report.classification)},
                           {"beta2", rational_to_json(*report.beta2)}};
    emit(dir, "bases.json", bases, outputs);
    emit(dir, "report.json", report_to_json(report), outputs);
    write_manifest(dir, command, parameters, outputs);

    std::cout << out.method << ": d = " << out.collection.d << ", k = " << out.collection.k
              << ", bases = " << out.collection.bases.size() << ", "
              << (out.scaffold.kind == ScaffoldKind::real ? "real" : "complex") << " scaffold\n";
    print_report(report);
    std::cout << "wrote " << (dir / "bases.json").string() << "\n";
    return 0;
}

int cmd_verify(const std::string& path, const std::string& json_path) {
    Json j = Json::parse(read_file(path), nullptr, true);
    MubCollection m = collection_from_json(j);
    SpectrumReport report = analyze(m);
    print_report(report);
    if (!json_path.empty()) write_file(json_path, dump(report_to_json(report)));

    bool ok = report.classification == Classification::MUB ||
              report.classification == Classification::APMUB;
    if (j.contains("expect")) {
        const Json& expect = j["expect"];
        if (expect.contains("classification") &&
            expect["classification"].get<std::string>() !=
                classification_name(report.classification)) {
            std::cout << "expected classification " << expect["classification"].get<std::string>()
                      << ", got " << classification_name(report.classification) << "\n";
            ok = false;
        }
        if (expect.contains("beta2") &&
            (!report.beta2 || rational_from_json(expect["beta2"]) != *report.beta2)) {
            std::cout << "expected beta^2 " << rational_from_json(expect["beta2"]).str() << "\n";
            ok = false;
        }
    }
    if (!ok) throw VerificationError("collection failed verification");
    return 0;
}

int cmd_weighing(const std::string& path, const std::string& out_dir) {
    Json j = Json::parse(read_file(path), nullptr, true);
    MubCollection m = collection_from_json(j);
    auto matrices = weighing_from_bases(m);
    std::cout << matrices.size() << " mutually unbiased weighing matrices";
    if (!matrices.empty())
        std::cout << ", order " << matrices.front().order << ", weight "
                  << matrices.front().weight;
    std::cout << "\n";
    std::cout << "pairwise W_i^dagger W_j audit: passed (exact)\n";
    if (!out_dir.empty()) {
        fs::path dir(out_dir);
        fs::create_directories(dir);
        Json outputs = Json::array();
        Json arr = Json::array();
        for (const auto& w : matrices) arr.push_back(weighing_to_json(w));
        emit(dir, "weighing.json", arr, outputs);
        write_manifest(dir, "weighing", Json{{"input", fs::path(path).filename().string()}},
                       outputs);
    }
    return 0;
}

int cmd_oracle(Int d, Int k, Int mu, long long budget) {
    Int bound = t_bound(d, k, mu);
    OracleResult r = t_oracle(d, k, mu, budget);
    std::cout << "T(" << d << "," << k << "," << mu << "): bound " << bound << ", backtracking "
              << r.size << (r.exact ? " (exact)" : " (lower bound, budget exceeded)") << ", nodes "
              << r.nodes << "\n";
    return 0;
}

int cmd_mols(Int s, const std::string& json_path) {
    MolsSet set = mols_for_order(s);
    std::cout << set.count() << " mutually orthogonal Latin squares of order " << s << "\n";
    if (!prime_power_decomposition(s))
        std::cout << "note: MacNeish lower bound; published N(" << s
                  << ") may be larger, but only constructed squares ship\n";
    if (!json_path.empty()) write_file(json_path, dump(mols_to_json(set)));
    return 0;
}

int cmd_hadamard(Int k, bool real_only, const std::string& json_path) {
    UnitaryScaffold h = resolve_scaffold(
        k, real_only ? HadamardChoice::real_only : HadamardChoice::automatic, nullptr);
    if (!verify_scaffold(h)) throw InternalError("factory scaffold failed verification");
    std::cout << "order " << h.k << " "
              << (h.kind == ScaffoldKind::real ? "real" : "complex")
              << " Hadamard scaffold, exact unitarity verified\n";
    if (!json_path.empty()) write_file(json_path, dump(scaffold_to_json(h)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"APMUB constructions from resolvable block designs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "enumerate admissible constructions for d");
    Int plan_d = 0;
    std::string plan_json;
    plan_cmd->add_option("--d", plan_d, "target dimension")->required();
    plan_cmd->add_option("--json", plan_json, "write the plan list as JSON");

    // construct
    auto* construct = app.add_subcommand("construct", "build a design and its bases");
    construct->require_subcommand(1);
    auto* ses = construct->add_subcommand("ses", "d = (s-e)s from w-MOLS(s)");
    Int ses_s = 0, ses_e = 0;
    std::optional<Int> ses_mols;
    std::string ses_h = "auto", ses_hfile, ses_out = "out";
    ses->add_option("--s", ses_s)->required();
    ses->add_option("--e", ses_e)->required();
    ses->add_option("--mols", ses_mols, "use only the first w squares");
    ses->add_option("--hadamard", ses_h, "auto|real|dft|file");
    ses->add_option("--hadamard-file", ses_hfile, "scaffold JSON for --hadamard file");
    ses->add_option("--out", ses_out, "output directory");

    auto* qef = construct->add_subcommand("qef", "d = (q-e)(q+f) by trim + reshape");
    Int qef_q = 0, qef_e = 0, qef_f = 0;
    std::string qef_h = "auto", qef_hfile, qef_out = "out";
    qef->add_option("--q", qef_q)->required();
    qef->add_option("--e", qef_e)->required();
    qef->add_option("--f", qef_f)->required();
    qef->add_option("--hadamard", qef_h, "auto|real|dft|file");
    qef->add_option("--hadamard-file", qef_hfile, "scaffold JSON for --hadamard file");
    qef->add_option("--out", qef_out, "output directory");

    // verify
    auto* verify = app.add_subcommand("verify", "exact spectrum audit of a basis file");
    std::string verify_path, verify_json;
    verify->add_option("basis", verify_path, "bases JSON file")->required();
    verify->add_option("--json", verify_json, "write the spectrum report as JSON");

    // weighing
    auto* weighing = app.add_subcommand("weighing", "weighing matrices of a verified collection");
    std::string weighing_path, weighing_out;
    weighing->add_option("basis", weighing_path, "bases JSON file")->required();
    weighing->add_option("--out", weighing_out, "output directory");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "T(d,k,mu) bound and exact backtracking");
    Int o_d = 0, o_k = 0, o_mu = 0;
    long long o_budget = 20'000'000;
    oracle->add_option("--d", o_d)->required();
    oracle->add_option("--k", o_k)->required();
    oracle->add_option("--mu", o_mu)->required();
    oracle->add_option("--budget", o_budget, "backtracking node budget");

    // mols
    auto* mols_cmd = app.add_subcommand("mols", "constructive MOLS set for an order");
    Int mols_s = 0;
    std::string mols_json;
    mols_cmd->add_option("--s", mols_s)->required();
    mols_cmd->add_option("--json", mols_json, "write the squares as JSON");

    // hadamard
    auto* had = app.add_subcommand("hadamard", "Hadamard scaffold factory");
    Int had_k = 0;
    bool had_real = false;
    std::string had_json;
    had->add_option("--k", had_k)->required();
    had->add_flag("--real", had_real, "require a real Hadamard matrix");
    had->add_option("--json", had_json, "write the scaffold as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*plan_cmd) return cmd_plan(plan_d, plan_json);
        if (*ses) {
            UnitaryScaffold file_scaffold;
            HadamardChoice choice = parse_hadamard(ses_h);
            if (choice == HadamardChoice::from_file) {
                if (ses_hfile.empty()) throw DomainError("--hadamard file needs --hadamard-file");
                file_scaffold = scaffold_from_json(Json::parse(read_file(ses_hfile)));
            }
            ConstructOutput out = construct_ses_pipeline(
                ses_s, ses_e, ses_mols, choice,
                choice == HadamardChoice::from_file ? &file_scaffold : nullptr);
            Json params{{"s", ses_s}, {"e", ses_e}, {"hadamard", ses_h}};
            if (ses_mols) params["mols"] = *ses_mols;
            return emit_construction(out, ses_out, "construct ses", params);
        }
        if (*qef) {
            UnitaryScaffold file_scaffold;
            HadamardChoice choice = parse_hadamard(qef_h);
            if (choice == HadamardChoice::from_file) {
                if (qef_hfile.empty()) throw DomainError("--hadamard file needs --hadamard-file");
                file_scaffold = scaffold_from_json(Json::parse(read_file(qef_hfile)));
            }
            QefParams params{qef_q, qef_e, qef_f};
            ConstructOutput out = construct_qef_pipeline(
                params, choice, choice == HadamardChoice::from_file ? &file_scaffold : nullptr);
            return emit_construction(out, qef_out, "construct qef",
                                     Json{{"q", qef_q}, {"e", qef_e}, {"f", qef_f},
                                          {"hadamard", qef_h}});
        }
        if (*verify) return cmd_verify(verify_path, verify_json);
        if (*weighing) return cmd_weighing(weighing_path, weighing_out);
        if (*oracle) return cmd_oracle(o_d, o_k, o_mu, o_budget);
        if (*mols_cmd) return cmd_mols(mols_s, mols_json);
        if (*had) return cmd_hadamard(had_k, had_real, had_json);
    } catch (const UnavailableError& err) {
        std::cerr << "unavailable: " << err.what() << "\n";
        return 4;
    } catch (const VerificationError& err) {
        std::cerr << "verification failed: " << err.what() << "\n";
        return 3;
    } catch (const DomainError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const Json::exception& err) {
        std::cerr << "error: malformed JSON: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
