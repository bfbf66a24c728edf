#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "klein/cyclo.hpp"
#include "klein/fusion.hpp"
#include "klein/labels.hpp"
#include "klein/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBuildError = 3;

// --out is resolved against KLEINFUSION_OUT_DIR when it is a relative path
void emit(const std::string& text, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::cout << text;
        return;
    }
    std::filesystem::path p(*out_path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("KLEINFUSION_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + p.string());
    f << text;
}

nlohmann::json qdim_json(const klein::CycNumber& v) {
    nlohmann::json j;
    j["conductor"] = v.conductor();
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < v.coeffs().size(); ++i) arr.push_back(v.coeff_string(i));
    j["coeffs"] = arr;
    j["approx"] = v.to_float();
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact fusion-ring calculator for Klein-orbifold affine module categories"};
    app.require_subcommand(1);

    int k_arg = 0;
    std::string format = "text";
    std::uint64_t seed = 0;
    int jobs = 0;
    std::optional<std::string> out_path;
    std::vector<std::string> label_args;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--k", k_arg, "level (k >= 3)")->required();
        if (with_format) cmd->add_option("--format", format, "text|json|csv")->capture_default_str();
        cmd->add_option("--jobs", jobs, "worker threads (default: all cores)");
        cmd->add_option("--out", out_path, "write output to a file");
    };

    CLI::App* cmd_modules = app.add_subcommand("modules", "list the canonical module labels");
    add_common(cmd_modules);
    CLI::App* cmd_fuse = app.add_subcommand("fuse", "fusion product of two modules");
    add_common(cmd_fuse);
    cmd_fuse->add_option("labels", label_args, "two module labels, e.g. U:2:v1 T1:0:+")
        ->expected(2);
    CLI::App* cmd_table = app.add_subcommand("table", "export the full fusion table");
    add_common(cmd_table);
    CLI::App* cmd_qdim = app.add_subcommand("qdim", "exact quantum dimension of a module");
    add_common(cmd_qdim);
    cmd_qdim->add_option("label", label_args, "module label")->expected(1);
    CLI::App* cmd_verify = app.add_subcommand("verify", "build the table and run every oracle");
    add_common(cmd_verify);
    cmd_verify->add_option("--seed", seed, "seed for the sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        klein::Level level(k_arg);

        if (cmd_modules->parsed()) {
            auto labels = klein::enumerate_labels(level);
            if (format == "json") {
                auto arr = nlohmann::json::array();
                for (const auto& lab : labels) {
                    nlohmann::json j;
                    j["label"] = klein::to_string(lab);
                    j["qdim"] = qdim_json(klein::qdim(lab, level));
                    arr.push_back(j);
                }
                emit(arr.dump() + "\n", out_path);
            } else {
                std::string s;
                for (const auto& lab : labels) {
                    auto d = klein::qdim(lab, level);
                    s += klein::to_string(lab) + "\tqdim " + std::to_string(d.to_float()) + "\n";
                }
                emit(s, out_path);
            }
            return kExitOk;
        }

        if (cmd_fuse->parsed()) {
            klein::Label a = klein::parse_label(label_args.at(0), level);
            klein::Label b = klein::parse_label(label_args.at(1), level);
            klein::BuildOptions opt;
            opt.jobs = jobs;
            klein::FusionTable table = klein::build_table(level, opt);
            const auto& row = table.fuse(a, b);
            if (format == "json") {
                nlohmann::json j;
                j["A"] = klein::to_string(a);
                j["B"] = klein::to_string(b);
                nlohmann::json outcome;
                for (const auto& [lab, m] : row) outcome[klein::to_string(lab)] = m;
                j["outcome"] = outcome;
                emit(j.dump() + "\n", out_path);
            } else {
                emit(klein::to_string(a) + " x " + klein::to_string(b) + " = " +
                         klein::render_outcome(row) + "\n",
                     out_path);
            }
            return kExitOk;
        }

        if (cmd_table->parsed()) {
            klein::BuildOptions opt;
            opt.jobs = jobs;
            klein::FusionTable table = klein::build_table(level, opt);
            if (format == "json") emit(table.to_json() + "\n", out_path);
            else if (format == "csv") emit(table.to_csv(), out_path);
            else emit(table.to_text(), out_path);
            return kExitOk;
        }

        if (cmd_qdim->parsed()) {
            klein::Label a = klein::parse_label(label_args.at(0), level);
            klein::CycNumber d = klein::qdim(a, level);
            if (format == "json") {
                nlohmann::json j;
                j["label"] = klein::to_string(a);
                j["qdim"] = qdim_json(d);
                emit(j.dump() + "\n", out_path);
            } else {
                std::string s = klein::to_string(a) + "\n  conductor " +
                                std::to_string(d.conductor()) + "\n  coeffs";
                for (std::size_t i = 0; i < d.coeffs().size(); ++i)
                    s += " " + d.coeff_string(i);
                s += "\n  approx " + std::to_string(d.to_float()) + "\n";
                emit(s, out_path);
            }
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            klein::VerificationReport rep = klein::verify_all(level, seed, jobs);
            emit(format == "json" ? rep.to_json() + "\n" : rep.to_text(), out_path);
            return rep.all_pass() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const klein::ConflictError& e) {
        std::cerr << "build conflict: " << e.what() << "\n";
        return kExitBuildError;
    } catch (const klein::IncompleteError& e) {
        std::cerr << "incomplete table: " << e.what() << "\n";
        return kExitBuildError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
