// dgcurv: curvature-dimension analysis of strongly connected digraphs.
//
//   dgcurv analyze --alpha A --m M [--format json|csv] FILE
//   dgcurv verify  --alpha A [--m M] [--samples N] [--seed S] [--K-override K] FILE
//   dgcurv gen     --model cycle|bidirected-complete|random-sc -n N [--seed S] [-p P]
//
// Exit codes: 0 ok, 1 CD violation found, 2 usage or parse error,
// 3 graph not strongly connected, 4 numerical failure.

#include "dgcurv/curvature.hpp"
#include "dgcurv/errors.hpp"
#include "dgcurv/graph.hpp"
#include "dgcurv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kViolation = 1, kParse = 2, kConnectivity = 3, kNumeric = 4 };

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dgcurv::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dgcurv::DirectedGraph load_graph(const std::string& path, const std::string& format) {
    const std::string text = read_input(path);
    bool json = format == "json";
    if (format == "auto") {
        json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
        if (!json) {
            const auto first = text.find_first_not_of(" \t\r\n");
            json = first != std::string::npos && text[first] == '{';
        }
    }
    return json ? dgcurv::parse_json_graph(text) : dgcurv::parse_edge_list(text);
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << text;
}

struct Common {
    std::string alpha = "";
    std::string m = "2";
    std::string input_format = "auto";
    std::string output;
    std::string file;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool m_required) {
    cmd->add_option("--alpha", c.alpha, "laziness in [0, 1)")->required();
    auto* m = cmd->add_option("--m", c.m, "dimension parameter >= 1, or inf");
    if (m_required) m->required();
    cmd->add_option("--input-format", c.input_format, "auto | edge-list | json")
        ->check(CLI::IsMember({"auto", "edge-list", "json"}));
    cmd->add_option("-o,--output", c.output, "write the report here instead of stdout");
    cmd->add_option("--threads", c.threads, "worker threads for per-vertex analysis")->check(CLI::PositiveNumber);
    cmd->add_option("FILE", c.file, "graph file (edge list or JSON), - for stdin")->required();
}

int run_analyze(const Common& c, const std::string& format, int samples, std::uint64_t seed) {
    dgcurv::VerifyOptions opt;
    const double alpha = dgcurv::parse_alpha(c.alpha);
    opt.m = dgcurv::parse_dimension(c.m);
    opt.samples = samples;
    opt.seed = seed;
    opt.threads = c.threads;
    const auto g = load_graph(c.file, c.input_format);
    const auto report = dgcurv::verify_graph(g, alpha, opt);
    emit(format == "csv" ? dgcurv::report_csv(report) : dgcurv::analyze_json(report).dump(2) + "\n", c.output);
    return kOk;
}

int run_verify(const Common& c, int samples, std::uint64_t seed, std::optional<double> k_override) {
    dgcurv::VerifyOptions opt;
    const double alpha = dgcurv::parse_alpha(c.alpha);
    opt.m = dgcurv::parse_dimension(c.m);
    opt.samples = samples;
    opt.seed = seed;
    opt.k_override = k_override;
    opt.threads = c.threads;
    const auto g = load_graph(c.file, c.input_format);
    const auto report = dgcurv::verify_graph(g, alpha, opt);
    emit(dgcurv::verify_json(report, k_override).dump(2) + "\n", c.output);

    for (const auto& v : report.violations) {
        std::cerr << "violation: vertex " << report.vertices[v.vertex].label << " residual "
                  << dgcurv::format_real(v.residual) << " f = [";
        for (std::size_t k = 0; k < v.f.size(); ++k) std::cerr << (k ? ", " : "") << dgcurv::format_real(v.f[k]);
        std::cerr << "]\n";
    }
    return report.all_cd_hold() ? kOk : kViolation;
}

int run_gen(const std::string& model, std::size_t n, std::uint64_t seed, double p, const std::string& output) {
    dgcurv::DirectedGraph g = model == "cycle"                 ? dgcurv::make_cycle(n)
                              : model == "bidirected-complete" ? dgcurv::make_bidirected_complete(n)
                                                               : dgcurv::make_random_strongly_connected(n, p, seed);
    emit(dgcurv::to_edge_list(g), output);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature-dimension analysis of strongly connected directed graphs"};
    app.require_subcommand(1);

    Common analyze_opts;
    std::string format = "json";
    int analyze_samples = 0;
    std::uint64_t analyze_seed = 0;
    auto* analyze = app.add_subcommand("analyze", "per-vertex curvature report");
    add_common(analyze, analyze_opts, true);
    analyze->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--samples", analyze_samples, "random falsification samples per vertex")
        ->check(CLI::NonNegativeNumber);
    analyze->add_option("--seed", analyze_seed, "seed for the falsification samples");

    Common verify_opts;
    int samples = 100;
    std::uint64_t seed = 0;
    std::optional<double> k_override;
    auto* verify = app.add_subcommand("verify", "check CD(m, C - (1 - alpha)) at every vertex");
    add_common(verify, verify_opts, false);
    verify->add_option("--samples", samples, "random falsification samples per vertex")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", seed, "seed for the falsification samples");
    verify->add_option("--K-override", k_override, "test this curvature instead of the theorem bound");

    std::string model;
    std::size_t n = 0;
    std::uint64_t gen_seed = 0;
    double p = 0.4;
    std::string gen_output;
    auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
    gen->add_option("--model", model, "cycle | bidirected-complete | random-sc")
        ->required()
        ->check(CLI::IsMember({"cycle", "bidirected-complete", "random-sc"}));
    gen->add_option("-n", n, "vertex count (>= 2)")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("-p", p, "edge probability for random-sc");
    gen->add_option("-o,--output", gen_output, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*analyze) return run_analyze(analyze_opts, format, analyze_samples, analyze_seed);
        if (*verify) return run_verify(verify_opts, samples, seed, k_override);
        return run_gen(model, n, gen_seed, p, gen_output);
    } catch (const dgcurv::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kParse;
    } catch (const dgcurv::ConnectivityError& e) {
        std::cerr << "connectivity error: " << e.what() << "\n";
        return kConnectivity;
    } catch (const dgcurv::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
}
