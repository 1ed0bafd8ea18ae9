#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "../src/commands.hpp"

namespace {

std::vector<std::uint64_t> parse_alpha(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoull(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with second-order Fuchsian operators in characteristic p"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    pcurv::cli::ClassifyOptions copt;
    std::string c_alpha, c_sing, c_beta;
    std::int64_t c_d = -1;
    auto* c = app.add_subcommand("classify", "classify the p-curvature of one operator");
    c->add_option("--p", copt.p)->required();
    c->add_option("--alpha", c_alpha, "local exponents alpha_1..alpha_r")->required();
    c->add_option("--sing", c_sing, "finite singularities (L = lambda)")->required();
    c->add_option("--beta", c_beta, "accessory parameters beta_0..beta_{r-4}");
    c->add_option("--d", c_d, "degree parameter (derived from alpha when omitted)");

    pcurv::cli::SearchOptions sopt;
    std::string s_alpha, s_sing, s_lambda;
    auto* s = app.add_subcommand("search", "scan accessory-parameter space");
    s->add_option("--p", sopt.p)->required();
    s->add_option("--alpha", s_alpha)->required();
    s->add_option("--r", sopt.r);
    int s_degree = -1;
    s->add_option("--degree", s_degree, "target solution degree (existence-polynomial mode)");
    s->add_flag("--generic-lambda", sopt.generic_lambda,
                "work over F_p(L) and return the existence polynomial");
    s->add_option("--sing", s_sing, "finite singularities for grid mode");
    s->add_option("--lambda", s_lambda, "third singularity for r = 4 grids");
    s->add_option("--budget", sopt.budget, "grid size cap");

    pcurv::cli::NonemptyOptions nopt;
    auto* n = app.add_subcommand("nonempty", "nonemptiness of a logarithmic stratum");
    n->add_option("--p", nopt.p)->required();
    n->add_option("--r", nopt.r)->required();
    n->add_option("--n", nopt.n)->required();
    n->add_option("--budget", nopt.budget);

    pcurv::cli::DimensionOptions dopt;
    std::int64_t d_d = -1;
    auto* dd = app.add_subcommand("dimension", "deformation-space dimension of a signature");
    dd->add_option("--p", dopt.p)->required();
    dd->add_option("--signature", dopt.signature, "comma-separated a:nu pairs")->required();
    dd->add_option("--d", d_d, "expected number of supersingular points");

    std::string example_name;
    auto* e = app.add_subcommand("example", "reproduce a worked example");
    e->add_option("name", example_name, "gauss, p7 or p13")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        pcurv::cli::Json out;
        if (*c) {
            copt.alpha = parse_alpha(c_alpha);
            copt.singularities = split_commas(c_sing);
            if (!c_beta.empty()) copt.beta = split_commas(c_beta);
            if (c_d >= 0) copt.d = static_cast<std::uint64_t>(c_d);
            out = pcurv::cli::cmd_classify(copt);
        } else if (*s) {
            sopt.alpha = parse_alpha(s_alpha);
            if (s_degree >= 0) sopt.degree = s_degree;
            if (!s_sing.empty()) sopt.singularities = split_commas(s_sing);
            if (!s_lambda.empty()) sopt.lambda = s_lambda;
            out = pcurv::cli::cmd_search(sopt);
        } else if (*n) {
            out = pcurv::cli::cmd_nonempty(nopt);
        } else if (*dd) {
            if (d_d >= 0) dopt.d = static_cast<int>(d_d);
            out = pcurv::cli::cmd_dimension(dopt);
        } else if (*e) {
            out = pcurv::cli::cmd_example(example_name);
        }
        std::fputs(pcurv::cli::to_output(out, format).c_str(), stdout);
        return 0;
    } catch (const pcurv::cli::UsageError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 3;
    }
}
