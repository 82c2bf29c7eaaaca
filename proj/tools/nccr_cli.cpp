#include <nccr/nccr.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int exit_certified = 0;
constexpr int exit_failed = 1;
constexpr int exit_not_applicable = 2;
constexpr int exit_input = 3;

struct Options {
    long lmax = 20;
    bool subdivide = false;
    bool oracle = false;
    bool prefer_window = false;
    std::string format = "json";
    std::string out;
    std::string input;
    std::string fan;
    std::string divisor;
    std::string example;
};

bool read_file(const std::string& path, std::string& text) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

// file path, or inline JSON when the argument starts with '[' or '{'
bool read_json_arg(const std::string& arg, std::string& text) {
    if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) {
        text = arg;
        return true;
    }
    return read_file(arg, text);
}

int input_error(const std::string& what) {
    std::cerr << "error: " << what << "\n";
    return exit_input;
}

int api_error(nccr_status s) {
    std::cerr << "error: " << nccr_status_name(s) << ": " << nccr_last_error_message() << "\n";
    return exit_input;
}

bool emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return true;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) return false;
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
    return static_cast<bool>(f);
}

nccr_config* make_config(const Options& o) {
    nccr_config* c = nullptr;
    if (nccr_config_new(&c) != NCCR_OK) return nullptr;
    if (nccr_config_set_lmax(c, o.lmax) != NCCR_OK) {
        nccr_config_free(c);
        return nullptr;
    }
    nccr_config_set_subdivide(c, o.subdivide);
    nccr_config_set_oracle(c, o.oracle);
    nccr_config_set_prefer_window(c, o.prefer_window);
    return c;
}

int run_certify(const Options& o) {
    std::string text;
    if (!read_file(o.input, text)) return input_error("cannot read " + o.input);
    nccr_polytope* p = nullptr;
    nccr_status s = nccr_polytope_parse(text.data(), text.size(), &p);
    if (s != NCCR_OK) return api_error(s);
    for (size_t i = 0; i < nccr_polytope_warning_count(p); ++i)
        std::cerr << "warning: " << nccr_polytope_warning(p, i) << "\n";
    nccr_config* c = make_config(o);
    if (!c) {
        nccr_polytope_free(p);
        return api_error(NCCR_ERR_INVALID_ARGUMENT);
    }
    nccr_certificate* cert = nullptr;
    s = nccr_certify(p, c, nullptr, &cert);
    nccr_config_free(c);
    nccr_polytope_free(p);
    if (s != NCCR_OK) return api_error(s);
    char* out = nullptr;
    s = o.format == "text" ? nccr_certificate_text(cert, &out) : nccr_certificate_json(cert, 2, &out);
    nccr_verdict v = nccr_certificate_verdict(cert);
    nccr_certificate_free(cert);
    if (s != NCCR_OK) return api_error(s);
    bool written = emit(o, out);
    nccr_string_free(out);
    if (!written) return input_error("cannot write " + o.out);
    switch (v) {
    case NCCR_VERDICT_CERTIFIED: return exit_certified;
    case NCCR_VERDICT_NOT_APPLICABLE: return exit_not_applicable;
    default: return exit_failed;
    }
}

int run_cohomology(const Options& o) {
    std::string fan, divisor;
    if (!read_json_arg(o.fan, fan)) return input_error("cannot read " + o.fan);
    if (!read_json_arg(o.divisor, divisor)) return input_error("cannot read " + o.divisor);
    char* out = nullptr;
    nccr_status s = nccr_cohomology(fan.c_str(), divisor.c_str(), o.oracle, o.format == "text" ? -1 : 2, &out);
    if (s != NCCR_OK) return api_error(s);
    bool written = emit(o, out);
    nccr_string_free(out);
    return written ? 0 : input_error("cannot write " + o.out);
}

int run_fan_info(const Options& o) {
    std::string fan;
    if (!read_json_arg(o.fan, fan)) return input_error("cannot read " + o.fan);
    char* out = nullptr;
    nccr_status s = nccr_fan_info(fan.c_str(), o.format == "text" ? -1 : 2, &out);
    if (s != NCCR_OK) return api_error(s);
    bool written = emit(o, out);
    nccr_string_free(out);
    return written ? 0 : input_error("cannot write " + o.out);
}

int run_examples(const Options& o) {
    if (o.example.empty()) {
        std::string list;
        for (size_t i = 0; i < nccr_example_count(); ++i) list += std::string(nccr_example_name(i)) + "\n";
        return emit(o, list) ? 0 : input_error("cannot write " + o.out);
    }
    nccr_config* c = make_config(o);
    if (!c) return api_error(NCCR_ERR_INVALID_ARGUMENT);
    char* out = nullptr;
    int passed = 0;
    nccr_status s = nccr_run_example(o.example.c_str(), c, o.format == "text", 2, &passed, &out);
    nccr_config_free(c);
    if (s != NCCR_OK) return api_error(s);
    bool written = emit(o, out);
    nccr_string_free(out);
    if (!written) return input_error("cannot write " + o.out);
    return passed ? exit_certified : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NCCR existence certificates for Gorenstein toric singularities"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--lmax", o.lmax, "largest twist checked explicitly")->check(CLI::PositiveNumber);
        sub->add_flag("--subdivide", o.subdivide, "allow star subdivisions");
        sub->add_flag("--oracle", o.oracle, "cross-check cohomology against brute force");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", o.out, "write output to a file instead of stdout");
    };

    auto* certify = app.add_subcommand("certify", "certify a polytope document");
    certify->add_option("polytope", o.input, "polytope JSON file, or - for stdin")->required();
    certify->add_flag("--prefer-window", o.prefer_window, "try the window collection before the sublattice route");
    common(certify);

    auto* coh = app.add_subcommand("cohomology", "cohomology table of a torus-invariant divisor");
    coh->add_option("fan", o.fan, "fan JSON file or inline JSON")->required();
    coh->add_option("divisor", o.divisor, "coefficients per ray as a JSON array, inline or file")->required();
    common(coh);

    auto* info = app.add_subcommand("fan-info", "predicates, class group and Gorenstein elements");
    info->add_option("fan", o.fan, "fan JSON file or inline JSON")->required();
    common(info);

    auto* ex = app.add_subcommand("examples", "run a built-in example; lists them when no name is given");
    ex->add_option("name", o.example, "example name");
    common(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    if (*certify) return run_certify(o);
    if (*coh) return run_cohomology(o);
    if (*info) return run_fan_info(o);
    return run_examples(o);
}
