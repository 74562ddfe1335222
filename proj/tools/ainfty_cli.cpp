// Command-line front end: exact A∞/Massey/formality computations on algebra and
// simplicial-complex documents. Exit codes: 0 verdict reached, 1 verdict
// negative or hypothesis failure, 2 usage/parse error, 3 internal fault.

#include <CLI11.hpp>

#include <ainfty/cli.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f)
        throw ainfty::malformed_input("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const ainfty::CommandResult& r, const std::string& format) {
    if (format == "machine")
        std::cout << r.machine.dump(2) << "\n";
    else
        std::cout << r.human;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact A-infinity transfer, Massey products and formality "
                 "certificates over Q"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string format = "human";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));

    ainfty::InputOptions in_opt;
    std::string basepoint;
    app.add_flag("--reduced", in_opt.reduce,
                 "work with the reduced (basepoint-kernel) algebra");
    app.add_option("--basepoint", basepoint, "basepoint vertex or degree-0 name");

    std::string input = "-";
    int cap = 8;
    std::string pipeline = "transfer";
    std::vector<std::string> class_exprs;
    std::optional<int> n_flag;
    int n_value = 0;
    bool run_all = false;
    std::string filter;

    auto* validate = app.add_subcommand("validate", "check the dg-algebra identities");
    validate->add_option("input", input, "document path or - for stdin");

    auto* cohomology = app.add_subcommand("cohomology", "dimensions, representatives, "
                                                        "induced product, cup length");
    cohomology->add_option("input", input);

    auto* transfer = app.add_subcommand("transfer", "transferred A-infinity structure");
    transfer->add_option("input", input);
    transfer->add_option("--cap", cap, "largest arity to compute");

    auto* massey = app.add_subcommand("massey", "Massey product of cocycle classes");
    massey->add_option("input", input);
    massey->add_option("--class", class_exprs, "cocycle expression (repeatable)")
        ->required();
    auto* n_opt = massey->add_option("--n", n_value, "expected arity");

    auto* formality = app.add_subcommand("formality", "formality certificate");
    formality->add_option("input", input);
    formality->add_option("--cap", cap, "largest arity to examine");
    formality->add_option("--pipeline", pipeline, "theorem1 or transfer")
        ->check(CLI::IsMember({"theorem1", "transfer"}));

    auto* corpus = app.add_subcommand("corpus", "re-derive the example corpus");
    corpus->add_flag("--run-all", run_all, "run every entry");
    auto* filter_opt = corpus->add_option("--filter", filter, "name substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // all command-line misuse maps to the usage code
    }

    if (!basepoint.empty())
        in_opt.basepoint = basepoint;
    if (*n_opt)
        n_flag = n_value;

    try {
        ainfty::CommandResult result;
        if (corpus->parsed()) {
            std::optional<std::string> f;
            if (*filter_opt)
                f = filter;
            result = ainfty::cmd_corpus(run_all, f);
        } else {
            const ainfty::json doc = ainfty::parse_document(read_input(input));
            if (validate->parsed())
                result = ainfty::cmd_validate(doc, in_opt);
            else if (cohomology->parsed())
                result = ainfty::cmd_cohomology(doc, in_opt);
            else if (transfer->parsed())
                result = ainfty::cmd_transfer(doc, cap, in_opt);
            else if (massey->parsed())
                result = ainfty::cmd_massey(doc, class_exprs, n_flag, in_opt);
            else if (formality->parsed())
                result = ainfty::cmd_formality(doc, cap, pipeline, in_opt);
        }
        emit(result, format);
        return result.exit_code;
    } catch (const ainfty::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ainfty::malformed_input& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ainfty::not_applicable& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return 1;
    } catch (const ainfty::undefined_product& e) {
        std::cerr << "undefined: " << e.what() << "\n";
        return 1;
    } catch (const ainfty::internal_fault& e) {
        std::cerr << "internal fault: " << e.what() << "\n";
        return 3;
    } catch (const ainfty::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
