#include "dsb/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsb/densify.hpp"
#include "dsb/error.hpp"
#include "dsb/oracle.hpp"
#include "dsb/sparsify.hpp"
#include "dsb/text_format.hpp"

namespace dsb::cli {

namespace {

// Exceptions carrying an exit code out of a subcommand callback.
struct Failure {
    int code;
    std::string message;
};

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{kUsage, "cannot open '" + path + "'"};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_instance(buffer.str());
    } catch (const ParseError& e) {
        throw Failure{kUsage, path + ": " + e.what()};
    }
}

void write_densify(std::ostream& out, const DensifyResult& result) {
    out << "status " << (result.status == Status::Sat ? "sat" : "unsat") << '\n';
    out << emit_instance(result.maximal);
}

void write_instances(std::ostream& out, const std::vector<Instance>& instances, bool truncated) {
    out << "count " << instances.size() << '\n';
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (i > 0) {
            out << "%%\n";
        }
        out << emit_instance(instances[i]);
    }
    out << "truncated " << (truncated ? "true" : "false") << '\n';
}

Engine parse_engine(const std::string& name) {
    if (name == "datalog") {
        return Engine::Datalog;
    }
    if (name == "sigma") {
        return Engine::Sigma;
    }
    return Engine::Oracle;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Densification and sparsification of Horn3 and 2-SAT instances", "dsb"};
    app.require_subcommand(1);

    std::string file;
    std::string file2;
    std::string engine = "datalog";
    std::size_t limit = 1000;
    std::string within;
    bool strict = false;
    std::string template_name_arg;
    std::size_t vars = 0;
    bool check_maximal = false;
    bool check_minimal = false;

    auto* densify_cmd = app.add_subcommand("densify", "Print the maximal instance with the same solutions");
    densify_cmd->add_option("file", file, "Instance file")->required();
    densify_cmd->add_option("--engine", engine, "datalog, sigma or oracle")
        ->check(CLI::IsMember({"datalog", "sigma", "oracle"}));

    auto* sparsify_cmd = app.add_subcommand("sparsify", "List all minimal instances with the same solutions");
    sparsify_cmd->add_option("file", file, "Instance file")->required();
    sparsify_cmd->add_option("--limit", limit, "Stop after this many instances")->check(CLI::PositiveNumber);
    sparsify_cmd->add_option("--within", within, "Restrict to constraints of: input, universe, or a pool file");
    sparsify_cmd->add_flag("--strict", strict, "Exit with code 2 when the listing is truncated");

    auto* implies_cmd = app.add_subcommand("implies", "Does every solution of FILE1 solve FILE2?");
    implies_cmd->add_option("file1", file, "Premise instance")->required();
    implies_cmd->add_option("file2", file2, "Conclusion instance")->required();

    auto* sigma_cmd = app.add_subcommand("sigma", "Print the grounded implicational system");
    sigma_cmd->add_option("--template", template_name_arg, "horn3 or 2sat")
        ->required()
        ->check(CLI::IsMember({"horn3", "2sat"}));
    sigma_cmd->add_option("--vars", vars, "Number of variables")->required()->check(CLI::PositiveNumber);

    auto* check_cmd = app.add_subcommand("check", "Test an instance for maximality or minimality");
    check_cmd->add_option("file", file, "Instance file")->required();
    auto* maximal_flag = check_cmd->add_flag("--maximal", check_maximal);
    auto* minimal_flag = check_cmd->add_flag("--minimal", check_minimal);
    maximal_flag->excludes(minimal_flag);
    minimal_flag->excludes(maximal_flag);

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answers");
    oracle_cmd->require_subcommand(1);
    auto* oracle_homs = oracle_cmd->add_subcommand("homs", "List all solutions");
    auto* oracle_densify_cmd = oracle_cmd->add_subcommand("densify", "Densify by enumeration");
    auto* oracle_minimals = oracle_cmd->add_subcommand("minimals", "Minimal instances by subset sweep");
    for (auto* sub : {oracle_homs, oracle_densify_cmd, oracle_minimals}) {
        sub->add_option("file", file, "Instance file")->required();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (densify_cmd->parsed()) {
            write_densify(out, densify(load_instance(file), parse_engine(engine)));
        } else if (sparsify_cmd->parsed()) {
            const Instance instance = load_instance(file);
            if (densify(instance).status == Status::Unsat) {
                err << "warning: instance is unsatisfiable; listing minimal unsatisfiable constraint sets\n";
            }
            SparsifyResult result;
            if (within.empty()) {
                result = sparsify_all(instance, limit);
            } else if (within == "input") {
                result = sparsify_within(instance, constraints_of(instance), limit);
            } else if (within == "universe") {
                result = sparsify_within(instance, constraints_of(Instance::full(instance.template_id(),
                                                                                 instance.vars())),
                                         limit);
            } else {
                const Instance pool = load_instance(within);
                if (pool.template_id() != instance.template_id() || pool.vars() != instance.vars()) {
                    throw Failure{kUsage, "pool file must share the instance's template and vars"};
                }
                result = sparsify_within(instance, constraints_of(pool), limit);
            }
            write_instances(out, result.minimals, result.truncated);
            if (result.truncated && strict) {
                err << "error: more than " << limit << " minimal instances\n";
                return kResourceLimit;
            }
        } else if (implies_cmd->parsed()) {
            const Instance premise = load_instance(file);
            const Instance conclusion = load_instance(file2);
            if (premise.template_id() != conclusion.template_id() || premise.vars() != conclusion.vars()) {
                throw Failure{kUsage, "instances must share template and vars"};
            }
            out << (implication_problem(premise, conclusion) ? "yes" : "no") << '\n';
        } else if (sigma_cmd->parsed()) {
            out << emit_sigma(*cached_sigma(parse_template_name(template_name_arg), vars));
        } else if (check_cmd->parsed()) {
            if (!check_maximal && !check_minimal) {
                throw Failure{kUsage, "check needs --maximal or --minimal"};
            }
            const Instance instance = load_instance(file);
            const bool answer = check_maximal ? is_maximal(instance) : is_minimal(instance);
            out << (answer ? "yes" : "no") << '\n';
        } else if (oracle_homs->parsed()) {
            const auto homs = enumerate_homs(load_instance(file));
            out << "count " << homs.size() << '\n';
            for (const auto& h : homs) {
                for (std::size_t i = 0; i < h.size(); ++i) {
                    out << (i > 0 ? " " : "") << static_cast<int>(h[static_cast<Var>(i)]);
                }
                out << '\n';
            }
        } else if (oracle_densify_cmd->parsed()) {
            write_densify(out, oracle_densify(load_instance(file)));
        } else if (oracle_minimals->parsed()) {
            write_instances(out, oracle_min(load_instance(file)), false);
        }
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}

} // namespace dsb::cli
