#include "modsm/algebra.hpp"
#include "modsm/decompose.hpp"
#include "modsm/equivalence.hpp"
#include "modsm/errors.hpp"
#include "modsm/io.hpp"
#include "modsm/semantics.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace modsm;

io::format parse_format(const std::string& name) {
    if (name == "text")
        return io::format::text;
    if (name == "smodels")
        return io::format::smodels;
    throw CLI::ValidationError("--format", "expected text or smodels");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<module> read_modules(const std::string& path, io::format f) {
    std::istringstream in(slurp(path));
    return io::read_stream(in, f);
}

module read_one_module(const std::string& path, io::format f) {
    std::vector<module> mods = read_modules(path, f);
    if (mods.empty())
        return module{};
    if (mods.size() > 1)
        throw error(path + ": expected a single module, found " + std::to_string(mods.size()));
    return std::move(mods.front());
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw error("cannot open " + path + " for writing");
    out << bytes;
}

std::string model_line(const module& m, const interpretation& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i)
        out += (i ? "," : "") + core::atom_label(m, atoms[i]);
    return out + "}";
}

int run_split(const std::string& input, const std::string& output, const std::string& dir,
              const std::string& mode_name, io::format in_format, io::format out_format) {
    decompose::mode md;
    if (mode_name == "pos")
        md = decompose::mode::pos;
    else if (mode_name == "pos-hidden")
        md = decompose::mode::pos_hidden;
    else if (mode_name == "posneg-hidden")
        md = decompose::mode::posneg_hidden;
    else
        throw error("unknown mode " + mode_name);

    module m = read_one_module(input, in_format);
    decompose::decomposition d = decompose::split(m, md);
    if (d.hidden_unsafe)
        std::cerr << "warning: mode pos with hidden atoms; pieces may not compose\n";
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::size_t hidden_counter = 1;
        for (std::size_t i = 0; i < d.parts.size(); ++i) {
            std::string name = dir + "/mod-" + std::to_string(i) + ".lp";
            std::ofstream out(name, std::ios::binary);
            if (!out)
                throw error("cannot open " + name + " for writing");
            if (out_format == io::format::text)
                out << io::print_text(d.parts[i], hidden_counter);
            else
                out << io::encode_smodels(d.parts[i]);
        }
    } else {
        std::ostringstream buffer;
        io::write_stream(buffer, d.parts, out_format);
        write_output(output, buffer.str());
    }
    std::cerr << "split: " << d.parts.size() << " modules\n";
    return 0;
}

int run_cat(const std::vector<std::string>& inputs, const std::string& output,
            std::int64_t check_rules, io::format in_format, io::format out_format) {
    std::vector<module> parts;
    for (const std::string& path : inputs)
        for (module& m : read_modules(path, in_format))
            parts.push_back(std::move(m));
    module whole = decompose::recompose(parts);
    std::ostringstream buffer;
    if (out_format == io::format::text)
        buffer << io::print_text(whole);
    else
        buffer << io::encode_smodels(whole);
    write_output(output, buffer.str());
    std::cerr << "cat: " << parts.size() << " modules, " << whole.rules.size() << " rules\n";
    if (check_rules >= 0 && whole.rules.size() != static_cast<std::uint64_t>(check_rules)) {
        std::cerr << "rule count mismatch: expected " << check_rules << ", got "
                  << whole.rules.size() << "\n";
        return 1;
    }
    return 0;
}

int run_solve(const std::string& input, io::format in_format, const std::string& strategy_name,
              std::int64_t max_models) {
    std::size_t counter = 1;
    module m = io::with_hidden_names(read_one_module(input, in_format), counter);
    semantics::strategy st = strategy_name == "instantiate" ? semantics::strategy::instantiate
                                                            : semantics::strategy::brute_force;
    unsigned threads = st == semantics::strategy::instantiate
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : 1;
    model_set models = semantics::stable_models(m, st, semantics::configured_cap(), threads);
    std::int64_t shown = 0;
    for (const interpretation& model : models) {
        if (max_models > 0 && shown >= max_models)
            break;
        std::cout << model_line(m, model) << "\n";
        ++shown;
    }
    std::cerr << "solve: " << models.size() << " stable models\n";
    return 0;
}

int run_eq(const std::string& left, const std::string& right, io::format in_format,
           const std::string& kind, const std::string& method) {
    module p = read_one_module(left, in_format);
    module q = read_one_module(right, in_format);
    std::uint64_t cap = semantics::configured_cap();
    bool result;
    if (kind == "weak")
        result = equivalence::weak_eq(p, q, cap);
    else if (kind == "visible")
        result = equivalence::visible_eq(p, q, cap);
    else if (kind == "modular")
        result = equivalence::modular_eq(p, q,
                                         method == "generator" ? equivalence::eq_method::generator
                                                               : equivalence::eq_method::direct,
                                         cap);
    else
        throw error("unknown kind " + kind);
    std::cout << (result ? "equivalent" : "not equivalent") << "\n";
    return result ? 0 : 1;
}

int run_check(const std::string& input, const std::string& partner, io::format in_format) {
    module m = read_one_module(input, in_format);
    if (partner.empty()) {
        std::vector<core::violation> violations = core::validate_module(m);
        if (violations.empty()) {
            std::cout << "ok\n";
            return 0;
        }
        for (const core::violation& v : violations) {
            std::cout << "violation: " << v.clause;
            for (const std::string& a : v.atoms)
                std::cout << " " << a;
            std::cout << "\n";
        }
        return 1;
    }

    module other = read_one_module(partner, in_format);
    algebra::compose_report rep = algebra::compose_check(m, other);
    if (!rep.ok) {
        if (!rep.output_clash.empty()) {
            std::cout << "OutputClash(";
            for (std::size_t i = 0; i < rep.output_clash.size(); ++i)
                std::cout << (i ? "," : "") << rep.output_clash[i];
            std::cout << ")\n";
        }
        if (!rep.hidden_leak.empty()) {
            std::cout << "HiddenLeak(";
            for (std::size_t i = 0; i < rep.hidden_leak.size(); ++i)
                std::cout << (i ? "," : "") << rep.hidden_leak[i];
            std::cout << ")\n";
        }
        return 1;
    }
    std::cout << "compose: defined\n";
    bool join_ok = true;
    try {
        algebra::join(m, other);
        std::cout << "join: defined\n";
    } catch (const mutual_dependence_error& e) {
        join_ok = false;
        std::cout << "MutualDependence({";
        for (std::size_t i = 0; i < e.scc.size(); ++i)
            std::cout << (i ? "," : "") << e.scc[i];
        std::cout << "})\n";
    }
    try {
        bool sem = algebra::check_semantical_join(m, other, semantics::configured_cap());
        std::cout << "semantical join: " << (sem ? "defined" : "undefined") << "\n";
    } catch (const cap_exceeded&) {
        std::cout << "semantical join: skipped (cap exceeded)\n";
    }
    return join_ok ? 0 : 1;
}

int run_eva(const std::string& input, io::format in_format) {
    module m = read_one_module(input, in_format);
    bool result = equivalence::eva(m, semantics::configured_cap());
    std::cout << (result ? "true" : "false") << "\n";
    return result ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"module-aware toolkit for smodels-style logic programs"};
    app.require_subcommand(1);

    std::string format_name = "text";
    std::string out_format_name;
    app.add_option("--format", format_name, "input format: text or smodels")
        ->capture_default_str();
    app.add_option("--output-format", out_format_name, "output format (defaults to --format)");

    auto* split = app.add_subcommand("split", "decompose a module along its SCC structure");
    std::string split_input = "-", split_output = "-", split_dir, split_mode = "pos-hidden";
    split->add_option("input", split_input, "module file or -");
    split->add_option("-o,--output", split_output, "stream file or -");
    split->add_option("--dir", split_dir, "write one mod-<index>.lp file per module");
    split->add_option("--mode", split_mode, "pos, pos-hidden or posneg-hidden")
        ->capture_default_str();

    auto* cat = app.add_subcommand("cat", "recompose a stream of modules");
    std::vector<std::string> cat_inputs;
    std::string cat_output = "-";
    std::int64_t cat_check_rules = -1;
    cat->add_option("inputs", cat_inputs, "module streams or files")->required();
    cat->add_option("-o,--output", cat_output, "module file or -");
    cat->add_option("--check-rules", cat_check_rules, "fail unless the result has this many rules");

    auto* solve = app.add_subcommand("solve", "enumerate stable models");
    std::string solve_input = "-", solve_strategy = "brute";
    std::int64_t solve_max = 0;
    solve->add_option("input", solve_input, "module file or -");
    solve->add_option("--max-models", solve_max, "print at most this many models (0 = all)");
    solve->add_option("--strategy", solve_strategy, "brute or instantiate")
        ->capture_default_str();

    auto* eq = app.add_subcommand("eq", "compare two modules");
    std::string eq_left, eq_right, eq_kind = "modular", eq_method = "direct";
    eq->add_option("left", eq_left, "module file")->required();
    eq->add_option("right", eq_right, "module file")->required();
    eq->add_option("--kind", eq_kind, "weak, visible or modular")->capture_default_str();
    eq->add_option("--method", eq_method, "direct or generator")->capture_default_str();

    auto* check = app.add_subcommand("check", "validate a module or diagnose a pair");
    std::string check_input, check_pair;
    check->add_option("input", check_input, "module file")->required();
    check->add_option("--pair", check_pair, "diagnose composition against this module");

    auto* eva = app.add_subcommand("eva", "test the enough-visible-atoms property");
    std::string eva_input = "-";
    eva->add_option("input", eva_input, "module file or -");

    try {
        app.parse(argc, argv);
        io::format in_format = parse_format(format_name);
        io::format out_format =
            out_format_name.empty() ? in_format : parse_format(out_format_name);
        if (split->parsed())
            return run_split(split_input, split_output, split_dir, split_mode, in_format,
                             out_format);
        if (cat->parsed())
            return run_cat(cat_inputs, cat_output, cat_check_rules, in_format, out_format);
        if (solve->parsed())
            return run_solve(solve_input, in_format, solve_strategy, solve_max);
        if (eq->parsed())
            return run_eq(eq_left, eq_right, in_format, eq_kind, eq_method);
        if (check->parsed())
            return run_check(check_input, check_pair, in_format);
        if (eva->parsed())
            return run_eva(eva_input, in_format);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const modsm::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
