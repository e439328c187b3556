#include "aspex/cli.hpp"

#include "aspex/assumption_engine.hpp"
#include "aspex/aspif.hpp"
#include "aspex/constraint_engine.hpp"
#include "aspex/egraph.hpp"
#include "aspex/oracle.hpp"
#include "aspex/support_engine.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace aspex {

namespace {

struct options {
    std::string input;
    std::string answer_set;
    std::string literal;
    std::string format = "dot";
    std::size_t max_graphs = 1;
    bool all_assumptions = false;
    bool ascii = false;
    bool no_check = false;
    std::string ground_cmd;
    std::string out;
    std::size_t cap = 20;
};

// Carries an exit code out of a failing step.
struct failure {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw failure{exit_parse, "cannot read " + path};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string run_grounder(const std::string& tmpl, const std::string& input) {
    std::string cmd = tmpl;
    if (auto pos = cmd.find("{}"); pos != std::string::npos) cmd.replace(pos, 2, input);
    else cmd += " " + input;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw failure{exit_parse, "cannot run grounder: " + cmd};
    std::string text;
    char buf[4096];
    while (auto n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
    if (pclose(pipe) != 0 && text.empty()) throw failure{exit_parse, "grounder failed: " + cmd};
    return text;
}

ground_program load(const options& o, std::ostream& err) {
    std::string text = o.ground_cmd.empty() ? read_file(o.input) : run_grounder(o.ground_cmd, o.input);
    aspif_program p;
    try {
        p = parse_aspif(text);
    } catch (const aspif_error& e) {
        throw failure{exit_parse, e.what()};
    }
    try {
        auto g = ground_program::from_aspif(p);
        for (const auto& d : g.diagnostics()) err << "warning: " << d << "\n";
        return g;
    } catch (const ground_error& e) {
        throw failure{exit_reconstruction, e.what()};
    }
}

struct analysis {
    interpretation m;
    support_table er;
    support_table ec;
    support_table e;
};

analysis analyse(const ground_program& g, const options& o) {
    if (o.answer_set.empty()) throw failure{exit_answer_set, "an answer set file is required (--answer-set)"};
    std::set<atom_id> a;
    try {
        a = read_answer_set(g, read_file(o.answer_set));
    } catch (const std::invalid_argument& e) {
        throw failure{exit_answer_set, e.what()};
    }
    try {
        if (!o.no_check && !check_answer_set(g, a)) throw failure{exit_answer_set, "the given atoms are not an answer set"};
        analysis r;
        r.m = g.complete(a);
        r.er = build_er(g, r.m);
        r.ec = constraint_preprocessing(g, r.m);
        r.e = merge_supports(r.er, r.ec);
        return r;
    } catch (const support_error& e) {
        throw failure{exit_answer_set, e.what()};
    } catch (const oracle_error& e) {
        throw failure{exit_answer_set, e.what()};
    } catch (const ground_error& e) {
        throw failure{exit_reconstruction, e.what()};
    }
}

void emit(const options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw failure{exit_parse, "cannot write " + o.out};
    f << text;
}

std::string join_names(const ground_program& g, const std::set<atom_id>& atoms) {
    std::vector<std::string> names;
    for (auto a : atoms) names.push_back(g.name(a));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
    return out;
}

int cmd_parse(const options& o, std::ostream& out, std::ostream& err) {
    auto g = load(o, err);
    std::string text;
    if (!g.rules().empty()) text += "% rules\n" + g.dump();
    if (!g.symbols().empty()) {
        text += "% symbols\n";
        for (const auto& [id, a] : g.symbols()) {
            if (a.is_aux) continue;
            text += std::to_string(id) + " " + a.name + (a.is_fact ? " fact" : "") + "\n";
        }
        name_set nant;
        for (auto a : g.nant()) nant.insert(g.name(a));
        text += "% NANT = " + format_names(nant) + "\n";
    }
    emit(o, text, out);
    return exit_ok;
}

enode parse_root(const ground_program& g, const interpretation& m, std::string lit) {
    bool negated = false;
    if (lit.starts_with("~")) {
        negated = true;
        lit.erase(0, 1);
    } else if (lit.starts_with("not ")) {
        negated = true;
        lit.erase(0, 4);
    }
    while (!lit.empty() && lit.front() == ' ') lit.erase(0, 1);
    auto id = g.find(lit);
    if (!id) throw failure{exit_unknown_literal, "unknown atom '" + lit + "'"};
    if (m.holds(*id) == negated) {
        throw failure{exit_unknown_literal,
                      "'" + lit + "' is " + (negated ? "true" : "false") + " in the answer set; query " +
                          (negated ? lit : "~" + lit) + " instead"};
    }
    return enode::literal(lit, negated);
}

std::string text_graph(const explanation_graph& g, bool ascii) {
    std::string out = "root " + g.root.label(ascii) + "\n";
    for (const auto& e : g.edges) {
        out += e.from.label(ascii) + " -> " + e.to.label(ascii) + " [" + std::string(label_name(e.label)) + "]\n";
    }
    return out;
}

int cmd_explain(const options& o, std::ostream& out, std::ostream& err) {
    auto g = load(o, err);
    auto a = analyse(g, o);
    if (o.literal.empty()) throw failure{exit_unknown_literal, "a literal is required (--literal)"};
    auto root = parse_root(g, a.m, o.literal);

    build_options bo;
    bo.max_graphs = std::max<std::size_t>(o.max_graphs, 1);
    auto report = minimal_assumption_sets(g, a.m, a.e);
    std::vector<explanation_graph> graphs;
    try {
        graphs = build_egraph(a.e, report.chosen_u, root, bo);
    } catch (const egraph_error& e) {
        throw failure{e.code() == egraph_error::kind::unknown_literal ? exit_unknown_literal : exit_no_graph, e.what()};
    }

    std::string text;
    if (o.format == "json") {
        if (graphs.size() == 1) {
            text = to_json(graphs.front(), o.ascii);
        } else {
            text = "[\n";
            for (std::size_t i = 0; i < graphs.size(); ++i) text += (i ? ",\n" : "") + to_json(graphs[i], o.ascii);
            text += "]\n";
        }
    } else if (o.format == "text") {
        for (const auto& graph : graphs) text += text_graph(graph, o.ascii);
    } else {
        for (const auto& graph : graphs) text += to_dot(graph, o.ascii);
    }
    emit(o, text, out);
    return exit_ok;
}

int cmd_assumptions(const options& o, std::ostream& out, std::ostream& err) {
    auto g = load(o, err);
    auto a = analyse(g, o);
    emit(o, format_report(minimal_assumption_sets(g, a.m, a.e), o.all_assumptions), out);
    return exit_ok;
}

int cmd_supports(const options& o, std::ostream& out, std::ostream& err) {
    auto g = load(o, err);
    auto a = analyse(g, o);
    emit(o, "% E_r\n" + a.er.dump(o.ascii) + "% E_c\n" + a.ec.dump(o.ascii) + "% E\n" + a.e.dump(o.ascii), out);
    return exit_ok;
}

int cmd_answersets(const options& o, std::ostream& out, std::ostream& err) {
    auto g = load(o, err);
    std::vector<std::set<atom_id>> sets;
    try {
        sets = enumerate_answer_sets(g, o.cap);
    } catch (const oracle_error& e) {
        throw failure{exit_over_cap, e.what()};
    } catch (const ground_error& e) {
        throw failure{exit_reconstruction, e.what()};
    }
    std::string text;
    for (const auto& s : sets) text += join_names(g, s) + "\n";
    if (sets.empty()) err << "UNSAT\n";
    emit(o, text, out);
    return exit_ok;
}

}  // namespace

std::set<atom_id> read_answer_set(const ground_program& g, std::string_view text) {
    std::set<atom_id> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream words(line);
        std::string w;
        while (words >> w) {
            auto id = g.find(w);
            if (!id) throw std::invalid_argument("answer set mentions unknown atom '" + w + "'");
            out.insert(*id);
        }
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explanation graphs for answer sets of ground programs in aspif"};
    app.require_subcommand(1);
    options o;
    if (const char* env = std::getenv("ASPEX_MAX_GRAPHS")) {
        try {
            o.max_graphs = std::stoul(env);
        } catch (const std::exception&) {
            err << "warning: ignoring ASPEX_MAX_GRAPHS=" << env << "\n";
        }
    }

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "aspif file, or - for stdin")->required();
        sub->add_option("--ground-cmd", o.ground_cmd, "grounder command producing aspif; {} is replaced by the input");
        sub->add_option("-o,--out", o.out, "write the result to this file");
    };
    auto with_answer = [&](CLI::App* sub) {
        sub->add_option("-a,--answer-set", o.answer_set, "file listing the atoms of the answer set")->required();
        sub->add_flag("--no-check", o.no_check, "skip the answer-set check");
        sub->add_flag("--ascii", o.ascii, "ASCII glyphs (T/F for top/bottom)");
    };

    auto* parse = app.add_subcommand("parse", "print reconstructed rules, symbols and NANT");
    common(parse);
    auto* explain = app.add_subcommand("explain", "explanation graph for a literal");
    common(explain);
    with_answer(explain);
    explain->add_option("-l,--literal", o.literal, "literal to explain: a, ~a or \"not a\"")->required();
    explain->add_option("-f,--format", o.format, "dot, json or text")
        ->check(CLI::IsMember({"dot", "json", "text"}));
    explain->add_option("-n,--max-graphs", o.max_graphs, "number of graphs to emit (env ASPEX_MAX_GRAPHS)");
    auto* assumptions = app.add_subcommand("assumptions", "tentative and minimal assumption sets");
    common(assumptions);
    with_answer(assumptions);
    assumptions->add_flag("--all-assumptions", o.all_assumptions, "print every minimal assumption set");
    auto* supports = app.add_subcommand("supports", "dump the supported-set tables");
    common(supports);
    with_answer(supports);
    auto* answersets = app.add_subcommand("answersets", "enumerate answer sets by brute force");
    common(answersets);
    answersets->add_option("--cap", o.cap, "maximum number of guessed atoms");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*parse) return cmd_parse(o, out, err);
        if (*explain) return cmd_explain(o, out, err);
        if (*assumptions) return cmd_assumptions(o, out, err);
        if (*supports) return cmd_supports(o, out, err);
        if (*answersets) return cmd_answersets(o, out, err);
    } catch (const failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    }
    return exit_ok;
}

}  // namespace aspex
