#include "dbcat/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <set>

#include "dbcat/errors.hpp"
#include "dbcat/interpretation.hpp"

namespace dbcat {

namespace {

void need_args(const std::string& command, const std::vector<std::string>& args, std::size_t n, const char* usage) {
    if (args.size() < n) throw Error("usage: dbcat " + command + " " + usage);
}

std::string render_relation(const Relation& r) {
    std::string out = "{";
    bool first = true;
    for (const Tuple& t : r.tuples()) {
        if (!first) out += ",";
        out += to_string(t);
        first = false;
    }
    return out + "}";
}

const InstanceDecl& instance_of(const Workspace& ws, const std::string& name, const SchemaTerm& expected) {
    const InstanceDecl& d = ws.instance(name);
    if (d.of->to_string() != expected.to_string()) {
        throw Error("instance " + name + " is of " + d.of->to_string() + ", expected " + expected.to_string());
    }
    return d;
}

MappingGraph graph_of(const Workspace& ws, const std::vector<std::string>& names) {
    MappingGraph g;
    g.name = "cli";
    for (const std::string& n : names) g.mappings.push_back(ws.mapping(n));
    return g;
}

Interpretation interpretation_for(const Workspace& ws, const MappingGraph& g, const std::vector<std::string>& names) {
    std::map<std::string, std::shared_ptr<const Schema>> leaves;
    for (const SchemaTermPtr& node : g.nodes()) {
        for (const auto& leaf : node->leaves()) leaves.emplace(leaf->name, leaf);
    }
    Interpretation alpha;
    for (const std::string& n : names) {
        const InstanceDecl& d = ws.instance(n);
        if (d.of->kind() != SchemaTerm::Kind::Atom) throw Error("instance " + n + " is not over an atomic schema");
        if (alpha.assigned(d.of->schema()->name)) throw Error("schema " + d.of->schema()->name + " assigned twice");
        alpha.assign(*d.of->schema(), d.data);
    }
    for (const auto& [name, schema] : leaves) {
        if (alpha.assigned(name)) continue;
        std::vector<const InstanceDecl*> found;
        for (const auto& [iname, d] : ws.instances) {
            if (d.of->kind() == SchemaTerm::Kind::Atom && d.of->schema()->name == name) found.push_back(&d);
        }
        if (found.size() != 1) {
            throw Error("schema " + name + " has " + std::to_string(found.size()) +
                        " candidate instances; name one on the command line");
        }
        alpha.assign(*schema, found[0]->data);
    }
    return alpha;
}

std::size_t arrow_index(const Sketch& s, std::size_t src, std::size_t tgt, const std::string& mapping) {
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        const SketchArrow& a = s.arrows[i];
        if (a.kind == SketchArrow::Kind::Mapping && a.source == src && a.target == tgt) return i;
    }
    throw Error("mapping " + mapping + " has no direct or fresh pairs to form a morphism");
}

CommandResult cmd_eval(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("eval", args, 2, "INSTANCE RULE");
    const InstanceDecl& d = ws.instance(args[0]);
    ConjunctiveRule q = parse_rule(args[1]);
    Relation r = eval_rule(q, d.data);
    CommandResult out;
    out.body = render_relation(r) + "\n";
    out.report.add("EVAL " + args[0], true, render_relation(r));
    out.show_checks = false;
    return out;
}

CommandResult cmd_powerview(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("powerview", args, 1, "INSTANCE");
    ViewSet v = power_view(ws.instance(args[0]).data, ws.bound);
    CommandResult out;
    out.body = v.serialize();
    out.report.add("POWERVIEW " + args[0], true,
                   std::to_string(v.size()) + " views" + (v.fixpoint() ? " (fixpoint)" : "") + " at " +
                       ws.bound.to_string());
    out.show_checks = false;
    return out;
}

CommandResult cmd_iso(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("iso", args, 2, "INSTANCE INSTANCE");
    IsoResult r = compare_instances(ws.instance(args[0]).data, ws.instance(args[1]).data, ws.bound);
    CommandResult out;
    std::string detail = r.isomorphic ? "power views agree" : "power views differ";
    if (!r.exact) detail += " within the bound";
    out.report.add("ISO " + args[0] + " " + args[1], r.isomorphic, detail + " at " + ws.bound.to_string());
    return out;
}

CommandResult cmd_flux(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("flux", args, 3, "MAPPING SOURCE TARGET");
    const SchemaMapping& m = ws.mapping(args[0]);
    const InstanceDecl& a = instance_of(ws, args[1], *m.source);
    const InstanceDecl& b = instance_of(ws, args[2], *m.target);
    Sketch s = build_sketch(graph_of(ws, {args[0]}));
    std::vector<Instance> objects = interpret_objects(s, [&](const SchemaTerm& t) {
        return t.to_string() == m.source->to_string() ? a.data : b.data;
    });
    CommandResult out;
    for (const SketchArrow& arrow : s.arrows) {
        if (arrow.kind != SketchArrow::Kind::Mapping && arrow.kind != SketchArrow::Kind::Helper) continue;
        try {
            Morphism f = make_atomic(arrow.viewmaps, objects[arrow.source], objects[arrow.target]);
            Flux fl = f.flux(ws.bound);
            out.body += "flux " + arrow.name + "\n" + fl.serialize();
            out.report.add("ARROW " + arrow.name, true, std::to_string(fl.size()) + " views transmitted");
        } catch (const ModeViolation& e) {
            out.report.add("ARROW " + arrow.name, false, e.what());
        }
    }
    return out;
}

CommandResult cmd_compose(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("compose", args, 5, "FIRST SECOND A B C");
    const SchemaMapping& m1 = ws.mapping(args[0]);
    const SchemaMapping& m2 = ws.mapping(args[1]);
    if (m1.target->to_string() != m2.source->to_string()) {
        throw CompositionMismatch("mapping " + args[1] + " does not start where " + args[0] + " ends");
    }
    const InstanceDecl& a = instance_of(ws, args[2], *m1.source);
    const InstanceDecl& b = instance_of(ws, args[3], *m1.target);
    const InstanceDecl& c = instance_of(ws, args[4], *m2.target);
    Sketch s = build_sketch(graph_of(ws, {args[0], args[1]}));
    std::vector<Instance> objects = interpret_objects(s, [&](const SchemaTerm& t) {
        std::string key = t.to_string();
        return key == m1.source->to_string() ? a.data : key == m1.target->to_string() ? b.data : c.data;
    });
    std::size_t ia = *s.find_object(m1.source->to_string());
    std::size_t ib = *s.find_object(m1.target->to_string());
    std::size_t ic = *s.find_object(m2.target->to_string());
    std::vector<std::shared_ptr<const Instance>> shared;
    for (Instance& o : objects) shared.push_back(std::make_shared<const Instance>(std::move(o)));
    Morphism f = make_atomic(s.arrows[arrow_index(s, ia, ib, args[0])].viewmaps, shared[ia], shared[ib]);
    Morphism g = make_atomic(s.arrows[arrow_index(s, ib, ic, args[1])].viewmaps, shared[ib], shared[ic]);
    Morphism gf = compose(g, f);
    Flux fl = gf.flux(ws.bound);
    CommandResult out;
    out.body = gf.to_string() + "\nflux\n" + fl.serialize();
    std::string name = args[1] + "∘" + args[0];
    out.report.add("KIND " + name, true, gf.kind() == Morphism::Kind::CArrow ? "c-arrow" : "p-arrow");
    out.report.add("FLUX.SUBSET " + name, fl.subset_by_source(f.flux(ws.bound)) && fl.subset_by_target(g.flux(ws.bound)),
                   "flux of the composite lies in both factors");
    out.report.add("FLUX.MEET " + name, fl == Flux::compose(f.flux(ws.bound), g.flux(ws.bound)),
                   "flux of the composite is the intersection");
    return out;
}

CommandResult cmd_graph(const std::string& command, const std::vector<std::string>& args, const Workspace& ws) {
    need_args(command, args, 1, "GRAPH [INSTANCE...]");
    const GraphDecl& g = ws.graph(args[0]);
    Interpretation alpha = interpretation_for(ws, g.graph, {args.begin() + 1, args.end()});
    Sketch s = build_sketch(g.graph);
    CommandResult out;
    if (command == "check-model") {
        out.report = check_model(alpha, g.graph, s).report;
    } else if (command == "check-functor") {
        out.report = check_functor(alpha, s, ws.bound);
    } else if (command == "laws") {
        out.report = check_laws(alpha, s, ws.bound);
    } else {
        for (const SchemaTermPtr& node : g.graph.nodes()) {
            bool ok = check_gamma_iso(alpha, *node, s, ws.bound);
            out.report.add("GAMMA " + node->to_string(), ok, ok ? "α*(A) ≃ α*(γ(A))" : "α*(A) not ≃ α*(γ(A))");
        }
    }
    return out;
}

CommandResult cmd_duality(const std::vector<std::string>& args, const Workspace& ws) {
    need_args("duality", args, 2, "INSTANCE INSTANCE");
    CommandResult out;
    out.report = verify_duality(ws.instance(args[0]).data, ws.instance(args[1]).data, ws.bound);
    return out;
}

std::string clean(std::string s) {
    for (char& c : s) {
        if (c == '\t' || c == '\n') c = ' ';
    }
    return s;
}

std::size_t largest_arity(const Workspace& ws) {
    std::size_t m = 1;
    for (const auto& [name, d] : ws.instances) m = std::max(m, d.data.max_arity());
    for (const auto& [name, s] : ws.schemas) {
        for (const auto& [rel, arity] : s->relations) m = std::max(m, arity);
    }
    return m;
}

const std::set<std::string> kFixpointCommands = {"laws", "check-functor", "gamma-iso", "duality"};

}  // namespace

CommandResult run_command(const std::string& command, const std::vector<std::string>& args, const Workspace& ws) {
    CommandResult out;
    if (command == "eval") {
        out = cmd_eval(args, ws);
    } else if (command == "powerview") {
        out = cmd_powerview(args, ws);
    } else if (command == "iso") {
        out = cmd_iso(args, ws);
    } else if (command == "flux") {
        out = cmd_flux(args, ws);
    } else if (command == "compose") {
        out = cmd_compose(args, ws);
    } else if (command == "laws" || command == "check-model" || command == "check-functor" || command == "gamma-iso") {
        out = cmd_graph(command, args, ws);
    } else if (command == "duality") {
        out = cmd_duality(args, ws);
    } else if (command == "print") {
        out.body = serialize(ws);
        out.show_checks = false;
    } else {
        throw Error("unknown command " + command);
    }
    out.command = command;
    out.report.sort();
    return out;
}

std::string render(const CommandResult& r, Format format) {
    std::string out;
    if (format == Format::Lines) {
        for (const CheckLine& l : r.report.lines) {
            out += clean(l.id) + "\t" + (l.pass ? "PASS" : "FAIL") + "\t" + clean(l.detail) + "\n";
        }
        return out;
    }
    out = r.body;
    if (!r.show_checks) return out;
    std::size_t failed = 0;
    for (const CheckLine& l : r.report.lines) {
        out += std::string(l.pass ? "PASS  " : "FAIL  ") + l.id + ": " + l.detail + "\n";
        failed += !l.pass;
    }
    for (const std::string& n : r.report.notes) out += "note: " + n + "\n";
    out += r.command + ": " + std::to_string(r.report.lines.size()) + " checks, " + std::to_string(failed) +
           " failed\n";
    return out;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Categorical semantics of database schema mappings"};
    std::vector<std::string> files;
    std::string command;
    std::vector<std::string> args;
    int depth = 2;
    std::size_t arity = 4;
    std::size_t cap = 100000;
    std::string format = "text";
    app.add_option("-w,--workspace", files, "DSL file to load (repeatable)")
        ->check(CLI::ExistingFile)
        ->allow_extra_args(false);
    auto* depth_opt = app.add_option("--depth", depth, "Power-view depth; -1 runs to the fixpoint");
    auto* arity_opt = app.add_option("--arity", arity, "Maximum view arity")->check(CLI::PositiveNumber);
    app.add_option("--cap", cap, "Maximum number of views")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "lines"}));
    app.add_option("command", command,
                   "eval, powerview, iso, flux, compose, laws, check-model, check-functor, gamma-iso, duality, print")
        ->required();
    app.add_option("args", args, "Command arguments");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        Workspace ws = parse_workspace(files);
        ws.bound = Bound{depth, arity, cap};
        if (depth_opt->count() == 0 && kFixpointCommands.contains(command)) {
            ws.bound.depth = -1;
            if (arity_opt->count() == 0) ws.bound.max_arity = largest_arity(ws);
        }
        CommandResult r = run_command(command, args, ws);
        out << render(r, format == "lines" ? Format::Lines : Format::Text);
        return r.exit_code();
    } catch (const std::exception& e) {
        err << "dbcat: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dbcat
