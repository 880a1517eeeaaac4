#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dbcat/cli.hpp"
#include "dbcat/dsl.hpp"
#include "dbcat/errors.hpp"

using namespace dbcat;

namespace {

Value v(std::int64_t x) { return Value::integer(x); }

std::string corpus_file(const std::string& name) { return std::string(DBCAT_CORPUS_DIR) + "/" + name; }

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(DBCAT_CORPUS_DIR)) {
        if (e.path().extension() == ".dbc") out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "dbcat");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t col, const std::string& fragment) {
    try {
        parse_text(text, "t.dbc");
        ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
        std::string prefix = "t.dbc:" + std::to_string(line) + ":" + std::to_string(col) + ": ";
        EXPECT_EQ(std::string(e.what()).rfind(prefix, 0), 0u) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Parse, GrammarExamples) {
    Workspace ws = parse_text(R"(
schema A { r/2. }
schema B { s/1. }
instance A0 of A { r(1,2). r(2,3). }
mapping M : A -> B { q(X) :- r(X,Y) => s(X). }
)");
    EXPECT_EQ(ws.schemas.at("A")->relations, (std::map<std::string, std::size_t>{{"r", 2}}));
    EXPECT_EQ(ws.instance("A0").data.relation("r").tuples(),
              (std::set<Tuple>{{v(1), v(2)}, {v(2), v(3)}}));
    const SchemaMapping& m = ws.mapping("M");
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0].kind, MappingPair::Kind::Direct);
    EXPECT_EQ(m.pairs[0].source_query, parse_rule("q(X) :- r(X,Y)"));
    EXPECT_FALSE(m.exact);
}

TEST(Parse, ValuesAndComments) {
    Workspace ws = parse_text(R"(
# leading comment
schema A { r'#x/2. }  # trailing comment
instance I of A { r'#x(-3, 'a b'). r'#x(0, 'it\'s'). }
)");
    const Relation& r = ws.instance("I").data.relation("r'#x");
    EXPECT_TRUE(r.contains({v(-3), Value::string("a b")}));
    EXPECT_TRUE(r.contains({v(0), Value::string("it's")}));
}

TEST(Parse, ConstraintsAndComposites) {
    Workspace ws = parse_text(R"(
schema A {
  r/2.
  constraint forall X,Y,Z: r(X,Y), r(X,Z) => Y = Z.
  constraint forall X,Y: r(X,Y) => r(Y,X).
  constraint :- r(X,X).
}
schema B { s/1. }
compose AB = A sep (B fed empty)
compose T = A † B ⊕ B
)");
    EXPECT_EQ(ws.schemas.at("A")->constraints.size(), 3u);
    EXPECT_EQ(ws.term("AB")->to_string(), "A sep (B fed empty)");
    EXPECT_EQ(ws.term("T")->to_string(), "A sep B fed B");
}

TEST(Parse, GraphsResolveMappings) {
    Workspace ws = parse_workspace({corpus_file("integration.dbc")});
    const GraphDecl& g = ws.graph("G");
    EXPECT_EQ(g.graph.mappings.size(), 3u);
    ASSERT_EQ(g.graph.compositions.size(), 1u);
    EXPECT_EQ(g.graph.compositions[0].steps, (std::vector<std::string>{"M", "N"}));

    Workspace f = parse_workspace({corpus_file("federation.dbc")});
    const MappingGraph& w = f.graph("Warehouse").graph;
    EXPECT_NO_THROW(w.mapping("Both"));
    EXPECT_EQ(w.mapping("Both").target->to_string(), "Archive sep Archive");
}

TEST(Parse, ErrorsCarryPositions) {
    expect_parse_error("schema A { r/2 }", 1, 16, "expected");
    expect_parse_error("schema A { r/2. }\ninstance I of A { r(1). }", 2, 19, "arity");
    expect_parse_error("schema A { r/2. }\ninstance I of B { }", 2, 15, "B");
    expect_parse_error("schema A { r/2. }\nschema A { s/1. }", 2, 8, "A");
    expect_parse_error("schema A { r/1. }\ninstance I of A { r(#A). }", 2, 21, "reserved");
    expect_parse_error("schema A { r/1. }\nschema B { s/1. }\nmapping M : A -> B {\n  q(X) :- t(X) => s(X).\n}", 4, 3,
                       "t");
    expect_parse_error("schema A { r/1. }\ngraph G { M; }", 2, 11, "M");
    expect_parse_error("schema A { r/1. constraint forall X: r(X) => s(X). }", 1, 17, "unknown relation s");
    expect_parse_error("schema A {\n  r/2.\n  constraint forall X,Y: r(X,Y) => exists Z: r(Y,Z).\n}", 3, 3, "weakly-full");
    expect_parse_error("schema A { r/1. }\ninstance I of A { r('open). }", 2, 21, "string");
}

TEST(Parse, ErrorsNameTheFile) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / "dbcat_bad.dbc";
    {
        std::ofstream f(p);
        f << "schema A {\n  r/2\n}\n";
    }
    try {
        parse_workspace({p.string()});
        ADD_FAILURE();
    } catch (const ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind(p.string() + ":3:1:", 0), 0u) << e.what();
    }
    EXPECT_THROW(parse_workspace({"/nonexistent/x.dbc"}), Error);
    std::filesystem::remove(p);
}

TEST(RoundTrip, EveryCorpusFile) {
    std::vector<std::string> files = corpus_files();
    ASSERT_GE(files.size(), 3u);
    for (const std::string& file : files) {
        Workspace a = parse_workspace({file});
        std::string text = serialize(a);
        Workspace b = parse_text(text);
        EXPECT_TRUE(a == b) << file;
        EXPECT_EQ(serialize(b), text) << file;
    }
    Workspace two = parse_workspace({corpus_file("basics.dbc"), corpus_file("federation.dbc")});
    EXPECT_EQ(two.schemas.size(), 5u);
    EXPECT_TRUE(parse_text(serialize(two)) == two);
}

TEST(Cli, EvalPrintsTheAnswer) {
    Outcome r = run({"-w", corpus_file("basics.dbc"), "eval", "A0", "q(X) :- r(X,Y)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{(1),(2)}\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ExitCodes) {
    std::string basics = corpus_file("basics.dbc");
    std::string integ = corpus_file("integration.dbc");
    EXPECT_EQ(run({"-w", basics, "iso", "A0", "A0"}).code, 0);
    EXPECT_EQ(run({"-w", basics, "iso", "A0", "A1"}).code, 1);
    EXPECT_EQ(run({"-w", integ, "check-model", "G", "A0"}).code, 0);
    Outcome bad = run({"-w", integ, "check-model", "G", "A1"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("FAIL  SCHEMA A: "), std::string::npos);
    EXPECT_NE(bad.out.find("violated at {K=1, V=1, W=2}"), std::string::npos);
    EXPECT_EQ(run({"-w", integ, "check-functor", "G", "A1"}).code, 1);
    EXPECT_EQ(run({"-w", integ, "check-model", "G"}).code, 2);
    EXPECT_EQ(run({"-w", basics, "bogus"}).code, 2);
    EXPECT_EQ(run({"-w", basics, "eval", "A0"}).code, 2);
    EXPECT_EQ(run({"-w", basics, "eval", "A0", "q(X) :- nope(X)"}).code, 2);
    EXPECT_EQ(run({"-w", basics, "--cap", "3", "powerview", "A0"}).code, 2);
    EXPECT_EQ(run({"-w", "/nonexistent.dbc", "print"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"-w", basics, "--format", "xml", "print"}).code, 2);
}

TEST(Cli, SeparatedQueriesAreRejected) {
    std::string basics = corpus_file("basics.dbc");
    Outcome sep = run({"-w", basics, "eval", "AB0", "q(X) :- r(X,Y), s(X)"});
    EXPECT_EQ(sep.code, 2);
    EXPECT_NE(sep.err.find("component"), std::string::npos) << sep.err;
    Outcome fed = run({"-w", basics, "eval", "AfB0", "q(X) :- r(X,Y), s(X)"});
    EXPECT_EQ(fed.code, 0);
    EXPECT_EQ(fed.out, "{(1)}\n");
}

TEST(Cli, MachineFormat) {
    Outcome r = run({"-w", corpus_file("integration.dbc"), "--format", "lines", "check-model", "G", "A1"});
    EXPECT_EQ(r.code, 1);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        ++n;
        std::size_t a = line.find('\t');
        std::size_t b = line.find('\t', a + 1);
        ASSERT_NE(a, std::string::npos) << line;
        ASSERT_NE(b, std::string::npos) << line;
        std::string verdict = line.substr(a + 1, b - a - 1);
        EXPECT_TRUE(verdict == "PASS" || verdict == "FAIL") << line;
        EXPECT_EQ(line.find('\t', b + 1), std::string::npos) << line;
    }
    EXPECT_EQ(n, 6u);
}

TEST(Cli, ReportsAreSortedAndDeterministic) {
    std::vector<std::vector<std::string>> commands = {
        {"-w", corpus_file("integration.dbc"), "check-functor", "G", "A0"},
        {"-w", corpus_file("integration.dbc"), "laws", "G", "A0"},
        {"-w", corpus_file("federation.dbc"), "gamma-iso", "Warehouse"},
        {"-w", corpus_file("basics.dbc"), "powerview", "AB0"},
        {"-w", corpus_file("basics.dbc"), "duality", "A0", "B0"},
    };
    for (const auto& c : commands) {
        Outcome a = run(c);
        Outcome b = run(c);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(a.out.empty());
    }
    Outcome r = run({"-w", corpus_file("integration.dbc"), "--format", "lines", "check-functor", "G", "A0"});
    std::istringstream lines(r.out);
    std::vector<std::string> ids;
    for (std::string line; std::getline(lines, line);) ids.push_back(line.substr(0, line.find('\t')));
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
}

TEST(Cli, PrintRoundTrips) {
    for (const std::string& file : corpus_files()) {
        Outcome r = run({"-w", file, "print"});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_TRUE(parse_text(r.out) == parse_workspace({file})) << file;
    }
}
