#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dbcat/powerview.hpp"
#include "dbcat/schema.hpp"

namespace dbcat {

struct InstanceDecl {
    std::string name;
    SchemaTermPtr of;
    Instance data;
};

struct GraphStatement {
    enum class Kind { Ref, After, Branch };
    Kind kind = Kind::Ref;
    /// Ref: {M}; After: {M_k, ..., M_1} as written; Branch: {M_1, M_2}.
    std::vector<std::string> names;
    /// Branch only: the explicit result name, if one was written.
    std::string result;

    bool operator==(const GraphStatement&) const = default;
};

struct GraphDecl {
    std::string name;
    std::vector<GraphStatement> statements;
    MappingGraph graph;
};

/// Everything declared by one or more DSL files, with references resolved.
struct Workspace {
    enum class Kind { Schema, Compose, Instance, Mapping, Graph };

    std::vector<std::pair<Kind, std::string>> order;
    std::map<std::string, std::shared_ptr<const Schema>> schemas;
    std::map<std::string, SchemaTermPtr> composites;
    std::map<std::string, InstanceDecl> instances;
    std::map<std::string, SchemaMapping> mappings;
    std::map<std::string, GraphDecl> graphs;
    Bound bound;

    /// A schema or `compose` name as a term. Throws SchemaError if unknown.
    SchemaTermPtr term(const std::string& name) const;
    const InstanceDecl& instance(const std::string& name) const;
    const SchemaMapping& mapping(const std::string& name) const;
    const GraphDecl& graph(const std::string& name) const;

    bool operator==(const Workspace& o) const;
};

/// Appends the declarations of `text` to `ws`. Throws ParseError.
void parse_into(Workspace& ws, std::string_view text, const std::string& file = {});
Workspace parse_text(std::string_view text, const std::string& file = {});
/// Throws ParseError, or Error when a file cannot be read.
Workspace parse_workspace(const std::vector<std::string>& files);

/// Standalone rules and terms, for command-line arguments.
ConjunctiveRule parse_rule(std::string_view text);
SchemaTermPtr parse_term(const Workspace& ws, std::string_view text);

std::string serialize(const Schema& s);
std::string serialize(const InstanceDecl& i);
std::string serialize(const SchemaMapping& m);
std::string serialize(const GraphDecl& g);
/// Canonical text: declarations in order, one item per line.
std::string serialize(const Workspace& ws);

}  // namespace dbcat
