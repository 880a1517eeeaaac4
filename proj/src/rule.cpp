#include "dbcat/rule.hpp"

#include <algorithm>
#include <map>

#include "dbcat/errors.hpp"

namespace dbcat {

namespace {

template <class Seq, class F>
std::string join_mapped(const Seq& items, const char* sep, F f) {
    std::string out;
    bool first = true;
    for (const auto& x : items) {
        if (!first) out += sep;
        first = false;
        out += f(x);
    }
    return out;
}

const Value* lookup(const Term& t, const Valuation& v) {
    if (!t.is_variable) return &t.constant;
    auto it = v.find(t.variable);
    return it == v.end() ? nullptr : &it->second;
}

// Three-valued: 1 true, 0 false, -1 not yet decidable.
int evaluate(const Comparison& c, const Valuation& v) {
    const Value* l = lookup(c.lhs, v);
    const Value* r = lookup(c.rhs, v);
    if (!l || !r) return -1;
    return c.op == Comparison::Op::Eq ? (*l == *r) : (*l <= *r);
}

bool comparisons_consistent(const Conjunction& c, const Valuation& v) {
    return std::none_of(c.comparisons.begin(), c.comparisons.end(),
                        [&](const Comparison& cmp) { return evaluate(cmp, v) == 0; });
}

struct Search {
    const Conjunction& conj;
    std::vector<const Relation*> relations;
    std::vector<std::string> free_vars;
    std::vector<Value> free_domain;
    const std::function<bool(const Valuation&)>& visit;

    bool free_step(std::size_t i, Valuation& v) {
        if (i == free_vars.size()) {
            for (const Comparison& cmp : conj.comparisons) {
                if (evaluate(cmp, v) != 1) return true;
            }
            return visit(v);
        }
        for (const Value& x : free_domain) {
            v[free_vars[i]] = x;
            bool go = !comparisons_consistent(conj, v) || free_step(i + 1, v);
            v.erase(free_vars[i]);
            if (!go) return false;
        }
        return true;
    }

    bool atom_step(std::size_t i, Valuation& v) {
        if (i == conj.atoms.size()) return free_step(0, v);
        const Atom& atom = conj.atoms[i];
        for (const Tuple& row : relations[i]->tuples()) {
            std::vector<std::string> bound;
            bool match = true;
            for (std::size_t k = 0; k < atom.args.size() && match; ++k) {
                const Term& t = atom.args[k];
                if (const Value* have = lookup(t, v)) {
                    match = *have == row[k];
                } else {
                    v.emplace(t.variable, row[k]);
                    bound.push_back(t.variable);
                }
            }
            bool go = true;
            if (match && comparisons_consistent(conj, v)) go = atom_step(i + 1, v);
            for (const std::string& b : bound) v.erase(b);
            if (!go) return false;
        }
        return true;
    }
};

}  // namespace

std::string Atom::to_string() const {
    return relation + "(" + join_mapped(args, ",", [](const Term& t) { return t.to_string(); }) + ")";
}

std::string Comparison::to_string() const {
    return lhs.to_string() + (op == Op::Eq ? " = " : " <= ") + rhs.to_string();
}

std::set<std::string> Conjunction::variables() const {
    std::set<std::string> out = atom_variables();
    for (const Comparison& c : comparisons) {
        if (c.lhs.is_variable) out.insert(c.lhs.variable);
        if (c.rhs.is_variable) out.insert(c.rhs.variable);
    }
    return out;
}

std::set<std::string> Conjunction::atom_variables() const {
    std::set<std::string> out;
    for (const Atom& a : atoms) {
        for (const Term& t : a.args) {
            if (t.is_variable) out.insert(t.variable);
        }
    }
    return out;
}

std::set<std::string> Conjunction::relations() const {
    std::set<std::string> out;
    for (const Atom& a : atoms) out.insert(a.relation);
    return out;
}

std::string Conjunction::to_string() const {
    std::vector<std::string> parts;
    for (const Atom& a : atoms) parts.push_back(a.to_string());
    for (const Comparison& c : comparisons) parts.push_back(c.to_string());
    return join_mapped(parts, ", ", [](const std::string& s) { return s; });
}

std::string to_string(const Valuation& v) {
    return "{" + join_mapped(v, ", ", [](const auto& kv) { return kv.first + "=" + kv.second.to_string(); }) + "}";
}

void ConjunctiveRule::validate() const {
    if (body.atoms.empty()) throw MalformedQuery("rule " + head_name + " has no relational body atom");
    std::set<std::string> safe = body.atom_variables();
    for (const std::string& h : head) {
        if (!safe.contains(h)) throw MalformedQuery("head variable " + h + " does not occur in a body atom");
    }
    for (const Comparison& c : body.comparisons) {
        if (!c.lhs.is_variable && !c.rhs.is_variable) {
            throw MalformedQuery("built-in " + c.to_string() + " mentions no variable");
        }
        for (const Term* t : {&c.lhs, &c.rhs}) {
            if (t->is_variable && !safe.contains(t->variable)) {
                throw MalformedQuery("variable " + t->variable + " occurs only in built-ins");
            }
        }
    }
}

std::string ConjunctiveRule::to_string() const {
    std::string out;
    if (!head.empty()) out = head_name + "(" + join_mapped(head, ",", [](const std::string& s) { return s; }) + ") ";
    return out + ":- " + body.to_string();
}

bool for_each_valuation(const Conjunction& c, const Instance& a, const Valuation& start,
                        const std::set<Value>& free_domain, const std::function<bool(const Valuation&)>& visit) {
    Search s{c, {}, {}, {free_domain.begin(), free_domain.end()}, visit};
    for (const Atom& atom : c.atoms) {
        const Relation& r = a.relation(atom.relation);
        if (!r.is_bottom() && r.arity() != atom.args.size()) {
            throw MalformedQuery("atom " + atom.to_string() + " does not match arity " + std::to_string(r.arity()));
        }
        s.relations.push_back(&r);
    }
    std::set<std::string> covered = c.atom_variables();
    for (const auto& [name, value] : start) covered.insert(name);
    for (const std::string& var : c.variables()) {
        if (!covered.contains(var)) s.free_vars.push_back(var);
    }
    Valuation v = start;
    if (!comparisons_consistent(c, v)) return true;
    return s.atom_step(0, v);
}

bool satisfiable(const Conjunction& c, const Instance& a, const Valuation& start) {
    std::set<Value> domain = active_domain(a);
    domain.insert(Value::sentinel_a());
    domain.insert(Value::sentinel_b());
    return !for_each_valuation(c, a, start, domain, [](const Valuation&) { return false; });
}

Relation eval_rule(const ConjunctiveRule& q, const Instance& a) {
    q.validate();
    if (q.head.empty()) throw MalformedQuery("a boolean query has no extension; check it as a sentence");
    for (const std::string& n : q.body.relations()) {
        if (!a.has_relation(n)) throw MalformedQuery("unknown relation " + n);
    }
    require_single_component(q.body.relations(), a);
    std::set<Tuple> out;
    for_each_valuation(q.body, a, {}, {}, [&](const Valuation& v) {
        Tuple t;
        t.reserve(q.head.size());
        for (const std::string& h : q.head) t.push_back(v.at(h));
        out.insert(std::move(t));
        return true;
    });
    return Relation(q.head_name, q.head.size(), std::move(out));
}

QueryTermPtr rule_to_spjru(const ConjunctiveRule& q) {
    q.validate();
    if (q.head.empty()) throw MalformedQuery("a boolean query has no SPJRU translation");
    QueryTermPtr term;
    std::map<std::string, std::size_t> column_of;
    std::vector<Condition> conditions;
    std::size_t offset = 0;
    for (const Atom& atom : q.body.atoms) {
        QueryTermPtr b = QueryTerm::base(atom.relation, atom.args.size());
        term = term ? QueryTerm::join(term, b) : b;
        for (std::size_t k = 0; k < atom.args.size(); ++k) {
            const Term& t = atom.args[k];
            std::size_t col = offset + k;
            if (!t.is_variable) {
                conditions.push_back({Condition::Op::Eq, col, t.constant});
            } else if (auto [it, fresh] = column_of.emplace(t.variable, col); !fresh) {
                conditions.push_back({Condition::Op::Eq, it->second, col});
            }
        }
        offset += atom.args.size();
    }
    for (const Comparison& c : q.body.comparisons) {
        Condition::Op op = c.op == Comparison::Op::Eq ? Condition::Op::Eq : Condition::Op::Le;
        if (c.lhs.is_variable && c.rhs.is_variable) {
            conditions.push_back({op, column_of.at(c.lhs.variable), column_of.at(c.rhs.variable)});
        } else if (c.lhs.is_variable) {
            conditions.push_back({op, column_of.at(c.lhs.variable), c.rhs.constant});
        } else {
            if (op == Condition::Op::Le) op = Condition::Op::Ge;
            conditions.push_back({op, column_of.at(c.rhs.variable), c.lhs.constant});
        }
    }
    if (!conditions.empty()) term = QueryTerm::select(term, std::move(conditions));
    std::vector<std::size_t> columns;
    for (const std::string& h : q.head) columns.push_back(column_of.at(h));
    return QueryTerm::project(term, std::move(columns));
}

}  // namespace dbcat
