#pragma once

// Deterministic generators for instances, rules and mappings used in tests.

#include <random>
#include <string>
#include <vector>

#include "dbcat/instance.hpp"
#include "dbcat/rule.hpp"

namespace corpus {

using dbcat::Instance;
using dbcat::Relation;
using dbcat::Tuple;
using dbcat::Value;

struct Signature {
    std::string name;
    std::size_t arity;
};

inline Value v(std::int64_t x) { return Value::integer(x); }

inline Relation random_relation(std::mt19937& rng, const Signature& sig, int values, int max_tuples) {
    std::uniform_int_distribution<int> count(0, max_tuples);
    std::uniform_int_distribution<int> val(1, values);
    std::set<Tuple> rows;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Tuple t;
        for (std::size_t c = 0; c < sig.arity; ++c) t.push_back(v(val(rng)));
        rows.insert(t);
    }
    return Relation(sig.name, sig.arity, rows);
}

/// One or two relations (r, s) of arity 1..2 over values 1..`values`, at most
/// `max_tuples` tuples each.
inline Instance random_instance(std::mt19937& rng, int values = 4, int max_tuples = 6, int max_relations = 2) {
    std::uniform_int_distribution<int> rels(1, max_relations);
    std::uniform_int_distribution<int> ar(1, 2);
    std::vector<Relation> out;
    int n = rels(rng);
    static const char* names[] = {"r", "s"};
    for (int i = 0; i < n; ++i) out.push_back(random_relation(rng, {names[i], std::size_t(ar(rng))}, values, max_tuples));
    return Instance(out);
}

inline std::vector<Instance> random_instances(unsigned seed, int count, int values = 4, int max_tuples = 6) {
    std::mt19937 rng(seed);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) out.push_back(random_instance(rng, values, max_tuples));
    return out;
}

/// Every single-relation instance of arity 1 or 2 over {1,2}.
inline std::vector<Instance> tiny_instances() {
    std::vector<Instance> out;
    std::vector<Tuple> unary = {{v(1)}, {v(2)}};
    std::vector<Tuple> binary = {{v(1), v(1)}, {v(1), v(2)}, {v(2), v(1)}, {v(2), v(2)}};
    for (const auto* all : {&unary, &binary}) {
        std::size_t n = all->size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::set<Tuple> rows;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) rows.insert((*all)[i]);
            }
            out.push_back(Instance({Relation("r", (*all)[0].size(), rows)}));
        }
    }
    return out;
}

/// A safe conjunctive rule over `sigs`: 1-3 atoms over variables X,Y,Z,W with
/// occasional constants and built-ins.
inline dbcat::ConjunctiveRule random_rule(std::mt19937& rng, const std::vector<Signature>& sigs, int values = 4) {
    static const char* vars[] = {"X", "Y", "Z", "W"};
    std::uniform_int_distribution<int> atoms(1, 3), pick_sig(0, int(sigs.size()) - 1), pick_var(0, 3),
        coin(0, 5), val(1, values);
    dbcat::ConjunctiveRule q;
    int n = atoms(rng);
    for (int i = 0; i < n; ++i) {
        const Signature& s = sigs[pick_sig(rng)];
        dbcat::Atom a{s.name, {}};
        for (std::size_t c = 0; c < s.arity; ++c) {
            a.args.push_back(coin(rng) == 0 ? dbcat::Term::value(v(val(rng))) : dbcat::Term::var(vars[pick_var(rng)]));
        }
        q.body.atoms.push_back(a);
    }
    std::set<std::string> atom_vars = q.body.atom_variables();
    std::vector<std::string> bound(atom_vars.begin(), atom_vars.end());
    if (!bound.empty() && coin(rng) < 2) {
        std::uniform_int_distribution<int> bv(0, int(bound.size()) - 1);
        dbcat::Comparison c;
        c.op = coin(rng) < 3 ? dbcat::Comparison::Op::Eq : dbcat::Comparison::Op::Le;
        c.lhs = dbcat::Term::var(bound[bv(rng)]);
        c.rhs = coin(rng) < 3 ? dbcat::Term::var(bound[bv(rng)]) : dbcat::Term::value(v(val(rng)));
        q.body.comparisons.push_back(c);
    }
    for (const std::string& x : bound) {
        if (coin(rng) < 3) q.head.push_back(x);
    }
    if (q.head.empty() && !bound.empty()) q.head.push_back(bound.front());
    if (bound.empty()) {
        q.body.atoms[0].args[0] = dbcat::Term::var("X");
        q.head = {"X"};
    }
    return q;
}

}  // namespace corpus
