#pragma once

// Brute-force reference implementations used only by the tests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dbcat/constraint.hpp"
#include "dbcat/query.hpp"
#include "dbcat/rule.hpp"

namespace oracle {

using dbcat::Instance;
using dbcat::Tuple;
using dbcat::Value;
using Rows = std::set<Tuple>;

inline std::vector<Value> domain_of(const Instance& a, bool with_sentinels = false) {
    std::set<Value> d;
    for (const auto& [name, r] : a.relations()) {
        for (const Tuple& t : r.tuples()) d.insert(t.begin(), t.end());
    }
    if (with_sentinels) {
        d.insert(Value::sentinel_a());
        d.insert(Value::sentinel_b());
    }
    return {d.begin(), d.end()};
}

/// Calls `visit` on every total map vars → domain.
inline void all_assignments(const std::vector<std::string>& vars, const std::vector<Value>& domain,
                            const std::function<void(const dbcat::Valuation&)>& visit) {
    if (!vars.empty() && domain.empty()) return;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        dbcat::Valuation v;
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = domain[idx[i]];
        visit(v);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == domain.size()) idx[k++] = 0;
        if (k == idx.size()) return;
    }
}

inline Value resolve(const dbcat::Term& t, const dbcat::Valuation& v) {
    return t.is_variable ? v.at(t.variable) : t.constant;
}

inline bool satisfied(const dbcat::Conjunction& c, const Instance& a, const dbcat::Valuation& v) {
    for (const dbcat::Atom& atom : c.atoms) {
        Tuple t;
        for (const dbcat::Term& x : atom.args) t.push_back(resolve(x, v));
        if (!a.relation(atom.relation).contains(t)) return false;
    }
    for (const dbcat::Comparison& cmp : c.comparisons) {
        Value l = resolve(cmp.lhs, v), r = resolve(cmp.rhs, v);
        if (cmp.op == dbcat::Comparison::Op::Eq ? !(l == r) : !(l <= r)) return false;
    }
    return true;
}

inline std::vector<std::string> vars_of(const dbcat::Conjunction& c) {
    auto s = c.variables();
    return {s.begin(), s.end()};
}

/// ‖q‖ by trying every valuation of every variable over adom(A).
inline Rows eval_rule(const dbcat::ConjunctiveRule& q, const Instance& a) {
    Rows out;
    all_assignments(vars_of(q.body), domain_of(a), [&](const dbcat::Valuation& v) {
        if (!satisfied(q.body, a, v)) return;
        Tuple t;
        for (const std::string& h : q.head) t.push_back(v.at(h));
        out.insert(t);
    });
    return out;
}

inline bool check_tgd(const dbcat::Tgd& tgd, const Instance& a) {
    std::vector<Value> d = domain_of(a, true);
    bool ok = true;
    all_assignments(vars_of(tgd.left), d, [&](const dbcat::Valuation& v) {
        if (!ok || !satisfied(tgd.left, a, v)) return;
        std::vector<std::string> z = tgd.right_existential();
        bool found = false;
        all_assignments(z, d, [&](const dbcat::Valuation& w) {
            if (found) return;
            dbcat::Valuation full = w;
            for (const std::string& x : tgd.universal) full[x] = v.at(x);
            found = satisfied(tgd.right, a, full);
        });
        ok = found;
    });
    return ok;
}

inline bool check_egd(const dbcat::Egd& e, const Instance& a) {
    bool ok = true;
    all_assignments(vars_of(e.body), domain_of(a, true), [&](const dbcat::Valuation& v) {
        if (satisfied(e.body, a, v) && !(v.at(e.left) == v.at(e.right))) ok = false;
    });
    return ok;
}

/// Nested-loop evaluation of an SPJRU term.
inline Rows eval_term(const dbcat::QueryTerm& t, const Instance& a) {
    using K = dbcat::QueryTerm::Kind;
    Rows out;
    switch (t.kind()) {
    case K::Bottom:
        return out;
    case K::Base: {
        const dbcat::Relation& r = a.relation(t.relation());
        return r.is_bottom() ? Rows{} : r.tuples();
    }
    case K::Select:
        for (const Tuple& x : eval_term(*t.left(), a)) {
            bool keep = std::all_of(t.conditions().begin(), t.conditions().end(),
                                    [&](const dbcat::Condition& c) { return dbcat::holds(c, x); });
            if (keep) out.insert(x);
        }
        return out;
    case K::Project:
    case K::Rename:
        for (const Tuple& x : eval_term(*t.left(), a)) {
            Tuple y;
            for (std::size_t c : t.columns()) y.push_back(x[c]);
            out.insert(y);
        }
        return out;
    case K::Join: {
        Rows l = eval_term(*t.left(), a), r = eval_term(*t.right(), a);
        for (const Tuple& x : l) {
            for (const Tuple& y : r) {
                bool keep = std::all_of(t.pairs().begin(), t.pairs().end(),
                                        [&](const auto& p) { return x[p.first] == y[p.second]; });
                if (!keep) continue;
                Tuple z = x;
                z.insert(z.end(), y.begin(), y.end());
                out.insert(z);
            }
        }
        return out;
    }
    case K::Union: {
        out = eval_term(*t.left(), a);
        Rows r = eval_term(*t.right(), a);
        out.insert(r.begin(), r.end());
        return out;
    }
    }
    return out;
}

/// A nonempty view: (arity, tuples). ⊥ is implicit.
using View = std::pair<std::size_t, Rows>;

namespace detail {

inline void distinct_sequences(std::size_t n, std::size_t len, std::vector<std::size_t>& cur,
                               std::vector<bool>& used, const std::function<void()>& visit) {
    if (cur.size() == len) {
        visit();
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(i);
        distinct_sequences(n, len, cur, used, visit);
        cur.pop_back();
        used[i] = false;
    }
}

}  // namespace detail

/// Views reachable from the relations of `a` by at most `depth` rounds, where
/// each round applies one operator to views of earlier rounds: selection by any
/// conjunction of column/column and column/constant equalities, projection onto
/// a sequence of distinct columns, join on any set of column pairs (result
/// arity at most `max_arity`), and union of equal-arity views.
inline std::set<View> power_view(const Instance& a, int depth, std::size_t max_arity) {
    std::vector<Value> adom = domain_of(a);
    std::set<View> level;
    for (const auto& [name, r] : a.relations()) {
        if (!r.is_bottom() && !r.empty()) level.insert({r.arity(), r.tuples()});
    }
    auto add = [](std::set<View>& s, std::size_t arity, Rows rows) {
        if (!rows.empty()) s.insert({arity, std::move(rows)});
    };
    for (int round = 0; round < depth; ++round) {
        std::set<View> next = level;
        for (const View& v : level) {
            const auto& [n, rows] = v;
            std::vector<std::pair<std::size_t, std::pair<bool, std::size_t>>> atoms;  // col, (is_const, rhs)
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) atoms.push_back({i, {false, j}});
                for (std::size_t k = 0; k < adom.size(); ++k) atoms.push_back({i, {true, k}});
            }
            for (std::size_t mask = 1; mask < (std::size_t{1} << atoms.size()); ++mask) {
                Rows out;
                for (const Tuple& t : rows) {
                    bool keep = true;
                    for (std::size_t b = 0; b < atoms.size() && keep; ++b) {
                        if (!(mask >> b & 1)) continue;
                        const auto& [col, rhs] = atoms[b];
                        keep = rhs.first ? t[col] == adom[rhs.second] : t[col] == t[rhs.second];
                    }
                    if (keep) out.insert(t);
                }
                add(next, n, std::move(out));
            }
            for (std::size_t len = 1; len <= n; ++len) {
                std::vector<std::size_t> cur;
                std::vector<bool> used(n, false);
                detail::distinct_sequences(n, len, cur, used, [&] {
                    Rows out;
                    for (const Tuple& t : rows) {
                        Tuple y;
                        for (std::size_t c : cur) y.push_back(t[c]);
                        out.insert(y);
                    }
                    add(next, len, std::move(out));
                });
            }
        }
        for (const View& v : level) {
            for (const View& w : level) {
                if (v.first == w.first) {
                    Rows u = v.second;
                    u.insert(w.second.begin(), w.second.end());
                    add(next, v.first, std::move(u));
                }
                if (v.first + w.first > max_arity) continue;
                std::vector<std::pair<std::size_t, std::size_t>> pairs;
                for (std::size_t i = 0; i < v.first; ++i) {
                    for (std::size_t j = 0; j < w.first; ++j) pairs.push_back({i, j});
                }
                for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
                    Rows out;
                    for (const Tuple& x : v.second) {
                        for (const Tuple& y : w.second) {
                            bool keep = true;
                            for (std::size_t b = 0; b < pairs.size() && keep; ++b) {
                                if (mask >> b & 1) keep = x[pairs[b].first] == y[pairs[b].second];
                            }
                            if (!keep) continue;
                            Tuple z = x;
                            z.insert(z.end(), y.begin(), y.end());
                            out.insert(z);
                        }
                    }
                    add(next, v.first + w.first, std::move(out));
                }
            }
        }
        if (next == level) break;
        level = std::move(next);
    }
    return level;
}

}  // namespace oracle
