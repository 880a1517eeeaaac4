#include "dbcat/query.hpp"

#include <algorithm>
#include <sstream>

#include "dbcat/errors.hpp"

namespace dbcat {

namespace {

void check_column(std::size_t column, std::size_t arity, const char* where) {
    if (column >= arity) {
        throw MalformedQuery(std::string(where) + ": column " + std::to_string(column) + " out of range for arity " +
                             std::to_string(arity));
    }
}

std::string condition_string(const Condition& c) {
    std::ostringstream out;
    out << '$' << c.column;
    switch (c.op) {
    case Condition::Op::Eq: out << '='; break;
    case Condition::Op::Le: out << "<="; break;
    case Condition::Op::Ge: out << ">="; break;
    }
    if (const auto* col = std::get_if<std::size_t>(&c.rhs)) {
        out << '$' << *col;
    } else {
        out << std::get<Value>(c.rhs).to_string();
    }
    return out.str();
}

template <class Seq>
std::string join_list(const Seq& items) {
    std::ostringstream out;
    bool first = true;
    for (const auto& x : items) {
        if (!first) out << ',';
        first = false;
        out << x;
    }
    return out.str();
}

}  // namespace

QueryTermPtr QueryTerm::base(std::string relation, std::size_t arity) {
    if (relation.empty()) throw MalformedQuery("base relation name must not be empty");
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Base;
    t->relation_ = std::move(relation);
    t->arity_ = arity;
    return t;
}

QueryTermPtr QueryTerm::bottom(std::size_t arity) {
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Bottom;
    t->arity_ = arity;
    return t;
}

QueryTermPtr QueryTerm::select(QueryTermPtr child, std::vector<Condition> conditions) {
    for (const Condition& c : conditions) {
        check_column(c.column, child->arity(), "select");
        if (const auto* col = std::get_if<std::size_t>(&c.rhs)) {
            check_column(*col, child->arity(), "select");
            if (c.op == Condition::Op::Ge) throw MalformedQuery("select: >= takes a constant");
        }
    }
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Select;
    t->arity_ = child->arity();
    t->left_ = std::move(child);
    t->conditions_ = std::move(conditions);
    return t;
}

QueryTermPtr QueryTerm::project(QueryTermPtr child, std::vector<std::size_t> columns) {
    if (columns.empty()) throw MalformedQuery("project: empty column list");
    for (std::size_t c : columns) check_column(c, child->arity(), "project");
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Project;
    t->arity_ = columns.size();
    t->left_ = std::move(child);
    t->columns_ = std::move(columns);
    return t;
}

QueryTermPtr QueryTerm::join(QueryTermPtr left, QueryTermPtr right,
                             std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    for (auto [l, r] : pairs) {
        check_column(l, left->arity(), "join");
        check_column(r, right->arity(), "join");
    }
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Join;
    t->arity_ = left->arity() + right->arity();
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    t->pairs_ = std::move(pairs);
    return t;
}

QueryTermPtr QueryTerm::rename(QueryTermPtr child, std::vector<std::size_t> permutation) {
    if (permutation.size() != child->arity()) throw MalformedQuery("rename: permutation length differs from arity");
    std::vector<std::size_t> sorted = permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) throw MalformedQuery("rename: not a permutation");
    }
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Rename;
    t->arity_ = child->arity();
    t->left_ = std::move(child);
    t->columns_ = std::move(permutation);
    return t;
}

QueryTermPtr QueryTerm::unite(QueryTermPtr left, QueryTermPtr right) {
    if (left->arity() != right->arity()) throw MalformedQuery("union: operands differ in arity");
    auto t = std::shared_ptr<QueryTerm>(new QueryTerm);
    t->kind_ = Kind::Union;
    t->arity_ = left->arity();
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
}

std::set<std::string> QueryTerm::base_relations() const {
    std::set<std::string> out;
    if (kind_ == Kind::Base) out.insert(relation_);
    if (left_) out.merge(left_->base_relations());
    if (right_) out.merge(right_->base_relations());
    return out;
}

std::size_t QueryTerm::depth() const {
    std::size_t d = 0;
    if (left_) d = std::max(d, left_->depth() + 1);
    if (right_) d = std::max(d, right_->depth() + 1);
    return d;
}

std::string QueryTerm::to_string() const {
    switch (kind_) {
    case Kind::Base:
        return relation_;
    case Kind::Bottom:
        return "⊥";
    case Kind::Select: {
        std::vector<std::string> conds;
        for (const Condition& c : conditions_) conds.push_back(condition_string(c));
        return "select[" + join_list(conds) + "](" + left_->to_string() + ")";
    }
    case Kind::Project:
        return "project[" + join_list(columns_) + "](" + left_->to_string() + ")";
    case Kind::Join: {
        std::vector<std::string> ps;
        for (auto [l, r] : pairs_) ps.push_back(std::to_string(l) + "=" + std::to_string(r));
        return "join[" + join_list(ps) + "](" + left_->to_string() + "," + right_->to_string() + ")";
    }
    case Kind::Rename:
        return "rename[" + join_list(columns_) + "](" + left_->to_string() + ")";
    case Kind::Union:
        return "union(" + left_->to_string() + "," + right_->to_string() + ")";
    }
    return {};
}

bool holds(const Condition& c, const Tuple& t) {
    const Value& lhs = t[c.column];
    const Value& rhs = std::holds_alternative<std::size_t>(c.rhs) ? t[std::get<std::size_t>(c.rhs)]
                                                                  : std::get<Value>(c.rhs);
    switch (c.op) {
    case Condition::Op::Eq: return lhs == rhs;
    case Condition::Op::Le: return lhs <= rhs;
    case Condition::Op::Ge: return lhs >= rhs;
    }
    return false;
}

ComponentId require_single_component(const std::set<std::string>& names, const Instance& a) {
    std::set<ComponentId> seen;
    for (const std::string& n : names) {
        seen.insert(a.component_of(n));
    }
    if (seen.size() > 1) {
        throw CrossComponentQuery("query reads relations of " + std::to_string(seen.size()) +
                                  " separated components");
    }
    return seen.empty() ? 0 : *seen.begin();
}

namespace {

std::set<Tuple> eval(const QueryTerm& t, const Instance& a) {
    using K = QueryTerm::Kind;
    switch (t.kind()) {
    case K::Base: {
        const Relation& r = a.relation(t.relation());
        if (r.is_bottom()) return {};
        if (r.arity() != t.arity()) {
            throw MalformedQuery("relation " + t.relation() + " has arity " + std::to_string(r.arity()) +
                                 ", term expects " + std::to_string(t.arity()));
        }
        return r.tuples();
    }
    case K::Bottom:
        return {};
    case K::Select: {
        std::set<Tuple> out;
        for (const Tuple& row : eval(*t.left(), a)) {
            if (std::all_of(t.conditions().begin(), t.conditions().end(),
                            [&](const Condition& c) { return holds(c, row); })) {
                out.insert(row);
            }
        }
        return out;
    }
    case K::Project:
    case K::Rename: {
        std::set<Tuple> out;
        for (const Tuple& row : eval(*t.left(), a)) {
            Tuple p;
            p.reserve(t.columns().size());
            for (std::size_t c : t.columns()) p.push_back(row[c]);
            out.insert(std::move(p));
        }
        return out;
    }
    case K::Join: {
        std::set<Tuple> lhs = eval(*t.left(), a);
        std::set<Tuple> rhs = eval(*t.right(), a);
        std::set<Tuple> out;
        for (const Tuple& l : lhs) {
            for (const Tuple& r : rhs) {
                bool ok = std::all_of(t.pairs().begin(), t.pairs().end(),
                                      [&](const auto& p) { return l[p.first] == r[p.second]; });
                if (!ok) continue;
                Tuple joined = l;
                joined.insert(joined.end(), r.begin(), r.end());
                out.insert(std::move(joined));
            }
        }
        return out;
    }
    case K::Union: {
        std::set<Tuple> out = eval(*t.left(), a);
        out.merge(eval(*t.right(), a));
        return out;
    }
    }
    return {};
}

}  // namespace

Relation eval_spjru(const QueryTerm& t, const Instance& a, std::string result_name) {
    std::set<std::string> names = t.base_relations();
    for (const std::string& n : names) {
        if (!a.has_relation(n)) throw MalformedQuery("unknown relation " + n);
    }
    require_single_component(names, a);
    return Relation(std::move(result_name), t.arity(), eval(t, a));
}

}  // namespace dbcat
