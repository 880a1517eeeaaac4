#include "dbcat/constraint.hpp"

#include <algorithm>
#include <map>

#include "dbcat/errors.hpp"

namespace dbcat {

namespace {

std::set<Value> quantifier_domain(const Instance& a) {
    std::set<Value> d = active_domain(a);
    d.insert(Value::sentinel_a());
    d.insert(Value::sentinel_b());
    return d;
}

std::string var_list(const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ',';
        out += vars[i];
    }
    return out;
}

void check_safe(const Conjunction& c, const char* what) {
    if (c.atoms.empty()) throw MalformedQuery(std::string(what) + " has no relational atom");
    std::set<std::string> safe = c.atom_variables();
    for (const Comparison& cmp : c.comparisons) {
        if (!cmp.lhs.is_variable && !cmp.rhs.is_variable) {
            throw MalformedQuery("built-in " + cmp.to_string() + " mentions no variable");
        }
        for (const Term* t : {&cmp.lhs, &cmp.rhs}) {
            if (t->is_variable && !safe.contains(t->variable)) {
                throw MalformedQuery("variable " + t->variable + " occurs only in built-ins");
            }
        }
    }
}

}  // namespace

std::vector<std::string> Tgd::left_existential() const {
    std::vector<std::string> out;
    for (const std::string& v : left.variables()) {
        if (std::find(universal.begin(), universal.end(), v) == universal.end()) out.push_back(v);
    }
    return out;
}

std::vector<std::string> Tgd::right_existential() const {
    std::vector<std::string> out;
    for (const std::string& v : right.variables()) {
        if (std::find(universal.begin(), universal.end(), v) == universal.end()) out.push_back(v);
    }
    return out;
}

bool Tgd::weakly_full() const {
    if (!right_existential().empty()) return false;
    std::map<std::string, int> count;
    for (const Atom& atom : left.atoms) {
        for (const Term& t : atom.args) {
            if (t.is_variable) ++count[t.variable];
        }
    }
    for (const std::string& y : left_existential()) {
        if (count[y] > 1) return false;
    }
    return true;
}

void Tgd::validate() const {
    check_safe(left, "tgd left side");
    check_safe(right, "tgd right side");
    std::set<std::string> lv = left.atom_variables();
    for (const std::string& x : universal) {
        if (!lv.contains(x)) throw MalformedQuery("universal variable " + x + " does not occur on the left");
    }
}

std::string Tgd::to_string() const {
    std::string out = "forall " + var_list(universal) + ": ";
    if (auto y = left_existential(); !y.empty()) out += "exists " + var_list(y) + ": ";
    out += left.to_string() + " => ";
    if (auto z = right_existential(); !z.empty()) out += "exists " + var_list(z) + ": ";
    return out + right.to_string();
}

void Egd::validate() const {
    check_safe(body, "egd");
    std::set<std::string> vars = body.atom_variables();
    if (!vars.contains(left) || !vars.contains(right)) {
        throw MalformedQuery("egd equates a variable that does not occur in its body");
    }
}

std::string Egd::to_string() const {
    std::set<std::string> vars = body.variables();
    return "forall " + var_list({vars.begin(), vars.end()}) + ": " + body.to_string() + " => " + left + " = " + right;
}

void BooleanQuery::validate() const { check_safe(body, "boolean query"); }

std::string BooleanQuery::to_string() const { return ":- " + body.to_string(); }

std::string to_string(const Constraint& c) {
    return std::visit([](const auto& x) { return x.to_string(); }, c);
}

void validate(const Constraint& c) {
    std::visit([](const auto& x) { x.validate(); }, c);
}

std::optional<Valuation> tgd_violation(const Tgd& t, const Instance& a) {
    t.validate();
    std::set<Value> domain = quantifier_domain(a);
    std::optional<Valuation> found;
    std::set<Valuation> tried;
    for_each_valuation(t.left, a, {}, domain, [&](const Valuation& v) {
        Valuation x;
        for (const std::string& u : t.universal) x[u] = v.at(u);
        if (!tried.insert(x).second) return true;
        bool ok = !for_each_valuation(t.right, a, x, domain, [](const Valuation&) { return false; });
        if (!ok) found = v;
        return ok;
    });
    return found;
}

std::optional<Valuation> egd_violation(const Egd& e, const Instance& a) {
    e.validate();
    std::optional<Valuation> found;
    for_each_valuation(e.body, a, {}, quantifier_domain(a), [&](const Valuation& v) {
        if (v.at(e.left) == v.at(e.right)) return true;
        found = v;
        return false;
    });
    return found;
}

bool check_tgd(const Tgd& t, const Instance& a) { return !tgd_violation(t, a); }
bool check_egd(const Egd& e, const Instance& a) { return !egd_violation(e, a); }

bool check_boolean(const BooleanQuery& b, const Instance& a) {
    b.validate();
    return satisfiable(b.body, a);
}

std::optional<Violation> sentence_violation(const Sentence& s, const Instance& a) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::optional<Valuation> w;
        bool ok = true;
        if (const auto* t = std::get_if<Tgd>(&s[i])) {
            w = tgd_violation(*t, a);
            ok = !w;
        } else if (const auto* e = std::get_if<Egd>(&s[i])) {
            w = egd_violation(*e, a);
            ok = !w;
        } else {
            ok = check_boolean(std::get<BooleanQuery>(s[i]), a);
        }
        if (!ok) return Violation{i, to_string(s[i]), w.value_or(Valuation{})};
    }
    return std::nullopt;
}

bool check_sentence(const Sentence& s, const Instance& a) { return !sentence_violation(s, a); }

Tgd sentinel_tgd(const std::string& relation, std::size_t k) {
    Tgd t;
    std::vector<Term> args;
    for (std::size_t i = 0; i < k; ++i) {
        t.universal.push_back("X" + std::to_string(i + 1));
        args.push_back(Term::var(t.universal.back()));
    }
    auto side = [&](const char* tag, Value sentinel) {
        Conjunction c;
        std::vector<Term> a = args;
        a.push_back(Term::var(tag));
        c.atoms.push_back({relation, std::move(a)});
        c.comparisons.push_back({Comparison::Op::Eq, Term::var(tag), Term::value(std::move(sentinel))});
        return c;
    };
    t.left = side("Y", Value::sentinel_a());
    t.right = side("Z", Value::sentinel_b());
    return t;
}

}  // namespace dbcat
