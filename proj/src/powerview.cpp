#include "dbcat/powerview.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "dbcat/errors.hpp"

namespace dbcat {

std::string Bound::to_string() const {
    std::ostringstream out;
    out << "depth=";
    if (unbounded()) {
        out << "fixpoint";
    } else {
        out << depth;
    }
    out << " arity=" << max_arity << " cap=" << view_cap;
    return out.str();
}

Domain::Domain(std::vector<Value> sorted_values) : values_(std::move(sorted_values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    bits_ = values_.size() <= 2 ? 1 : static_cast<unsigned>(std::bit_width(values_.size() - 1));
    mask_ = (std::uint64_t{1} << bits_) - 1;
}

std::uint64_t Domain::code(const Value& v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) throw Error("value " + v.to_string() + " outside the coded domain");
    return static_cast<std::uint64_t>(it - values_.begin());
}

std::uint64_t Domain::pack(const Tuple& t) const {
    if (t.size() > max_arity()) throw BudgetExceeded("tuple too wide for packed rows");
    std::uint64_t row = 0;
    for (const Value& v : t) row = (row << bits_) | code(v);
    return row;
}

Tuple Domain::unpack(std::uint64_t row, std::size_t arity) const {
    Tuple t(arity);
    for (std::size_t k = 0; k < arity; ++k) t[k] = values_[column(row, arity, k)];
    return t;
}

namespace {

struct PackedViewHash {
    std::size_t operator()(const PackedView& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.arity;
        for (std::uint64_t r : v.rows) {
            h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

void check_width(const Domain& d, std::size_t arity) {
    if (arity * d.bits() > 64) {
        throw BudgetExceeded("arity " + std::to_string(arity) + " over " + std::to_string(d.values().size()) +
                             " values does not fit a packed row");
    }
}

std::shared_ptr<const Domain> merged_domain(const Domain& a, const Domain& b) {
    std::vector<Value> values = a.values();
    values.insert(values.end(), b.values().begin(), b.values().end());
    return std::make_shared<const Domain>(std::move(values));
}

PackedView recode(const PackedView& v, const Domain& from, const Domain& to) {
    check_width(to, v.arity);
    std::vector<std::uint64_t> map(from.values().size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = to.code(from.values()[i]);
    PackedView out{v.arity, {}};
    out.rows.reserve(v.rows.size());
    for (std::uint64_t row : v.rows) {
        std::uint64_t r = 0;
        for (std::size_t k = 0; k < v.arity; ++k) r = (r << to.bits()) | map[from.column(row, v.arity, k)];
        out.rows.push_back(r);
    }
    return out;
}

std::vector<PackedView> recode_all(const std::vector<PackedView>& views, const Domain& from, const Domain& to) {
    if (from == to) return views;
    std::vector<PackedView> out;
    out.reserve(views.size());
    for (const PackedView& v : views) out.push_back(recode(v, from, to));
    return out;
}

// Both families expressed over one domain. Monotone recoding keeps sort order.
struct Aligned {
    std::shared_ptr<const Domain> domain;
    std::vector<PackedView> left;
    std::vector<PackedView> right;
};

Aligned align(const ViewFamily& a, const ViewFamily& b) {
    if (*a.domain() == *b.domain()) return {a.domain(), a.views(), b.views()};
    auto d = merged_domain(*a.domain(), *b.domain());
    return {d, recode_all(a.views(), *a.domain(), *d), recode_all(b.views(), *b.domain(), *d)};
}

class Engine {
public:
    Engine(const std::vector<Relation>& base, const Bound& bound) : bound_(bound) {
        std::vector<Value> values;
        for (const Relation& r : base) {
            if (r.is_bottom()) continue;
            if (r.arity() > bound.max_arity) {
                throw Error("relation " + r.name() + " has arity " + std::to_string(r.arity()) +
                            " above the bound's max arity " + std::to_string(bound.max_arity));
            }
            for (const Tuple& t : r.tuples()) values.insert(values.end(), t.begin(), t.end());
        }
        domain_ = std::make_shared<const Domain>(std::move(values));
        if (!domain_->values().empty()) check_width(*domain_, bound.max_arity);
        for (const Relation& r : base) {
            if (r.is_bottom() || r.empty()) continue;
            PackedView v{r.arity(), {}};
            for (const Tuple& t : r.tuples()) v.rows.push_back(domain_->pack(t));
            add(std::move(v), [&] { return QueryTerm::base(r.name(), r.arity()); });
        }
    }

    ViewFamily run() {
        bool fixpoint = bound_.unbounded() ? run_fixpoint() : run_levels();
        std::vector<std::size_t> order(views_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return views_[a] < views_[b]; });
        std::vector<PackedView> views;
        std::vector<QueryTermPtr> witnesses;
        views.reserve(order.size());
        witnesses.reserve(order.size());
        for (std::size_t i : order) {
            views.push_back(std::move(views_[i]));
            witnesses.push_back(std::move(witnesses_[i]));
        }
        return ViewFamily(domain_, std::move(views), std::move(witnesses), fixpoint);
    }

private:
    struct Pattern {
        // kind 0: free, 1: equals constant `value`, 2: equals column `value`
        std::vector<std::pair<int, std::uint64_t>> columns;
    };

    template <class MakeWitness>
    bool add(PackedView v, MakeWitness make) {
        if (v.rows.empty()) return false;
        auto [it, fresh] = index_.try_emplace(v, views_.size());
        if (!fresh) return false;
        if (views_.size() >= bound_.view_cap) {
            throw BudgetExceeded("power view exceeds the cap of " + std::to_string(bound_.view_cap) + " views");
        }
        views_.push_back(std::move(v));
        witnesses_.push_back(make());
        return true;
    }

    const std::vector<Pattern>& patterns(std::size_t arity) {
        auto it = patterns_.find(arity);
        if (it != patterns_.end()) return it->second;
        std::vector<Pattern> out;
        Pattern p;
        std::uint64_t n = domain_->values().size();
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == arity) {
                bool any = std::any_of(p.columns.begin(), p.columns.end(), [](const auto& c) { return c.first != 0; });
                if (any) out.push_back(p);
                return;
            }
            p.columns.push_back({0, 0});
            self(self, k + 1);
            for (std::uint64_t c = 0; c < n; ++c) {
                p.columns.back() = {1, c};
                self(self, k + 1);
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (p.columns[j].first != 0) continue;
                p.columns.back() = {2, j};
                self(self, k + 1);
            }
            p.columns.pop_back();
        };
        rec(rec, 0);
        return patterns_.emplace(arity, std::move(out)).first->second;
    }

    const std::vector<std::vector<std::size_t>>& projections(std::size_t arity) {
        auto it = projections_.find(arity);
        if (it != projections_.end()) return it->second;
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> seq;
        std::vector<bool> used(arity, false);
        auto rec = [&](auto&& self) -> void {
            if (!seq.empty()) {
                bool identity = seq.size() == arity;
                for (std::size_t i = 0; identity && i < seq.size(); ++i) identity = seq[i] == i;
                if (!identity) out.push_back(seq);
            }
            if (seq.size() == arity) return;
            for (std::size_t c = 0; c < arity; ++c) {
                if (used[c]) continue;
                used[c] = true;
                seq.push_back(c);
                self(self);
                seq.pop_back();
                used[c] = false;
            }
        };
        rec(rec);
        return projections_.emplace(arity, std::move(out)).first->second;
    }

    bool unary(std::size_t i) {
        bool grew = false;
        const PackedView v = views_[i];
        const QueryTermPtr w = witnesses_[i];
        const Domain& d = *domain_;
        for (const Pattern& p : patterns(v.arity)) {
            PackedView out{v.arity, {}};
            for (std::uint64_t row : v.rows) {
                bool ok = true;
                for (std::size_t k = 0; k < v.arity && ok; ++k) {
                    auto [kind, val] = p.columns[k];
                    if (kind == 1) ok = d.column(row, v.arity, k) == val;
                    if (kind == 2) ok = d.column(row, v.arity, k) == d.column(row, v.arity, val);
                }
                if (ok) out.rows.push_back(row);
            }
            if (out.rows.size() == v.rows.size()) continue;
            grew |= add(std::move(out), [&] {
                std::vector<Condition> conds;
                for (std::size_t k = 0; k < v.arity; ++k) {
                    auto [kind, val] = p.columns[k];
                    if (kind == 1) conds.push_back({Condition::Op::Eq, k, d.value(val)});
                    if (kind == 2) conds.push_back({Condition::Op::Eq, k, static_cast<std::size_t>(val)});
                }
                return QueryTerm::select(w, std::move(conds));
            });
        }
        for (const auto& cols : projections(v.arity)) {
            PackedView out{cols.size(), {}};
            out.rows.reserve(v.rows.size());
            for (std::uint64_t row : v.rows) {
                std::uint64_t r = 0;
                for (std::size_t c : cols) r = (r << d.bits()) | d.column(row, v.arity, c);
                out.rows.push_back(r);
            }
            std::sort(out.rows.begin(), out.rows.end());
            out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
            grew |= add(std::move(out), [&] {
                return cols.size() == v.arity ? QueryTerm::rename(w, cols) : QueryTerm::project(w, cols);
            });
        }
        return grew;
    }

    bool join(std::size_t i, std::size_t j) {
        const std::size_t a = views_[i].arity;
        const std::size_t b = views_[j].arity;
        if (a + b > bound_.max_arity) return false;
        const PackedView l = views_[i];
        const PackedView r = views_[j];
        const Domain& d = *domain_;
        const std::size_t npairs = a * b;
        std::vector<std::uint32_t> eq(l.rows.size() * r.rows.size());
        for (std::size_t x = 0; x < l.rows.size(); ++x) {
            for (std::size_t y = 0; y < r.rows.size(); ++y) {
                std::uint32_t m = 0;
                for (std::size_t p = 0; p < npairs; ++p) {
                    if (d.column(l.rows[x], a, p / b) == d.column(r.rows[y], b, p % b)) m |= 1u << p;
                }
                eq[x * r.rows.size() + y] = m;
            }
        }
        bool grew = false;
        for (std::uint32_t mask = 0; mask < (1u << npairs); ++mask) {
            PackedView out{a + b, {}};
            for (std::size_t x = 0; x < l.rows.size(); ++x) {
                for (std::size_t y = 0; y < r.rows.size(); ++y) {
                    if ((eq[x * r.rows.size() + y] & mask) == mask) {
                        out.rows.push_back((l.rows[x] << (b * d.bits())) | r.rows[y]);
                    }
                }
            }
            grew |= add(std::move(out), [&] {
                std::vector<std::pair<std::size_t, std::size_t>> pairs;
                for (std::size_t p = 0; p < npairs; ++p) {
                    if (mask & (1u << p)) pairs.emplace_back(p / b, p % b);
                }
                return QueryTerm::join(witnesses_[i], witnesses_[j], std::move(pairs));
            });
        }
        return grew;
    }

    PackedView union_of(std::size_t i, std::size_t j) const {
        PackedView out{views_[i].arity, {}};
        std::set_union(views_[i].rows.begin(), views_[i].rows.end(), views_[j].rows.begin(), views_[j].rows.end(),
                       std::back_inserter(out.rows));
        return out;
    }

    bool unite(std::size_t i, std::size_t j) {
        if (i == j || views_[i].arity != views_[j].arity) return false;
        return add(union_of(i, j), [&] { return QueryTerm::unite(witnesses_[i], witnesses_[j]); });
    }

    bool run_levels() {
        std::size_t begin = 0;
        std::size_t end = views_.size();
        if (end == 0) return true;
        for (int level = 1; level <= bound_.depth; ++level) {
            bool grew = false;
            for (std::size_t i = begin; i < end; ++i) grew |= unary(i);
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t j = 0; j < end; ++j) {
                    grew |= join(i, j);
                    if (j < begin) grew |= join(j, i);
                    if (j < begin || j < i) grew |= unite(i, j);
                }
            }
            if (!grew) return true;
            begin = end;
            end = views_.size();
        }
        return false;
    }

    bool run_fixpoint() {
        for (std::size_t i = 0; i < views_.size(); ++i) {
            unary(i);
            for (std::size_t j = 0; j <= i; ++j) {
                join(i, j);
                if (j != i) join(j, i);
            }
        }
        std::map<std::size_t, std::vector<std::size_t>> by_arity;
        for (std::size_t i = 0; i < views_.size(); ++i) by_arity[views_[i].arity].push_back(i);
        std::vector<bool> closed(views_.size(), false);
        for (auto& [arity, gens] : by_arity) {
            std::stable_sort(gens.begin(), gens.end(),
                             [&](std::size_t a, std::size_t b) { return views_[a].rows.size() < views_[b].rows.size(); });
            std::vector<std::size_t> members;
            auto admit = [&](std::size_t idx) {
                if (idx >= closed.size()) closed.resize(idx + 1, false);
                if (closed[idx]) return;
                closed[idx] = true;
                members.push_back(idx);
            };
            for (std::size_t g : gens) {
                if (closed[g]) continue;
                std::size_t snapshot = members.size();
                admit(g);
                for (std::size_t k = 0; k < snapshot; ++k) {
                    std::size_t x = members[k];
                    PackedView u = union_of(x, g);
                    auto found = index_.find(u);
                    if (found != index_.end()) {
                        admit(found->second);
                        continue;
                    }
                    add(std::move(u), [&] { return QueryTerm::unite(witnesses_[x], witnesses_[g]); });
                    admit(views_.size() - 1);
                }
            }
        }
        return true;
    }

    Bound bound_;
    std::shared_ptr<const Domain> domain_;
    std::vector<PackedView> views_;
    std::vector<QueryTermPtr> witnesses_;
    std::unordered_map<PackedView, std::size_t, PackedViewHash> index_;
    std::map<std::size_t, std::vector<Pattern>> patterns_;
    std::map<std::size_t, std::vector<std::vector<std::size_t>>> projections_;
};

std::optional<PackedView> encode(const Domain& d, const std::set<Tuple>& ext, std::size_t arity) {
    if (arity * d.bits() > 64) return std::nullopt;
    PackedView v{arity, {}};
    for (const Tuple& t : ext) {
        if (t.size() != arity) return std::nullopt;
        for (const Value& x : t) {
            if (!std::binary_search(d.values().begin(), d.values().end(), x)) return std::nullopt;
        }
        v.rows.push_back(d.pack(t));
    }
    return v;
}

}  // namespace

ViewFamily::ViewFamily(std::shared_ptr<const Domain> domain, std::vector<PackedView> views,
                       std::vector<QueryTermPtr> witnesses, bool fixpoint)
    : domain_(std::move(domain)), views_(std::move(views)), witnesses_(std::move(witnesses)), fixpoint_(fixpoint) {
    if (views_.size() != witnesses_.size()) throw Error("view family: one witness per view required");
    if (!views_.empty() && !domain_) throw Error("view family: views without a domain");
}

bool ViewFamily::contains(const std::set<Tuple>& extension, std::size_t arity) const {
    if (extension.empty()) return true;
    if (!domain_) return false;
    auto v = encode(*domain_, extension, arity);
    return v && std::binary_search(views_.begin(), views_.end(), *v);
}

QueryTermPtr ViewFamily::witness(const std::set<Tuple>& extension, std::size_t arity) const {
    if (extension.empty()) return QueryTerm::bottom(arity);
    if (!domain_) return nullptr;
    auto v = encode(*domain_, extension, arity);
    if (!v) return nullptr;
    auto it = std::lower_bound(views_.begin(), views_.end(), *v);
    if (it == views_.end() || *it != *v) return nullptr;
    return witnesses_[static_cast<std::size_t>(it - views_.begin())];
}

std::vector<std::pair<std::size_t, std::set<Tuple>>> ViewFamily::extensions() const {
    std::vector<std::pair<std::size_t, std::set<Tuple>>> out;
    out.reserve(views_.size());
    for (const PackedView& v : views_) {
        std::set<Tuple> ext;
        for (std::uint64_t row : v.rows) ext.insert(domain_->unpack(row, v.arity));
        out.emplace_back(v.arity, std::move(ext));
    }
    return out;
}

bool ViewFamily::operator==(const ViewFamily& o) const {
    if (views_.size() != o.views_.size()) return false;
    if (views_.empty()) return true;
    Aligned al = align(*this, o);
    return al.left == al.right;
}

bool ViewFamily::subset_of(const ViewFamily& o) const {
    if (views_.empty()) return true;
    if (views_.size() > o.views_.size()) return false;
    Aligned al = align(*this, o);
    return std::includes(al.right.begin(), al.right.end(), al.left.begin(), al.left.end());
}

ViewFamily ViewFamily::intersect(const ViewFamily& a, const ViewFamily& b) {
    bool fix = a.fixpoint_ && b.fixpoint_;
    if (a.views_.empty() || b.views_.empty()) return ViewFamily({}, {}, {}, fix);
    Aligned al = align(a, b);
    std::vector<PackedView> views;
    std::vector<QueryTermPtr> witnesses;
    std::size_t j = 0;
    for (std::size_t i = 0; i < al.left.size(); ++i) {
        while (j < al.right.size() && al.right[j] < al.left[i]) ++j;
        if (j < al.right.size() && al.right[j] == al.left[i]) {
            views.push_back(al.left[i]);
            witnesses.push_back(a.witnesses_[i]);
        }
    }
    if (views.empty()) return ViewFamily({}, {}, {}, fix);
    return ViewFamily(al.domain, std::move(views), std::move(witnesses), fix);
}

ViewFamily ViewFamily::unite(const ViewFamily& a, const ViewFamily& b) {
    bool fix = a.fixpoint_ && b.fixpoint_;
    if (a.views_.empty()) return ViewFamily(b.domain_, b.views_, b.witnesses_, fix);
    if (b.views_.empty()) return ViewFamily(a.domain_, a.views_, a.witnesses_, fix);
    Aligned al = align(a, b);
    std::vector<PackedView> views;
    std::vector<QueryTermPtr> witnesses;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < al.left.size() || j < al.right.size()) {
        if (j == al.right.size() || (i < al.left.size() && al.left[i] < al.right[j])) {
            views.push_back(al.left[i]);
            witnesses.push_back(a.witnesses_[i++]);
        } else if (i == al.left.size() || al.right[j] < al.left[i]) {
            views.push_back(al.right[j]);
            witnesses.push_back(b.witnesses_[j++]);
        } else {
            views.push_back(al.left[i]);
            witnesses.push_back(a.witnesses_[i++]);
            ++j;
        }
    }
    return ViewFamily(al.domain, std::move(views), std::move(witnesses), fix);
}

ViewFamily close_views(const std::vector<Relation>& base, const Bound& bound) {
    using Key = std::pair<Bound, std::vector<std::tuple<std::string, std::size_t, std::set<Tuple>>>>;
    static std::mutex mutex;
    static std::map<Key, ViewFamily> memo;
    Key key{bound, {}};
    for (const Relation& r : base) key.second.emplace_back(r.name(), r.arity(), r.tuples());
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    ViewFamily out = Engine(base, bound).run();
    std::lock_guard<std::mutex> lock(mutex);
    if (memo.size() >= 4096) memo.clear();
    memo.emplace(std::move(key), out);
    return out;
}

ViewSet::ViewSet(Bound bound, std::map<ComponentId, ViewFamily> blocks) : bound_(bound) {
    for (auto& [id, family] : blocks) {
        if (!family.only_bottom()) blocks_.emplace(id, std::move(family));
    }
}

bool ViewSet::fixpoint() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.fixpoint(); });
}

std::size_t ViewSet::size() const {
    std::size_t n = 1;
    for (const auto& [id, family] : blocks_) n += family.size();
    return n;
}

bool ViewSet::contains(const Relation& r) const {
    if (r.empty()) return true;
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const auto& kv) { return kv.second.contains(r); });
}

ViewFamily ViewSet::flattened() const {
    ViewFamily out;
    for (const auto& [id, family] : blocks_) out = ViewFamily::unite(out, family);
    return out;
}

Instance ViewSet::to_instance() const {
    if (blocks_.empty()) return Instance::bottom();
    std::vector<Relation> rels;
    std::map<std::string, ComponentId> part;
    std::size_t n = 0;
    for (const auto& [id, family] : blocks_) {
        for (auto& [arity, ext] : family.extensions()) {
            std::string name = "v" + std::to_string(++n);
            rels.emplace_back(name, arity, std::move(ext));
            part[name] = id;
        }
    }
    return Instance(std::move(rels), std::move(part));
}

std::string ViewSet::serialize() const {
    std::ostringstream out;
    out << "⊥\n";
    for (const auto& [id, family] : blocks_) {
        for (const auto& [arity, ext] : family.extensions()) {
            out << '[' << id << "] {";
            bool first = true;
            for (const Tuple& t : ext) {
                if (!first) out << ',';
                first = false;
                out << to_string(t);
            }
            out << "}\n";
        }
    }
    return out.str();
}

ViewSet power_view(const Instance& a, const Bound& bound) {
    std::map<ComponentId, ViewFamily> blocks;
    for (ComponentId c : a.components()) {
        std::vector<Relation> base;
        for (const auto& [name, r] : a.relations()) {
            if (!r.is_bottom() && a.component_of(name) == c) base.push_back(r);
        }
        blocks.emplace(c, close_views(base, bound));
    }
    return ViewSet(bound, std::move(blocks));
}

bool isomorphic(const ViewSet& a, const ViewSet& b) {
    if (a.blocks().size() != b.blocks().size()) return false;
    std::vector<const ViewFamily*> pool;
    for (const auto& [id, family] : b.blocks()) pool.push_back(&family);
    for (const auto& [id, family] : a.blocks()) {
        auto it = std::find_if(pool.begin(), pool.end(), [&](const ViewFamily* f) { return *f == family; });
        if (it == pool.end()) return false;
        pool.erase(it);
    }
    return true;
}

IsoResult compare_instances(const Instance& a, const Instance& b, const Bound& bound) {
    ViewSet ta = power_view(a, bound);
    ViewSet tb = power_view(b, bound);
    return {isomorphic(ta, tb), ta.fixpoint() && tb.fixpoint()};
}

bool instances_isomorphic(const Instance& a, const Instance& b, const Bound& bound) {
    return compare_instances(a, b, bound).isomorphic;
}

ViewSet tagged_union(const ViewSet& a, const ViewSet& b) {
    std::map<ComponentId, ViewFamily> blocks;
    ComponentId next = 1;
    for (const auto& [id, family] : a.blocks()) blocks.emplace(next++, family);
    for (const auto& [id, family] : b.blocks()) blocks.emplace(next++, family);
    return ViewSet(a.bound(), std::move(blocks));
}

ViewSet matching(const Instance& a, const Instance& b, const Bound& bound) {
    ViewFamily common = ViewFamily::intersect(power_view(a, bound).flattened(), power_view(b, bound).flattened());
    return ViewSet(bound, {{0, std::move(common)}});
}

ViewSet merging(const Instance& a, const Instance& b, const Bound& bound) {
    return power_view(federated_union(a, b), bound);
}

}  // namespace dbcat
