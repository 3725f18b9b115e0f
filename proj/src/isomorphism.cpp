#include "semunit/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace semunit {

bool LocalIriPolicy::is_local(const Iri& iri) const {
    const auto& s = iri.str();
    return std::any_of(prefixes.begin(), prefixes.end(),
                       [&](const std::string& p) { return s.compare(0, p.size(), p) == 0; });
}

namespace {

// Local nodes are replaced by integer ids; everything else keeps its text.
struct Encoded {
    std::vector<Iri> locals;
    std::map<Iri, int> id;
    std::set<Triple> triples;
    std::vector<std::vector<const Triple*>> incident;  // per local id
};

Encoded encode(std::span<const Triple> in, const LocalIriPolicy& policy) {
    Encoded e;
    e.triples.insert(in.begin(), in.end());
    auto note = [&](const Iri& iri) {
        if (policy.is_local(iri) && !e.id.count(iri)) {
            e.id.emplace(iri, static_cast<int>(e.locals.size()));
            e.locals.push_back(iri);
        }
    };
    for (const auto& t : e.triples) {
        note(t.subject);
        note(t.predicate);
        if (auto r = t.object.as_resource()) note(*r);
    }
    e.incident.resize(e.locals.size());
    for (const auto& t : e.triples) {
        std::set<int> seen;
        auto add = [&](const Iri& iri) {
            auto it = e.id.find(iri);
            if (it != e.id.end() && seen.insert(it->second).second) e.incident[it->second].push_back(&t);
        };
        add(t.subject);
        add(t.predicate);
        if (auto r = t.object.as_resource()) add(*r);
    }
    return e;
}

// Colour refinement: a node's colour is derived from the multiset of
// (position, constant parts, neighbour colours) of its incident triples.
std::vector<std::size_t> refine(const Encoded& e, std::size_t rounds) {
    std::vector<std::size_t> colour(e.locals.size(), 0);
    auto token = [&](const Iri& iri, int self) -> std::string {
        auto it = e.id.find(iri);
        if (it == e.id.end()) return "<" + iri.str() + ">";
        if (it->second == self) return "@self";
        return "@" + std::to_string(colour[it->second]);
    };
    for (std::size_t r = 0; r < rounds; ++r) {
        std::vector<std::string> sigs(e.locals.size());
        for (std::size_t n = 0; n < e.locals.size(); ++n) {
            std::vector<std::string> parts;
            for (const Triple* t : e.incident[n]) {
                std::string s = token(t->subject, static_cast<int>(n)) + " " +
                                token(t->predicate, static_cast<int>(n)) + " ";
                if (auto obj = t->object.as_resource()) s += token(*obj, static_cast<int>(n));
                else s += "\"" + t->object.literal().lexical() + "\"^^" + t->object.literal().datatype().str() +
                          "@" + t->object.literal().language().value_or("");
                parts.push_back(std::move(s));
            }
            std::sort(parts.begin(), parts.end());
            std::string sig = std::to_string(colour[n]) + "|";
            for (auto& p : parts) sig += p + ";";
            sigs[n] = std::move(sig);
        }
        for (std::size_t n = 0; n < e.locals.size(); ++n) colour[n] = std::hash<std::string>{}(sigs[n]);
    }
    return colour;
}

class Matcher {
public:
    Matcher(const Encoded& a, const Encoded& b, std::vector<std::size_t> ca, std::vector<std::size_t> cb)
        : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)),
          map_(a.locals.size(), -1), used_(b.locals.size(), false) {
        order_.resize(a.locals.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
        // Most-constrained nodes first: rarest colour, then highest degree.
        std::map<std::size_t, int> freq;
        for (auto c : ca_) ++freq[c];
        std::sort(order_.begin(), order_.end(), [&](int x, int y) {
            auto fx = freq[ca_[x]], fy = freq[ca_[y]];
            if (fx != fy) return fx < fy;
            return a_.incident[x].size() > a_.incident[y].size();
        });
    }

    bool solve(std::size_t depth = 0) {
        if (depth == order_.size()) return true;
        int n = order_[depth];
        for (std::size_t m = 0; m < b_.locals.size(); ++m) {
            if (used_[m] || cb_[m] != ca_[n]) continue;
            if (a_.incident[n].size() != b_.incident[m].size()) continue;
            map_[n] = static_cast<int>(m);
            used_[m] = true;
            if (consistent(n) && solve(depth + 1)) return true;
            map_[n] = -1;
            used_[m] = false;
        }
        return false;
    }

private:
    // Every triple incident to n whose local nodes are all mapped must exist in b.
    bool consistent(int n) const {
        for (const Triple* t : a_.incident[n]) {
            auto mapped = [&](const Iri& iri) -> const Iri* {
                auto it = a_.id.find(iri);
                if (it == a_.id.end()) return &iri;
                int m = map_[it->second];
                return m < 0 ? nullptr : &b_.locals[m];
            };
            const Iri* s = mapped(t->subject);
            const Iri* p = mapped(t->predicate);
            if (!s || !p) continue;
            if (auto obj = t->object.as_resource()) {
                const Iri* o = mapped(*obj);
                if (!o) continue;
                if (!b_.triples.count(Triple{*s, *p, Term(*o)})) return false;
            } else if (!b_.triples.count(Triple{*s, *p, t->object})) {
                return false;
            }
        }
        return true;
    }

    const Encoded& a_;
    const Encoded& b_;
    std::vector<std::size_t> ca_, cb_;
    std::vector<int> map_;
    std::vector<bool> used_;
    std::vector<int> order_;
};

}  // namespace

bool graph_isomorphic(std::span<const Triple> a, std::span<const Triple> b, const LocalIriPolicy& policy) {
    Encoded ea = encode(a, policy);
    Encoded eb = encode(b, policy);
    if (ea.triples.size() != eb.triples.size() || ea.locals.size() != eb.locals.size()) return false;

    // Ground triples (no local node) must coincide exactly.
    auto ground = [&](const Encoded& e) {
        std::vector<Triple> out;
        for (const auto& t : e.triples) {
            bool local = e.id.count(t.subject) || e.id.count(t.predicate) ||
                         (t.object.is_resource() && e.id.count(t.object.resource()));
            if (!local) out.push_back(t);
        }
        return out;
    };
    if (ground(ea) != ground(eb)) return false;
    if (ea.locals.empty()) return true;

    std::size_t rounds = std::min<std::size_t>(ea.locals.size(), 8) + 1;
    auto ca = refine(ea, rounds);
    auto cb = refine(eb, rounds);
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    return Matcher(ea, eb, std::move(ca), std::move(cb)).solve();
}

}  // namespace semunit
