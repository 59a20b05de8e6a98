#include "biorw/cls_term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace biorw {

bool ClsMol::operator==(const ClsMol& o) const {
    return kind == o.kind && seq == o.seq && content == o.content;
}

bool ClsMol::operator<(const ClsMol& o) const {
    if (kind != o.kind) return kind < o.kind; // sequences sort before loops
    if (seq != o.seq) return seq < o.seq;
    return std::lexicographical_compare(content.begin(), content.end(), o.content.begin(),
                                        o.content.end(),
                                        [](const ClsMol& a, const ClsMol& b) { return a < b; });
}

bool ClsTerm::operator<(const ClsTerm& o) const {
    return std::lexicographical_compare(mols.begin(), mols.end(), o.mols.begin(), o.mols.end(),
                                        [](const ClsMol& a, const ClsMol& b) { return a < b; });
}

ClsTerm normalize(ClsTerm term) {
    std::vector<ClsMol> out;
    for (auto& m : term.mols) {
        if (m.kind == ClsMol::Kind::Seq) {
            if (m.seq.empty()) continue; // eps is neutral for |
            m.content.clear();
            out.push_back(std::move(m));
        } else {
            ClsTerm inner;
            inner.mols = std::move(m.content);
            m.content = normalize(std::move(inner)).mols;
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    return ClsTerm{std::move(out)};
}

ClsTerm par(std::vector<ClsMol> mols) { return normalize(ClsTerm{std::move(mols)}); }

long long count_element(const ClsTerm& term, const std::string& name) {
    long long n = 0;
    for (const auto& m : term.mols) {
        for (const auto& e : m.seq)
            if (e == name) ++n;
        if (m.kind == ClsMol::Kind::Loop) {
            ClsTerm inner;
            inner.mols = m.content;
            n += count_element(inner, name);
        }
    }
    return n;
}

namespace {

void render_seq(std::ostringstream& os, const std::vector<std::string>& seq) {
    if (seq.empty()) {
        os << "eps";
        return;
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ".";
        os << seq[i];
    }
}

void render_mol(std::ostringstream& os, const ClsMol& m) {
    if (m.kind == ClsMol::Kind::Seq) {
        render_seq(os, m.seq);
    } else {
        os << "loop(";
        render_seq(os, m.seq);
        os << ")[";
        ClsTerm inner;
        inner.mols = m.content;
        os << render_term(inner);
        os << "]";
    }
}

} // namespace

std::string render_term(const ClsTerm& term) {
    if (term.mols.empty()) return "eps";
    std::ostringstream os;
    for (std::size_t i = 0; i < term.mols.size(); ++i) {
        if (i) os << " | ";
        render_mol(os, term.mols[i]);
    }
    return os.str();
}

std::optional<ClsTerm> term_of_pattern(const ClsPattern& pattern) {
    ClsTerm out;
    for (const auto& m : pattern.mols) {
        if (m.kind == ClsPatMol::Kind::TermVar) return std::nullopt;
        ClsMol mol;
        mol.kind = m.kind == ClsPatMol::Kind::Seq ? ClsMol::Kind::Seq : ClsMol::Kind::Loop;
        for (const auto& a : m.seq) {
            if (a.kind != AtomKind::Value) return std::nullopt;
            mol.seq.push_back(a.name);
        }
        if (m.kind == ClsPatMol::Kind::Loop) {
            ClsPattern inner;
            inner.mols = m.content;
            auto t = term_of_pattern(inner);
            if (!t) return std::nullopt;
            mol.content = std::move(t->mols);
        }
        out.mols.push_back(std::move(mol));
    }
    return normalize(std::move(out));
}

ClsPattern pattern_of_term(const ClsTerm& term) {
    ClsPattern out;
    for (const auto& m : term.mols) {
        ClsPatMol p;
        p.kind = m.kind == ClsMol::Kind::Seq ? ClsPatMol::Kind::Seq : ClsPatMol::Kind::Loop;
        for (const auto& e : m.seq) p.seq.push_back(value_atom(e));
        if (m.kind == ClsMol::Kind::Loop) {
            ClsTerm inner;
            inner.mols = m.content;
            p.content = pattern_of_term(inner).mols;
        }
        out.mols.push_back(std::move(p));
    }
    return out;
}

// --- matching ----------------------------------------------------------------

namespace {

/// Multiset of molecules as sorted (mol, count) runs.
using Bag = std::vector<std::pair<ClsMol, int>>;

Bag bag_of(const std::vector<ClsMol>& sorted_mols) {
    Bag bag;
    for (const auto& m : sorted_mols) {
        if (!bag.empty() && bag.back().first == m)
            ++bag.back().second;
        else
            bag.emplace_back(m, 1);
    }
    return bag;
}

bool bag_is_empty(const Bag& bag) {
    for (const auto& [_, c] : bag)
        if (c > 0) return false;
    return true;
}

ClsTerm term_of_bag(const Bag& bag) {
    ClsTerm t;
    for (const auto& [m, c] : bag)
        for (int i = 0; i < c; ++i) t.mols.push_back(m);
    return t; // runs are sorted, so this is normalized
}

std::string sigma_key(const Instantiation& s) {
    std::ostringstream os;
    for (const auto& [k, v] : s.elems) os << "e " << k << "=" << v << ";";
    for (const auto& [k, v] : s.seqs) {
        os << "s " << k << "=";
        for (const auto& e : v) os << e << ".";
        os << ";";
    }
    for (const auto& [k, v] : s.terms) os << "t " << k << "=" << render_term(v) << ";";
    return os.str();
}

struct Matcher {
    const ClsOptions& opts;
    std::vector<Instantiation> found;
    std::set<std::string> seen;

    explicit Matcher(const ClsOptions& o) : opts(o) {}

    void emit(const Instantiation& sigma) {
        if (seen.insert(sigma_key(sigma)).second) found.push_back(sigma);
    }

    void match_seq(const ClsSeqPat& items, std::size_t i, const std::vector<std::string>& elems,
                   std::size_t j, Instantiation sigma,
                   const std::function<void(Instantiation)>& k) {
        if (i == items.size()) {
            if (j == elems.size()) k(std::move(sigma));
            return;
        }
        const Atom& item = items[i];
        switch (item.kind) {
            case AtomKind::Value:
                if (j < elems.size() && elems[j] == item.name)
                    match_seq(items, i + 1, elems, j + 1, std::move(sigma), k);
                return;
            case AtomKind::Param:
                return; // engine patterns are parameter-free; no match otherwise
            case AtomKind::ElemVar: {
                auto it = sigma.elems.find(item.name);
                if (it != sigma.elems.end()) {
                    if (j < elems.size() && elems[j] == it->second)
                        match_seq(items, i + 1, elems, j + 1, std::move(sigma), k);
                    return;
                }
                if (j < elems.size()) {
                    Instantiation next = sigma;
                    next.elems[item.name] = elems[j];
                    match_seq(items, i + 1, elems, j + 1, std::move(next), k);
                }
                return;
            }
            case AtomKind::SeqVar: {
                auto it = sigma.seqs.find(item.name);
                if (it != sigma.seqs.end()) {
                    const auto& bound = it->second;
                    if (j + bound.size() <= elems.size() &&
                        std::equal(bound.begin(), bound.end(), elems.begin() + j))
                        match_seq(items, i + 1, elems, j + bound.size(), std::move(sigma), k);
                    return;
                }
                for (std::size_t len = 0; j + len <= elems.size(); ++len) {
                    Instantiation next = sigma;
                    next.seqs[item.name] =
                        std::vector<std::string>(elems.begin() + j, elems.begin() + j + len);
                    match_seq(items, i + 1, elems, j + len, next, k);
                }
                return;
            }
            case AtomKind::TermVar:
                return; // term variables cannot sit inside a sequence
        }
    }

    void match_mol(const ClsPatMol& pat, const ClsMol& mol, Instantiation sigma,
                   const std::function<void(Instantiation)>& k) {
        if (pat.kind == ClsPatMol::Kind::Seq) {
            if (mol.kind != ClsMol::Kind::Seq) return;
            match_seq(pat.seq, 0, mol.seq, 0, std::move(sigma), k);
            return;
        }
        if (pat.kind != ClsPatMol::Kind::Loop || mol.kind != ClsMol::Kind::Loop) return;

        std::vector<std::vector<std::string>> loop_seqs;
        loop_seqs.push_back(mol.seq);
        if (opts.loop_rotation && mol.seq.size() > 1) {
            for (std::size_t r = 1; r < mol.seq.size(); ++r) {
                std::vector<std::string> rot(mol.seq.begin() + r, mol.seq.end());
                rot.insert(rot.end(), mol.seq.begin(), mol.seq.begin() + r);
                loop_seqs.push_back(std::move(rot));
            }
        }
        for (const auto& seq : loop_seqs) {
            match_seq(pat.seq, 0, seq, 0, sigma, [&](Instantiation s1) {
                match_mols(pat.content, bag_of(mol.content), std::move(s1), k);
            });
        }
    }

    /// Match a multiset of pattern molecules against a bag of term
    /// molecules: concrete pattern molecules claim term molecules
    /// injectively, the leftovers are split among term variables.
    void match_mols(const std::vector<ClsPatMol>& pats, Bag bag, Instantiation sigma,
                    const std::function<void(Instantiation)>& k) {
        std::vector<const ClsPatMol*> concrete;
        std::vector<std::string> tvars;
        for (const auto& p : pats) {
            if (p.kind == ClsPatMol::Kind::TermVar)
                tvars.push_back(p.var);
            else
                concrete.push_back(&p);
        }
        match_concrete(concrete, 0, bag, std::move(sigma),
                       [&](Bag rest, Instantiation s) { match_tvars(tvars, rest, std::move(s), k); });
    }

    void match_concrete(const std::vector<const ClsPatMol*>& concrete, std::size_t i, Bag bag,
                        Instantiation sigma,
                        const std::function<void(Bag, Instantiation)>& k) {
        if (i == concrete.size()) {
            k(std::move(bag), std::move(sigma));
            return;
        }
        for (std::size_t r = 0; r < bag.size(); ++r) {
            if (bag[r].second == 0) continue;
            Bag next = bag;
            --next[r].second;
            match_mol(*concrete[i], bag[r].first, sigma, [&](Instantiation s) {
                match_concrete(concrete, i + 1, next, std::move(s), k);
            });
        }
        // a sequence pattern may instantiate to eps (all items sequence
        // variables bound to the empty sequence) and consume nothing
        if (concrete[i]->kind == ClsPatMol::Kind::Seq) {
            static const std::vector<std::string> no_elems;
            match_seq(concrete[i]->seq, 0, no_elems, 0, sigma, [&](Instantiation s) {
                match_concrete(concrete, i + 1, bag, std::move(s), k);
            });
        }
    }

    void match_tvars(const std::vector<std::string>& tvars, Bag bag, Instantiation sigma,
                     const std::function<void(Instantiation)>& k) {
        // multiplicity per distinct name, processed in sorted order
        std::map<std::string, int> mult;
        for (const auto& v : tvars) ++mult[v];
        match_tvar_names(std::vector<std::pair<std::string, int>>(mult.begin(), mult.end()), 0,
                         std::move(bag), std::move(sigma), k);
    }

    void match_tvar_names(const std::vector<std::pair<std::string, int>>& names, std::size_t i,
                          Bag bag, Instantiation sigma,
                          const std::function<void(Instantiation)>& k) {
        if (i == names.size()) {
            if (bag_is_empty(bag)) k(std::move(sigma));
            return;
        }
        const auto& [name, mult] = names[i];
        auto bound = sigma.terms.find(name);
        if (bound != sigma.terms.end()) {
            Bag need = bag_of(bound->second.mols);
            Bag rest = bag;
            for (const auto& [m, c] : need) {
                bool ok = false;
                for (auto& [rm, rc] : rest) {
                    if (rm == m && rc >= c * mult) {
                        rc -= c * mult;
                        ok = true;
                        break;
                    }
                }
                if (!ok) return;
            }
            match_tvar_names(names, i + 1, std::move(rest), std::move(sigma), k);
            return;
        }
        // enumerate every sub-bag B with mult*B <= bag
        std::vector<int> take(bag.size(), 0);
        enumerate_take(names, i, bag, take, 0, sigma, k);
    }

    void enumerate_take(const std::vector<std::pair<std::string, int>>& names, std::size_t i,
                        const Bag& bag, std::vector<int>& take, std::size_t r,
                        const Instantiation& sigma, const std::function<void(Instantiation)>& k) {
        const auto& [name, mult] = names[i];
        if (r == bag.size()) {
            Bag chosen, rest;
            for (std::size_t q = 0; q < bag.size(); ++q) {
                if (take[q] > 0) chosen.emplace_back(bag[q].first, take[q]);
                rest.emplace_back(bag[q].first, bag[q].second - take[q] * mult);
            }
            Instantiation next = sigma;
            next.terms[name] = term_of_bag(chosen);
            match_tvar_names(names, i + 1, std::move(rest), std::move(next), k);
            return;
        }
        for (int n = 0; n * mult <= bag[r].second; ++n) {
            take[r] = n;
            enumerate_take(names, i, bag, take, r + 1, sigma, k);
        }
        take[r] = 0;
    }
};

} // namespace

std::vector<Instantiation> cls_match(const ClsPattern& pattern, const ClsTerm& term,
                                     const ClsOptions& opts) {
    Matcher m(opts);
    m.match_mols(pattern.mols, bag_of(term.mols), Instantiation{},
                 [&](Instantiation sigma) { m.emit(sigma); });
    return std::move(m.found);
}

namespace {

std::vector<std::string> instantiate_seq(const ClsSeqPat& items, const Instantiation& sigma) {
    std::vector<std::string> out;
    for (const auto& a : items) {
        switch (a.kind) {
            case AtomKind::Value:
                out.push_back(a.name);
                break;
            case AtomKind::ElemVar:
                out.push_back(sigma.elems.at(a.name));
                break;
            case AtomKind::SeqVar: {
                const auto& s = sigma.seqs.at(a.name);
                out.insert(out.end(), s.begin(), s.end());
                break;
            }
            case AtomKind::Param:
            case AtomKind::TermVar:
                throw std::logic_error("cannot instantiate pattern with unresolved variable " +
                                       a.name);
        }
    }
    return out;
}

void instantiate_mols(const std::vector<ClsPatMol>& pats, const Instantiation& sigma,
                      std::vector<ClsMol>& out) {
    for (const auto& p : pats) {
        switch (p.kind) {
            case ClsPatMol::Kind::Seq: {
                ClsMol m;
                m.kind = ClsMol::Kind::Seq;
                m.seq = instantiate_seq(p.seq, sigma);
                out.push_back(std::move(m));
                break;
            }
            case ClsPatMol::Kind::Loop: {
                ClsMol m;
                m.kind = ClsMol::Kind::Loop;
                m.seq = instantiate_seq(p.seq, sigma);
                instantiate_mols(p.content, sigma, m.content);
                out.push_back(std::move(m));
                break;
            }
            case ClsPatMol::Kind::TermVar: {
                const ClsTerm& t = sigma.terms.at(p.var);
                out.insert(out.end(), t.mols.begin(), t.mols.end());
                break;
            }
        }
    }
}

} // namespace

ClsTerm apply_instantiation(const ClsPattern& pattern, const Instantiation& sigma) {
    ClsTerm t;
    instantiate_mols(pattern.mols, sigma, t.mols);
    return normalize(std::move(t));
}

} // namespace biorw
