#pragma once
// Oriented rewriting of words in the operator letters.  Three systems, one
// per action shape: cyclic (e letters), dihedral (e and he letters), and the
// full matrix case (eps letters).  Rules are tried at the leftmost position
// first and, at a fixed position, in the listed order.  Every rule replaces a
// single segment by a sum of segments with strictly smaller words under the
// system's lexicographic measure, so rewriting always terminates.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "weakid/gpoly.hpp"

namespace weakid {

inline constexpr size_t kDefaultStepBudget = 100000;

struct RuleMatch {
    size_t len;
    std::vector<std::pair<CycNum, Word>> rhs; // segment replacements
};

struct RewriteStep {
    std::string tag;
    Word before; // the whole word being rewritten
    size_t pos;
    size_t len;
    std::vector<std::pair<CycNum, Word>> rhs;
};

using StepObserver = std::function<void(const RewriteStep&)>;

namespace detail {

inline bool is_e(const Letter& l) { return l.kind == LKind::E; }
inline bool is_he(const Letter& l) { return l.kind == LKind::HE; }
inline bool is_e0(const Letter& l) { return l.kind == LKind::E && l.i == 0; }
inline bool is_eh(const Letter& l) { return is_e(l) || is_he(l); }

// Inversions removed by swapping two values of a sequence: counts pairs
// (p < q, value_p > value_q).
template <class T>
long inversions(const std::vector<T>& v) {
    long inv = 0;
    for (size_t p = 0; p < v.size(); ++p)
        for (size_t q = p + 1; q < v.size(); ++q)
            if (v[p] > v[q]) ++inv;
    return inv;
}

} // namespace detail

class RuleSet {
  public:
    static RuleSet for_group(const GroupSpec& g) { return RuleSet(g); }

    const GroupSpec& group() const { return group_; }

    void disable(const std::string& tag) {
        bool known = false;
        for (const auto& r : rules_)
            if (r.tag == tag) known = true;
        if (!known) throw Error("disable: no rule tagged '" + tag + "'");
        disabled_.insert(tag);
    }

    std::vector<std::pair<std::string, std::string>> describe() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : rules_) out.emplace_back(r.tag, r.desc);
        return out;
    }

    GPolynomial normalize(const GPolynomial& p, size_t budget = kDefaultStepBudget,
                          const StepObserver& obs = {}) const {
        check_alphabet(p);
        GPolynomial cur = p;
        size_t steps = 0;
        for (;;) {
            const Word* hit_word = nullptr;
            size_t hit_pos = 0;
            const Rule* hit_rule = nullptr;
            std::optional<RuleMatch> hit;
            for (const auto& [w, c] : cur.terms()) {
                for (size_t pos = 0; pos < w.size() && !hit; ++pos) {
                    for (const auto& r : rules_) {
                        if (disabled_.count(r.tag)) continue;
                        auto m = r.match(w, pos);
                        if (m) {
                            hit_word = &w;
                            hit_pos = pos;
                            hit_rule = &r;
                            hit = std::move(m);
                            break;
                        }
                    }
                }
                if (hit) break;
            }
            if (!hit) return cur;
            if (++steps > budget)
                throw BudgetError("rewriting exceeded the step budget (" +
                                  std::to_string(budget) + ")");
            Word w = *hit_word;
            CycNum c = cur.terms().at(w);
            if (obs) obs(RewriteStep{hit_rule->tag, w, hit_pos, hit->len, hit->rhs});
            cur.add_term(w, -c);
            for (const auto& [rc, seg] : hit->rhs) {
                Word nw(w.begin(), w.begin() + static_cast<long>(hit_pos));
                nw.insert(nw.end(), seg.begin(), seg.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(hit_pos + hit->len),
                          w.end());
                cur.add_term(nw, c * rc);
            }
        }
    }

    bool is_normal(const GPolynomial& p) const {
        for (const auto& [w, c] : p.terms())
            if (!is_normal_word(w)) return false;
        return true;
    }

    bool is_normal_word(const Word& w) const {
        switch (sys_) {
            case Sys::Cyclic: return normal_cyclic(w);
            case Sys::Dihedral: return normal_dihedral(w);
            case Sys::Eps: return normal_eps(w);
        }
        return false;
    }

    std::vector<Word> enumerate_basis(const std::vector<unsigned>& md) const {
        for (unsigned m : md)
            if (m == 0) throw Error("enumerate_basis: zero multiplicity");
        std::vector<Word> out;
        switch (sys_) {
            case Sys::Cyclic:
                if (group_.n == 1)
                    enum_trivial(md, out);
                else
                    enum_cyclic(md, out);
                break;
            case Sys::Dihedral: enum_dihedral(md, out); break;
            case Sys::Eps: enum_eps(md, out); break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Lexicographic termination measure; every rewrite step replaces a word
    // by words that compare strictly smaller.
    std::vector<long> measure(const Word& w) const {
        switch (sys_) {
            case Sys::Cyclic: return measure_cyclic(w);
            case Sys::Dihedral: return measure_dihedral(w);
            case Sys::Eps: return measure_eps(w);
        }
        return {};
    }

    // Letters that span the image of the group algebra; every word in the
    // quotient is a combination of words over this alphabet.
    std::vector<Letter> canonical_letters(unsigned var) const {
        unsigned n = group_.n;
        switch (sys_) {
            case Sys::Cyclic:
                if (n == 1) return {make_raw("id", id_op_, var)};
                if (n == 2) return {make_e(n, 0, var), make_e(n, 1, var)};
                return {make_e(n, 0, var), make_e(n, 1, var), make_e(n, -1, var)};
            case Sys::Dihedral:
                return {make_e(n, 0, var), make_e(n, 1, var), make_e(n, -1, var),
                        make_he(n, 1, var), make_he(n, -1, var)};
            case Sys::Eps: {
                std::vector<Letter> out;
                for (int i = 1; i <= 3; ++i)
                    for (int j = 1; j <= 3; ++j) out.push_back(make_eps(i, j, var));
                return out;
            }
        }
        return {};
    }

    // The spanning alphabet: the canonical letters plus redundant ones (raw
    // group letters, he0, vanishing indices) so that a spanning check also
    // drives the expansion and annihilation rules.
    std::vector<Letter> spanning_letters(unsigned var) const {
        std::vector<Letter> out = canonical_letters(var);
        unsigned n = group_.n;
        if (sys_ == Sys::Cyclic && n == 1) return out;
        out.push_back(make_raw("id", id_op_, var));
        switch (sys_) {
            case Sys::Cyclic:
                out.push_back(make_raw("g", gen_op_, var));
                if (n >= 4) out.push_back(make_e(n, 2, var));
                break;
            case Sys::Dihedral:
                out.push_back(make_raw("g", gen_op_, var));
                out.push_back(make_raw("h", h_raw_, var));
                out.push_back(make_he(n, 0, var));
                if (n >= 4) {
                    out.push_back(make_e(n, 2, var));
                    out.push_back(make_he(n, 2, var));
                }
                break;
            case Sys::Eps: out.push_back(make_raw("gen1", gen_op_, var)); break;
        }
        return out;
    }

  private:
    enum class Sys { Cyclic, Dihedral, Eps };

    struct Rule {
        std::string tag;
        std::string desc;
        std::function<std::optional<RuleMatch>(const Word&, size_t)> match;
    };

    GroupSpec group_;
    Sys sys_;
    std::shared_ptr<const Op3> id_op_;
    std::shared_ptr<const Op3> gen_op_;
    std::shared_ptr<const Op3> h_raw_;
    std::vector<Rule> rules_;
    std::set<std::string> disabled_;

    explicit RuleSet(const GroupSpec& g) : group_(g) {
        id_op_ = std::make_shared<const Op3>(Op3::identity(g.conductor));
        switch (g.kind) {
            case GroupKind::Cyclic:
                sys_ = Sys::Cyclic;
                if (g.n == 1) {
                    build_trivial();
                } else {
                    gen_op_ = std::make_shared<const Op3>(g_op(g.conductor, g.n));
                    build_cyclic();
                }
                break;
            case GroupKind::Dihedral:
                sys_ = Sys::Dihedral;
                gen_op_ = std::make_shared<const Op3>(g_op(g.conductor, g.n));
                h_raw_ = std::make_shared<const Op3>(h_op(g.conductor));
                build_dihedral();
                break;
            default:
                sys_ = Sys::Eps;
                gen_op_ = std::make_shared<const Op3>(action_generators(g).front());
                build_eps();
                break;
        }
    }

    void check_alphabet(const GPolynomial& p) const {
        for (const auto& [w, c] : p.terms())
            for (const auto& l : w) {
                if (l.kind == LKind::RAW) continue;
                if (sys_ == Sys::Eps) {
                    if (l.kind != LKind::EPS)
                        throw GroupError("letter " + letter_str(l) +
                                         " is not in the eps alphabet");
                    continue;
                }
                if (l.kind == LKind::EPS)
                    throw GroupError("letter " + letter_str(l) +
                                     " needs one of the groups A4, S4, A5");
                if (l.kind == LKind::HE && sys_ != Sys::Dihedral)
                    throw GroupError("letter " + letter_str(l) + " needs a dihedral group");
                if (l.n != group_.n)
                    throw GroupError("letter " + letter_str(l) + " belongs to n=" +
                                     std::to_string(l.n) + ", group has n=" +
                                     std::to_string(group_.n));
            }
    }

    long neg_idx(long i) const { return mod_norm(-i, group_.n); }

    bool idx_in_range(long i) const {
        unsigned n = group_.n;
        return i == 0 || i == 1 || i == static_cast<long>(n) - 1;
    }

    static CycNum one_(unsigned N) { return CycNum::from_rat(N, rat(1)); }

    // ---- trivial group: every operator is the identity -------------------
    void build_trivial() {
        unsigned N = group_.conductor;
        auto id = id_op_;
        rules_.push_back(Rule{
            "expand", "any letter becomes the identity letter",
            [N, id](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (l.kind == LKind::RAW && l.raw_name == "id") return std::nullopt;
                return RuleMatch{1, {{one_(N), {make_raw("id", id, l.var)}}}};
            }});
    }

    // ---- cyclic system ----------------------------------------------------
    void build_cyclic() {
        unsigned N = group_.conductor;
        unsigned n = group_.n;

        rules_.push_back(Rule{
            "expand",
            "group letter g = g(0,0) e0 + g(2,2) e1 + g(1,1) e-1 (diagonal action)",
            [N, n](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (l.kind != LKind::RAW) return std::nullopt;
                const Op3& m = *l.raw_op;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (i != j && !m.at(i, j).is_zero())
                            throw Error("cyclic expansion needs a diagonal operator, got " +
                                        letter_str(l));
                RuleMatch r{1, {}};
                if (n == 2) {
                    if (m.at(1, 1) != m.at(2, 2))
                        throw Error("n=2 expansion needs matching eigenvalues, got " +
                                    letter_str(l));
                    r.rhs.push_back({m.at(0, 0), {make_e(n, 0, l.var)}});
                    r.rhs.push_back({m.at(2, 2), {make_e(n, 1, l.var)}});
                } else {
                    r.rhs.push_back({m.at(0, 0), {make_e(n, 0, l.var)}});
                    r.rhs.push_back({m.at(2, 2), {make_e(n, 1, l.var)}});
                    r.rhs.push_back({m.at(1, 1), {make_e(n, -1, l.var)}});
                }
                std::erase_if(r.rhs, [](const auto& t) { return t.first.is_zero(); });
                return r;
            }});

        rules_.push_back(Rule{
            "annihilate", "e_i = 0 when i is not 0, 1 or -1 mod n",
            [this](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (!detail::is_e(l) || idx_in_range(l.i)) return std::nullopt;
                return RuleMatch{1, {}};
            }});

        if (n >= 3)
            rules_.push_back(Rule{
                "L6(2)", "e_a(x) e_a(y) = 0",
                [](const Word& w, size_t p) -> std::optional<RuleMatch> {
                    if (p + 1 >= w.size()) return std::nullopt;
                    const Letter &a = w[p], &b = w[p + 1];
                    if (!detail::is_e(a) || !detail::is_e(b)) return std::nullopt;
                    if (a.i == 0 || a.i != b.i) return std::nullopt;
                    return RuleMatch{2, {}};
                }});

        rules_.push_back(Rule{
            "L6(3)", "e0 letters commute; sort their variables",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_e0(a) || !detail::is_e0(b) || a.var <= b.var)
                    return std::nullopt;
                return RuleMatch{2, {{one_(N), {b, a}}}};
            }});

        rules_.push_back(Rule{
            "L6(4)", "e_a(x) e_-a(y) e_a(z) is symmetric in x, z",
            [this, N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 2 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &m = w[p + 1], &b = w[p + 2];
                if (!detail::is_e(a) || !detail::is_e(m) || !detail::is_e(b))
                    return std::nullopt;
                if (a.i == 0 || b.i != a.i || m.i != neg_idx(a.i)) return std::nullopt;
                if (a.var <= b.var) return std::nullopt;
                Letter a2 = a, b2 = b;
                std::swap(a2.var, b2.var);
                return RuleMatch{3, {{one_(N), {a2, m, b2}}}};
            }});

        rules_.push_back(Rule{
            "L6(5)", "e_a(x) e0(y) = -e0(y) e_a(x) for a != 0",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_e(a) || a.i == 0 || !detail::is_e0(b)) return std::nullopt;
                return RuleMatch{2, {{-one_(N), {b, a}}}};
            }});
    }

    // ---- dihedral system --------------------------------------------------
    void build_dihedral() {
        unsigned N = group_.conductor;
        unsigned n = group_.n;

        rules_.push_back(Rule{
            "expand",
            "group letter m = m(0,0) e0 + m(2,2) e1 + m(1,1) e-1 + m(1,2) he1 + m(2,1) he-1",
            [N, n](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (l.kind != LKind::RAW) return std::nullopt;
                const Op3& m = *l.raw_op;
                for (int k : {1, 2})
                    if (!m.at(0, k).is_zero() || !m.at(k, 0).is_zero())
                        throw Error("dihedral expansion needs a block operator, got " +
                                    letter_str(l));
                RuleMatch r{1, {}};
                r.rhs.push_back({m.at(0, 0), {make_e(n, 0, l.var)}});
                r.rhs.push_back({m.at(2, 2), {make_e(n, 1, l.var)}});
                r.rhs.push_back({m.at(1, 1), {make_e(n, -1, l.var)}});
                r.rhs.push_back({m.at(1, 2), {make_he(n, 1, l.var)}});
                r.rhs.push_back({m.at(2, 1), {make_he(n, -1, l.var)}});
                std::erase_if(r.rhs, [](const auto& t) { return t.first.is_zero(); });
                return r;
            }});

        rules_.push_back(Rule{
            "annihilate", "e_i = he_i = 0 when i is not 0, 1 or -1 mod n",
            [this](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (!detail::is_eh(l) || idx_in_range(l.i)) return std::nullopt;
                return RuleMatch{1, {}};
            }});

        rules_.push_back(Rule{
            "L9(1)", "he0(x) = -e0(x)",
            [N, n](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (!detail::is_he(l) || l.i != 0) return std::nullopt;
                return RuleMatch{1, {{-one_(N), {make_e(n, 0, l.var)}}}};
            }});

        rules_.push_back(Rule{
            "L9(2)", "f(x) e0(y) = -e0(y) f(x) for f among e_a, he_a",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_eh(a) || a.i == 0 || !detail::is_e0(b)) return std::nullopt;
                return RuleMatch{2, {{-one_(N), {b, a}}}};
            }});

        rules_.push_back(Rule{
            "L9(4)", "e0 letters commute; sort their variables",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_e0(a) || !detail::is_e0(b) || a.var <= b.var)
                    return std::nullopt;
                return RuleMatch{2, {{one_(N), {b, a}}}};
            }});

        rules_.push_back(Rule{
            "L9(5)", "f(x) f(y) = 0 for f among e_a, he_a",
            [](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_eh(a) || a.i == 0) return std::nullopt;
                if (a.kind != b.kind || a.i != b.i) return std::nullopt;
                return RuleMatch{2, {}};
            }});

        rules_.push_back(Rule{
            "L9(6)", "e_a(x) he_-a(y) = 0 and he_a(x) e_-a(y) = 0",
            [this](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_eh(a) || !detail::is_eh(b)) return std::nullopt;
                if (a.i == 0 || b.i != neg_idx(a.i)) return std::nullopt;
                if (a.kind == b.kind) return std::nullopt;
                return RuleMatch{2, {}};
            }});

        rules_.push_back(Rule{
            "L9(7)", "f(x) m g(y) is symmetric in x, y when f, g share the index",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 2 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 2];
                if (!detail::is_eh(a) || !detail::is_eh(b)) return std::nullopt;
                if (a.i == 0 || b.i != a.i) return std::nullopt;
                if (a.var <= b.var) return std::nullopt;
                Letter a2 = a, b2 = b;
                std::swap(a2.var, b2.var);
                return RuleMatch{3, {{one_(N), {a2, w[p + 1], b2}}}};
            }});

        rules_.push_back(Rule{
            "L9(8)", "he_a(x) m e_-a(y) = e_-a(y) m he_a(x)",
            [this, N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 2 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 2];
                if (!detail::is_he(a) || a.i == 0) return std::nullopt;
                if (!detail::is_e(b) || b.i != neg_idx(a.i)) return std::nullopt;
                return RuleMatch{3, {{one_(N), {b, w[p + 1], a}}}};
            }});

        rules_.push_back(Rule{
            "L9(9)", "he_-a(x) he_a(y) = e_a(y) e_-a(x)",
            [this, N, n](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_he(a) || !detail::is_he(b)) return std::nullopt;
                if (a.i == 0 || b.i != neg_idx(a.i)) return std::nullopt;
                return RuleMatch{
                    2, {{one_(N), {make_e(n, b.i, b.var), make_e(n, a.i, a.var)}}}};
            }});

        rules_.push_back(Rule{
            "L9(10)", "e_a(x) he_a(y) and he_a(x) e_a(y) are symmetric in x, y",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (!detail::is_eh(a) || !detail::is_eh(b)) return std::nullopt;
                if (a.i == 0 || b.i != a.i || a.kind == b.kind) return std::nullopt;
                if (a.var <= b.var) return std::nullopt;
                Letter a2 = a, b2 = b;
                std::swap(a2.var, b2.var);
                return RuleMatch{2, {{one_(N), {a2, b2}}}};
            }});
    }

    // ---- eps system ---------------------------------------------------------
    void build_eps() {
        unsigned N = group_.conductor;

        rules_.push_back(Rule{
            "expand", "group letter m = sum of m(i,j) eps_ij",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                const Letter& l = w[p];
                if (l.kind != LKind::RAW) return std::nullopt;
                const Op3& m = *l.raw_op;
                RuleMatch r{1, {}};
                for (int i = 1; i <= 3; ++i)
                    for (int j = 1; j <= 3; ++j) {
                        CycNum c = m.at(i - 1, j - 1);
                        if (!c.is_zero()) r.rhs.push_back({c, {make_eps(i, j, l.var)}});
                    }
                return r;
            }});

        auto lexkey = [](const Letter& l) { return std::pair<int, unsigned>(l.ej, l.var); };

        rules_.push_back(Rule{
            "L13(2)", "row-1 letters commute; sort by (column, variable)",
            [N, lexkey](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei != 1 || b.ei != 1) return std::nullopt;
                if (!(lexkey(b) < lexkey(a))) return std::nullopt;
                return RuleMatch{2, {{one_(N), {b, a}}}};
            }});

        rules_.push_back(Rule{
            "L13(3)", "eps_i.(x) eps_1.(y) = -eps_1.(y) eps_i.(x) for i = 2, 3",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei < 2 || b.ei != 1) return std::nullopt;
                return RuleMatch{2, {{-one_(N), {b, a}}}};
            }});

        rules_.push_back(Rule{
            "L13(4)", "eps_ia(x) eps_jb(y) eps_ic(z) = eps_1a(x) eps_1b(y) eps_ic(z)",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 2 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1], &c = w[p + 2];
                if (a.ei < 2 || b.ei < 2 || a.ei == b.ei || c.ei != a.ei)
                    return std::nullopt;
                return RuleMatch{3,
                                 {{one_(N),
                                   {make_eps(1, a.ej, a.var), make_eps(1, b.ej, b.var), c}}}};
            }});

        rules_.push_back(Rule{
            "L13(5)", "eps_ia(x) eps_ib(y) = 0 for i = 2, 3",
            [](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei < 2 || b.ei != a.ei) return std::nullopt;
                return RuleMatch{2, {}};
            }});

        rules_.push_back(Rule{
            "L13(6)", "eps_3a(x) eps_2b(y) = -eps_2b(y) eps_3a(x) + eps_1a(x) eps_1b(y)",
            [N](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei != 3 || b.ei != 2) return std::nullopt;
                return RuleMatch{2,
                                 {{-one_(N), {b, a}},
                                  {one_(N),
                                   {make_eps(1, a.ej, a.var), make_eps(1, b.ej, b.var)}}}};
            }});

        rules_.push_back(Rule{
            "L13(7)", "eps_1a(x) eps_jb(y) = eps_1b(y) eps_ja(x) for j = 2, 3",
            [N, lexkey](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei != 1 || b.ei < 2) return std::nullopt;
                if (!(lexkey(b) < lexkey(a))) return std::nullopt;
                return RuleMatch{
                    2,
                    {{one_(N), {make_eps(1, b.ej, b.var), make_eps(b.ei, a.ej, a.var)}}}};
            }});

        rules_.push_back(Rule{
            "L13(8)", "eps_2a(x) eps_3b(y) = eps_2b(y) eps_3a(x)",
            [N, lexkey](const Word& w, size_t p) -> std::optional<RuleMatch> {
                if (p + 1 >= w.size()) return std::nullopt;
                const Letter &a = w[p], &b = w[p + 1];
                if (a.ei != 2 || b.ei != 3) return std::nullopt;
                if (!(lexkey(b) < lexkey(a))) return std::nullopt;
                return RuleMatch{
                    2, {{one_(N), {make_eps(2, b.ej, b.var), make_eps(3, a.ej, a.var)}}}};
            }});
    }

    // ---- normal form predicates (the basis-set clauses, written literally) --
    bool normal_cyclic(const Word& w) const {
        unsigned n = group_.n;
        if (n == 1) {
            for (const auto& l : w)
                if (l.kind != LKind::RAW || l.raw_name != "id") return false;
            return true;
        }
        size_t chain_start = 0;
        for (const auto& l : w) {
            if (!detail::is_e(l) || !idx_in_range(l.i)) return false;
        }
        while (chain_start < w.size() && detail::is_e0(w[chain_start])) ++chain_start;
        for (size_t p = 0; p + 1 < chain_start; ++p)
            if (w[p].var > w[p + 1].var) return false;
        for (size_t p = chain_start; p < w.size(); ++p) {
            if (detail::is_e0(w[p])) return false;
            if (n >= 3 && p + 1 < w.size() && w[p + 1].i != neg_idx(w[p].i)) return false;
            if (p + 2 < w.size() && w[p].var > w[p + 2].var) return false;
        }
        return true;
    }

    bool normal_dihedral(const Word& w) const {
        unsigned n = group_.n;
        for (const auto& l : w) {
            if (!detail::is_eh(l) || !idx_in_range(l.i)) return false;
            if (detail::is_he(l) && l.i == 0) return false;
        }
        size_t cs = 0;
        while (cs < w.size() && detail::is_e0(w[cs])) ++cs;
        for (size_t p = 0; p + 1 < cs; ++p)
            if (w[p].var > w[p + 1].var) return false;
        bool he1 = false, heN = false;
        for (size_t p = cs; p < w.size(); ++p) {
            const Letter& l = w[p];
            if (detail::is_e0(l)) return false;
            if (detail::is_he(l)) (l.i == 1 ? he1 : heN) = true;
            if (p + 1 < w.size()) {
                const Letter& m = w[p + 1];
                bool ok = detail::is_e(l)
                              ? (detail::is_e(m) && m.i == neg_idx(l.i)) ||
                                    (detail::is_he(m) && m.i == l.i)
                              : detail::is_e(m) && m.i == l.i;
                if (!ok) return false;
            }
        }
        if (he1 && heN) return false;
        for (size_t p = cs; p < w.size(); ++p)
            for (size_t q = p + 1; q < w.size(); ++q) {
                if (detail::is_he(w[p]) && detail::is_e(w[q]) &&
                    w[q].i == neg_idx(w[p].i))
                    return false; // an he_a may only follow every e_-a
                if (w[p].i == w[q].i && w[p].var > w[q].var) {
                    // same-family variables ascend along the word
                    bool between = false;
                    for (size_t t = p + 1; t < q; ++t)
                        if (w[t].i == w[p].i) between = true;
                    if (!between) return false;
                }
            }
        return true;
    }

    bool normal_eps(const Word& w) const {
        auto key = [](const Letter& l) { return std::pair<int, unsigned>(l.ej, l.var); };
        size_t u1 = 0;
        for (const auto& l : w)
            if (l.kind != LKind::EPS) return false;
        while (u1 < w.size() && w[u1].ei == 1) ++u1;
        for (size_t p = 0; p + 1 < u1; ++p)
            if (key(w[p + 1]) < key(w[p])) return false;
        size_t p = u1;
        if (p < w.size() && w[p].ei == 2) ++p;
        if (p < w.size() && w[p].ei == 3) ++p;
        if (p != w.size()) return false;
        for (size_t q = u1; q < w.size(); ++q)
            for (size_t t = 0; t < u1; ++t)
                if (key(w[q]) < key(w[t])) return false;
        if (w.size() - u1 == 2 && key(w[u1 + 1]) < key(w[u1])) return false;
        return true;
    }

    // ---- basis enumeration ---------------------------------------------------
    // Submultisets: visit every take with 0 <= take_v <= avail_v.
    static void each_submultiset(const std::vector<unsigned>& avail,
                                 const std::function<void(const std::vector<unsigned>&)>& f) {
        std::vector<unsigned> take(avail.size(), 0);
        for (;;) {
            f(take);
            size_t v = 0;
            while (v < avail.size() && take[v] == avail[v]) take[v++] = 0;
            if (v == avail.size()) return;
            ++take[v];
        }
    }

    // Splits of a multiset into a part of the given size and the rest.
    static void each_split(const std::vector<unsigned>& avail, unsigned size,
                           const std::function<void(const std::vector<unsigned>&)>& f) {
        each_submultiset(avail, [&](const std::vector<unsigned>& take) {
            unsigned total = 0;
            for (unsigned t : take) total += t;
            if (total == size) f(take);
        });
    }

    static std::vector<unsigned> sorted_vars(const std::vector<unsigned>& counts) {
        std::vector<unsigned> out;
        for (size_t v = 0; v < counts.size(); ++v)
            for (unsigned t = 0; t < counts[v]; ++t) out.push_back(static_cast<unsigned>(v + 1));
        return out;
    }

    void enum_trivial(const std::vector<unsigned>& md, std::vector<Word>& out) const {
        std::vector<unsigned> vars = sorted_vars(md);
        std::sort(vars.begin(), vars.end());
        do {
            Word w;
            for (unsigned v : vars) w.push_back(make_raw("id", id_op_, v));
            out.push_back(w);
        } while (std::next_permutation(vars.begin(), vars.end()));
    }

    void enum_cyclic(const std::vector<unsigned>& md, std::vector<Word>& out) const {
        unsigned n = group_.n;
        each_submultiset(md, [&](const std::vector<unsigned>& e0take) {
            std::vector<unsigned> rest(md.size());
            unsigned s = 0;
            for (size_t v = 0; v < md.size(); ++v) {
                rest[v] = md[v] - e0take[v];
                s += rest[v];
            }
            Word head;
            for (unsigned v : sorted_vars(e0take)) head.push_back(make_e(n, 0, v));
            if (s == 0) {
                out.push_back(head);
                return;
            }
            unsigned nA = (s + 1) / 2;
            std::vector<long> starts = n >= 3 ? std::vector<long>{1, -1}
                                              : std::vector<long>{1};
            for (long alpha : starts) {
                each_split(rest, nA, [&](const std::vector<unsigned>& atake) {
                    std::vector<unsigned> btake(md.size());
                    for (size_t v = 0; v < md.size(); ++v) btake[v] = rest[v] - atake[v];
                    std::vector<unsigned> A = sorted_vars(atake), B = sorted_vars(btake);
                    Word w = head;
                    size_t ia = 0, ib = 0;
                    for (unsigned t = 0; t < s; ++t) {
                        if (t % 2 == 0)
                            w.push_back(make_e(n, alpha, A[ia++]));
                        else
                            w.push_back(make_e(n, -alpha, B[ib++]));
                    }
                    out.push_back(w);
                });
            }
        });
    }

    void enum_dihedral(const std::vector<unsigned>& md, std::vector<Word>& out) const {
        unsigned n = group_.n;
        each_submultiset(md, [&](const std::vector<unsigned>& e0take) {
            std::vector<unsigned> rest(md.size());
            unsigned s = 0;
            for (size_t v = 0; v < md.size(); ++v) {
                rest[v] = md[v] - e0take[v];
                s += rest[v];
            }
            Word head;
            for (unsigned v : sorted_vars(e0take)) head.push_back(make_e(n, 0, v));
            if (s == 0) {
                out.push_back(head);
                return;
            }
            // chain = u1 (alternating e_a / e_-a) then u2 (he_b e_b he_b ...)
            auto emit = [&](unsigned s1, long alpha, long beta) {
                unsigned s2 = s - s1;
                // family-beta letters: the beta-class slice of u1 plus all of u2
                unsigned cb1 = 0;
                for (unsigned t = 0; t < s1; ++t)
                    if ((t % 2 == 0 ? alpha : mod_norm(-alpha, n)) == beta) ++cb1;
                each_split(rest, cb1 + s2, [&](const std::vector<unsigned>& ftake) {
                    std::vector<unsigned> gtake(md.size());
                    for (size_t v = 0; v < md.size(); ++v) gtake[v] = rest[v] - ftake[v];
                    std::vector<unsigned> F = sorted_vars(ftake), G = sorted_vars(gtake);
                    Word w = head;
                    size_t fi = 0, gi = 0;
                    for (unsigned t = 0; t < s1; ++t) {
                        long idx = t % 2 == 0 ? alpha : mod_norm(-alpha, n);
                        w.push_back(make_e(n, idx, idx == beta ? F[fi++] : G[gi++]));
                    }
                    for (unsigned t = 0; t < s2; ++t)
                        w.push_back(t % 2 == 0 ? make_he(n, beta, F[fi++])
                                               : make_e(n, beta, F[fi++]));
                    out.push_back(w);
                });
            };
            for (long beta : {1L, static_cast<long>(n) - 1}) emit(0, beta, beta);
            for (unsigned s1 = 1; s1 <= s; ++s1)
                for (long alpha : {1L, static_cast<long>(n) - 1}) {
                    long beta = s1 % 2 == 1 ? alpha : mod_norm(-alpha, n);
                    emit(s1, alpha, beta);
                }
        });
    }

    void enum_eps(const std::vector<unsigned>& md, std::vector<Word>& out) const {
        struct Tail {
            int row, col;
            unsigned var;
        };
        auto emit_with_u2 = [&](const std::vector<unsigned>& rest,
                                const std::vector<Tail>& u2) {
            // u1: distribute every remaining letter over columns 1..3
            std::vector<std::vector<unsigned>> percol(3, std::vector<unsigned>(rest.size(), 0));
            std::function<void(size_t)> go = [&](size_t v) {
                if (v == rest.size()) {
                    std::vector<std::pair<int, unsigned>> pairs;
                    for (int col = 0; col < 3; ++col)
                        for (size_t vv = 0; vv < rest.size(); ++vv)
                            for (unsigned t = 0; t < percol[static_cast<size_t>(col)][vv]; ++t)
                                pairs.emplace_back(col + 1, static_cast<unsigned>(vv + 1));
                    std::sort(pairs.begin(), pairs.end());
                    if (!u2.empty() && !pairs.empty() &&
                        std::pair<int, unsigned>(u2.front().col, u2.front().var) < pairs.back())
                        return;
                    Word w;
                    for (auto& [col, var] : pairs) w.push_back(make_eps(1, col, var));
                    for (auto& t : u2) w.push_back(make_eps(t.row, t.col, t.var));
                    out.push_back(w);
                    return;
                }
                for (unsigned c1 = 0; c1 <= rest[v]; ++c1)
                    for (unsigned c2 = 0; c1 + c2 <= rest[v]; ++c2) {
                        percol[0][v] = c1;
                        percol[1][v] = c2;
                        percol[2][v] = rest[v] - c1 - c2;
                        go(v + 1);
                    }
            };
            go(0);
        };

        // u2 alternatives: empty, one row-2 letter, one row-3 letter, or both
        emit_with_u2(md, {});
        for (int row : {2, 3})
            for (size_t a = 0; a < md.size(); ++a) {
                if (md[a] == 0) continue;
                std::vector<unsigned> rest = md;
                --rest[a];
                for (int i = 1; i <= 3; ++i) {
                    Tail first{row, i, static_cast<unsigned>(a + 1)};
                    emit_with_u2(rest, {first});
                    if (row != 2) continue;
                    for (size_t b = 0; b < md.size(); ++b) {
                        if (rest[b] == 0) continue;
                        std::vector<unsigned> rest2 = rest;
                        --rest2[b];
                        for (int j = 1; j <= 3; ++j) {
                            Tail second{3, j, static_cast<unsigned>(b + 1)};
                            if (std::pair(j, second.var) < std::pair(i, first.var)) continue;
                            emit_with_u2(rest2, {first, second});
                        }
                    }
                }
            }
    }

    // ---- measures -------------------------------------------------------------
    std::vector<long> measure_cyclic(const Word& w) const {
        unsigned n = group_.n;
        long raw = 0, m3 = 0;
        std::vector<unsigned> e0pay;
        std::set<long> classes;
        if (n >= 2) {
            classes.insert(1);
            classes.insert(static_cast<long>(n) - 1);
        }
        for (size_t p = 0; p < w.size(); ++p) {
            if (n == 1) {
                if (w[p].kind != LKind::RAW || w[p].raw_name != "id") ++raw;
                continue;
            }
            if (w[p].kind == LKind::RAW) ++raw;
            if (detail::is_e0(w[p]))
                for (size_t q = 0; q < p; ++q)
                    if (!detail::is_e0(w[q])) ++m3;
            if (detail::is_e0(w[p])) e0pay.push_back(w[p].var);
        }
        long m6 = 0;
        for (long cls : classes) {
            std::vector<unsigned> pay;
            for (const auto& l : w)
                if (detail::is_e(l) && l.i == cls) pay.push_back(l.var);
            m6 += detail::inversions(pay);
        }
        return {raw, m3, detail::inversions(e0pay), m6};
    }

    std::vector<long> measure_dihedral(const Word& w) const {
        unsigned n = group_.n;
        long raw = 0, m2 = 0, m4 = 0, m3 = 0;
        std::vector<unsigned> e0pay;
        for (size_t p = 0; p < w.size(); ++p) {
            if (w[p].kind == LKind::RAW) ++raw;
            if (detail::is_he(w[p])) ++m2;
            if (detail::is_e0(w[p])) {
                e0pay.push_back(w[p].var);
                for (size_t q = 0; q < p; ++q)
                    if (!detail::is_e0(w[q])) ++m3;
            }
            for (size_t q = p + 1; q < w.size(); ++q)
                if (detail::is_he(w[p]) && detail::is_e(w[q]) && w[p].i != 0 &&
                    w[q].i == neg_idx(w[p].i))
                    ++m4;
        }
        long m6 = 0;
        for (long cls : {1L, static_cast<long>(n) - 1}) {
            std::vector<unsigned> pay;
            for (const auto& l : w)
                if (detail::is_eh(l) && l.i == cls) pay.push_back(l.var);
            m6 += detail::inversions(pay);
        }
        return {raw, m2, m4, m3, detail::inversions(e0pay), m6};
    }

    std::vector<long> measure_eps(const Word& w) const {
        long raw = 0, m2 = 0, m3 = 0, m4 = 0;
        std::vector<std::pair<int, unsigned>> vals;
        for (size_t p = 0; p < w.size(); ++p) {
            if (w[p].kind == LKind::RAW) {
                ++raw;
                continue;
            }
            if (w[p].ei >= 2) ++m2;
            vals.emplace_back(w[p].ej, w[p].var);
            for (size_t q = p + 1; q < w.size(); ++q) {
                if (w[q].kind == LKind::RAW) continue;
                if (w[p].ei >= 2 && w[q].ei == 1) ++m3;
                if (w[p].ei == 3 && w[q].ei == 2) ++m4;
            }
        }
        return {raw, m2, m3, m4, detail::inversions(vals)};
    }
};

} // namespace weakid
