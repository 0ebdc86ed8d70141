#pragma once

// Basis certification for a multidegree: the enumerated normal forms must be
// linearly independent (exact rank over the cyclotomic field), their count
// must match a dimension oracle computed from raw group elements without any
// rewriting machinery, and rewriting must carry every spanning word into
// their span while preserving its value on generic matrices.

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakid/rewrite.hpp"
#include "weakid/suites.hpp"

namespace weakid {

// Flattened evaluation of a 2x2 matrix with polynomial entries: a sparse
// vector keyed by (entry, monomial).
using EvalKey = std::pair<int, Mono>;
using EvalVec = std::map<EvalKey, CycNum>;

inline EvalVec flatten_mat(const Mat2& m) {
    EvalVec v;
    const MPoly* entries[4] = {&m.m11, &m.m12, &m.m21, &m.m22};
    for (int e = 0; e < 4; ++e)
        for (const auto& [mono, c] : entries[e]->terms()) v.emplace(EvalKey(e, mono), c);
    return v;
}

inline EvalVec eval_vector(const GPolynomial& p, const EvalContext& ctx) {
    return flatten_mat(evaluate(p, ctx));
}

inline EvalVec eval_vector(const GPolynomial& p, const GroupSpec& g) {
    return eval_vector(p, EvalContext{g, std::nullopt});
}

// Incremental sparse echelon over the cyclotomic field.  Rows are kept
// normalized and ordered by pivot key, so reducing a new vector in ascending
// pivot order is a single pass.
class SparseEchelon {
  public:
    bool insert(EvalVec v) {
        for (const auto& [piv, row] : rows_) {
            auto it = v.find(piv);
            if (it == v.end()) continue;
            CycNum f = it->second;
            for (const auto& [k, c] : row) {
                auto vt = v.find(k);
                if (vt == v.end()) {
                    v.emplace(k, -(f * c));
                } else {
                    vt->second = vt->second - f * c;
                    if (vt->second.is_zero()) v.erase(vt);
                }
            }
        }
        if (v.empty()) return false;
        EvalKey piv = v.begin()->first;
        CycNum d = v.begin()->second.inv();
        for (auto& [k, c] : v) c = d * c;
        rows_.emplace(piv, std::move(v));
        return true;
    }

    size_t rank() const { return rows_.size(); }

  private:
    std::map<EvalKey, EvalVec> rows_;
};

struct IndependenceReport {
    size_t rank;
    // When rank < rows: coefficients of a nontrivial vanishing combination.
    std::optional<std::vector<CycNum>> dependency;
};

namespace detail {

// Dense matrix from sparse rows over the union of their keys.
inline std::vector<std::vector<CycNum>> densify(const std::vector<EvalVec>& rows,
                                                unsigned N) {
    std::map<EvalKey, size_t> col;
    for (const auto& r : rows)
        for (const auto& [k, c] : r) col.emplace(k, 0);
    size_t idx = 0;
    for (auto& [k, i] : col) i = idx++;
    std::vector<std::vector<CycNum>> a(rows.size(),
                                       std::vector<CycNum>(idx, CycNum(N)));
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& [k, c] : rows[r]) a[r][col.at(k)] = c;
    return a;
}

// Fraction-free Bareiss elimination; returns the rank.  Each 2x2 update is
// divided by the previous pivot, which is exact over the field.
inline size_t bareiss_rank(std::vector<std::vector<CycNum>> a, unsigned N) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    CycNum prev = CycNum::from_rat(N, rat(1));
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        CycNum prev_inv = prev.inv();
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) * prev_inv;
            a[i][c] = CycNum(N);
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Gaussian elimination with an identity block riding along; the first row
// whose data part vanishes hands back the combination that kills it.
inline std::vector<CycNum> dependency_witness(std::vector<std::vector<CycNum>> a,
                                              unsigned N) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<std::vector<CycNum>> aug(rows, std::vector<CycNum>(rows, CycNum(N)));
    for (size_t i = 0; i < rows; ++i) aug[i][i] = CycNum::from_rat(N, rat(1));
    std::vector<std::pair<size_t, size_t>> pivots; // (column, row)
    for (size_t i = 0; i < rows; ++i) {
        for (const auto& [pc, pr] : pivots) {
            if (a[i][pc].is_zero()) continue;
            CycNum f = a[i][pc];
            for (size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] - f * a[pr][j];
            for (size_t j = 0; j < rows; ++j)
                aug[i][j] = aug[i][j] - f * aug[pr][j];
        }
        size_t lead = cols;
        for (size_t j = 0; j < cols; ++j)
            if (!a[i][j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == cols) return aug[i];
        CycNum d = a[i][lead].inv();
        for (size_t j = 0; j < cols; ++j) a[i][j] = d * a[i][j];
        for (size_t j = 0; j < rows; ++j) aug[i][j] = d * aug[i][j];
        pivots.emplace_back(lead, i);
        std::sort(pivots.begin(), pivots.end());
    }
    throw Error("dependency_witness: rows are independent");
}

} // namespace detail

inline IndependenceReport independence_check(const std::vector<EvalVec>& rows,
                                             unsigned N) {
    auto dense = detail::densify(rows, N);
    size_t rank = detail::bareiss_rank(dense, N);
    IndependenceReport rep{rank, std::nullopt};
    if (rank < rows.size()) rep.dependency = detail::dependency_witness(dense, N);
    return rep;
}

// Dimension of the multidegree component of the relatively free pair,
// computed from scratch: take a linear basis of the group image inside
// End(sl2), form every word of the multidegree in those letters, evaluate on
// generic matrices and count independent values.  No letters, rewriting or
// enumeration are involved, so this is an independent oracle for the basis
// count.
inline size_t quotient_dimension_oracle(const GroupSpec& g,
                                        const std::vector<unsigned>& md) {
    unsigned N = g.conductor;
    std::vector<Op3> ops;
    {
        detail::Echelon9 ech(9);
        for (const auto& e : group_elements(g))
            if (ech.insert(detail::op3_flat(e))) ops.push_back(e);
    }
    std::vector<unsigned> vars;
    for (size_t i = 0; i < md.size(); ++i) {
        if (md[i] == 0) throw Error("quotient_dimension_oracle: zero multiplicity");
        for (unsigned k = 0; k < md[i]; ++k)
            vars.push_back(static_cast<unsigned>(i + 1));
    }
    std::sort(vars.begin(), vars.end());
    SparseEchelon span;
    do {
        std::vector<size_t> pick(vars.size(), 0);
        for (;;) {
            Mat2 prod = mat_identity(N);
            for (size_t k = 0; k < vars.size(); ++k) {
                SL2Coords x = generic_coords(N, vars[k]);
                prod = mat_mul(prod, to_mat2(op3_apply(ops[pick[k]], x)));
            }
            span.insert(flatten_mat(prod));
            size_t k = 0;
            while (k < pick.size() && ++pick[k] == ops.size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == pick.size()) break;
        }
    } while (std::next_permutation(vars.begin(), vars.end()));
    return span.rank();
}

struct SpanningReport {
    bool ok;
    size_t words;
    std::string first_failure;
};

// Normalizes every word of the multidegree over the spanning alphabet and
// checks three things: each rewrite step preserves the value on generic
// matrices (memoized per segment), the normal form only uses basis words,
// and the end value matches the start value.
inline SpanningReport spanning_check(const RuleSet& rs,
                                     const std::vector<unsigned>& md,
                                     const std::vector<Word>& basis,
                                     size_t budget = kDefaultStepBudget) {
    const GroupSpec& g = rs.group();
    unsigned N = g.conductor;
    std::set<Word> bset(basis.begin(), basis.end());
    std::set<std::string> seen;
    SpanningReport rep{true, 0, ""};
    auto fail_note = [&](const std::string& what) {
        if (rep.ok) {
            rep.ok = false;
            rep.first_failure = what;
        }
    };
    StepObserver obs = [&](const RewriteStep& st) {
        Word seg(st.before.begin() + static_cast<long>(st.pos),
                 st.before.begin() + static_cast<long>(st.pos + st.len));
        std::string key = st.tag + "|" + word_str(seg);
        if (!seen.insert(key).second) return;
        GPolynomial lhs = GPolynomial::from_word(N, seg);
        GPolynomial rhs(N);
        for (const auto& [rc, rw] : st.rhs)
            rhs = rhs + rc * GPolynomial::from_word(N, rw);
        if (!is_zero_mat(evaluate(lhs, g) - evaluate(rhs, g)))
            fail_note("step " + st.tag + " changes the value of " + word_str(seg));
    };
    std::vector<unsigned> vars;
    for (size_t i = 0; i < md.size(); ++i) {
        if (md[i] == 0) throw Error("spanning_check: zero multiplicity");
        for (unsigned k = 0; k < md[i]; ++k)
            vars.push_back(static_cast<unsigned>(i + 1));
    }
    std::sort(vars.begin(), vars.end());
    do {
        std::vector<std::vector<Letter>> choices;
        choices.reserve(vars.size());
        for (unsigned v : vars) choices.push_back(rs.spanning_letters(v));
        std::vector<size_t> pick(vars.size(), 0);
        for (;;) {
            Word w;
            w.reserve(vars.size());
            for (size_t k = 0; k < vars.size(); ++k) w.push_back(choices[k][pick[k]]);
            GPolynomial p = GPolynomial::from_word(N, w);
            GPolynomial nf = rs.normalize(p, budget, obs);
            ++rep.words;
            for (const auto& [nw, c] : nf.terms())
                if (!bset.count(nw))
                    fail_note("normal form of " + word_str(w) +
                              " uses the non-basis word " + word_str(nw));
            if (!is_zero_mat(evaluate(nf, g) - evaluate(p, g)))
                fail_note("normalizing " + word_str(w) + " changed its value");
            size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == pick.size()) break;
        }
    } while (std::next_permutation(vars.begin(), vars.end()));
    return rep;
}

// Multidegrees certified up to a total degree: the partitions of each
// d <= bound, as non-increasing multiplicity vectors.
inline std::vector<std::vector<unsigned>> certified_multidegrees(unsigned bound) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned maxp) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned p = std::min(left, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    for (unsigned d = 1; d <= bound; ++d) rec(d, d);
    return out;
}

struct IdentityRecord {
    std::string tag;
    bool ok;
};

struct MultidegreeRecord {
    std::vector<unsigned> degree;
    size_t b_count;
    size_t rank;
    size_t oracle_dim;
    bool spanning_ok;

    bool ok() const {
        return b_count == rank && rank == oracle_dim && spanning_ok;
    }
};

struct Certificate {
    GroupSpec group;
    unsigned degree_bound;
    std::vector<IdentityRecord> identities;
    std::vector<MultidegreeRecord> multidegrees;
    bool pass;
    long runtime_ms;
};

struct CertifyOptions {
    size_t budget = kDefaultStepBudget;
    // Rule override for mutation experiments; the default is the group's own
    // rule system.
    std::optional<RuleSet> rules;
};

inline Certificate certify_basis(const GroupSpec& g, unsigned degree_bound,
                                 const CertifyOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    Certificate cert{g, degree_bound, {}, {}, true, 0};
    RuleSet rs = opt.rules ? *opt.rules : RuleSet::for_group(g);
    for (const auto& sname : default_suites(g))
        for (const auto& item : build_suite(sname, g)) {
            bool ok = is_weak_g_identity(item.poly, g);
            cert.identities.push_back({item.tag, ok});
            if (!ok) cert.pass = false;
        }
    for (const auto& md : certified_multidegrees(degree_bound)) {
        auto basis = rs.enumerate_basis(md);
        std::vector<EvalVec> rows;
        rows.reserve(basis.size());
        for (const auto& w : basis)
            rows.push_back(eval_vector(GPolynomial::from_word(g.conductor, w), g));
        auto ind = independence_check(rows, g.conductor);
        size_t dim = quotient_dimension_oracle(g, md);
        auto span = spanning_check(rs, md, basis, opt.budget);
        cert.multidegrees.push_back(
            MultidegreeRecord{md, basis.size(), ind.rank, dim, span.ok});
        if (!cert.multidegrees.back().ok()) {
            // Stop at the first failing multidegree; the verdict is settled.
            cert.pass = false;
            break;
        }
    }
    cert.runtime_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return cert;
}

inline std::string certificate_json(const Certificate& c, int indent = 2) {
    nlohmann::ordered_json j;
    j["group"] = c.group.str();
    j["conductor"] = c.group.conductor;
    j["degree_bound"] = c.degree_bound;
    j["identities"] = nlohmann::ordered_json::array();
    for (const auto& r : c.identities)
        j["identities"].push_back({{"tag", r.tag}, {"ok", r.ok}});
    j["multidegrees"] = nlohmann::ordered_json::array();
    for (const auto& m : c.multidegrees)
        j["multidegrees"].push_back({{"degree", m.degree},
                                     {"b_count", m.b_count},
                                     {"rank", m.rank},
                                     {"oracle_dim", m.oracle_dim},
                                     {"spanning_ok", m.spanning_ok}});
    j["verdict"] = c.pass ? "pass" : "fail";
    j["runtime_ms"] = c.runtime_ms;
    return j.dump(indent);
}

} // namespace weakid
