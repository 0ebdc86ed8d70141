#pragma once

// Command line front end.  Exit codes: 0 success, 1 a checked property is
// false, 2 usage or parse errors, 3 internal errors, 4 step budget exceeded.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakid/certify.hpp"
#include "weakid/parse.hpp"

namespace weakid {

// Default certification bound: degree 4 stays cheap for small cyclic groups,
// everything else gets 3.
inline unsigned default_degree_bound(const GroupSpec& g) {
    // Zn:1 keeps no projection structure; past degree 2 the ordinary weak
    // identities of the pair shrink the quotient below the word count
    if (g.kind == GroupKind::Cyclic) return g.n == 1 ? 2 : (g.n <= 6 ? 4 : 3);
    return 3;
}

namespace detail {

inline std::vector<unsigned> parse_multidegree(const std::string& s) {
    std::vector<unsigned> md;
    size_t i = 0;
    for (;;) {
        size_t j = i;
        unsigned long v = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
            v = v * 10 + static_cast<unsigned long>(s[j] - '0');
            if (v > 1000000) throw ParseError("multidegree entry too large", j);
            ++j;
        }
        if (j == i) throw ParseError("expected a number in the multidegree", i);
        if (v == 0) throw ParseError("multidegree entries must be positive", i);
        md.push_back(static_cast<unsigned>(v));
        if (j == s.size()) break;
        if (s[j] != ',') throw ParseError("expected ',' in the multidegree", j);
        i = j + 1;
    }
    return md;
}

inline std::string md_str(const std::vector<unsigned>& md) {
    std::string s;
    for (size_t i = 0; i < md.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(md[i]);
    }
    return s;
}

struct VerifyResult {
    std::string tag;
    bool ok;
};

inline int report_verify(const std::vector<VerifyResult>& results,
                         const GroupSpec& g, const std::string& format,
                         std::ostream& out) {
    size_t failed = 0;
    for (const auto& r : results)
        if (!r.ok) ++failed;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["group"] = g.str();
        j["items"] = nlohmann::ordered_json::array();
        for (const auto& r : results)
            j["items"].push_back({{"tag", r.tag}, {"ok", r.ok}});
        j["verdict"] = failed == 0 ? "pass" : "fail";
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : results)
            out << (r.ok ? "ok   " : "FAIL ") << r.tag << "\n";
        out << results.size() << " checked, ";
        if (failed == 0)
            out << "all hold\n";
        else
            out << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

} // namespace detail

inline int run_weakid(std::vector<std::string> args, std::ostream& out,
                      std::ostream& err) {
    CLI::App app{"weak G-identity checker for the pair (M2, sl2)"};
    app.name("weakid");
    app.require_subcommand(1);

    std::string group_str;
    std::string suite;
    std::vector<std::string> exprs;
    std::string expr;
    std::string mdeg;
    std::string vformat = "text";
    std::string cformat = "json";
    unsigned degree = 0;
    size_t budget = kDefaultStepBudget;
    unsigned seed = 0;
    bool conj_random = false;

    auto add_group = [&](CLI::App* sub) {
        sub->add_option("-g,--group", group_str, "group: Zn:<n>, Dn:<n>, A4, S4, A5")
            ->required();
    };
    auto fmt_check = CLI::IsMember({"text", "json"});

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "check that identities vanish on generic matrices");
    add_group(cmd_verify);
    cmd_verify->add_option("--suite", suite,
                           "named suite: lemma6, lemma9, lemma13, z2, prop6-graded")
        ->check(CLI::IsMember(suite_names()));
    cmd_verify->add_option("exprs", exprs, "expressions to check");
    cmd_verify->add_option("--format", vformat, "output format")->check(fmt_check);
    cmd_verify->add_flag("--conjugate-random", conj_random,
                         "conjugate the action by a random invertible matrix over Q(i)");
    cmd_verify->add_option("--seed", seed, "random seed for --conjugate-random");

    CLI::App* cmd_normalize =
        app.add_subcommand("normalize", "rewrite an expression to its normal form");
    add_group(cmd_normalize);
    cmd_normalize->add_option("expr", expr, "expression to normalize")->required();
    cmd_normalize->add_option("--format", vformat, "output format")->check(fmt_check);
    cmd_normalize->add_option("--step-budget", budget, "rewrite step budget");

    CLI::App* cmd_enumerate =
        app.add_subcommand("enumerate", "list the basis words of a multidegree");
    add_group(cmd_enumerate);
    cmd_enumerate
        ->add_option("-m,--multidegree", mdeg, "comma separated multiplicities, e.g. 2,1")
        ->required();
    cmd_enumerate->add_option("--format", vformat, "output format")->check(fmt_check);

    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle", "multidegree dimension computed from raw group elements");
    add_group(cmd_oracle);
    cmd_oracle
        ->add_option("-m,--multidegree", mdeg, "comma separated multiplicities, e.g. 2,1")
        ->required();
    cmd_oracle->add_option("--format", vformat, "output format")->check(fmt_check);

    CLI::App* cmd_certify =
        app.add_subcommand("certify", "certify the normal form basis up to a degree bound");
    add_group(cmd_certify);
    CLI::Option* degree_opt = cmd_certify->add_option(
        "-d,--degree", degree, "degree bound (default depends on the group)");
    cmd_certify->add_option("--format", cformat, "output format")->check(fmt_check);
    cmd_certify->add_option("--step-budget", budget, "rewrite step budget");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        GroupSpec g = parse_group(group_str);

        if (cmd_verify->parsed()) {
            std::optional<Op3> conj;
            if (conj_random) {
                unsigned M = std::lcm(g.conductor, 4u);
                g = with_conductor(g, M);
                std::minstd_rand rng(seed);
                conj = adjoint_of_pgl2(random_invertible_c22(M, rng));
            }
            EvalContext ctx{g, conj};
            std::vector<detail::VerifyResult> results;
            for (const auto& e : exprs)
                results.push_back({e, is_weak_g_identity(parse_gpoly(e, g), ctx)});
            std::vector<std::string> suite_list;
            if (!suite.empty())
                suite_list.push_back(suite);
            else if (exprs.empty())
                suite_list = default_suites(g);
            for (const auto& sname : suite_list)
                for (const auto& item : build_suite(sname, g))
                    results.push_back({item.tag, is_weak_g_identity(item.poly, ctx)});
            return detail::report_verify(results, g, vformat, out);
        }

        if (cmd_normalize->parsed()) {
            GPolynomial p = parse_gpoly(expr, g);
            RuleSet rs = RuleSet::for_group(g);
            GPolynomial nf = rs.normalize(p, budget);
            if (vformat == "json") {
                nlohmann::ordered_json j;
                j["group"] = g.str();
                j["input"] = expr;
                j["normal_form"] = nf.str();
                out << j.dump(2) << "\n";
            } else {
                out << nf.str() << "\n";
            }
            return 0;
        }

        if (cmd_enumerate->parsed()) {
            auto md = detail::parse_multidegree(mdeg);
            RuleSet rs = RuleSet::for_group(g);
            auto basis = rs.enumerate_basis(md);
            if (vformat == "json") {
                nlohmann::ordered_json j;
                j["group"] = g.str();
                j["multidegree"] = md;
                j["count"] = basis.size();
                j["words"] = nlohmann::ordered_json::array();
                for (const auto& w : basis) j["words"].push_back(word_str(w));
                out << j.dump(2) << "\n";
            } else {
                for (const auto& w : basis) out << word_str(w) << "\n";
            }
            return 0;
        }

        if (cmd_oracle->parsed()) {
            auto md = detail::parse_multidegree(mdeg);
            size_t dim = quotient_dimension_oracle(g, md);
            if (vformat == "json") {
                nlohmann::ordered_json j;
                j["group"] = g.str();
                j["multidegree"] = md;
                j["dimension"] = dim;
                out << j.dump(2) << "\n";
            } else {
                out << dim << "\n";
            }
            return 0;
        }

        if (cmd_certify->parsed()) {
            unsigned bound = degree_opt->count() ? degree : default_degree_bound(g);
            CertifyOptions opt;
            opt.budget = budget;
            Certificate cert = certify_basis(g, bound, opt);
            if (cformat == "json") {
                out << certificate_json(cert) << "\n";
            } else {
                out << "group " << g.str() << " (conductor " << g.conductor
                    << "), degree bound " << bound << "\n";
                size_t bad = 0;
                for (const auto& r : cert.identities) {
                    if (!r.ok) {
                        ++bad;
                        out << "identity FAIL: " << r.tag << "\n";
                    }
                }
                out << "identities: " << cert.identities.size() << " checked, "
                    << (bad ? std::to_string(bad) + " failed" : "all hold") << "\n";
                for (const auto& m : cert.multidegrees)
                    out << "  (" << detail::md_str(m.degree) << "): b_count=" << m.b_count
                        << " rank=" << m.rank << " oracle_dim=" << m.oracle_dim
                        << " spanning=" << (m.spanning_ok ? "ok" : "FAIL") << "\n";
                out << "verdict: " << (cert.pass ? "pass" : "fail") << " ("
                    << cert.runtime_ms << " ms)\n";
            }
            return cert.pass ? 0 : 1;
        }

        err << "error: no subcommand\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GroupError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace weakid
