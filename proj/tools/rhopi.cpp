// rhopi: command-line front end for the ρ/π toolkit.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhopi/encoder.hpp"
#include "rhopi/equiv.hpp"
#include "rhopi/harness.hpp"
#include "rhopi/pi_term.hpp"
#include "rhopi/rho_reduce.hpp"
#include "rhopi/rho_term.hpp"
#include "rhopi/syntax.hpp"

using namespace rhopi;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A term given inline, as `-` for stdin, or through --file.
struct TermArg {
    std::string text;
    std::string file;

    std::string read() const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw UsageError("cannot read " + file);
            return {std::istreambuf_iterator<char>(in), {}};
        }
        if (text == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
        if (text.empty()) throw UsageError("missing term");
        return text;
    }
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

rho::NameSet rho_names(const std::string& list) {
    std::vector<rho::Name> out;
    for (const auto& s : split(list)) out.push_back(syntax::parse_rho_name(s));
    return rho::make_name_set(std::move(out));
}

pi::AtomSet pi_atoms(const std::string& list) {
    auto v = split(list);
    return {v.begin(), v.end()};
}

void add_bounds(CLI::App* cmd, Bounds& b) {
    cmd->add_option("--max-states", b.max_states, "state budget")->capture_default_str();
    cmd->add_option("--max-depth", b.max_depth, "depth budget")->capture_default_str();
}

int print_report(const harness::Report& r, bool json) {
    if (json) {
        std::cout << r.to_json() << "\n";
    } else {
        for (const auto& c : r.checks) {
            std::cout << harness::to_string(c.verdict) << "  " << c.label;
            if (c.verdict != harness::Outcome::Pass && !c.evidence.empty()) std::cout << "  [" << c.evidence << "]";
            std::cout << "\n";
        }
        std::cout << r.name << ": " << r.count(harness::Outcome::Pass) << " pass, "
                  << r.count(harness::Outcome::Fail) << " fail, " << r.count(harness::Outcome::Unknown)
                  << " unknown\n";
    }
    return r.count(harness::Outcome::Fail) ? kFail : kOk;
}

std::string barb_string(const rho::Barb& b) {
    return std::string(b.dir == BarbDir::Out ? "out " : "in ") + syntax::print(b.name);
}
std::string barb_string(const pi::Barb& b) { return std::string(b.dir == BarbDir::Out ? "out " : "in ") + b.name; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rhopi: reflective higher-order calculus toolkit"};
    app.require_subcommand(1);

    bool pi_mode = false;
    bool json = false;
    Bounds bounds;
    TermArg a, b;
    std::string restrict_list;
    std::function<int()> action;

    auto term_cmd = [&](const char* name, const char* help, bool two_terms = false) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("term", a.text, two_terms ? "first term" : "term text, or - for stdin");
        if (two_terms) cmd->add_option("other", b.text, "second term");
        cmd->add_option("--file", a.file, "read the term from a file");
        cmd->add_flag("--pi", pi_mode, "terms are π-calculus terms");
        return cmd;
    };

    // parse
    auto* parse = term_cmd("parse", "parse a term and print its canonical form");
    parse->callback([&] {
        action = [&] {
            auto text = a.read();
            if (pi_mode) std::cout << syntax::print(pi::pi_canon(syntax::parse_pi(text))) << "\n";
            else std::cout << syntax::print(rho::canon_proc(syntax::parse_rho(text))) << "\n";
            return kOk;
        };
    });

    // nameq
    auto* nameq = app.add_subcommand("nameq", "name equivalence; exit 1 when the names differ");
    nameq->add_option("x", a.text)->required();
    nameq->add_option("y", b.text)->required();
    nameq->callback([&] {
        action = [&] {
            bool eq = rho::name_eq(syntax::parse_rho_name(a.text), syntax::parse_rho_name(b.text));
            std::cout << (eq ? "true" : "false") << "\n";
            return eq ? kOk : kFail;
        };
    });

    // structeq
    auto* structeq = term_cmd("structeq", "structural congruence; exit 1 when the terms differ", true);
    structeq->callback([&] {
        action = [&] {
            if (b.text.empty()) throw UsageError("structeq needs two terms");
            bool eq = pi_mode ? pi::pi_struct_eq(syntax::parse_pi(a.read()), syntax::parse_pi(b.text))
                              : rho::struct_eq(syntax::parse_rho(a.read()), syntax::parse_rho(b.text));
            std::cout << (eq ? "true" : "false") << "\n";
            return eq ? kOk : kFail;
        };
    });

    // qdepth
    auto* qdepth = app.add_subcommand("qdepth", "quote depth of a name");
    qdepth->add_option("name", a.text)->required();
    qdepth->callback([&] {
        action = [&] {
            std::cout << rho::quote_depth(syntax::parse_rho_name(a.text)) << "\n";
            return kOk;
        };
    });

    // reduce
    std::size_t steps = 1;
    bool all = false;
    auto* reduce = term_cmd("reduce", "follow the first reduct for a number of steps");
    reduce->add_option("--steps", steps, "number of steps")->capture_default_str();
    reduce->add_flag("--all", all, "print every one-step reduct instead");
    reduce->callback([&] {
        action = [&] {
            auto text = a.read();
            if (pi_mode) {
                auto t = pi::pi_canon(syntax::parse_pi(text));
                if (all) {
                    for (const auto& s : pi::pi_step(t)) std::cout << syntax::print(s) << "\n";
                    return kOk;
                }
                std::cout << syntax::print(t) << "\n";
                for (std::size_t i = 0; i < steps; ++i) {
                    auto next = pi::pi_step(t);
                    if (next.empty()) break;
                    t = next.front();
                    std::cout << "-> " << syntax::print(t) << "\n";
                }
            } else {
                auto t = rho::canon_proc(syntax::parse_rho(text));
                if (all) {
                    for (const auto& s : rho::step(t)) std::cout << syntax::print(s) << "\n";
                    return kOk;
                }
                std::cout << syntax::print(t) << "\n";
                for (std::size_t i = 0; i < steps; ++i) {
                    auto next = rho::step(t);
                    if (next.empty()) break;
                    t = next.front();
                    std::cout << "-> " << syntax::print(t) << "\n";
                }
            }
            return kOk;
        };
    });

    // trace
    auto* trace = term_cmd("trace", "explore the reduction graph");
    trace->add_flag("--json", json, "one JSON object per state");
    add_bounds(trace, bounds);
    trace->callback([&] {
        action = [&] {
            auto text = a.read();
            auto emit = [&](const auto& lts) {
                if (json) {
                    std::cout << syntax::lts_jsonl(lts);
                } else {
                    for (std::size_t i = 0; i < lts.states.size(); ++i) {
                        std::cout << i << " [depth " << lts.depth[i] << "] " << syntax::print(lts.states[i]);
                        if (!lts.edges[i].empty()) {
                            std::cout << " ->";
                            for (auto t : lts.edges[i]) std::cout << " " << t;
                        }
                        std::cout << "\n";
                    }
                    std::cout << lts.states.size() << " states" << (lts.truncated ? " (truncated)" : "") << "\n";
                }
            };
            if (pi_mode) emit(pi::pi_explore(syntax::parse_pi(text), bounds));
            else emit(rho::explore(syntax::parse_rho(text), bounds));
            return kOk;
        };
    });

    // barbs
    bool weak = false;
    auto* barbs = term_cmd("barbs", "barbs restricted to a set of names");
    barbs->add_option("--restrict", restrict_list, "comma-separated names")->required();
    barbs->add_flag("--weak", weak, "report weak barbs (reachable within bounds)");
    add_bounds(barbs, bounds);
    barbs->callback([&] {
        action = [&] {
            auto text = a.read();
            if (pi_mode) {
                auto t = pi::pi_canon(syntax::parse_pi(text));
                auto rs = pi_atoms(restrict_list);
                if (!weak) {
                    for (const auto& x : pi::pi_barbs(t, rs)) std::cout << barb_string(x) << "\n";
                    return kOk;
                }
                for (const auto& x : rs)
                    for (BarbDir d : {BarbDir::Out, BarbDir::In}) {
                        pi::Barb bb{d, x};
                        std::cout << barb_string(bb) << ": " << to_string(pi::pi_weak_barb(t, rs, bb, bounds)) << "\n";
                    }
            } else {
                auto t = rho::canon_proc(syntax::parse_rho(text));
                auto rs = rho_names(restrict_list);
                if (!weak) {
                    for (const auto& x : rho::barbs(t, rs)) std::cout << barb_string(x) << "\n";
                    return kOk;
                }
                for (const auto& x : rs)
                    for (BarbDir d : {BarbDir::Out, BarbDir::In}) {
                        rho::Barb bb{d, x};
                        std::cout << barb_string(bb) << ": " << to_string(rho::weak_barb(t, rs, bb, bounds)) << "\n";
                    }
            }
            return kOk;
        };
    });

    // encode
    std::string scheme = "ns";
    bool manifest = false, raw = false, with_server = false;
    auto* encode = app.add_subcommand("encode", "translate a π term into the ρ-calculus");
    encode->add_option("term", a.text, "π term text, or - for stdin");
    encode->add_option("--file", a.file, "read the term from a file");
    encode->add_option("--scheme", scheme, "ns (name server) or mr (legacy)")
        ->check(CLI::IsMember({"ns", "mr"}))
        ->capture_default_str();
    encode->add_flag("--manifest", manifest, "also print the parameters and renaming as JSON");
    encode->add_flag("--raw", raw, "print names as quoted processes instead of aliases");
    encode->add_flag("--server", with_server, "ns: include the name server in the output");
    encode->callback([&] {
        action = [&] {
            auto src = syntax::parse_pi(a.read());
            if (scheme == "mr") {
                auto phi = enc::RenamingPolicy::for_term(src);
                auto ps = enc::default_legacy_params(src, phi);
                auto t = enc::encode_mr(src, ps, phi);
                syntax::Aliases al;
                if (!raw) {
                    al = syntax::aliases_for(phi);
                    al.emplace(rho::canon_name(ps.n), "n");
                    al.emplace(rho::canon_name(ps.p), "p");
                }
                std::cout << syntax::print(t, al) << "\n";
                if (manifest) std::cout << syntax::manifest_json(ps, phi, raw) << "\n";
            } else {
                auto e = enc::encode_ns(src);
                syntax::Aliases al = raw ? syntax::Aliases{} : syntax::aliases_for(e);
                std::cout << syntax::print(with_server ? e.term : e.translation, al) << "\n";
                if (manifest) std::cout << syntax::manifest_json(e, raw) << "\n";
            }
            return kOk;
        };
    });

    // bisim
    auto* bisim = term_cmd("bisim", "restricted barbed bisimilarity; exit 1 when not bisimilar", true);
    bisim->add_flag("--weak", weak, "weak bisimilarity");
    bisim->add_option("--restrict", restrict_list, "comma-separated names")->required();
    bisim->add_flag("--json", json, "print the verdict as JSON");
    add_bounds(bisim, bounds);
    bisim->callback([&] {
        action = [&] {
            if (b.text.empty()) throw UsageError("bisim needs two terms");
            auto mode = weak ? equiv::Mode::Weak : equiv::Mode::Strong;
            equiv::BisimVerdict v =
                pi_mode ? equiv::barbed_bisim(syntax::parse_pi(a.read()), syntax::parse_pi(b.text),
                                              pi_atoms(restrict_list), mode, bounds)
                        : equiv::barbed_bisim(syntax::parse_rho(a.read()), syntax::parse_rho(b.text),
                                              rho_names(restrict_list), mode, bounds);
            if (json) {
                nlohmann::json j;
                j["verdict"] = equiv::to_string(v.result);
                j["states"] = {v.left_states, v.right_states};
                j["truncated"] = {v.left_truncated, v.right_truncated};
                j["bounds"] = {{"max_states", v.bounds_used.max_states}, {"max_depth", v.bounds_used.max_depth}};
                if (v.witness)
                    j["witness"] = {{"reason", v.witness->reason},
                                    {"left", v.witness->left_trace},
                                    {"right", v.witness->right_trace}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << equiv::to_string(v.result) << " (" << v.left_states << " / " << v.right_states
                          << " states)\n";
                if (v.witness) {
                    std::cout << "witness: " << v.witness->reason << "\n";
                    for (const auto& s : v.witness->left_trace) std::cout << "  left  " << s << "\n";
                    for (const auto& s : v.witness->right_trace) std::cout << "  right " << s << "\n";
                }
            }
            return v.result == equiv::Verdict::NotBisimilar ? kFail : kOk;
        };
    });

    // diverge
    auto* diverge = term_cmd("diverge", "probe for an infinite reduction sequence");
    add_bounds(diverge, bounds);
    diverge->callback([&] {
        action = [&] {
            auto text = a.read();
            auto d = pi_mode ? equiv::divergence_probe(syntax::parse_pi(text), bounds)
                             : equiv::divergence_probe(syntax::parse_rho(text), bounds);
            std::cout << equiv::to_string(d.result) << " (" << d.evidence << ", " << d.states << " states)\n";
            return kOk;
        };
    });

    // repro
    std::string which;
    std::string q_text;
    Bounds repro_bounds = harness::kReproBounds;
    auto* repro = app.add_subcommand("repro", "reproduce a counterexample or the separation witness");
    repro->add_option("which", which, "cex1, cex2, separation or nameserver")
        ->required()
        ->check(CLI::IsMember({"cex1", "cex2", "separation", "nameserver"}));
    repro->add_option("--q", q_text, "cex1: the process Q (π syntax)");
    repro->add_flag("--json", json, "print the report as JSON");
    add_bounds(repro, repro_bounds);
    repro->callback([&] {
        action = [&] {
            harness::Report r;
            if (which == "cex1") r = harness::repro_cex1(q_text.empty() ? pi::Proc::nil() : syntax::parse_pi(q_text), repro_bounds);
            else if (which == "cex2") r = harness::repro_cex2(repro_bounds);
            else if (which == "separation") r = harness::repro_separation_witness(repro_bounds);
            else r = harness::check_name_server();
            return print_report(r, json);
        };
    });

    // criteria
    harness::CorpusOptions corpus;
    Bounds criteria_bounds = harness::kCriteriaBounds;
    bool quiet = false;
    auto* criteria = app.add_subcommand("criteria", "run the correctness criteria over a generated corpus");
    criteria->add_option("--seed", corpus.seed)->capture_default_str();
    criteria->add_option("--count", corpus.count)->capture_default_str();
    criteria->add_option("--size", corpus.size_limit)->capture_default_str();
    criteria->add_flag("--json", json, "print the report as JSON");
    criteria->add_flag("--quiet", quiet, "only print checks that did not pass");
    add_bounds(criteria, criteria_bounds);
    criteria->callback([&] {
        action = [&] {
            auto r = harness::check_criteria(harness::make_corpus(corpus), criteria_bounds);
            if (quiet && !json) {
                harness::Report shown = r;
                std::erase_if(shown.checks, [](const harness::Check& c) { return c.verdict == harness::Outcome::Pass; });
                std::cout << r.name << ": " << r.count(harness::Outcome::Pass) << " pass, "
                          << r.count(harness::Outcome::Fail) << " fail, " << r.count(harness::Outcome::Unknown)
                          << " unknown\n";
                for (const auto& c : shown.checks)
                    std::cout << harness::to_string(c.verdict) << "  " << c.label << "  [" << c.evidence << "]\n";
                return r.count(harness::Outcome::Fail) ? kFail : kOk;
            }
            return print_report(r, json);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const syntax::ParseError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column << ": " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
