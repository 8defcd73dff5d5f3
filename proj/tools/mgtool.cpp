// mgtool: command-line front end for the markedgroups library.
//
// Exit codes: 0 success, 1 verification FAIL, 2 invalid input, 3 word budget
// exceeded.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "markedgroups/acceptance.hpp"
#include "markedgroups/io.hpp"
#include "markedgroups/kernels.hpp"
#include "markedgroups/logic.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/report.hpp"
#include "markedgroups/residual.hpp"
#include "markedgroups/structure.hpp"

namespace {

using mg::report::json;

enum Exit { kOk = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct Common {
    std::string cache_dir;
    bool no_cache = false;
    std::uint64_t budget = 100'000'000;
    std::string simd = "auto";
    std::string log_file;
    bool json = false;
    std::string report_file;
};

std::vector<std::int64_t> parse_window(const std::string& text) {
    for (const char* sep : {"..", ":"}) {
        auto p = text.find(sep);
        if (p == std::string::npos) continue;
        try {
            return mg::index_window(std::stoll(text.substr(0, p)), std::stoll(text.substr(p + std::string(sep).size())));
        } catch (const std::logic_error&) {
            break;
        }
    }
    throw mg::InputError("window must look like FIRST:LAST, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw mg::InputError("bad integer list '" + text + "'");
        }
    }
    if (out.empty()) throw mg::InputError("empty integer list");
    return out;
}

mg::MarkedGroup marked(const std::string& group, const std::string& marking) {
    const mg::Group g = mg::Group::parse(group);
    return marking.empty() ? mg::MarkedGroup::standard(g) : mg::MarkedGroup::parse(g, marking);
}

void emit(const Common& c, const json& j) {
    if (!c.report_file.empty()) mg::io::write_file(c.report_file, j.dump(2) + "\n");
    if (c.json) std::cout << j.dump(2) << "\n";
}

std::unique_ptr<mg::io::BallCache> open_cache(const Common& c) {
    if (c.no_cache) return nullptr;
    return std::make_unique<mg::io::BallCache>(c.cache_dir.empty() ? mg::io::default_cache_dir()
                                                                    : std::filesystem::path(c.cache_dir));
}

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mgtool: marked groups, relation balls and limits of quaternion groups"};
    app.set_config("--config", "", "INI/TOML config; sections name subcommands");
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--cache-dir", c.cache_dir, "relation-ball cache directory (default $MARKEDGROUPS_CACHE or ./.markedgroups-cache)");
    app.add_flag("--no-cache", c.no_cache, "bypass the relation-ball cache");
    app.add_option("--budget", c.budget, "maximum enumerated words per ball")->capture_default_str();
    app.add_option("--simd", c.simd, "kernel selection")->check(CLI::IsMember({"auto", "scalar", "avx2"}))->capture_default_str();
    app.add_option("--log", c.log_file, "append a timestamped invocation line to this file");
    app.add_flag("--json", c.json, "print the JSON report to stdout");
    app.add_option("--report", c.report_file, "write the JSON report to this file");

    std::function<int()> action;

    // rel
    std::string group, marking, out_file;
    int lambda = -1;
    auto* rel = app.add_subcommand("rel", "relation ball Rel_lambda");
    rel->add_option("--group", group, "group descriptor")->required();
    rel->add_option("--marking", marking, "marking (default: named generators)");
    rel->add_option("--lambda", lambda, "radius")->required()->check(CLI::NonNegativeNumber);
    rel->add_option("--out", out_file, "write the ball file here instead of stdout");
    rel->callback([&] {
        action = [&] {
            const auto m = marked(group, marking);
            auto cache = open_cache(c);
            const auto cb = mg::io::cached_rel_ball(m, lambda, cache.get());
            if (!out_file.empty()) mg::io::write_file(out_file, cb.bytes);
            else if (!c.json) std::cout << cb.bytes;
            if (cb.hit) std::cerr << "served from cache\n";
            json j = mg::report::ball_json(m, cb.ball);
            j["cache_hit"] = cb.hit;
            emit(c, j);
            return kOk;
        };
    });

    // dist
    std::string group_a, group_b, marking_a, marking_b;
    int lambda_max = -1;
    auto* dist = app.add_subcommand("dist", "Gromov-Grigorchuk distance");
    dist->add_option("--a", group_a, "first group")->required();
    dist->add_option("--b", group_b, "second group")->required();
    dist->add_option("--marking", marking, "marking used for both groups");
    dist->add_option("--marking-a", marking_a, "marking of the first group");
    dist->add_option("--marking-b", marking_b, "marking of the second group");
    dist->add_option("--lambda-max", lambda_max, "largest radius compared")->required()->check(CLI::NonNegativeNumber);
    dist->callback([&] {
        action = [&] {
            const auto a = marked(group_a, marking_a.empty() ? marking : marking_a);
            const auto b = marked(group_b, marking_b.empty() ? marking : marking_b);
            const auto d = mg::gg_distance(a, b, lambda_max);
            if (!c.json) {
                if (d.exact)
                    std::cout << "Lambda = " << d.agree_radius << "\ndistance = exp(-" << d.agree_radius
                              << ") = " << d.value() << "\nwitness = " << a.word_text(*d.witness) << "\n";
                else
                    std::cout << "balls agree through lambda_max = " << d.lambda_max << "\ndistance <= exp(-"
                              << d.lambda_max << ") = " << d.value() << "\n";
                if (!d.shortest_witnesses.empty()) {
                    std::cout << "shortest witnesses:";
                    for (std::size_t i = 0; i < d.shortest_witnesses.size(); ++i)
                        std::cout << (i ? ", " : " ") << a.word_text(d.shortest_witnesses[i]);
                    std::cout << "\n";
                }
            }
            emit(c, mg::report::distance_json(a, b, d));
            return kOk;
        };
    });

    // converge / limit-compare share the sequence options
    std::string seq_group, seq_marking, window_text, limit_group, limit_marking;
    std::size_t min_tail = 2;
    auto add_seq = [&](CLI::App* sub) {
        sub->add_option("--group-template", seq_group, "descriptor in n, e.g. quaternion(n)")->required();
        sub->add_option("--marking-template", seq_marking, "marking in n, e.g. x,y (default: named generators)");
        sub->add_option("--window", window_text, "index window FIRST:LAST")->required();
        sub->add_option("--lambda", lambda, "radius")->required()->check(CLI::NonNegativeNumber);
    };
    auto* converge = app.add_subcommand("converge", "stabilization sweep over an index window");
    add_seq(converge);
    converge->add_option("--min-tail", min_tail, "indices required in the stable tail")->capture_default_str();
    converge->callback([&] {
        action = [&] {
            const auto seq = mg::family_sequence(seq_group, seq_marking, parse_window(window_text));
            const auto balls = mg::sequence_balls(seq, lambda);
            const auto at = mg::converged_at(seq, balls, min_tail);
            json j{{"sequence", seq.name}, {"window", seq.indices}, {"lambda", lambda},
                   {"digests", mg::report::sequence_digests(seq, lambda)},
                   {"stabilized_at", at ? json(*at) : json(nullptr)}, {"verdict", pass_fail(at.has_value())}};
            if (!c.json) {
                for (std::size_t i = 0; i < balls.size(); ++i)
                    std::cout << "n=" << seq.indices[i] << "  |Rel| = " << balls[i].words.size() << "  "
                              << mg::io::ball_digest(balls[i]).substr(0, 16) << "\n";
                if (at) std::cout << "stabilized from n = " << *at << "\n";
                else std::cout << "not stabilized within the window\n";
            }
            emit(c, j);
            return at ? kOk : kFail;
        };
    });

    auto* lc = app.add_subcommand("limit-compare", "compare a stabilized window against a candidate limit");
    add_seq(lc);
    lc->add_option("--limit", limit_group, "candidate limit group")->required();
    lc->add_option("--limit-marking", limit_marking, "candidate limit marking");
    lc->callback([&] {
        action = [&] {
            const auto seq = mg::family_sequence(seq_group, seq_marking, parse_window(window_text));
            const auto limit = marked(limit_group, limit_marking);
            try {
                const auto v = mg::limit_compare(seq, limit, lambda);
                if (!c.json) {
                    std::cout << "stabilized from n = " << v.stabilized_at << "\n" << pass_fail(v.match) << "\n";
                    if (v.witness) std::cout << "witness = " << limit.word_text(*v.witness) << "\n";
                }
                emit(c, mg::report::limit_json(seq, limit, lambda, v));
                return v.match ? kOk : kFail;
            } catch (const mg::NotStabilized& e) {
                std::cout << "FAIL: " << e.what() << "\n";
                emit(c, json{{"sequence", seq.name}, {"verdict", "FAIL"}, {"reason", e.what()}});
                return kFail;
            }
        };
    });

    // cayley
    int radius = -1;
    auto* cayley = app.add_subcommand("cayley", "ball of the marked Cayley graph as DOT");
    cayley->add_option("--group", group, "group descriptor")->required();
    cayley->add_option("--marking", marking, "marking");
    cayley->add_option("--radius", radius, "ball radius")->required()->check(CLI::NonNegativeNumber);
    cayley->add_option("--out", out_file, "DOT output file (default stdout)");
    cayley->callback([&] {
        action = [&] {
            const auto m = marked(group, marking);
            const auto bg = mg::ball_graph(m, radius);
            const std::string dot = bg.to_dot(m.group());
            if (!out_file.empty()) mg::io::write_file(out_file, dot);
            else if (!c.json) std::cout << dot;
            emit(c, json{{"input", mg::report::marked_json(m)}, {"radius", radius},
                         {"vertices", bg.vertices.size()}, {"edges", bg.edges.size()}});
            return kOk;
        };
    });

    // involutions
    int box = -1;
    auto* inv = app.add_subcommand("involutions", "involution census");
    inv->add_option("--group", group, "group descriptor")->required();
    inv->add_option("--box", box, "also list involutions with |v_i| <= box (infinite groups)");
    inv->callback([&] {
        action = [&] {
            const auto g = mg::Group::parse(group);
            const auto census = mg::involutions(g);
            json j{{"group", g.descriptor()},
                   {"with_zero_free_part", mg::report::elements_json(g, census.with_zero_free_part)},
                   {"unbounded", census.unbounded},
                   {"count", census.count() ? json(*census.count()) : json("infinite")}};
            if (census.family_representative) j["family_representative"] = g.format(*census.family_representative);
            if (box >= 0) j["in_box"] = mg::report::elements_json(g, mg::involutions_in_box(g, box));
            if (!c.json) {
                std::cout << "count = " << (census.count() ? std::to_string(*census.count()) : "infinite") << "\n";
                for (const auto& e : census.with_zero_free_part) std::cout << g.format(e) << "\n";
                if (census.family_representative)
                    std::cout << "every element with odd top part is an involution, e.g. "
                              << g.format(*census.family_representative) << "\n";
            }
            emit(c, j);
            return kOk;
        };
    });

    // center
    int bound = 4;
    auto* cen = app.add_subcommand("center", "center, with the four-element formula check where it applies");
    cen->add_option("--group", group, "group descriptor")->required();
    cen->add_option("--bound", bound, "box bound for infinite groups")->capture_default_str();
    cen->callback([&] {
        action = [&] {
            const auto g = mg::Group::parse(group);
            const auto z = mg::center(g, bound);
            json j{{"group", g.descriptor()}, {"center", mg::report::elements_json(g, z.elements)},
                   {"bounded", !g.finite()}};
            bool ok = true;
            if (g.family() == mg::Family::sd4 || g.family() == mg::Family::limit_cover) {
                const auto cc = mg::center_formula_check(g, bound);
                j["formula_check"] = mg::report::center_json(cc);
                ok = cc.match;
            }
            if (!c.json) {
                for (const auto& e : z.elements) std::cout << g.format(e) << "\n";
                if (j.contains("formula_check")) std::cout << "formula: " << pass_fail(ok) << "\n";
            }
            emit(c, j);
            return ok ? kOk : kFail;
        };
    });

    // sentence
    std::string sigma;
    auto* sen = app.add_subcommand("sentence", "model-check a universal sentence");
    sen->add_option("--group", group, "group descriptor")->required();
    sen->add_option("--sigma", sigma, "sentence name or text")->required();
    sen->add_option("--radius", radius, "ball radius for infinite groups")->check(CLI::NonNegativeNumber);
    sen->callback([&] {
        action = [&] {
            const auto g = mg::Group::parse(group);
            const auto s = mg::resolve_sentence(sigma);
            mg::ModelCheck mc;
            if (g.finite()) {
                mc = mg::holds(g, s);
            } else {
                if (radius < 0) throw mg::InputError("infinite group: pass --radius for a bounded check");
                mc = mg::holds_bounded(g, s, radius);
            }
            if (!c.json) {
                std::cout << pass_fail(mc.holds) << "  " << s.to_text() << "\n";
                if (mc.counterexample) {
                    std::cout << "counterexample:";
                    for (std::size_t i = 0; i < mc.counterexample->size(); ++i)
                        std::cout << ' ' << s.variables[i] << '=' << g.format((*mc.counterexample)[i]);
                    std::cout << "\n";
                }
            }
            json j = mg::report::model_check_json(g, s, mc);
            if (!g.finite()) j["bounded_radius"] = radius;
            emit(c, j);
            return mc.holds ? kOk : kFail;
        };
    });

    // eventual
    auto* ev = app.add_subcommand("eventual", "truth of a sentence across a family window");
    ev->add_option("--group-template", seq_group, "descriptor in n")->required();
    ev->add_option("--window", window_text, "index window FIRST:LAST")->required();
    ev->add_option("--sigma", sigma, "sentence name or text")->required();
    ev->callback([&] {
        action = [&] {
            const auto seq = mg::family_sequence(seq_group, "", parse_window(window_text));
            const auto s = mg::resolve_sentence(sigma);
            const auto et = mg::eventual_truth(seq, s);
            if (!c.json) {
                for (std::size_t i = 0; i < et.indices.size(); ++i)
                    std::cout << "n=" << et.indices[i] << "  " << pass_fail(et.truth[i]) << "\n";
                if (et.true_from) std::cout << "true from n = " << *et.true_from << " through the window end\n";
            }
            emit(c, mg::report::eventual_json(seq, s, et));
            return kOk;
        };
    });

    // witness
    std::string radii_text = "0,1,2,3", csv_file;
    int n_max = 8;
    auto* wit = app.add_subcommand("witness", "residual witnesses into quaternion groups");
    wit->add_option("--group", group, "limitQ(l,k) descriptor")->required();
    wit->add_option("--marking", marking, "marking (default: named generators)");
    wit->add_option("--radii", radii_text, "comma-separated radii")->capture_default_str();
    wit->add_option("--n-max", n_max, "largest quaternion index searched")->capture_default_str();
    wit->add_option("--csv", csv_file, "write the witness table as CSV");
    wit->callback([&] {
        action = [&] {
            const auto m = marked(group, marking);
            const auto table = mg::fully_residual_check(m, parse_int_list(radii_text), n_max);
            if (!csv_file.empty()) mg::io::write_file(csv_file, mg::witness_table_csv(m, table));
            const json j = mg::report::residual_json(m, table);
            if (!c.json) {
                std::cout << mg::witness_table_csv(m, table);
                for (const auto& w : table)
                    for (const auto& a : w.attempts)
                        if (a.collision) {
                            std::cout << "R=" << w.radius << " n=" << a.n << " fails: " << a.collision->first_word
                                      << " and " << a.collision->second_word << " collide; fiber {";
                            for (std::size_t i = 0; i < a.collision->fiber.size(); ++i)
                                std::cout << (i ? ", " : "") << a.collision->fiber[i];
                            std::cout << "}\n";
                        }
            }
            emit(c, j);
            return j["verdict"] == "PASS" ? kOk : kFail;
        };
    });

    // cases
    int l = 0, k = 2;
    auto* cases = app.add_subcommand("cases", "five-case involution analysis");
    cases->add_option("--l", l, "free rank")->required();
    cases->add_option("--k", k, "torsion exponent")->required();
    cases->callback([&] {
        action = [&] {
            const auto a = mg::case_analysis(l, k);
            if (!c.json)
                for (const auto& r : a.cases)
                    std::cout << "case " << r.index << "  " << r.quotient << "  involutions = "
                              << (r.census.count() ? std::to_string(*r.census.count()) : "infinite") << "  "
                              << pass_fail(r.claim_holds) << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
            if (!c.json) std::cout << "unique-involution case: " << (a.unique_case ? std::to_string(a.unique_case) : "none") << "\n";
            emit(c, mg::report::cases_json(a));
            bool ok = a.unique_case == 4;
            for (const auto& r : a.cases) ok = ok && r.claim_holds;
            return ok ? kOk : kFail;
        };
    });

    // kernel
    std::string lift = "quaternion";
    bool theorem1 = false;
    std::size_t tail_length = 0;
    auto* ker = app.add_subcommand("kernel", "lifted-sequence kernel identification");
    ker->add_option("--lift", lift, "lifted family")
        ->check(CLI::IsMember({"quaternion", "quaternion-center", "dihedral"}))
        ->capture_default_str();
    ker->add_option("--window", window_text, "index window FIRST:LAST")->required();
    ker->add_option("--lambda", lambda, "radius")->required()->check(CLI::NonNegativeNumber);
    ker->add_option("--tail", tail_length, "tail length for the liminf (0: half the window)");
    ker->add_flag("--theorem1", theorem1, "also compare the quotient of the limit cover with the quotient limit");
    ker->callback([&] {
        action = [&] {
            const auto window = parse_window(window_text);
            const mg::LiftedSequence seq = lift == "quaternion"          ? mg::lifts::quaternion(window)
                                           : lift == "quaternion-center" ? mg::lifts::quaternion_full_center(window)
                                                                         : mg::lifts::dihedral(window);
            const auto& h = seq.limit_cover->group();
            try {
                if (theorem1) {
                    const auto r = mg::theorem1_instance(seq, lambda, tail_length);
                    if (!c.json) {
                        std::cout << "K_approx:";
                        for (const auto& e : r.kernel.k_approx) std::cout << ' ' << h.format(e);
                        std::cout << "\nquotient of limit: " << r.quotient_of_limit << "\n" << pass_fail(r.consistent()) << "\n";
                    }
                    emit(c, mg::report::theorem1_json(seq, r));
                    return r.consistent() ? kOk : kFail;
                }
                const auto kid = mg::kernel_identification(seq, lambda, tail_length);
                const bool ok = kid.quotient_consistent && kid.preimage_consistent && kid.subgroup && kid.central;
                if (!c.json) {
                    std::cout << "K_approx:";
                    for (const auto& e : kid.k_approx) std::cout << ' ' << h.format(e);
                    std::cout << "\n|M_approx| = " << kid.m_approx.size() << "\n" << pass_fail(ok) << "\n";
                }
                emit(c, mg::report::kernel_json(seq, kid));
                return ok ? kOk : kFail;
            } catch (const mg::NotStabilized& e) {
                std::cout << "FAIL: " << e.what() << "\n";
                return kFail;
            }
        };
    });

    // verify-all
    std::string only_text;
    auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
    va->add_option("--only", only_text, "comma-separated criterion numbers");
    va->callback([&] {
        action = [&] {
            std::set<int> only;
            if (!only_text.empty())
                for (int i : parse_int_list(only_text)) only.insert(i);
            const auto results = mg::acceptance::run(std::cout, only);
            json rows = json::array();
            for (const auto& r : results)
                rows.push_back({{"criterion", r.id}, {"title", r.title}, {"verdict", pass_fail(r.pass)},
                                {"detail", r.detail}, {"seconds", r.seconds}, {"budget_seconds", r.budget_seconds}});
            const bool ok = mg::acceptance::all_pass(results);
            if (!c.report_file.empty()) mg::io::write_file(c.report_file, json{{"criteria", rows}, {"verdict", pass_fail(ok)}}.dump(2) + "\n");
            return ok ? kOk : kFail;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    if (c.simd == "scalar") mg::kernels::force_isa(mg::kernels::Isa::scalar);
    else if (c.simd == "avx2") {
        if (!mg::kernels::isa_available(mg::kernels::Isa::avx2)) {
            std::cerr << "error: AVX2 not available on this CPU\n";
            return kInput;
        }
        mg::kernels::force_isa(mg::kernels::Isa::avx2);
    }
    mg::set_word_budget(c.budget);

    if (!c.log_file.empty()) {
        std::ofstream log(c.log_file, std::ios::app);
        const std::time_t now = std::time(nullptr);
        log << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
        for (int i = 1; i < argc; ++i) log << ' ' << argv[i];
        log << "\n";
    }

    try {
        return action();
    } catch (const mg::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const mg::InputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInput;
    } catch (const mg::io::CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
